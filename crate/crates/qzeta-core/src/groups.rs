//! Finite diagonal abelian group actions on affine space.
//!
//! A group element is written as a vector of exponents `ε = (ε_1, …, ε_n)`
//! with `0 ≤ ε_i < r` acting by `u_i ↦ ξ^{ε_i} u_i`, `ξ = e^{2πi/r}`,
//! where `r = |G|`. The cyclic notation `1/r(a_1, …, a_n)` denotes the group
//! generated by `(a_1 mod r, …, a_n mod r)`; products are joined with `x`.
//!
//! The module provides stabilizers of coordinate strata, the group attached
//! to a simplicial cone (via Smith normal form of the ray matrix), and the
//! character sums
//!
//! ```text
//!   S_G(N, ν) = Σ_{γ ∈ G} L^{ϖ_N(γ) · s + ϖ_ν(γ)},
//!   ϖ_k(γ) = (1/r) Σ_i k_i ε_{γ,i},
//! ```
//!
//! which encode the contribution of a quotient singularity to a motivic
//! zeta function or a stringy invariant.

use std::collections::BTreeSet;
use std::fmt;

use num::{Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{lcm_u64, rat_int, Int, Rat};

/// Largest group order we are willing to enumerate element by element.
pub const ELEMENT_CAP: u64 = 1_000_000;

/// A finite diagonal abelian subgroup of `(C*)^n` acting on `C^n`.
///
/// Elements are stored as exponent vectors over the common denominator
/// `r = |G|`; the list is sorted and always contains the identity.
#[derive(Debug, Clone)]
pub struct DiagGroup {
    n: usize,
    r: u64,
    elements: Vec<Vec<u64>>,
    /// Cyclic factors `(order, exponents)` used only for display.
    factors: Vec<(u64, Vec<u64>)>,
}

impl PartialEq for DiagGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.elements == other.elements
    }
}

impl Eq for DiagGroup {}

/// How to read off the exponent of a group element on a derived coordinate.
#[derive(Debug, Clone)]
pub enum EpsChar {
    /// Use the exponent on an original coordinate.
    Coord(usize),
    /// Use the character of a monomial `∏ u_m^{c_m}` in the original
    /// coordinates: `ε = Σ c_m ε_m mod r`.
    Monomial(Vec<u64>),
}

impl DiagGroup {
    /// The trivial group acting on `C^n`.
    pub fn trivial(n: usize) -> DiagGroup {
        DiagGroup {
            n,
            r: 1,
            elements: vec![vec![0; n]],
            factors: Vec::new(),
        }
    }

    /// The cyclic group `1/r(a_1, …, a_n)`. The stored group is the image of
    /// the action, so a non-faithful presentation is normalized away.
    pub fn cyclic(r: u64, exps: &[i64]) -> Result<DiagGroup> {
        if r == 0 {
            return Err(Error::contract("group order must be positive"));
        }
        DiagGroup::from_generators(exps.len(), &[(r, exps.to_vec())])
    }

    /// The group generated by the listed cyclic factors, all acting on the
    /// same `C^n`. Each factor is `(r_k, exponent vector)`.
    pub fn from_generators(n: usize, gens: &[(u64, Vec<i64>)]) -> Result<DiagGroup> {
        // Normalize every generator to its primitive order.
        let mut prim: Vec<(u64, Vec<u64>)> = Vec::new();
        for (rk, exps) in gens {
            if *rk == 0 {
                return Err(Error::contract("group order must be positive"));
            }
            if exps.len() != n {
                return Err(Error::contract(format!(
                    "generator has {} exponents, expected {}",
                    exps.len(),
                    n
                )));
            }
            let reduced: Vec<u64> = exps
                .iter()
                .map(|&e| (((e as i128 % *rk as i128) + *rk as i128) % *rk as i128) as u64)
                .collect();
            let mut g = *rk;
            for &e in &reduced {
                g = crate::rat::gcd_u64(g, e);
            }
            let order = rk / g;
            if order > 1 {
                prim.push((order, reduced.iter().map(|&e| e / g).collect()));
            }
        }
        if prim.is_empty() {
            return Ok(DiagGroup::trivial(n));
        }

        // Common exponent of the generated group.
        let mut m = 1u64;
        for (o, _) in &prim {
            m = lcm_u64(m, *o);
            if m > ELEMENT_CAP {
                return Err(Error::Budget {
                    needed: m as u128,
                    limit: ELEMENT_CAP as u128,
                });
            }
        }

        // Closure of the generators inside (Z/m)^n.
        let lifted: Vec<Vec<u64>> = prim
            .iter()
            .map(|(o, exps)| exps.iter().map(|&e| e * (m / o)).collect())
            .collect();
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
        set.insert(vec![0; n]);
        let mut queue: Vec<Vec<u64>> = vec![vec![0; n]];
        while let Some(cur) = queue.pop() {
            for g in &lifted {
                let next: Vec<u64> = cur.iter().zip(g).map(|(&a, &b)| (a + b) % m).collect();
                if set.insert(next.clone()) {
                    if set.len() as u64 > ELEMENT_CAP {
                        return Err(Error::Budget {
                            needed: set.len() as u128,
                            limit: ELEMENT_CAP as u128,
                        });
                    }
                    queue.push(next);
                }
            }
        }

        let r = set.len() as u64;
        debug_assert!(r % m == 0, "exponent must divide the order");
        let scale = r / m;
        let elements: Vec<Vec<u64>> = set
            .into_iter()
            .map(|eps| eps.into_iter().map(|e| e * scale).collect())
            .collect();
        let mut group = DiagGroup {
            n,
            r,
            elements,
            factors: Vec::new(),
        };
        group.factors = group.derive_factors();
        Ok(group)
    }

    /// Rebuilds a display presentation from the element list: greedily picks
    /// elements that enlarge the generated subgroup.
    fn derive_factors(&self) -> Vec<(u64, Vec<u64>)> {
        let mut factors: Vec<(u64, Vec<u64>)> = Vec::new();
        let mut span: BTreeSet<Vec<u64>> = BTreeSet::new();
        span.insert(vec![0; self.n]);
        for eps in &self.elements {
            if span.contains(eps) {
                continue;
            }
            // Add eps as a generator and close the span under it.
            let mut next = BTreeSet::new();
            for base in &span {
                let mut cur = base.clone();
                loop {
                    next.insert(cur.clone());
                    cur = cur
                        .iter()
                        .zip(eps)
                        .map(|(&a, &b)| (a + b) % self.r)
                        .collect();
                    if &cur == base {
                        break;
                    }
                }
            }
            span = next;
            let mut g = self.r;
            for &e in eps {
                g = crate::rat::gcd_u64(g, e);
            }
            let order = self.r / g;
            factors.push((order, eps.iter().map(|&e| e / g).collect()));
            if span.len() as u64 == self.r {
                break;
            }
        }
        factors
    }

    /// Number of variables the group acts on.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Group order `|G|`, also the common denominator of exponent vectors.
    pub fn order(&self) -> u64 {
        self.r
    }

    pub fn is_trivial(&self) -> bool {
        self.r == 1
    }

    /// Exponent vectors of all elements over the denominator `order()`.
    pub fn elements(&self) -> &[Vec<u64>] {
        &self.elements
    }

    /// Exponent of the group: the lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        let mut m = 1u64;
        for eps in &self.elements {
            let mut g = self.r;
            for &e in eps {
                g = crate::rat::gcd_u64(g, e);
            }
            m = lcm_u64(m, self.r / g);
        }
        m
    }

    /// Subgroup of elements acting trivially on the listed coordinates
    /// (the stabilizer of a stratum on which exactly those coordinates are
    /// nonzero).
    pub fn stabilizer_of(&self, nonzero_coords: &[usize]) -> DiagGroup {
        let fixed: Vec<Vec<u64>> = self
            .elements
            .iter()
            .filter(|eps| nonzero_coords.iter().all(|&c| eps[c] == 0))
            .cloned()
            .collect();
        DiagGroup::from_element_set(self.n, self.r, fixed)
    }

    /// Builds a group from a subset of exponent vectors over denominator `r`
    /// that is already closed under addition.
    fn from_element_set(n: usize, r: u64, elements: Vec<Vec<u64>>) -> DiagGroup {
        let new_r = elements.len() as u64;
        let mut rescaled: Vec<Vec<u64>> = elements
            .into_iter()
            .map(|eps| {
                eps.into_iter()
                    .map(|e| {
                        // ε/r = ε'/new_r with ε' integral because the element
                        // order divides the subgroup order.
                        debug_assert!((e as u128 * new_r as u128) % r as u128 == 0);
                        ((e as u128 * new_r as u128) / r as u128) as u64
                    })
                    .collect()
            })
            .collect();
        rescaled.sort();
        let mut group = DiagGroup {
            n,
            r: new_r,
            elements: rescaled,
            factors: Vec::new(),
        };
        group.factors = group.derive_factors();
        group
    }

    /// Exponent of `γ` on the derived coordinate described by `c`.
    fn eps_on(&self, eps: &[u64], c: &EpsChar) -> u64 {
        match c {
            EpsChar::Coord(k) => eps[*k],
            EpsChar::Monomial(mono) => {
                let mut acc: u128 = 0;
                for (e, m) in eps.iter().zip(mono) {
                    acc = (acc + *e as u128 * *m as u128) % self.r as u128;
                }
                acc as u64
            }
        }
    }

    /// Checks that the monomial exponent difference `diff` pairs to zero with
    /// every element, i.e. that a polynomial whose monomials differ by `diff`
    /// is semi-invariant.
    pub fn pairs_to_zero(&self, diff: &[i64]) -> bool {
        self.elements.iter().all(|eps| {
            let mut acc: i128 = 0;
            for (e, d) in eps.iter().zip(diff) {
                acc += *e as i128 * *d as i128;
            }
            acc.rem_euclid(self.r as i128) == 0
        })
    }

    /// The character sum `S_G(N, ν)` on the original coordinates.
    pub fn sg_sum(&self, n_vec: &[i64], nu_vec: &[i64]) -> Result<SgSum> {
        let chars: Vec<EpsChar> = (0..self.n).map(EpsChar::Coord).collect();
        self.sg_sum_on(&chars, n_vec, nu_vec)
    }

    /// The character sum `S_G(N, ν)` with rational multiplicity vectors.
    pub fn sg_sum_rat(&self, n_vec: &[Rat], nu_vec: &[Rat]) -> Result<SgSum> {
        if n_vec.len() != self.n || nu_vec.len() != self.n {
            return Err(Error::contract(
                "multiplicity vectors must match the coordinate count",
            ));
        }
        let r = rat_int(Int::from(self.r));
        let mut sum = SgSum::zero();
        for eps in &self.elements {
            let mut a = Rat::zero();
            let mut b = Rat::zero();
            for (k, &e) in eps.iter().enumerate() {
                let e = rat_int(Int::from(e));
                a += n_vec[k].clone() * e.clone();
                b += nu_vec[k].clone() * e;
            }
            let key = (a / r.clone(), b / r.clone());
            *sum.terms.entry(key).or_insert_with(Int::zero) += 1;
        }
        Ok(sum)
    }

    /// The character sum `S_G(N, ν)` read through derived coordinates: entry
    /// `k` of `N`/`ν` pairs with the exponent of the element on `chars[k]`.
    pub fn sg_sum_on(&self, chars: &[EpsChar], n_vec: &[i64], nu_vec: &[i64]) -> Result<SgSum> {
        if n_vec.len() != chars.len() || nu_vec.len() != chars.len() {
            return Err(Error::contract(
                "multiplicity vectors must match the coordinate count",
            ));
        }
        let r = rat_int(Int::from(self.r));
        let mut sum = SgSum::zero();
        for eps in &self.elements {
            let mut a: i128 = 0;
            let mut b: i128 = 0;
            for (k, c) in chars.iter().enumerate() {
                let e = self.eps_on(eps, c) as i128;
                a += n_vec[k] as i128 * e;
                b += nu_vec[k] as i128 * e;
            }
            let key = (
                rat_int(Int::from(a)) / r.clone(),
                rat_int(Int::from(b)) / r.clone(),
            );
            *sum.terms.entry(key).or_insert_with(Int::zero) += 1;
        }
        Ok(sum)
    }

    /// Parses `"trivial"` or `"1/r(a,…)"`, with products joined by `x`.
    pub fn parse(input: &str) -> Result<DiagGroup> {
        let s = input.trim();
        if s == "trivial" || s == "1" {
            return Err(Error::contract(
                "cannot infer the number of coordinates of a trivial group; \
                 use DiagGroup::trivial(n)",
            ));
        }
        let mut gens: Vec<(u64, Vec<i64>)> = Vec::new();
        for part in split_factors(s) {
            gens.push(parse_cyclic_factor(part.trim(), input)?);
        }
        let n = gens
            .first()
            .map(|(_, e)| e.len())
            .ok_or_else(|| Error::contract("empty group expression"))?;
        if gens.iter().any(|(_, e)| e.len() != n) {
            return Err(Error::contract(
                "group factors act on different numbers of coordinates",
            ));
        }
        DiagGroup::from_generators(n, &gens)
    }
}

/// Splits a product expression on `x` tokens that sit outside parentheses.
fn split_factors(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

/// Parses a single `1/r(a,b,…)` factor.
fn parse_cyclic_factor(part: &str, whole: &str) -> Result<(u64, Vec<i64>)> {
    let err = |msg: &str| Error::Syntax {
        pos: whole.find(part).unwrap_or(0),
        msg: format!("{msg} in group factor `{part}`"),
    };
    let rest = part
        .strip_prefix("1/")
        .ok_or_else(|| err("expected `1/r(...)`"))?;
    let open = rest.find('(').ok_or_else(|| err("missing `(`"))?;
    let r: u64 = rest[..open]
        .trim()
        .parse()
        .map_err(|_| err("order must be a positive integer"))?;
    let close = rest.rfind(')').ok_or_else(|| err("missing `)`"))?;
    let mut exps = Vec::new();
    for tok in rest[open + 1..close].split(',') {
        let v: i64 = tok
            .trim()
            .parse()
            .map_err(|_| err("exponents must be integers"))?;
        exps.push(v);
    }
    Ok((r, exps))
}

impl fmt::Display for DiagGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(o, exps)| {
                let body: Vec<String> = exps.iter().map(|e| e.to_string()).collect();
                format!("1/{}({})", o, body.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// The value of a character sum `S_G(N, ν) = Σ c · L^{a·s + b}`, stored as a
/// map from the exponent pair `(a, b)` to the positive integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgSum {
    pub terms: std::collections::BTreeMap<(Rat, Rat), Int>,
}

impl SgSum {
    pub fn zero() -> SgSum {
        SgSum {
            terms: std::collections::BTreeMap::new(),
        }
    }

    /// The sum over the trivial group: a single term `L^0`.
    pub fn one() -> SgSum {
        let mut s = SgSum::zero();
        s.terms.insert((Rat::zero(), Rat::zero()), Int::one());
        s
    }

    pub fn is_one(&self) -> bool {
        self == &SgSum::one()
    }

    /// Total number of group elements accounted for.
    pub fn total(&self) -> Int {
        self.terms.values().sum()
    }
}

/// Smith normal form over the integers: returns `(u, d, v)` with
/// `u * a * v = d`, `u` and `v` unimodular, and the diagonal of `d`
/// satisfying `d_1 | d_2 | …` with nonnegative entries.
pub fn smith_normal_form(a: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: Vec<Vec<Int>> = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            // Find the entry of smallest nonzero absolute value in the
            // submatrix and move it to the pivot position.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !d[i][j].is_zero()
                        && best
                            .map(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs())
                            .unwrap_or(true)
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            if bi != t {
                d.swap(bi, t);
                u.swap(bi, t);
            }
            if bj != t {
                swap_cols(&mut d, bj, t);
                swap_cols(&mut v, bj, t);
            }

            // Clear the pivot column and row.
            let mut dirty = false;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = div_round(&d[i][t], &d[t][t]);
                    row_sub(&mut d, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = div_round(&d[t][j], &d[t][t]);
                    col_sub(&mut d, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }

            // Enforce divisibility of the remaining block by the pivot.
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&d[i][j] % &d[t][t]).is_zero() {
                        let one = Int::one();
                        row_sub(&mut d, t, i, &-&one);
                        row_sub(&mut u, t, i, &-&one);
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        if t < rows && t < cols && d[t][t].is_negative() {
            for j in 0..cols {
                d[t][j] = -d[t][j].clone();
            }
            for j in 0..rows {
                u[t][j] = -u[t][j].clone();
            }
        }
    }
    (u, d, v)
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut [Vec<Int>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_i -= q * row_t`.
fn row_sub(m: &mut [Vec<Int>], i: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src = m[t].clone();
    for (x, s) in m[i].iter_mut().zip(src) {
        *x -= q * s;
    }
}

/// `col_j -= q * col_t`.
fn col_sub(m: &mut [Vec<Int>], j: usize, t: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let s = row[t].clone();
        row[j] -= q * s;
    }
}

/// Rounded integer division, so the remainder has at most half the modulus.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Determinant by fraction-free Gaussian elimination (Bareiss), exact.
pub fn det(a: &[Vec<Int>]) -> Int {
    let n = a.len();
    if n == 0 {
        return Int::one();
    }
    let mut m: Vec<Vec<Int>> = a.to_vec();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return Int::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let val = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = val;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// The abelian quotient group attached to a full-dimensional simplicial cone:
/// the ambient lattice modulo the sublattice spanned by the rays (given as
/// rows). The action on the chart coordinates is determined by the Smith
/// normal form of the ray matrix.
pub fn group_from_cone(rays: &[Vec<i64>]) -> Result<DiagGroup> {
    let n = rays.len();
    if n == 0 || rays.iter().any(|r| r.len() != n) {
        return Err(Error::contract(
            "cone group requires a square matrix of rays",
        ));
    }
    let a: Vec<Vec<Int>> = rays
        .iter()
        .map(|r| r.iter().map(|&x| Int::from(x)).collect())
        .collect();
    if det(&a).is_zero() {
        return Err(Error::contract("cone rays are linearly dependent"));
    }
    let (u, d, _v) = smith_normal_form(&a);
    let mut gens: Vec<(u64, Vec<i64>)> = Vec::new();
    for i in 0..n {
        let di = &d[i][i];
        if di > &Int::one() {
            let order = u64::try_from(di).map_err(|_| Error::Budget {
                needed: u128::try_from(di).unwrap_or(u128::MAX),
                limit: ELEMENT_CAP as u128,
            })?;
            let exps: Vec<i64> = u[i]
                .iter()
                .map(|x| {
                    let m = x.mod_floor(di);
                    i64::try_from(&m).expect("reduced exponent fits i64")
                })
                .collect();
            gens.push((order, exps));
        }
    }
    DiagGroup::from_generators(n, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn sg_pairs(s: &SgSum) -> Vec<(Rat, Rat, Int)> {
        s.terms
            .iter()
            .map(|((a, b), c)| (a.clone(), b.clone(), c.clone()))
            .collect()
    }

    #[test]
    fn character_sum_examples() {
        // 1/3(-1,2) with N=(6,0), ν=(5,1): terms L^0, L^{2s+2}, L^{4s+4}.
        let g = DiagGroup::cyclic(3, &[-1, 2]).unwrap();
        let s = g.sg_sum(&[6, 0], &[5, 1]).unwrap();
        assert_eq!(
            sg_pairs(&s),
            vec![
                (rat(0), rat(0), Int::from(1)),
                (rat(2), rat(2), Int::from(1)),
                (rat(4), rat(4), Int::from(1)),
            ]
        );

        // 1/2(-1,3) with the same multiplicities: L^0 + L^{3s+3}.
        let g = DiagGroup::cyclic(2, &[-1, 3]).unwrap();
        let s = g.sg_sum(&[6, 0], &[5, 1]).unwrap();
        assert_eq!(
            sg_pairs(&s),
            vec![
                (rat(0), rat(0), Int::from(1)),
                (rat(3), rat(3), Int::from(1)),
            ]
        );

        // Trivial group: a single L^0 term.
        let g = DiagGroup::trivial(2);
        assert!(g.sg_sum(&[6, 0], &[5, 1]).unwrap().is_one());
    }

    #[test]
    fn fractional_exponents_appear() {
        // 1/2(1,1) with N=(1,0), ν=(1,1): the nontrivial element contributes
        // L^{s/2 + 1}.
        let g = DiagGroup::cyclic(2, &[1, 1]).unwrap();
        let s = g.sg_sum(&[1, 0], &[1, 1]).unwrap();
        assert_eq!(
            sg_pairs(&s),
            vec![
                (rat(0), rat(0), Int::from(1)),
                (ratio(1, 2), rat(1), Int::from(1)),
            ]
        );
    }

    #[test]
    fn stabilizers() {
        let g = DiagGroup::cyclic(6, &[-1, 8, 11]).unwrap();
        assert_eq!(g.order(), 6);
        // Fixing both of the last two coordinates kills everything.
        assert!(g.stabilizer_of(&[1, 2]).is_trivial());
        // Fixing only the second coordinate leaves 1/2(1,0,1).
        let st = g.stabilizer_of(&[1]);
        assert_eq!(st, DiagGroup::cyclic(2, &[1, 0, 1]).unwrap());
        // The empty condition keeps the whole group.
        assert_eq!(g.stabilizer_of(&[]), g);
    }

    #[test]
    fn non_faithful_presentation_is_reduced() {
        let g = DiagGroup::cyclic(4, &[2, 2]).unwrap();
        assert_eq!(g, DiagGroup::cyclic(2, &[1, 1]).unwrap());
        assert_eq!(g.order(), 2);
    }

    #[test]
    fn products_and_parsing() {
        let g = DiagGroup::parse("1/2(1,0) x 1/2(0,1)").unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.exponent(), 2);
        let eps: Vec<Vec<u64>> = g.elements().to_vec();
        assert_eq!(
            eps,
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]],
        );

        let h = DiagGroup::parse("1/6(-1,8,11)").unwrap();
        assert_eq!(h, DiagGroup::cyclic(6, &[5, 2, 5]).unwrap());
        assert_eq!(h.to_string(), "1/6(1,4,1)");
        assert_eq!(DiagGroup::parse(&h.to_string()).unwrap(), h);

        assert!(DiagGroup::parse("1/0(1)").is_err());
        assert!(DiagGroup::parse("2/3(1)").is_err());
    }

    #[test]
    fn derived_coordinate_characters() {
        // Stabilizer 1/2(1,0,1) read on (λ=u_1, monomial u_2^2 u_3, u_2):
        // the nontrivial element has exponents (1, 1, 0).
        let g = DiagGroup::cyclic(2, &[1, 0, 1]).unwrap();
        let chars = [
            EpsChar::Coord(0),
            EpsChar::Monomial(vec![0, 2, 1]),
            EpsChar::Coord(1),
        ];
        let s = g.sg_sum_on(&chars, &[2, 1, 0], &[3, 1, 1]).unwrap();
        assert_eq!(
            sg_pairs(&s),
            vec![
                (rat(0), rat(0), Int::from(1)),
                (ratio(3, 2), rat(2), Int::from(1)),
            ]
        );
        // Semi-invariance checks on monomial differences.
        assert!(g.pairs_to_zero(&[2, 0, 0]));
        assert!(g.pairs_to_zero(&[1, 0, 1]));
        assert!(!g.pairs_to_zero(&[1, 1, 0]));
    }

    #[test]
    fn smith_form_examples() {
        let a = vec![
            vec![Int::from(2), Int::from(0)],
            vec![Int::from(0), Int::from(3)],
        ];
        let (u, d, v) = smith_normal_form(&a);
        assert_eq!(d[0][0], Int::from(1));
        assert_eq!(d[1][1], Int::from(6));
        assert_eq!(det(&u).abs(), Int::one());
        assert_eq!(det(&v).abs(), Int::one());
        assert_eq!(mat_mul(&mat_mul(&u, &a), &v), d);

        let b = vec![
            vec![Int::from(1), Int::from(2)],
            vec![Int::from(3), Int::from(2)],
        ];
        let (u, d, v) = smith_normal_form(&b);
        assert_eq!(d[0][0], Int::from(1));
        assert_eq!(d[1][1], Int::from(4));
        assert_eq!(mat_mul(&mat_mul(&u, &b), &v), d);
    }

    fn mat_mul(a: &[Vec<Int>], b: &[Vec<Int>]) -> Vec<Vec<Int>> {
        let n = a.len();
        let m = b[0].len();
        let k = b.len();
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..k).map(|t| &a[i][t] * &b[t][j]).sum())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cone_groups() {
        // Rays (3,2) and (0,1): index-3 sublattice, action 1/3(-1,2).
        let g = group_from_cone(&[vec![3, 2], vec![0, 1]]).unwrap();
        assert_eq!(g, DiagGroup::cyclic(3, &[-1, 2]).unwrap());

        // A smooth cone gives the trivial group.
        let g = group_from_cone(&[vec![1, 0], vec![1, 1]]).unwrap();
        assert!(g.is_trivial());

        // Rays 2e_1, 3e_2: the product 1/2(1,0) x 1/3(0,1) = 1/6(3,2).
        let g = group_from_cone(&[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g, DiagGroup::cyclic(6, &[3, 2]).unwrap());
    }
}
