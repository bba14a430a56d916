//! Exact symbolic arithmetic for zeta functions of the form
//!
//! ```text
//!   L^e · num(T, L) / ∏_i (1 − T^{N_i} L^{−ν_i}),     T = L^{−s},
//! ```
//!
//! with rational exponents on both `T` and `L`.  The module provides the
//! Laurent-polynomial ring in the two symbols, exact division by the
//! denominator binomials, normalization to a canonical fraction (common
//! denominator, cancellation and exchange of repeated binomials), the pole
//! set, and the two specializations: the topological zeta function in the
//! single variable `s`, and the `p`-adic evaluation `L ↦ p`.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::groups::SgSum;
use crate::rat::{rat, rat_int, Int, QPoly, Rat, RatFn};
use crate::zeta::MotZeta;

/// A denominator factor `F(N, ν)`, standing for the rational function
/// `(L−1) T^N L^{−ν} / (1 − T^N L^{−ν})`.  The pair `(0, 1)` is the
/// identity by convention and never contributes a factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorNu {
    pub n: Rat,
    pub nu: Rat,
}

impl FactorNu {
    pub fn new(n: Rat, nu: Rat) -> FactorNu {
        FactorNu { n, nu }
    }

    pub fn from_ints(n: i64, nu: i64) -> FactorNu {
        FactorNu {
            n: rat(n),
            nu: rat(nu),
        }
    }

    /// The identity factor `F(0, 1) = 1`.
    pub fn is_identity(&self) -> bool {
        self.n.is_zero() && self.nu.is_one()
    }

    /// Candidate pole `−ν/N` contributed by this factor, when `N > 0`.
    pub fn pole(&self) -> Option<Rat> {
        if self.n.is_positive() {
            Some(-(self.nu.clone() / self.n.clone()))
        } else {
            None
        }
    }

    /// Writes `(N, ν) = g · (N₀, ν₀)` with `(N₀, ν₀)` a primitive integer
    /// vector and `g ≥ 2` an integer, when such a decomposition exists.
    fn primitive_with_multiplier(&self) -> Option<(FactorNu, u64)> {
        let scale = rat_int(self.n.denom().lcm(self.nu.denom()));
        let a = (self.n.clone() * scale.clone()).to_integer();
        let b = (self.nu.clone() * scale.clone()).to_integer();
        if a.is_negative() || (a.is_zero() && b.is_zero()) {
            return None;
        }
        let g0 = a.gcd(&b);
        let prim = FactorNu::new(rat_int(a / g0.clone()), rat_int(b / g0.clone()));
        let g = rat_int(g0) / scale.to_integer();
        if !g.is_integer() {
            return None;
        }
        let g = g.to_integer().to_u64()?;
        if g >= 2 {
            Some((prim, g))
        } else {
            None
        }
    }

    /// Canonical sort key: factors with `N > 0` come first, ordered by the
    /// pole `−ν/N` ascending and then by `(N, ν)`; factors with `N = 0` come
    /// last.
    fn sort_key(&self) -> (u8, Rat, Rat, Rat) {
        if self.n.is_zero() {
            (1, Rat::zero(), self.n.clone(), self.nu.clone())
        } else {
            (
                0,
                -(self.nu.clone() / self.n.clone()),
                self.n.clone(),
                self.nu.clone(),
            )
        }
    }
}

impl Ord for FactorNu {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for FactorNu {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for FactorNu {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F({}, {})", self.n, self.nu)
    }
}

/// A Laurent polynomial in the two symbols `T` and `L` with rational
/// exponents and rational coefficients, stored sparsely as a map from the
/// exponent pair `(e_T, e_L)` to the coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentLT {
    pub terms: BTreeMap<(Rat, Rat), Rat>,
}

impl LaurentLT {
    pub fn zero() -> LaurentLT {
        LaurentLT::default()
    }

    pub fn one() -> LaurentLT {
        LaurentLT::term(Rat::zero(), Rat::zero(), Rat::one())
    }

    /// The single term `c · T^{e_T} L^{e_L}`.
    pub fn term(e_t: Rat, e_l: Rat, c: Rat) -> LaurentLT {
        let mut p = LaurentLT::zero();
        p.insert(e_t, e_l, c);
        p
    }

    pub fn l_pow(e: i64) -> LaurentLT {
        LaurentLT::term(Rat::zero(), rat(e), Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e_t: Rat, e_l: Rat, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (e_t, e_l);
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// Embeds an integer polynomial in `L`.
    pub fn from_grval(g: &crate::count::GrVal) -> LaurentLT {
        let mut p = LaurentLT::zero();
        for (i, c) in g.coeffs.iter().enumerate() {
            p.insert(Rat::zero(), rat(i as i64), rat_int(c.clone()));
        }
        p
    }

    /// Embeds a character sum: the term `c · L^{a·s + b}` becomes
    /// `c · T^{−a} L^{b}` under `T = L^{−s}`.
    pub fn from_sgsum(s: &SgSum) -> LaurentLT {
        let mut p = LaurentLT::zero();
        for ((a, b), c) in &s.terms {
            p.insert(-a.clone(), b.clone(), rat_int(c.clone()));
        }
        p
    }

    /// The denominator binomial `1 − T^N L^{−ν}`.
    pub fn binomial(f: &FactorNu) -> LaurentLT {
        let mut p = LaurentLT::one();
        p.insert(f.n.clone(), -f.nu.clone(), -Rat::one());
        p
    }

    /// The numerator of `F(N, ν)`: `(L−1) T^N L^{−ν} = T^N L^{1−ν} − T^N L^{−ν}`.
    pub fn fnu_numerator(f: &FactorNu) -> LaurentLT {
        let mut p = LaurentLT::zero();
        p.insert(f.n.clone(), Rat::one() - f.nu.clone(), Rat::one());
        p.insert(f.n.clone(), -f.nu.clone(), -Rat::one());
        p
    }

    pub fn add(&self, other: &LaurentLT) -> LaurentLT {
        let mut out = self.clone();
        for ((a, b), c) in &other.terms {
            out.insert(a.clone(), b.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> LaurentLT {
        let mut out = LaurentLT::zero();
        for ((a, b), c) in &self.terms {
            out.insert(a.clone(), b.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LaurentLT) -> LaurentLT {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentLT) -> LaurentLT {
        let mut out = LaurentLT::zero();
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.insert(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> LaurentLT {
        let mut out = LaurentLT::zero();
        for ((a, b), k) in &self.terms {
            out.insert(a.clone(), b.clone(), k * c);
        }
        out
    }

    /// Least common multiple of all exponent denominators (the grid size).
    pub fn exponent_denominator(&self) -> Int {
        let mut l = Int::one();
        for (a, b) in self.terms.keys() {
            l = l.lcm(a.denom());
            l = l.lcm(b.denom());
        }
        l
    }

    /// Exact division, returning `None` when `other` does not divide
    /// `self`.  The divisor must carry a single term on its top level along
    /// the `T` axis or, failing that, along the `L` axis; every binomial
    /// `1 − T^N L^{−ν}` and every exchange quotient has this shape.
    pub fn divide_exact(&self, other: &LaurentLT) -> Option<LaurentLT> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(LaurentLT::zero());
        }
        for swap in [false, true] {
            if other.has_monomial_top(swap) {
                return self.divide_along(other, swap);
            }
        }
        unreachable!("divisor has several terms on its top level along both axes");
    }

    fn has_monomial_top(&self, swap: bool) -> bool {
        let primary = |k: &(Rat, Rat)| if swap { k.1.clone() } else { k.0.clone() };
        let top = self.terms.keys().map(&primary).max().expect("nonzero");
        self.terms.keys().filter(|k| primary(k) == top).count() == 1
    }

    /// Long division along one exponent axis.  Terms are processed from the
    /// top; an exact quotient never needs exponents below
    /// `min(self) − min(other)` on the chosen axis, so crossing that bound
    /// certifies non-divisibility.
    fn divide_along(&self, other: &LaurentLT, swap: bool) -> Option<LaurentLT> {
        let swapped = |m: &BTreeMap<(Rat, Rat), Rat>| -> BTreeMap<(Rat, Rat), Rat> {
            m.iter()
                .map(|((a, b), c)| {
                    let k = if swap {
                        (b.clone(), a.clone())
                    } else {
                        (a.clone(), b.clone())
                    };
                    (k, c.clone())
                })
                .collect()
        };
        let mut rem = swapped(&self.terms);
        let div = swapped(&other.terms);
        let ((dp, ds), dc) = {
            let (k, c) = div.iter().next_back().expect("nonzero divisor");
            (k.clone(), c.clone())
        };
        let div_min = div.keys().map(|k| k.0.clone()).min().expect("nonzero");
        let rem_min = rem.keys().map(|k| k.0.clone()).min().expect("nonzero");
        let quot_floor = rem_min - div_min;
        let mut quot: BTreeMap<(Rat, Rat), Rat> = BTreeMap::new();
        while let Some(((rp, rs), rc)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone()))
        {
            let qp = rp - dp.clone();
            if qp < quot_floor {
                return None;
            }
            let qs = rs - ds.clone();
            let qc = rc / dc.clone();
            for ((ap, asx), ac) in &div {
                let key = (qp.clone() + ap, qs.clone() + asx);
                let entry = rem.entry(key.clone()).or_insert_with(Rat::zero);
                *entry -= qc.clone() * ac;
                if entry.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.insert((qp, qs), qc);
        }
        let mut out = LaurentLT::zero();
        for ((p, s), c) in quot {
            if swap {
                out.insert(s, p, c);
            } else {
                out.insert(p, s, c);
            }
        }
        Some(out)
    }

    /// Renders the polynomial with `T` and `L` symbols, highest `T` power
    /// last, e.g. `L^2 - L - T + T*L^-1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<(Rat, Rat)> = self.terms.keys().cloned().collect();
        keys.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));
        let mut out = String::new();
        for key in keys {
            let c = &self.terms[&key];
            let (et, el) = key;
            let mut parts: Vec<String> = Vec::new();
            if !et.is_zero() {
                parts.push(if et.is_one() {
                    "T".to_string()
                } else {
                    format!("T^{}", et)
                });
            }
            if !el.is_zero() {
                parts.push(if el.is_one() {
                    "L".to_string()
                } else {
                    format!("L^{}", el)
                });
            }
            let abs = c.abs();
            if parts.is_empty() || !abs.is_one() {
                parts.insert(0, format!("{}", abs));
            }
            let body = parts.join("*");
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            out.push_str(&body);
        }
        out
    }
}

impl std::fmt::Display for LaurentLT {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// A zeta function in canonical fraction form: a global power of `L`, a
/// Laurent numerator, and a product of denominator binomials `1 − T^N L^{−ν}`
/// listed in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalZeta {
    pub prefactor_exponent: i64,
    pub num: LaurentLT,
    pub den: Vec<FactorNu>,
}

fn multiset(factors: &[FactorNu]) -> BTreeMap<FactorNu, usize> {
    let mut m = BTreeMap::new();
    for f in factors {
        if !f.is_identity() {
            *m.entry(f.clone()).or_insert(0) += 1;
        }
    }
    m
}

/// `Σ_{j=0}^{count−1} B^{j·step}` for `B = T^{N₀} L^{−ν₀}`: the exact
/// quotient `(1 − B^{step·count}) / (1 − B^{step})`.
fn geometric_quotient(prim: &FactorNu, step: u64, count: u64) -> LaurentLT {
    let mut p = LaurentLT::zero();
    for j in 0..count {
        let k = rat((j * step) as i64);
        p.insert(k.clone() * prim.n.clone(), -(k * prim.nu.clone()), Rat::one());
    }
    p
}

/// Puts a term-list zeta function over a single canonical denominator.
///
/// The steps are: (1) take the union of the per-term factor multisets as the
/// common denominator and assemble the numerator; (2) cancel denominator
/// binomials that divide the numerator exactly; (3) replace a repeated
/// binomial `1 − B^g` by `1 − B^k` for the smallest proper divisor `k | g`
/// whose quotient divides the numerator.  Steps (2) and (3) run to a fixed
/// point, and the surviving factors are sorted by their pole.
pub fn normalize(z: &MotZeta, cfg: &Config) -> Result<RationalZeta> {
    let mut grid = Int::one();
    for t in &z.terms {
        if t.class.known().is_none() {
            return Err(Error::NonPolynomialClass(format!(
                "stratum `{}` has a symbolic class",
                t.label
            )));
        }
        for (a, b) in t.sg.terms.keys() {
            grid = grid.lcm(a.denom());
            grid = grid.lcm(b.denom());
        }
        for f in &t.factors {
            if f.n.is_zero() && f.nu.is_zero() {
                return Err(Error::contract("denominator factor F(0, 0)"));
            }
            grid = grid.lcm(f.n.denom());
            grid = grid.lcm(f.nu.denom());
        }
    }
    if grid > Int::from(cfg.max_r) {
        return Err(Error::contract(format!(
            "exponent denominator {} exceeds the configured bound {}",
            grid, cfg.max_r
        )));
    }

    let mut den: BTreeMap<FactorNu, usize> = BTreeMap::new();
    for t in &z.terms {
        for (f, m) in multiset(&t.factors) {
            let e = den.entry(f).or_insert(0);
            *e = (*e).max(m);
        }
    }

    let mut num = LaurentLT::zero();
    for t in &z.terms {
        let class = t.class.known().expect("checked above");
        let mut part = LaurentLT::from_grval(class).mul(&LaurentLT::from_sgsum(&t.sg));
        let mine = multiset(&t.factors);
        for (f, m) in &mine {
            for _ in 0..*m {
                part = part.mul(&LaurentLT::fnu_numerator(f));
            }
        }
        for (f, m) in &den {
            let extra = m - mine.get(f).copied().unwrap_or(0);
            for _ in 0..extra {
                part = part.mul(&LaurentLT::binomial(f));
            }
        }
        num = num.add(&part);
    }

    'fixpoint: loop {
        let factors: Vec<FactorNu> = den.keys().cloned().collect();
        for f in &factors {
            if let Some(q) = num.divide_exact(&LaurentLT::binomial(f)) {
                num = q;
                let e = den.get_mut(f).expect("present");
                *e -= 1;
                if *e == 0 {
                    den.remove(f);
                }
                continue 'fixpoint;
            }
        }
        for f in &factors {
            let Some((prim, g)) = f.primitive_with_multiplier() else {
                continue;
            };
            for k in 1..g {
                if g % k != 0 {
                    continue;
                }
                let quotient = geometric_quotient(&prim, k, g / k);
                if let Some(q) = num.divide_exact(&quotient) {
                    num = q;
                    let e = den.get_mut(f).expect("present");
                    *e -= 1;
                    if *e == 0 {
                        den.remove(f);
                    }
                    let replacement = FactorNu::new(
                        rat(k as i64) * prim.n.clone(),
                        rat(k as i64) * prim.nu.clone(),
                    );
                    *den.entry(replacement).or_insert(0) += 1;
                    continue 'fixpoint;
                }
            }
        }
        break;
    }

    let mut flat: Vec<FactorNu> = Vec::new();
    for (f, m) in den {
        for _ in 0..m {
            flat.push(f.clone());
        }
    }
    flat.sort();
    Ok(RationalZeta {
        prefactor_exponent: z.prefactor_exponent,
        num,
        den: flat,
    })
}

/// The poles of a zeta function in the variable `s`, with multiplicities:
/// denominator binomials that divide the numerator are cancelled first
/// (to a fixed point), and each surviving factor `1 − T^N L^{−ν}` with
/// `N > 0` contributes the pole `s = −ν/N`.
pub fn poles(z: &RationalZeta) -> BTreeMap<Rat, usize> {
    let mut num = z.num.clone();
    let mut remaining: Vec<FactorNu> = z
        .den
        .iter()
        .filter(|f| f.n.is_positive())
        .cloned()
        .collect();
    loop {
        let mut progressed = false;
        for i in 0..remaining.len() {
            if let Some(q) = num.divide_exact(&LaurentLT::binomial(&remaining[i])) {
                num = q;
                remaining.remove(i);
                progressed = true;
                break;
            }
        }
        if !progressed {
            break;
        }
    }
    let mut out: BTreeMap<Rat, usize> = BTreeMap::new();
    for f in remaining {
        *out.entry(f.pole().expect("positive N")).or_insert(0) += 1;
    }
    out
}

/// The topological zeta function: an exact rational function of `s` with an
/// integer-normalized factored denominator.
#[derive(Debug, Clone, Eq)]
pub struct TopZeta {
    pub num: QPoly,
    pub den: Vec<QPoly>,
}

impl TopZeta {
    pub fn new(num: QPoly, den: Vec<QPoly>) -> TopZeta {
        TopZeta { num, den }
    }

    fn den_product(&self) -> QPoly {
        let mut p = QPoly::one();
        for d in &self.den {
            p = p.mul(d);
        }
        p
    }

    /// Compact rendering such as `(4s+5)/((s+1)(6s+5))`.
    pub fn pretty(&self) -> String {
        let num = compact_poly(&self.num);
        if self.den.is_empty() {
            return num;
        }
        let num = if self.num.clone().trimmed().0.len() > 1 {
            format!("({})", num)
        } else {
            num
        };
        let factors: Vec<String> = self.den.iter().map(|d| format!("({})", compact_poly(d))).collect();
        let body = factors.concat();
        if self.den.len() > 1 {
            format!("{}/({})", num, body)
        } else {
            format!("{}/{}", num, body)
        }
    }
}

/// Two presentations are equal when they agree as rational functions.
impl PartialEq for TopZeta {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den_product()) == other.num.mul(&self.den_product())
    }
}

impl std::fmt::Display for TopZeta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Renders a polynomial in `s` without spaces, highest power first:
/// `4s+5`, `s^2+2s+1`, `-s+2`.
fn compact_poly(p: &QPoly) -> String {
    let coeffs = p.clone().trimmed().0;
    if coeffs.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push('-');
        } else {
            out.push('+');
        }
        let abs = c.abs();
        let var = match k {
            0 => String::new(),
            1 => "s".to_string(),
            _ => format!("s^{}", k),
        };
        if var.is_empty() {
            out.push_str(&format!("{}", abs));
        } else if abs.is_one() {
            out.push_str(&var);
        } else {
            out.push_str(&format!("{}{}", abs, var));
        }
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

/// Assembles a topological zeta function from strata: each item contributes
/// `c · ∏_i 1/(N_i s + ν_i)`.  Identity factors are dropped, factors with
/// `N = 0` fold into the constant, and `(0, 0)` is rejected.
pub fn top_zeta_from_strata(items: &[(Rat, Vec<FactorNu>)]) -> Result<TopZeta> {
    let linear = |f: &FactorNu| QPoly::linear(f.nu.clone(), f.n.clone());
    let mut folded: Vec<(Rat, BTreeMap<FactorNu, usize>)> = Vec::new();
    for (c, fs) in items {
        let mut c = c.clone();
        let mut ms: BTreeMap<FactorNu, usize> = BTreeMap::new();
        for f in fs {
            if f.n.is_zero() && f.nu.is_zero() {
                return Err(Error::NonSpecializable(
                    "factor F(0, 0) has no value at s".to_string(),
                ));
            }
            if f.is_identity() {
                continue;
            }
            if f.n.is_zero() {
                c /= f.nu.clone();
            } else {
                *ms.entry(f.clone()).or_insert(0) += 1;
            }
        }
        folded.push((c, ms));
    }

    let mut den: BTreeMap<FactorNu, usize> = BTreeMap::new();
    for (_, ms) in &folded {
        for (f, m) in ms {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
    }

    let mut num = QPoly::zero();
    for (c, ms) in &folded {
        let mut part = QPoly::constant(c.clone());
        for (f, m) in &den {
            let extra = m - ms.get(f).copied().unwrap_or(0);
            for _ in 0..extra {
                part = part.mul(&linear(f));
            }
        }
        num = num.add(&part);
    }

    'cancel: loop {
        let factors: Vec<FactorNu> = den.keys().cloned().collect();
        for f in &factors {
            let (q, r) = num.div_rem(&linear(f));
            if r.is_zero() {
                num = q;
                let e = den.get_mut(f).expect("present");
                *e -= 1;
                if *e == 0 {
                    den.remove(f);
                }
                continue 'cancel;
            }
        }
        break;
    }

    let mut flat: Vec<FactorNu> = Vec::new();
    for (f, m) in den {
        for _ in 0..m {
            flat.push(f.clone());
        }
    }
    flat.sort();
    let mut scale = Rat::one();
    let mut den_polys: Vec<QPoly> = Vec::new();
    for f in &flat {
        let raw = linear(f);
        let prim = raw.integer_normalized();
        let lead = |p: &QPoly| p.clone().trimmed().0.last().cloned().unwrap_or_else(Rat::zero);
        scale *= lead(&raw) / lead(&prim);
        den_polys.push(prim);
    }
    if !scale.is_one() {
        num = num.scale(&(Rat::one() / scale));
    }
    if num.is_zero() {
        den_polys.clear();
    }
    Ok(TopZeta::new(num, den_polys))
}

/// Specializes a term-list zeta function to the topological one: each term
/// `[X] · S_G(N, ν) · ∏ F(N_i, ν_i)` contributes
/// `χ(X) · |G| · ∏ 1/(N_i s + ν_i)`.
pub fn specialize_topological(z: &MotZeta) -> Result<TopZeta> {
    let mut items: Vec<(Rat, Vec<FactorNu>)> = Vec::new();
    for t in &z.terms {
        let class = t.class.known().ok_or_else(|| {
            Error::NonSpecializable(format!("stratum `{}` has a symbolic class", t.label))
        })?;
        let weight = class.euler() * t.sg.total();
        items.push((rat_int(weight), t.factors.clone()));
    }
    top_zeta_from_strata(&items)
}

fn integer_power(p: u64, e: &Rat) -> Result<Rat> {
    if !e.is_integer() {
        return Err(Error::contract(format!(
            "exponent {} is not an integer, cannot evaluate at L = {}",
            e, p
        )));
    }
    let k = e
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::contract("exponent out of range"))?;
    let base = rat(p as i64);
    let mut out = Rat::one();
    for _ in 0..k.unsigned_abs() {
        out *= base.clone();
    }
    if k < 0 {
        out = out.recip();
    }
    Ok(out)
}

/// Evaluates a canonical zeta function at `L = p`, producing an exact
/// rational function of `T` over `ℚ`.  All exponents must be integers and
/// all `T`-exponents nonnegative.
pub fn specialize_padic(z: &RationalZeta, p: u64) -> Result<RatFn> {
    if p < 2 {
        return Err(Error::contract("evaluation point must be at least 2"));
    }
    let mut num = QPoly::zero();
    for ((et, el), c) in &z.num.terms {
        if !et.is_integer() || et.is_negative() {
            return Err(Error::contract(format!(
                "numerator T-exponent {} is not a nonnegative integer",
                et
            )));
        }
        let k = et
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::contract("T-exponent out of range"))?;
        let coeff = c.clone() * integer_power(p, el)?;
        num = num.add(&QPoly::monomial(coeff, k));
    }
    num = num.scale(&integer_power(p, &rat(z.prefactor_exponent))?);
    let mut den = QPoly::one();
    for f in &z.den {
        if !f.n.is_integer() || f.n.is_negative() {
            return Err(Error::contract(format!(
                "denominator factor {} has a non-integer or negative N",
                f
            )));
        }
        let k = f
            .n
            .to_integer()
            .to_usize()
            .ok_or_else(|| Error::contract("N out of range"))?;
        let factor = QPoly::constant(Rat::one()).sub(&QPoly::monomial(integer_power(p, &-f.nu.clone())?, k));
        den = den.mul(&factor);
    }
    Ok(RatFn::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::GrVal;
    use crate::rat::ratio;
    use crate::zeta::{ClassVal, MotZeta};

    fn b(n: i64, nu: i64) -> LaurentLT {
        LaurentLT::binomial(&FactorNu::from_ints(n, nu))
    }

    #[test]
    fn ring_operations() {
        // (1 − B)(1 + B) = 1 − B² for B = T L^{−1}.
        let one_minus = b(1, 1);
        let mut one_plus = LaurentLT::one();
        one_plus.insert(rat(1), rat(-1), Rat::one());
        assert_eq!(one_minus.mul(&one_plus), b(2, 2));

        // A character sum term c·L^{a·s+b} maps to c·T^{−a} L^{b}.
        let mut s = SgSum::zero();
        s.terms.insert((ratio(-1, 2), ratio(3, 2)), Int::from(5));
        let p = LaurentLT::from_sgsum(&s);
        assert_eq!(
            p,
            LaurentLT::term(ratio(1, 2), ratio(3, 2), rat(5))
        );

        let g = GrVal::from_coeffs(vec![Int::from(-1), Int::from(1)]);
        let lg = LaurentLT::from_grval(&g);
        assert_eq!(lg.pretty(), "L - 1");
        assert!(lg.sub(&lg).is_zero());
    }

    #[test]
    fn exact_division_along_both_axes() {
        // T-axis: (1 − B²) / (1 − B) = 1 + B.
        let q = b(2, 2).divide_exact(&b(1, 1)).expect("divides");
        let mut expected = LaurentLT::one();
        expected.insert(rat(1), rat(-1), Rat::one());
        assert_eq!(q, expected);

        // L-axis: (1 − L^{−2}) / (1 − L^{−1}) = 1 + L^{−1}.
        let q = b(0, 2).divide_exact(&b(0, 1)).expect("divides");
        let mut expected = LaurentLT::one();
        expected.insert(rat(0), rat(-1), Rat::one());
        assert_eq!(q, expected);

        // (L − 1)² B² is not divisible by 1 − B.
        let lm1 = LaurentLT::from_grval(&GrVal::from_coeffs(vec![Int::from(-1), Int::from(1)]));
        let numerator = lm1.mul(&lm1).mul(&LaurentLT::term(rat(2), rat(-2), Rat::one()));
        assert!(numerator.divide_exact(&b(1, 1)).is_none());

        // Round-trip on a denser product.
        let f = lm1.mul(&b(3, 2)).mul(&b(1, 1));
        assert_eq!(
            f.divide_exact(&b(3, 2)).expect("divides"),
            lm1.mul(&b(1, 1))
        );
    }

    #[test]
    fn normalization_of_a_single_term() {
        let mut z = MotZeta::new(1, 0);
        z.push(
            "axis",
            ClassVal::Known(GrVal::one()),
            SgSum::one(),
            vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(0, 1)],
        );
        let r = normalize(&z, &Config::default()).expect("normalizes");
        assert_eq!(r.prefactor_exponent, 0);
        assert_eq!(r.den, vec![FactorNu::from_ints(1, 1)]);
        let mut expected = LaurentLT::term(rat(1), rat(0), Rat::one());
        expected.insert(rat(1), rat(-1), -Rat::one());
        assert_eq!(r.num, expected);
    }

    #[test]
    fn normalization_exchanges_repeated_binomials() {
        // Local zeta of a normal crossing of two smooth branches: the strata
        // contribute (L−1)·F(2,2) + 2·F(1,1)F(2,2) with prefactor L^{−2}.
        let mut z = MotZeta::new(2, -2);
        z.push(
            "divisor",
            ClassVal::Known(GrVal::from_coeffs(vec![Int::from(-1), Int::from(1)])),
            SgSum::one(),
            vec![FactorNu::from_ints(2, 2)],
        );
        z.push(
            "crossings",
            ClassVal::Known(GrVal::from_int(2)),
            SgSum::one(),
            vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(2, 2)],
        );
        let r = normalize(&z, &Config::default()).expect("normalizes");
        assert_eq!(
            r.den,
            vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(1, 1)]
        );
        let lm1 = LaurentLT::from_grval(&GrVal::from_coeffs(vec![Int::from(-1), Int::from(1)]));
        let expected = lm1.mul(&lm1).mul(&LaurentLT::term(rat(2), rat(-2), Rat::one()));
        assert_eq!(r.num, expected);
        assert_eq!(r.prefactor_exponent, -2);

        let pole_counts = poles(&r);
        assert_eq!(pole_counts, BTreeMap::from([(rat(-1), 2)]));
    }

    #[test]
    fn exponent_grid_bound_is_enforced() {
        let mut z = MotZeta::new(1, 0);
        z.push(
            "fine",
            ClassVal::Known(GrVal::one()),
            SgSum::one(),
            vec![FactorNu::new(ratio(1, 3), rat(1))],
        );
        let cfg = Config {
            max_r: 2,
            ..Config::default()
        };
        assert!(matches!(normalize(&z, &cfg), Err(Error::Contract(_))));
    }

    #[test]
    fn pole_counting_cancels_removable_factors() {
        // (1 − B)(1 + L) over the factor (1,1): the binomial cancels and no
        // pole remains.
        let mut one_plus_l = LaurentLT::one();
        one_plus_l.insert(rat(0), rat(1), Rat::one());
        let z = RationalZeta {
            prefactor_exponent: 0,
            num: b(1, 1).mul(&one_plus_l),
            den: vec![FactorNu::from_ints(1, 1)],
        };
        assert!(poles(&z).is_empty());

        // A factor with N = 0 is constant in T and never contributes a pole.
        let z = RationalZeta {
            prefactor_exponent: 0,
            num: LaurentLT::one(),
            den: vec![FactorNu::from_ints(0, 2)],
        };
        assert!(poles(&z).is_empty());
    }

    #[test]
    fn topological_assembly_and_rendering() {
        // −1/(3s+2) + 3/((3s+2)(s+1)) = (2−s)/((3s+2)(s+1)).
        let items = vec![
            (rat(-1), vec![FactorNu::from_ints(3, 2)]),
            (
                rat(3),
                vec![FactorNu::from_ints(3, 2), FactorNu::from_ints(1, 1)],
            ),
        ];
        let t = top_zeta_from_strata(&items).expect("assembles");
        let expected = TopZeta::new(
            QPoly::linear(rat(2), rat(-1)),
            vec![QPoly::linear(rat(1), rat(1)), QPoly::linear(rat(2), rat(3))],
        );
        assert_eq!(t, expected);

        // The strata of the cusp x² + y³: 4/(6s+5) + 1/((6s+5)(s+1)).
        let items = vec![
            (rat(-1), vec![FactorNu::from_ints(6, 5)]),
            (rat(3), vec![FactorNu::from_ints(6, 5)]),
            (rat(2), vec![FactorNu::from_ints(6, 5)]),
            (
                rat(1),
                vec![FactorNu::from_ints(6, 5), FactorNu::from_ints(1, 1)],
            ),
        ];
        let t = top_zeta_from_strata(&items).expect("assembles");
        assert_eq!(t.pretty(), "(4s+5)/((s+1)(6s+5))");
    }

    #[test]
    fn padic_evaluation_matches_geometric_series() {
        let mut z = MotZeta::new(1, 0);
        z.push(
            "axis",
            ClassVal::Known(GrVal::one()),
            SgSum::one(),
            vec![FactorNu::from_ints(1, 1)],
        );
        let r = normalize(&z, &Config::default()).expect("normalizes");
        let f = specialize_padic(&r, 5).expect("integral exponents");
        let series = f.series(3).expect("regular at 0");
        assert_eq!(
            series,
            vec![rat(0), ratio(4, 5), ratio(4, 25), ratio(4, 125)]
        );

        // Fractional L-exponents are refused.
        let z = RationalZeta {
            prefactor_exponent: 0,
            num: LaurentLT::term(rat(1), ratio(1, 2), Rat::one()),
            den: vec![],
        };
        assert!(matches!(specialize_padic(&z, 5), Err(Error::Contract(_))));
    }
}
