//! Stringy E-functions of varieties with abelian-quotient resolution data.
//!
//! The central evaluator takes strata `(E(Y_k), G_k, ν_k)` of an embedded
//! Q-resolution and sums
//!
//! ```text
//!   E_st = Σ_k E(Y_k) · E(S_{G_k}(ν_k)) · ∏_i (q−1)/(q^{ν_{k,i}}−1),
//! ```
//!
//! in the single variable `q = uv` (Hodge–Tate classes only), where
//! `E(S_G(ν)) = Σ_{γ∈G} q^{ϖ_ν(γ)}`. Entries with `ν = 1` contribute the
//! factor `1`. Specialized front ends build the strata from a weighted
//! blow-up of a semi-quasihomogeneous singularity or from a simplicial
//! subdivision of the Newton fan of a non-degenerate polynomial.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::config::Config;
use crate::count::{self, Region};
use crate::error::{Error, Result};
use crate::groups::{self, DiagGroup};
use crate::poly::{MPoly, SqhData};
use crate::rat::{rat, Int, Rat};
use crate::toric::{self, NonDegenerate};
use crate::zeta::{self, SliceShape};

/// Polynomial in `q` with rational exponents and integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EPoly {
    pub terms: BTreeMap<Rat, Int>,
}

impl EPoly {
    pub fn zero() -> EPoly {
        EPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> EPoly {
        EPoly::term(Rat::zero(), Int::one())
    }

    /// The single term `c · q^e`.
    pub fn term(e: Rat, c: Int) -> EPoly {
        let mut p = EPoly::zero();
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn from_int(c: i64) -> EPoly {
        EPoly::term(Rat::zero(), Int::from(c))
    }

    /// `q^e` for an integer exponent.
    pub fn q_pow(e: i64) -> EPoly {
        EPoly::term(rat(e), Int::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, e: Rat, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &EPoly) -> EPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> EPoly {
        EPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &EPoly) -> EPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &EPoly) -> EPoly {
        let mut out = EPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Int) -> EPoly {
        if c.is_zero() {
            return EPoly::zero();
        }
        EPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Evaluates at a rational `q` (fails for genuinely fractional
    /// exponents unless the base is a perfect power; intended for integer
    /// exponent data in tests).
    pub fn eval_int_exponents(&self, q: &Rat) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            if !e.is_integer() {
                return None;
            }
            let k = i64::try_from(e.to_integer()).ok()?;
            let mut t = Rat::one();
            if k >= 0 {
                for _ in 0..k {
                    t *= q;
                }
            } else {
                for _ in 0..(-k) {
                    t /= q;
                }
            }
            acc += t * crate::rat::rat_int(c.clone());
        }
        Some(acc)
    }

    /// Exact division by `q^e − 1`; `None` when the division leaves a
    /// remainder.
    pub fn div_binomial(&self, e: &Rat) -> Option<EPoly> {
        assert!(e.is_positive(), "binomial exponent must be positive");
        // Divide from the top: leading term c·q^a needs quotient term
        // c·q^{a−e}; subtract c·(q^a − q^{a−e}) and repeat.
        let mut rem = self.clone();
        let mut quot = EPoly::zero();
        let low = match self.terms.keys().next() {
            Some(l) => l.clone(),
            None => return Some(EPoly::zero()),
        };
        while let Some((a, c)) = rem.terms.iter().next_back().map(|(a, c)| (a.clone(), c.clone())) {
            let qe = a.clone() - e;
            if qe < low {
                return None;
            }
            quot.insert(qe.clone(), c.clone());
            rem.insert(a, -c.clone());
            rem.insert(qe, c);
        }
        Some(quot)
    }

    /// Pretty form like `q^2 + 2*q + 1` or `q^(4/3)`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "q".into()
            } else if e.is_integer() {
                format!("q^{}", e.numer())
            } else {
                format!("q^({}/{})", e.numer(), e.denom())
            };
            if power.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{}*{}", abs, power));
            }
        }
        out
    }
}

impl fmt::Display for EPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Rational function in `q`: a numerator over a multiset of binomial
/// factors `q^ν − 1` recorded by their exponents.
#[derive(Debug, Clone)]
pub struct EPolyRat {
    pub num: EPoly,
    /// Sorted exponents ν of denominator factors `q^ν − 1`.
    pub den: Vec<Rat>,
}

impl EPolyRat {
    pub fn zero() -> EPolyRat {
        EPolyRat {
            num: EPoly::zero(),
            den: Vec::new(),
        }
    }

    pub fn from_poly(p: EPoly) -> EPolyRat {
        EPolyRat {
            num: p,
            den: Vec::new(),
        }
    }

    fn den_poly(exps: &[Rat]) -> EPoly {
        let mut d = EPoly::one();
        for e in exps {
            d = d.mul(&EPoly::term(e.clone(), Int::one()).sub(&EPoly::one()));
        }
        d
    }

    pub fn add(&self, other: &EPolyRat) -> EPolyRat {
        // Common denominator: multiset union-max.
        let mut union: BTreeMap<Rat, usize> = BTreeMap::new();
        for e in &self.den {
            *union.entry(e.clone()).or_insert(0) += 1;
        }
        let mut counts_other: BTreeMap<Rat, usize> = BTreeMap::new();
        for e in &other.den {
            *counts_other.entry(e.clone()).or_insert(0) += 1;
        }
        for (e, c) in &counts_other {
            let cur = union.entry(e.clone()).or_insert(0);
            *cur = (*cur).max(*c);
        }
        let mut den: Vec<Rat> = Vec::new();
        for (e, c) in &union {
            for _ in 0..*c {
                den.push(e.clone());
            }
        }
        let missing = |own: &[Rat]| -> Vec<Rat> {
            let mut have: BTreeMap<Rat, usize> = BTreeMap::new();
            for e in own {
                *have.entry(e.clone()).or_insert(0) += 1;
            }
            let mut m = Vec::new();
            for (e, c) in &union {
                let h = have.get(e).copied().unwrap_or(0);
                for _ in 0..c - h {
                    m.push(e.clone());
                }
            }
            m
        };
        let num = self
            .num
            .mul(&EPolyRat::den_poly(&missing(&self.den)))
            .add(&other.num.mul(&EPolyRat::den_poly(&missing(&other.den))));
        EPolyRat { num, den }.simplified()
    }

    pub fn mul(&self, other: &EPolyRat) -> EPolyRat {
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        den.sort();
        EPolyRat {
            num: self.num.mul(&other.num),
            den,
        }
        .simplified()
    }

    /// Cancels denominator binomials dividing the numerator exactly.
    fn simplified(mut self) -> EPolyRat {
        if self.num.is_zero() {
            return EPolyRat::zero();
        }
        self.den.sort();
        loop {
            let mut progress = false;
            for i in 0..self.den.len() {
                if let Some(q) = self.num.div_binomial(&self.den[i]) {
                    self.num = q;
                    self.den.remove(i);
                    progress = true;
                    break;
                }
            }
            if !progress {
                break;
            }
        }
        self
    }

    /// The value as a plain polynomial, when the denominator cancels fully.
    pub fn try_polynomial(&self) -> Option<EPoly> {
        if self.den.is_empty() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Exact equality as rational functions (cross multiplication).
    pub fn eq_rat(&self, other: &EPolyRat) -> bool {
        self.num.mul(&EPolyRat::den_poly(&other.den))
            == other.num.mul(&EPolyRat::den_poly(&self.den))
    }

    pub fn pretty(&self) -> String {
        if self.den.is_empty() {
            return self.num.pretty();
        }
        let den: Vec<String> = self
            .den
            .iter()
            .map(|e| {
                if e.is_one() {
                    "(q - 1)".to_string()
                } else if e.is_integer() {
                    format!("(q^{} - 1)", e.numer())
                } else {
                    format!("(q^({}/{}) - 1)", e.numer(), e.denom())
                }
            })
            .collect();
        format!("({}) / ({})", self.num.pretty(), den.join("*"))
    }
}

impl PartialEq for EPolyRat {
    fn eq(&self, other: &Self) -> bool {
        self.eq_rat(other)
    }
}

impl Eq for EPolyRat {}

/// One stratum of resolution data for the stringy evaluator.
#[derive(Debug, Clone)]
pub struct StringyStratum {
    /// E-polynomial of the (quotient) stratum.
    pub e_class: EPoly,
    /// Local quotient group acting in the stratum's normal directions.
    pub group: DiagGroup,
    /// Log-discrepancy exponents, one per local coordinate; entries equal
    /// to 1 contribute trivial factors.
    pub nu: Vec<Rat>,
}

/// Evaluates the stringy E-function from a list of resolution strata.
pub fn stringy_from_qres(strata: &[StringyStratum]) -> Result<EPolyRat> {
    let mut total = EPolyRat::zero();
    for (k, st) in strata.iter().enumerate() {
        if st.nu.len() != st.group.n() {
            return Err(Error::contract(format!(
                "stratum {k}: ν has {} entries but the group acts on {} coordinates",
                st.nu.len(),
                st.group.n()
            )));
        }
        if st.nu.iter().any(|v| !v.is_positive()) {
            return Err(Error::NotLogTerminal(format!(
                "stratum {k} has a non-positive discrepancy exponent"
            )));
        }
        // E(S_G(ν)) = Σ_γ q^{ϖ_ν(γ)}.
        let mut es = EPoly::zero();
        let r = st.group.order();
        for eps in st.group.elements() {
            let mut acc = Rat::zero();
            for (nu, &e) in st.nu.iter().zip(eps) {
                acc += nu * rat(e as i64);
            }
            es = es.add(&EPoly::term(acc / rat(r as i64), Int::one()));
        }
        // ∏_i (q−1)/(q^{ν_i}−1), skipping the identity factors ν_i = 1.
        let mut den: Vec<Rat> = Vec::new();
        let mut pow_q_minus_1 = 0usize;
        for nu in &st.nu {
            if !nu.is_one() {
                den.push(nu.clone());
                pow_q_minus_1 += 1;
            }
        }
        let mut num = st.e_class.mul(&es);
        let q_minus_1 = EPoly::q_pow(1).sub(&EPoly::one());
        for _ in 0..pow_q_minus_1 {
            num = num.mul(&q_minus_1);
        }
        den.sort();
        total = total.add(&EPolyRat { num, den }.simplified());
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Semi-quasihomogeneous hypersurfaces via the weighted blow-up.
// ---------------------------------------------------------------------------

/// The stabilizer of `C_I`, acting on the slice `(λ, u_m)_{m∉{i,j}}` of the
/// strict transform after the defining equation eliminates `u_j`.
fn surface_slice_group(w: &[i64], i: usize, j: usize, r: u64) -> Result<DiagGroup> {
    let mut exps = vec![-1i64];
    for (m, &wm) in w.iter().enumerate() {
        if m != i && m != j {
            exps.push(wm);
        }
    }
    DiagGroup::cyclic(r, &exps)
}

/// Stringy E-function of a hypersurface `H = {f = 0}` with a
/// semi-quasihomogeneous equation and no singular point outside the origin,
/// via the weighted blow-up at the origin.
///
/// The strict transform `π: Ĥ → H` is an isomorphism off the origin and
/// meets the exceptional divisor in the same strata `E_{i,j} ∩ C_I` as the
/// motivic zeta function; inside `Ĥ` the exceptional divisor has log
/// discrepancy `|w| − d` (adjunction from `K = (|w|−1)E` and `Ĥ = Π*H − dE`),
/// so
///
/// ```text
///   E_st(H) = E(H) − 1
///           + Σ_{i,I,j} E((E_{i,j}∩C_I)/G_i) · E(S(ν)) · (q−1)/(q^{|w|−d}−1)
/// ```
///
/// with `ν = (|w|−d, 1, …, 1)` on the slice coordinates `(λ, u_m)_{m∉{i,j}}`
/// and `S(ν)` the character sum of the `C_I`-stabilizer. A non-positive
/// `|w| − d` means `H` is not log terminal.
pub fn stringy_sqh(sqh: &SqhData, cfg: &Config) -> Result<EPolyRat> {
    let n = zeta::check_dim(sqh)?;
    let w = &sqh.w;
    let wsum: i64 = w.iter().sum();
    let nu0 = wsum - sqh.d;
    if nu0 <= 0 {
        return Err(Error::NotLogTerminal(format!(
            "the exceptional divisor has log discrepancy |w| - d = {nu0}"
        )));
    }

    let mut strata: Vec<StringyStratum> = Vec::new();

    // Off the exceptional divisor the blow-up is an isomorphism onto H−{0}.
    let mut h = Region::affine(n);
    h.equations.push(sqh.f.clone());
    let e_h = count::epoly_oracle(
        &h,
        &DiagGroup::trivial(n),
        n - 1,
        cfg,
        "the affine hypersurface",
    )?;
    strata.push(StringyStratum {
        e_class: e_h.sub(&EPoly::one()),
        group: DiagGroup::trivial(1),
        nu: vec![Rat::one()],
    });

    for i in 0..n {
        let g_d = sqh.f_d.set_var_one(i);
        for subset in zeta::chart_subsets(n, i) {
            let r = zeta::stab_order(w, i, &subset);
            for j in 0..n {
                if j == i {
                    continue;
                }
                let label = format!(
                    "chart {}, I={}: strict transform stratum, j={}",
                    i + 1,
                    zeta::fmt_subset(&subset),
                    j + 1
                );
                let e_class = match zeta::intersection_shape(&g_d, i, &subset, j) {
                    SliceShape::Point(hit) => {
                        if hit {
                            EPoly::one()
                        } else {
                            continue;
                        }
                    }
                    SliceShape::Empty => continue,
                    SliceShape::Torus(region) => {
                        let image = zeta::face_image_group(w, i, &subset)?;
                        count::epoly_oracle(&region, &image, subset.len(), cfg, &label)?
                    }
                };
                if e_class.is_zero() {
                    continue;
                }
                let mut nu = vec![Rat::one(); n - 1];
                nu[0] = rat(nu0);
                strata.push(StringyStratum {
                    e_class,
                    group: surface_slice_group(w, i, j, r)?,
                    nu,
                });
            }
        }
    }
    stringy_from_qres(&strata)
}

// ---------------------------------------------------------------------------
// Non-degenerate hypersurfaces via the Newton fan.
// ---------------------------------------------------------------------------

/// Strict transform of `f` on the chart of a simplicial cone: the term
/// `c·x^a` becomes `c·∏_l u_l^{a·ρ_l − m_l}` with `m_l = φ_f(ρ_l)`, so the
/// exceptional monomial `∏ u_l^{m_l}` is divided out.
fn strict_transform(f: &MPoly, rays: &[Vec<i64>], m: &[i64]) -> Result<MPoly> {
    let mut out = MPoly::zero(f.n);
    for (a, c) in &f.terms {
        let mut exps: Vec<u32> = Vec::with_capacity(rays.len());
        for (ray, &ml) in rays.iter().zip(m) {
            let e: i64 = ray
                .iter()
                .zip(a)
                .map(|(&r, &ai)| r * ai as i64)
                .sum::<i64>()
                - ml;
            let e = u32::try_from(e)
                .map_err(|_| Error::internal("strict-transform exponent out of range"))?;
            exps.push(e);
        }
        out.insert(exps, c.clone());
    }
    Ok(out)
}

/// Image of the chart group on the coordinates in `subset`.
fn image_on(group: &DiagGroup, subset: &[usize]) -> Result<DiagGroup> {
    let r = group.order();
    let gens: Vec<(u64, Vec<i64>)> = group
        .elements()
        .iter()
        .map(|eps| (r, subset.iter().map(|&m| eps[m] as i64).collect()))
        .collect();
    DiagGroup::from_generators(subset.len(), &gens)
}

/// Subgroup of the chart group fixing `C_I` pointwise, acting on every
/// coordinate except the eliminated `j`.
fn stabilizer_dropping(group: &DiagGroup, subset: &[usize], j: usize) -> Result<DiagGroup> {
    let r = group.order();
    let n = group.n();
    let gens: Vec<(u64, Vec<i64>)> = group
        .elements()
        .iter()
        .filter(|eps| subset.iter().all(|&m| eps[m] == 0))
        .map(|eps| {
            (
                r,
                (0..n).filter(|&l| l != j).map(|l| eps[l] as i64).collect(),
            )
        })
        .collect();
    DiagGroup::from_generators(n - 1, &gens)
}

/// Stringy E-function of `H = {f = 0}` for a non-degenerate `f` with no
/// singular point outside the origin, via the toric morphism of a simplicial
/// subdivision of the normal fan of `f` that keeps the rays.
///
/// Chart `i` of the subdivision is `U_{σ_i} ≅ C^n/G_{σ_i}` with one
/// coordinate per ray; the divisor of ray `ρ` carries log discrepancy
/// `ρ·(1,…,1) − φ_f(ρ)`, which must be positive. The charts are made
/// disjoint by removing the earlier ones: `C_I` survives in chart `i` iff no
/// earlier cone contains every ray indexed outside `I`. On each surviving
/// stratum the strict transform is sliced by the first torus coordinate
/// `j ∈ I` whose partial derivative survives — non-degeneracy of the face
/// polynomial guarantees the slices cover — and the slice contributes
///
/// ```text
///   E((E_{i,j}∩C_I)/G_{σ_i}) · E(S(ν)) · ∏_{l∉I} (q−1)/(q^{ν_l}−1),
/// ```
///
/// with `ν_l = 1` on the torus coordinates `l ∈ I∖{j}` and the ray
/// discrepancy otherwise, and `S(ν)` the character sum of the stabilizer.
pub fn stringy_nondeg(f: &MPoly, cfg: &Config) -> Result<EPolyRat> {
    let n = f.n;
    if n < 2 {
        return Err(Error::contract(
            "the Newton-fan path needs at least two variables",
        ));
    }
    let cert = toric::is_nondegenerate(f, cfg)?;
    if let NonDegenerate::Degenerate { witness } = &cert {
        return Err(Error::contract(format!(
            "the polynomial is degenerate: {witness}"
        )));
    }
    let nd = toric::newton_polyhedron(f)?;
    let fan = toric::simplicial_subdivide(&toric::normal_fan(&nd))?;
    let cones = &fan.maximal_cones;

    let mut strata: Vec<StringyStratum> = Vec::new();
    for (i, cone) in cones.iter().enumerate() {
        let rays = &cone.rays;
        if rays.len() != n {
            return Err(Error::internal(
                "maximal cone of the subdivided fan is not full-dimensional",
            ));
        }
        let mut m = Vec::with_capacity(n);
        let mut nu_ray = Vec::with_capacity(n);
        for ray in rays {
            let ml = toric::phi(&nd, ray)?;
            let nu = ray.iter().sum::<i64>() - ml;
            if nu <= 0 {
                return Err(Error::NotLogTerminal(format!(
                    "the divisor of ray ({}) has log discrepancy {nu}",
                    ray.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )));
            }
            m.push(ml);
            nu_ray.push(nu);
        }
        let g = strict_transform(f, rays, &m)?;
        if g.constant_term().is_zero() {
            // The constant term is the coefficient of the vertex dual to the
            // cone, so this indicates corrupted Newton data.
            return Err(Error::Presentation(
                "the strict transform passes through a chart base point".to_string(),
            ));
        }
        let group = groups::group_from_cone(rays)?;

        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
            if subset.is_empty() {
                continue;
            }
            // C_I lies in an earlier chart iff that cone has every ray whose
            // coordinate vanishes on C_I.
            let dominated = cones[..i].iter().any(|prev| {
                (0..n).all(|l| subset.contains(&l) || prev.rays.contains(&rays[l]))
            });
            if dominated {
                continue;
            }
            let k = subset.len();
            let g_i = zeta::restrict_to_face(&g, &subset);
            if g_i.is_constant() {
                continue;
            }
            let image = image_on(&group, &subset)?;
            let mut eqs: Vec<MPoly> = vec![g_i.clone()];
            for (pos, &j) in subset.iter().enumerate() {
                let ineq = g_i.partial(pos);
                if ineq.is_zero() {
                    continue;
                }
                let label = format!(
                    "cone {}, I={}: strict transform stratum, j={}",
                    i + 1,
                    zeta::fmt_subset(&subset),
                    j + 1
                );
                let mut region = Region::torus(k);
                region.equations = eqs.clone();
                if !ineq.is_constant() {
                    region.inequations.push(ineq.clone());
                }
                let e_class = count::epoly_oracle(&region, &image, k, cfg, &label)?;
                if !e_class.is_zero() {
                    let nu: Vec<Rat> = (0..n)
                        .filter(|&l| l != j)
                        .map(|l| {
                            if subset.contains(&l) {
                                Rat::one()
                            } else {
                                rat(nu_ray[l])
                            }
                        })
                        .collect();
                    strata.push(StringyStratum {
                        e_class,
                        group: stabilizer_dropping(&group, &subset, j)?,
                        nu,
                    });
                }
                if ineq.is_constant() {
                    // Every later slice would contain a nonzero constant
                    // among its equations.
                    break;
                }
                eqs.push(ineq);
            }
        }
    }
    stringy_from_qres(&strata)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{self, Isolated};
    use crate::rat::ratio;

    #[test]
    fn epoly_arithmetic_and_division() {
        // (q^2 − 1) / (q − 1) = q + 1.
        let p = EPoly::q_pow(2).sub(&EPoly::one());
        let q = p.div_binomial(&rat(1)).unwrap();
        assert_eq!(q, EPoly::q_pow(1).add(&EPoly::one()));

        // q^2 − 1 = (q^{2/3} − 1)(q^{4/3} + q^{2/3} + 1).
        let quot = p.div_binomial(&ratio(2, 3)).unwrap();
        let expected = EPoly::term(ratio(4, 3), Int::one())
            .add(&EPoly::term(ratio(2, 3), Int::one()))
            .add(&EPoly::one());
        assert_eq!(quot, expected);

        // Non-divisible case.
        assert!(EPoly::q_pow(1).add(&EPoly::one()).div_binomial(&rat(1)).is_none());
    }

    #[test]
    fn smooth_stratum_is_plain_e_polynomial() {
        // Smooth X presented by itself: E(X) back unchanged.
        let strata = [StringyStratum {
            e_class: EPoly::q_pow(2),
            group: DiagGroup::trivial(2),
            nu: vec![rat(1), rat(1)],
        }];
        let e = stringy_from_qres(&strata).unwrap();
        assert_eq!(e.try_polynomial().unwrap(), EPoly::q_pow(2));
    }

    #[test]
    fn orbifold_identity_vs_minimal_resolution() {
        // C²/(1/3(1,1)) presented by the identity map: smooth part plus the
        // origin with its quotient group.
        let g = DiagGroup::cyclic(3, &[1, 1]).unwrap();
        let ident = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(2),
                nu: vec![rat(1), rat(1)],
            },
            StringyStratum {
                e_class: EPoly::one(),
                group: g,
                nu: vec![rat(1), rat(1)],
            },
        ];
        let a = stringy_from_qres(&ident).unwrap();
        let expected = EPoly::q_pow(2)
            .add(&EPoly::term(ratio(4, 3), Int::one()))
            .add(&EPoly::term(ratio(2, 3), Int::one()));
        assert_eq!(a.try_polynomial().unwrap(), expected);

        // Same space via its minimal resolution: exceptional P¹ with log
        // discrepancy 2/3.
        let resolved = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![rat(1)],
            },
            StringyStratum {
                e_class: EPoly::q_pow(1).add(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![ratio(2, 3)],
            },
        ];
        let b = stringy_from_qres(&resolved).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn orbifold_order_two() {
        // C²/(1/2(1,1)): q² + q both ways.
        let g = DiagGroup::cyclic(2, &[1, 1]).unwrap();
        let ident = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(2),
                nu: vec![rat(1), rat(1)],
            },
            StringyStratum {
                e_class: EPoly::one(),
                group: g,
                nu: vec![rat(1), rat(1)],
            },
        ];
        let a = stringy_from_qres(&ident).unwrap();
        assert_eq!(
            a.try_polynomial().unwrap(),
            EPoly::q_pow(2).add(&EPoly::q_pow(1))
        );

        // Minimal resolution: one (−2)-curve, log discrepancy 1.
        let resolved = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![rat(1)],
            },
            StringyStratum {
                e_class: EPoly::q_pow(1).add(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![rat(1)],
            },
        ];
        let b = stringy_from_qres(&resolved).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn log_terminality_is_enforced() {
        let strata = [StringyStratum {
            e_class: EPoly::one(),
            group: DiagGroup::trivial(1),
            nu: vec![rat(0)],
        }];
        assert!(matches!(
            stringy_from_qres(&strata),
            Err(Error::NotLogTerminal(_))
        ));
    }

    fn sqh(src: &str, w: &[i64]) -> SqhData {
        let f = poly::parse_with_default_vars(src, w.len()).unwrap();
        let cert = if w.len() <= 2 {
            poly::isolated_exact_low_dim(&f).unwrap()
        } else {
            Isolated::Asserted
        };
        poly::sqh_data(&f, w, cert).unwrap()
    }

    #[test]
    fn quadric_cone_matches_its_crepant_resolution() {
        // x² + y² + z² = 0: blowing up the vertex is crepant with
        // exceptional P¹×P¹, so E_st = E(P¹×P¹) + (q−1)·E(P¹) − contributions
        // assembling to q² + q.
        let cfg = Config::default();
        let e = stringy_sqh(&sqh("x^2+y^2+z^2", &[1, 1, 1]), &cfg).unwrap();
        assert_eq!(
            e.try_polynomial().unwrap(),
            EPoly::q_pow(2).add(&EPoly::q_pow(1))
        );
    }

    #[test]
    fn du_val_surfaces_through_both_constructions() {
        // x² + y² + z³ = 0 has two exceptional curves in its minimal
        // resolution, both crepant: E_st = q² + 2q.
        let cfg = Config::default();
        let expected = EPoly::q_pow(2)
            .add(&EPoly::q_pow(1))
            .add(&EPoly::q_pow(1));
        let a = stringy_sqh(&sqh("x^2+y^2+z^3", &[3, 3, 2]), &cfg).unwrap();
        assert_eq!(a.try_polynomial().unwrap(), expected);

        let f = poly::parse_with_default_vars("x^2+y^2+z^3", 3).unwrap();
        let b = stringy_nondeg(&f, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn threefold_node_agrees_with_its_small_resolution() {
        // x² + y² + z² + w² = 0 admits a small resolution (exceptional P¹,
        // empty discrepancy data), so E_st = E(H) − 1 + E(P¹).
        let cfg = Config::default();
        let mut h = Region::affine(4);
        h.equations
            .push(poly::parse_with_default_vars("x^2+y^2+z^2+w^2", 4).unwrap());
        let e_h = count::epoly_oracle(&h, &DiagGroup::trivial(4), 3, &cfg, "the node").unwrap();
        let expected = e_h
            .sub(&EPoly::one())
            .add(&EPoly::q_pow(1))
            .add(&EPoly::one());
        assert_eq!(
            expected,
            EPoly::q_pow(3).add(&EPoly::q_pow(2)),
            "E(H) − 1 + (q+1) with E(H) counted directly"
        );

        let a = stringy_sqh(&sqh("x^2+y^2+z^2+w^2", &[1, 1, 1, 1]), &cfg).unwrap();
        assert_eq!(a.try_polynomial().unwrap(), expected);

        let f = poly::parse_with_default_vars("x^2+y^2+z^2+w^2", 4).unwrap();
        let b = stringy_nondeg(&f, &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coordinate_changed_quadric_cone() {
        // xy + z² = 0 is the quadric cone again; its normal fan has a
        // non-simplicial cone, exercising the subdivision and the chart
        // disjointness rule.
        let cfg = Config::default();
        let f = poly::parse_with_default_vars("x*y+z^2", 3).unwrap();
        let a = stringy_nondeg(&f, &cfg).unwrap();
        assert_eq!(
            a.try_polynomial().unwrap(),
            EPoly::q_pow(2).add(&EPoly::q_pow(1))
        );

        let b = stringy_sqh(&sqh("x*y+z^2", &[1, 1, 1]), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn non_log_terminal_inputs_are_rejected() {
        let cfg = Config::default();
        // Cusp: |w| − d = 5 − 6 < 0.
        assert!(matches!(
            stringy_sqh(&sqh("x^2+y^3", &[3, 2]), &cfg),
            Err(Error::NotLogTerminal(_))
        ));
        // Node curve: |w| − d = 0.
        assert!(matches!(
            stringy_sqh(&sqh("x^2+y^2", &[1, 1]), &cfg),
            Err(Error::NotLogTerminal(_))
        ));
        // The Newton fan of the cusp sees the same failure on the ray (3,2).
        let f = poly::parse_with_default_vars("x^2+y^3", 2).unwrap();
        assert!(matches!(
            stringy_nondeg(&f, &cfg),
            Err(Error::NotLogTerminal(_))
        ));
    }

    #[test]
    fn smooth_hypersurfaces_reduce_to_their_own_e_polynomial() {
        // x + y² = 0 is smooth: E_st = E(H) = q.
        let cfg = Config::default();
        let e = stringy_sqh(&sqh("x+y^2", &[2, 1]), &cfg).unwrap();
        assert_eq!(e.try_polynomial().unwrap(), EPoly::q_pow(1));
    }

    #[test]
    fn stringy_euler_numbers_specialize_finitely() {
        // The coefficient sum at q → 1 is the stringy Euler number.
        let cfg = Config::default();
        let euler = |e: &EPolyRat| -> Int {
            e.try_polynomial()
                .unwrap()
                .terms
                .values()
                .fold(Int::zero(), |acc, c| acc + c)
        };
        let a1 = stringy_sqh(&sqh("x^2+y^2+z^2", &[1, 1, 1]), &cfg).unwrap();
        assert_eq!(euler(&a1), Int::from(2));
        let a2 = stringy_sqh(&sqh("x^2+y^2+z^3", &[3, 3, 2]), &cfg).unwrap();
        assert_eq!(euler(&a2), Int::from(3));
        let node = stringy_sqh(&sqh("x^2+y^2+z^2+w^2", &[1, 1, 1, 1]), &cfg).unwrap();
        assert_eq!(euler(&node), Int::from(2));
    }
}
