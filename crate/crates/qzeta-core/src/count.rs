//! Finite-field point counting and the interpolation oracle.
//!
//! This module provides the independent arithmetic back end: brute-force
//! point counts of constructible sets over `F_q`, Frobenius-twisted
//! Burnside counts for quotients by diagonal cyclic actions, congruence
//! interpolation of counting polynomials to classes in `ℤ[L]`, and exact
//! Euler-characteristic oracles for torus hypersurfaces and projective
//! Fermat hypersurfaces.
//!
//! A class `[X] ∈ ℤ[L]` is recovered from counts `#X(F_q)` at primes in
//! suitable congruence classes; when no integer polynomial fits, the class
//! is reported as non-polynomial rather than approximated.

use num::{One, Signed, Zero};

use crate::config::Config;
use crate::error::{Error, Result};
use crate::groups::DiagGroup;
use crate::poly::MPoly;
use crate::rat::{
    is_prime_u64, invmod, mulmod, powmod, primitive_root, rat, rat_int, rat_mod, Int, QPoly, Rat,
    RatFn,
};
use crate::stringy::EPoly;

/// Element of `ℤ[L]`: coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GrVal {
    pub coeffs: Vec<Int>,
}

impl GrVal {
    pub fn zero() -> GrVal {
        GrVal { coeffs: vec![] }
    }

    pub fn from_int(c: i64) -> GrVal {
        GrVal::from_coeffs(vec![Int::from(c)])
    }

    pub fn one() -> GrVal {
        GrVal::from_int(1)
    }

    /// `L^k`.
    pub fn l_pow(k: usize) -> GrVal {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = Int::one();
        GrVal { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Int>) -> GrVal {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        GrVal { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn add(&self, other: &GrVal) -> GrVal {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![Int::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[i] += c;
        }
        GrVal::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> GrVal {
        GrVal {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &GrVal) -> GrVal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &GrVal) -> GrVal {
        if self.is_zero() || other.is_zero() {
            return GrVal::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        GrVal::from_coeffs(coeffs)
    }

    pub fn pow(&self, k: usize) -> GrVal {
        let mut out = GrVal::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn scale(&self, c: &Int) -> GrVal {
        GrVal::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Evaluation at an integer value of `L`.
    pub fn eval_int(&self, q: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q + c;
        }
        acc
    }

    /// Euler characteristic: the value at `L = 1`.
    pub fn euler(&self) -> Int {
        self.eval_int(&Int::one())
    }

    /// The Hodge–Tate E-polynomial: `L^k ↦ q^k`.
    pub fn to_epoly(&self) -> EPoly {
        let mut e = EPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            e = e.add(&EPoly::term(rat(k as i64), c.clone()));
        }
        e
    }

    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let power = match k {
                0 => String::new(),
                1 => "L".into(),
                _ => format!("L^{k}"),
            };
            if power.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{abs}*{power}"));
            }
        }
        out
    }
}

impl std::fmt::Display for GrVal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// A constructible subset of affine space: common zeros of `equations`,
/// non-vanishing of `inequations`, with selected coordinates restricted to
/// be nonzero.
#[derive(Debug, Clone)]
pub struct Region {
    pub n: usize,
    pub equations: Vec<MPoly>,
    pub inequations: Vec<MPoly>,
    pub nonzero_coords: Vec<bool>,
}

impl Region {
    pub fn affine(n: usize) -> Region {
        Region {
            n,
            equations: vec![],
            inequations: vec![],
            nonzero_coords: vec![false; n],
        }
    }

    pub fn torus(n: usize) -> Region {
        Region {
            n,
            equations: vec![],
            inequations: vec![],
            nonzero_coords: vec![true; n],
        }
    }

    fn check(&self) -> Result<()> {
        if self.nonzero_coords.len() != self.n {
            return Err(Error::internal("region coordinate flags have wrong length"));
        }
        for p in self.equations.iter().chain(&self.inequations) {
            if p.n != self.n {
                return Err(Error::internal("region polynomial in wrong number of variables"));
            }
        }
        Ok(())
    }
}

/// Polynomial with coefficients reduced mod `q`, ready for evaluation.
struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    fn reduce(p: &MPoly, q: u64) -> Result<ModPoly> {
        let mut terms = Vec::new();
        for (e, c) in &p.terms {
            let m = rat_mod(c, q).ok_or_else(|| {
                Error::contract(format!("prime {q} divides a coefficient denominator"))
            })?;
            if m != 0 {
                terms.push((e.clone(), m));
            }
        }
        Ok(ModPoly { terms })
    }

    fn eval(&self, point: &[u64], q: u64) -> u64 {
        let mut acc: u64 = 0;
        for (exps, c) in &self.terms {
            let mut t = *c;
            for (x, &e) in point.iter().zip(exps.iter()) {
                if e > 0 {
                    t = mulmod(t, powmod(*x, e as u64, q), q);
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }
}

fn enumeration_size(region: &Region, q: u64) -> u128 {
    let mut size: u128 = 1;
    for &nz in &region.nonzero_coords {
        let dom = if nz { (q - 1) as u128 } else { q as u128 };
        size = size.saturating_mul(dom);
    }
    size
}

/// Counts the points of a region over `F_q` by enumeration.
pub fn count_points(region: &Region, q: u64, cfg: &Config) -> Result<u64> {
    region.check()?;
    if !is_prime_u64(q) {
        return Err(Error::contract(format!("{q} is not prime")));
    }
    let size = enumeration_size(region, q);
    if size > cfg.max_enum {
        return Err(Error::Budget {
            needed: size,
            limit: cfg.max_enum,
        });
    }
    let eqs: Vec<ModPoly> = region
        .equations
        .iter()
        .map(|p| ModPoly::reduce(p, q))
        .collect::<Result<_>>()?;
    let neqs: Vec<ModPoly> = region
        .inequations
        .iter()
        .map(|p| ModPoly::reduce(p, q))
        .collect::<Result<_>>()?;
    Ok(enumerate(region, q, &eqs, &neqs))
}

fn enumerate(region: &Region, q: u64, eqs: &[ModPoly], neqs: &[ModPoly]) -> u64 {
    let n = region.n;
    if n == 0 {
        let ok = eqs.iter().all(|p| p.eval(&[], q) == 0)
            && neqs.iter().all(|p| p.eval(&[], q) != 0);
        return ok as u64;
    }
    let mut point: Vec<u64> = region
        .nonzero_coords
        .iter()
        .map(|&nz| if nz { 1 } else { 0 })
        .collect();
    let mut count = 0u64;
    'outer: loop {
        let ok = eqs.iter().all(|p| p.eval(&point, q) == 0)
            && neqs.iter().all(|p| p.eval(&point, q) != 0);
        if ok {
            count += 1;
        }
        // Odometer step.
        for i in 0..n {
            point[i] += 1;
            if point[i] < q {
                continue 'outer;
            }
            point[i] = if region.nonzero_coords[i] { 1 } else { 0 };
        }
        break;
    }
    count
}

/// Searches the full torus `(F_q^*)^n` for a common zero of the given
/// polynomials, returning a witness point if one exists.
pub fn torus_common_zero_mod(eqs: &[MPoly], n: usize, q: u64) -> Result<Option<Vec<u64>>> {
    if !is_prime_u64(q) {
        return Err(Error::contract(format!("{q} is not prime")));
    }
    let reduced: Vec<ModPoly> = eqs.iter().map(|p| ModPoly::reduce(p, q)).collect::<Result<_>>()?;
    if n == 0 {
        return Ok(if reduced.iter().all(|p| p.eval(&[], q) == 0) {
            Some(vec![])
        } else {
            None
        });
    }
    let mut point = vec![1u64; n];
    'outer: loop {
        if reduced.iter().all(|p| p.eval(&point, q) == 0) {
            return Ok(Some(point));
        }
        for i in 0..n {
            point[i] += 1;
            if point[i] < q {
                continue 'outer;
            }
            point[i] = 1;
        }
        break;
    }
    Ok(None)
}

/// Counts `F_q`-points of the quotient of a region by a diagonal group
/// action, by the Frobenius-twisted Burnside formula
///
/// ```text
///   #(X/G)(F_q) = (1/|G|) Σ_{γ∈G} #{x : Frob(x) = γ·x, x ∈ X}.
/// ```
///
/// Each twisted set is counted by substituting `x_i = μ^{ε_i} y_i` with
/// `μ^r` identified with a primitive root of `F_q`, which turns every
/// semi-invariant constraint into a constraint over `F_q`. Requires
/// `|G| | q − 1`; every constraint polynomial must be semi-invariant and is
/// checked at runtime.
pub fn count_quotient(region: &Region, group: &DiagGroup, q: u64, cfg: &Config) -> Result<u64> {
    region.check()?;
    if region.n != group.n() {
        return Err(Error::contract(
            "group acts on a different number of coordinates than the region".to_string(),
        ));
    }
    if !is_prime_u64(q) {
        return Err(Error::contract(format!("{q} is not prime")));
    }
    let r = group.order();
    if (q - 1) % r != 0 {
        return Err(Error::contract(format!(
            "prime {q} is incompatible with a group of order {r} (need q ≡ 1 mod {r})"
        )));
    }
    let size = enumeration_size(region, q).saturating_mul(r as u128);
    if size > cfg.max_enum {
        return Err(Error::Budget {
            needed: size,
            limit: cfg.max_enum,
        });
    }
    let tau = primitive_root(q);
    let mut total: u64 = 0;
    for eps in group.elements() {
        let eqs: Vec<ModPoly> = region
            .equations
            .iter()
            .map(|p| twist_poly(p, eps, r, tau, q))
            .collect::<Result<_>>()?;
        let neqs: Vec<ModPoly> = region
            .inequations
            .iter()
            .map(|p| twist_poly(p, eps, r, tau, q))
            .collect::<Result<_>>()?;
        total += enumerate(region, q, &eqs, &neqs);
    }
    if total % (r as u64) != 0 {
        return Err(Error::internal(
            "Burnside sum not divisible by the group order",
        ));
    }
    Ok(total / r as u64)
}

/// Rewrites `h(μ^ε y)` as a polynomial over `F_q` in `y`, using `μ^r = τ`.
/// Fails if `h` is not semi-invariant for the group element.
fn twist_poly(h: &MPoly, eps: &[u64], r: u64, tau: u64, q: u64) -> Result<ModPoly> {
    let mut terms: Vec<(Vec<u32>, u64)> = Vec::new();
    let mut base: Option<i128> = None;
    for (exps, c) in &h.terms {
        let cm = rat_mod(c, q).ok_or_else(|| {
            Error::contract(format!("prime {q} divides a coefficient denominator"))
        })?;
        let e: i128 = exps
            .iter()
            .zip(eps.iter())
            .map(|(&a, &b)| a as i128 * b as i128)
            .sum();
        let b = *base.get_or_insert(e);
        let diff = e - b;
        if diff % r as i128 != 0 {
            return Err(Error::internal(
                "constraint polynomial is not semi-invariant under the group",
            ));
        }
        let mut steps = diff / r as i128;
        // μ^{e−b} = τ^{(e−b)/r}; negative steps use the inverse of τ.
        let unit = if steps >= 0 {
            tau
        } else {
            steps = -steps;
            invmod(tau, q)
        };
        let factor = powmod(unit, steps as u64, q);
        let m = mulmod(cm, factor, q);
        if m != 0 {
            terms.push((exps.clone(), m));
        }
    }
    Ok(ModPoly { terms })
}

/// Escalation multipliers for the congruence-interpolation ladder.
const ESCALATION: [u64; 8] = [1, 2, 3, 4, 6, 8, 12, 24];
/// How far to search for usable primes at each level.
const PRIME_SEARCH_CAP: u64 = 5000;

/// Interpolates an integer polynomial in `L` of degree at most `dim_bound`
/// through counts supplied by `counter` at primes `≡ 1 (mod base·k)`, with
/// one extra prime held out as a consistency check. The congruence modulus
/// escalates through multipliers `k ∈ {1,2,3,4,6,8,12,24}`; if no level
/// yields a consistent integer polynomial, the class is reported as
/// non-polynomial. An explicit prime list restricts the candidates to its
/// members (still filtered by the congruence condition, which Burnside
/// counting needs).
pub fn class_interpolate(
    counter: &mut dyn FnMut(u64) -> Result<u64>,
    dim_bound: usize,
    base_modulus: u64,
    primes: Option<&[u64]>,
    label: &str,
) -> Result<GrVal> {
    let needed = dim_bound + 2;
    for k in ESCALATION {
        let modulus = base_modulus * k;
        let mut points: Vec<(Int, Int)> = Vec::new();
        match primes {
            Some(list) => {
                for &p in list {
                    if points.len() == needed {
                        break;
                    }
                    if p > 2 && (modulus == 1 || p % modulus == 1) && is_prime_u64(p) {
                        if let Ok(v) = counter(p) {
                            points.push((Int::from(p), Int::from(v)));
                        }
                    }
                }
            }
            None => {
                let mut p = modulus + 1;
                while points.len() < needed && p < modulus * PRIME_SEARCH_CAP {
                    if is_prime_u64(p) && p > 2 {
                        if let Ok(v) = counter(p) {
                            points.push((Int::from(p), Int::from(v)));
                        }
                    }
                    p += modulus;
                }
            }
        }
        if points.len() < needed {
            continue;
        }
        let (holdout, fit) = points.split_last().unwrap();
        if let Some(gr) = fit_integer_polynomial(fit, dim_bound) {
            if gr.eval_int(&holdout.0) == holdout.1 {
                return Ok(gr);
            }
        }
    }
    Err(Error::NonPolynomialClass(label.to_string()))
}

/// Lagrange interpolation; `Some` only when the result has integer
/// coefficients and degree within the bound.
fn fit_integer_polynomial(points: &[(Int, Int)], dim_bound: usize) -> Option<GrVal> {
    let mut acc = QPoly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = QPoly::constant(rat_int(yi.clone()));
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = rat_int(xi - xj);
            // (x − xj)/(xi − xj)
            let lin = QPoly(vec![rat_int(-xj) / denom.clone(), Rat::one() / denom]);
            basis = basis.mul(&lin);
        }
        acc = acc.add(&basis);
    }
    if let Some(d) = acc.degree() {
        if d > dim_bound {
            return None;
        }
    }
    let mut coeffs = Vec::new();
    for c in &acc.0 {
        if !c.is_integer() {
            return None;
        }
        coeffs.push(c.to_integer());
    }
    Some(GrVal::from_coeffs(coeffs))
}

/// The class of a quotient `X/G` as an integer polynomial in `L`,
/// via twisted Burnside counts and congruence interpolation.
pub fn quotient_class(
    region: &Region,
    group: &DiagGroup,
    dim_bound: usize,
    cfg: &Config,
    label: &str,
) -> Result<GrVal> {
    let mut budget_hit: Option<Error> = None;
    let result = class_interpolate(
        &mut |q| match count_quotient(region, group, q, cfg) {
            Ok(v) => Ok(v),
            Err(e @ Error::Budget { .. }) => {
                budget_hit = Some(e.clone());
                Err(e)
            }
            Err(e) => Err(e),
        },
        dim_bound,
        group.order(),
        cfg.primes_override.as_deref(),
        label,
    );
    match result {
        Err(Error::NonPolynomialClass(_)) if budget_hit.is_some() => Err(budget_hit.unwrap()),
        other => other,
    }
}

/// The class of a plain region (trivial group).
pub fn region_class(region: &Region, dim_bound: usize, cfg: &Config, label: &str) -> Result<GrVal> {
    quotient_class(region, &DiagGroup::trivial(region.n), dim_bound, cfg, label)
}

/// E-polynomial oracle for a quotient region (Hodge–Tate classes only).
pub fn epoly_oracle(
    region: &Region,
    group: &DiagGroup,
    dim_bound: usize,
    cfg: &Config,
    label: &str,
) -> Result<EPoly> {
    Ok(quotient_class(region, group, dim_bound, cfg, label)?.to_epoly())
}

/// Euler characteristic of a class.
pub fn euler_char(class: &GrVal) -> Int {
    class.euler()
}

// ---------------------------------------------------------------------------
// p-adic verification: solution counts modulo p^m against the zeta function.
// ---------------------------------------------------------------------------

/// Result of the p-adic cross-check of the zeta pipeline: brute-force
/// solution counts `N_m` modulo `p^m`, compared coefficientwise against the
/// power series that the specialized zeta function predicts for the
/// Poincaré series `P(T) = Σ_m N_m (p^{−n}T)^m`.
#[derive(Debug, Clone)]
pub struct IgusaReport {
    /// The prime that was used.
    pub p: u64,
    /// Largest level checked.
    pub m_max: usize,
    /// `N_m = #{x ∈ (ℤ/p^m)^n : f(x) ≡ 0 (mod p^m)}` for `m = 1, …, m_max`.
    pub counts: Vec<u64>,
    /// `P(T) − (1 − T·Z_p(T))/(1 − T)` coefficientwise up to order `m_max`.
    pub residuals: Vec<Rat>,
    /// True when every residual vanishes.
    pub matched: bool,
}

/// Evaluates integer-reduced terms at a point modulo `modulus`.
fn eval_terms_mod(terms: &[(Vec<u32>, u64)], x: &[u64], modulus: u64) -> u64 {
    let mut acc = 0u64;
    for (a, c) in terms {
        let mut t = *c;
        for (&xi, &ai) in x.iter().zip(a) {
            if ai > 0 {
                t = mulmod(t, powmod(xi, ai as u64, modulus), modulus);
            }
        }
        acc = (acc + t) % modulus;
    }
    acc
}

/// Counts `N_m` for `m = 1, …, m_max` by lifting: only residues over a
/// solution modulo `p^{m−1}` are enumerated at level `m`, cutting the cost
/// from `p^{nm}` to `N_{m−1}·p^n` per level.
fn solution_counts(f: &MPoly, p: u64, m_max: usize, cfg: &Config) -> Result<Vec<u64>> {
    let n = f.n;
    let lifts = (p as u128).pow(n as u32);
    let mut modulus = 1u64;
    let mut counts = Vec::with_capacity(m_max);
    let mut sols: Vec<Vec<u64>> = vec![vec![0; n]];
    for _ in 0..m_max {
        let step = modulus;
        modulus *= p;
        let terms: Vec<(Vec<u32>, u64)> = f
            .terms
            .iter()
            .map(|(a, c)| {
                let c = rat_mod(c, modulus)
                    .ok_or_else(|| Error::contract("coefficient denominator shares a factor with p"))?;
                Ok((a.clone(), c))
            })
            .collect::<Result<_>>()?;
        let needed = sols.len() as u128 * lifts;
        if needed > cfg.max_enum {
            return Err(Error::Budget {
                needed,
                limit: cfg.max_enum,
            });
        }
        let mut next: Vec<Vec<u64>> = Vec::new();
        for base in &sols {
            let mut offset = vec![0u64; n];
            loop {
                let x: Vec<u64> = base
                    .iter()
                    .zip(&offset)
                    .map(|(&b, &e)| b + step * e)
                    .collect();
                if eval_terms_mod(&terms, &x, modulus) == 0 {
                    next.push(x);
                }
                let mut i = 0;
                while i < n {
                    offset[i] += 1;
                    if offset[i] < p {
                        break;
                    }
                    offset[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
        counts.push(next.len() as u64);
        sols = next;
    }
    Ok(counts)
}

/// Semi-quasihomogeneous data for the verification: facet-normal weight
/// inference first, then the all-ones weight as a fallback (it covers
/// polynomials such as `xy` whose Newton polyhedron has no compact facet).
fn verification_sqh(f: &MPoly, cfg: &Config) -> Result<crate::poly::SqhData> {
    if let Some(sqh) = crate::poly::infer_weight(f, cfg)? {
        return Ok(sqh);
    }
    let w = vec![1i64; f.n];
    let (f_d, _, _) = crate::poly::principal_part(f, &w)?;
    let cert = crate::poly::is_isolated_singularity(&f_d, cfg)?;
    if !cert.is_ok() {
        return Err(Error::NoWeight(
            "no weight with a certifiably isolated principal part was found".to_string(),
        ));
    }
    crate::poly::sqh_data(f, &w, cert)
}

/// Independent p-adic verification of the zeta pipeline.
///
/// Computes `N_m = #{x ∈ (ℤ/p^m)ⁿ : f(x) ≡ 0 (mod p^m)}` by enumeration
/// with level-by-level lifting, forms the Poincaré series
/// `P(T) = Σ_{m≥0} N_m (p^{−n}T)^m` (with `N_0 = 1`), and checks it as a
/// formal series to order `m_max` against `(1 − T·Z_p(T))/(1 − T)`, where
/// `Z_p` is the specialization `L ↦ p` of the motivic zeta function built
/// from the inferred weight.
///
/// The prime must be admissible: coprime to the quasihomogeneous degree,
/// to every weight, and to every coefficient of `f` (so that reduction
/// modulo `p` does not change the singularity the zeta function sees).
/// Coefficients must be integers. A one-variable polynomial is checked
/// against the zeta function of the same polynomial read in two variables;
/// both sides of the comparison are invariant under adding a free variable.
pub fn igusa_check(f: &MPoly, p: u64, m_max: usize, cfg: &Config) -> Result<IgusaReport> {
    if !is_prime_u64(p) {
        return Err(Error::contract(format!("{p} is not prime")));
    }
    if m_max == 0 {
        return Err(Error::contract("the check needs at least one level"));
    }
    if f.is_zero() || f.n == 0 {
        return Err(Error::contract(
            "the check needs a nonzero polynomial in at least one variable",
        ));
    }
    for c in f.terms.values() {
        if !c.is_integer() {
            return Err(Error::contract(
                "the polynomial must have integer coefficients; clear denominators first",
            ));
        }
        if (c.numer() % Int::from(p)).is_zero() {
            return Err(Error::contract(format!(
                "inadmissible prime {p}: it divides the coefficient {c}"
            )));
        }
    }

    // The counting side, on the polynomial as given.
    let counts = solution_counts(f, p, m_max, cfg)?;

    // The zeta side, on the polynomial padded to at least two variables.
    let padded = if f.n == 1 {
        let mut g = MPoly::zero(2);
        for (a, c) in &f.terms {
            g.insert(vec![a[0], 0], c.clone());
        }
        g
    } else {
        f.clone()
    };
    let sqh = verification_sqh(&padded, cfg)?;
    if sqh.d % p as i64 == 0 {
        return Err(Error::contract(format!(
            "inadmissible prime {p}: it divides the quasihomogeneous degree {}",
            sqh.d
        )));
    }
    if let Some(wi) = sqh.w.iter().find(|&&wi| wi % p as i64 == 0) {
        return Err(Error::contract(format!(
            "inadmissible prime {p}: it divides the weight {wi}"
        )));
    }
    let z = crate::zeta::motivic_zeta(&sqh, false, cfg)?;
    let zp = crate::symb::specialize_padic(&crate::symb::normalize(&z, cfg)?, p)?;
    let t = RatFn::from_poly(QPoly::monomial(Rat::one(), 1));
    let one_minus_t = RatFn::from_poly(QPoly(vec![Rat::one(), -Rat::one()]));
    let rhs = RatFn::one().sub(&t.mul(&zp)).div(&one_minus_t);
    let rhs_series = rhs
        .series(m_max)
        .ok_or_else(|| Error::internal("the specialized zeta function has a pole at T = 0"))?;

    let mut residuals = Vec::with_capacity(m_max + 1);
    let mut scale = Rat::one();
    let mut p_pow_n = Rat::one();
    for _ in 0..f.n {
        p_pow_n *= rat(p as i64);
    }
    residuals.push(Rat::one() - &rhs_series[0]);
    for (m, &nm) in counts.iter().enumerate() {
        scale /= &p_pow_n;
        residuals.push(rat_int(Int::from(nm)) * &scale - &rhs_series[m + 1]);
    }
    let matched = residuals.iter().all(|r| r.is_zero());
    Ok(IgusaReport {
        p,
        m_max,
        counts,
        residuals,
        matched,
    })
}

// ---------------------------------------------------------------------------
// Exact Euler characteristics of torus hypersurfaces and small systems.
// ---------------------------------------------------------------------------

/// Strips monomial factors: divides by the gcd of the monomials of `p`.
fn strip_monomial(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return p.clone();
    }
    let n = p.n;
    let mut min_exp = vec![u32::MAX; n];
    for e in p.terms.keys() {
        for i in 0..n {
            min_exp[i] = min_exp[i].min(e[i]);
        }
    }
    let mut out = MPoly::zero(n);
    for (e, c) in &p.terms {
        let shifted: Vec<u32> = e.iter().zip(&min_exp).map(|(a, b)| a - b).collect();
        out.insert(shifted, c.clone());
    }
    out
}

/// Number of distinct nonzero roots of a univariate polynomial: the degree
/// of the squarefree part after removing the root at zero.
fn distinct_nonzero_roots(p: &QPoly) -> Result<Int> {
    if p.is_zero() {
        return Err(Error::internal("root count of the zero polynomial"));
    }
    let mut coeffs = p.0.clone();
    while coeffs.first().map_or(false, |c| c.is_zero()) {
        coeffs.remove(0);
    }
    let stripped = QPoly(coeffs);
    let d = match stripped.degree() {
        None | Some(0) => return Ok(Int::zero()),
        Some(d) => d,
    };
    let deriv = QPoly(
        stripped
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect(),
    );
    let g = stripped.gcd(&deriv);
    let rep = g.degree().unwrap_or(0);
    Ok(Int::from((d - rep) as i64))
}

/// Twice the area of the convex hull of lattice points in the plane.
fn normalized_area(points: &[Vec<u32>]) -> Int {
    let pts: Vec<(i64, i64)> = points.iter().map(|p| (p[0] as i64, p[1] as i64)).collect();
    let hull = convex_hull_2d(&pts);
    if hull.len() < 3 {
        return Int::zero();
    }
    let mut twice_area = Int::zero();
    for i in 0..hull.len() {
        let (x1, y1) = hull[i];
        let (x2, y2) = hull[(i + 1) % hull.len()];
        twice_area += Int::from(x1) * Int::from(y2) - Int::from(x2) * Int::from(y1);
    }
    twice_area.abs()
}

fn convex_hull_2d(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i128 {
        (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Affine dimension of a set of lattice points.
fn affine_dim(points: &[Vec<u32>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(&a, &b)| a as i64 - b as i64).collect())
        .collect();
    rank_i64(&rows)
}

/// Rank of an integer matrix (exact, by rational elimination).
pub fn rank_i64(rows: &[Vec<i64>]) -> usize {
    let mut mat: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    if mat.is_empty() {
        return 0;
    }
    let ncols = mat[0].len();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let pivot = (row..mat.len()).find(|&r| !mat[r][col].is_zero());
        let Some(p) = pivot else { continue };
        mat.swap(row, p);
        let inv = mat[row][col].clone();
        for r in row + 1..mat.len() {
            if !mat[r][col].is_zero() {
                let factor = &mat[r][col] / &inv;
                for c in col..ncols {
                    let sub = &factor * &mat[row][c];
                    mat[r][c] -= sub;
                }
            }
        }
        rank += 1;
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    rank
}

/// Euler characteristic of a torus hypersurface `{h = 0} ∩ (ℂ^*)^k` by the
/// Newton-polytope formula `χ = (−1)^{k−1} k! Vol_k(Δ(h))`, valid for
/// polynomials non-degenerate with respect to their Newton polytope.
/// Supports `k ≤ 2`; `h ≡ 0` yields `χ((ℂ^*)^k)`.
pub fn chi_torus_hypersurface(h: &MPoly) -> Result<Int> {
    let k = h.n;
    if h.is_zero() {
        return Ok(if k == 0 { Int::one() } else { Int::zero() });
    }
    let h = strip_monomial(h);
    if h.is_constant() {
        // Nonzero constant: empty zero set.
        return Ok(Int::zero());
    }
    let support: Vec<Vec<u32>> = h.terms.keys().cloned().collect();
    match k {
        1 => {
            let p = QPoly(
                (0..=support.iter().map(|e| e[0]).max().unwrap() as usize)
                    .map(|d| {
                        h.terms
                            .get(&vec![d as u32])
                            .cloned()
                            .unwrap_or_else(Rat::zero)
                    })
                    .collect(),
            );
            distinct_nonzero_roots(&p)
        }
        2 => {
            let dim = affine_dim(&support);
            let vol2 = match dim {
                0 => Int::zero(),
                1 => {
                    // Support on a line: zero 2-volume, χ = 0 (finitely many
                    // cosets of a 1-dimensional subtorus).
                    Int::zero()
                }
                _ => normalized_area(&support),
            };
            Ok(-vol2)
        }
        _ => Err(Error::internal(format!(
            "torus Euler characteristic: {k} variables not supported (max 2)"
        ))),
    }
}

/// Euler characteristic of the common zero set of several polynomials on
/// the torus `(ℂ^*)^k`, `k ≤ 2`. Zero-dimensional two-variable systems are
/// solved by eliminating a variable that appears linearly.
pub fn chi_torus_variety(eqs: &[MPoly], k: usize) -> Result<Int> {
    let mut sys: Vec<MPoly> = Vec::new();
    for e in eqs {
        let s = strip_monomial(e);
        if s.is_zero() {
            continue;
        }
        if s.is_constant() {
            return Ok(Int::zero());
        }
        sys.push(s);
    }
    if sys.is_empty() {
        return Ok(if k == 0 { Int::one() } else { Int::zero() });
    }
    if k == 0 {
        return Ok(Int::zero());
    }
    if k == 1 {
        let mut g = univariate(&sys[0])?;
        for s in &sys[1..] {
            g = g.gcd(&univariate(s)?);
        }
        if g.degree().is_none() {
            return Err(Error::internal("unexpected zero gcd in torus system"));
        }
        return distinct_nonzero_roots(&g);
    }
    if k != 2 {
        return Err(Error::internal(format!(
            "torus Euler characteristic: {k} variables not supported (max 2)"
        )));
    }
    if sys.len() == 1 {
        return chi_torus_hypersurface(&sys[0]);
    }
    // Check for a common curve component.
    let mut g = sys[0].clone();
    for s in &sys[1..] {
        g = crate::poly::bivariate_gcd(&g, s);
    }
    let g = strip_monomial(&g);
    if !g.is_constant() {
        return Err(Error::internal(
            "torus system with a positive-dimensional component is not supported",
        ));
    }
    count_torus_points_2d(&sys)
}

fn univariate(p: &MPoly) -> Result<QPoly> {
    if p.n != 1 {
        return Err(Error::internal("expected univariate polynomial"));
    }
    let d = p.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
    Ok(QPoly(
        (0..=d)
            .map(|i| p.terms.get(&vec![i as u32]).cloned().unwrap_or_else(Rat::zero))
            .collect(),
    ))
}

/// Number of points of a zero-dimensional system in `(ℂ^*)^2`: eliminates
/// a variable occurring linearly in one equation.
fn count_torus_points_2d(sys: &[MPoly]) -> Result<Int> {
    for var in 0..2 {
        for (idx, p) in sys.iter().enumerate() {
            let deg = p.terms.keys().map(|e| e[var]).max().unwrap_or(0);
            if deg != 1 {
                continue;
            }
            // p = A(x)·y + B(x) in the chosen variable y.
            let other = 1 - var;
            let mut a = MPoly::zero(1);
            let mut b = MPoly::zero(1);
            for (e, c) in &p.terms {
                let target = if e[var] == 1 { &mut a } else { &mut b };
                target.insert(vec![e[other]], c.clone());
            }
            let a_poly = univariate(&a)?;
            let b_poly = univariate(&b)?;
            if b.is_zero() {
                // y = 0 forced wherever A ≠ 0: no torus solutions there; a
                // zero of A would leave y unconstrained by this equation.
                let a_stripped = strip_monomial(&a);
                if a_stripped.is_constant() {
                    return Ok(Int::zero());
                }
                return Err(Error::internal(
                    "torus point count: degenerate linear elimination",
                ));
            }
            // Substitute y = −B/A into the other equations.
            let mut resultants: Vec<QPoly> = Vec::new();
            for (jdx, q) in sys.iter().enumerate() {
                if jdx == idx {
                    continue;
                }
                resultants.push(substitute_linear(q, var, other, &a_poly, &b_poly));
            }
            let mut g = resultants
                .pop()
                .ok_or_else(|| Error::internal("torus point count needs at least two equations"))?;
            for r in &resultants {
                g = g.gcd(r);
            }
            if g.is_zero() {
                return Err(Error::internal(
                    "torus system is not zero-dimensional after elimination",
                ));
            }
            // Distinct roots x₀ ≠ 0 with A(x₀) ≠ 0 (validity) and B(x₀) ≠ 0
            // (so that y₀ = −B/A is nonzero).
            let total = distinct_nonzero_roots(&g)?;
            let excluded = g.gcd(&a_poly.mul(&b_poly));
            let bad = distinct_nonzero_roots(&excluded)?;
            // A zero of A that is also a root of g would need separate
            // handling (y unconstrained); reject that case honestly.
            let ga = g.gcd(&a_poly);
            if ga.degree().unwrap_or(0) > 0 {
                return Err(Error::internal(
                    "torus point count: leading coefficient vanishes on a candidate root",
                ));
            }
            return Ok(total - bad);
        }
    }
    Err(Error::internal(
        "torus point count: no equation is linear in a variable",
    ))
}

/// Clears `y = −B/A` into `q`, returning `A^{deg_y q} · q(x, −B/A)`.
fn substitute_linear(q: &MPoly, var: usize, other: usize, a: &QPoly, b: &QPoly) -> QPoly {
    let deg = q.terms.keys().map(|e| e[var]).max().unwrap_or(0) as usize;
    let neg_b = b.neg();
    let mut out = QPoly::zero();
    for (e, c) in &q.terms {
        let dy = e[var] as usize;
        let mut t = QPoly::monomial(c.clone(), e[other] as usize);
        for _ in 0..dy {
            t = t.mul(&neg_b);
        }
        for _ in 0..(deg - dy) {
            t = t.mul(a);
        }
        out = out.add(&t);
    }
    out
}

/// Euler characteristic of a projective hypersurface `Z_+(f) ⊂ P^{n−1}`
/// for homogeneous `f`, by summing torus strata over coordinate subsets.
pub fn chi_projective_hypersurface(f: &MPoly) -> Result<Int> {
    let n = f.n;
    if n == 0 || f.is_zero() {
        return Err(Error::contract(
            "projective Euler characteristic needs a nonzero form".to_string(),
        ));
    }
    let mut total = Int::zero();
    for mask in 1u32..(1 << n) {
        let coords: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let last = *coords.last().unwrap();
        // Set coordinates outside S to zero and the highest coordinate of S
        // to one; the remaining |S|−1 torus coordinates parameterize the
        // stratum of P^{n−1}.
        let mut g = f.clone();
        for i in 0..n {
            if !coords.contains(&i) {
                g = g.set_var_zero(i);
            }
        }
        g = g.set_var_one(last);
        let keep: Vec<usize> = coords[..coords.len() - 1].to_vec();
        let g = g.restrict_vars(&keep);
        total += chi_torus_variety(&[g], keep.len())?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_with_default_vars;

    fn cfg() -> Config {
        Config::default()
    }

    #[test]
    fn affine_counts() {
        // x² + y³ over F₂: (0,0) and (1,1).
        let f = parse_with_default_vars("x^2 + y^3", 2).unwrap();
        let mut region = Region::affine(2);
        region.equations.push(f);
        assert_eq!(count_points(&region, 2, &cfg()).unwrap(), 2);

        // Same equation over F₇.
        let f = parse_with_default_vars("x^2 + y^3", 2).unwrap();
        let mut brute = 0;
        for x in 0..7u64 {
            for y in 0..7u64 {
                if (x * x + y * y * y) % 7 == 0 {
                    brute += 1;
                }
            }
        }
        let mut region = Region::affine(2);
        region.equations.push(f);
        assert_eq!(count_points(&region, 7, &cfg()).unwrap(), brute);
    }

    #[test]
    fn torus_counts() {
        // a² + a²b + b³ on (F₇*)².
        let f = parse_with_default_vars("x^2 + x^2*y + y^3", 2).unwrap();
        let mut region = Region::torus(2);
        region.equations.push(f);
        assert_eq!(count_points(&region, 7, &cfg()).unwrap(), 6);
    }

    #[test]
    fn budget_is_enforced() {
        let region = Region::affine(4);
        let mut small = cfg();
        small.max_enum = 1000;
        assert!(matches!(
            count_points(&region, 11, &small),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn quotient_counts_match_classes() {
        // [C²/(1/2(1,1))] = L², so 25 points over F₅.
        let g = DiagGroup::cyclic(2, &[1, 1]).unwrap();
        let region = Region::affine(2);
        assert_eq!(count_quotient(&region, &g, 5, &cfg()).unwrap(), 25);

        // [C²/(1/3(1,1))] = L² over any q ≡ 1 mod 3.
        let g = DiagGroup::cyclic(3, &[1, 1]).unwrap();
        assert_eq!(count_quotient(&region, &g, 7, &cfg()).unwrap(), 49);

        // Torus quotient (F₇*)²/(1/3(1,2)) has (q−1)² points.
        let g = DiagGroup::cyclic(3, &[1, 2]).unwrap();
        let region = Region::torus(2);
        assert_eq!(count_quotient(&region, &g, 7, &cfg()).unwrap(), 36);
    }

    #[test]
    fn quotient_counting_rejects_bad_input() {
        let g = DiagGroup::cyclic(3, &[1, 1]).unwrap();
        let region = Region::affine(2);
        // q ≢ 1 mod 3.
        assert!(count_quotient(&region, &g, 5, &cfg()).is_err());

        // x + y is not semi-invariant under 1/3(1,2).
        let g = DiagGroup::cyclic(3, &[1, 2]).unwrap();
        let mut region = Region::affine(2);
        region
            .equations
            .push(parse_with_default_vars("x + y", 2).unwrap());
        assert!(matches!(
            count_quotient(&region, &g, 7, &cfg()),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn interpolation_recovers_classes() {
        // The hyperplane {x = 0} in C²: class L.
        let mut region = Region::affine(2);
        region
            .equations
            .push(parse_with_default_vars("x", 2).unwrap());
        let class = region_class(&region, 2, &cfg(), "hyperplane").unwrap();
        assert_eq!(class, GrVal::l_pow(1));

        // [C²/(1/2(1,1))] = L².
        let g = DiagGroup::cyclic(2, &[1, 1]).unwrap();
        let region = Region::affine(2);
        let class = quotient_class(&region, &g, 2, &cfg(), "quotient plane").unwrap();
        assert_eq!(class, GrVal::l_pow(2));
    }

    #[test]
    fn non_polynomial_classes_are_refused() {
        // Affine elliptic curve y² = x³ − x: point counts are not a
        // polynomial in q.
        let mut region = Region::affine(2);
        region
            .equations
            .push(parse_with_default_vars("y^2 - x^3 + x", 2).unwrap());
        let out = region_class(&region, 1, &cfg(), "elliptic curve");
        assert!(matches!(out, Err(Error::NonPolynomialClass(_))));
    }

    #[test]
    fn torus_searches_find_zeros() {
        // x + y + 1 has torus zeros mod 7, e.g. (1, 5).
        let f = parse_with_default_vars("x + y + 1", 2).unwrap();
        let z = torus_common_zero_mod(&[f], 2, 7).unwrap().unwrap();
        assert_eq!((z[0] + z[1] + 1) % 7, 0);

        // x² + 1 and x have no common zero on the torus.
        let f1 = parse_with_default_vars("x^2 + 1", 1).unwrap();
        let f2 = parse_with_default_vars("x", 1).unwrap();
        assert!(torus_common_zero_mod(&[f1, f2], 1, 7).unwrap().is_none());
    }

    #[test]
    fn euler_characteristics() {
        // Fermat cubic in P¹: three points.
        let f = parse_with_default_vars("x^3 + y^3", 2).unwrap();
        assert_eq!(chi_projective_hypersurface(&f).unwrap(), Int::from(3));

        // Fermat cubic in P²: an elliptic curve, χ = 0.
        let f = parse_with_default_vars("x^3 + y^3 + z^3", 3).unwrap();
        assert_eq!(chi_projective_hypersurface(&f).unwrap(), Int::zero());

        // Closed formula χ = n + ((1−d)^n − 1)/d for Fermat hypersurfaces.
        for (n, d, expected) in [(2usize, 3i64, 3i64), (3, 3, 0), (2, 4, 4), (3, 4, -4)] {
            let vars = ["x", "y", "z"];
            let src = vars[..n]
                .iter()
                .map(|v| format!("{v}^{d}"))
                .collect::<Vec<_>>()
                .join(" + ");
            let f = parse_with_default_vars(&src, n).unwrap();
            let formula = {
                let mut pow = Int::one();
                for _ in 0..n {
                    pow *= Int::from(1 - d);
                }
                Int::from(n as i64) + (pow - 1) / Int::from(d)
            };
            assert_eq!(formula, Int::from(expected));
            assert_eq!(chi_projective_hypersurface(&f).unwrap(), formula);
        }
    }

    #[test]
    fn torus_hypersurface_chi() {
        // 1 + x³ + y³ on the 2-torus: elliptic curve minus 9 points.
        let f = parse_with_default_vars("1 + x^3 + y^3", 2).unwrap();
        assert_eq!(chi_torus_hypersurface(&f).unwrap(), Int::from(-9));

        // Adding an interior monomial does not change the polytope.
        let f = parse_with_default_vars("1 + x^3 + y^3 + x*y", 2).unwrap();
        assert_eq!(chi_torus_hypersurface(&f).unwrap(), Int::from(-9));

        // A line in the torus: P¹ minus three points.
        let f = parse_with_default_vars("x + y + 1", 2).unwrap();
        assert_eq!(chi_torus_hypersurface(&f).unwrap(), Int::from(-1));

        // One-variable case: distinct nonzero roots.
        let f = parse_with_default_vars("x^3 - 1", 1).unwrap();
        assert_eq!(chi_torus_hypersurface(&f).unwrap(), Int::from(3));
        let f = parse_with_default_vars("x^2 - 2*x + 1", 1).unwrap();
        assert_eq!(chi_torus_hypersurface(&f).unwrap(), Int::from(1));
    }

    #[test]
    fn zero_dimensional_torus_systems() {
        // {1 + x³ + y³ + xy = 0, 3x² + y = 0}: six simple solutions.
        let f = parse_with_default_vars("1 + x^3 + y^3 + x*y", 2).unwrap();
        let fx = parse_with_default_vars("3*x^2 + y", 2).unwrap();
        assert_eq!(chi_torus_variety(&[f, fx], 2).unwrap(), Int::from(6));

        // Adding the other partial empties the set.
        let f = parse_with_default_vars("1 + x^3 + y^3 + x*y", 2).unwrap();
        let fx = parse_with_default_vars("3*x^2 + y", 2).unwrap();
        let fy = parse_with_default_vars("3*y^2 + x", 2).unwrap();
        assert_eq!(chi_torus_variety(&[f, fx, fy], 2).unwrap(), Int::zero());

        // {x − y = 0, x + y − 2 = 0} has the single solution (1,1).
        let f1 = parse_with_default_vars("x - y", 2).unwrap();
        let f2 = parse_with_default_vars("x + y - 2", 2).unwrap();
        assert_eq!(chi_torus_variety(&[f1, f2], 2).unwrap(), Int::one());
    }

    #[test]
    fn grval_arithmetic() {
        let l = GrVal::l_pow(1);
        let two = GrVal::from_int(2);
        let p = l.sub(&two); // L − 2
        assert_eq!(p.pretty(), "L - 2");
        assert_eq!(p.eval_int(&Int::from(7)), Int::from(5));
        assert_eq!(p.euler(), Int::from(-1));
        let sq = p.mul(&p);
        assert_eq!(sq.pretty(), "L^2 - 4*L + 4");
        assert_eq!(
            sq.to_epoly(),
            EPoly::q_pow(2)
                .add(&EPoly::q_pow(1).scale(&Int::from(-4)))
                .add(&EPoly::from_int(4))
        );
        // Interpolation helper sanity.
        let pts: Vec<(Int, Int)> = [3u64, 5, 7]
            .iter()
            .map(|&q| (Int::from(q), p.eval_int(&Int::from(q))))
            .collect();
        assert_eq!(fit_integer_polynomial(&pts, 2).unwrap(), p);
        // A fit with fractional coefficients is rejected: the line through
        // (2,1) and (4,2) is q/2.
        let pts = vec![(Int::from(2), Int::from(1)), (Int::from(4), Int::from(2))];
        assert!(fit_integer_polynomial(&pts, 1).is_none());
    }

    #[test]
    fn igusa_smooth_line_has_constant_counts() {
        // f = x: the unique solution mod p lifts uniquely, so N_m = 1 and
        // P(T) is a geometric series.
        let f = parse_with_default_vars("x", 1).unwrap();
        for p in [5u64, 7] {
            let rep = igusa_check(&f, p, 6, &cfg()).unwrap();
            assert_eq!(rep.counts, vec![1; 6]);
            assert!(rep.matched, "residuals at p = {p}: {:?}", rep.residuals);
        }
    }

    #[test]
    fn igusa_normal_crossings() {
        // f = xy: N_m = p^m (m(1 − 1/p) + 1) by valuation bookkeeping.
        let f = parse_with_default_vars("x*y", 2).unwrap();
        let rep = igusa_check(&f, 5, 4, &cfg()).unwrap();
        assert_eq!(rep.counts, vec![9, 65, 425, 2625]);
        assert!(rep.matched, "residuals: {:?}", rep.residuals);

        let rep = igusa_check(&f, 7, 4, &cfg()).unwrap();
        assert_eq!(rep.counts[0], 13);
        assert!(rep.matched, "residuals: {:?}", rep.residuals);
    }

    #[test]
    fn igusa_cusp() {
        let f = parse_with_default_vars("x^2 + y^3", 2).unwrap();
        let rep = igusa_check(&f, 7, 3, &cfg()).unwrap();
        assert_eq!(rep.counts[0], 7);
        assert!(rep.matched, "residuals: {:?}", rep.residuals);

        let rep = igusa_check(&f, 5, 3, &cfg()).unwrap();
        assert!(rep.matched, "residuals: {:?}", rep.residuals);
    }

    #[test]
    fn igusa_rejects_bad_primes_and_budgets() {
        let f = parse_with_default_vars("x^2 + y^3", 2).unwrap();
        // 4 is not prime; 2 and 3 divide the degree 6 (and a weight).
        for p in [4u64, 2, 3] {
            assert!(matches!(
                igusa_check(&f, p, 2, &cfg()),
                Err(Error::Contract(_))
            ));
        }
        // A prime dividing a coefficient changes the reduction.
        let g = parse_with_default_vars("5*x + y^2", 2).unwrap();
        assert!(matches!(
            igusa_check(&g, 5, 2, &cfg()),
            Err(Error::Contract(_))
        ));
        // Non-integer coefficients are refused.
        let h = parse_with_default_vars("1/2*x + y^2", 2).unwrap();
        assert!(matches!(
            igusa_check(&h, 5, 2, &cfg()),
            Err(Error::Contract(_))
        ));
        // Enumeration budgets apply levelwise.
        let f = parse_with_default_vars("x*y", 2).unwrap();
        let mut small = cfg();
        small.max_enum = 10;
        assert!(matches!(
            igusa_check(&f, 5, 2, &small),
            Err(Error::Budget { .. })
        ));
    }
}
