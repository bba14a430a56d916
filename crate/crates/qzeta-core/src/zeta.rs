//! Motivic zeta functions of semi-quasihomogeneous hypersurface
//! singularities from embedded Q-resolution data.
//!
//! A zeta function is assembled as a finite sum of stratum terms
//!
//! ```text
//!   L^n Z_f = Σ_k [X_k] · S_{G_k}(N_k, ν_k) · ∏_i F(N_i, ν_i),
//! ```
//!
//! where `[X_k]` is the class of the stratum, `S_G(N,ν) = Σ_γ L^{ϖ_N(γ)s +
//! ϖ_ν(γ)}` collects the action of the local quotient group, and
//! `F(N,ν) = (L−1)T^N L^{−ν} / (1 − T^N L^{−ν})` with `T = L^{−s}` is the
//! contribution of a branch of the divisor; `F(0,1) = 1`. The strata come
//! from the charts of a single weighted blow-up at the origin: in chart `i`
//! the pull-back is `λ^d H_i(λ, u)` with `H_i|_{λ=0} = g_i(u) =
//! f_d(u_1, …, 1, …, u_n)`, and the chart is a quotient of `ℂ^n` by the
//! cyclic group `G_i = μ_{w_i}` acting with exponents `(w_1, …, −1, …, w_n)`.
//!
//! The exceptional divisor is stratified by the subsets `I ⊆ {i+1, …, n}`
//! of coordinates allowed to be nonzero,
//!
//! ```text
//!   C_I = {λ = 0, u_m ≠ 0 ⟺ m ∈ I}  (coordinates before the chart's are 0),
//! ```
//!
//! which removes double counting between charts. Each `C_I` splits into the
//! part off the strict transform (`g_i ≠ 0`), with multiplicities
//! `N = (d, 0, …)`, `ν = (|w|, 1, …)` against the group fixing `C_I`
//! pointwise, and slices across the strict transform indexed by the first
//! coordinate `j ≠ i` whose partial `∂g_i/∂u_j` survives, with
//! `N = (d, 1, 0, …)`, `ν = (|w|, 1, 1, …)` in the coordinates
//! `(λ, g_i, u_m)`. An isolated principal part guarantees that some partial
//! is nonzero everywhere on `{g_i = 0} ∩ C_I`, so the slices cover it.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::config::Config;
use crate::count::{self, GrVal, Region};
use crate::error::{Error, Result};
use crate::groups::{DiagGroup, SgSum};
use crate::poly::{self, MPoly, SqhData};
use crate::rat::{rat, rat_int, Int, Rat};
use crate::symb::{self, FactorNu, TopZeta};

/// A stratum class: an integer polynomial in `L` when known, or a symbolic
/// placeholder when interpolation refused it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassVal {
    Known(GrVal),
    Symbolic(String),
}

impl ClassVal {
    pub fn known(&self) -> Option<&GrVal> {
        match self {
            ClassVal::Known(g) => Some(g),
            ClassVal::Symbolic(_) => None,
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            ClassVal::Known(g) => g.pretty(),
            ClassVal::Symbolic(s) => s.clone(),
        }
    }
}

/// One stratum term `[X] · S_G(N,ν) · ∏ F(N_i, ν_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZTerm {
    /// Human-readable stratum description.
    pub label: String,
    pub class: ClassVal,
    pub sg: SgSum,
    pub factors: Vec<FactorNu>,
}

/// A motivic zeta function as an explicit term list, scaled by a global
/// power of `L` (the prefactor, typically `−n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotZeta {
    pub n: usize,
    pub prefactor_exponent: i64,
    pub terms: Vec<ZTerm>,
}

impl MotZeta {
    pub fn new(n: usize, prefactor_exponent: i64) -> MotZeta {
        MotZeta {
            n,
            prefactor_exponent,
            terms: Vec::new(),
        }
    }

    /// Adds a term, dropping identity factors `(0,1)` and skipping terms
    /// with class zero.
    pub fn push(&mut self, label: impl Into<String>, class: ClassVal, sg: SgSum, factors: Vec<FactorNu>) {
        if let ClassVal::Known(g) = &class {
            if g.is_zero() {
                return;
            }
        }
        let factors: Vec<FactorNu> = factors.into_iter().filter(|f| !f.is_identity()).collect();
        self.terms.push(ZTerm {
            label: label.into(),
            class,
            sg,
            factors,
        });
    }
}

/// One stratum of an embedded Q-resolution, ready for assembly: the class
/// of the quotient stratum, the finite group acting on a transversal slice,
/// and the divisor multiplicities `N` (pulled-back function) and `ν`
/// (pulled-back volume form) paired with the slice coordinates.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub label: String,
    pub class: ClassVal,
    pub group: DiagGroup,
    pub n_vec: Vec<Rat>,
    pub nu_vec: Vec<Rat>,
    /// True when the stratum maps to the origin, so that it contributes to
    /// the local zeta function.
    pub local_flag: bool,
}

/// Assembles a motivic zeta function from resolution strata; with `local`
/// set, only the strata over the origin contribute. The ambient dimension
/// `n` fixes the prefactor `L^{−n}`.
pub fn mot_zeta_from_qres(n: usize, strata: &[Stratum], local: bool) -> Result<MotZeta> {
    let mut z = MotZeta::new(n, -(n as i64));
    push_strata(&mut z, strata, local)?;
    Ok(z)
}

fn push_strata(z: &mut MotZeta, strata: &[Stratum], local: bool) -> Result<()> {
    for s in strata {
        if local && !s.local_flag {
            continue;
        }
        if s.n_vec.len() != s.group.n() || s.nu_vec.len() != s.group.n() {
            return Err(Error::contract(format!(
                "stratum `{}`: multiplicity vectors must match the group's coordinate count",
                s.label
            )));
        }
        if s.nu_vec.iter().any(|v| !v.is_positive()) {
            return Err(Error::contract(format!(
                "stratum `{}`: the ν multiplicities must be positive",
                s.label
            )));
        }
        let sg = s.group.sg_sum_rat(&s.n_vec, &s.nu_vec)?;
        let factors = s
            .n_vec
            .iter()
            .zip(&s.nu_vec)
            .map(|(a, b)| FactorNu::new(a.clone(), b.clone()))
            .collect();
        z.push(s.label.clone(), s.class.clone(), sg, factors);
    }
    Ok(())
}

/// The motivic zeta function of a certified semi-quasihomogeneous germ,
/// global over `ℂ^n` or local at the origin, through a single weighted
/// blow-up. The local function depends only on the principal part.
pub fn motivic_zeta(sqh: &SqhData, local: bool, cfg: &Config) -> Result<MotZeta> {
    let n = check_dim(sqh)?;
    let mut z = MotZeta::new(n, -(n as i64));
    if !local {
        let mut zf = Region::affine(n);
        zf.equations.push(sqh.f.clone());
        match count::region_class(&zf, n - 1, cfg, "the affine hypersurface") {
            Ok(c) => {
                z.push(
                    "complement of the hypersurface",
                    ClassVal::Known(GrVal::l_pow(n).sub(&c)),
                    SgSum::one(),
                    vec![],
                );
                z.push(
                    "hypersurface off the origin",
                    ClassVal::Known(c.sub(&GrVal::one())),
                    SgSum::one(),
                    vec![FactorNu::from_ints(1, 1)],
                );
            }
            Err(Error::NonPolynomialClass(_)) | Err(Error::Budget { .. }) => {
                z.push(
                    "complement of the hypersurface",
                    ClassVal::Symbolic(format!("L^{n} - [Z(f)]")),
                    SgSum::one(),
                    vec![],
                );
                z.push(
                    "hypersurface off the origin",
                    ClassVal::Symbolic("[Z(f)] - 1".to_string()),
                    SgSum::one(),
                    vec![FactorNu::from_ints(1, 1)],
                );
            }
            Err(e) => return Err(e),
        }
    }
    let mut strata = Vec::new();
    for i in 0..n {
        strata.extend(chart_exceptional_strata(sqh, i, cfg)?);
    }
    push_strata(&mut z, &strata, false)?;
    Ok(z)
}

/// All strata of chart `i` of the weighted blow-up: the locus where the
/// blow-up is an isomorphism (chart coordinate a unit), off and on the
/// strict transform, followed by the exceptional strata.
pub fn chart_data(sqh: &SqhData, i: usize, cfg: &Config) -> Result<Vec<Stratum>> {
    let n = check_dim(sqh)?;
    if i >= n {
        return Err(Error::contract("chart index out of range"));
    }
    let mut out = chart_transversal_strata(sqh, i, cfg)?;
    out.extend(chart_exceptional_strata(sqh, i, cfg)?);
    Ok(out)
}

pub(crate) fn check_dim(sqh: &SqhData) -> Result<usize> {
    let n = sqh.w.len();
    if n < 2 {
        return Err(Error::contract("zeta assembly needs at least two variables"));
    }
    if !sqh.certificate.is_ok() {
        return Err(Error::NotIsolated(
            "the principal part carries no positive isolatedness certificate".to_string(),
        ));
    }
    Ok(n)
}

/// The subsets `I` of the chart-`i` free coordinates `{i+1, …, n}`
/// (0-based: of `{i+1, …, n−1}`), largest first, lexicographic within a
/// size. Coordinates before the chart's own are pinned to zero, which is
/// what keeps the charts disjoint over the exceptional divisor.
pub(crate) fn chart_subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    let pool: Vec<usize> = (i + 1..n).collect();
    let mut subsets: Vec<Vec<usize>> = (0u32..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &m)| m)
                .collect()
        })
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    subsets
}

pub(crate) fn fmt_subset(subset: &[usize]) -> String {
    let inner: Vec<String> = subset.iter().map(|m| (m + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Sets every variable outside `keep` to zero and re-reads the polynomial
/// in the `keep` variables only.
pub(crate) fn restrict_to_face(g: &MPoly, keep: &[usize]) -> MPoly {
    let mut out = g.clone();
    for m in 0..g.n {
        if !keep.contains(&m) {
            out = out.set_var_zero(m);
        }
    }
    out.restrict_vars(keep)
}

/// Order of the pointwise stabilizer of `C_I` in the chart group:
/// `gcd(w_i, gcd_{m∈I} w_m)`.
pub(crate) fn stab_order(w: &[i64], i: usize, subset: &[usize]) -> u64 {
    let mut d_i: u64 = 0;
    for &m in subset {
        d_i = num::integer::gcd(d_i, w[m] as u64);
    }
    num::integer::gcd(w[i] as u64, d_i)
}

/// `(L−1)^k`.
fn lm1_pow(k: usize) -> GrVal {
    GrVal::l_pow(1).sub(&GrVal::one()).pow(k)
}

/// The image of the chart group on the coordinates of `C_I`, which is the
/// group that quotient point counts must divide by.
pub(crate) fn face_image_group(w: &[i64], i: usize, subset: &[usize]) -> Result<DiagGroup> {
    let exps: Vec<i64> = subset.iter().map(|&m| w[m]).collect();
    DiagGroup::cyclic(w[i] as u64, &exps)
}

/// The stabilizer of `C_I`, acting on the transversal slice `(λ, u_m)_{m≠i}`
/// of a stratum off the strict transform.
fn divisor_slice_group(w: &[i64], i: usize, r: u64) -> Result<DiagGroup> {
    let mut exps = vec![-1i64];
    for (m, &wm) in w.iter().enumerate() {
        if m != i {
            exps.push(wm);
        }
    }
    DiagGroup::cyclic(r, &exps)
}

/// The stabilizer of `C_I`, acting on the transversal slice
/// `(λ, g_i, u_m)_{m∉{i,j}}` of a stratum across the strict transform: the
/// defining function transforms with the character `d`.
fn intersection_slice_group(w: &[i64], d: i64, i: usize, j: usize, r: u64) -> Result<DiagGroup> {
    let mut exps = vec![-1i64, d];
    for (m, &wm) in w.iter().enumerate() {
        if m != i && m != j {
            exps.push(wm);
        }
    }
    DiagGroup::cyclic(r, &exps)
}

fn graceful_quotient(
    region: &Region,
    group: &DiagGroup,
    dim_bound: usize,
    cfg: &Config,
    label: &str,
) -> Result<ClassVal> {
    match count::quotient_class(region, group, dim_bound, cfg, label) {
        Ok(c) => Ok(ClassVal::Known(c)),
        Err(Error::NonPolynomialClass(_)) => Ok(ClassVal::Symbolic(format!("[{label}]"))),
        Err(e) => Err(e),
    }
}

/// Class of the quotiented stratum `{g_i = 0} ∩ C_I` of the strict
/// transform on the divisor.
fn ehat_class(
    g_d: &MPoly,
    w: &[i64],
    i: usize,
    subset: &[usize],
    cfg: &Config,
    label: &str,
) -> Result<ClassVal> {
    let k = subset.len();
    if k == 0 {
        let v = restrict_to_face(g_d, &[]);
        let hit = v.constant_term().is_zero();
        return Ok(ClassVal::Known(GrVal::from_int(hit as i64)));
    }
    let g = restrict_to_face(g_d, subset);
    if g.is_zero() {
        // The strict transform contains the whole stratum; the quotient of
        // a torus by a diagonal group is again a torus.
        return Ok(ClassVal::Known(lm1_pow(k)));
    }
    if g.is_constant() {
        return Ok(ClassVal::Known(GrVal::zero()));
    }
    let mut region = Region::torus(k);
    region.equations.push(g);
    let group = face_image_group(w, i, subset)?;
    graceful_quotient(&region, &group, k, cfg, label)
}

/// Shape of the slice of `{g_i = 0} ∩ C_I` where `∂g_i/∂u_j` is the first
/// surviving partial derivative, before any group quotient.
pub(crate) enum SliceShape {
    /// Empty subset: the stratum is the single chart base point, or nothing.
    Point(bool),
    /// Identically empty on the face (the inequation restricts to zero, or
    /// an equation restricts to a nonzero constant).
    Empty,
    /// A genuine constraint system on the torus of the subset coordinates.
    Torus(Region),
}

pub(crate) fn intersection_shape(g_d: &MPoly, i: usize, subset: &[usize], j: usize) -> SliceShape {
    let k = subset.len();
    let mut eqs: Vec<MPoly> = vec![g_d.clone()];
    for l in 0..j {
        if l != i {
            eqs.push(g_d.partial(l));
        }
    }
    let ineq = g_d.partial(j);
    if k == 0 {
        let at0 = |p: &MPoly| restrict_to_face(p, &[]).constant_term();
        let hit = eqs.iter().all(|p| at0(p).is_zero()) && !at0(&ineq).is_zero();
        return SliceShape::Point(hit);
    }
    let ineq = restrict_to_face(&ineq, subset);
    if ineq.is_zero() {
        return SliceShape::Empty;
    }
    let mut region = Region::torus(k);
    for e in &eqs {
        let r = restrict_to_face(e, subset);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return SliceShape::Empty;
        }
        region.equations.push(r);
    }
    if !ineq.is_constant() {
        region.inequations.push(ineq);
    }
    SliceShape::Torus(region)
}

/// Class of the quotiented slice of `{g_i = 0} ∩ C_I` where `∂g_i/∂u_j` is
/// the first surviving partial derivative.
fn intersection_class(
    g_d: &MPoly,
    w: &[i64],
    i: usize,
    subset: &[usize],
    j: usize,
    cfg: &Config,
    label: &str,
) -> Result<ClassVal> {
    match intersection_shape(g_d, i, subset, j) {
        SliceShape::Point(hit) => Ok(ClassVal::Known(GrVal::from_int(hit as i64))),
        SliceShape::Empty => Ok(ClassVal::Known(GrVal::zero())),
        SliceShape::Torus(region) => {
            let group = face_image_group(w, i, subset)?;
            graceful_quotient(&region, &group, subset.len(), cfg, label)
        }
    }
}

/// The exceptional strata of chart `i`, all lying over the origin.
fn chart_exceptional_strata(sqh: &SqhData, i: usize, cfg: &Config) -> Result<Vec<Stratum>> {
    let n = sqh.w.len();
    let w = &sqh.w;
    let d = sqh.d;
    let wsum: i64 = w.iter().sum();
    let g_d = sqh.f_d.set_var_one(i);
    let mut out = Vec::new();
    for subset in chart_subsets(n, i) {
        let k = subset.len();
        let r = stab_order(w, i, &subset);
        let sub_s = fmt_subset(&subset);

        let label = format!("chart {}, I={}: divisor stratum", i + 1, sub_s);
        let ehat = ehat_class(&g_d, w, i, &subset, cfg, &label)?;
        let class = match &ehat {
            ClassVal::Known(g) => ClassVal::Known(lm1_pow(k).sub(g)),
            ClassVal::Symbolic(s) => ClassVal::Symbolic(format!("(L-1)^{k} - {s}")),
        };
        let mut n3 = vec![Rat::zero(); n];
        n3[0] = rat(d);
        let mut nu3 = vec![Rat::one(); n];
        nu3[0] = rat(wsum);
        out.push(Stratum {
            label,
            class,
            group: divisor_slice_group(w, i, r)?,
            n_vec: n3,
            nu_vec: nu3,
            local_flag: true,
        });

        for j in 0..n {
            if j == i {
                continue;
            }
            let label = format!(
                "chart {}, I={}: strict transform stratum, j={}",
                i + 1,
                sub_s,
                j + 1
            );
            let class = intersection_class(&g_d, w, i, &subset, j, cfg, &label)?;
            let mut n4 = vec![Rat::zero(); n];
            n4[0] = rat(d);
            n4[1] = Rat::one();
            let mut nu4 = vec![Rat::one(); n];
            nu4[0] = rat(wsum);
            out.push(Stratum {
                label,
                class,
                group: intersection_slice_group(w, d, i, j, r)?,
                n_vec: n4,
                nu_vec: nu4,
                local_flag: true,
            });
        }
    }
    Ok(out)
}

/// The two strata of chart `i` where the chart coordinate is a unit: there
/// the blow-up is an isomorphism onto its image, a chart-group quotient.
fn chart_transversal_strata(sqh: &SqhData, i: usize, cfg: &Config) -> Result<Vec<Stratum>> {
    let n = sqh.w.len();
    let (h, _) = poly::chart_substitute(&sqh.f, &sqh.w, sqh.d, i)?;
    let keep: Vec<usize> = (i..n).collect();
    let h_res = restrict_to_face(&h, &keep);
    let m = keep.len();
    let mut exps = vec![-1i64];
    exps.extend(&sqh.w[i + 1..]);
    let counting_group = DiagGroup::cyclic(sqh.w[i] as u64, &exps)?;

    let mut off = Region::affine(m);
    off.nonzero_coords[0] = true;
    off.inequations.push(h_res.clone());
    let mut on = Region::affine(m);
    on.nonzero_coords[0] = true;
    on.equations.push(h_res);

    let off_label = format!("chart {}: unit locus off the strict transform", i + 1);
    let on_label = format!("chart {}: unit locus on the strict transform", i + 1);
    let off_class = graceful_quotient(&off, &counting_group, m, cfg, &off_label)?;
    let on_class = graceful_quotient(&on, &counting_group, m, cfg, &on_label)?;

    let mut n2 = vec![Rat::zero(); n];
    n2[1] = Rat::one();
    Ok(vec![
        Stratum {
            label: off_label,
            class: off_class,
            group: DiagGroup::trivial(n),
            n_vec: vec![Rat::zero(); n],
            nu_vec: vec![Rat::one(); n],
            local_flag: false,
        },
        Stratum {
            label: on_label,
            class: on_class,
            group: DiagGroup::trivial(n),
            n_vec: n2,
            nu_vec: vec![Rat::one(); n],
            local_flag: false,
        },
    ])
}

/// The local motivic zeta function in two variables in closed form. With
/// weights `(p, q)`, degree `d`, and `δ_i = 1` exactly when the strict
/// transform passes through the `i`-th vertex of the exceptional divisor,
/// the strict transform meets the divisor torus in `c = (d − δ_1 q −
/// δ_2 p)/(pq)` further points.
pub fn motivic_zeta_dim2(sqh: &SqhData) -> Result<MotZeta> {
    let n = check_dim(sqh)?;
    if n != 2 {
        return Err(Error::contract("the closed form needs exactly two variables"));
    }
    let (p, q) = (sqh.w[0], sqh.w[1]);
    let d = sqh.d;
    let wsum = p + q;
    let d1 = sqh.f_d.set_var_one(0).set_var_zero(1).constant_term().is_zero() as i64;
    let d2 = sqh.f_d.set_var_one(1).set_var_zero(0).constant_term().is_zero() as i64;
    let c_num = d - d1 * q - d2 * p;
    if c_num < 0 || c_num % (p * q) != 0 {
        return Err(Error::internal(
            "inconsistent intersection count in the two-variable closed form",
        ));
    }
    let c = c_num / (p * q);
    let fe = FactorNu::from_ints(d, wsum);
    let fh = FactorNu::from_ints(1, 1);
    let mut z = MotZeta::new(2, -2);
    z.push(
        "divisor torus off the strict transform",
        ClassVal::Known(lm1_pow(1).sub(&GrVal::from_int(c))),
        SgSum::one(),
        vec![fe.clone()],
    );
    if d1 == 0 {
        let g = DiagGroup::cyclic(p as u64, &[-1, q])?;
        z.push(
            "first vertex off the strict transform",
            ClassVal::Known(GrVal::one()),
            g.sg_sum(&[d, 0], &[wsum, 1])?,
            vec![fe.clone()],
        );
    } else {
        let g = DiagGroup::cyclic(p as u64, &[-1, d])?;
        z.push(
            "first vertex on the strict transform",
            ClassVal::Known(GrVal::one()),
            g.sg_sum(&[d, 1], &[wsum, 1])?,
            vec![fh.clone(), fe.clone()],
        );
    }
    if d2 == 0 {
        let g = DiagGroup::cyclic(q as u64, &[-1, p])?;
        z.push(
            "second vertex off the strict transform",
            ClassVal::Known(GrVal::one()),
            g.sg_sum(&[d, 0], &[wsum, 1])?,
            vec![fe.clone()],
        );
    } else {
        let g = DiagGroup::cyclic(q as u64, &[-1, d])?;
        z.push(
            "second vertex on the strict transform",
            ClassVal::Known(GrVal::one()),
            g.sg_sum(&[d, 1], &[wsum, 1])?,
            vec![fh.clone(), fe.clone()],
        );
    }
    z.push(
        "divisor torus on the strict transform",
        ClassVal::Known(GrVal::from_int(c)),
        SgSum::one(),
        vec![fh, fe],
    );
    Ok(z)
}

/// Poles of the local two-variable zeta function in canonical form. When
/// `d > p + q`, both `−1` and `−(p+q)/d` must survive; this is checked.
pub fn poles_dim2(sqh: &SqhData, cfg: &Config) -> Result<BTreeMap<Rat, usize>> {
    let z = motivic_zeta_dim2(sqh)?;
    let r = symb::normalize(&z, cfg)?;
    let ps = symb::poles(&r);
    let (p, q, d) = (sqh.w[0], sqh.w[1], sqh.d);
    if d > p + q {
        let expected = [-Rat::one(), rat(-(p + q)) / rat(d)];
        if expected.iter().any(|e| !ps.contains_key(e)) {
            return Err(Error::internal(
                "the poles −1 and −(p+q)/d did not survive cancellation",
            ));
        }
    }
    Ok(ps)
}

/// `x·r/wi` when that is an integer; quotient Euler characteristics of the
/// chart strata must come out integral because only the pointwise
/// stabilizer (of order `r`, inside the chart group of order `wi`) fixes
/// torus points.
fn exact_scale(x: &Int, r: i64, wi: i64) -> Result<Int> {
    let num = x * Int::from(r);
    let den = Int::from(wi);
    if (&num % &den).is_zero() {
        Ok(num / den)
    } else {
        Err(Error::internal(
            "a quotient Euler characteristic failed to be an integer",
        ))
    }
}

/// The local topological zeta function computed through stratum Euler
/// characteristics only, bypassing motivic classes; this also covers germs
/// whose strata have non-polynomial classes. The strata live in tori of
/// dimension ≤ 2, so this requires at most three variables.
pub fn top_zeta_local_chi(sqh: &SqhData, cfg: &Config) -> Result<TopZeta> {
    let n = check_dim(sqh)?;
    let _ = cfg;
    let w = &sqh.w;
    let d = sqh.d;
    let wsum: i64 = w.iter().sum();
    let fe = FactorNu::from_ints(d, wsum);
    let fh = FactorNu::from_ints(1, 1);
    let mut items: Vec<(Rat, Vec<FactorNu>)> = Vec::new();
    for i in 0..n {
        let g_d = sqh.f_d.set_var_one(i);
        let at0 = |p: &MPoly| restrict_to_face(p, &[]).constant_term();
        for subset in chart_subsets(n, i) {
            let k = subset.len();
            let r = stab_order(w, i, &subset) as i64;
            let chi_ehat: Int = if k == 0 {
                Int::from(at0(&g_d).is_zero() as i64)
            } else {
                let g = restrict_to_face(&g_d, &subset);
                count::chi_torus_hypersurface(&g)?
            };
            let chi_ci = Int::from((k == 0) as i64);
            let chi_off = exact_scale(&(chi_ci - chi_ehat), r, w[i])?;
            items.push((rat_int(chi_off * Int::from(r)), vec![fe.clone()]));
            for j in 0..n {
                if j == i {
                    continue;
                }
                let mut eqs: Vec<MPoly> = vec![g_d.clone()];
                for l in 0..j {
                    if l != i {
                        eqs.push(g_d.partial(l));
                    }
                }
                let ineq = g_d.partial(j);
                let chi: Int = if k == 0 {
                    let hit = eqs.iter().all(|p| at0(p).is_zero()) && !at0(&ineq).is_zero();
                    Int::from(hit as i64)
                } else {
                    let sys1: Vec<MPoly> =
                        eqs.iter().map(|e| restrict_to_face(e, &subset)).collect();
                    let mut sys2 = sys1.clone();
                    sys2.push(restrict_to_face(&ineq, &subset));
                    count::chi_torus_variety(&sys1, k)? - count::chi_torus_variety(&sys2, k)?
                };
                let chi_q = exact_scale(&chi, r, w[i])?;
                items.push((rat_int(chi_q * Int::from(r)), vec![fh.clone(), fe.clone()]));
            }
        }
    }
    symb::top_zeta_from_strata(&items)
}

/// Report of a pairwise comparison of local topological zeta functions of
/// quasihomogeneous polynomials sharing the same weights and degree.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub w: Vec<i64>,
    pub d: i64,
    /// `(input rendering, its local topological zeta function)`.
    pub values: Vec<(String, TopZeta)>,
    pub all_equal: bool,
}

/// Compares the local topological zeta functions of quasihomogeneous
/// polynomials with the same weights and the same degree: members of one
/// weighted-homogeneous family are expected to share them.
pub fn conjecture_probe(fs: &[MPoly], w: &[i64], cfg: &Config) -> Result<ProbeReport> {
    if fs.is_empty() {
        return Err(Error::contract("the probe needs at least one polynomial"));
    }
    let mut d_seen: Option<i64> = None;
    let mut values = Vec::new();
    for f in fs {
        let name = f.display_with(&poly::default_var_names(f.n));
        let (_, d, tail) = poly::principal_part(f, w)?;
        if !tail.is_zero() {
            return Err(Error::contract(format!(
                "`{name}` is not quasihomogeneous for the given weights"
            )));
        }
        match d_seen {
            None => d_seen = Some(d),
            Some(d0) if d0 == d => {}
            Some(d0) => {
                return Err(Error::contract(format!(
                    "mixed weighted degrees {d0} and {d}"
                )))
            }
        }
        let cert = poly::is_isolated_singularity(f, cfg)?;
        if !cert.is_ok() {
            return Err(Error::NotIsolated(format!(
                "`{name}`: no isolated singularity certificate"
            )));
        }
        let sqh = poly::sqh_data(f, w, cert)?;
        let tz = top_zeta_local_chi(&sqh, cfg)?;
        values.push((name, tz));
    }
    let all_equal = values.windows(2).all(|p| p[0].1 == p[1].1);
    Ok(ProbeReport {
        w: w.to_vec(),
        d: d_seen.unwrap(),
        values,
        all_equal,
    })
}

/// One row of the strict-transform ∩ divisor table of a chart: the class
/// of the quotiented stratum and the pointwise stabilizer of the stratum
/// inside the chart group. `chart` and `subset` entries are 1-based.
#[derive(Debug, Clone)]
pub struct EhatRow {
    pub chart: usize,
    pub subset: Vec<usize>,
    pub class: ClassVal,
    pub stabilizer: DiagGroup,
}

/// Tabulates the strict-transform ∩ divisor strata of every chart, ordered
/// by chart, then subset size (largest first), then lexicographically.
pub fn ehat_table(sqh: &SqhData, cfg: &Config) -> Result<Vec<EhatRow>> {
    let n = check_dim(sqh)?;
    let mut rows = Vec::new();
    for i in 0..n {
        let g_d = sqh.f_d.set_var_one(i);
        for subset in chart_subsets(n, i) {
            let r = stab_order(&sqh.w, i, &subset);
            let label = format!(
                "chart {}, I={}: strict transform on the divisor",
                i + 1,
                fmt_subset(&subset)
            );
            let class = ehat_class(&g_d, &sqh.w, i, &subset, cfg, &label)?;
            let mut exps = sqh.w.clone();
            exps[i] = -1;
            let stabilizer = DiagGroup::cyclic(r, &exps)?;
            rows.push(EhatRow {
                chart: i + 1,
                subset: subset.iter().map(|m| m + 1).collect(),
                class,
                stabilizer,
            });
        }
    }
    Ok(rows)
}

/// Point counts over `F_q` of the `ehat_table` rows: quotient counts when
/// the acting group embeds into `F_q^*`, and otherwise the raw set must be
/// empty for the count to be meaningful.
pub fn ehat_counts(sqh: &SqhData, q: u64, cfg: &Config) -> Result<Vec<u64>> {
    let n = check_dim(sqh)?;
    let mut out = Vec::new();
    for i in 0..n {
        let g_d = sqh.f_d.set_var_one(i);
        for subset in chart_subsets(n, i) {
            let k = subset.len();
            if k == 0 {
                let v = restrict_to_face(&g_d, &[]);
                out.push(v.constant_term().is_zero() as u64);
                continue;
            }
            let g = restrict_to_face(&g_d, &subset);
            if g.is_constant() && !g.is_zero() {
                out.push(0);
                continue;
            }
            let mut region = Region::torus(k);
            if !g.is_zero() {
                region.equations.push(g);
            }
            let group = face_image_group(&sqh.w, i, &subset)?;
            if (q - 1) % group.order() == 0 {
                out.push(count::count_quotient(&region, &group, q, cfg)?);
            } else {
                let raw = count::count_points(&region, q, cfg)?;
                if raw == 0 {
                    out.push(0);
                } else {
                    return Err(Error::contract(format!(
                        "cannot count orbits over F_{q}: the group order {} does not divide q − 1",
                        group.order()
                    )));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_with_default_vars, Isolated};
    use crate::symb::{normalize, poles, specialize_topological, LaurentLT};

    fn sqh(src: &str, w: &[i64]) -> SqhData {
        let f = parse_with_default_vars(src, w.len()).unwrap();
        let cert = if w.len() <= 2 {
            poly::isolated_exact_low_dim(&f).unwrap()
        } else {
            Isolated::Asserted
        };
        poly::sqh_data(&f, w, cert).unwrap()
    }

    fn lt(terms: &[(i64, i64, i64)]) -> LaurentLT {
        let mut out = LaurentLT::zero();
        for &(et, el, c) in terms {
            out = out.add(&LaurentLT::term(rat(et), rat(el), rat(c)));
        }
        out
    }

    #[test]
    fn cusp_global_zeta_matches_the_frozen_closed_form() {
        let cfg = Config::default();
        let z = motivic_zeta(&sqh("x^2+y^3", &[3, 2]), false, &cfg).unwrap();
        let r = normalize(&z, &cfg).unwrap();
        assert_eq!(r.prefactor_exponent, -2);
        assert_eq!(r.den, vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(6, 5)]);
        let expected = lt(&[
            (0, 2, 1),
            (0, 1, -1),
            (1, 0, -1),
            (1, -1, 1),
            (2, 0, 1),
            (2, -1, -1),
            (5, -3, -1),
            (5, -4, 1),
        ]);
        assert_eq!(r.num, expected);
    }

    #[test]
    fn cusp_local_zeta_poles_and_topological_form() {
        let cfg = Config::default();
        let data = sqh("x^2+y^3", &[3, 2]);
        let z = motivic_zeta(&data, true, &cfg).unwrap();
        let r = normalize(&z, &cfg).unwrap();
        let expected = lt(&[
            (2, 0, 1),
            (2, -1, -1),
            (5, -3, -1),
            (5, -4, 1),
            (6, -3, 1),
            (6, -4, -1),
            (7, -5, -1),
            (7, -6, 1),
        ]);
        assert_eq!(r.num, expected);
        assert_eq!(r.den, vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(6, 5)]);

        let ps = poles(&r);
        let expected_poles: BTreeMap<Rat, usize> =
            [(rat(-1), 1), (rat(-5) / rat(6), 1)].into_iter().collect();
        assert_eq!(ps, expected_poles);

        let closed = normalize(&motivic_zeta_dim2(&data).unwrap(), &cfg).unwrap();
        assert_eq!(closed, r);

        let tz = specialize_topological(&z).unwrap();
        assert_eq!(tz.pretty(), "(4s+5)/((s+1)(6s+5))");
        assert_eq!(top_zeta_local_chi(&data, &cfg).unwrap(), tz);
    }

    #[test]
    fn higher_order_terms_do_not_change_the_local_zeta() {
        let cfg = Config::default();
        let plain = motivic_zeta(&sqh("x^2+y^3", &[3, 2]), true, &cfg).unwrap();
        let tailed = motivic_zeta(&sqh("x^2+y^3+x*y^2", &[3, 2]), true, &cfg).unwrap();
        assert_eq!(plain, tailed);
    }

    #[test]
    fn smooth_conic_agrees_with_a_hand_built_log_resolution() {
        let cfg = Config::default();
        let data = sqh("x^2+y^2", &[1, 1]);
        let from_charts = normalize(&motivic_zeta(&data, true, &cfg).unwrap(), &cfg).unwrap();
        let closed = normalize(&motivic_zeta_dim2(&data).unwrap(), &cfg).unwrap();

        // One ordinary blow-up: the divisor is a projective line of
        // multiplicity (N, ν) = (2, 2) meeting the strict transform in two
        // points.
        let strata = vec![
            Stratum {
                label: "divisor off the strict transform".to_string(),
                class: ClassVal::Known(lm1_pow(1)),
                group: DiagGroup::trivial(2),
                n_vec: vec![rat(2), rat(0)],
                nu_vec: vec![rat(2), rat(1)],
                local_flag: true,
            },
            Stratum {
                label: "divisor on the strict transform".to_string(),
                class: ClassVal::Known(GrVal::from_int(2)),
                group: DiagGroup::trivial(2),
                n_vec: vec![rat(2), rat(1)],
                nu_vec: vec![rat(2), rat(1)],
                local_flag: true,
            },
        ];
        let hand = normalize(&mot_zeta_from_qres(2, &strata, true).unwrap(), &cfg).unwrap();

        let expected = lt(&[(2, 0, 1), (2, -1, -2), (2, -2, 1)]);
        assert_eq!(from_charts.num, expected);
        assert_eq!(
            from_charts.den,
            vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(1, 1)]
        );
        assert_eq!(from_charts, closed);
        assert_eq!(from_charts, hand);
    }

    #[test]
    fn weighted_table_of_divisor_strata_is_reproduced() {
        let cfg = Config::default();
        let data = sqh("x^5+y*z^2+x*y^3", &[6, 8, 11]);
        let rows = ehat_table(&data, &cfg).unwrap();

        let shape: Vec<(usize, Vec<usize>)> =
            rows.iter().map(|r| (r.chart, r.subset.clone())).collect();
        assert_eq!(
            shape,
            vec![
                (1, vec![2, 3]),
                (1, vec![2]),
                (1, vec![3]),
                (1, vec![]),
                (2, vec![3]),
                (2, vec![]),
                (3, vec![]),
            ]
        );

        let classes: Vec<GrVal> = rows.iter().map(|r| r.class.known().unwrap().clone()).collect();
        let expected_classes = vec![
            GrVal::l_pow(1).sub(&GrVal::from_int(2)),
            GrVal::one(),
            GrVal::zero(),
            GrVal::zero(),
            GrVal::zero(),
            GrVal::one(),
            GrVal::one(),
        ];
        assert_eq!(classes, expected_classes);

        // Total class of the strict transform on the divisor.
        let total = classes.iter().fold(GrVal::zero(), |a, b| a.add(b));
        assert_eq!(total, GrVal::l_pow(1).add(&GrVal::one()));

        let expected_groups = [
            DiagGroup::trivial(3),
            DiagGroup::parse("1/2(1,0,1)").unwrap(),
            DiagGroup::trivial(3),
            DiagGroup::parse("1/6(-1,8,11)").unwrap(),
            DiagGroup::trivial(3),
            DiagGroup::parse("1/8(6,-1,11)").unwrap(),
            DiagGroup::parse("1/11(6,8,-1)").unwrap(),
        ];
        for (row, exp) in rows.iter().zip(&expected_groups) {
            assert_eq!(row.stabilizer.order(), exp.order());
            assert_eq!(row.stabilizer.elements(), exp.elements());
        }

        assert_eq!(ehat_counts(&data, 7, &cfg).unwrap(), vec![5, 1, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn probe_reports_equal_zeta_functions_in_a_weighted_family() {
        let cfg = Config::default();
        let fs = vec![
            parse_with_default_vars("x^3+y^3+z^3", 3).unwrap(),
            parse_with_default_vars("x^3+y^3+z^3+x*y*z", 3).unwrap(),
        ];
        let report = conjecture_probe(&fs, &[1, 1, 1], &cfg).unwrap();
        assert_eq!(report.d, 3);
        assert!(report.all_equal);
    }

    #[test]
    fn pole_survival_in_two_variables() {
        let cfg = Config::default();
        for (src, w, tpole) in [
            ("x^2+y^5", [5, 2], (-7, 10)),
            ("x^3+y^4", [4, 3], (-7, 12)),
            ("x^3+y^5", [5, 3], (-8, 15)),
        ] {
            let ps = poles_dim2(&sqh(src, &w), &cfg).unwrap();
            let expected: BTreeMap<Rat, usize> =
                [(rat(-1), 1), (rat(tpole.0) / rat(tpole.1), 1)]
                    .into_iter()
                    .collect();
            assert_eq!(ps, expected, "poles of {src}");
        }
        // At d = p + q there is no survival guarantee; the normal crossing
        // pair xy keeps only the pole at −1, with multiplicity two.
        let ps = poles_dim2(&sqh("x*y", &[1, 1]), &cfg).unwrap();
        let expected: BTreeMap<Rat, usize> = [(rat(-1), 2)].into_iter().collect();
        assert_eq!(ps, expected);
    }
}
