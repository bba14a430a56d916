//! Newton polyhedra and their normal fans.
//!
//! For `f = Σ c_α x^α` with `f(0) = 0`, the Newton polyhedron is
//! `Γ(f) = conv(supp f) + ℝ^n_{≥0}`. Its normal fan decomposes `ℝ^n_{≥0}`
//! into the cones `σ_a = {v ≥ 0 : v·a ≤ v·b ∀ b ∈ supp f}` attached to the
//! vertices `a` of `Γ(f)`; the support function is
//! `φ_f(v) = min_{a ∈ supp f} v·a`. Faces of `Γ(f)` are recorded as the
//! subsets of the support where a fan ray attains its minimum, closed under
//! intersection. The module also provides non-degeneracy in the sense of
//! Newton polyhedra (no face polynomial has a singular point in the torus)
//! and a simplicial subdivision of the normal fan by lexicographic pulling,
//! which introduces no new rays.

use std::collections::BTreeSet;

use num::{One, Signed, Zero};

use crate::config::Config;
use crate::count::{rank_i64, torus_common_zero_mod};
use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::rat::{rat, Int, Rat};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 6;

/// A facet `{x : normal·x = offset}` of the Newton polyhedron; the normal
/// is primitive with nonnegative entries and the polyhedron lies on the
/// side `normal·x ≥ offset`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
}

/// A face of the Newton polyhedron, recorded as the support points lying
/// on it (sorted lexicographically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub points: Vec<Vec<u32>>,
}

/// Newton polyhedron data of a polynomial.
#[derive(Debug, Clone)]
pub struct NewtonData {
    pub n: usize,
    pub support: Vec<Vec<u32>>,
    pub vertices: Vec<Vec<u32>>,
    pub facets: Vec<Facet>,
    pub faces: Vec<Face>,
}

/// A rational polyhedral cone given by its extreme rays (primitive,
/// sorted lexicographically).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cone {
    pub rays: Vec<Vec<i64>>,
}

impl Cone {
    pub fn new(mut rays: Vec<Vec<i64>>) -> Cone {
        rays.sort();
        rays.dedup();
        Cone { rays }
    }

    pub fn is_simplicial(&self) -> bool {
        rank_i64(&self.rays) == self.rays.len()
    }
}

/// A fan: the union of rays and the list of maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Cone>,
}

impl Fan {
    /// Assembles a fan from its maximal cones, collecting the rays.
    pub fn from_cones(cones: Vec<Cone>) -> Fan {
        let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
        for c in &cones {
            rays.extend(c.rays.iter().cloned());
        }
        let mut maximal_cones = cones;
        maximal_cones.sort();
        maximal_cones.dedup();
        Fan {
            rays: rays.into_iter().collect(),
            maximal_cones,
        }
    }
}

/// Non-degeneracy verdict with its supporting evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonDegenerate {
    /// Decided exactly (dimensions ≤ 2).
    Exact,
    /// No singular face point found modulo the recorded primes.
    Probabilistic { primes: Vec<u64> },
    /// A face with a singular torus point (or a modular certificate of
    /// one); the witness describes the face.
    Degenerate { witness: String },
}

impl NonDegenerate {
    pub fn is_ok(&self) -> bool {
        !matches!(self, NonDegenerate::Degenerate { .. })
    }
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::contract(format!(
            "dimension {n} outside the supported range 1..={MAX_DIM}"
        )));
    }
    Ok(())
}

/// Computes the Newton polyhedron of a nonzero polynomial.
pub fn newton_polyhedron(f: &MPoly) -> Result<NewtonData> {
    check_dim(f.n)?;
    if f.is_zero() {
        return Err(Error::contract(
            "Newton polyhedron of the zero polynomial".to_string(),
        ));
    }
    let n = f.n;
    let support: Vec<Vec<u32>> = f.support().cloned().collect();
    let mut vertices = Vec::new();
    let mut ray_set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for a in &support {
        let rays = vertex_cone_rays(&support, a, n);
        if rank_i64(&rays) == n {
            vertices.push(a.clone());
            ray_set.extend(rays);
        }
    }
    let rays: Vec<Vec<i64>> = ray_set.into_iter().collect();
    let facets: Vec<Facet> = rays
        .iter()
        .map(|v| Facet {
            normal: v.clone(),
            offset: support_min(&support, v),
        })
        .collect();

    // Faces: argmin sets of the fan rays, closed under intersection.
    let mut face_set: BTreeSet<Vec<Vec<u32>>> = BTreeSet::new();
    for v in &rays {
        let m = support_min(&support, v);
        let argmin: Vec<Vec<u32>> = support
            .iter()
            .filter(|a| dot(v, a) == m)
            .cloned()
            .collect();
        face_set.insert(argmin);
    }
    loop {
        let current: Vec<Vec<Vec<u32>>> = face_set.iter().cloned().collect();
        let before = face_set.len();
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                let inter: Vec<Vec<u32>> = current[i]
                    .iter()
                    .filter(|p| current[j].contains(p))
                    .cloned()
                    .collect();
                if !inter.is_empty() {
                    face_set.insert(inter);
                }
            }
        }
        if face_set.len() == before {
            break;
        }
    }
    let faces: Vec<Face> = face_set.into_iter().map(|points| Face { points }).collect();

    Ok(NewtonData {
        n,
        support,
        vertices,
        facets,
        faces,
    })
}

fn dot(v: &[i64], a: &[u32]) -> i64 {
    v.iter().zip(a).map(|(&vi, &ai)| vi * ai as i64).sum()
}

fn support_min(support: &[Vec<u32>], v: &[i64]) -> i64 {
    support.iter().map(|a| dot(v, a)).min().unwrap()
}

/// The support function `φ_f(v) = min_{a ∈ supp f} v·a` for `v ≥ 0`.
pub fn phi(nd: &NewtonData, v: &[i64]) -> Result<i64> {
    if v.len() != nd.n {
        return Err(Error::contract(
            "support-function vector has wrong length".to_string(),
        ));
    }
    if v.iter().any(|&x| x < 0) {
        return Err(Error::contract(
            "support function evaluated outside the nonnegative orthant".to_string(),
        ));
    }
    Ok(support_min(&nd.support, v))
}

/// The part of `f` supported on a face.
pub fn face_poly(f: &MPoly, face: &Face) -> MPoly {
    let mut out = MPoly::zero(f.n);
    for (e, c) in &f.terms {
        if face.points.contains(e) {
            out.insert(e.clone(), c.clone());
        }
    }
    out
}

/// The normal fan: one maximal cone `σ_a` per vertex `a`.
pub fn normal_fan(nd: &NewtonData) -> Fan {
    let cones: Vec<Cone> = nd
        .vertices
        .iter()
        .map(|a| Cone::new(vertex_cone_rays(&nd.support, a, nd.n)))
        .collect();
    Fan::from_cones(cones)
}

/// Extreme rays of `σ_a = {v ≥ 0 : v·(b−a) ≥ 0 ∀b}`: each ray is the
/// kernel of `n−1` linearly independent active constraints.
fn vertex_cone_rays(support: &[Vec<u32>], a: &[u32], n: usize) -> Vec<Vec<i64>> {
    let mut constraints: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        constraints.push(e);
    }
    for b in support {
        let diff: Vec<i64> = b.iter().zip(a).map(|(&bi, &ai)| bi as i64 - ai as i64).collect();
        if diff.iter().any(|&x| x != 0) {
            constraints.push(diff);
        }
    }
    constraints.sort();
    constraints.dedup();

    let mut rays: BTreeSet<Vec<i64>> = BTreeSet::new();
    if n == 1 {
        let v = vec![1i64];
        if constraints.iter().all(|c| c[0] >= 0) {
            rays.insert(v);
        }
        return rays.into_iter().collect();
    }
    for_each_combination(constraints.len(), n - 1, &mut |idx| {
        let rows: Vec<Vec<i64>> = idx.iter().map(|&i| constraints[i].clone()).collect();
        if let Some(v) = kernel_direction(&rows, n) {
            for cand in [v.clone(), v.iter().map(|x| -x).collect::<Vec<i64>>()] {
                if constraints.iter().all(|c| dot_i64(c, &cand) >= 0) {
                    rays.insert(cand);
                    break;
                }
            }
        }
    });
    rays.into_iter().collect()
}

fn dot_i64(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// Primitive kernel vector of an `(n−1)×n` integer matrix of rank `n−1`,
/// via signed maximal minors; `None` when the rank is lower.
fn kernel_direction(rows: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    debug_assert_eq!(rows.len(), n - 1);
    let mut v: Vec<Int> = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<Int>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, &x)| Int::from(x))
                    .collect()
            })
            .collect();
        let d = crate::groups::det(&minor);
        v.push(if j % 2 == 0 { d } else { -d });
    }
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let g = v
        .iter()
        .fold(Int::zero(), |acc, x| num::integer::gcd(acc, x.abs()));
    Some(
        v.iter()
            .map(|x| i64::try_from(x / &g).expect("ray coordinate overflows i64"))
            .collect(),
    )
}

fn for_each_combination(m: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    let mut idx: Vec<usize> = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, idx: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if idx.len() == k {
            f(idx);
            return;
        }
        let remaining = k - idx.len();
        for i in start..=m.saturating_sub(remaining) {
            idx.push(i);
            rec(i + 1, m, k, idx, f);
            idx.pop();
        }
    }
    if k <= m {
        rec(0, m, k, &mut idx, f);
    }
}

// ---------------------------------------------------------------------------
// Simplicial subdivision by lexicographic pulling.
// ---------------------------------------------------------------------------

/// Subdivides every maximal cone into simplicial cones without adding
/// rays: non-simplicial cones are pulled at their lexicographically
/// smallest ray. Two-dimensional fans are returned unchanged.
pub fn simplicial_subdivide(fan: &Fan) -> Result<Fan> {
    let mut cones: Vec<Cone> = Vec::new();
    for c in &fan.maximal_cones {
        for rays in subdivide_cone(&c.rays)? {
            cones.push(Cone::new(rays));
        }
    }
    Ok(Fan::from_cones(cones))
}

fn subdivide_cone(rays: &[Vec<i64>]) -> Result<Vec<Vec<Vec<i64>>>> {
    let mut rays: Vec<Vec<i64>> = rays.to_vec();
    rays.sort();
    rays.dedup();
    if rank_i64(&rays) == rays.len() {
        return Ok(vec![rays]);
    }
    let r0 = rays[0].clone();
    let mut out = Vec::new();
    for facet in cone_facets(&rays)? {
        let frays: Vec<Vec<i64>> = facet.iter().map(|&i| rays[i].clone()).collect();
        if frays.contains(&r0) {
            continue;
        }
        for sub in subdivide_cone(&frays)? {
            let mut simplex = sub;
            simplex.push(r0.clone());
            simplex.sort();
            out.push(simplex);
        }
    }
    if out.is_empty() {
        return Err(Error::internal("cone subdivision produced no simplices"));
    }
    Ok(out)
}

/// Facets of a pointed cone given by extreme rays, as sorted index sets.
fn cone_facets(rays: &[Vec<i64>]) -> Result<Vec<Vec<usize>>> {
    let d = rank_i64(rays);
    if d < 2 {
        return Err(Error::internal("facet enumeration needs a cone of dimension ≥ 2"));
    }
    // Express the rays in coordinates of a basis chosen among them.
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..rays.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&b| rays[b].clone()).collect();
        trial.push(rays[i].clone());
        if rank_i64(&trial) > basis.len() {
            basis.push(i);
        }
    }
    let coords: Vec<Vec<Rat>> = rays
        .iter()
        .map(|r| span_coordinates(&basis.iter().map(|&b| rays[b].clone()).collect::<Vec<_>>(), r))
        .collect::<Result<_>>()?;

    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for_each_combination(rays.len(), d - 1, &mut |idx| {
        let rows: Vec<Vec<Rat>> = idx.iter().map(|&i| coords[i].clone()).collect();
        let Some(h) = kernel_direction_rat(&rows, d) else {
            return;
        };
        let dots: Vec<Rat> = coords.iter().map(|c| dot_rat(&h, c)).collect();
        let one_sided = dots.iter().all(|x| !x.is_negative()) || dots.iter().all(|x| !x.is_positive());
        if !one_sided {
            return;
        }
        let members: Vec<usize> = (0..rays.len()).filter(|&i| dots[i].is_zero()).collect();
        let member_rays: Vec<Vec<i64>> = members.iter().map(|&i| rays[i].clone()).collect();
        if rank_i64(&member_rays) == d - 1 {
            facets.insert(members);
        }
    });
    if facets.is_empty() {
        return Err(Error::internal("cone has no facets"));
    }
    Ok(facets.into_iter().collect())
}

fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Kernel vector of a `(d−1)×d` rational matrix via signed minors.
fn kernel_direction_rat(rows: &[Vec<Rat>], d: usize) -> Option<Vec<Rat>> {
    let mut v: Vec<Rat> = Vec::with_capacity(d);
    for j in 0..d {
        let minor: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = det_rat(minor);
        v.push(if j % 2 == 0 { det } else { -det });
    }
    if v.iter().all(|x| x.is_zero()) {
        None
    } else {
        Some(v)
    }
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    if n == 0 {
        return Rat::one();
    }
    let mut det = Rat::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { return Rat::zero() };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col].clone();
        let inv = m[col][col].clone();
        for r in col + 1..n {
            if !m[r][col].is_zero() {
                let factor = &m[r][col] / &inv;
                for c in col..n {
                    let sub = &factor * &m[col][c];
                    m[r][c] -= sub;
                }
            }
        }
    }
    det
}

/// Coordinates of `target` in the span of `basis` (consistent by
/// construction).
fn span_coordinates(basis: &[Vec<i64>], target: &[i64]) -> Result<Vec<Rat>> {
    let n = target.len();
    let d = basis.len();
    // Solve Σ x_k basis_k = target by elimination on the n×(d+1) system.
    let mut aug: Vec<Vec<Rat>> = (0..n)
        .map(|row| {
            let mut r: Vec<Rat> = basis.iter().map(|b| rat(b[row])).collect();
            r.push(rat(target[row]));
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut row = 0;
    for col in 0..d {
        let Some(p) = (row..n).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(row, p);
        let inv = aug[row][col].clone();
        for r in 0..n {
            if r != row && !aug[r][col].is_zero() {
                let factor = &aug[r][col] / &inv;
                for c in col..=d {
                    let sub = &factor * &aug[row][c];
                    aug[r][c] -= sub;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
        if row == n {
            break;
        }
    }
    // Consistency: zero rows must have zero rhs.
    for r in row..n {
        if !aug[r][d].is_zero() {
            return Err(Error::internal("vector outside the span of the cone basis"));
        }
    }
    let mut x = vec![Rat::zero(); d];
    for (r, c) in pivots {
        x[c] = &aug[r][d] / &aug[r][c];
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Non-degeneracy.
// ---------------------------------------------------------------------------

/// Probe primes adapted to the torus dimension so enumeration stays
/// tractable.
fn nd_probe_primes(n: usize, cfg: &Config) -> Vec<u64> {
    match n {
        0..=3 => cfg.probe_primes.clone(),
        4 => vec![53, 47, 43],
        5 => vec![23, 19, 17],
        _ => vec![13, 11, 7],
    }
}

/// Checks non-degeneracy with respect to the Newton polyhedron: for every
/// face `τ`, the partial derivatives of `f_τ` have no common zero in the
/// torus `(ℂ^*)^n`. Exact for `n ≤ 2`; for larger `n` the faces are probed
/// modulo several primes, with candidate zeros lifted to balanced residues
/// and re-checked exactly.
pub fn is_nondegenerate(f: &MPoly, cfg: &Config) -> Result<NonDegenerate> {
    let nd = newton_polyhedron(f)?;
    let n = f.n;
    let describe = |face: &Face| -> String {
        let pts: Vec<String> = face.points.iter().map(|p| format!("{p:?}")).collect();
        format!("face {{{}}}", pts.join(", "))
    };
    if n <= 2 {
        for face in &nd.faces {
            let g = face_poly(f, face);
            let partials: Vec<MPoly> = (0..n).map(|i| g.partial(i)).filter(|p| !p.is_zero()).collect();
            if partials.is_empty() {
                continue;
            }
            // Common zeros of the partials are invariant under the scaling
            // of the face weight, so any torus zero lies on a curve, which
            // shows up as a nonconstant common factor.
            let mut gcd = partials[0].clone();
            for p in &partials[1..] {
                gcd = if n == 1 {
                    univariate_gcd(&gcd, p)
                } else {
                    crate::poly::bivariate_gcd(&gcd, p)
                };
            }
            if !strip_monomial(&gcd).is_constant() {
                return Ok(NonDegenerate::Degenerate {
                    witness: describe(face),
                });
            }
        }
        return Ok(NonDegenerate::Exact);
    }

    let primes = nd_probe_primes(n, cfg);
    for face in &nd.faces {
        let g = face_poly(f, face);
        let partials: Vec<MPoly> = (0..n).map(|i| g.partial(i)).filter(|p| !p.is_zero()).collect();
        if partials.is_empty() {
            continue;
        }
        // A partial that is a single monomial never vanishes on the torus,
        // so the face passes exactly.
        if partials.iter().any(|p| strip_monomial(p).is_constant()) {
            continue;
        }
        // A singular face over Q has singular points modulo almost every
        // prime, so an unlifted modular zero condemns the face only when
        // every sampled prime exhibits one.
        let mut face_clean = false;
        let mut modular_witness: Option<String> = None;
        for &q in &primes {
            match torus_common_zero_mod(&partials, n, q)? {
                Some(point) => {
                    // Try to confirm over Q with balanced residues.
                    let lifted: Vec<Rat> = point
                        .iter()
                        .map(|&c| {
                            let c = c as i64;
                            rat(if c > (q as i64) / 2 { c - q as i64 } else { c })
                        })
                        .collect();
                    if partials.iter().all(|p| p.eval(&lifted).is_zero()) {
                        return Ok(NonDegenerate::Degenerate {
                            witness: format!(
                                "{}: singular torus point {lifted:?}",
                                describe(face)
                            ),
                        });
                    }
                    if modular_witness.is_none() {
                        modular_witness = Some(format!(
                            "{}: singular point mod {q} at {point:?}",
                            describe(face)
                        ));
                    }
                }
                None => face_clean = true,
            }
        }
        if !face_clean {
            if let Some(witness) = modular_witness {
                return Ok(NonDegenerate::Degenerate { witness });
            }
        }
    }
    Ok(NonDegenerate::Probabilistic { primes })
}

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
        out.insert(e.iter().zip(&min_exp).map(|(a, b)| a - b).collect(), c.clone());
    }
    out
}

fn univariate_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    let to_qpoly = |p: &MPoly| {
        let d = p.terms.keys().map(|e| e[0]).max().unwrap_or(0) as usize;
        crate::rat::QPoly(
            (0..=d)
                .map(|i| p.terms.get(&vec![i as u32]).cloned().unwrap_or_else(Rat::zero))
                .collect(),
        )
    };
    let g = to_qpoly(a).gcd(&to_qpoly(b));
    let mut out = MPoly::zero(1);
    for (i, c) in g.0.iter().enumerate() {
        out.insert(vec![i as u32], c.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_with_default_vars;

    fn nd(src: &str, n: usize) -> NewtonData {
        newton_polyhedron(&parse_with_default_vars(src, n).unwrap()).unwrap()
    }

    #[test]
    fn cusp_newton_data() {
        let data = nd("x^2 + y^3", 2);
        assert_eq!(data.vertices, vec![vec![0, 3], vec![2, 0]]);
        let fan = normal_fan(&data);
        assert_eq!(fan.rays, vec![vec![0, 1], vec![1, 0], vec![3, 2]]);
        assert_eq!(fan.maximal_cones.len(), 2);
        assert!(fan
            .maximal_cones
            .contains(&Cone::new(vec![vec![0, 1], vec![3, 2]])));
        assert!(fan
            .maximal_cones
            .contains(&Cone::new(vec![vec![1, 0], vec![3, 2]])));
        // Faces: two vertices and the compact edge.
        assert_eq!(data.faces.len(), 3);
        let edge = Face {
            points: vec![vec![0, 3], vec![2, 0]],
        };
        assert!(data.faces.contains(&edge));
        let f = parse_with_default_vars("x^2 + y^3", 2).unwrap();
        assert_eq!(face_poly(&f, &edge), f);
    }

    #[test]
    fn three_vertex_curve() {
        let data = nd("x^6 + x^2*y^2 + y^5", 2);
        assert_eq!(
            data.vertices,
            vec![vec![0, 5], vec![2, 2], vec![6, 0]]
        );
        let fan = normal_fan(&data);
        assert_eq!(
            fan.rays,
            vec![vec![0, 1], vec![1, 0], vec![1, 2], vec![3, 2]]
        );
        assert_eq!(fan.maximal_cones.len(), 3);
        // Support function examples.
        assert_eq!(phi(&data, &[1, 1]).unwrap(), 4);
        assert_eq!(phi(&data, &[1, 2]).unwrap(), 6);
        assert_eq!(phi(&data, &[0, 0]).unwrap(), 0);
        assert!(phi(&data, &[-1, 0]).is_err());
        // Support lies above every facet.
        for facet in &data.facets {
            for a in &data.support {
                assert!(dot(&facet.normal, a) >= facet.offset);
            }
        }
    }

    #[test]
    fn monomial_polyhedron() {
        let data = nd("x^2*y^3", 2);
        assert_eq!(data.vertices, vec![vec![2, 3]]);
        let fan = normal_fan(&data);
        assert_eq!(fan.maximal_cones.len(), 1);
        assert_eq!(
            fan.maximal_cones[0],
            Cone::new(vec![vec![0, 1], vec![1, 0]])
        );
        // Facets are the coordinate hyperplane shifts.
        assert!(data.facets.contains(&Facet {
            normal: vec![1, 0],
            offset: 2
        }));
        assert!(data.facets.contains(&Facet {
            normal: vec![0, 1],
            offset: 3
        }));
    }

    #[test]
    fn two_dimensional_subdivision_is_identity() {
        let data = nd("x^6 + x^2*y^2 + y^5", 2);
        let fan = normal_fan(&data);
        assert_eq!(simplicial_subdivide(&fan).unwrap(), fan);
    }

    #[test]
    fn square_cone_pulls_at_smallest_ray() {
        let square = Cone::new(vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![1, 0, 1],
            vec![0, 1, 1],
        ]);
        assert!(!square.is_simplicial());
        let fan = Fan::from_cones(vec![square]);
        let sub = simplicial_subdivide(&fan).unwrap();
        assert_eq!(sub.rays, fan.rays);
        assert_eq!(sub.maximal_cones.len(), 2);
        assert!(sub
            .maximal_cones
            .contains(&Cone::new(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1]])));
        assert!(sub
            .maximal_cones
            .contains(&Cone::new(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]])));
    }

    #[test]
    fn nondegeneracy_exact_cases() {
        let cfg = Config::default();
        for src in ["x^2 + y^3", "x^6 + x^2*y^2 + y^5", "x + y"] {
            let f = parse_with_default_vars(src, 2).unwrap();
            assert_eq!(is_nondegenerate(&f, &cfg).unwrap(), NonDegenerate::Exact, "{src}");
        }
        // (x + y)² is degenerate along x + y = 0.
        let f = parse_with_default_vars("x^2 + 2*x*y + y^2", 2).unwrap();
        assert!(matches!(
            is_nondegenerate(&f, &cfg).unwrap(),
            NonDegenerate::Degenerate { .. }
        ));
    }

    #[test]
    fn nondegeneracy_probabilistic_cases() {
        let cfg = Config::default();
        for src in ["x*y + z^2", "x^2 + y^2 + z^3", "x^2 + y^2 + z^2"] {
            let f = parse_with_default_vars(src, 3).unwrap();
            let verdict = is_nondegenerate(&f, &cfg).unwrap();
            assert!(
                matches!(verdict, NonDegenerate::Probabilistic { .. }),
                "{src}: {verdict:?}"
            );
        }
        // x²y²... a degenerate 3-variable example: (x + y)² + z⁴ has the
        // face (x + y)² with singular torus points.
        let f = parse_with_default_vars("x^2 + 2*x*y + y^2 + z^4", 3).unwrap();
        assert!(matches!(
            is_nondegenerate(&f, &cfg).unwrap(),
            NonDegenerate::Degenerate { .. }
        ));
    }
}
