//! End-to-end verification fixtures.
//!
//! Each check wires a complete pipeline run to independently derived
//! expected values: hand-expanded closed forms, Euler characteristics and
//! point counts from the counting oracle, p-adic solution counts, and
//! cross-validation between unrelated code paths (chart assembly against
//! the two-variable closed form, weighted blow-up against the Newton fan,
//! quotient presentations against their resolutions). The command-line
//! front end runs the whole battery and prints a pass/fail table; the
//! integration suite asserts the checks one by one.
//!
//! All comparisons are exact — there are no tolerances anywhere.

use num::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::Config;
use crate::count::{self, GrVal, Region};
use crate::error::{Error, Result};
use crate::groups::DiagGroup;
use crate::poly::{self, MPoly, SqhData};
use crate::rat::{rat, ratio, Int, Rat};
use crate::stringy::{self, EPoly, StringyStratum};
use crate::symb::{normalize, specialize_topological, FactorNu, LaurentLT};
use crate::toric::{self, Cone, Fan};
use crate::zeta;

/// Outcome of a single verification fixture.
#[derive(Debug)]
pub struct CheckReport {
    /// Position in the battery (1-based).
    pub id: usize,
    /// What the check verifies.
    pub name: &'static str,
    /// A one-line summary on success, the first failure otherwise.
    pub outcome: Result<String>,
}

/// Runs the whole battery in order, capturing failures per check.
pub fn run_all(cfg: &Config) -> Vec<CheckReport> {
    let checks: [(&'static str, fn(&Config) -> Result<String>); 10] = [
        ("local zeta of the cusp", local_cusp_closed_form),
        ("divisor strata of a weighted threefold", weighted_table),
        ("chart assembly vs. curve closed form", dim2_agreement),
        ("pole survival for curve families", pole_survival),
        ("topological specialization", topological_specialization),
        ("p-adic solution counts", padic_oracle),
        ("principal-part invariance", principal_part_invariance),
        ("quotient class identities", quotient_class_identities),
        ("stringy cross-validation", stringy_cross_validation),
        ("Newton fan pipeline", fan_pipeline),
    ];
    checks
        .iter()
        .enumerate()
        .map(|(i, (name, f))| CheckReport {
            id: i + 1,
            name,
            outcome: f(cfg),
        })
        .collect()
}

fn expect<T: PartialEq + std::fmt::Debug>(label: &str, got: &T, want: &T) -> Result<()> {
    if got == want {
        Ok(())
    } else {
        Err(Error::Verification(format!(
            "{label}: got {got:?}, expected {want:?}"
        )))
    }
}

/// Parses `src`, certifies the principal part, and assembles the data of a
/// semi-quasihomogeneous germ.
fn sqh(src: &str, w: &[i64], cfg: &Config) -> Result<SqhData> {
    let f = poly::parse_with_default_vars(src, w.len())?;
    let (f_d, _, _) = poly::principal_part(&f, w)?;
    let cert = poly::is_isolated_singularity(&f_d, cfg)?;
    poly::sqh_data(&f, w, cert)
}

fn laurent(terms: &[(i64, i64, i64)]) -> LaurentLT {
    let mut out = LaurentLT::zero();
    for &(et, el, c) in terms {
        out = out.add(&LaurentLT::term(rat(et), rat(el), rat(c)));
    }
    out
}

/// The local zeta function of `x² + y³` normalizes to the hand-expanded
/// closed form with denominator `(1 − L⁻¹T)(1 − L⁻⁵T⁶)`.
pub fn local_cusp_closed_form(cfg: &Config) -> Result<String> {
    let data = sqh("x^2+y^3", &[3, 2], cfg)?;
    let r = normalize(&zeta::motivic_zeta(&data, true, cfg)?, cfg)?;
    expect("prefactor exponent", &r.prefactor_exponent, &-2)?;
    expect(
        "denominator",
        &r.den,
        &vec![FactorNu::from_ints(1, 1), FactorNu::from_ints(6, 5)],
    )?;
    let num = laurent(&[
        (2, 0, 1),
        (2, -1, -1),
        (5, -3, -1),
        (5, -4, 1),
        (6, -3, 1),
        (6, -4, -1),
        (7, -5, -1),
        (7, -6, 1),
    ]);
    expect("numerator", &r.num, &num)?;
    Ok("local cusp zeta matches its closed form".to_string())
}

/// Every divisor stratum of `x⁵ + yz² + xy³` with `w = (6,8,11)`: the
/// subsets, their classes, their stabilizers, and the raw `F₇` counts.
pub fn weighted_table(cfg: &Config) -> Result<String> {
    let data = sqh("x^5 + y*z^2 + x*y^3", &[6, 8, 11], cfg)?;
    let rows = zeta::ehat_table(&data, cfg)?;

    let shape: Vec<(usize, Vec<usize>)> = rows.iter().map(|r| (r.chart, r.subset.clone())).collect();
    expect(
        "stratum shapes",
        &shape,
        &vec![
            (1, vec![2, 3]),
            (1, vec![2]),
            (1, vec![3]),
            (1, vec![]),
            (2, vec![3]),
            (2, vec![]),
            (3, vec![]),
        ],
    )?;

    let classes: Vec<GrVal> = rows
        .iter()
        .map(|r| {
            r.class
                .known()
                .cloned()
                .ok_or_else(|| Error::Verification("symbolic class in the table".to_string()))
        })
        .collect::<Result<_>>()?;
    let expected_classes = vec![
        GrVal::l_pow(1).sub(&GrVal::from_int(2)),
        GrVal::one(),
        GrVal::zero(),
        GrVal::zero(),
        GrVal::zero(),
        GrVal::one(),
        GrVal::one(),
    ];
    expect("stratum classes", &classes, &expected_classes)?;

    let expected_groups = [
        DiagGroup::trivial(3),
        DiagGroup::parse("1/2(1,0,1)")?,
        DiagGroup::trivial(3),
        DiagGroup::parse("1/6(-1,8,11)")?,
        DiagGroup::trivial(3),
        DiagGroup::parse("1/8(6,-1,11)")?,
        DiagGroup::parse("1/11(6,8,-1)")?,
    ];
    for (row, exp) in rows.iter().zip(&expected_groups) {
        expect("stabilizer", &row.stabilizer.elements(), &exp.elements())?;
    }

    expect(
        "F_7 counts",
        &zeta::ehat_counts(&data, 7, cfg)?,
        &vec![5, 1, 0, 0, 0, 1, 1],
    )?;
    Ok("all 7 divisor strata of the (6,8,11) table reproduced".to_string())
}

const COEFF_POOL: [(i64, i64); 10] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (-1, 1),
    (-2, 1),
    (1, 2),
    (3, 2),
    (-1, 2),
    (5, 2),
    (-3, 1),
];

/// A random certified semi-quasihomogeneous curve: principal part
/// `x^a y^b ∏_k (y^p − c_k x^q)` with distinct nonzero `c_k`, weight
/// `(p, q)` coprime, degree at most 40, and an optional tail of higher
/// weighted degree. Draws whose principal part fails the exact
/// isolatedness test are discarded.
fn random_curve(rng: &mut ChaCha8Rng) -> Result<Option<SqhData>> {
    let p = 1 + (rng.next_u64() % 7) as i64;
    let q = 1 + (rng.next_u64() % 7) as i64;
    if crate::rat::gcd_u64(p as u64, q as u64) != 1 {
        return Ok(None);
    }
    let a = (rng.next_u64() % 2) as u32;
    let b = (rng.next_u64() % 2) as u32;
    let k = (rng.next_u64() % 4) as usize;
    if a + b == 0 && k == 0 {
        return Ok(None);
    }
    let d = a as i64 * p + b as i64 * q + k as i64 * p * q;
    if d > 40 {
        return Ok(None);
    }

    let mut f_d = MPoly::zero(2);
    f_d.insert(vec![a, b], Rat::one());
    let mut pool: Vec<Rat> = COEFF_POOL.iter().map(|&(n, m)| ratio(n, m)).collect();
    for _ in 0..k {
        let c = pool.swap_remove((rng.next_u64() as usize) % pool.len());
        let mut factor = MPoly::zero(2);
        factor.insert(vec![0, p as u32], Rat::one());
        factor.insert(vec![q as u32, 0], -c);
        f_d = f_d.mul(&factor);
    }

    let mut f = f_d.clone();
    for _ in 0..(rng.next_u64() % 3) {
        let s = (rng.next_u64() % 10) as u32;
        let t = (rng.next_u64() % 10) as u32;
        if (s as i64) * p + (t as i64) * q <= d {
            continue;
        }
        let c = COEFF_POOL[(rng.next_u64() as usize) % COEFF_POOL.len()];
        let mut tail = MPoly::zero(2);
        tail.insert(vec![s, t], ratio(c.0, c.1));
        f = f.add(&tail);
    }

    let cert = poly::isolated_exact_low_dim(&f_d)?;
    if !cert.is_ok() {
        return Ok(None);
    }
    Ok(Some(poly::sqh_data(&f, &[p, q], cert)?))
}

/// On at least twenty randomized semi-quasihomogeneous curves, the chart
/// assembly and the two-variable closed form normalize to the same
/// rational function. The sample is drawn from a fixed seed.
pub fn dim2_agreement(cfg: &Config) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x71_7a_65_74_61);
    let mut done = 0usize;
    let mut attempts = 0usize;
    while done < 20 {
        attempts += 1;
        if attempts > 500 {
            return Err(Error::Verification(
                "the curve generator stalled before reaching twenty samples".to_string(),
            ));
        }
        let Some(data) = random_curve(&mut rng)? else {
            continue;
        };
        let charts = normalize(&zeta::motivic_zeta(&data, true, cfg)?, cfg)?;
        let closed = normalize(&zeta::motivic_zeta_dim2(&data)?, cfg)?;
        if charts != closed {
            return Err(Error::Verification(format!(
                "chart assembly and closed form disagree on f = {} with w = ({}, {})",
                data.f.display_with(&poly::default_var_names(2)),
                data.w[0],
                data.w[1]
            )));
        }
        done += 1;
    }
    Ok(format!("{done} random curves agree with the closed form"))
}

/// Both candidate poles survive for the curve suite: the pole set of
/// `x^p + y^q`-type germs is exactly `{−1, −|w|/d}`, each simple.
pub fn pole_survival(cfg: &Config) -> Result<String> {
    for (src, w, num, den) in [
        ("x^2+y^3", [3i64, 2], -5i64, 6i64),
        ("x^2+y^5", [5, 2], -7, 10),
        ("x^3+y^4", [4, 3], -7, 12),
        ("x^3+y^5", [5, 3], -8, 15),
    ] {
        let ps = zeta::poles_dim2(&sqh(src, &w, cfg)?, cfg)?;
        let expected: std::collections::BTreeMap<Rat, usize> =
            [(rat(-1), 1), (ratio(num, den), 1)].into_iter().collect();
        expect(&format!("poles of {src}"), &ps, &expected)?;
    }
    Ok("4 curve germs keep both poles, each simple".to_string())
}

/// The topological zeta function of the cusp, and the Euler characteristic
/// of smooth projective hypersurfaces against the degree formula
/// `χ = n − (1/d)(1 + (−1)^{n−1}(d−1)ⁿ)`, with the counting oracle as the
/// judge.
pub fn topological_specialization(cfg: &Config) -> Result<String> {
    let data = sqh("x^2+y^3", &[3, 2], cfg)?;
    let tz = specialize_topological(&zeta::motivic_zeta(&data, true, cfg)?)?;
    expect(
        "topological zeta of the cusp",
        &tz.pretty(),
        &"(4s+5)/((s+1)(6s+5))".to_string(),
    )?;

    for (src, n, d, frozen) in [("x^3+y^3", 2usize, 3i64, 3i64), ("x^3+y^3+z^3", 3, 3, 0)] {
        let f = poly::parse_with_default_vars(src, n)?;
        let chi = count::chi_projective_hypersurface(&f)?;
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        let formula = (rat(n as i64 * d) - rat(1 + sign * (d - 1).pow(n as u32))) / rat(d);
        expect(
            &format!("χ of the degree-{d} hypersurface in {n} variables"),
            &chi,
            &Int::from(frozen),
        )?;
        expect("degree formula", &formula, &rat(frozen))?;
    }
    Ok("cusp specialization and smooth-hypersurface χ both verified".to_string())
}

/// Solution counts modulo `p^m` reproduce the specialized zeta function for
/// a line, a normal crossing, and the cusp, at two admissible primes each.
pub fn padic_oracle(cfg: &Config) -> Result<String> {
    let mut checked = 0usize;
    for (src, n) in [("x", 1usize), ("x*y", 2), ("x^2+y^3", 2)] {
        let f = poly::parse_with_default_vars(src, n)?;
        for p in [5u64, 7] {
            let rep = count::igusa_check(&f, p, 4, cfg)?;
            if !rep.matched {
                return Err(Error::Verification(format!(
                    "Poincaré series of {src} at p = {p} has residuals {:?} (counts {:?})",
                    rep.residuals, rep.counts
                )));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} Poincaré series match to order 4"))
}

/// The local zeta function only depends on the principal part: adding
/// higher-order terms to ten germs changes nothing.
pub fn principal_part_invariance(cfg: &Config) -> Result<String> {
    let fixtures: [(&str, &str, &[i64]); 10] = [
        ("x^2+y^3+x*y^2", "x^2+y^3", &[3, 2]),
        ("x^2+y^3+y^4", "x^2+y^3", &[3, 2]),
        ("x^2+y^5+x*y^3", "x^2+y^5", &[5, 2]),
        ("x^3+y^4+x^2*y^3", "x^3+y^4", &[4, 3]),
        ("x^3+y^5+x^2*y^2", "x^3+y^5", &[5, 3]),
        ("x*y+x^3", "x*y", &[1, 1]),
        ("x^2+y^2+y^3", "x^2+y^2", &[1, 1]),
        ("x^3+y^3+x^2*y^2", "x^3+y^3", &[1, 1]),
        ("x^2+y^2+z^2+z^3", "x^2+y^2+z^2", &[1, 1, 1]),
        ("x^5+y*z^2+x*y^3+z^3", "x^5+y*z^2+x*y^3", &[6, 8, 11]),
    ];
    for (tailed_src, plain_src, w) in fixtures {
        let tailed = zeta::motivic_zeta(&sqh(tailed_src, w, cfg)?, true, cfg)?;
        let plain = zeta::motivic_zeta(&sqh(plain_src, w, cfg)?, true, cfg)?;
        if tailed != plain {
            return Err(Error::Verification(format!(
                "the tail of {tailed_src} changed the local zeta function"
            )));
        }
    }
    Ok("10 tails leave the local zeta function unchanged".to_string())
}

/// Quotients of affine space and of the torus by random diagonal cyclic
/// groups interpolate to `Lⁿ` and `(L−1)ⁿ`.
pub fn quotient_class_identities(cfg: &Config) -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f_72_62_69_74);
    for trial in 0..10usize {
        let n = 1 + (rng.next_u64() % 3) as usize;
        let r = 2 + rng.next_u64() % 7;
        let exps: Vec<i64> = (0..n).map(|_| (rng.next_u64() % r) as i64).collect();
        let group = DiagGroup::cyclic(r, &exps)?;
        let label = format!("trial {trial}: C^{n} by {group}");
        let affine = count::quotient_class(&Region::affine(n), &group, n, cfg, &label)?;
        expect(&label, &affine, &GrVal::l_pow(n))?;
        let label = format!("trial {trial}: torus by {group}");
        let torus = count::quotient_class(&Region::torus(n), &group, n, cfg, &label)?;
        let lm1 = GrVal::l_pow(1).sub(&GrVal::one());
        expect(&label, &torus, &lm1.pow(n))?;
    }
    Ok("10 random cyclic quotients give L^n and (L-1)^n".to_string())
}

/// Stringy E-functions cross-validated two ways: quotient presentations of
/// `C²/(1/r(1,1))` against their minimal resolutions, and the weighted
/// blow-up against the Newton fan on two surface germs with frozen values.
pub fn stringy_cross_validation(cfg: &Config) -> Result<String> {
    for (r, nu) in [(2u64, rat(1)), (3, ratio(2, 3))] {
        let group = DiagGroup::cyclic(r, &[1, 1])?;
        let identity = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(2),
                nu: vec![rat(1), rat(1)],
            },
            StringyStratum {
                e_class: EPoly::one(),
                group,
                nu: vec![rat(1), rat(1)],
            },
        ];
        let resolved = [
            StringyStratum {
                e_class: EPoly::q_pow(2).sub(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![rat(1)],
            },
            StringyStratum {
                e_class: EPoly::q_pow(1).add(&EPoly::one()),
                group: DiagGroup::trivial(1),
                nu: vec![nu],
            },
        ];
        let a = stringy::stringy_from_qres(&identity)?;
        let b = stringy::stringy_from_qres(&resolved)?;
        if a != b {
            return Err(Error::Verification(format!(
                "C^2/(1/{r}(1,1)): identity presentation gives {}, resolution gives {}",
                a.pretty(),
                b.pretty()
            )));
        }
    }

    for (src, w, expected) in [
        ("x^2+y^2+z^2", [1i64, 1, 1], EPoly::q_pow(2).add(&EPoly::q_pow(1))),
        (
            "x^2+y^2+z^3",
            [3, 3, 2],
            EPoly::q_pow(2)
                .add(&EPoly::q_pow(1))
                .add(&EPoly::q_pow(1)),
        ),
    ] {
        let via_blowup = stringy::stringy_sqh(&sqh(src, &w, cfg)?, cfg)?;
        let f = poly::parse_with_default_vars(src, 3)?;
        let via_fan = stringy::stringy_nondeg(&f, cfg)?;
        if via_blowup != via_fan {
            return Err(Error::Verification(format!(
                "stringy E of {src}: blow-up gives {}, fan gives {}",
                via_blowup.pretty(),
                via_fan.pretty()
            )));
        }
        let poly = via_blowup.try_polynomial().ok_or_else(|| {
            Error::Verification(format!("stringy E of {src} is not a polynomial"))
        })?;
        expect(&format!("stringy E of {src}"), &poly, &expected)?;
    }
    Ok("orbifold resolutions and both surface paths agree".to_string())
}

/// The Newton fan of `x⁶ + x²y² + y⁵` has exactly the four expected rays;
/// subdivision is the identity on two-dimensional fans and produces a
/// ray-preserving simplicial refinement of the square cone.
pub fn fan_pipeline(cfg: &Config) -> Result<String> {
    let f = poly::parse_with_default_vars("x^6+x^2*y^2+y^5", 2)?;
    let fan = toric::normal_fan(&toric::newton_polyhedron(&f)?);
    expect(
        "rays",
        &fan.rays,
        &vec![vec![0i64, 1], vec![1, 0], vec![1, 2], vec![3, 2]],
    )?;

    for src in ["x^2+y^3", "x^6+x^2*y^2+y^5", "x*y", "x^2+y^2"] {
        let g = poly::parse_with_default_vars(src, 2)?;
        let fan = toric::normal_fan(&toric::newton_polyhedron(&g)?);
        expect(
            &format!("subdivision of the fan of {src}"),
            &toric::simplicial_subdivide(&fan)?,
            &fan,
        )?;
    }

    let square = Cone::new(vec![
        vec![1, 0, 0],
        vec![0, 1, 0],
        vec![1, 0, 1],
        vec![0, 1, 1],
    ]);
    let fan = Fan::from_cones(vec![square]);
    let sub = toric::simplicial_subdivide(&fan)?;
    expect("rays of the subdivided square cone", &sub.rays, &fan.rays)?;
    for cone in &sub.maximal_cones {
        if !cone.is_simplicial() {
            return Err(Error::Verification(format!(
                "non-simplicial cone survived the subdivision: {cone:?}"
            )));
        }
        for ray in &cone.rays {
            if !fan.rays.contains(ray) {
                return Err(Error::Verification(format!(
                    "subdivision invented the ray {ray:?}"
                )));
            }
        }
    }
    let _ = cfg;
    Ok("fan rays, 2-d identity, and square-cone refinement verified".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_whole_battery_passes() {
        let cfg = Config::default();
        for report in run_all(&cfg) {
            if let Err(e) = &report.outcome {
                panic!("check {} ({}) failed: {e}", report.id, report.name);
            }
        }
    }
}
