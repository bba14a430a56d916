//! `qzeta` — exact zeta functions and stringy invariants of hypersurface
//! singularities from the command line.
//!
//! Subcommands: `zeta`, `topzeta`, `poles` (motivic/topological zeta
//! functions and their poles), `stringy` (stringy E-functions through the
//! weighted blow-up, the Newton fan, or explicit resolution data), `fan`
//! (Newton polyhedron fans), `class` (Grothendieck classes of quotient
//! strata from a JSON description), `igusa-check` (independent p-adic
//! verification), `probe` (zeta functions across a weighted family), and
//! `fixtures` (the end-to-end verification battery).
//!
//! Exit codes: 0 on success, 1 on computation errors or failed
//! verifications, 2 on usage errors.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{One, Signed, Zero};
use serde::Deserialize;
use serde_json::json;

use qzeta_core::config::Config;
use qzeta_core::count::{self, Region};
use qzeta_core::fixtures;
use qzeta_core::groups::{DiagGroup, SgSum};
use qzeta_core::poly::{self, Isolated, MPoly, SqhData};
use qzeta_core::rat::{rat, QPoly, Rat};
use qzeta_core::stringy::{self, EPoly, EPolyRat, StringyStratum};
use qzeta_core::symb::{self, FactorNu};
use qzeta_core::toric::{self, Fan};
use qzeta_core::zeta::{self, MotZeta};

#[derive(Parser)]
#[command(
    name = "qzeta",
    version,
    about = "Exact motivic/topological zeta functions and stringy E-functions \
             of hypersurface singularities",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Motivic zeta function of a semi-quasihomogeneous polynomial
    Zeta(ZetaArgs),
    /// Topological zeta function (specialization of the motivic one)
    Topzeta(TopzetaArgs),
    /// Poles of the normalized zeta function, with multiplicities
    Poles(TopzetaArgs),
    /// Stringy E-function of a hypersurface or of explicit resolution data
    Stringy(StringyArgs),
    /// Newton polyhedron fan and its simplicial subdivision
    Fan(FanArgs),
    /// Grothendieck class of a quotient stratum described in JSON
    Class(ClassArgs),
    /// Brute-force p-adic verification of the zeta function
    #[command(name = "igusa-check")]
    IgusaCheck(IgusaArgs),
    /// Local topological zeta functions across one weighted family
    Probe(ProbeArgs),
    /// Run the end-to-end verification battery
    Fixtures(FixturesArgs),
}

/// Options shared by the polynomial-consuming subcommands.
#[derive(Args)]
struct CommonArgs {
    /// Comma-separated variable names (default: inferred from the input)
    #[arg(long, value_name = "x,y,..")]
    vars: Option<String>,
    /// Comma-separated positive weights (default: inferred from the Newton
    /// polyhedron)
    #[arg(long, value_name = "p,q,..")]
    weight: Option<String>,
    /// Comma-separated interpolation primes (default: adaptive search);
    /// also read from QZETA_PRIMES
    #[arg(long, value_name = "p1,p2,..")]
    primes: Option<String>,
    /// Accept the principal part as an isolated singularity without checking
    #[arg(long)]
    assume_isolated: bool,
}

#[derive(Args)]
struct ZetaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Zeta function of the germ at the origin instead of the global one
    #[arg(long)]
    local: bool,
    /// Use the closed-form two-variable assembly (requires --local)
    #[arg(long, requires = "local")]
    dim2_fastpath: bool,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// The polynomial, e.g. "x^2+y^3"
    poly: String,
}

#[derive(Args)]
struct TopzetaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Work with the zeta function of the germ at the origin
    #[arg(long)]
    local: bool,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// The polynomial, e.g. "x^2+y^3"
    poly: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StringyPath {
    /// Weighted blow-up of a semi-quasihomogeneous singularity
    Sqh,
    /// Toric resolution from the Newton fan (non-degenerate inputs)
    Nondeg,
    /// Explicit resolution strata from a JSON file
    QresFile,
}

#[derive(Args)]
struct StringyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Construction path
    #[arg(long, value_enum, default_value = "sqh")]
    path: StringyPath,
    /// JSON strata list (required with --path qres-file)
    #[arg(long, value_name = "FILE")]
    qres_file: Option<PathBuf>,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// The polynomial (omit with --path qres-file)
    poly: Option<String>,
}

#[derive(Args)]
struct FanArgs {
    /// Comma-separated variable names (default: inferred from the input)
    #[arg(long, value_name = "x,y,..")]
    vars: Option<String>,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// The polynomial, e.g. "x^6+x^2*y^2+y^5"
    poly: String,
}

#[derive(Args)]
struct ClassArgs {
    /// Comma-separated interpolation primes (default: adaptive search)
    #[arg(long, value_name = "p1,p2,..")]
    primes: Option<String>,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// JSON stratum description (see README for the schema)
    spec: PathBuf,
}

#[derive(Args)]
struct IgusaArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// The prime to verify against
    #[arg(short, long)]
    p: u64,
    /// Deepest level p^m to count solutions modulo
    #[arg(short = 'm', long = "max-m", default_value_t = 3)]
    max_m: usize,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// The polynomial, e.g. "x^2+y^3"
    poly: String,
}

#[derive(Args)]
struct ProbeArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
    /// Quasihomogeneous polynomials sharing the weights from --weight
    #[arg(required = true)]
    polys: Vec<String>,
}

#[derive(Args)]
struct FixturesArgs {
    /// Comma-separated interpolation primes (default: adaptive search)
    #[arg(long, value_name = "p1,p2,..")]
    primes: Option<String>,
    /// Emit JSON instead of pretty text
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.cmd {
        Cmd::Zeta(a) => run_zeta(a),
        Cmd::Topzeta(a) => run_topzeta(a, false),
        Cmd::Poles(a) => run_topzeta(a, true),
        Cmd::Stringy(a) => run_stringy(a),
        Cmd::Fan(a) => run_fan(a),
        Cmd::Class(a) => run_class(a),
        Cmd::IgusaCheck(a) => run_igusa(a),
        Cmd::Probe(a) => run_probe(a),
        Cmd::Fixtures(a) => run_fixtures(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

// ---------------------------------------------------------------------------
// Input handling
// ---------------------------------------------------------------------------

/// Infers an ordered variable list from the identifiers of a polynomial
/// source string: subsets of `x, y, z, w` use that order; `x1, …, xn` use
/// numeric order; anything else must be declared with `--vars`.
fn detect_vars(src: &str) -> Result<Vec<String>> {
    let mut names = BTreeSet::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            names.insert(src[start..i].to_string());
        } else {
            i += 1;
        }
    }
    if names.is_empty() {
        bail!("no variables found in `{src}`; pass --vars");
    }
    let order = ["x", "y", "z", "w"];
    if names.iter().all(|n| order.contains(&n.as_str())) {
        let count = order
            .iter()
            .rposition(|n| names.contains(*n))
            .expect("nonempty")
            + 1;
        return Ok(order[..count].iter().map(|s| s.to_string()).collect());
    }
    let indexed: Option<Vec<usize>> = names
        .iter()
        .map(|n| n.strip_prefix('x').and_then(|t| t.parse::<usize>().ok()))
        .collect();
    if let Some(idx) = indexed {
        if idx.iter().all(|&k| k >= 1) {
            let n = *idx.iter().max().expect("nonempty");
            return Ok((1..=n).map(|k| format!("x{k}")).collect());
        }
    }
    bail!(
        "cannot infer a variable order from {:?}; pass --vars",
        names.iter().collect::<Vec<_>>()
    );
}

fn parse_name_list(s: &str) -> Result<Vec<String>> {
    let names: Vec<String> = s
        .split(',')
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect();
    if names.is_empty() {
        bail!("empty name list `{s}`");
    }
    Ok(names)
}

fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .with_context(|| format!("bad {what} entry `{t}`"))
        })
        .collect()
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .with_context(|| format!("bad {what} entry `{t}`"))
        })
        .collect()
}

/// Parses one polynomial, with variables from `--vars` or inferred from the
/// source text.
fn parse_poly(src: &str, vars: &Option<String>) -> Result<(MPoly, Vec<String>)> {
    let names = match vars {
        Some(v) => parse_name_list(v)?,
        None => detect_vars(src)?,
    };
    let f = MPoly::parse(src, &names).with_context(|| format!("cannot parse `{src}`"))?;
    Ok((f, names))
}

fn build_config(primes: &Option<String>) -> Result<Config> {
    let mut cfg = Config::from_env();
    if let Some(p) = primes {
        cfg.primes_override = Some(parse_u64_list(p, "prime")?);
    }
    Ok(cfg)
}

/// Assembles the semi-quasihomogeneous data of `f`, either for an explicit
/// weight or by searching the Newton polyhedron for one that makes the
/// principal part an isolated singularity.
fn sqh_from(f: &MPoly, common: &CommonArgs, cfg: &Config) -> Result<SqhData> {
    if let Some(wstr) = &common.weight {
        let w = parse_i64_list(wstr, "weight")?;
        let (f_d, _, _) = poly::principal_part(f, &w)?;
        let cert = if common.assume_isolated {
            Isolated::Asserted
        } else {
            poly::is_isolated_singularity(&f_d, cfg)?
        };
        if !cert.is_ok() {
            bail!(
                "the principal part does not have an isolated singularity \
                 ({cert:?}); use --assume-isolated to override"
            );
        }
        return Ok(poly::sqh_data(f, &w, cert)?);
    }
    match poly::infer_weight(f, cfg)? {
        Some(sqh) => Ok(sqh),
        None => bail!(
            "no weight with an isolated principal part was found on the \
             Newton polyhedron; pass --weight"
        ),
    }
}

// ---------------------------------------------------------------------------
// Rendering helpers
// ---------------------------------------------------------------------------

/// `T^N*L^{−ν}` with unit exponents contracted, e.g. `T^6*L^-5`, `T*L^-1`.
fn monomial_tl(n: &Rat, nu: &Rat) -> String {
    let mut parts = Vec::new();
    if !n.is_zero() {
        parts.push(if n.is_one() {
            "T".to_string()
        } else {
            format!("T^{n}")
        });
    }
    if !nu.is_zero() {
        parts.push(format!("L^{}", -nu.clone()));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn factor_pretty(f: &FactorNu) -> String {
    format!("(1 - {})", monomial_tl(&f.n, &f.nu))
}

/// `Σ c·L^{a·s+b}` rendered as `2 + L^{-s-1}` and the like.
fn sg_pretty(sg: &SgSum) -> String {
    let mut out = String::new();
    for ((a, b), c) in &sg.terms {
        let power = if a.is_zero() && b.is_zero() {
            String::new()
        } else {
            let mut e = String::new();
            if !a.is_zero() {
                e.push_str(&if a.is_one() {
                    "s".to_string()
                } else if *a == -Rat::one() {
                    "-s".to_string()
                } else {
                    format!("{a}*s")
                });
            }
            if !b.is_zero() {
                if !e.is_empty() && !b.is_negative() {
                    e.push('+');
                }
                e.push_str(&format!("{b}"));
            }
            format!("L^({e})")
        };
        let body = if power.is_empty() {
            format!("{c}")
        } else if c.is_one() {
            power
        } else {
            format!("{c}*{power}")
        };
        if !out.is_empty() {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".to_string()
    } else {
        out
    }
}

fn rat_str(r: &Rat) -> String {
    format!("{r}")
}

fn qpoly_coeffs(p: &QPoly) -> Vec<String> {
    p.0.iter().map(rat_str).collect()
}

fn mot_zeta_json(z: &MotZeta) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = z
        .terms
        .iter()
        .map(|t| {
            let sg: Vec<serde_json::Value> = t
                .sg
                .terms
                .iter()
                .map(|((a, b), c)| json!([rat_str(a), rat_str(b), c.to_string()]))
                .collect();
            let factors: Vec<serde_json::Value> = t
                .factors
                .iter()
                .map(|f| json!([rat_str(&f.n), rat_str(&f.nu)]))
                .collect();
            json!({
                "label": t.label,
                "class": t.class.pretty(),
                "sg": sg,
                "factors": factors,
            })
        })
        .collect();
    json!({
        "n": z.n,
        "prefactor": z.prefactor_exponent,
        "terms": terms,
    })
}

fn fan_json(fan: &Fan) -> serde_json::Value {
    let cones: Vec<Vec<Vec<i64>>> = fan
        .maximal_cones
        .iter()
        .map(|c| c.rays.clone())
        .collect();
    json!({ "rays": fan.rays, "cones": cones })
}

fn ray_str(ray: &[i64]) -> String {
    let inner: Vec<String> = ray.iter().map(|c| c.to_string()).collect();
    format!("({})", inner.join(","))
}

fn print_fan(fan: &Fan, indent: &str) {
    let rays: Vec<String> = fan.rays.iter().map(|r| ray_str(r)).collect();
    println!("{indent}rays: {}", rays.join(", "));
    println!("{indent}maximal cones:");
    for cone in &fan.maximal_cones {
        let rays: Vec<String> = cone.rays.iter().map(|r| ray_str(r)).collect();
        println!("{indent}  {{{}}}", rays.join(", "));
    }
}

fn epoly_rat_json(e: &EPolyRat) -> serde_json::Value {
    match e.try_polynomial() {
        Some(p) => json!({ "pretty": p.pretty(), "polynomial": true }),
        None => json!({ "pretty": e.pretty(), "polynomial": false }),
    }
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

fn run_zeta(a: ZetaArgs) -> Result<()> {
    let cfg = build_config(&a.common.primes)?;
    let (f, _) = parse_poly(&a.poly, &a.common.vars)?;
    let sqh = sqh_from(&f, &a.common, &cfg)?;
    let z = if a.dim2_fastpath {
        zeta::motivic_zeta_dim2(&sqh)?
    } else {
        zeta::motivic_zeta(&sqh, a.local, &cfg)?
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&mot_zeta_json(&z))?);
        return Ok(());
    }
    let kind = if a.local { "local" } else { "global" };
    println!(
        "{} motivic zeta function, weight ({}), degree {}",
        kind,
        sqh.w
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(","),
        sqh.d
    );
    println!("Z(T) = L^{} * sum of:", z.prefactor_exponent);
    for t in &z.terms {
        let mut line = format!("  [{}]", t.class.pretty());
        let sg = sg_pretty(&t.sg);
        if sg != "1" {
            line.push_str(&format!(" * ({sg})"));
        }
        if !t.factors.is_empty() {
            let fs: Vec<String> = t.factors.iter().map(factor_pretty).collect();
            line.push_str(&format!(" / {}", fs.join("")));
        }
        line.push_str(&format!("    # {}", t.label));
        println!("{line}");
    }
    if z.terms.iter().any(|t| t.class.known().is_none()) {
        println!("canonical form: skipped (a stratum class is symbolic)");
        return Ok(());
    }
    let r = symb::normalize(&z, &cfg)?;
    let den: Vec<String> = r.den.iter().map(factor_pretty).collect();
    let num = r.num.pretty();
    let num = if r.num.terms.len() > 1 {
        format!("({num})")
    } else {
        num
    };
    println!(
        "canonical form: L^{} * {} / {}",
        r.prefactor_exponent,
        num,
        if den.is_empty() {
            "1".to_string()
        } else {
            den.join("")
        }
    );
    Ok(())
}

fn run_topzeta(a: TopzetaArgs, poles_only: bool) -> Result<()> {
    let cfg = build_config(&a.common.primes)?;
    let (f, _) = parse_poly(&a.poly, &a.common.vars)?;
    let sqh = sqh_from(&f, &a.common, &cfg)?;
    let z = zeta::motivic_zeta(&sqh, a.local, &cfg)?;
    if poles_only {
        let r = symb::normalize(&z, &cfg)?;
        let ps = symb::poles(&r);
        if a.json {
            let list: Vec<serde_json::Value> = ps
                .iter()
                .map(|(pole, mult)| json!({ "pole": rat_str(pole), "mult": mult }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&json!(list))?);
        } else if ps.is_empty() {
            println!("no poles");
        } else {
            let rendered: Vec<String> = ps
                .iter()
                .map(|(pole, mult)| format!("{pole} (mult {mult})"))
                .collect();
            println!("{}", rendered.join(", "));
        }
        return Ok(());
    }
    let tz = symb::specialize_topological(&z)?;
    if a.json {
        let den: Vec<Vec<String>> = tz.den.iter().map(qpoly_coeffs).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "num": qpoly_coeffs(&tz.num),
                "den": den,
                "pretty": tz.pretty(),
            }))?
        );
    } else {
        println!("{}", tz.pretty());
    }
    Ok(())
}

/// One resolution stratum as read from `--qres-file`: the E-polynomial of
/// the stratum as a polynomial in `q`, the local quotient group, and the
/// log-discrepancy exponents (integers or `"a/b"` strings).
#[derive(Deserialize)]
struct QresStratumJson {
    e_class: String,
    #[serde(default)]
    group: Option<String>,
    nu: Vec<serde_json::Value>,
}

fn parse_rat_value(v: &serde_json::Value, what: &str) -> Result<Rat> {
    match v {
        serde_json::Value::Number(n) => {
            let k = n
                .as_i64()
                .ok_or_else(|| anyhow!("non-integer number in {what}: {n}"))?;
            Ok(rat(k))
        }
        serde_json::Value::String(s) => {
            let r: Rat = s
                .trim()
                .parse()
                .map_err(|_| anyhow!("bad rational `{s}` in {what}"))?;
            Ok(r)
        }
        other => bail!("expected a number or \"a/b\" string in {what}, got {other}"),
    }
}

/// Parses an integer polynomial in the single variable `q` into an
/// E-polynomial.
fn parse_epoly(src: &str) -> Result<EPoly> {
    let p = MPoly::parse(src, &["q".to_string()])
        .with_context(|| format!("cannot parse e_class `{src}`"))?;
    let mut out = EPoly::zero();
    for (exps, c) in &p.terms {
        if !c.denom().is_one() {
            bail!("e_class `{src}` must have integer coefficients");
        }
        out = out.add(&EPoly::term(rat(exps[0] as i64), c.numer().clone()));
    }
    Ok(out)
}

fn read_qres_file(path: &PathBuf) -> Result<Vec<StringyStratum>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let raw: Vec<QresStratumJson> =
        serde_json::from_str(&text).context("strata file is not a JSON list of strata")?;
    let mut out = Vec::new();
    for (k, st) in raw.iter().enumerate() {
        let nu: Vec<Rat> = st
            .nu
            .iter()
            .map(|v| parse_rat_value(v, &format!("stratum {k} nu")))
            .collect::<Result<_>>()?;
        let group = match &st.group {
            Some(g) if g.trim() != "trivial" => DiagGroup::parse(g)?,
            _ => DiagGroup::trivial(nu.len()),
        };
        out.push(StringyStratum {
            e_class: parse_epoly(&st.e_class)?,
            group,
            nu,
        });
    }
    Ok(out)
}

fn run_stringy(a: StringyArgs) -> Result<()> {
    let cfg = build_config(&a.common.primes)?;
    let e = match a.path {
        StringyPath::QresFile => {
            let path = a
                .qres_file
                .as_ref()
                .ok_or_else(|| anyhow!("--path qres-file needs --qres-file <FILE>"))?;
            stringy::stringy_from_qres(&read_qres_file(path)?)?
        }
        StringyPath::Sqh | StringyPath::Nondeg => {
            let src = a
                .poly
                .as_ref()
                .ok_or_else(|| anyhow!("this path needs a polynomial argument"))?;
            let (f, _) = parse_poly(src, &a.common.vars)?;
            if a.path == StringyPath::Sqh {
                let sqh = sqh_from(&f, &a.common, &cfg)?;
                stringy::stringy_sqh(&sqh, &cfg)?
            } else {
                stringy::stringy_nondeg(&f, &cfg)?
            }
        }
    };
    if a.json {
        println!("{}", serde_json::to_string_pretty(&epoly_rat_json(&e))?);
    } else {
        match e.try_polynomial() {
            Some(p) => println!("E_st = {}", p.pretty()),
            None => println!("E_st = {}", e.pretty()),
        }
    }
    Ok(())
}

fn run_fan(a: FanArgs) -> Result<()> {
    let (f, _) = parse_poly(&a.poly, &a.vars)?;
    let nd = toric::newton_polyhedron(&f)?;
    let fan = toric::normal_fan(&nd);
    let sub = toric::simplicial_subdivide(&fan)?;
    let identical = sub.maximal_cones == fan.maximal_cones;
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "fan": fan_json(&fan),
                "subdivision": fan_json(&sub),
                "already_simplicial": identical,
            }))?
        );
        return Ok(());
    }
    print_fan(&fan, "");
    if identical {
        println!("simplicial subdivision: identical (already simplicial)");
    } else {
        println!("simplicial subdivision:");
        print_fan(&sub, "  ");
    }
    Ok(())
}

/// A stratum description for the `class` subcommand: a constructible subset
/// of affine n-space cut out by equations and non-vanishing conditions,
/// optionally quotiented by a diagonal cyclic group.
#[derive(Deserialize)]
struct StratumSpecJson {
    n: usize,
    #[serde(default)]
    vars: Option<Vec<String>>,
    #[serde(default)]
    equations: Vec<String>,
    #[serde(default)]
    inequations: Vec<String>,
    #[serde(default)]
    group: Option<String>,
    #[serde(default)]
    dim_bound: Option<usize>,
}

fn run_class(a: ClassArgs) -> Result<()> {
    let cfg = build_config(&a.primes)?;
    let text = std::fs::read_to_string(&a.spec)
        .with_context(|| format!("cannot read {}", a.spec.display()))?;
    let spec: StratumSpecJson =
        serde_json::from_str(&text).context("stratum file is not a valid JSON description")?;
    if spec.n == 0 {
        bail!("the ambient dimension n must be positive");
    }
    let names = match &spec.vars {
        Some(v) => {
            if v.len() != spec.n {
                bail!("vars lists {} names but n = {}", v.len(), spec.n);
            }
            v.clone()
        }
        None => poly::default_var_names(spec.n),
    };
    let parse_all = |srcs: &[String]| -> Result<Vec<MPoly>> {
        srcs.iter()
            .map(|s| MPoly::parse(s, &names).with_context(|| format!("cannot parse `{s}`")))
            .collect()
    };
    let region = Region {
        n: spec.n,
        equations: parse_all(&spec.equations)?,
        inequations: parse_all(&spec.inequations)?,
        nonzero_coords: vec![false; spec.n],
    };
    let group = match &spec.group {
        Some(g) if g.trim() != "trivial" => DiagGroup::parse(g)?,
        _ => DiagGroup::trivial(spec.n),
    };
    if group.n() != spec.n {
        bail!(
            "the group acts on {} coordinates but n = {}",
            group.n(),
            spec.n
        );
    }
    let dim_bound = spec.dim_bound.unwrap_or(spec.n);
    let class = count::quotient_class(&region, &group, dim_bound, &cfg, "stratum")?;
    let euler = count::euler_char(&class);
    if a.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "class": class.pretty(),
                "euler": euler.to_string(),
            }))?
        );
    } else {
        println!("class = {}", class.pretty());
        println!("euler characteristic = {euler}");
    }
    Ok(())
}

fn run_igusa(a: IgusaArgs) -> Result<()> {
    let cfg = build_config(&a.common.primes)?;
    let (f, _) = parse_poly(&a.poly, &a.common.vars)?;
    let rep = count::igusa_check(&f, a.p, a.max_m, &cfg)?;
    if a.json {
        let residuals: Vec<String> = rep.residuals.iter().map(rat_str).collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "p": rep.p,
                "m_max": rep.m_max,
                "counts": rep.counts,
                "residuals": residuals,
                "matched": rep.matched,
            }))?
        );
    } else {
        println!(
            "solution counts of {} modulo p^m, p = {}",
            a.poly.trim(),
            rep.p
        );
        println!("{:>3}  {:>12}  residual", "m", "N_m");
        for (i, c) in rep.counts.iter().enumerate() {
            println!("{:>3}  {:>12}  {}", i + 1, c, rep.residuals[i]);
        }
        println!(
            "specialized zeta function {} the counts",
            if rep.matched { "MATCHES" } else { "DOES NOT MATCH" }
        );
    }
    if !rep.matched {
        bail!("the p-adic solution counts disagree with the zeta function");
    }
    Ok(())
}

fn run_probe(a: ProbeArgs) -> Result<()> {
    let cfg = build_config(&a.common.primes)?;
    let wstr = a
        .common
        .weight
        .as_ref()
        .ok_or_else(|| anyhow!("probe needs --weight"))?;
    let w = parse_i64_list(wstr, "weight")?;
    let names = match &a.common.vars {
        Some(v) => parse_name_list(v)?,
        None => detect_vars(&a.polys.join("+"))?,
    };
    let fs: Vec<MPoly> = a
        .polys
        .iter()
        .map(|s| MPoly::parse(s, &names).with_context(|| format!("cannot parse `{s}`")))
        .collect::<Result<_>>()?;
    let rep = zeta::conjecture_probe(&fs, &w, &cfg)?;
    if a.json {
        let values: Vec<serde_json::Value> = rep
            .values
            .iter()
            .map(|(name, tz)| json!({ "poly": name, "topzeta": tz.pretty() }))
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "w": rep.w,
                "d": rep.d,
                "values": values,
                "all_equal": rep.all_equal,
            }))?
        );
    } else {
        println!(
            "local topological zeta functions for weight ({}), degree {}",
            rep.w
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(","),
            rep.d
        );
        for (name, tz) in &rep.values {
            println!("  {name}: {}", tz.pretty());
        }
        println!(
            "family shares one zeta function: {}",
            if rep.all_equal { "yes" } else { "NO" }
        );
    }
    Ok(())
}

fn run_fixtures(a: FixturesArgs) -> Result<()> {
    let cfg = build_config(&a.primes)?;
    let reports = fixtures::run_all(&cfg);
    let mut failed = 0usize;
    if a.json {
        let rows: Vec<serde_json::Value> = reports
            .iter()
            .map(|r| {
                let (status, detail) = match &r.outcome {
                    Ok(d) => ("pass", d.clone()),
                    Err(e) => {
                        failed += 1;
                        ("fail", e.to_string())
                    }
                };
                json!({ "id": r.id, "name": r.name, "status": status, "detail": detail })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!(rows))?);
    } else {
        for r in &reports {
            match &r.outcome {
                Ok(detail) => println!("{:>2}  {:<42} PASS  {detail}", r.id, r.name),
                Err(e) => {
                    failed += 1;
                    println!("{:>2}  {:<42} FAIL  {e}", r.id, r.name);
                }
            }
        }
        if failed == 0 {
            println!("all {} checks passed", reports.len());
        }
    }
    if failed > 0 {
        bail!("{failed} of {} checks failed", reports.len());
    }
    Ok(())
}
