//! Batch front end for the surface catalog: fiber analysis, point counting
//! with a persistent cache, Frobenius characteristic polynomials, Picard
//! certification, congruent-pair generation, and table verification.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::{json, Value};

use zne_core::arith::rat_sqrt_exact;
use zne_core::field::{rat_frac, rat_i64, Rat, Rationals};
use zne_core::heights::{rank_lower_bound_q, rank_lower_bound_qbar, torsion_order};
use zne_core::kodaira::{analyze_fibers, QPlaces, SurfaceAnalysis};
use zne_core::moduli::{
    end_to_end_pair, end_to_end_pair_builtin, end_to_end_pair_from_section,
    tangent_fibration, CoverCase,
};
use zne_core::picard::certify_picard;
use zne_core::poly::UPoly;
use zne_core::surfaces::{catalog, surface, Surface, SurfaceClass};
use zne_core::zeta::{published_frobenius, reconstruct_frobenius, rho_and_delta};

const SCHEMA_VERSION: u32 = 1;
const BSGS_THRESHOLD: u64 = 1 << 12;

#[derive(Parser)]
#[command(name = "zne", about = "elliptic surfaces classifying N-congruent curve pairs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the surface catalog with its certified invariants
    Catalog {
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Analyze one surface and check it against its catalog row
    Analyze {
        /// surface id, e.g. "9,1" or "Z(9,1)"
        surface: String,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Count points and reconstruct the Frobenius characteristic polynomial
    Frobenius {
        surface: String,
        #[arg(short)]
        p: u64,
        /// largest field extension degree r to count over
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Certify the geometric Picard number
    Picard {
        surface: String,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Produce a verified pair of 2N-congruent elliptic curves
    Pair {
        /// doubled case: one of "6,5", "10,1", "10,3"
        case: String,
        /// base curve parameter; scanned if omitted
        #[arg(long)]
        t0: Option<String>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Re-verify published table data for the named scope
    VerifyTables {
        /// tables-12 | table5-small | table5-large | section4
        #[arg(long)]
        scope: String,
        #[arg(long, default_value_t = 4)]
        r_max: u32,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

fn parse_surface_id(id: &str) -> Result<(u32, u32)> {
    let s = id
        .trim()
        .trim_start_matches(['Z', 'z'])
        .trim_start_matches('(')
        .trim_end_matches(')');
    let parts: Vec<&str> = s.split([',', '_', 'x']).collect();
    if parts.len() != 2 {
        bail!("surface id must look like N,eps (got {id:?})");
    }
    Ok((parts[0].trim().parse()?, parts[1].trim().parse()?))
}

fn find_surface(id: &str) -> Result<Surface> {
    let (n, eps) = parse_surface_id(id)?;
    catalog()
        .into_iter()
        .find(|s| s.n == n && s.eps == eps)
        .ok_or_else(|| anyhow!("no surface Z({n},{eps}) in the catalog"))
}

fn init_workers(workers: usize) {
    let _ = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global();
}

fn emit(report: &Value, json_out: &Option<PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(report)?;
    println!("{text}");
    if let Some(path) = json_out {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(path, text + "\n")?;
    }
    Ok(())
}

fn upoly_json(f: &UPoly<Rat>) -> Value {
    let q = Rationals;
    let n = f.degree().max(0) as usize;
    Value::Array((0..=n).map(|i| Value::String(f.coeff(&q, i).to_string())).collect())
}

fn fibers_json(analysis: &SurfaceAnalysis<impl Clone + PartialEq + std::fmt::Debug>) -> Value {
    let mut rows: Vec<(String, u32)> = analysis
        .fibers
        .iter()
        .map(|fd| (fd.symbol.to_string(), fd.degree))
        .collect();
    rows.sort();
    Value::Array(
        rows.into_iter()
            .map(|(sym, d)| json!({"symbol": sym, "place_degree": d}))
            .collect(),
    )
}

fn surface_row_json(s: &Surface) -> Value {
    json!({
        "surface": s.label(),
        "class": match s.class { SurfaceClass::K3 => "K3", SurfaceClass::ProperlyElliptic => "properly elliptic" },
        "m": s.m,
        "torsion": s.torsion_order,
        "rank_q": s.rank_q,
        "rank_qbar": s.rank_qbar,
        "rho": s.rho,
    })
}

fn cmd_catalog(json_out: &Option<PathBuf>) -> Result<i32> {
    let rows: Vec<Value> = catalog().iter().map(surface_row_json).collect();
    let report = json!({"schema_version": SCHEMA_VERSION, "surfaces": rows});
    emit(&report, json_out)?;
    Ok(0)
}

/// Analysis report plus the list of mismatches against the catalog row.
fn analyze_report(s: &Surface) -> (Value, Vec<String>) {
    let analysis = analyze_fibers(&QPlaces, &s.model);
    let tors = torsion_order(s);
    let (rq, _) = rank_lower_bound_q(s);
    let (rqb, _) = rank_lower_bound_qbar(s);

    let mut mismatches = Vec::new();
    let mut got: Vec<(String, u32)> = analysis
        .fibers
        .iter()
        .map(|fd| (fd.symbol.to_string(), fd.degree))
        .collect();
    let mut expect: Vec<(String, u32)> = s
        .fibers_expected
        .iter()
        .map(|(sym, d)| (sym.to_string(), *d))
        .collect();
    got.sort();
    expect.sort();
    if got != expect {
        mismatches.push(format!("fibers: got {got:?}, table row {expect:?}"));
    }
    let expect_euler = 12 * s.m;
    if analysis.euler_total != expect_euler {
        mismatches.push(format!("euler: got {}, table row {expect_euler}", analysis.euler_total));
    }
    if tors.order != s.torsion_order {
        mismatches.push(format!("torsion: got {}, table row {}", tors.order, s.torsion_order));
    }
    if rq != s.rank_q {
        mismatches.push(format!("rank over Q: certified {rq}, table row {}", s.rank_q));
    }
    if rqb != s.rank_qbar {
        mismatches.push(format!("geometric rank: certified {rqb}, table row {}", s.rank_qbar));
    }

    let report = json!({
        "schema_version": SCHEMA_VERSION,
        "surface": s.label(),
        "class": match s.class { SurfaceClass::K3 => "K3", SurfaceClass::ProperlyElliptic => "properly elliptic" },
        "m": analysis.m,
        "euler_total": analysis.euler_total,
        "fibers": fibers_json(&analysis),
        "trivial_rank": analysis.trivial_rank,
        "torsion": tors.order,
        "torsion_certificate": tors.certificate,
        "rank_q_lower": rq,
        "rank_qbar_lower": rqb,
        "matches_table_row": mismatches.is_empty(),
        "mismatches": mismatches.clone(),
    });
    (report, mismatches)
}

fn cmd_analyze(id: &str, json_out: &Option<PathBuf>) -> Result<i32> {
    let s = find_surface(id)?;
    let (report, mismatches) = analyze_report(&s);
    emit(&report, json_out)?;
    for m in &mismatches {
        eprintln!("mismatch: {m}");
    }
    Ok(if mismatches.is_empty() { 0 } else { 1 })
}

fn cache_path(cache_dir: &Path, s: &Surface, p: u64) -> PathBuf {
    cache_dir.join(format!("Z{}_{}", s.n, s.eps)).join(format!("{p}.json"))
}

fn load_counts(path: &Path) -> Result<BTreeMap<u32, u64>> {
    if !path.exists() {
        return Ok(BTreeMap::new());
    }
    let text = std::fs::read_to_string(path)?;
    let v: Value = serde_json::from_str(&text)?;
    let mut out = BTreeMap::new();
    if let Some(map) = v["counts"].as_object() {
        for (k, n) in map {
            out.insert(k.parse()?, n.as_u64().context("bad cached count")?);
        }
    }
    Ok(out)
}

fn save_counts(path: &Path, counts: &BTreeMap<u32, u64>) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let map: serde_json::Map<String, Value> = counts
        .iter()
        .map(|(r, n)| (r.to_string(), json!(n)))
        .collect();
    let doc = json!({"schema_version": SCHEMA_VERSION, "counts": map});
    std::fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")?;
    Ok(())
}

struct FrobResult {
    poly: UPoly<Rat>,
    b2: u32,
    counts: BTreeMap<u32, u64>,
    computed_rs: Vec<u32>,
}

/// Count points (with cache) until the counts pin down the characteristic
/// polynomial of Frobenius on H^2.
fn frobenius_poly(
    s: &Surface,
    p: u64,
    r_max: u32,
    cache_dir: Option<&Path>,
) -> Result<FrobResult> {
    let path = cache_dir.map(|d| cache_path(d, s, p));
    let mut counts = match &path {
        Some(pth) => load_counts(pth)?,
        None => BTreeMap::new(),
    };
    let cached: Vec<u32> = counts.keys().copied().collect();
    let res = reconstruct_frobenius(s, p, r_max, BSGS_THRESHOLD, &mut counts);
    // persist whatever was counted even when reconstruction fails
    if let Some(pth) = &path {
        save_counts(pth, &counts)?;
    }
    let poly = res.map_err(|e| anyhow!("{e}; raise --r-max?"))?;
    let computed_rs = counts.keys().copied().filter(|r| !cached.contains(r)).collect();
    Ok(FrobResult { poly, b2: 12 * s.m - 2, counts, computed_rs })
}

fn frobenius_report(s: &Surface, p: u64, res: &FrobResult) -> Value {
    let (cyc, tail) = zne_core::cyclotomic::cyclotomic_split(&res.poly).expect("unit constant term");
    let (rho_p, delta) = rho_and_delta(&res.poly);
    json!({
        "schema_version": SCHEMA_VERSION,
        "surface": s.label(),
        "p": p,
        "b2": res.b2,
        "counts": res.counts.iter().map(|(r, n)| (r.to_string(), json!(n))).collect::<serde_json::Map<_, _>>(),
        "computed_rs": res.computed_rs,
        "f_p": upoly_json(&res.poly),
        "cyclotomic_part": upoly_json(&cyc),
        "transcendental_part": upoly_json(&tail),
        "rho_p_bound": rho_p,
        "delta_p": delta.to_string(),
    })
}

fn cmd_frobenius(
    id: &str,
    p: u64,
    r_max: u32,
    cache_dir: Option<&Path>,
    json_out: &Option<PathBuf>,
) -> Result<i32> {
    let s = find_surface(id)?;
    let res = frobenius_poly(&s, p, r_max, cache_dir)?;
    emit(&frobenius_report(&s, p, &res), json_out)?;
    Ok(0)
}

/// The auxiliary primes used to certify each surface whose Picard number is
/// below the Hodge bound.
fn picard_primes(s: &Surface) -> Vec<u64> {
    published_frobenius()
        .iter()
        .filter(|row| row.n == s.n && row.eps == s.eps)
        .map(|row| row.p)
        .collect()
}

fn cmd_picard(
    id: &str,
    r_max: u32,
    cache_dir: Option<&Path>,
    json_out: &Option<PathBuf>,
) -> Result<i32> {
    let s = find_surface(id)?;
    let mut frob = Vec::new();
    for p in picard_primes(&s) {
        let res = frobenius_poly(&s, p, r_max, cache_dir)?;
        frob.push((p, res.poly));
    }
    let cert = certify_picard(&s, &frob);
    let mut report = serde_json::to_value(&cert)?;
    report["schema_version"] = json!(SCHEMA_VERSION);
    report["surface"] = json!(s.label());
    emit(&report, json_out)?;
    if cert.lower != cert.upper {
        eprintln!("certification gap: {} <= rho <= {}", cert.lower, cert.upper);
        return Ok(1);
    }
    Ok(0)
}

fn parse_cover_case(id: &str) -> Result<CoverCase> {
    match parse_surface_id(id)? {
        (6, 5) => Ok(CoverCase::N6E5),
        (10, 1) => Ok(CoverCase::N10E1),
        (10, 3) => Ok(CoverCase::N10E3),
        (n, e) => bail!("the pair construction covers (6,5), (10,1), (10,3); got ({n},{e})"),
    }
}

fn parse_rat(s: &str) -> Result<Rat> {
    s.parse::<Rat>().map_err(|e| anyhow!("bad rational {s:?}: {e}"))
}

/// Search one fiber of the tangent pencil for a point with rational sheet.
fn pair_at(case: CoverCase, t0: &Rat, seed: u64) -> Result<zne_core::moduli::CongruencePair> {
    let q = Rationals;
    if let Ok(pair) = end_to_end_pair_from_section(case, t0) {
        return Ok(pair);
    }
    if let Ok(pair) = end_to_end_pair_builtin(case, t0) {
        return Ok(pair);
    }
    let tf = tangent_fibration(case, t0).map_err(|e| anyhow!("degenerate T0: {e}"))?;
    let mut sigmas: Vec<Rat> = (-24i64..=24)
        .flat_map(|n| (1i64..=6).map(move |d| rat_frac(n, d)))
        .collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    sigmas.shuffle(&mut rng);
    for sg in &sigmas {
        let val = tf.quartic.eval(&q, sg);
        let Some(y0) = rat_sqrt_exact(&val) else { continue };
        if y0.is_zero() {
            continue;
        }
        if let Ok(pair) = end_to_end_pair(case, t0, (sg, &y0)) {
            return Ok(pair);
        }
    }
    bail!("no rational point with rational sheet found on the fiber at T0 = {t0}")
}

fn cmd_pair(id: &str, t0: &Option<String>, seed: u64, json_out: &Option<PathBuf>) -> Result<i32> {
    let case = parse_cover_case(id)?;
    let t0s: Vec<Rat> = match t0 {
        Some(s) => vec![parse_rat(s)?],
        None => [2, -1, -2, 3, -4, 4, 5].iter().map(|&n| rat_i64(n)).collect(),
    };
    let mut last_err = None;
    for t in &t0s {
        match pair_at(case, t, seed) {
            Ok(pair) => {
                let mut report = pair.to_json();
                report["schema_version"] = json!(SCHEMA_VERSION);
                report["t0"] = json!(t.to_string());
                emit(&report, json_out)?;
                return Ok(0);
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or_else(|| anyhow!("no parameter values supplied")))
}

struct Checks {
    lines: Vec<(String, bool)>,
}

impl Checks {
    fn new() -> Self {
        Checks { lines: Vec::new() }
    }
    fn record(&mut self, name: &str, ok: bool) {
        println!("{}: {name}", if ok { "PASS" } else { "FAIL" });
        self.lines.push((name.to_string(), ok));
    }
    fn exit_code(&self) -> i32 {
        if self.lines.iter().all(|(_, ok)| *ok) {
            0
        } else {
            1
        }
    }
}

fn verify_tables_12(checks: &mut Checks) {
    for s in catalog() {
        let (_, mismatches) = analyze_report(&s);
        checks.record(&format!("table row {}", s.label()), mismatches.is_empty());
    }
}

fn verify_table5(checks: &mut Checks, heavy: bool, r_max: u32, cache_dir: Option<&Path>) {
    for row in published_frobenius().iter().filter(|r| r.heavy == heavy) {
        let s = surface(row.n, row.eps);
        let name = format!("f_{} for {}", row.p, s.label());
        match frobenius_poly(&s, row.p, r_max, cache_dir) {
            Ok(res) => checks.record(&name, res.poly == row.poly()),
            Err(e) => {
                eprintln!("{name}: {e}");
                checks.record(&name, false);
            }
        }
    }
}

fn verify_section4(checks: &mut Checks) {
    // square classes and rho bounds from the published polynomials
    for row in published_frobenius() {
        let (rho_p, delta) = rho_and_delta(&row.poly());
        let ok = rho_p == row.rho_p && delta == zne_core::SquareClass::of_i64(row.delta);
        checks.record(&format!("rho/delta at {} for Z({},{})", row.p, row.n, row.eps), ok);
    }
    // Picard certification for the whole catalog
    for s in catalog() {
        let frob: Vec<(u64, UPoly<Rat>)> = published_frobenius()
            .iter()
            .filter(|row| row.n == s.n && row.eps == s.eps)
            .map(|row| (row.p, row.poly()))
            .collect();
        let cert = certify_picard(&s, &frob);
        checks.record(&format!("picard number of {}", s.label()), cert.rho == s.rho);
    }
}

fn cmd_verify_tables(
    scope: &str,
    r_max: u32,
    cache_dir: Option<&Path>,
) -> Result<i32> {
    let mut checks = Checks::new();
    match scope {
        "tables-12" => verify_tables_12(&mut checks),
        "table5-small" => verify_table5(&mut checks, false, r_max, cache_dir),
        "table5-large" => verify_table5(&mut checks, true, r_max, cache_dir),
        "section4" => verify_section4(&mut checks),
        other => bail!("unknown scope {other:?}; use tables-12 | table5-small | table5-large | section4"),
    }
    Ok(checks.exit_code())
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let code = match &cli.cmd {
        Cmd::Catalog { json_out } => cmd_catalog(json_out)?,
        Cmd::Analyze { surface, json_out } => cmd_analyze(surface, json_out)?,
        Cmd::Frobenius { surface, p, r_max, workers, cache_dir, json_out } => {
            init_workers(*workers);
            cmd_frobenius(surface, *p, *r_max, cache_dir.as_deref(), json_out)?
        }
        Cmd::Picard { surface, r_max, workers, cache_dir, json_out } => {
            init_workers(*workers);
            cmd_picard(surface, *r_max, cache_dir.as_deref(), json_out)?
        }
        Cmd::Pair { case, t0, seed, json_out } => cmd_pair(case, t0, *seed, json_out)?,
        Cmd::VerifyTables { scope, r_max, workers, cache_dir } => {
            init_workers(*workers);
            cmd_verify_tables(scope, *r_max, cache_dir.as_deref())?
        }
    };
    std::process::exit(code);
}
