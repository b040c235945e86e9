//! Batch front end: reads a JSON problem configuration, runs the
//! requested computation, and prints a machine-readable JSON report.
//!
//! Exit codes: 0 success, 2 configuration error, 3 resource budget
//! exceeded, 4 verification failure.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::{One, Signed, Zero};
use sha2::{Digest, Sha256};

use momentcone::config::{ConfigMode, ProblemConfig};
use momentcone::embedding::EmbeddingData;
use momentcone::linalg::{qi, Q, QV};
use momentcone::momentcone::{report_json, InequalityGenerator, LatticeAnswer};
use momentcone::oracle;
use momentcone::polyhedra::InequalitySystem;
use momentcone::{Error, Result};

#[derive(Parser)]
#[command(name = "momentcone", version, about = "Exact moment-cone and moment-polytope inequalities for branching problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Path to the JSON problem configuration.
    #[arg(long)]
    config: String,
    /// Directory for cached results (content-addressed; a fingerprint
    /// mismatch forces recomputation).
    #[arg(long)]
    cache: Option<String>,
    /// Worker threads.  Output is byte-identical for every value.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Print the combinatorial data of the embedding: projected roots,
    /// the induced subsystem, the cubicles, and the lifted Weyl action.
    Cubicles {
        #[command(flatten)]
        common: Common,
    },
    /// Generate an inequality system.
    Inequalities {
        #[command(flatten)]
        common: Common,
        /// Remove rows implied by the others (with certificates).
        #[arg(long)]
        prune: bool,
        /// Use the ray-scalarized generator.
        #[arg(long)]
        scalar: bool,
        /// Orbit-polytope mode at this comma-separated dominant weight.
        #[arg(long)]
        polytope: Option<String>,
        /// Invariant-cone mode.
        #[arg(long)]
        invariant: bool,
        /// Write a 2-D SVG rendering of the solution set (two-variable
        /// systems only).
        #[arg(long)]
        emit_svg: Option<String>,
    },
    /// Check a weight (pair) against the generated system, the lattice
    /// condition, and the branching oracle.
    Check {
        #[command(flatten)]
        common: Common,
        /// Largest multiple probed by the oracle.
        #[arg(long)]
        max_n: Option<u64>,
    },
    /// Cross-validate the generated inequalities against the branching
    /// oracle on a full grid of integral dominant pairs.
    OracleVerify {
        #[command(flatten)]
        common: Common,
        /// Grid bound: all dominant weights with coordinates <= this.
        #[arg(long, default_value_t = 4)]
        grid: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) => 2,
                Error::Resource(_) => 3,
                Error::Verification(_) => 4,
            })
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cubicles { common } => cmd_cubicles(&common),
        Command::Inequalities { common, prune, scalar, polytope, invariant, emit_svg } => {
            cmd_inequalities(&common, prune, scalar, polytope.as_deref(), invariant, emit_svg.as_deref())
        }
        Command::Check { common, max_n } => cmd_check(&common, max_n),
        Command::OracleVerify { common, grid } => cmd_oracle_verify(&common, grid),
    }
}

fn load(common: &Common) -> Result<(ProblemConfig, EmbeddingData)> {
    if common.threads == 0 {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    let cfg = ProblemConfig::from_file(&common.config)?;
    let e = cfg.build_embedding()?;
    Ok((cfg, e))
}

fn emit(cfg: &ProblemConfig, value: &serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    println!("{text}");
    if let Some(path) = &cfg.output {
        std::fs::write(path, text.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write {path}: {e}")))?;
    }
    Ok(())
}

fn problem_summary(cfg: &ProblemConfig, e: &EmbeddingData, mode: &str) -> serde_json::Value {
    serde_json::json!({
        "source": cfg.source,
        "target": cfg.target,
        "source_rank": e.source.rank,
        "target_rank": e.target.rank,
        "mode": mode,
    })
}

fn cmd_cubicles(common: &Common) -> Result<()> {
    let (cfg, e) = load(common)?;
    emit(&cfg, &e.diagnostics_json()?)
}

/// Resolve the generator mode: explicit flags override the config file.
fn resolve_mode(
    cfg: &ProblemConfig,
    scalar: bool,
    polytope: Option<&str>,
    invariant: bool,
) -> Result<(String, Option<QV>)> {
    let flags = [scalar, polytope.is_some(), invariant]
        .iter()
        .filter(|&&b| b)
        .count();
    if flags > 1 {
        return Err(Error::Config("choose at most one of --scalar, --polytope, --invariant".into()));
    }
    if scalar {
        return Ok(("scalar".into(), None));
    }
    if invariant {
        return Ok(("invariant".into(), None));
    }
    if let Some(s) = polytope {
        let lam: QV = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<i64>()
                    .map(qi)
                    .map_err(|_| Error::Config(format!("bad weight coordinate `{p}`")))
            })
            .collect::<Result<_>>()?;
        return Ok(("polytope".into(), Some(lam)));
    }
    match cfg.mode {
        Some(ConfigMode::Scalar) => Ok(("scalar".into(), None)),
        Some(ConfigMode::Invariant) => Ok(("invariant".into(), None)),
        Some(ConfigMode::Polytope) => {
            let lam = cfg
                .lambda_q()?
                .ok_or_else(|| Error::Config("polytope mode needs `lambda`".into()))?;
            Ok(("polytope".into(), Some(lam)))
        }
        _ => Ok(("cone".into(), None)),
    }
}

fn generate(g: &InequalityGenerator, mode: &str, lam: Option<&QV>) -> Result<InequalitySystem> {
    match mode {
        "scalar" => g.scalar_inequalities(),
        "invariant" => g.invariant_inequalities(),
        "polytope" => g.polytope_inequalities(lam.expect("weight resolved with mode")),
        _ => g.cone_inequalities(),
    }
}

fn cmd_inequalities(
    common: &Common,
    prune: bool,
    scalar: bool,
    polytope: Option<&str>,
    invariant: bool,
    emit_svg: Option<&str>,
) -> Result<()> {
    let (cfg, e) = load(common)?;
    let (mode, lam) = resolve_mode(&cfg, scalar, polytope, invariant)?;
    let problem = problem_summary(&cfg, &e, &mode);
    let raw = std::fs::read_to_string(&common.config)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", common.config)))?;
    let lam_tag = lam
        .as_ref()
        .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .unwrap_or_default();
    let fingerprint = cache_fingerprint(&raw, &mode, &lam_tag, prune);
    if let Some(report) = cache_lookup(common.cache.as_deref(), &fingerprint) {
        emit(&cfg, &report)?;
        return Ok(());
    }
    let g = InequalityGenerator::new(&e)?;
    let sys = generate(&g, &mode, lam.as_ref())?;
    let (sys, removed) = if prune {
        let (kept, removed) = sys.prune_redundant();
        (kept, removed.len())
    } else {
        (sys, 0)
    };
    let mut report = report_json(problem, &sys, prune, &[]);
    report["fingerprint"] = serde_json::json!(fingerprint);
    report["rows_removed"] = serde_json::json!(removed);
    if let Some(path) = emit_svg {
        let svg = render_svg(&sys)?;
        std::fs::write(path, svg.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write {path}: {e}")))?;
    }
    cache_store(common.cache.as_deref(), &fingerprint, &report);
    emit(&cfg, &report)
}

fn cache_fingerprint(raw_config: &str, mode: &str, lam_tag: &str, prune: bool) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update(raw_config.as_bytes());
    h.update(mode.as_bytes());
    h.update(lam_tag.as_bytes());
    h.update([prune as u8]);
    format!("{:x}", h.finalize())
}

fn cache_lookup(dir: Option<&str>, fingerprint: &str) -> Option<serde_json::Value> {
    let dir = dir?;
    let path = std::path::Path::new(dir).join(format!("{fingerprint}.json"));
    let text = std::fs::read_to_string(path).ok()?;
    let value: serde_json::Value = serde_json::from_str(&text).ok()?;
    // Integrity: a cached report must carry the fingerprint it is filed
    // under; anything else is recomputed.
    (value.get("fingerprint")? == fingerprint).then_some(value)
}

fn cache_store(dir: Option<&str>, fingerprint: &str, report: &serde_json::Value) {
    let Some(dir) = dir else { return };
    if std::fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = std::path::Path::new(dir).join(format!("{fingerprint}.json"));
    if let Ok(mut f) = std::fs::File::create(path) {
        let _ = f.write_all(serde_json::to_string_pretty(report).expect("serializable").as_bytes());
    }
}

/// Render a bounded two-variable system as an SVG polygon with exact
/// integer coordinates (vertices are scaled by the common denominator).
fn render_svg(sys: &InequalitySystem) -> Result<String> {
    if sys.variables.len() != 2 {
        return Err(Error::Config("SVG rendering needs a two-variable system".into()));
    }
    let mut verts = sys.vertices()?;
    if verts.is_empty() {
        return Err(Error::Config("solution set has no vertices to draw".into()));
    }
    // Order vertices counterclockwise around their centroid with exact
    // comparisons (quadrant first, then cross product).
    let n = qi(verts.len() as i64);
    let cx: Q = verts.iter().fold(Q::zero(), |acc, v| acc + &v[0]) / &n;
    let cy: Q = verts.iter().fold(Q::zero(), |acc, v| acc + &v[1]) / &n;
    verts.sort_by(|a, b| {
        let (ax, ay) = (&a[0] - &cx, &a[1] - &cy);
        let (bx, by) = (&b[0] - &cx, &b[1] - &cy);
        quadrant(&ax, &ay).cmp(&quadrant(&bx, &by)).then_with(|| {
            // Positive cross product: `a` is counterclockwise before `b`.
            let cross = &ax * &by - &ay * &bx;
            Q::zero().cmp(&cross)
        })
    });
    let mut scale = num::BigInt::one();
    for v in &verts {
        scale = num::integer::lcm(scale.clone(), v[0].denom().clone());
        scale = num::integer::lcm(scale.clone(), v[1].denom().clone());
    }
    scale *= 40;
    let q_scale = Q::new(scale, num::BigInt::one());
    let pts: Vec<(num::BigInt, num::BigInt)> = verts
        .iter()
        .map(|v| ((&v[0] * &q_scale).to_integer(), (-&v[1] * &q_scale).to_integer()))
        .collect();
    let min_x = pts.iter().map(|p| p.0.clone()).min().unwrap();
    let min_y = pts.iter().map(|p| p.1.clone()).min().unwrap();
    let max_x = pts.iter().map(|p| p.0.clone()).max().unwrap();
    let max_y = pts.iter().map(|p| p.1.clone()).max().unwrap();
    let pad = num::BigInt::from(20);
    let view = format!(
        "{} {} {} {}",
        &min_x - &pad,
        &min_y - &pad,
        (&max_x - &min_x) + 2 * &pad,
        (&max_y - &min_y) + 2 * &pad,
    );
    let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x},{y}")).collect();
    Ok(format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\">\n\
         <polygon points=\"{}\" fill=\"#cfe2f3\" stroke=\"#1f4e79\" stroke-width=\"2\"/>\n\
         </svg>\n",
        path.join(" ")
    ))
}

/// Angular quadrant index of a direction, counterclockwise from the
/// positive x-axis.
fn quadrant(dx: &Q, dy: &Q) -> u8 {
    match (dx.is_negative(), dy.is_negative()) {
        (false, false) => 0,
        (true, false) => 1,
        (true, true) => 2,
        (false, true) => 3,
    }
}

fn integral(v: &[Q]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.denom().is_one() {
                x.numer()
                    .try_into()
                    .map_err(|_| Error::Config("weight coordinate too large".into()))
            } else {
                Err(Error::Config("oracle checks need integral weights".into()))
            }
        })
        .collect()
}

fn cmd_check(common: &Common, max_n: Option<u64>) -> Result<()> {
    let (cfg, e) = load(common)?;
    let (mode, lam_mode) = resolve_mode(&cfg, false, None, false)?;
    let g = InequalityGenerator::new(&e)?;
    let sys = generate(&g, &mode, lam_mode.as_ref())?;
    let lamt = cfg.lambda_tilde_q()?;
    let lam = cfg.lambda_q()?;
    // The point to test, in the system's variables.
    let point: QV = match mode.as_str() {
        "polytope" => lamt.clone().ok_or_else(|| Error::Config("check needs `lambda_tilde`".into()))?,
        "invariant" => lam.clone().ok_or_else(|| Error::Config("check needs `lambda`".into()))?,
        _ => {
            let mut p = lamt.clone().ok_or_else(|| Error::Config("check needs `lambda_tilde`".into()))?;
            p.extend(lam.clone().ok_or_else(|| Error::Config("check needs `lambda`".into()))?);
            p
        }
    };
    if point.len() != sys.variables.len() {
        return Err(Error::Config("weight ranks do not match the system".into()));
    }
    let inside = sys.contains(&point);
    let tight: Vec<serde_json::Value> = sys
        .rows
        .iter()
        .filter(|r| r.eval(&point).is_zero())
        .map(|r| r.provenance.to_json())
        .collect();
    let boundary =
        inside && sys.rows.iter().any(|r| !r.equality && r.eval(&point).is_zero());
    let mut report = serde_json::json!({
        "problem": problem_summary(&cfg, &e, &mode),
        "inside": inside,
        "boundary": boundary,
        "tight_rows": tight,
    });
    // Lattice-level necessary condition and oracle scan, for integral
    // cone-type checks with both weights present.
    if let (Some(lamt_q), Some(lam_q)) = (&lamt, &lam) {
        if mode != "invariant" && mode != "polytope" {
            if let (Ok(lamt_i), Ok(lam_i)) = (integral(lamt_q), integral(lam_q)) {
                let lattice = g.lattice_necessary(&lamt_i, &lam_i, cfg.bounds.monoid_budget())?;
                report["lattice"] = serde_json::json!(match lattice {
                    LatticeAnswer::Yes => "yes",
                    LatticeAnswer::No => "no",
                    LatticeAnswer::Unknown => "unknown",
                });
                let top = max_n.unwrap_or(cfg.bounds.scan_max());
                let mut scans = Vec::new();
                for n in 1..=top {
                    let nt: Vec<i64> = lamt_i.iter().map(|c| c * n as i64).collect();
                    let nl: Vec<i64> = lam_i.iter().map(|c| c * n as i64).collect();
                    let m = oracle::branching_multiplicity_with_budget(
                        &e,
                        &nt,
                        &nl,
                        cfg.bounds.oracle_budget() as usize,
                    )?;
                    scans.push(serde_json::json!({"n": n, "multiplicity": m}));
                }
                report["oracle"] = serde_json::json!(scans);
            }
        }
    }
    emit(&cfg, &report)
}

/// All dominant integral weights with semisimple coordinates in
/// `0..=bound`; central coordinates are scanned over the same range.
fn dominant_grid(rank: usize, bound: u64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        let mut next = Vec::new();
        for w in &out {
            for c in 0..=bound as i64 {
                let mut w2 = w.clone();
                w2.push(c);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}

fn cmd_oracle_verify(common: &Common, grid: u64) -> Result<()> {
    let (cfg, e) = load(common)?;
    let g = InequalityGenerator::new(&e)?;
    let cone = g.cone_inequalities()?;
    let mut checked = 0u64;
    let mut positive = 0u64;
    let mut violations = Vec::new();
    let mut boundary_misses = 0u64;
    // Soundness: every pair with positive branching multiplicity must
    // satisfy the pair-cone system (with the first weight dualized: the
    // cone pairs the first weight with the dual of the second).
    let w0 = e.target.longest_element();
    for lam in dominant_grid(e.target.rank, grid) {
        let ch = oracle::weight_multiplicities_with_budget(&e.target, &lam, cfg.bounds.oracle_budget() as usize)?;
        let restricted = oracle::restrict_character(&e, &ch)?;
        let decomp = oracle::decompose_character(&e.source, &restricted, cfg.bounds.oracle_budget() as usize)?;
        let lam_q: QV = lam.iter().map(|&c| qi(c)).collect();
        let dual_lam = momentcone::linalg::qv_neg(&w0.act_weight(&lam_q));
        for (lamt, mult) in &decomp {
            checked += 1;
            if *mult == 0 {
                continue;
            }
            positive += 1;
            let mut point: QV = lamt.iter().map(|&c| qi(c)).collect();
            point.extend(dual_lam.iter().cloned());
            if !cone.contains(&point) {
                violations.push(serde_json::json!({
                    "lambda_tilde": lamt,
                    "lambda": lam,
                    "multiplicity": mult,
                }));
            } else if cone.rows.iter().any(|r| !r.equality && r.eval(&point).is_zero()) {
                boundary_misses += 1;
            }
        }
    }
    let report = serde_json::json!({
        "problem": problem_summary(&cfg, &e, "cone"),
        "grid": grid,
        "pairs_checked": checked,
        "pairs_positive": positive,
        "boundary_pairs": boundary_misses,
        "violations": violations,
    });
    emit(&cfg, &report)?;
    if !violations.is_empty() {
        return Err(Error::Verification(format!(
            "{} branching-positive pair(s) violate the generated system",
            violations.len()
        )));
    }
    Ok(())
}
