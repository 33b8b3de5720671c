//! `chowfut`: exact Chow weights and higher Futaki invariants from the
//! command line.
//!
//! Exit status is 0 on success, 1 for parse and precondition errors, and 2
//! when two independent computations of the same quantity disagree.

mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use chowfut_core::blowup;
use chowfut_core::p2lab;
use chowfut_core::projbundle;
use chowfut_core::suites::{BlowupMatrix, ProjbundleMatrix, Tally};
use chowfut_core::Error as CoreError;

use config::{BlowupConfig, ProjbundleConfig};

const THREADS_VAR: &str = "CHOWFUT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "chowfut", version, about = "Exact Chow weights and higher Futaki invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariants of a projectivized split bundle over a curve.
    Projbundle {
        #[arg(long)]
        config: PathBuf,
        /// Compare the closed forms with the enumeration oracle for k in A..=B.
        #[arg(long, value_name = "A:B")]
        k_range: Option<KRange>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Invariants of a blowup at fixed points of a polystable base.
    Blowup {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Search for cscK, asymptotically Chow unstable polarizations on the
    /// plane blown up at four points, three of them aligned.
    SearchUnstable {
        /// Direction entries range over [-N, N].
        #[arg(long, value_name = "N")]
        grid: u32,
        /// Candidates are scaled by 1..=S.
        #[arg(long, value_name = "S")]
        scale: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Vanishing of F_1 and F_2 on the plane blown up at three points.
    #[command(name = "loci-3pt")]
    Loci3pt {
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_name = "A,B,C")]
        alphas: Vec<u64>,
    },
    /// Oracle-equivalence sweep over an enumeration matrix.
    OracleCheck {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Run a seeded random subset of the matrix instead of all of it.
        #[arg(long)]
        seed: Option<u64>,
        /// Size of the seeded subset.
        #[arg(long, default_value_t = 64, requires = "seed")]
        samples: usize,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Append labeled decimal approximations of the exact values.
    #[arg(long)]
    approx: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Projbundle,
    Blowup,
}

#[derive(Debug, Clone, Copy)]
struct KRange {
    start: u64,
    end: u64,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected A:B, got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start == 0 {
            return Err("k range must start at 1 or later".into());
        }
        if start > end {
            return Err(format!("empty k range {start}:{end}"));
        }
        Ok(KRange { start, end })
    }
}

/// A finished report, plus the description of a failed cross-check if the
/// report records one.
struct Outcome {
    report: Value,
    json: bool,
    mismatch: Option<String>,
}

impl Outcome {
    fn json(report: Value) -> Self {
        Outcome { report, json: true, mismatch: None }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("error")).init();

    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(outcome) => {
            let text = if outcome.json {
                report::to_json(&outcome.report) + "\n"
            } else {
                report::to_table(&outcome.report)
            };
            print!("{text}");
            match outcome.mismatch {
                Some(msg) => {
                    eprintln!("error: internal cross-check failed: {msg}");
                    ExitCode::from(2)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let mismatch = e
        .chain()
        .filter_map(|c| c.downcast_ref::<CoreError>())
        .any(CoreError::is_internal_mismatch);
    if mismatch {
        2
    } else {
        1
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .context("cannot configure the worker pool")
}

fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Projbundle { config, k_range, out } => {
            let cfg: ProjbundleConfig = config::load(&config)?;
            let spec = cfg.to_spec()?;
            let (report, mismatch) = projbundle_report(&spec, k_range)?;
            Ok(finish(report, &out, mismatch))
        }
        Command::Blowup { config, out } => {
            let cfg: BlowupConfig = config::load(&config)?;
            let spec = cfg.to_spec()?;
            Ok(finish(blowup_report(&spec)?, &out, None))
        }
        Command::SearchUnstable { grid, scale, out } => {
            let candidates = p2lab::search_unstable(grid, scale)?;
            let rows: Vec<Value> = candidates
                .iter()
                .map(|c| {
                    json!({
                        "m": c.m,
                        "alphas": c.alphas,
                        "psi1": report::rat(&c.psi1_value),
                        "psi2": report::rat(&c.psi2_value),
                        "ample": c.ample,
                        "verified": c.verified,
                    })
                })
                .collect();
            let report = json!({
                "grid_bound": grid,
                "scale_bound": scale,
                "count": rows.len(),
                "candidates": rows,
            });
            Ok(finish(report, &out, None))
        }
        Command::Loci3pt { m, alphas } => {
            let alphas: [u64; 3] = alphas
                .try_into()
                .map_err(|v: Vec<u64>| anyhow::anyhow!("--alphas needs exactly 3 values, got {}", v.len()))?;
            let flags = p2lab::three_point_loci(m, alphas)?;
            Ok(Outcome::json(json!({ "F1_zero": flags.f1_zero, "F2_zero": flags.f2_zero })))
        }
        Command::OracleCheck { suite, seed, samples } => oracle_check(suite, seed, samples),
    }
}

fn finish(mut report: Value, out: &OutputArgs, mismatch: Option<String>) -> Outcome {
    if out.approx {
        report::attach_approx(&mut report);
    }
    Outcome { report, json: out.json, mismatch }
}

fn projbundle_report(
    spec: &projbundle::CurveBundleSpec,
    k_range: Option<KRange>,
) -> Result<(Value, Option<String>)> {
    let chi = projbundle::euler_char_poly(spec);
    let w = projbundle::weight_poly(spec);
    let futaki = projbundle::higher_futaki(spec)?;
    let chow = projbundle::chow_weight(spec)?;
    let b_top = projbundle::weight_data(spec)?.b_top().clone();
    let verdict = projbundle::slope_classify(spec);

    let mut obj = Map::new();
    obj.insert("n".into(), json!(spec.n()));
    obj.insert("genus".into(), json!(spec.genus()));
    obj.insert("r".into(), json!(spec.r()));
    obj.insert("degree".into(), json!(spec.degree()));
    obj.insert("slope".into(), report::rat(&spec.slope()));
    obj.insert("twisted_slope".into(), report::rat(&spec.twisted_slope()));
    obj.insert("twisted_det_chi".into(), report::rat(&spec.twisted_det_chi()));
    obj.insert("slope_imbalance".into(), report::rat(&spec.slope_imbalance()));
    obj.insert("classification".into(), json!(verdict.classification.as_str()));
    obj.insert("slope_excess".into(), report::rats(&verdict.per_summand));
    obj.insert("chi".into(), report::poly(&chi));
    obj.insert("w".into(), report::poly(&w));
    obj.insert("b_top".into(), report::rat(&b_top));
    obj.insert("chow_weight".into(), report::ratfn(&chow));
    report::insert_futaki(&mut obj, &futaki);
    let warnings: Vec<String> = spec.ampleness_warning().into_iter().collect();
    obj.insert("warnings".into(), json!(warnings));

    let mut mismatch = None;
    if let Some(range) = k_range {
        let mut rows = Vec::new();
        for k in range.start..=range.end {
            let o = projbundle::oracle(spec, k)?;
            let matches = projbundle::matches_oracle(spec, &chi, &w, k)?;
            if !matches && mismatch.is_none() {
                mismatch = Some(format!("closed forms disagree with the oracle at k = {k}"));
            }
            let kk = chowfut_core::Rat::from_integer(k.into());
            rows.push(json!({
                "k": k,
                "chi": report::rat(&chi.eval(&kk)),
                "w": report::rat(&w.eval(&kk)),
                "oracle_dim": o.dim.to_string(),
                "oracle_weight": o.weight.to_string(),
                "match": matches,
            }));
        }
        obj.insert("k_values".into(), Value::Array(rows));
    }
    Ok((Value::Object(obj), mismatch))
}

fn blowup_report(spec: &blowup::BlowupSpec) -> Result<Value> {
    let futaki = blowup::futaki_blowup(spec)?;
    let chow = blowup::chow_blowup(spec)?;
    let adiabatic = blowup::adiabatic(spec)?;
    let b_top = blowup::weight_data(spec)?.b_top().clone();

    let mut obj = Map::new();
    obj.insert("n".into(), json!(spec.n()));
    obj.insert("m".into(), json!(spec.m()));
    obj.insert("degree".into(), report::rat(&spec.degree()));
    obj.insert("D".into(), report::rat(&spec.d()));
    obj.insert("chi".into(), report::poly(&blowup::chi_tilde(spec)));
    obj.insert("w".into(), report::poly(&blowup::w_tilde(spec)));
    obj.insert("b_top".into(), report::rat(&b_top));
    obj.insert("chow_weight".into(), report::ratfn(&chow));
    report::insert_futaki(&mut obj, &futaki);
    obj.insert(
        "adiabatic".into(),
        json!({ "leading": report::rat(&adiabatic.leading), "w_cw": report::rat(&adiabatic.w_cw) }),
    );
    Ok(Value::Object(obj))
}

fn oracle_check(suite: Suite, seed: Option<u64>, samples: usize) -> Result<Outcome> {
    let sample = |len: usize, seed: u64| -> Vec<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = index::sample(&mut rng, len, samples.min(len)).into_vec();
        picked.sort_unstable();
        picked
    };
    let (name, tally, total) = match suite {
        Suite::Projbundle => {
            let matrix = ProjbundleMatrix::default();
            let mut sets = matrix.summand_sets();
            let total = sets.len();
            if let Some(s) = seed {
                let picked = sample(total, s);
                sets = picked.into_iter().map(|i| sets[i].clone()).collect();
            }
            ("projbundle", matrix.run(&sets), total)
        }
        Suite::Blowup => {
            let matrix = BlowupMatrix::default();
            let mut cases = matrix.cases();
            let total = cases.len();
            if let Some(s) = seed {
                let picked = sample(total, s);
                cases = picked.into_iter().map(|i| cases[i].clone()).collect();
            }
            ("blowup", matrix.run(&cases), total)
        }
    };
    if tally.cases == 0 {
        bail!("the {name} matrix is empty");
    }
    let report = tally_report(name, seed, total, &tally);
    let mismatch = (!tally.passed()).then(|| format!("{} failing checks", tally.failures.len()));
    Ok(Outcome { report, json: true, mismatch })
}

// `sample_space` counts what a seeded run draws from: summand lists for the
// bundle matrix (each expands to several specs), plane cases for blowups.
fn tally_report(name: &str, seed: Option<u64>, sample_space: usize, t: &Tally) -> Value {
    let mut failures: Vec<Value> = t
        .failures
        .iter()
        .map(|(c, m)| json!({ "check": format!("{c:?}"), "message": m }))
        .collect();
    failures.sort_by_key(|v| v.to_string());
    json!({
        "suite": name,
        "seed": seed,
        "sample_space": sample_space,
        "cases": t.cases,
        "oracle_checks": t.oracle_checks,
        "pipeline_checks": t.pipeline_checks,
        "degenerate": t.degenerate,
        "failures": failures,
        "passed": t.passed(),
    })
}
