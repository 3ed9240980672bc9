//! The `monotonicity` subcommand: derivative-sign grids and channel checks.
//!
//! Seven kinds:
//!
//! - `prop1`: `p -> C_alpha(pure(p))` rises to `p = 1/2` and falls after;
//! - `prop2`: `z -> C_alpha(rho(t, z))` is non-decreasing on the slice;
//! - `appendix`: `z -> r_1/2(rho(t, z))` is non-increasing;
//! - `eq3`: the generalized selective-measurement inequality over random
//!   (state, incoherent channel) cases;
//! - `c2a` / `c2b` / `c3`: full-channel monotonicity, selective-measurement
//!   monotonicity, and convexity over random cases.
//!
//! Every kind exits 0 when all checks pass and 1 otherwise — except `c2b`,
//! which is exploratory for the Tsallis family: witnesses are logged for
//! replay, never treated as failures.

use clap::Args;
use coh_core::batch;
use coh_core::channels::{
    c2b_search, check_c2a, check_c3_convexity, check_generalized_monotonicity,
    random_incoherent_channel, C2bSearchReport, MonotonicityReport,
};
use coh_core::qubit::{monotonicity_check, GridMode, GridReport};
use coh_core::random::{ginibre_random_density, ginibre_random_density_with, mix_seed};
use coh_core::state::DensityMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::render::{fmt_sig, write_output};
use crate::{parse_measures, CliError, CmdResult, CHECK_FAILED};

#[derive(Debug, Args)]
pub(crate) struct MonotonicityArgs {
    /// Check to run: prop1, prop2, appendix, eq3, c2a, c2b, or c3.
    pub kind: String,
    /// Slice parameter t for prop2 and appendix.
    #[arg(long)]
    pub t: Option<f64>,
    /// Tsallis order for prop1, prop2, eq3 (default 2), and c2b
    /// (default 0.5).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Interior grid points for the derivative checks.
    #[arg(long, default_value_t = 99)]
    pub grid: usize,
    /// Hilbert-space dimension for the channel checks.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Number of Kraus branches for the channel checks.
    #[arg(long, default_value_t = 3)]
    pub branches: usize,
    /// Number of random cases for the channel checks.
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    /// RNG seed for the channel checks.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Ensemble size for the convexity check.
    #[arg(long, default_value_t = 3)]
    pub members: usize,
    /// Comma-separated measures for c2a and c3.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "l1,tsallis:2,rel,tsallis:0.5"
    )]
    pub measures: Vec<String>,
    /// Optional JSON log path for the c2b search.
    #[arg(long)]
    pub out: Option<String>,
}

pub(crate) fn cmd_monotonicity(args: &MonotonicityArgs) -> CmdResult {
    match args.kind.as_str() {
        "prop1" => grid_cmd(args, GridMode::PureP),
        "prop2" => grid_cmd(args, GridMode::QubitZ),
        "appendix" => grid_cmd(args, GridMode::RHalfZ),
        "eq3" => eq3_cmd(args),
        "c2a" => c2a_cmd(args),
        "c2b" => c2b_cmd(args),
        "c3" => c3_cmd(args),
        other => Err(CliError::Input(format!(
            "unknown check '{other}' (expected prop1, prop2, appendix, eq3, c2a, c2b, or c3)"
        ))),
    }
}

fn require(opt: Option<f64>, flag: &str, kind: &str) -> Result<f64, CliError> {
    opt.ok_or_else(|| CliError::Input(format!("{kind} needs --{flag}")))
}

fn require_cases(cases: usize) -> Result<(), CliError> {
    if cases == 0 {
        return Err(CliError::Input(
            "channel checks need at least one case".into(),
        ));
    }
    Ok(())
}

fn grid_cmd(args: &MonotonicityArgs, mode: GridMode) -> CmdResult {
    let (fixed, alpha, label) = match mode {
        GridMode::PureP => (0.5, require(args.alpha, "alpha", "prop1")?, "p"),
        GridMode::QubitZ => (
            require(args.t, "t", "prop2")?,
            require(args.alpha, "alpha", "prop2")?,
            "z",
        ),
        GridMode::RHalfZ => (require(args.t, "t", "appendix")?, 0.5, "z"),
    };
    let report = monotonicity_check(mode, fixed, alpha, args.grid)?;
    print_grid(&report, label);
    let descr = match mode {
        GridMode::PureP => format!("prop1 (alpha={alpha}, grid={})", args.grid),
        GridMode::QubitZ => format!("prop2 (t={fixed}, alpha={alpha}, grid={})", args.grid),
        GridMode::RHalfZ => format!("appendix (t={fixed}, grid={})", args.grid),
    };
    println!(
        "{descr}: {} points, {} failures",
        report.points.len(),
        report.failures
    );
    Ok(if report.pass { 0 } else { CHECK_FAILED })
}

fn print_grid(report: &GridReport, label: &str) {
    println!("{label:>14} {:>18}  status", "quotient");
    for point in &report.points {
        println!(
            "{:>14} {:>18}  {}",
            fmt_sig(point.x, 10),
            fmt_sig(point.quotient, 10),
            if point.pass { "ok" } else { "FAIL" },
        );
    }
}

/// Folds per-case reports into (failures, min slack), printing each
/// failing case as it is found.
fn fold_reports(
    outcomes: Vec<coh_core::Result<MonotonicityReport>>,
    label: &str,
) -> Result<(usize, f64), CliError> {
    let mut failures = 0usize;
    let mut min_slack = f64::INFINITY;
    for (i, outcome) in outcomes.into_iter().enumerate() {
        let report = outcome?;
        min_slack = min_slack.min(report.slack);
        if !report.pass {
            failures += 1;
            println!(
                "{label} case {i}: FAIL  lhs={} rhs={}",
                fmt_sig(report.lhs, 10),
                fmt_sig(report.rhs, 10),
            );
        }
    }
    Ok((failures, min_slack))
}

fn eq3_cmd(args: &MonotonicityArgs) -> CmdResult {
    require_cases(args.cases)?;
    let alpha = args.alpha.unwrap_or(2.0);
    let outcomes = batch::map_indexed(args.cases, |i| {
        let rho = ginibre_random_density(args.dim, mix_seed(args.seed, 2 * i as u64))?;
        let channel =
            random_incoherent_channel(args.dim, args.branches, mix_seed(args.seed, 2 * i as u64 + 1))?;
        check_generalized_monotonicity(&rho, &channel, alpha)
    });
    let (failures, min_slack) = fold_reports(outcomes, "eq3")?;
    println!(
        "eq3 (dim={}, branches={}, alpha={alpha}, cases={}, seed={}): \
         {failures} failures, min slack {}",
        args.dim,
        args.branches,
        args.cases,
        args.seed,
        fmt_sig(min_slack, 6),
    );
    Ok(if failures == 0 { 0 } else { CHECK_FAILED })
}

fn c2a_cmd(args: &MonotonicityArgs) -> CmdResult {
    require_cases(args.cases)?;
    let ids = parse_measures(&args.measures)?;
    let mut failures = 0usize;
    for &id in &ids {
        let outcomes = batch::map_indexed(args.cases, |i| {
            let rho = ginibre_random_density(args.dim, mix_seed(args.seed, 2 * i as u64))?;
            let channel = random_incoherent_channel(
                args.dim,
                args.branches,
                mix_seed(args.seed, 2 * i as u64 + 1),
            )?;
            check_c2a(&rho, &channel, id)
        });
        let label = id.to_string();
        let (measure_failures, min_slack) = fold_reports(outcomes, &label)?;
        println!(
            "c2a {label}: {} cases, {measure_failures} failures, min slack {}",
            args.cases,
            fmt_sig(min_slack, 6),
        );
        failures += measure_failures;
    }
    println!(
        "c2a (dim={}, branches={}, cases={}, seed={}): {failures} failures",
        args.dim, args.branches, args.cases, args.seed,
    );
    Ok(if failures == 0 { 0 } else { CHECK_FAILED })
}

fn c3_cmd(args: &MonotonicityArgs) -> CmdResult {
    require_cases(args.cases)?;
    if args.members < 2 {
        return Err(CliError::Input(format!(
            "convexity ensembles need at least 2 members, got {}",
            args.members
        )));
    }
    let ids = parse_measures(&args.measures)?;
    let mut failures = 0usize;
    for &id in &ids {
        let outcomes = batch::map_indexed(args.cases, |i| {
            let ensemble = sample_ensemble(args.dim, args.members, mix_seed(args.seed, i as u64))?;
            check_c3_convexity(&ensemble, id)
        });
        let label = id.to_string();
        let (measure_failures, min_slack) = fold_reports(outcomes, &label)?;
        println!(
            "c3 {label}: {} cases, {measure_failures} failures, min slack {}",
            args.cases,
            fmt_sig(min_slack, 6),
        );
        failures += measure_failures;
    }
    println!(
        "c3 (dim={}, members={}, cases={}, seed={}): {failures} failures",
        args.dim, args.members, args.cases, args.seed,
    );
    Ok(if failures == 0 { 0 } else { CHECK_FAILED })
}

/// Seeded ensemble for the convexity check: weights are normalized
/// uniforms, members are Ginibre random states from the same stream.
fn sample_ensemble(
    dim: usize,
    members: usize,
    seed: u64,
) -> coh_core::Result<Vec<(f64, DensityMatrix)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..members).map(|_| rng.random::<f64>() + 1e-6).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter()
        .map(|w| Ok((w / total, ginibre_random_density_with(dim, &mut rng)?)))
        .collect()
}

fn c2b_cmd(args: &MonotonicityArgs) -> CmdResult {
    let alpha = args.alpha.unwrap_or(0.5);
    let report = c2b_search(args.dim, args.branches, alpha, args.cases, args.seed)?;
    let mut min_slack = f64::INFINITY;
    for case in &report.cases {
        min_slack = min_slack.min(case.slack);
        if !case.pass {
            println!(
                "case {}: WITNESS  lhs={} rhs={} (state seed {}, channel seed {})",
                case.index,
                fmt_sig(case.lhs, 10),
                fmt_sig(case.rhs, 10),
                case.state_seed,
                case.channel_seed,
            );
        }
    }
    println!(
        "c2b (dim={}, branches={}, alpha={alpha}, cases={}, seed={}): \
         {} witnesses, min slack {}",
        args.dim,
        args.branches,
        args.cases,
        args.seed,
        report.witnesses,
        fmt_sig(min_slack, 6),
    );
    if let Some(path) = &args.out {
        let mut json =
            serde_json::to_string_pretty(&log_dto(&report)).expect("plain numeric log serializes");
        json.push('\n');
        write_output(path, &json)?;
        if path != "-" {
            println!("log written to {path}");
        }
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct C2bLog {
    seed: u64,
    dim: usize,
    branches: usize,
    alpha: f64,
    witnesses: usize,
    cases: Vec<C2bCaseDto>,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct C2bCaseDto {
    index: usize,
    state_seed: u64,
    channel_seed: u64,
    lhs: f64,
    rhs: f64,
    slack: f64,
    pass: bool,
}

fn log_dto(report: &C2bSearchReport) -> C2bLog {
    C2bLog {
        seed: report.seed,
        dim: report.dim,
        branches: report.branches,
        alpha: report.alpha,
        witnesses: report.witnesses,
        cases: report
            .cases
            .iter()
            .map(|case| C2bCaseDto {
                index: case.index,
                state_seed: case.state_seed,
                channel_seed: case.channel_seed,
                lhs: case.lhs,
                rhs: case.rhs,
                slack: case.slack,
                pass: case.pass,
            })
            .collect(),
    }
}
