//! The `scan` subcommand: seeded violation scans with JSON reports.
//!
//! A scan orders `n` random state pairs under two measures and reports
//! every pair the measures rank in strictly opposite directions. Finding
//! violations is a successful scan, so the exit code is 0 either way; the
//! JSON report is byte-identical across reruns with the same flags.

use clap::Args;
use coh_core::ordering::{scan_pure_qudit_pairs, scan_qubit_pairs, QubitFamily, ViolationReport};
use coh_core::tol;
use serde::Serialize;

use crate::render::write_output;
use crate::{parse_measure, CliError, CmdResult, OutputFormat};

#[derive(Debug, Args)]
pub(crate) struct ScanArgs {
    /// State family: pure, mixed-disk, or pure-qudit:<dim>.
    #[arg(long)]
    pub family: String,
    /// First measure (l1, l2, rel, tsallis:<alpha>).
    #[arg(long)]
    pub measure_a: String,
    /// Second measure.
    #[arg(long)]
    pub measure_b: String,
    /// Number of random pairs to order.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// RNG seed.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Tie tolerance on measure differences.
    #[arg(long, default_value_t = tol::TIE_EPS)]
    pub eps: f64,
    /// Report format (reports are JSON only).
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Report path, with `-` meaning standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportDto {
    seed: u64,
    family: String,
    measure_a: String,
    measure_b: String,
    pairs_tested: usize,
    violations: Vec<ViolationDto>,
}

#[derive(Debug, Serialize)]
struct ViolationDto {
    params1: Vec<f64>,
    params2: Vec<f64>,
    /// Measure A on both states, then measure B on both states.
    values: [f64; 4],
    verdict: String,
}

fn to_dto(report: &ViolationReport) -> ReportDto {
    ReportDto {
        seed: report.seed,
        family: report.family.clone(),
        measure_a: report.measure_a.to_string(),
        measure_b: report.measure_b.to_string(),
        pairs_tested: report.pairs_tested,
        violations: report
            .violations
            .iter()
            .map(|v| ViolationDto {
                params1: v.params1.clone(),
                params2: v.params2.clone(),
                values: [
                    v.record.value_a1.value,
                    v.record.value_a2.value,
                    v.record.value_b1.value,
                    v.record.value_b2.value,
                ],
                verdict: v.record.verdict.to_string(),
            })
            .collect(),
    }
}

pub(crate) fn cmd_scan(args: &ScanArgs) -> CmdResult {
    if args.format != OutputFormat::Json {
        return Err(CliError::Input(
            "scan reports are emitted as json only".into(),
        ));
    }
    let measure_a = parse_measure(&args.measure_a)?;
    let measure_b = parse_measure(&args.measure_b)?;
    let report = match args.family.as_str() {
        "pure" => scan_qubit_pairs(
            QubitFamily::Pure,
            measure_a,
            measure_b,
            args.n,
            args.seed,
            args.eps,
        )?,
        "mixed-disk" => scan_qubit_pairs(
            QubitFamily::MixedDisk,
            measure_a,
            measure_b,
            args.n,
            args.seed,
            args.eps,
        )?,
        other => match other.strip_prefix("pure-qudit:") {
            Some(dim) => {
                let dim: usize = dim.parse().map_err(|_| {
                    CliError::Input(format!("bad qudit dimension in family '{other}'"))
                })?;
                scan_pure_qudit_pairs(dim, measure_a, measure_b, args.n, args.seed, args.eps)?
            }
            None => {
                return Err(CliError::Input(format!(
                    "unknown family '{other}' (expected pure, mixed-disk, or pure-qudit:<dim>)"
                )))
            }
        },
    };
    let mut json =
        serde_json::to_string_pretty(&to_dto(&report)).expect("plain numeric report serializes");
    json.push('\n');
    let summary = format!(
        "{}: {} vs {}: {} violations in {} pairs (seed {})",
        report.family,
        report.measure_a,
        report.measure_b,
        report.violations.len(),
        report.pairs_tested,
        report.seed
    );
    if args.out == "-" {
        write_output("-", &json)?;
        eprintln!("{summary}");
    } else {
        write_output(&args.out, &json)?;
        println!("{summary}");
        println!("report written to {}", args.out);
    }
    Ok(0)
}
