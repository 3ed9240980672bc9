//! The `curves` subcommand: boundary-curve data over `t` in `[0, 1]`.
//!
//! For each abscissa `t = k/steps` the row holds the slice maximum and
//! minimum of the selected measure over the disk — the two curves that
//! bound the reachable region against the l1 norm (which is `t` itself).

use clap::Args;
use coh_core::qubit::{extremal_curves, CurveAlpha};
use serde::Serialize;

use crate::render::write_output;
use crate::{CliError, CmdResult, OutputFormat};

#[derive(Debug, Args)]
pub(crate) struct CurvesArgs {
    /// Curve order: 2, 1, or 0.5.
    #[arg(long)]
    pub alpha: f64,
    /// Number of abscissa steps; emits steps+1 rows at t = k/steps.
    #[arg(long)]
    pub steps: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Output path, with `-` meaning standard output.
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
struct CurveRow {
    t: f64,
    c_max: f64,
    c_min: f64,
    alpha: f64,
}

pub(crate) fn cmd_curves(args: &CurvesArgs) -> CmdResult {
    let alpha = if args.alpha == 2.0 {
        CurveAlpha::Two
    } else if args.alpha == 1.0 {
        CurveAlpha::One
    } else if args.alpha == 0.5 {
        CurveAlpha::Half
    } else {
        return Err(CliError::Input(format!(
            "closed boundary curves exist for alpha in {{2, 1, 0.5}}, got {}",
            args.alpha
        )));
    };
    if args.steps < 2 {
        return Err(CliError::Input(format!(
            "steps must be at least 2, got {}",
            args.steps
        )));
    }
    let rows = (0..=args.steps)
        .map(|k| {
            let t = k as f64 / args.steps as f64;
            let (c_max, c_min) = extremal_curves(t, alpha)?;
            Ok(CurveRow {
                t,
                c_max,
                c_min,
                alpha: alpha.as_f64(),
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let content = match args.format {
        OutputFormat::Csv => render_csv(&rows),
        OutputFormat::Json => {
            let mut json =
                serde_json::to_string_pretty(&rows).expect("plain numeric rows serialize");
            json.push('\n');
            json
        }
    };
    write_output(&args.out, &content)?;
    if args.out != "-" {
        println!("wrote {} rows to {}", rows.len(), args.out);
    }
    Ok(0)
}

/// CSV with shortest-round-trip number formatting, so parsing a file and
/// re-emitting it is byte-identical.
fn render_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("t,c_max,c_min,alpha\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.t, row.c_max, row.c_min, row.alpha
        ));
    }
    out
}
