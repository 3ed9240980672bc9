//! The `measure` subcommand: evaluate measures on a state from a file.

use std::path::PathBuf;

use clap::Args;
use coh_core::measures::{measure, MeasureId};

use crate::render::fmt_sig;
use crate::{parse_measures, statefile, CliError, CmdResult};

#[derive(Debug, Args)]
pub(crate) struct MeasureArgs {
    /// Path to the state file.
    #[arg(long)]
    pub state: PathBuf,
    /// Comma-separated measures: l1, l2, rel, tsallis:<alpha>.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "l1,tsallis:2,rel,tsallis:0.5"
    )]
    pub measures: Vec<String>,
    /// Rescale pure amplitude vectors of any nonzero norm to unit norm.
    #[arg(long)]
    pub renormalize: bool,
}

pub(crate) fn cmd_measure(args: &MeasureArgs) -> CmdResult {
    let ids = parse_measures(&args.measures)?;
    let text = std::fs::read_to_string(&args.state).map_err(|err| {
        CliError::Input(format!("cannot read {}: {err}", args.state.display()))
    })?;
    let rho = statefile::parse_state(&text, args.renormalize)?;
    println!("{:<12} {:>6}  value", "measure", "alpha");
    for id in ids {
        let value = measure(&rho, id)?.value;
        let (name, alpha) = match id {
            MeasureId::L1 => ("l1", "-".to_string()),
            MeasureId::L2 => ("l2", "-".to_string()),
            MeasureId::RelEntropy => ("rel-entropy", "-".to_string()),
            MeasureId::Tsallis(a) => ("tsallis", format!("{a}")),
        };
        println!("{name:<12} {alpha:>6}  {}", fmt_sig(value, 10));
    }
    Ok(0)
}
