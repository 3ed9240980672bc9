//! The `reproduce` subcommand: replay the counterexample registry.

use clap::Args;
use coh_core::measures::measure;
use coh_core::ordering::{compare, counterexample_registry, Registry, RegistryCase, RegistryState};
use coh_core::tol;

use crate::render::fmt_sig;
use crate::{CliError, CmdResult, MISMATCH};

#[derive(Debug, Args)]
pub(crate) struct ReproduceArgs {
    /// Registry case name, or "all".
    #[arg(default_value = "all")]
    pub case: String,
}

pub(crate) fn cmd_reproduce(args: &ReproduceArgs) -> CmdResult {
    let registry = counterexample_registry();
    let (states, cases) = select(&registry, &args.case)?;

    let mut value_checks = 0usize;
    let mut value_mismatches = 0usize;
    println!(
        "{:<12} {:<13} {:>10} {:>15}  status",
        "state", "measure", "expected", "computed"
    );
    for state in &states {
        for &(id, expected, tolerance) in &state.expected {
            let computed = measure(&state.state, id)?.value;
            let ok = (computed - expected).abs() <= tolerance;
            value_checks += 1;
            if !ok {
                value_mismatches += 1;
            }
            println!(
                "{:<12} {:<13} {:>10} {:>15}  {}",
                state.name,
                id.to_string(),
                expected,
                fmt_sig(computed, 10),
                if ok { "ok" } else { "MISMATCH" },
            );
        }
    }

    println!();
    let mut verdict_mismatches = 0usize;
    println!(
        "{:<18} {:<28} {:>10} {:>10}  status",
        "case", "measures", "expected", "computed"
    );
    for case in &cases {
        let s1 = registry
            .state(case.state1)
            .expect("registry case members exist");
        let s2 = registry
            .state(case.state2)
            .expect("registry case members exist");
        let record = compare(
            &s1.state,
            &s2.state,
            case.measure_a,
            case.measure_b,
            tol::TIE_EPS,
        )?;
        let ok = record.verdict == case.expected;
        if !ok {
            verdict_mismatches += 1;
        }
        println!(
            "{:<18} {:<28} {:>10} {:>10}  {}",
            case.name,
            format!("{} vs {}", case.measure_a, case.measure_b),
            case.expected.to_string(),
            record.verdict.to_string(),
            if ok { "ok" } else { "MISMATCH" },
        );
    }

    println!();
    let verdict_checks = cases.len();
    if value_mismatches == 0 && verdict_mismatches == 0 {
        println!(
            "{value_checks} measure values matched, \
             {verdict_checks} violation verdicts confirmed"
        );
        Ok(0)
    } else {
        println!(
            "{value_mismatches} of {value_checks} measure values off, \
             {verdict_mismatches} of {verdict_checks} verdicts off"
        );
        Ok(MISMATCH)
    }
}

/// Resolves `which` to the states and cases in scope: everything for
/// `all`, or one case plus its two member states.
fn select<'r>(
    registry: &'r Registry,
    which: &str,
) -> Result<(Vec<&'r RegistryState>, Vec<&'r RegistryCase>), CliError> {
    if which == "all" {
        return Ok((
            registry.states.iter().collect(),
            registry.cases.iter().collect(),
        ));
    }
    let case = registry.case(which).ok_or_else(|| {
        let known: Vec<&str> = registry.cases.iter().map(|c| c.name).collect();
        CliError::Input(format!(
            "unknown case '{which}'; known cases: {} (or \"all\")",
            known.join(", ")
        ))
    })?;
    let states = [case.state1, case.state2]
        .iter()
        .map(|name| registry.state(name).expect("registry case members exist"))
        .collect();
    Ok((states, vec![case]))
}
