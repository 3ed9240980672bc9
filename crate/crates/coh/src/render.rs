//! Number formatting and output plumbing shared by the commands.

use std::fs;

use crate::CliError;

/// Formats `x` with `sig` significant digits in plain decimal notation.
pub(crate) fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (sig as i32 - 1 - magnitude).clamp(0, 30) as usize;
    format!("{x:.decimals$}")
}

/// Writes `content` to `path`, with `-` meaning standard output.
pub(crate) fn write_output(path: &str, content: &str) -> Result<(), CliError> {
    if path == "-" {
        print!("{content}");
        return Ok(());
    }
    fs::write(path, content).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}
