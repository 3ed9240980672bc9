//! Line-oriented state files.
//!
//! The first significant line is a header token selecting the form:
//!
//! - `matrix`: each following line is one row of complex entries (`a+bi`);
//! - `tz`: two numbers `t z` for the disk state `rho(t, z)`;
//! - `bloch`: three numbers `x y z` for the Bloch-ball state;
//! - `pure`: the remaining tokens are complex amplitudes.
//!
//! Blank lines and lines starting with `#` are ignored. Pure amplitude
//! vectors may be off unit norm by up to [`NORM_TOL`] — they are rescaled
//! exactly before use — and the `renormalize` flag lifts that gate to any
//! nonzero norm. Matrix input must pass density-matrix validation as
//! written.

use coh_core::matrix::ComplexMatrix;
use coh_core::qubit::{rho_bloch, rho_tz, BlochVector, QubitParams};
use coh_core::state::{DensityMatrix, PureState};
use num_complex::Complex64;

use crate::CliError;

/// Pure amplitude vectors may be off unit norm by this much before they
/// are rejected (unless `renormalize` is set).
const NORM_TOL: f64 = 1e-9;

/// Parses a state file into a density matrix.
pub(crate) fn parse_state(text: &str, renormalize: bool) -> Result<DensityMatrix, CliError> {
    let lines: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .collect();
    let Some((&header, body)) = lines.split_first() else {
        return Err(CliError::Input(
            "state file has no content (expected a matrix/tz/bloch/pure header)".into(),
        ));
    };
    match header {
        "matrix" => parse_matrix(body),
        "tz" => {
            let v = parse_reals(body, 2, "tz")?;
            Ok(rho_tz(&QubitParams::new(v[0], v[1])?))
        }
        "bloch" => {
            let v = parse_reals(body, 3, "bloch")?;
            Ok(rho_bloch(&BlochVector::new(v[0], v[1], v[2])?))
        }
        "pure" => parse_pure(body, renormalize),
        other => Err(CliError::Input(format!(
            "unknown state form '{other}' (expected matrix, tz, bloch, or pure)"
        ))),
    }
}

fn parse_matrix(body: &[&str]) -> Result<DensityMatrix, CliError> {
    if body.is_empty() {
        return Err(CliError::Input(
            "matrix form needs rows after the header".into(),
        ));
    }
    let rows = body
        .iter()
        .map(|line| line.split_whitespace().map(parse_complex).collect())
        .collect::<Result<Vec<Vec<Complex64>>, _>>()?;
    Ok(DensityMatrix::new(ComplexMatrix::from_rows(&rows)?)?)
}

fn parse_reals(body: &[&str], n: usize, form: &str) -> Result<Vec<f64>, CliError> {
    let tokens: Vec<&str> = body.iter().flat_map(|line| line.split_whitespace()).collect();
    if tokens.len() != n {
        return Err(CliError::Input(format!(
            "{form} form needs exactly {n} numbers, got {}",
            tokens.len()
        )));
    }
    tokens
        .iter()
        .map(|tok| {
            tok.parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad number '{tok}' in {form} form")))
        })
        .collect()
}

fn parse_pure(body: &[&str], renormalize: bool) -> Result<DensityMatrix, CliError> {
    let amplitudes = body
        .iter()
        .flat_map(|line| line.split_whitespace())
        .map(parse_complex)
        .collect::<Result<Vec<Complex64>, _>>()?;
    if amplitudes.is_empty() {
        return Err(CliError::Input(
            "pure form needs amplitudes after the header".into(),
        ));
    }
    let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if !renormalize && (norm - 1.0).abs() > NORM_TOL {
        return Err(CliError::Input(format!(
            "pure amplitudes have norm {norm}, more than {NORM_TOL} from 1; \
             pass --renormalize to rescale"
        )));
    }
    Ok(PureState::renormalized(amplitudes)?.projector())
}

/// Parses one complex token: `a`, `bi`, `a+bi`, or `a-bi`, with `i` alone
/// meaning the unit imaginary. Exponent signs (as in `1e-3`) never split
/// the token.
fn parse_complex(token: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Input(format!("bad complex entry '{token}'"));
    let parse_part = |part: &str| -> Result<f64, CliError> {
        match part {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => part.parse().map_err(|_| bad()),
        }
    };
    match token.strip_suffix(['i', 'I']) {
        Some(body) => {
            let bytes = body.as_bytes();
            let split = (1..bytes.len()).rev().find(|&k| {
                matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E')
            });
            match split {
                Some(k) => {
                    let re: f64 = body[..k].parse().map_err(|_| bad())?;
                    Ok(Complex64::new(re, parse_part(&body[k..])?))
                }
                None => Ok(Complex64::new(0.0, parse_part(body)?)),
            }
        }
        None => Ok(Complex64::new(token.parse().map_err(|_| bad())?, 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn complex_tokens_parse() {
        assert_eq!(parse_complex("1").unwrap(), c(1.0, 0.0));
        assert_eq!(parse_complex("-0.5").unwrap(), c(-0.5, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), c(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), c(1.0, -2.0));
        assert_eq!(parse_complex("0.5+0i").unwrap(), c(0.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), c(0.0, 2.0));
        assert_eq!(parse_complex("-2i").unwrap(), c(0.0, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("1+i").unwrap(), c(1.0, 1.0));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), c(1e-3, 2e-4));
        assert_eq!(parse_complex("-1E2-3E-1i").unwrap(), c(-100.0, -0.3));
    }

    #[test]
    fn bad_complex_tokens_are_rejected() {
        for token in ["", "i2", "1+2", "1++2i", "abc", "1+2j"] {
            assert!(parse_complex(token).is_err(), "token {token:?}");
        }
    }

    #[test]
    fn tz_form_parses_with_comments() {
        let rho = parse_state("# the first example state\ntz\n0.5 0\n", false).unwrap();
        assert!((rho[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!((rho[(0, 1)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn matrix_form_round_trips_a_disk_state() {
        let text = "matrix\n0.75+0i 0.25+0i\n0.25-0i 0.25+0i\n";
        let rho = parse_state(text, false).unwrap();
        assert!((rho[(1, 1)].re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn bloch_form_matches_tz_on_the_disk() {
        let via_bloch = parse_state("bloch\n0.5 0 0.5\n", false).unwrap();
        let via_tz = parse_state("tz\n0.5 0.5\n", false).unwrap();
        assert!(via_bloch.as_matrix().max_abs_diff(via_tz.as_matrix()) < 1e-15);
    }

    #[test]
    fn pure_form_accepts_near_normalized_amplitudes() {
        // Norm off by ~3e-10: inside the gate, rescaled exactly.
        let a = std::f64::consts::FRAC_1_SQRT_2 + 2e-10;
        let rho = parse_state(&format!("pure\n{a} {a}\n"), false).unwrap();
        assert!((rho.as_matrix().trace().re - 1.0).abs() < 1e-14);
        assert!((rho[(0, 1)].re - 0.5).abs() < 1e-12);
    }

    #[test]
    fn pure_form_gates_far_from_normalized_without_flag() {
        let err = parse_state("pure\n1 1\n", false).unwrap_err();
        assert!(err.to_string().contains("renormalize"), "{err}");
        let rho = parse_state("pure\n1 1\n", true).unwrap();
        assert!((rho[(0, 1)].re - 0.5).abs() < 1e-15);
    }

    #[test]
    fn structural_errors_are_reported() {
        assert!(parse_state("", false).is_err());
        assert!(parse_state("# only comments\n", false).is_err());
        assert!(parse_state("psi\n1 0\n", false).is_err());
        assert!(parse_state("tz\n0.5\n", false).is_err());
        assert!(parse_state("tz\n0.9 0.9\n", false).is_err()); // off the disk
        assert!(parse_state("bloch\n1 1 1\n", false).is_err()); // off the ball
        assert!(parse_state("matrix\n1+0i 0+0i\n", false).is_err()); // ragged
        assert!(parse_state("matrix\n0.9+0i 0+0i\n0+0i 0.2+0i\n", false).is_err()); // trace
    }
}
