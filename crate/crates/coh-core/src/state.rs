//! Density matrices, pure states, and fractional matrix powers.

use std::ops::Deref;

use num_complex::Complex64;

use crate::eigh::eigh;
use crate::matrix::ComplexMatrix;
use crate::{tol, Error, Result};

/// A validated density matrix: Hermitian within [`tol::HERMITICITY`], unit
/// trace within [`tol::TRACE`], and positive semidefinite down to
/// `-`[`tol::PSD`].
///
/// Dereferences to [`ComplexMatrix`] for read access; there is no mutable
/// access, so validity cannot be lost after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates `m` and wraps it. This is the only way to obtain a
    /// `DensityMatrix`, so every downstream routine may assume the
    /// invariants hold.
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        let residual = m.hermiticity_residual();
        if residual > tol::HERMITICITY {
            return Err(Error::NotHermitian {
                residual,
                tolerance: tol::HERMITICITY,
            });
        }
        let trace = m.trace().re;
        if (trace - 1.0).abs() > tol::TRACE {
            return Err(Error::TraceNotOne {
                trace,
                tolerance: tol::TRACE,
            });
        }
        let spectrum = eigh(&m)?;
        let min_eigenvalue = spectrum
            .eigenvalues
            .last()
            .copied()
            .ok_or_else(|| Error::InvalidParameter("empty matrix".into()))?;
        if min_eigenvalue < -tol::PSD {
            return Err(Error::NotPositive {
                min_eigenvalue,
                tolerance: tol::PSD,
            });
        }
        Ok(Self { m })
    }

    /// Diagonal (incoherent) state from a probability vector.
    pub fn from_diagonal(probs: &[f64]) -> Result<Self> {
        let m = ComplexMatrix::from_fn(probs.len(), |i, j| {
            if i == j {
                Complex64::new(probs[i], 0.0)
            } else {
                Complex64::ZERO
            }
        });
        Self::new(m)
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::from_diagonal(&vec![1.0 / dim as f64; dim])
            .expect("uniform diagonal is a valid state")
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    /// Diagonal entries as real probabilities, clamped at zero from below.
    pub fn diagonal_probs(&self) -> Vec<f64> {
        (0..self.m.dim()).map(|i| self.m[(i, i)].re.max(0.0)).collect()
    }
}

impl Deref for DensityMatrix {
    type Target = ComplexMatrix;

    fn deref(&self) -> &ComplexMatrix {
        &self.m
    }
}

/// A pure state as a normalized amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Validates normalization within [`tol::STATE_NORM`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidParameter("empty amplitude vector".into()));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > tol::STATE_NORM {
            return Err(Error::NotNormalized {
                deviation,
                tolerance: tol::STATE_NORM,
            });
        }
        Ok(Self { amplitudes })
    }

    /// Rescales the vector to unit norm, then validates. Fails on the zero
    /// vector.
    pub fn renormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 0.0 {
            return Err(Error::InvalidParameter(
                "cannot renormalize a zero amplitude vector".into(),
            ));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Rank-one projector `|psi><psi|` as a density matrix.
    pub fn projector(&self) -> DensityMatrix {
        let m = ComplexMatrix::from_fn(self.dim(), |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        DensityMatrix::new(m).expect("projector of a normalized vector is a valid state")
    }
}

/// Fractional power `rho^alpha = U diag(lambda^alpha) U'` for `alpha > 0`.
///
/// Zero eigenvalues map to zero (the `0^alpha := 0` convention). Eigenvalues
/// in `[-PSD, 0)` — allowed by validation — are clamped to zero. For
/// `alpha < 1` the clamp is two-sided: `x^alpha` has unbounded slope at the
/// origin, so an eigenvalue below the PSD tolerance is numerically
/// indistinguishable from zero yet would contribute as much as
/// `PSD^alpha` (about 0.01 at `alpha = 0.1`); treating the whole
/// `[-PSD, PSD]` band as zero keeps fractional powers of numerically pure
/// states exact instead of amplifying rounding noise.
///
/// `alpha = 1` returns the input unchanged.
pub fn matrix_power(rho: &DensityMatrix, alpha: f64) -> Result<ComplexMatrix> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            reason: "matrix powers require alpha > 0",
        });
    }
    if alpha == 1.0 {
        return Ok(rho.as_matrix().clone());
    }
    let spectrum = eigh(rho.as_matrix())?;
    let clamp_band = if alpha < 1.0 { tol::PSD } else { 0.0 };
    Ok(spectrum.apply_fn(|lambda| {
        if lambda <= clamp_band {
            0.0
        } else {
            lambda.powf(alpha)
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn from_rows(rows: &[Vec<Complex64>]) -> ComplexMatrix {
        ComplexMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn accepts_valid_states() {
        DensityMatrix::new(from_rows(&[
            vec![c(0.75, 0.0), c(0.25, 0.0)],
            vec![c(0.25, 0.0), c(0.25, 0.0)],
        ]))
        .unwrap();
        DensityMatrix::from_diagonal(&[0.2, 0.3, 0.5]).unwrap();
    }

    #[test]
    fn rejects_non_hermitian() {
        let err = DensityMatrix::new(from_rows(&[
            vec![c(0.5, 0.0), c(0.5, 0.1)],
            vec![c(0.5, 0.1), c(0.5, 0.0)],
        ]))
        .unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn rejects_bad_trace() {
        let err = DensityMatrix::new(from_rows(&[
            vec![c(0.8, 0.0), Complex64::ZERO],
            vec![Complex64::ZERO, c(0.3, 0.0)],
        ]))
        .unwrap_err();
        match err {
            Error::TraceNotOne { trace, .. } => assert!((trace - 1.1).abs() < 1e-12),
            other => panic!("expected TraceNotOne, got {other:?}"),
        }
    }

    #[test]
    fn rejects_indefinite_matrix() {
        // Unit trace and Hermitian, but min eigenvalue (1 - sqrt(1.25)) / 2.
        let err = DensityMatrix::new(from_rows(&[
            vec![c(0.75, 0.0), c(0.5, 0.0)],
            vec![c(0.5, 0.0), c(0.25, 0.0)],
        ]))
        .unwrap_err();
        match err {
            Error::NotPositive { min_eigenvalue, .. } => {
                assert!((min_eigenvalue - (1.0 - 1.25f64.sqrt()) / 2.0).abs() < 1e-9);
            }
            other => panic!("expected NotPositive, got {other:?}"),
        }
    }

    #[test]
    fn matrix_power_on_diagonal_state() {
        let rho = DensityMatrix::from_diagonal(&[0.25, 0.75]).unwrap();
        let half = matrix_power(&rho, 0.5).unwrap();
        assert!((half[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((half[(1, 1)].re - 0.75f64.sqrt()).abs() < 1e-12);
        assert!(half[(0, 1)].norm() < 1e-15);
    }

    #[test]
    fn matrix_power_identity_exponent_is_exact() {
        let rho = DensityMatrix::new(from_rows(&[
            vec![c(0.75, 0.0), c(0.25, 0.0)],
            vec![c(0.25, 0.0), c(0.25, 0.0)],
        ]))
        .unwrap();
        assert_eq!(&matrix_power(&rho, 1.0).unwrap(), rho.as_matrix());
    }

    #[test]
    fn fractional_power_of_projector_is_projector() {
        // Any power of |psi><psi| is itself; with alpha < 1 this exercises
        // the two-sided eigenvalue clamp (the near-zero eigenvalue of the
        // constructed projector must not leak through lambda^alpha).
        let psi = PureState::new(vec![c(0.3f64.sqrt(), 0.0), c(0.7f64.sqrt(), 0.0)]).unwrap();
        let rho = psi.projector();
        for alpha in [0.1, 0.25, 0.5, 1.5, 2.0] {
            let p = matrix_power(&rho, alpha).unwrap();
            assert!(
                p.max_abs_diff(rho.as_matrix()) < 1e-12,
                "alpha = {alpha}"
            );
        }
    }

    #[test]
    fn matrix_power_rejects_nonpositive_alpha() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            matrix_power(&rho, 0.0),
            Err(Error::AlphaOutOfRange { .. })
        ));
        assert!(matches!(
            matrix_power(&rho, -1.0),
            Err(Error::AlphaOutOfRange { .. })
        ));
    }

    #[test]
    fn pure_state_normalization_is_enforced() {
        let err = PureState::new(vec![c(1.0, 0.0), c(0.1, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
        let renorm = PureState::renormalized(vec![c(3.0, 0.0), c(4.0, 0.0)]).unwrap();
        assert!((renorm.amplitudes()[0].re - 0.6).abs() < 1e-15);
        assert!((renorm.amplitudes()[1].re - 0.8).abs() < 1e-15);
    }

    #[test]
    fn projector_is_a_valid_state() {
        let psi = PureState::new(vec![
            c(0.5, 0.5),
            c(0.0, -0.5f64.sqrt()),
        ])
        .unwrap();
        let rho = psi.projector();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
    }
}
