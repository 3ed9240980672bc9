//! Numerical tolerances shared across the crate.
//!
//! Validation thresholds, convergence targets, and check slacks live here so
//! that every module (and every test) agrees on one set of numbers.

/// Max allowed `|a_ij - conj(a_ji)|` for a matrix to count as Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Max allowed `|tr(rho) - 1|` for a density matrix.
pub const TRACE: f64 = 1e-10;

/// Eigenvalues of a density matrix may undershoot zero by at most this much.
/// Eigenvalues in `[-PSD, 0)` are treated as exact zeros by fractional
/// matrix powers.
pub const PSD: f64 = 1e-10;

/// Max allowed `| ||psi|| - 1 |` for a pure-state amplitude vector.
pub const STATE_NORM: f64 = 1e-10;

/// Off-diagonal Frobenius norm at which the Jacobi iteration stops.
pub const EIGH_OFF_DIAGONAL: f64 = 1e-14;

/// Hard cap on Jacobi sweeps before reporting non-convergence.
pub const EIGH_MAX_SWEEPS: usize = 100;

/// Tsallis orders within this distance of 1 are routed to the relative
/// entropy of coherence instead of evaluating the singular quotient.
pub const ALPHA_ONE_BAND: f64 = 1e-6;

/// Eigenvalues / probabilities at or below this are treated as outside the
/// support when negative powers would otherwise blow up.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// Branch probabilities at or below this are skipped in channel checks.
pub const BRANCH_CUTOFF: f64 = 1e-12;

/// Max allowed `|sum_i K_i' K_i - I|` entry for a Kraus stack.
pub const COMPLETENESS: f64 = 1e-10;

/// Kraus entries with modulus above this count as structurally nonzero for
/// the incoherence (one-entry-per-column) test.
pub const INCOHERENT_ENTRY: f64 = 1e-12;

/// Monotonicity / convexity inequalities may be violated by at most this
/// much before a check fails.
pub const CHECK_SLACK: f64 = 1e-8;

/// Default tie tolerance for ordering comparisons: measure differences with
/// magnitude at or below this are ambiguous, not ordered.
pub const TIE_EPS: f64 = 1e-9;

/// Central-difference step for the monotonicity grids.
pub const FD_STEP: f64 = 1e-6;

/// Sign slack for finite-difference quotients: a claimed-nonnegative slope
/// may dip to `-FD_SIGN_SLACK` before the grid point fails.
pub const FD_SIGN_SLACK: f64 = 1e-6;

/// Slop allowed on `t^2 + z^2 <= 1` (and the Bloch ball) so that boundary
/// states built from rounded coordinates still validate.
pub const DISK: f64 = 1e-12;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    // The assertions below pin relationships between named constants on
    // purpose: they document the ordering the numerics rely on and fail
    // loudly if a tolerance is ever retuned past its neighbours.
    #[allow(clippy::assertions_on_constants)]
    fn tolerances_are_positive_and_ordered() {
        for t in [
            HERMITICITY,
            TRACE,
            PSD,
            STATE_NORM,
            EIGH_OFF_DIAGONAL,
            ALPHA_ONE_BAND,
            SUPPORT_CUTOFF,
            BRANCH_CUTOFF,
            COMPLETENESS,
            INCOHERENT_ENTRY,
            CHECK_SLACK,
            TIE_EPS,
            FD_STEP,
            FD_SIGN_SLACK,
            DISK,
        ] {
            assert!(t > 0.0 && t < 1e-3);
        }
        // The Jacobi target must be far below every downstream tolerance
        // that leans on spectral accuracy.
        assert!(EIGH_OFF_DIAGONAL < PSD);
        assert!(EIGH_OFF_DIAGONAL < SUPPORT_CUTOFF);
        // Hermiticity is checked before the trace, so the first gate must
        // be at least as strict as the second.
        assert!(HERMITICITY <= TRACE);
    }
}
