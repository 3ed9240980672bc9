//! Coherence measures relative to a fixed computational basis.
//!
//! Four functionals are covered, all vanishing exactly on diagonal
//! (incoherent) states:
//!
//! - `C_l1(rho) = sum_{i != j} |rho_ij|`, ranging over `[0, d - 1]`;
//! - `C_l2(rho) = sum_{i != j} |rho_ij|^2`;
//! - `C_alpha(rho) = (r^alpha - 1) / (alpha - 1)` for `alpha` in `(0, 2]`,
//!   built from `r = sum_i <i|rho^alpha|i>^(1/alpha)`; this is the minimal
//!   Tsallis relative alpha-entropy from `rho` to the incoherent set, and
//!   the minimizer is available as [`nearest_incoherent`];
//! - `C_1(rho) = S(diag(rho)) - S(rho)`, the relative entropy of coherence
//!   (natural logarithm), which is the `alpha -> 1` limit of `C_alpha`.
//!
//! Requests for `C_alpha` with `alpha` within [`tol::ALPHA_ONE_BAND`] of 1
//! are routed to `C_1` rather than evaluating the singular quotient.

use std::fmt;

use num_complex::Complex64;

use crate::state::{matrix_power, DensityMatrix};
use crate::{eigh, tol, Error, Result};

/// Identifies one coherence measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureId {
    /// l1 norm of coherence.
    L1,
    /// Sum of squared off-diagonal moduli.
    L2,
    /// Tsallis relative alpha-entropy of coherence, `alpha` in `(0, 2]`,
    /// bounded away from 1. Build through [`MeasureId::tsallis`] to get the
    /// range checks.
    Tsallis(f64),
    /// Relative entropy of coherence (the `alpha -> 1` member).
    RelEntropy,
}

impl MeasureId {
    /// Checked constructor for the Tsallis family. Orders outside `(0, 2]`
    /// are rejected, as are orders within [`tol::ALPHA_ONE_BAND`] of 1 —
    /// use [`MeasureId::RelEntropy`] for the limit point instead.
    pub fn tsallis(alpha: f64) -> Result<Self> {
        validate_alpha(alpha)?;
        if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
            return Err(Error::AlphaOutOfRange {
                alpha,
                reason: "orders this close to 1 are served by the relative entropy of coherence",
            });
        }
        Ok(Self::Tsallis(alpha))
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::L1 => write!(f, "l1"),
            Self::L2 => write!(f, "l2"),
            Self::Tsallis(alpha) => write!(f, "tsallis({alpha})"),
            Self::RelEntropy => write!(f, "rel-entropy"),
        }
    }
}

/// A computed measure value tagged with the measure that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureValue {
    pub measure: MeasureId,
    pub value: f64,
}

pub(crate) fn validate_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 2.0 {
        return Err(Error::AlphaOutOfRange {
            alpha,
            reason: "the Tsallis family is defined here for alpha in (0, 2]",
        });
    }
    Ok(())
}

/// `x ln x` extended by continuity with `0 ln 0 := 0`.
pub(crate) fn x_ln_x(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

/// l1 norm of coherence: sum of off-diagonal moduli.
pub fn c_l1(rho: &DensityMatrix) -> MeasureValue {
    let d = rho.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += rho[(i, j)].norm();
            }
        }
    }
    MeasureValue {
        measure: MeasureId::L1,
        value: acc,
    }
}

/// Sum of squared off-diagonal moduli.
pub fn c_l2(rho: &DensityMatrix) -> MeasureValue {
    let d = rho.dim();
    let mut acc = 0.0;
    for i in 0..d {
        for j in 0..d {
            if i != j {
                acc += rho[(i, j)].norm_sqr();
            }
        }
    }
    MeasureValue {
        measure: MeasureId::L2,
        value: acc,
    }
}

/// The radius `r = sum_i <i|rho^alpha|i>^(1/alpha)` underlying `C_alpha`.
///
/// Diagonal entries of `rho^alpha` are clamped at zero from below before
/// the `1/alpha` root. Well defined on all of `(0, 2]` (at `alpha = 1` it
/// is identically 1).
pub fn tsallis_r(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    let powered = matrix_power(rho, alpha)?;
    let mut r = 0.0;
    for i in 0..rho.dim() {
        r += powered[(i, i)].re.max(0.0).powf(1.0 / alpha);
    }
    Ok(r)
}

/// Tsallis relative alpha-entropy of coherence,
/// `C_alpha = (r^alpha - 1) / (alpha - 1)`, clamped at zero from below.
///
/// Orders within [`tol::ALPHA_ONE_BAND`] of 1 are routed to
/// [`c_rel_entropy`]; the returned tag reflects the route taken.
pub fn c_alpha(rho: &DensityMatrix, alpha: f64) -> Result<MeasureValue> {
    validate_alpha(alpha)?;
    if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
        return c_rel_entropy(rho);
    }
    let r = tsallis_r(rho, alpha)?;
    Ok(MeasureValue {
        measure: MeasureId::Tsallis(alpha),
        value: ((r.powf(alpha) - 1.0) / (alpha - 1.0)).max(0.0),
    })
}

/// Relative entropy of coherence `S(diag(rho)) - S(rho)`, natural log,
/// clamped at zero from below.
pub fn c_rel_entropy(rho: &DensityMatrix) -> Result<MeasureValue> {
    let spectrum = eigh::eigh(rho.as_matrix())?;
    let s_rho: f64 = -spectrum.eigenvalues.iter().map(|&l| x_ln_x(l)).sum::<f64>();
    let s_diag: f64 = -rho.diagonal_probs().iter().map(|&p| x_ln_x(p)).sum::<f64>();
    Ok(MeasureValue {
        measure: MeasureId::RelEntropy,
        value: (s_diag - s_rho).max(0.0),
    })
}

/// `C_2` evaluated directly from matrix entries:
/// `(sum_j sqrt(sum_i |rho_ij|^2))^2 - 1`.
///
/// Algebraically identical to `c_alpha(rho, 2)` — the column norms are the
/// roots of the diagonal of `rho^2` — but computed without any
/// eigendecomposition, so it serves as an independent cross-check path.
pub fn c2_entrywise(rho: &DensityMatrix) -> MeasureValue {
    let d = rho.dim();
    let mut r = 0.0;
    for j in 0..d {
        let mut col = 0.0;
        for i in 0..d {
            col += rho[(i, j)].norm_sqr();
        }
        r += col.sqrt();
    }
    MeasureValue {
        measure: MeasureId::Tsallis(2.0),
        value: (r * r - 1.0).max(0.0),
    }
}

/// Evaluates the measure selected by `id`.
pub fn measure(rho: &DensityMatrix, id: MeasureId) -> Result<MeasureValue> {
    match id {
        MeasureId::L1 => Ok(c_l1(rho)),
        MeasureId::L2 => Ok(c_l2(rho)),
        MeasureId::Tsallis(alpha) => c_alpha(rho, alpha),
        MeasureId::RelEntropy => c_rel_entropy(rho),
    }
}

/// The incoherent state closest to `rho` in Tsallis relative alpha-entropy:
/// `delta = (1/r) sum_i <i|rho^alpha|i>^(1/alpha) |i><i|`.
///
/// Well defined on all of `(0, 2]`; at `alpha = 1` it degenerates to
/// `diag(rho)`, the known minimizer for the relative entropy of coherence.
pub fn nearest_incoherent(rho: &DensityMatrix, alpha: f64) -> Result<DensityMatrix> {
    validate_alpha(alpha)?;
    let powered = matrix_power(rho, alpha)?;
    let roots: Vec<f64> = (0..rho.dim())
        .map(|i| powered[(i, i)].re.max(0.0).powf(1.0 / alpha))
        .collect();
    let r: f64 = roots.iter().sum();
    if r <= 0.0 {
        // Unreachable for a unit-trace state; kept as a guard.
        return Err(Error::InvalidParameter(
            "state has no diagonal weight".into(),
        ));
    }
    DensityMatrix::from_diagonal(&roots.iter().map(|x| x / r).collect::<Vec<_>>())
}

/// Tsallis relative alpha-entropy
/// `D_alpha(rho || delta) = (tr(rho^alpha delta^(1-alpha)) - 1) / (alpha - 1)`
/// for `alpha` in `(0, 2]`, bounded away from 1.
///
/// For `alpha > 1` the exponent `1 - alpha` is negative, so `delta` must
/// carry support wherever `rho^alpha` has weight: a `delta`-eigenvalue at
/// or below [`tol::SUPPORT_CUTOFF`] whose eigenvector carries more than
/// that cutoff of `rho^alpha` weight is a [`Error::SupportMismatch`]. For
/// `alpha < 1` the limit `0^(1-alpha) = 0` applies and no support
/// condition is needed.
pub fn tsallis_divergence(rho: &DensityMatrix, delta: &DensityMatrix, alpha: f64) -> Result<f64> {
    validate_alpha(alpha)?;
    if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
        return Err(Error::AlphaOutOfRange {
            alpha,
            reason: "the divergence quotient is singular at alpha = 1",
        });
    }
    if rho.dim() != delta.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: delta.dim(),
        });
    }
    let powered = matrix_power(rho, alpha)?;
    let reference = eigh::eigh(delta.as_matrix())?;
    let n = rho.dim();
    let mut trace = 0.0;
    for j in 0..n {
        let v: Vec<Complex64> = (0..n).map(|i| reference.eigenvectors[(i, j)]).collect();
        let weight = powered.quadratic_form(&v).re.max(0.0);
        let lambda = reference.eigenvalues[j];
        if lambda <= tol::SUPPORT_CUTOFF {
            if weight > tol::SUPPORT_CUTOFF && alpha > 1.0 {
                return Err(Error::SupportMismatch { index: j, weight });
            }
            continue;
        }
        trace += weight * lambda.powf(1.0 - alpha);
    }
    Ok((trace - 1.0) / (alpha - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ComplexMatrix;
    use crate::random::{ginibre_random_density, mix_seed};
    use crate::state::PureState;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn state(rows: &[Vec<Complex64>]) -> DensityMatrix {
        DensityMatrix::new(ComplexMatrix::from_rows(rows).unwrap()).unwrap()
    }

    fn bloch(t: f64, z: f64) -> DensityMatrix {
        state(&[
            vec![c((1.0 + z) / 2.0, 0.0), c(t / 2.0, 0.0)],
            vec![c(t / 2.0, 0.0), c((1.0 - z) / 2.0, 0.0)],
        ])
    }

    fn real_pure(amps: &[f64]) -> DensityMatrix {
        PureState::new(amps.iter().map(|&a| c(a, 0.0)).collect())
            .unwrap()
            .projector()
    }

    #[test]
    fn l1_golden_values() {
        assert!((c_l1(&bloch(0.5, 0.0)).value - 0.5).abs() < 1e-15);
        // Pure qutrit with amplitudes sqrt(12/25), sqrt(12/25), sqrt(1/25).
        let a = (12.0f64 / 25.0).sqrt();
        let b = (1.0f64 / 25.0).sqrt();
        let psi1 = real_pure(&[a, a, b]);
        assert!((c_l1(&psi1).value - 1.514256258422041).abs() < 1e-12);
        let psi2 = real_pure(&[0.7f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]);
        assert!((c_l1(&psi2).value - 1.560324452042325).abs() < 1e-12);
    }

    #[test]
    fn l1_peaks_at_maximally_coherent_state() {
        for d in 2..=5 {
            let amp = 1.0 / (d as f64).sqrt();
            let max_coherent = real_pure(&vec![amp; d]);
            assert!((c_l1(&max_coherent).value - (d as f64 - 1.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn l2_is_squared_offdiagonal_mass() {
        assert!((c_l2(&bloch(0.5, 0.3)).value - 0.125).abs() < 1e-15);
        assert!((c_l2(&bloch(0.8, 0.0)).value - 0.32).abs() < 1e-15);
    }

    #[test]
    fn tsallis_r_golden_value() {
        let r = tsallis_r(&bloch(0.5, 0.5), 0.5).unwrap();
        assert!((r - 0.926776695296637).abs() < 1e-12, "r = {r}");
    }

    #[test]
    fn c_alpha_golden_values() {
        // (t, z, c2, c1, c_half) checked against an independent
        // high-precision evaluation of the same functionals.
        let table = [
            (0.5, 0.0, 0.25, 0.130812035941137, 0.06814834742186382),
            (
                0.4,
                (21.0f64).sqrt() / 5.0,
                0.4,
                0.173442691989075,
                0.08166739067491235,
            ),
            (0.5, 0.5, 0.3090169943749477, 0.1458396139191208, 0.074615160237687),
            (0.48, 0.58, 0.3100075958434325, 0.1399797239591833, 0.07072427002061876),
            (0.48, 0.64, 0.3326402247190516, 0.1463105134186459, 0.07334486739323309),
        ];
        for (t, z, want2, want1, want_half) in table {
            let rho = bloch(t, z);
            let got2 = c_alpha(&rho, 2.0).unwrap().value;
            let got1 = c_rel_entropy(&rho).unwrap().value;
            let goth = c_alpha(&rho, 0.5).unwrap().value;
            assert!((got2 - want2).abs() < 1e-12, "c2({t}, {z}) = {got2}");
            assert!((got1 - want1).abs() < 1e-12, "c1({t}, {z}) = {got1}");
            assert!((goth - want_half).abs() < 1e-12, "c_half({t}, {z}) = {goth}");
        }
    }

    #[test]
    fn qutrit_pair_golden_values() {
        let a = (12.0f64 / 25.0).sqrt();
        let psi1 = real_pure(&[a, a, 0.2]);
        let psi2 = real_pure(&[0.7f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]);
        // For pure states r(1/2) = sum p_i^2, so these come out rational.
        let h1 = c_alpha(&psi1, 0.5).unwrap().value;
        let h2 = c_alpha(&psi2, 0.5).unwrap().value;
        assert!((h1 - 0.64).abs() < 1e-12, "h1 = {h1}");
        assert!((h2 - 0.5303061543300931).abs() < 1e-12, "h2 = {h2}");
    }

    #[test]
    fn alpha_validation() {
        let rho = bloch(0.5, 0.0);
        for bad in [0.0, -0.5, 2.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(
                c_alpha(&rho, bad),
                Err(Error::AlphaOutOfRange { .. })
            ));
        }
        assert!(MeasureId::tsallis(2.0).is_ok());
        assert!(MeasureId::tsallis(1.0 + 1e-9).is_err());
        assert!(MeasureId::tsallis(1.0).is_err());
        assert!(MeasureId::tsallis(2.0000001).is_err());
    }

    #[test]
    fn near_one_orders_route_to_relative_entropy() {
        let rho = bloch(0.48, 0.58);
        let routed = c_alpha(&rho, 1.0 + 1e-9).unwrap();
        let direct = c_rel_entropy(&rho).unwrap();
        assert_eq!(routed.measure, MeasureId::RelEntropy);
        assert_eq!(routed.value, direct.value);
    }

    #[test]
    fn c_alpha_is_continuous_at_one() {
        let mut worst = 0.0f64;
        for k in 0..200 {
            let rho = ginibre_random_density(2, mix_seed(11, k)).unwrap();
            let limit = c_rel_entropy(&rho).unwrap().value;
            for side in [1.0 - 1e-4, 1.0 + 1e-4] {
                let v = c_alpha(&rho, side).unwrap().value;
                worst = worst.max((v - limit).abs());
            }
        }
        assert!(worst <= 1e-3, "worst gap {worst}");
    }

    #[test]
    fn entrywise_c2_agrees_with_spectral_path() {
        for k in 0..300 {
            let dim = 2 + (k % 4) as usize;
            let rho = ginibre_random_density(dim, mix_seed(5, k)).unwrap();
            let direct = c2_entrywise(&rho).value;
            let spectral = c_alpha(&rho, 2.0).unwrap().value;
            assert!(
                (direct - spectral).abs() < 1e-10,
                "dim {dim} seed-index {k}: {direct} vs {spectral}"
            );
        }
    }

    #[test]
    fn measures_vanish_on_incoherent_states() {
        let diag = DensityMatrix::from_diagonal(&[0.5, 0.3, 0.2]).unwrap();
        for id in [
            MeasureId::L1,
            MeasureId::L2,
            MeasureId::RelEntropy,
            MeasureId::Tsallis(0.5),
            MeasureId::Tsallis(2.0),
            MeasureId::Tsallis(0.25),
        ] {
            let v = measure(&diag, id).unwrap().value;
            assert!(v.abs() < 1e-12, "{id} on diagonal state gave {v}");
        }
    }

    #[test]
    fn measures_detect_any_appreciable_coherence() {
        for k in 0..100 {
            let rho = ginibre_random_density(3, mix_seed(21, k)).unwrap();
            let mut max_off = 0.0f64;
            for i in 0..3 {
                for j in 0..3 {
                    if i != j {
                        max_off = max_off.max(rho[(i, j)].norm());
                    }
                }
            }
            if max_off <= 1e-3 {
                continue; // essentially incoherent draw; nothing to assert
            }
            for id in [
                MeasureId::L1,
                MeasureId::L2,
                MeasureId::RelEntropy,
                MeasureId::Tsallis(0.5),
                MeasureId::Tsallis(2.0),
            ] {
                let v = measure(&rho, id).unwrap().value;
                assert!(v > 1e-6, "{id} missed coherence {max_off} (value {v})");
            }
        }
    }

    #[test]
    fn measures_are_invariant_under_diagonal_phases() {
        for k in 0..50 {
            let dim = 3;
            let rho = ginibre_random_density(dim, mix_seed(33, k)).unwrap();
            // Conjugate by diag(e^{i theta_j}) with fixed arbitrary phases.
            let phases: Vec<Complex64> = (0..dim)
                .map(|j| Complex64::from_polar(1.0, 0.7 + 1.3 * j as f64))
                .collect();
            let rotated = DensityMatrix::new(ComplexMatrix::from_fn(dim, |i, j| {
                phases[i] * rho[(i, j)] * phases[j].conj()
            }))
            .unwrap();
            for id in [
                MeasureId::L1,
                MeasureId::L2,
                MeasureId::RelEntropy,
                MeasureId::Tsallis(0.5),
                MeasureId::Tsallis(2.0),
            ] {
                let a = measure(&rho, id).unwrap().value;
                let b = measure(&rotated, id).unwrap().value;
                assert!((a - b).abs() < 1e-10, "{id}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn nearest_incoherent_is_diagonal_and_normalized() {
        let rho = bloch(0.5, 0.5);
        for alpha in [0.25, 0.5, 1.5, 2.0] {
            let delta = nearest_incoherent(&rho, alpha).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    if i != j {
                        assert_eq!(delta[(i, j)], Complex64::ZERO);
                    }
                }
            }
            let total: f64 = delta.diagonal_probs().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn nearest_incoherent_minimizes_divergence() {
        // Random search over incoherent states must not beat the closed
        // form minimizer.
        use rand::prelude::*;
        use rand_chacha::ChaCha8Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (dim, alpha) in [(2usize, 0.5), (2, 2.0), (3, 0.5), (3, 1.5)] {
            let rho = ginibre_random_density(dim, mix_seed(91, dim as u64 * 10 + alpha as u64))
                .unwrap();
            let delta = nearest_incoherent(&rho, alpha).unwrap();
            let best = tsallis_divergence(&rho, &delta, alpha).unwrap();
            for _ in 0..2000 {
                let raw: Vec<f64> = (0..dim).map(|_| -rng.random::<f64>().ln()).collect();
                let total: f64 = raw.iter().sum();
                let probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
                let sigma = DensityMatrix::from_diagonal(&probs).unwrap();
                let d = tsallis_divergence(&rho, &sigma, alpha).unwrap();
                assert!(
                    d >= best - 1e-9,
                    "dim {dim} alpha {alpha}: random incoherent state beat the minimizer"
                );
            }
        }
    }

    #[test]
    fn divergence_golden_value() {
        // D_2(|+><+| || I/2) = tr(rho^2 * 2I) - 1 = 2 - 1 = 1.
        let plus = real_pure(&[0.5f64.sqrt(), 0.5f64.sqrt()]);
        let mixed = DensityMatrix::maximally_mixed(2);
        let d = tsallis_divergence(&plus, &mixed, 2.0).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "d = {d}");
    }

    #[test]
    fn divergence_agrees_with_c_alpha_at_the_minimizer() {
        for k in 0..200 {
            let dim = 2 + (k % 3) as usize;
            let rho = ginibre_random_density(dim, mix_seed(55, k)).unwrap();
            for alpha in [0.25, 0.5, 1.5, 2.0] {
                let delta = nearest_incoherent(&rho, alpha).unwrap();
                let d = tsallis_divergence(&rho, &delta, alpha).unwrap();
                let ca = c_alpha(&rho, alpha).unwrap().value;
                assert!(
                    (d - ca).abs() < 1e-10,
                    "dim {dim} alpha {alpha}: divergence {d} vs measure {ca}"
                );
            }
        }
    }

    #[test]
    fn divergence_detects_support_mismatch() {
        let plus = real_pure(&[0.5f64.sqrt(), 0.5f64.sqrt()]);
        let pinned = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        match tsallis_divergence(&plus, &pinned, 2.0) {
            Err(Error::SupportMismatch { weight, .. }) => {
                assert!((weight - 0.5).abs() < 1e-10);
            }
            other => panic!("expected SupportMismatch, got {other:?}"),
        }
        // With alpha < 1 the same pair is fine: 0^(1 - alpha) = 0.
        let d = tsallis_divergence(&plus, &pinned, 0.5).unwrap();
        assert!(d.is_finite());
    }

    #[test]
    fn divergence_is_nonnegative_on_random_pairs() {
        for k in 0..100 {
            let rho = ginibre_random_density(2, mix_seed(13, k)).unwrap();
            let sigma = ginibre_random_density(2, mix_seed(14, k)).unwrap();
            for alpha in [0.5, 1.5, 2.0] {
                let d = tsallis_divergence(&rho, &sigma, alpha).unwrap();
                assert!(d >= -1e-10, "alpha {alpha}: negative divergence {d}");
            }
        }
    }

    #[test]
    fn dispatch_matches_direct_calls() {
        let rho = bloch(0.48, 0.58);
        assert_eq!(measure(&rho, MeasureId::L1).unwrap().value, c_l1(&rho).value);
        assert_eq!(measure(&rho, MeasureId::L2).unwrap().value, c_l2(&rho).value);
        assert_eq!(
            measure(&rho, MeasureId::Tsallis(0.5)).unwrap().value,
            c_alpha(&rho, 0.5).unwrap().value
        );
        assert_eq!(
            measure(&rho, MeasureId::RelEntropy).unwrap().value,
            c_rel_entropy(&rho).unwrap().value
        );
    }
}
