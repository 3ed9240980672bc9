//! Incoherent quantum channels and monotonicity checks.
//!
//! An incoherent channel is a completely positive trace-preserving map
//! whose Kraus operators each carry at most one nonzero entry per column,
//! so diagonal (incoherent) states stay diagonal. A proper coherence
//! measure must not increase under such maps, in several graded senses:
//!
//! - **C2a** — under the full channel: `C(Phi(rho)) <= C(rho)`;
//! - **C2b** — on average under selective measurement:
//!   `sum_i p_i C(rho_i) <= C(rho)` with `p_i = tr(K_i rho K_i^dag)` and
//!   `rho_i = K_i rho K_i^dag / p_i`;
//! - **C3** — convexity: `C(sum_i w_i rho_i) <= sum_i w_i C(rho_i)`;
//! - the **generalized** Tsallis inequality
//!   `sum_i p_i^alpha q_i^(1-alpha) C_alpha(rho_i) <= C_alpha(rho)` with
//!   `q_i = tr(K_i delta_rho K_i^dag)` taken against the nearest
//!   incoherent state `delta_rho`.
//!
//! Each check returns a [`MonotonicityReport`] with both sides and the
//! slack, so batteries can assert and loggers can record. [`c2b_search`]
//! runs a seeded exploratory hunt for C2b violations under the Tsallis
//! family; every case carries its construction seeds and replay is exact.

use rand::prelude::*;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;

use num_complex::Complex64;

use crate::batch;
use crate::matrix::ComplexMatrix;
use crate::measures::{self, c_alpha, measure, nearest_incoherent, MeasureId};
use crate::random::{complex_normal, ginibre_random_density, mix_seed};
use crate::state::DensityMatrix;
use crate::{tol, Error, Result};

/// A validated incoherent channel in Kraus form.
#[derive(Debug, Clone, PartialEq)]
pub struct IncoherentChannel {
    kraus: Vec<ComplexMatrix>,
}

impl IncoherentChannel {
    /// Validates completeness (`sum K_i^dag K_i = I` within
    /// [`tol::COMPLETENESS`]) and incoherence (at most one entry per
    /// column of each `K_i` above [`tol::INCOHERENT_ENTRY`]).
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = match kraus.first() {
            Some(k) => k.dim(),
            None => {
                return Err(Error::InvalidParameter(
                    "a channel needs at least one Kraus operator".into(),
                ))
            }
        };
        for (index, k) in kraus.iter().enumerate() {
            if k.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: k.dim(),
                });
            }
            for column in 0..dim {
                let count = (0..dim)
                    .filter(|&row| k[(row, column)].norm() > tol::INCOHERENT_ENTRY)
                    .count();
                if count > 1 {
                    return Err(Error::NotIncoherent {
                        index,
                        column,
                        count,
                    });
                }
            }
        }
        let mut completeness = ComplexMatrix::zeros(dim);
        for k in &kraus {
            completeness = &completeness + &(&k.adjoint() * k);
        }
        let residual = completeness.max_abs_diff(&ComplexMatrix::identity(dim));
        if residual > tol::COMPLETENESS {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(Self { kraus })
    }

    /// The single-branch identity channel.
    pub fn identity(dim: usize) -> Self {
        Self::new(vec![ComplexMatrix::identity(dim)]).expect("identity is a valid channel")
    }

    /// The fully dephasing channel `K_i = |i><i|`.
    pub fn dephasing(dim: usize) -> Self {
        let kraus = (0..dim)
            .map(|i| {
                ComplexMatrix::from_fn(dim, |r, c| {
                    if r == i && c == i {
                        Complex64::ONE
                    } else {
                        Complex64::ZERO
                    }
                })
            })
            .collect();
        Self::new(kraus).expect("projectors form a valid channel")
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].dim()
    }

    pub fn branches(&self) -> usize {
        self.kraus.len()
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// The channel output `Phi(rho) = sum_i K_i rho K_i^dag`.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: rho.dim(),
            });
        }
        let mut acc = ComplexMatrix::zeros(self.dim());
        for k in &self.kraus {
            let adj = k.adjoint();
            acc = &acc + &(&(k * rho.as_matrix()) * &adj);
        }
        DensityMatrix::new(acc.hermitized())
    }
}

/// Draws an incoherent channel with the requested number of branches.
///
/// Each branch is a column permutation composed with a random complex
/// diagonal; the diagonals are then rescaled per column so the stack is
/// exactly trace preserving. A draw whose column weight collapses is
/// retried with the next sub-seed, up to 100 attempts.
pub fn random_incoherent_channel(
    dim: usize,
    branches: usize,
    seed: u64,
) -> Result<IncoherentChannel> {
    if dim == 0 || branches == 0 {
        return Err(Error::InvalidParameter(
            "channel generation needs dim >= 1 and branches >= 1".into(),
        ));
    }
    const MAX_ATTEMPTS: usize = 100;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, attempt as u64));
        // Per branch: a target row for every column, and a complex weight.
        let mut targets = Vec::with_capacity(branches);
        let mut weights: Vec<Vec<Complex64>> = Vec::with_capacity(branches);
        for _ in 0..branches {
            let mut rows: Vec<usize> = (0..dim).collect();
            rows.shuffle(&mut rng);
            targets.push(rows);
            weights.push((0..dim).map(|_| complex_normal(&mut rng)).collect());
        }
        // Column weights across branches must all be positive to rescale.
        let mut column_norms = vec![0.0f64; dim];
        for branch in &weights {
            for (c, w) in branch.iter().enumerate() {
                column_norms[c] += w.norm_sqr();
            }
        }
        if column_norms.iter().any(|&w| w <= tol::SUPPORT_CUTOFF) {
            continue;
        }
        let kraus = (0..branches)
            .map(|b| {
                ComplexMatrix::from_fn(dim, |r, c| {
                    if targets[b][c] == r {
                        weights[b][c] / column_norms[c].sqrt()
                    } else {
                        Complex64::ZERO
                    }
                })
            })
            .collect();
        return IncoherentChannel::new(kraus);
    }
    Err(Error::ConstructionFailed {
        attempts: MAX_ATTEMPTS,
    })
}

/// Both sides of one monotonicity inequality, with per-branch weights
/// where the check has branches.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    /// The side required to be smaller.
    pub lhs: f64,
    /// The side required to be larger.
    pub rhs: f64,
    /// `rhs - lhs`; nonnegative (within [`tol::CHECK_SLACK`]) on passes.
    pub slack: f64,
    pub pass: bool,
    /// Branch probabilities `p_i` (selective checks), ensemble weights
    /// (convexity), or empty where not applicable.
    pub branch_probs: Vec<f64>,
    /// Reference-state probabilities `q_i` for the generalized check;
    /// empty elsewhere.
    pub reference_probs: Vec<f64>,
}

fn report(lhs: f64, rhs: f64, branch_probs: Vec<f64>, reference_probs: Vec<f64>) -> MonotonicityReport {
    MonotonicityReport {
        lhs,
        rhs,
        slack: rhs - lhs,
        pass: lhs <= rhs + tol::CHECK_SLACK,
        branch_probs,
        reference_probs,
    }
}

/// Branch outcome `K rho K^dag` with its probability.
fn branch_outcome(k: &ComplexMatrix, rho: &DensityMatrix) -> (f64, ComplexMatrix) {
    let adj = k.adjoint();
    let out = &(k * rho.as_matrix()) * &adj;
    (out.trace().re, out)
}

fn normalized_branch(out: &ComplexMatrix, p: f64) -> Result<DensityMatrix> {
    DensityMatrix::new(out.scaled(Complex64::new(1.0 / p, 0.0)).hermitized())
}

/// The generalized Tsallis monotonicity check
/// `sum_i p_i^alpha q_i^(1-alpha) C_alpha(rho_i) <= C_alpha(rho)`.
///
/// Branches with `p_i` at or below [`tol::BRANCH_CUTOFF`] contribute
/// nothing. A branch with `q_i` at or below the cutoff but appreciable
/// `p_i` would need `0^(1-alpha)` with a negative exponent when
/// `alpha > 1` — that is [`Error::IllConditionedBranch`]; for `alpha < 1`
/// the continuous limit of the term is 0 and it is skipped.
pub fn check_generalized_monotonicity(
    rho: &DensityMatrix,
    channel: &IncoherentChannel,
    alpha: f64,
) -> Result<MonotonicityReport> {
    measures::validate_alpha(alpha)?;
    if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
        return Err(Error::AlphaOutOfRange {
            alpha,
            reason: "the generalized inequality weights are singular at alpha = 1",
        });
    }
    if rho.dim() != channel.dim() {
        return Err(Error::DimensionMismatch {
            left: channel.dim(),
            right: rho.dim(),
        });
    }
    let delta = nearest_incoherent(rho, alpha)?;
    let mut lhs = 0.0;
    let mut branch_probs = Vec::with_capacity(channel.branches());
    let mut reference_probs = Vec::with_capacity(channel.branches());
    for (index, k) in channel.kraus().iter().enumerate() {
        let (p, out) = branch_outcome(k, rho);
        let (q, _) = branch_outcome(k, &delta);
        branch_probs.push(p);
        reference_probs.push(q);
        if p <= tol::BRANCH_CUTOFF {
            continue;
        }
        if q <= tol::BRANCH_CUTOFF {
            if alpha > 1.0 {
                return Err(Error::IllConditionedBranch { index, p, q });
            }
            continue;
        }
        let branch_state = normalized_branch(&out, p)?;
        let c_branch = c_alpha(&branch_state, alpha)?.value;
        lhs += p.powf(alpha) * q.powf(1.0 - alpha) * c_branch;
    }
    let rhs = c_alpha(rho, alpha)?.value;
    Ok(report(lhs, rhs, branch_probs, reference_probs))
}

/// The selective-measurement check (C2b):
/// `sum_i p_i C(rho_i) <= C(rho)`.
pub fn check_c2b(
    rho: &DensityMatrix,
    channel: &IncoherentChannel,
    id: MeasureId,
) -> Result<MonotonicityReport> {
    if rho.dim() != channel.dim() {
        return Err(Error::DimensionMismatch {
            left: channel.dim(),
            right: rho.dim(),
        });
    }
    let mut lhs = 0.0;
    let mut branch_probs = Vec::with_capacity(channel.branches());
    for k in channel.kraus() {
        let (p, out) = branch_outcome(k, rho);
        branch_probs.push(p);
        if p <= tol::BRANCH_CUTOFF {
            continue;
        }
        let branch_state = normalized_branch(&out, p)?;
        lhs += p * measure(&branch_state, id)?.value;
    }
    let rhs = measure(rho, id)?.value;
    Ok(report(lhs, rhs, branch_probs, Vec::new()))
}

/// The full-channel check (C2a): `C(Phi(rho)) <= C(rho)`.
pub fn check_c2a(
    rho: &DensityMatrix,
    channel: &IncoherentChannel,
    id: MeasureId,
) -> Result<MonotonicityReport> {
    let output = channel.apply(rho)?;
    let lhs = measure(&output, id)?.value;
    let rhs = measure(rho, id)?.value;
    let branch_probs = channel
        .kraus()
        .iter()
        .map(|k| branch_outcome(k, rho).0)
        .collect();
    Ok(report(lhs, rhs, branch_probs, Vec::new()))
}

/// The convexity check (C3): `C(sum_i w_i rho_i) <= sum_i w_i C(rho_i)`.
///
/// Weights must be nonnegative and sum to 1 within [`tol::TRACE`]; the
/// mixture is renormalized by the exact weight sum so rounding in the
/// weights cannot fail state validation.
pub fn check_c3_convexity(
    ensemble: &[(f64, DensityMatrix)],
    id: MeasureId,
) -> Result<MonotonicityReport> {
    let first = match ensemble.first() {
        Some(member) => member,
        None => {
            return Err(Error::BadEnsemble {
                reason: "ensemble is empty".into(),
            })
        }
    };
    let dim = first.1.dim();
    for (w, state) in ensemble {
        if !w.is_finite() || *w < -tol::SUPPORT_CUTOFF {
            return Err(Error::BadEnsemble {
                reason: format!("weight {w} is negative"),
            });
        }
        if state.dim() != dim {
            return Err(Error::BadEnsemble {
                reason: format!(
                    "member dimensions differ: {dim} vs {}",
                    state.dim()
                ),
            });
        }
    }
    let total: f64 = ensemble.iter().map(|(w, _)| *w).sum();
    if (total - 1.0).abs() > tol::TRACE {
        return Err(Error::BadEnsemble {
            reason: format!("weights sum to {total}, not 1"),
        });
    }
    let mut acc = ComplexMatrix::zeros(dim);
    for (w, state) in ensemble {
        acc = &acc + &state.as_matrix().scaled(Complex64::new(w / total, 0.0));
    }
    let mixture = DensityMatrix::new(acc.hermitized())?;
    let lhs = measure(&mixture, id)?.value;
    let mut rhs = 0.0;
    for (w, state) in ensemble {
        rhs += w * measure(state, id)?.value;
    }
    Ok(report(lhs, rhs, ensemble.iter().map(|(w, _)| *w).collect(), Vec::new()))
}

/// One case of the exploratory C2b search, self-contained for replay.
#[derive(Debug, Clone, PartialEq)]
pub struct C2bCase {
    pub index: usize,
    pub dim: usize,
    pub branches: usize,
    pub alpha: f64,
    pub state_seed: u64,
    pub channel_seed: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Log of a seeded C2b search over random states and channels.
#[derive(Debug, Clone, PartialEq)]
pub struct C2bSearchReport {
    pub seed: u64,
    pub dim: usize,
    pub branches: usize,
    pub alpha: f64,
    pub cases: Vec<C2bCase>,
    /// Number of cases whose inequality failed (candidate witnesses).
    pub witnesses: usize,
}

/// Runs `n` seeded (state, channel) C2b cases under `Tsallis(alpha)` and
/// logs every case. Violations are data here, not errors: the report
/// records them as witnesses for replay.
pub fn c2b_search(
    dim: usize,
    branches: usize,
    alpha: f64,
    n: usize,
    seed: u64,
) -> Result<C2bSearchReport> {
    measures::validate_alpha(alpha)?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the search needs at least one case".into(),
        ));
    }
    if dim < 2 {
        return Err(Error::InvalidParameter(format!(
            "the search needs dim >= 2, got {dim}"
        )));
    }
    let cases: Vec<Result<C2bCase>> = batch::map_indexed(n, |index| {
        let state_seed = mix_seed(seed, 2 * index as u64);
        let channel_seed = mix_seed(seed, 2 * index as u64 + 1);
        let rho = ginibre_random_density(dim, state_seed)?;
        let channel = random_incoherent_channel(dim, branches, channel_seed)?;
        let outcome = check_c2b(&rho, &channel, MeasureId::Tsallis(alpha))?;
        Ok(C2bCase {
            index,
            dim,
            branches,
            alpha,
            state_seed,
            channel_seed,
            lhs: outcome.lhs,
            rhs: outcome.rhs,
            slack: outcome.slack,
            pass: outcome.pass,
        })
    });
    let cases = cases.into_iter().collect::<Result<Vec<_>>>()?;
    let witnesses = cases.iter().filter(|c| !c.pass).count();
    Ok(C2bSearchReport {
        seed,
        dim,
        branches,
        alpha,
        cases,
        witnesses,
    })
}

/// Rebuilds a logged case from its seeds and re-runs the check. The
/// returned report must agree with the logged `lhs`/`rhs` exactly up to
/// floating-point determinism.
pub fn replay_c2b_case(case: &C2bCase) -> Result<MonotonicityReport> {
    let rho = ginibre_random_density(case.dim, case.state_seed)?;
    let channel = random_incoherent_channel(case.dim, case.branches, case.channel_seed)?;
    check_c2b(&rho, &channel, MeasureId::Tsallis(case.alpha))
}
