//! # coh-core
//!
//! Numerical library for quantifying quantum coherence on finite-dimensional
//! states. The centrepiece is the Tsallis relative-entropy family of
//! coherence measures `C_alpha` for `alpha` in `(0, 2]`, together with the
//! l1 and l2 norms of coherence and the relative entropy of coherence (the
//! `alpha -> 1` limit). On top of the raw measures the crate provides:
//!
//! - closed-form evaluations for qubit states parameterised on the Bloch
//!   disk, with finite-difference monotonicity verifiers ([`qubit`]);
//! - ordering comparisons between measures, seeded Monte-Carlo scans for
//!   ordering violations, and a registry of canonical counterexample states
//!   ([`ordering`]);
//! - incoherent channels in Kraus form and batch checks of the monotonicity
//!   and convexity conditions coherence measures are expected to satisfy
//!   ([`channels`]).
//!
//! Everything is built on a small dense complex-matrix substrate with a
//! deterministic cyclic Jacobi eigensolver ([`matrix`], [`eigh`],
//! [`state`]), so results are reproducible bit-for-bit for a fixed seed,
//! independent of thread count.
//!
//! The crate targets small dimensions (qubits through d ~ 8); nothing here
//! is tuned for large matrices. The `parallel` feature (on by default) runs
//! the scan and batch-check loops on a rayon pool; disabling it falls back
//! to equivalent sequential loops with identical output.

#![forbid(unsafe_code)]

use thiserror::Error;

pub mod batch;
pub mod channels;
pub mod eigh;
pub mod matrix;
pub mod measures;
pub mod ordering;
pub mod qubit;
pub mod random;
pub mod state;
pub mod tol;

/// Errors reported by validation, decomposition, and check routines.
///
/// Each variant names the violated invariant and carries the measured
/// residual so callers can report actionable diagnostics.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square: {rows} rows x {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not Hermitian: max |a_ij - conj(a_ji)| = {residual:.3e} exceeds {tolerance:.0e}")]
    NotHermitian { residual: f64, tolerance: f64 },

    #[error("trace is {trace:.12} instead of 1 (tolerance {tolerance:.0e})")]
    TraceNotOne { trace: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.6e} below -{tolerance:.0e}")]
    NotPositive { min_eigenvalue: f64, tolerance: f64 },

    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e} exceeds {tolerance:.0e}")]
    NotNormalized { deviation: f64, tolerance: f64 },

    #[error("Jacobi eigensolver did not converge: off-diagonal norm {off_norm:.3e} after {sweeps} sweeps")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("alpha = {alpha} is not admissible: {reason}")]
    AlphaOutOfRange { alpha: f64, reason: &'static str },

    #[error("support mismatch: reference eigenvalue {index} is zero but carries weight {weight:.3e} of rho^alpha with alpha > 1")]
    SupportMismatch { index: usize, weight: f64 },

    #[error("(t, z) = ({t}, {z}) lies outside the Bloch disk: t^2 + z^2 = {norm}")]
    OutOfBlochDisk { t: f64, z: f64, norm: f64 },

    #[error("Bloch vector ({x}, {y}, {z}) lies outside the unit ball: |v|^2 = {norm}")]
    OutOfBlochBall { x: f64, y: f64, z: f64, norm: f64 },

    #[error("interval too narrow for central differences: spacing {spacing:.3e} <= step {step:.0e}")]
    DegenerateInterval { spacing: f64, step: f64 },

    #[error("channel construction failed after {attempts} attempts")]
    ConstructionFailed { attempts: usize },

    #[error("Kraus operator {index} is not incoherent: column {column} has {count} nonzero entries")]
    NotIncoherent { index: usize, column: usize, count: usize },

    #[error("Kraus operators are not trace preserving: max |sum K'K - I| = {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("ill-conditioned branch {index}: branch probability {p:.3e} but reference probability {q:.3e}")]
    IllConditionedBranch { index: usize, p: f64, q: f64 },

    #[error("bad ensemble: {reason}")]
    BadEnsemble { reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
