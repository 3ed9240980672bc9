//! Seeded random states.
//!
//! All generators are deterministic functions of their seed (ChaCha8
//! streams), so sampled ensembles are reproducible across runs, platforms,
//! and thread counts.

use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::matrix::ComplexMatrix;
use crate::state::{DensityMatrix, PureState};
use crate::{Error, Result};

/// Stateless seed mixer (splitmix64 finalizer) for deriving independent
/// sub-seeds from a base seed and an index.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut x = seed ^ index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    x ^= x >> 30;
    x = x.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^= x >> 31;
    x
}

pub(crate) fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state: a vector of iid complex Gaussians, normalized.
pub fn haar_random_pure(dim: usize, seed: u64) -> Result<PureState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    haar_random_pure_with(dim, &mut rng)
}

/// Haar-random pure state drawn from a caller-owned stream.
pub fn haar_random_pure_with(dim: usize, rng: &mut impl Rng) -> Result<PureState> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    loop {
        let amps: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        // A Gaussian vector is nonzero with probability 1; loop regardless
        // so the unlikely degenerate draw cannot panic.
        if let Ok(psi) = PureState::renormalized(amps) {
            return Ok(psi);
        }
    }
}

/// Ginibre-random density matrix `G G' / tr(G G')` with iid complex
/// Gaussian `G`; full rank with probability 1.
pub fn ginibre_random_density(dim: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ginibre_random_density_with(dim, &mut rng)
}

/// Ginibre-random density matrix drawn from a caller-owned stream.
pub fn ginibre_random_density_with(dim: usize, rng: &mut impl Rng) -> Result<DensityMatrix> {
    if dim == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let g = ComplexMatrix::from_fn(dim, |_, _| complex_normal(rng));
    let gg = &g * &g.adjoint();
    let trace = gg.trace().re;
    DensityMatrix::new(gg.scaled(Complex64::new(1.0 / trace, 0.0)))
}
