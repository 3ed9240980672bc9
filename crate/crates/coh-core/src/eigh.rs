//! Hermitian eigendecomposition via cyclic Jacobi rotations.
//!
//! The solver sweeps the strict upper triangle in a fixed row-major order
//! and annihilates each pivot `a_pq` with a complex plane rotation. For a
//! Hermitian pivot block
//!
//! ```text
//! [ a      b ]        b = m e^{i phi},  m = |b|
//! [ conj(b) d ]
//! ```
//!
//! the phase `diag(1, e^{-i phi})` first makes the block real symmetric, and
//! the classical rotation angle is then chosen from
//! `theta = (d - a) / (2 m)`, `tan = sign(theta) / (|theta| + sqrt(theta^2 + 1))`,
//! the root of smaller magnitude, which keeps the iteration stable. One
//! combined unitary per pivot updates both the matrix and the accumulated
//! eigenvector columns.
//!
//! Iteration stops when the off-diagonal Frobenius norm drops to
//! [`tol::EIGH_OFF_DIAGONAL`], with a hard cap of [`tol::EIGH_MAX_SWEEPS`]
//! sweeps. The pivot order is fixed and the code is free of any runtime
//! dispatch, so identical input bits always produce identical output bits.
//!
//! Intended for the small dimensions this crate works at (2 through ~8);
//! cost grows as `dim^4` per sweep and no pivot thresholds are used.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::{tol, Error, Result};

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted in descending order (stable under ties);
/// `eigenvectors` holds the matching orthonormal eigenvectors as columns,
/// so `A = U diag(eigenvalues) U'`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(f(lambda)) U'`, re-symmetrized to be exactly Hermitian.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let u = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let uik = u[(i, k)] * fk;
                for j in 0..n {
                    out[(i, j)] += uik * u[(j, k)].conj();
                }
            }
        }
        out.hermitized()
    }

    /// `U diag(lambda) U'`; equals the decomposed matrix up to rounding.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply_fn(|x| x)
    }
}

/// Square root of the off-diagonal sum of squares.
fn off_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// The input must be Hermitian within [`tol::HERMITICITY`]; it is
/// symmetrized once up front so the iteration works on exactly Hermitian
/// data. Fails with [`Error::NoConvergence`] if the off-diagonal norm has
/// not reached target after the sweep cap (not observed for valid input at
/// these dimensions).
pub fn eigh(m: &ComplexMatrix) -> Result<Spectrum> {
    let residual = m.hermiticity_residual();
    if residual > tol::HERMITICITY {
        return Err(Error::NotHermitian {
            residual,
            tolerance: tol::HERMITICITY,
        });
    }

    let n = m.dim();
    let mut a = m.hermitized();
    let mut u = ComplexMatrix::identity(n);

    let mut converged = false;
    for _sweep in 0..tol::EIGH_MAX_SWEEPS {
        if off_norm(&a) <= tol::EIGH_OFF_DIAGONAL {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut u, p, q);
            }
        }
    }
    if !converged && off_norm(&a) > tol::EIGH_OFF_DIAGONAL {
        return Err(Error::NoConvergence {
            sweeps: tol::EIGH_MAX_SWEEPS,
            off_norm: off_norm(&a),
        });
    }

    // Sort descending; the sort is stable so ties keep first-occurrence
    // order and the result stays deterministic.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(j, j)]
            .re
            .partial_cmp(&a[(i, i)].re)
            .expect("diagonal of a Hermitian matrix is free of NaN")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, j| u[(i, order[j])]);

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// Annihilates `a[(p, q)]` with the phase-reduced Jacobi rotation,
/// updating `a <- V' a V` and accumulating `u <- u V`.
fn rotate(a: &mut ComplexMatrix, u: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let m = apq.norm();
    if m == 0.0 {
        return;
    }
    let phase = apq / m; // e^{i phi}
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * m);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // V is the identity outside the (p, q) plane, where it is
    //   [ c            s          ]
    //   [ -s conj(ph)  c conj(ph) ]
    let n = a.dim();
    let ph_conj = phase.conj();

    // Columns of a (right factor V), then rows (left factor V').
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * ph_conj * akq;
        a[(k, q)] = s * akp + c * ph_conj * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * phase * aqk;
        a[(q, k)] = s * apk + c * phase * aqk;
    }
    // The rotation annihilates the pivot and keeps the diagonal real in
    // exact arithmetic; enforce both so rounding noise cannot pile up.
    a[(p, q)] = Complex64::ZERO;
    a[(q, p)] = Complex64::ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

    for k in 0..n {
        let ukp = u[(k, p)];
        let ukq = u[(k, q)];
        u[(k, p)] = c * ukp - s * ph_conj * ukq;
        u[(k, q)] = s * ukp + c * ph_conj * ukq;
    }
}
