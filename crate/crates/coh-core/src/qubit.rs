//! Single-qubit closed forms.
//!
//! Every qubit state can be brought, by a diagonal unitary that changes no
//! coherence value, to the canonical real form
//!
//! ```text
//! rho(t, z) = [[(1 + z)/2, t/2], [t/2, (1 - z)/2]],   t >= 0, t^2 + z^2 <= 1,
//! ```
//!
//! whose l1 coherence is exactly `t`. On this family the Tsallis measures
//! `C_2`, `C_1` and `C_1/2` admit closed forms, and for each fixed `t` the
//! extremes over `z` are the pure boundary state `z = sqrt(1 - t^2)`
//! (maximum) and the balanced state `z = 0` (minimum). The resulting
//! boundary curves `c_max(t)` / `c_min(t)` enclose the reachable region in
//! the `(C_l1, C_alpha)` plane.
//!
//! [`monotonicity_check`] verifies the expected derivative signs of these
//! closed forms by central finite differences on an interior grid: the
//! pure-state measure rises then falls in the weight `p` (flip at 1/2),
//! `C_alpha(rho(t, z))` is non-decreasing in `z >= 0` at fixed `t`, and the
//! `C_1/2` radius `r_1/2` is non-increasing there.

use num_complex::Complex64;

use crate::batch;
use crate::matrix::ComplexMatrix;
use crate::measures::{self, c_alpha, x_ln_x, MeasureId, MeasureValue};
use crate::state::DensityMatrix;
use crate::{tol, Error, Result};

/// Canonical real qubit parameters: off-diagonal weight `t` and population
/// imbalance `z`, constrained to the half disk `t >= 0`, `t^2 + z^2 <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitParams {
    t: f64,
    z: f64,
}

impl QubitParams {
    /// Validates the half-disk constraint (with a small boundary tolerance).
    pub fn new(t: f64, z: f64) -> Result<Self> {
        let norm = t * t + z * z;
        if !t.is_finite() || !z.is_finite() || t < 0.0 || norm > 1.0 + tol::DISK {
            return Err(Error::OutOfBlochDisk { t, z, norm });
        }
        Ok(Self { t, z })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// A general Bloch vector `(x, y, z)` inside the unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = x * x + y * y + z * z;
        if !norm.is_finite() || norm > 1.0 + tol::DISK {
            return Err(Error::OutOfBlochBall { x, y, z, norm });
        }
        Ok(Self { x, y, z })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }
}

/// A pure qubit `|psi> = sqrt(p)|0> + e^(i phi) sqrt(1 - p)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQubit {
    p: f64,
    phase: f64,
}

impl PureQubit {
    pub fn new(p: f64, phase: f64) -> Result<Self> {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "pure-qubit weight must lie in [0, 1], got {p}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "pure-qubit phase must be finite, got {phase}"
            )));
        }
        Ok(Self { p, phase })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    /// The state as a density matrix (phase included).
    pub fn projector(&self) -> DensityMatrix {
        let a = Complex64::new(self.p.sqrt(), 0.0);
        let b = Complex64::from_polar((1.0 - self.p).sqrt(), self.phase);
        let m = ComplexMatrix::from_rows(&[
            vec![a * a.conj(), a * b.conj()],
            vec![b * a.conj(), b * b.conj()],
        ])
        .expect("2x2 rows are square");
        DensityMatrix::new(m).expect("a projector is a valid state")
    }
}

/// The canonical state `rho(t, z)`.
pub fn rho_tz(params: &QubitParams) -> DensityMatrix {
    let (t, z) = (params.t, params.z);
    let m = ComplexMatrix::from_rows(&[
        vec![
            Complex64::new((1.0 + z) / 2.0, 0.0),
            Complex64::new(t / 2.0, 0.0),
        ],
        vec![
            Complex64::new(t / 2.0, 0.0),
            Complex64::new((1.0 - z) / 2.0, 0.0),
        ],
    ])
    .expect("2x2 rows are square");
    DensityMatrix::new(m).expect("points of the half disk are valid states")
}

/// The state `(I + x sx + y sy + z sz) / 2` for a Bloch vector.
pub fn rho_bloch(b: &BlochVector) -> DensityMatrix {
    let m = ComplexMatrix::from_rows(&[
        vec![
            Complex64::new((1.0 + b.z) / 2.0, 0.0),
            Complex64::new(b.x / 2.0, -b.y / 2.0),
        ],
        vec![
            Complex64::new(b.x / 2.0, b.y / 2.0),
            Complex64::new((1.0 - b.z) / 2.0, 0.0),
        ],
    ])
    .expect("2x2 rows are square");
    DensityMatrix::new(m).expect("points of the unit ball are valid states")
}

/// Rotates the transverse Bloch components onto the positive `t` axis:
/// `(x, y, z) -> (sqrt(x^2 + y^2), z)`. The rotation is a diagonal unitary,
/// so every coherence measure of the canonical state matches the original.
pub fn canonicalize(b: &BlochVector) -> QubitParams {
    let t = b.x.hypot(b.y);
    match QubitParams::new(t, b.z) {
        Ok(p) => p,
        Err(_) => {
            // The hypot can overshoot the disk boundary by a few ulps when
            // the ball constraint is saturated; project back onto it.
            let t = (1.0 - b.z * b.z).max(0.0).sqrt();
            QubitParams::new(t, b.z).expect("projected point lies in the disk")
        }
    }
}

/// `C_alpha` of a pure qubit with weight `p`, for any order in `(0, 2]`
/// (orders near 1 route to the binary-entropy limit). Phase independent.
fn pure_c_alpha(p: f64, alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
        return (-x_ln_x(p) - x_ln_x(1.0 - p)).max(0.0);
    }
    let r = p.powf(1.0 / alpha) + (1.0 - p).powf(1.0 / alpha);
    ((r.powf(alpha) - 1.0) / (alpha - 1.0)).max(0.0)
}

/// Closed-form measure values for a pure qubit: `C_l1 = 2 sqrt(p(1 - p))`,
/// `C_l2 = 2p(1 - p)`, and `C_alpha` from `r = p^(1/alpha) + (1-p)^(1/alpha)`.
/// All independent of the phase.
pub fn pure_closed_forms(s: &PureQubit, id: MeasureId) -> Result<MeasureValue> {
    let p = s.p;
    match id {
        MeasureId::L1 => Ok(MeasureValue {
            measure: MeasureId::L1,
            value: 2.0 * (p * (1.0 - p)).sqrt(),
        }),
        MeasureId::L2 => Ok(MeasureValue {
            measure: MeasureId::L2,
            value: 2.0 * p * (1.0 - p),
        }),
        MeasureId::RelEntropy => Ok(MeasureValue {
            measure: MeasureId::RelEntropy,
            value: (-x_ln_x(p) - x_ln_x(1.0 - p)).max(0.0),
        }),
        MeasureId::Tsallis(alpha) => {
            measures::validate_alpha(alpha)?;
            let measure = if (alpha - 1.0).abs() < tol::ALPHA_ONE_BAND {
                MeasureId::RelEntropy
            } else {
                MeasureId::Tsallis(alpha)
            };
            Ok(MeasureValue {
                measure,
                value: pure_c_alpha(p, alpha),
            })
        }
    }
}

/// `x ln x + (reflected term)` helper: `g(w) = xlnx((1+w)/2) + xlnx((1-w)/2)`.
///
/// The two terms are summed symmetrically so that `g(-w)` is bitwise equal
/// to `g(w)`.
fn entropy_bracket(w: f64) -> f64 {
    x_ln_x((1.0 + w) / 2.0) + x_ln_x((1.0 - w) / 2.0)
}

/// Closed form for `C_2(rho(t, z)) = r_2^2 - 1` with
/// `r_2 = (sqrt((1+z)^2 + t^2) + sqrt((1-z)^2 + t^2)) / 2`.
pub fn c2_qubit(params: &QubitParams) -> MeasureValue {
    let (t, z) = (params.t, params.z);
    let r2 = 0.5 * ((1.0 + z) * (1.0 + z) + t * t).sqrt()
        + 0.5 * ((1.0 - z) * (1.0 - z) + t * t).sqrt();
    MeasureValue {
        measure: MeasureId::Tsallis(2.0),
        value: (r2 * r2 - 1.0).max(0.0),
    }
}

/// Closed form for `C_1(rho(t, z)) = S(diag) - S(rho)`, expressed through
/// the Bloch radius `s = sqrt(t^2 + z^2)` as `g(s) - g(z)` with
/// `g(w) = xlnx((1+w)/2) + xlnx((1-w)/2)`.
pub fn c1_qubit(params: &QubitParams) -> MeasureValue {
    let (t, z) = (params.t, params.z);
    let s = (t * t + z * z).sqrt().min(1.0);
    MeasureValue {
        measure: MeasureId::RelEntropy,
        value: (entropy_bracket(s) - entropy_bracket(z)).max(0.0),
    }
}

/// The radius `r_1/2` of `rho(t, z)` from the closed two-bracket form:
/// with `s = sqrt(t^2 + z^2)`, eigenvalues `lambda_1,2 = (1 +- s)/2`, and
/// basis weights `(s +- z)/(2s)`,
///
/// ```text
/// r_1/2 = b_1^2 + b_2^2,
/// b_1 = sqrt(lambda_1) (s + z)/(2s) + sqrt(lambda_2) (s - z)/(2s),
/// b_2 = sqrt(lambda_1) (s - z)/(2s) + sqrt(lambda_2) (s + z)/(2s).
/// ```
///
/// At `s = 0` (the maximally mixed point) the state is diagonal and
/// `r = 1` by convention; for `t = 0` the brackets collapse to the
/// computational-basis eigenvectors automatically.
pub fn r_half_qubit(params: &QubitParams) -> f64 {
    let (t, z) = (params.t, params.z);
    let s = (t * t + z * z).sqrt().min(1.0);
    if s == 0.0 {
        return 1.0;
    }
    let l1 = ((1.0 + s) / 2.0).sqrt();
    let l2 = ((1.0 - s) / 2.0).max(0.0).sqrt();
    let wp = (s + z) / (2.0 * s);
    let wm = (s - z) / (2.0 * s);
    let b1 = l1 * wp + l2 * wm;
    let b2 = l1 * wm + l2 * wp;
    b1 * b1 + b2 * b2
}

/// Closed form for `C_1/2(rho(t, z)) = -2 (sqrt(r_1/2) - 1)`.
pub fn c_half_qubit(params: &QubitParams) -> MeasureValue {
    MeasureValue {
        measure: MeasureId::Tsallis(0.5),
        value: (-2.0 * (r_half_qubit(params).sqrt() - 1.0)).max(0.0),
    }
}

/// For fixed `t`, the pair `(rho_max, rho_min)` = `(rho(t, sqrt(1 - t^2)),
/// rho(t, 0))` extremizing every `C_alpha` over the disk slice; `rho_max`
/// is pure.
pub fn extremal_states(t: f64) -> Result<(DensityMatrix, DensityMatrix)> {
    let top = boundary_z(t)?;
    let rho_max = rho_tz(&QubitParams::new(t, top).expect("boundary point is in the disk"));
    let rho_min = rho_tz(&QubitParams::new(t, 0.0).expect("axis point is in the disk"));
    Ok((rho_max, rho_min))
}

fn boundary_z(t: f64) -> Result<f64> {
    if !t.is_finite() || !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!(
            "curve parameter t must lie in [0, 1], got {t}"
        )));
    }
    Ok((1.0 - t * t).max(0.0).sqrt())
}

/// The three orders whose boundary curves have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveAlpha {
    Two,
    One,
    Half,
}

impl CurveAlpha {
    pub fn as_f64(&self) -> f64 {
        match self {
            Self::Two => 2.0,
            Self::One => 1.0,
            Self::Half => 0.5,
        }
    }

    /// The measure evaluated along this curve.
    pub fn measure_id(&self) -> MeasureId {
        match self {
            Self::Two => MeasureId::Tsallis(2.0),
            Self::One => MeasureId::RelEntropy,
            Self::Half => MeasureId::Tsallis(0.5),
        }
    }
}

/// Boundary-curve values `(c_max, c_min)` at abscissa `t`:
///
/// - order 2: `(t, t^2)`;
/// - order 1: `(-g(sqrt(1 - t^2)), g(t) + ln 2)` with the entropy bracket `g`;
/// - order 1/2: `(-2(sqrt((2 - t^2)/2) - 1), -2(sqrt((1 + sqrt(1 - t^2))/2) - 1))`.
pub fn extremal_curves(t: f64, alpha: CurveAlpha) -> Result<(f64, f64)> {
    let w = boundary_z(t)?;
    let curves = match alpha {
        CurveAlpha::Two => (t, t * t),
        CurveAlpha::One => (
            (-entropy_bracket(w)).max(0.0),
            (entropy_bracket(t) + std::f64::consts::LN_2).max(0.0),
        ),
        CurveAlpha::Half => (
            (-2.0 * (((2.0 - t * t) / 2.0).sqrt() - 1.0)).max(0.0),
            (-2.0 * (((1.0 + w) / 2.0).sqrt() - 1.0)).max(0.0),
        ),
    };
    Ok(curves)
}

/// Which closed-form derivative a monotonicity grid probes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridMode {
    /// `p -> C_alpha(pure(p))` on `(0, 1)`: non-decreasing up to `p = 1/2`,
    /// non-increasing beyond.
    PureP,
    /// `z -> C_alpha(rho(t, z))` on `(0, sqrt(1 - t^2))` at fixed `t`:
    /// non-decreasing.
    QubitZ,
    /// `z -> r_1/2(rho(t, z))` on the same interval: non-increasing.
    RHalfZ,
}

/// One finite-difference probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    /// Abscissa (`p` or `z` depending on the mode).
    pub x: f64,
    /// Central difference quotient at `x` with step [`tol::FD_STEP`].
    pub quotient: f64,
    /// Whether the quotient respects the claimed sign within
    /// [`tol::FD_SIGN_SLACK`].
    pub pass: bool,
}

/// Outcome of a [`monotonicity_check`] sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub mode: GridMode,
    pub points: Vec<GridPoint>,
    pub failures: usize,
    pub pass: bool,
}

/// Probes the derivative sign of a closed form at `grid` interior points by
/// central finite differences (step [`tol::FD_STEP`], slack
/// [`tol::FD_SIGN_SLACK`]).
///
/// `fixed` is the slice parameter `t` for the two `z` modes (must lie in
/// `(0, 1)`) and is ignored for [`GridMode::PureP`]; `alpha` selects the
/// measure order for the two `C_alpha` modes and is ignored for
/// [`GridMode::RHalfZ`]. Requires `grid >= 3`, and fails with
/// [`Error::DegenerateInterval`] when the grid spacing does not dominate
/// the finite-difference step (so probes would leave the domain).
pub fn monotonicity_check(
    mode: GridMode,
    fixed: f64,
    alpha: f64,
    grid: usize,
) -> Result<GridReport> {
    if grid < 3 {
        return Err(Error::InvalidParameter(format!(
            "monotonicity grids need at least 3 points, got {grid}"
        )));
    }
    let h = tol::FD_STEP;
    let slack = tol::FD_SIGN_SLACK;
    let length = match mode {
        GridMode::PureP => 1.0,
        GridMode::QubitZ | GridMode::RHalfZ => {
            if !fixed.is_finite() || fixed <= 0.0 || fixed >= 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "slice parameter t must lie in (0, 1), got {fixed}"
                )));
            }
            (1.0 - fixed * fixed).sqrt()
        }
    };
    if matches!(mode, GridMode::PureP | GridMode::QubitZ) {
        measures::validate_alpha(alpha)?;
    }
    let spacing = length / (grid + 1) as f64;
    if spacing <= h {
        return Err(Error::DegenerateInterval { spacing, step: h });
    }

    let eval: Box<dyn Fn(f64) -> f64 + Sync> = match mode {
        GridMode::PureP => Box::new(move |p| pure_c_alpha(p, alpha)),
        GridMode::QubitZ => Box::new(move |z| {
            let params = QubitParams::new(fixed, z).expect("probe stays in the disk");
            c_alpha(&rho_tz(&params), alpha)
                .expect("validated order on a valid state")
                .value
        }),
        GridMode::RHalfZ => Box::new(move |z| {
            r_half_qubit(&QubitParams::new(fixed, z).expect("probe stays in the disk"))
        }),
    };

    let points = batch::map_indexed(grid, |k| {
        let x = (k + 1) as f64 * spacing;
        let quotient = (eval(x + h) - eval(x - h)) / (2.0 * h);
        let pass = match mode {
            GridMode::PureP => {
                if x <= 0.5 {
                    quotient >= -slack
                } else {
                    quotient <= slack
                }
            }
            GridMode::QubitZ => quotient >= -slack,
            GridMode::RHalfZ => quotient <= slack,
        };
        GridPoint { x, quotient, pass }
    });
    let failures = points.iter().filter(|p| !p.pass).count();
    Ok(GridReport {
        mode,
        points,
        failures,
        pass: failures == 0,
    })
}
