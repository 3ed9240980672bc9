//! Ordering comparisons between coherence measures.
//!
//! Two measures `C_m`, `C_n` generate the same ordering when
//! `C_m(rho) <= C_m(sigma)` exactly if `C_n(rho) <= C_n(sigma)` for every
//! state pair. [`compare`] tests one pair; [`scan_qubit_pairs`] and
//! [`scan_pure_qudit_pairs`] hunt for counterexamples over seeded random
//! families; [`classify_region`] maps the violating region of the
//! `(t, C_alpha)` disk geometry; and [`counterexample_registry`] pins the
//! canonical witnesses with their expected values for golden replay.
//!
//! Numerically equal values cannot be ordered reliably, so comparisons
//! carry a tie tolerance: a difference at or below it yields
//! [`Verdict::TieAmbiguous`] rather than a guessed direction. Scans are
//! deterministic for a given seed — parameters are drawn sequentially,
//! evaluation is batched in index order — so reports are replayable and
//! independent of thread count.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::batch;
use crate::measures::{self, measure, MeasureId, MeasureValue};
use crate::qubit::{c1_qubit, c2_qubit, c_half_qubit, rho_tz, CurveAlpha, PureQubit, QubitParams};
use crate::random::haar_random_pure_with;
use crate::state::DensityMatrix;
use crate::{Error, Result};

/// Outcome of ordering one state pair under two measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Both differences have the same strict sign.
    SameOrder,
    /// The differences have strictly opposite signs: the pair witnesses
    /// that the two measures order states differently.
    Violation,
    /// At least one difference is within the tie tolerance; no direction
    /// can be claimed.
    TieAmbiguous,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::SameOrder => write!(f, "same-order"),
            Self::Violation => write!(f, "violation"),
            Self::TieAmbiguous => write!(f, "tie-ambiguous"),
        }
    }
}

/// The four values behind a pairwise comparison, plus the verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRecord {
    pub value_a1: MeasureValue,
    pub value_a2: MeasureValue,
    pub value_b1: MeasureValue,
    pub value_b2: MeasureValue,
    pub verdict: Verdict,
}

/// The verdict for differences `a1 - a2` (measure A) and `b1 - b2`
/// (measure B) at tie tolerance `eps`.
pub fn verdict_from_values(a1: f64, a2: f64, b1: f64, b2: f64, eps: f64) -> Verdict {
    let da = a1 - a2;
    let db = b1 - b2;
    if da.abs() <= eps || db.abs() <= eps {
        Verdict::TieAmbiguous
    } else if da * db < 0.0 {
        Verdict::Violation
    } else {
        Verdict::SameOrder
    }
}

fn validate_eps(eps: f64) -> Result<()> {
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tie tolerance must be a positive finite number, got {eps}"
        )));
    }
    Ok(())
}

fn validate_measure(id: MeasureId) -> Result<()> {
    if let MeasureId::Tsallis(alpha) = id {
        measures::validate_alpha(alpha)?;
    }
    Ok(())
}

/// Orders the pair `(rho, sigma)` under measures A and B.
///
/// Symmetric: swapping the states preserves the verdict.
pub fn compare(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    measure_a: MeasureId,
    measure_b: MeasureId,
    eps: f64,
) -> Result<ComparisonRecord> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    validate_eps(eps)?;
    let value_a1 = measure(rho, measure_a)?;
    let value_a2 = measure(sigma, measure_a)?;
    let value_b1 = measure(rho, measure_b)?;
    let value_b2 = measure(sigma, measure_b)?;
    Ok(ComparisonRecord {
        value_a1,
        value_a2,
        value_b1,
        value_b2,
        verdict: verdict_from_values(
            value_a1.value,
            value_a2.value,
            value_b1.value,
            value_b2.value,
            eps,
        ),
    })
}

/// Random qubit families a scan can draw pairs from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QubitFamily {
    /// Pure states `sqrt(p)|0> + sqrt(1-p)|1>` with `p` uniform on `[0, 1]`.
    Pure,
    /// `rho(t, z)` with `(t, z)` uniform on the half disk, by rejection
    /// from `[0, 1] x [-1, 1]`.
    MixedDisk,
}

impl std::fmt::Display for QubitFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Pure => write!(f, "pure"),
            Self::MixedDisk => write!(f, "mixed-disk"),
        }
    }
}

/// One found counterexample: the pair index within the scan, the sampled
/// parameters of both states, and the full comparison record.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationCase {
    pub index: usize,
    /// `[p]` for pure qubits, `[t, z]` for disk states, interleaved
    /// re/im amplitudes for qudits.
    pub params1: Vec<f64>,
    pub params2: Vec<f64>,
    pub record: ComparisonRecord,
}

/// Outcome of a seeded violation scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ViolationReport {
    /// Family descriptor, e.g. `pure`, `mixed-disk`, `pure-qudit-3`.
    pub family: String,
    pub seed: u64,
    pub eps: f64,
    pub measure_a: MeasureId,
    pub measure_b: MeasureId,
    pub pairs_tested: usize,
    /// Violations only (ties excluded), sorted by pair index.
    pub violations: Vec<ViolationCase>,
}

fn scan_common(
    family: String,
    measure_a: MeasureId,
    measure_b: MeasureId,
    n: usize,
    seed: u64,
    eps: f64,
    pairs: Vec<(Vec<f64>, DensityMatrix, Vec<f64>, DensityMatrix)>,
) -> ViolationReport {
    let records = batch::map_indexed(n, |i| {
        let (_, rho, _, sigma) = &pairs[i];
        compare(rho, sigma, measure_a, measure_b, eps)
            .expect("scan inputs were validated up front")
    });
    let violations = records
        .into_iter()
        .enumerate()
        .filter(|(_, record)| record.verdict == Verdict::Violation)
        .map(|(index, record)| {
            let (params1, _, params2, _) = &pairs[index];
            ViolationCase {
                index,
                params1: params1.clone(),
                params2: params2.clone(),
                record,
            }
        })
        .collect();
    ViolationReport {
        family,
        seed,
        eps,
        measure_a,
        measure_b,
        pairs_tested: n,
        violations,
    }
}

fn validate_scan_inputs(measure_a: MeasureId, measure_b: MeasureId, n: usize, eps: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "scans need at least one pair".into(),
        ));
    }
    validate_eps(eps)?;
    validate_measure(measure_a)?;
    validate_measure(measure_b)?;
    Ok(())
}

fn sample_disk_params(rng: &mut ChaCha8Rng) -> QubitParams {
    loop {
        let t = rng.random::<f64>();
        let z = 2.0 * rng.random::<f64>() - 1.0;
        if t * t + z * z <= 1.0 {
            return QubitParams::new(t, z).expect("accepted point lies in the disk");
        }
    }
}

/// Scans `n` seeded random qubit pairs for ordering violations between two
/// measures. Ties count toward `pairs_tested` but are never reported as
/// violations.
pub fn scan_qubit_pairs(
    family: QubitFamily,
    measure_a: MeasureId,
    measure_b: MeasureId,
    n: usize,
    seed: u64,
    eps: f64,
) -> Result<ViolationReport> {
    validate_scan_inputs(measure_a, measure_b, n, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (0..n)
        .map(|_| match family {
            QubitFamily::Pure => {
                let p1 = rng.random::<f64>();
                let p2 = rng.random::<f64>();
                let s1 = PureQubit::new(p1, 0.0).expect("uniform draw is in range");
                let s2 = PureQubit::new(p2, 0.0).expect("uniform draw is in range");
                (vec![p1], s1.projector(), vec![p2], s2.projector())
            }
            QubitFamily::MixedDisk => {
                let q1 = sample_disk_params(&mut rng);
                let q2 = sample_disk_params(&mut rng);
                (
                    vec![q1.t(), q1.z()],
                    rho_tz(&q1),
                    vec![q2.t(), q2.z()],
                    rho_tz(&q2),
                )
            }
        })
        .collect();
    Ok(scan_common(
        family.to_string(),
        measure_a,
        measure_b,
        n,
        seed,
        eps,
        pairs,
    ))
}

/// Scans `n` Haar-random pure-state pairs in dimension `dim >= 3`.
///
/// Parameter vectors hold the interleaved real and imaginary amplitude
/// parts, so any reported witness can be reconstructed exactly.
pub fn scan_pure_qudit_pairs(
    dim: usize,
    measure_a: MeasureId,
    measure_b: MeasureId,
    n: usize,
    seed: u64,
    eps: f64,
) -> Result<ViolationReport> {
    if dim < 3 {
        return Err(Error::InvalidParameter(format!(
            "qudit scans cover dimension >= 3 (qubits have their own families), got {dim}"
        )));
    }
    validate_scan_inputs(measure_a, measure_b, n, eps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<_> = (0..n)
        .map(|_| {
            let s1 = haar_random_pure_with(dim, &mut rng).expect("dim was validated");
            let s2 = haar_random_pure_with(dim, &mut rng).expect("dim was validated");
            let flat = |s: &crate::state::PureState| -> Vec<f64> {
                s.amplitudes()
                    .iter()
                    .flat_map(|a| [a.re, a.im])
                    .collect()
            };
            (flat(&s1), s1.projector(), flat(&s2), s2.projector())
        })
        .collect();
    Ok(scan_common(
        format!("pure-qudit-{dim}"),
        measure_a,
        measure_b,
        n,
        seed,
        eps,
        pairs,
    ))
}

/// Where a candidate disk point sits relative to a reference point, in the
/// ordering geometry of `C_l1` (which is `t`) against `C_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionVerdict {
    /// `t` and `C_alpha` move in opposite directions: the pair violates
    /// the same-ordering condition.
    ViolatingRegion,
    /// Both move in the same direction.
    SameOrderRegion,
    /// Either coordinate difference is within tolerance of zero.
    Boundary,
}

/// Classifies `candidate` against `reference` by the sign of
/// `(t_cand - t_ref) * (C_cand - C_ref)`, using the closed forms for the
/// measure of order `alpha`.
///
/// Consistent with [`compare`] on the corresponding states with measures
/// `(L1, alpha)`: `ViolatingRegion` exactly when `compare` yields
/// [`Verdict::Violation`].
pub fn classify_region(
    reference: &QubitParams,
    candidate: &QubitParams,
    alpha: CurveAlpha,
    eps: f64,
) -> Result<RegionVerdict> {
    validate_eps(eps)?;
    let value = |p: &QubitParams| match alpha {
        CurveAlpha::Two => c2_qubit(p).value,
        CurveAlpha::One => c1_qubit(p).value,
        CurveAlpha::Half => c_half_qubit(p).value,
    };
    let dt = candidate.t() - reference.t();
    let dc = value(candidate) - value(reference);
    if dt.abs() <= eps || dc.abs() <= eps {
        Ok(RegionVerdict::Boundary)
    } else if dt * dc < 0.0 {
        Ok(RegionVerdict::ViolatingRegion)
    } else {
        Ok(RegionVerdict::SameOrderRegion)
    }
}

/// A named canonical state with its expected measure values.
#[derive(Debug, Clone)]
pub struct RegistryState {
    pub name: &'static str,
    pub state: DensityMatrix,
    /// `(measure, expected value, absolute tolerance)` triples.
    pub expected: Vec<(MeasureId, f64, f64)>,
}

/// A named canonical pair with its expected comparison verdict.
#[derive(Debug, Clone)]
pub struct RegistryCase {
    pub name: &'static str,
    pub state1: &'static str,
    pub state2: &'static str,
    pub measure_a: MeasureId,
    pub measure_b: MeasureId,
    pub expected: Verdict,
}

/// The canonical counterexamples: states with published values, and pairs
/// with published verdicts.
#[derive(Debug, Clone)]
pub struct Registry {
    pub states: Vec<RegistryState>,
    pub cases: Vec<RegistryCase>,
}

impl Registry {
    pub fn state(&self, name: &str) -> Option<&RegistryState> {
        self.states.iter().find(|s| s.name == name)
    }

    pub fn case(&self, name: &str) -> Option<&RegistryCase> {
        self.cases.iter().find(|c| c.name == name)
    }
}

/// Reported-value tolerance: four-decimal published numbers.
const REPORTED: f64 = 5e-4;
/// Tolerance for values that are exact by construction.
const EXACT: f64 = 1e-12;

fn real_pure_state(amplitudes: &[f64]) -> DensityMatrix {
    use num_complex::Complex64;
    crate::state::PureState::new(
        amplitudes
            .iter()
            .map(|&a| Complex64::new(a, 0.0))
            .collect(),
    )
    .expect("registry amplitudes are normalized")
    .projector()
}

fn disk_state(t: f64, z: f64) -> DensityMatrix {
    rho_tz(&QubitParams::new(t, z).expect("registry points lie in the disk"))
}

/// The fixed registry of canonical ordering counterexamples.
///
/// Seven states — a qutrit pair, a disk pair with one state on the pure
/// boundary, and a mixed-disk triple — and seven violating pairs: the
/// qutrit pair under `(L1, C_1/2)`, the disk pair under `L1` against each
/// of `C_2` / `C_1` / `C_1/2`, and the triple under `(C_1, C_2)`,
/// `(C_1/2, C_2)`, `(C_1/2, C_1)`.
pub fn counterexample_registry() -> Registry {
    let l1 = MeasureId::L1;
    let c2 = MeasureId::Tsallis(2.0);
    let c1 = MeasureId::RelEntropy;
    let ch = MeasureId::Tsallis(0.5);
    let a = (12.0f64 / 25.0).sqrt();

    let states = vec![
        RegistryState {
            name: "qutrit-psi1",
            state: real_pure_state(&[a, a, 0.2]),
            expected: vec![(l1, 1.5143, REPORTED), (ch, 0.6400, REPORTED)],
        },
        RegistryState {
            name: "qutrit-psi2",
            state: real_pure_state(&[0.7f64.sqrt(), 0.2f64.sqrt(), 0.1f64.sqrt()]),
            expected: vec![(l1, 1.5603, REPORTED), (ch, 0.5303, REPORTED)],
        },
        RegistryState {
            name: "rho-a1",
            state: disk_state(0.5, 0.0),
            expected: vec![
                (l1, 0.5, EXACT),
                (c2, 0.25, EXACT),
                (c1, 0.13081, REPORTED),
                (ch, 0.0681, REPORTED),
            ],
        },
        RegistryState {
            name: "rho-a2",
            state: disk_state(0.4, 21.0f64.sqrt() / 5.0),
            expected: vec![
                (l1, 0.4, EXACT),
                (c2, 0.4, EXACT),
                (c1, 0.17344, REPORTED),
                (ch, 0.0817, REPORTED),
            ],
        },
        RegistryState {
            name: "rho-b1",
            state: disk_state(0.5, 0.5),
            expected: vec![
                (c1, 0.1458, REPORTED),
                (c2, 0.3090, REPORTED),
                (ch, 0.0746, REPORTED),
            ],
        },
        RegistryState {
            name: "rho-b2",
            state: disk_state(0.48, 0.58),
            expected: vec![
                (c1, 0.1400, REPORTED),
                (c2, 0.3100, REPORTED),
                (ch, 0.0707, REPORTED),
            ],
        },
        RegistryState {
            name: "rho-b3",
            state: disk_state(0.48, 0.64),
            expected: vec![
                (c1, 0.1463, REPORTED),
                (c2, 0.3326, REPORTED),
                (ch, 0.0733, REPORTED),
            ],
        },
    ];

    let cases = vec![
        RegistryCase {
            name: "qutrit-l1-vs-half",
            state1: "qutrit-psi1",
            state2: "qutrit-psi2",
            measure_a: l1,
            measure_b: ch,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "disk-l1-vs-c2",
            state1: "rho-a1",
            state2: "rho-a2",
            measure_a: l1,
            measure_b: c2,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "disk-l1-vs-c1",
            state1: "rho-a1",
            state2: "rho-a2",
            measure_a: l1,
            measure_b: c1,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "disk-l1-vs-half",
            state1: "rho-a1",
            state2: "rho-a2",
            measure_a: l1,
            measure_b: ch,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "c1-vs-c2",
            state1: "rho-b1",
            state2: "rho-b2",
            measure_a: c1,
            measure_b: c2,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "c-half-vs-c2",
            state1: "rho-b1",
            state2: "rho-b2",
            measure_a: ch,
            measure_b: c2,
            expected: Verdict::Violation,
        },
        RegistryCase {
            name: "c-half-vs-c1",
            state1: "rho-b1",
            state2: "rho-b3",
            measure_a: ch,
            measure_b: c1,
            expected: Verdict::Violation,
        },
    ];

    Registry { states, cases }
}
