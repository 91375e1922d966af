//! Thermal anyon pairs crossing the tracked subsystem.
//!
//! A pair created next to the subsystem lives in the extended basis
//! `|i1,i2,j,k>`. The created anyon adjacent to the subsystem is exchanged
//! with the nearest tracked anyon `q` times (`q = 2` is the full
//! monodromy). The logical qubit is protected when the block
//! `M_q = <L,10_E| B_q |L,10_E>` is proportional to the identity.

use nalgebra::linalg::Schur;
use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::anyon::FusionCategory;
use crate::benchmark::qpt;
use crate::braid_space::{build_generator, extended_index, LogicalEncoding};
use crate::channel::{Compressed, Dephasing, Superop};
use crate::error::{Error, Result};
use crate::linalg::{c, identity, pauli_basis, CMatrix, MatrixJson, C64};
use crate::noise::NoiseModel;

/// Chain position of the exchange between the created anyon and the
/// nearest tracked anyon.
const CROSSING_POSITION: usize = 2;
const ZERO_BLOCK_TOL: f64 = 1e-12;

/// Number of crossings of the created anyon past the tracked one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(into = "u8")]
pub enum Crossings {
    One,
    Two,
}

impl Crossings {
    pub const ALL: [Crossings; 2] = [Crossings::One, Crossings::Two];

    pub fn count(self) -> u32 {
        match self {
            Crossings::One => 1,
            Crossings::Two => 2,
        }
    }
}

impl From<Crossings> for u8 {
    fn from(q: Crossings) -> u8 {
        q.count() as u8
    }
}

impl TryFrom<u32> for Crossings {
    type Error = Error;

    fn try_from(q: u32) -> Result<Self> {
        match q {
            1 => Ok(Crossings::One),
            2 => Ok(Crossings::Two),
            _ => Err(Error::InvalidSetup(format!("number of crossings must be 1 or 2, got {q}"))),
        }
    }
}

/// Environment labels `(i1, i2)` of the created pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Environment {
    pub i1: usize,
    pub i2: usize,
}

impl Environment {
    /// `|10>_E`, the sector the logical qubit is encoded in.
    pub const TRACKED: Environment = Environment { i1: 1, i2: 0 };

    /// 16x2 isometry of the logical qubit with this environment.
    pub fn logical_iso(self, encoding: &LogicalEncoding) -> CMatrix {
        let start = extended_index(self.i1, self.i2, 0, 0);
        let mut out = CMatrix::zeros(16, 2);
        out.view_mut((start, 0), (4, 2)).copy_from(encoding.iso());
        out
    }
}

/// `B_q` on the 16-dim extended basis.
pub fn scenario_operator(cat: &FusionCategory, q: Crossings) -> Result<CMatrix> {
    let b = build_generator(cat, 5, CROSSING_POSITION)?;
    Ok((1..q.count()).fold(b.clone(), |acc, _| &b * acc))
}

/// Block `M_q`, its proportionality constant `c = M_00`, and the deviation
/// `||M/c - I||_F`.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioResult {
    pub q: Crossings,
    #[serde(rename = "M")]
    pub m: MatrixJson,
    pub deviation: f64,
    /// `arg c`, radians.
    pub theta: f64,
    /// `|c|`.
    pub modulus: f64,
}

impl ScenarioResult {
    fn from_block(q: Crossings, m: &CMatrix) -> Result<Self> {
        if m.norm() < ZERO_BLOCK_TOL {
            return Err(Error::ZeroBlock);
        }
        let c00 = m[(0, 0)];
        if c00.norm() < ZERO_BLOCK_TOL * m.norm() {
            // Nonzero but with a vanishing corner: as far from a multiple
            // of the identity as it gets.
            return Ok(ScenarioResult { q, m: m.into(), deviation: f64::INFINITY, theta: 0.0, modulus: 0.0 });
        }
        let deviation = (m / c00 - identity(2)).norm();
        Ok(ScenarioResult { q, m: m.into(), deviation, theta: c00.arg(), modulus: c00.norm() })
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::try_from(&self.m).expect("stored from a valid matrix")
    }

    /// Real and imaginary parts as CSV: `row,col,re,im`.
    pub fn to_csv(&self) -> String {
        crate::linalg::matrix_to_csv(&self.matrix())
    }
}

/// Exact `M_q` with the environment `|10>_E` at input and `output` at the
/// output. A vanishing block is reported as [`Error::ZeroBlock`].
pub fn extract_block(cat: &FusionCategory, q: Crossings, output: Environment) -> Result<ScenarioResult> {
    let enc = LogicalEncoding::from_category(cat);
    let b = scenario_operator(cat, q)?;
    let m = output.logical_iso(&enc).adjoint() * b * Environment::TRACKED.logical_iso(&enc);
    ScenarioResult::from_block(q, &m)
}

pub fn extract_m(cat: &FusionCategory, q: Crossings) -> Result<ScenarioResult> {
    extract_block(cat, q, Environment::TRACKED)
}

/// Outcome of the global-phase sweep.
#[derive(Debug, Clone, Serialize)]
pub struct PhaseSweep {
    pub q: Crossings,
    pub samples: usize,
    /// Largest `1 - |<psi|out>| / ||out||` over the sampled states.
    pub max_infidelity: f64,
    /// Largest spread of the acquired phase around `theta`.
    pub max_phase_spread: f64,
    pub theta: f64,
}

impl PhaseSweep {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_infidelity < tol && self.max_phase_spread < tol
    }
}

fn wrap(angle: f64) -> f64 {
    let t = angle.rem_euclid(std::f64::consts::TAU);
    if t > std::f64::consts::PI {
        t - std::f64::consts::TAU
    } else {
        t
    }
}

/// Apply `M_q` to `a|0_L> + b|1_L>`; returns the logical output.
pub fn apply_to_state(result: &ScenarioResult, a: C64, b: C64) -> Result<nalgebra::DVector<C64>> {
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidState(format!("amplitudes have norm {norm}, expected 1")));
    }
    Ok(result.matrix() * nalgebra::DVector::from_vec(vec![a, b]))
}

/// Push Haar-random logical states through `M_q` and compare each output
/// with the input up to the phase `theta_q`.
pub fn verify_global_phase(cat: &FusionCategory, q: Crossings, samples: usize, seed: u64) -> Result<PhaseSweep> {
    let result = extract_m(cat, q)?;
    let states: Vec<(C64, C64)> = (0..samples)
        .map(|s| {
            let mut rng = crate::rng::task_rng(seed, s as u64);
            let mut g = || rng.sample::<f64, _>(StandardNormal);
            let (a, b) = (c(g(), g()), c(g(), g()));
            let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
            (a / n, b / n)
        })
        .collect();
    let per_state = states
        .par_iter()
        .map(|&(a, b)| {
            let out = apply_to_state(&result, a, b)?;
            let overlap = a.conj() * out[0] + b.conj() * out[1];
            Ok((1.0 - overlap.norm() / out.norm(), wrap(overlap.arg() - result.theta).abs()))
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    let (max_infidelity, max_phase_spread) =
        per_state.iter().fold((0.0f64, 0.0f64), |(f, p), &(df, dp)| (f.max(df), p.max(dp)));
    Ok(PhaseSweep { q, samples, max_infidelity, max_phase_spread, theta: result.theta })
}

/// Hamiltonian `H` with `exp(-i H t) = u` and eigenvalues of `H t` in
/// `[-pi, pi)`.
fn hamiltonian_for(u: &CMatrix, t: f64) -> Result<CMatrix> {
    let (q, tri) = Schur::new(u.clone()).unpack();
    let n = u.nrows();
    let off_diag = (0..n).flat_map(|i| (0..i).map(move |j| (j, i))).map(|(i, j)| tri[(i, j)].norm()).fold(0.0, f64::max);
    if off_diag > 1e-9 {
        return Err(Error::NotUnitary { defect: off_diag });
    }
    let angles = nalgebra::DVector::from_iterator(n, (0..n).map(|k| c(-tri[(k, k)].arg() / t, 0.0)));
    Ok(&q * CMatrix::from_diagonal(&angles) * q.adjoint())
}

/// Noise settings of the simulated scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoisyScenario {
    /// Per-qubit T2 of the four extended-basis labels, seconds.
    pub t2: [f64; 4],
    /// Total duration of the crossing, seconds.
    pub duration: f64,
    /// Split-step count.
    pub steps: usize,
}

impl Default for NoisyScenario {
    fn default() -> Self {
        NoisyScenario { t2: [0.5; 4], duration: 48e-3, steps: 48 }
    }
}

impl NoisyScenario {
    pub fn from_noise(noise: &NoiseModel) -> Result<Self> {
        let rates = noise.dephasing_rates(4)?;
        let t2 = [0, 1, 2, 3].map(|q| if rates[q] > 0.0 { 1.0 / rates[q] } else { f64::INFINITY });
        Ok(NoisyScenario { t2, ..Default::default() })
    }

    fn rates(&self) -> Vec<f64> {
        self.t2.iter().map(|&t| if t.is_finite() { 1.0 / t } else { 0.0 }).collect()
    }
}

/// Noisy reconstruction of `M_q`.
#[derive(Debug, Clone, Serialize)]
pub struct NoisyResult {
    pub scenario: NoisyScenario,
    pub result: ScenarioResult,
    /// Weight of the dominant Kraus operator in the clipped Choi matrix.
    pub dominant_weight: f64,
    /// Total weight removed by eigenvalue clipping.
    pub clipped: f64,
}

/// Simulate `B_q` as a continuous evolution interleaved with dephasing on
/// all four labels, reconstruct the post-selected logical map by process
/// tomography, clip its Choi matrix to be positive, and read `M_q` off the
/// dominant Kraus operator.
pub fn extract_m_noisy(cat: &FusionCategory, q: Crossings, scenario: &NoisyScenario) -> Result<NoisyResult> {
    if scenario.steps == 0 || !(scenario.duration > 0.0) {
        return Err(Error::InvalidSetup("noisy scenario needs positive duration and step count".into()));
    }
    let dt = scenario.duration / scenario.steps as f64;
    let single = build_generator(cat, 5, CROSSING_POSITION)?;
    let h = hamiltonian_for(&single, 1.0)? * c(q.count() as f64 / scenario.duration, 0.0);
    let step_u = crate::linalg::expm_hermitian(&h, dt);
    let dephase = Superop::of(&Dephasing::new(scenario.rates(), dt)?);
    let step = Superop::unitary(&step_u).then(&dephase);
    let evolution = (1..scenario.steps).fold(step.clone(), |acc, _| acc.then(&step));

    let enc = LogicalEncoding::from_category(cat);
    let logical = Compressed::new(evolution, Environment::TRACKED.logical_iso(&enc))?;
    let ptm = qpt(&logical)?;

    // Choi matrix J = sum_ij R_ij / d  P_j^T (x) P_i
    let paulis = pauli_basis(1);
    let d = 2.0;
    let mut choi = CMatrix::zeros(4, 4);
    for (i, pi) in paulis.iter().enumerate() {
        for (j, pj) in paulis.iter().enumerate() {
            choi += crate::linalg::kron(&pj.transpose(), pi) * c(ptm.matrix()[(i, j)] / d, 0.0);
        }
    }
    let (values, vectors) = crate::linalg::hermitian_eigen(&choi);
    let clipped = values.iter().filter(|&&v| v < 0.0).fold(0.0, |acc, v| acc - v);
    let total: f64 = values.iter().map(|v| v.max(0.0)).sum();
    let top = values.len() - 1;
    let weight = values[top].max(0.0);
    // v[a d + i] = K[i][a]
    let kraus = CMatrix::from_fn(2, 2, |i, a| vectors[(a * 2 + i, top)] * weight.sqrt());
    let result = ScenarioResult::from_block(q, &kraus)?;
    Ok(NoisyResult {
        scenario: scenario.clone(),
        result,
        dominant_weight: if total > 0.0 { weight / total } else { 0.0 },
        clipped,
    })
}
