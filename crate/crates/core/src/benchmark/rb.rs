//! Randomized and purity benchmarking on the two-qubit register.
//!
//! Every sequence is simulated on the 4-dim register with logical Cliffords
//! lifted through the encoding isometry, so physical noise can leak out of
//! the logical subspace. The benchmark space fixes the readout and the `d`
//! of the fidelity formulas: in the logical space survival and purity are
//! read from the 2x2 logical block (`d = 2`), in the physical space purity
//! is taken on the whole register (`d = 4`).

use nalgebra::DVector;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::clifford::CliffordGroup;
use super::fit::{fit_decay, DecayFit, DecayPoint};
use super::ptm::{average_gate_fidelity, purity_of, PauliTransferMap};
use crate::braid_space::{BraidSpace, LogicalEncoding, Space};
use crate::channel::{Channel, Composed, Dephasing, IdentityChannel, Superop, UnitaryChannel, UnitaryMixture};
use crate::compiler::{evaluate, BraidWord};
use crate::error::{Error, Result};
use crate::linalg::{embed_single, CMatrix, C64};
use crate::noise::{braid_word_channel, rotation, Axis, NoiseModel};
use crate::rng::{stream_id, task_rng};

const REGISTER_DIM: usize = 4;

fn check_space(space: Space) -> Result<()> {
    match space {
        Space::Logical | Space::Physical => Ok(()),
        Space::Extended => Err(Error::InvalidSetup("benchmarks run in the logical or physical space".into())),
    }
}

/// Formula dimension of a benchmark space.
pub fn formula_dim(space: Space) -> f64 {
    match space {
        Space::Logical => 2.0,
        _ => 4.0,
    }
}

/// Gate-level noise after an ideal gate of the given duration: over-rotation
/// about the logical x axis, then depolarizing, then dephasing. In the
/// logical space the depolarizing acts on the logical qubit; in the physical
/// space on the whole register.
pub fn gate_noise(space: Space, noise: &NoiseModel, iso: &CMatrix, duration: f64) -> Result<Superop> {
    check_space(space)?;
    let mut channel = Composed::new().then(IdentityChannel(REGISTER_DIM))?;
    if noise.over_rotation != 0.0 {
        let r = lift(iso, &rotation(Axis::X, noise.over_rotation));
        channel = channel.then(UnitaryChannel::new(r)?)?;
    }
    if noise.depolarizing > 0.0 {
        channel = match space {
            Space::Logical => channel.then(UnitaryMixture::logical_depolarizing(iso, noise.depolarizing)?)?,
            _ => channel.then(UnitaryMixture::depolarizing(2, noise.depolarizing)?)?,
        };
    }
    if noise.has_dephasing() && duration > 0.0 {
        channel = channel.then(Dephasing::new(noise.dephasing_rates(2)?, duration)?)?;
    }
    Ok(Superop::of(&channel))
}

/// A gate interleaved between random Cliffords: the ideal logical Clifford
/// it stands for and its noisy implementation on the register.
#[derive(Debug, Clone)]
pub struct Target {
    ideal: CMatrix,
    // register unitary the physical-space fidelity is measured against
    register_ideal: CMatrix,
    channel: Superop,
}

impl Target {
    /// A braid word simulated letter by letter with dephasing, followed by
    /// the gate-level terms of `noise`. The word must implement a Clifford
    /// up to `0.05` in phase-free operator distance.
    pub fn braid_word(word: &BraidWord, noise: &NoiseModel, braids: &BraidSpace, space: Space) -> Result<Self> {
        let logical = evaluate(word, Space::Logical, braids);
        let iso = braids.encoding().iso();
        let group = CliffordGroup::new(iso)?;
        let index = group
            .index_of(&logical, 0.05)
            .ok_or_else(|| Error::InvalidSetup(format!("braid word `{word}` is not close to a Clifford gate")))?;
        let ideal = group.element(index).clone();
        let braiding = braid_word_channel(word, noise, braids)?;
        let gate_level = NoiseModel { t2: Vec::new(), ..noise.clone() };
        let channel = braiding.then(&gate_noise(space, &gate_level, iso, 0.0)?);
        // The word's own action on the logical complement, with the ideal
        // Clifford at the word's logical phase inside the code space.
        let phase = crate::linalg::trace(&(ideal.adjoint() * &logical));
        let complement = crate::linalg::identity(iso.nrows()) - iso * iso.adjoint();
        let register_ideal = iso * &ideal * iso.adjoint() * (phase / phase.norm())
            + &complement * evaluate(word, Space::Physical, braids) * &complement;
        Ok(Target { ideal, register_ideal, channel })
    }

    /// An ideal logical unitary followed by gate noise of the given duration.
    pub fn gate(ideal: &CMatrix, noise: &NoiseModel, space: Space, iso: &CMatrix, duration: f64) -> Result<Self> {
        let register_ideal = lift(iso, ideal);
        let channel = Superop::unitary(&register_ideal).then(&gate_noise(space, noise, iso, duration)?);
        Ok(Target { ideal: ideal.clone(), register_ideal, channel })
    }

    pub fn ideal(&self) -> &CMatrix {
        &self.ideal
    }

    pub fn channel(&self) -> &Superop {
        &self.channel
    }

    /// Average gate fidelity of the noisy implementation: on the logical
    /// block against the ideal Clifford (`d = 2`), or on the register
    /// (`d = 4`). For a braid word the register ideal keeps the word's own
    /// action on the logical complement, which no benchmark sequence probes.
    pub fn true_fidelity(&self, space: Space, iso: &CMatrix) -> Result<f64> {
        check_space(space)?;
        let ptm = PauliTransferMap::of_channel(&self.channel)?;
        match space {
            Space::Logical => average_gate_fidelity(&ptm.project(iso)?, &self.ideal),
            _ => average_gate_fidelity(&ptm, &self.register_ideal),
        }
    }
}

/// Average gate fidelity of a register channel against a logical unitary:
/// on the logical block (`d = 2`) or on the register against the
/// identity-extended ideal (`d = 4`).
pub fn space_fidelity(channel: &Superop, ideal: &CMatrix, space: Space, iso: &CMatrix) -> Result<f64> {
    check_space(space)?;
    let ptm = PauliTransferMap::of_channel(channel)?;
    match space {
        Space::Logical => average_gate_fidelity(&ptm.project(iso)?, ideal),
        _ => average_gate_fidelity(&ptm, &lift(iso, ideal)),
    }
}

fn lift(iso: &CMatrix, u: &CMatrix) -> CMatrix {
    let complement = crate::linalg::identity(iso.nrows()) - iso * iso.adjoint();
    iso * u * iso.adjoint() + complement
}

/// Sequence lengths, sequences per length, and master seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceSettings {
    pub m_values: Vec<usize>,
    pub k: usize,
    pub seed: u64,
}

impl SequenceSettings {
    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidSetup(format!("need at least 2 sequences per length, got {}", self.k)));
        }
        if self.m_values.is_empty() || self.m_values.contains(&0) {
            return Err(Error::InvalidSetup("sequence lengths must be a nonempty list of positive integers".into()));
        }
        Ok(())
    }
}

/// Noisy Cliffords, an optional interleaved target, and the readout model.
pub struct GateSet {
    space: Space,
    iso: CMatrix,
    group: CliffordGroup,
    // noisy superoperator of each lifted Clifford
    cliffords: Vec<Superop>,
    target: Option<(usize, CMatrix)>,
    initial: DVector<C64>,
    spam: Option<CMatrix>,
}

fn vec_of(rho: &CMatrix) -> DVector<C64> {
    let d = rho.nrows();
    DVector::from_iterator(d * d, (0..d * d).map(|k| rho[(k / d, k % d)]))
}

fn mat_of(v: &DVector<C64>) -> CMatrix {
    let d = (v.len() as f64).sqrt() as usize;
    CMatrix::from_fn(d, d, |i, j| v[i * d + j])
}

impl GateSet {
    /// Cliffords take `noise.durations.clifford` each; state preparation
    /// dephases for `noise.durations.state_prep`.
    pub fn new(space: Space, noise: &NoiseModel, encoding: &LogicalEncoding) -> Result<Self> {
        check_space(space)?;
        noise.validate()?;
        let iso = encoding.iso().clone();
        let group = CliffordGroup::new(&iso)?;
        let after = gate_noise(space, noise, &iso, noise.durations.clifford)?;
        let cliffords = (0..group.len()).map(|c| Superop::unitary(group.lifted(c)).then(&after)).collect();
        let ket0 = iso.column(0).into_owned();
        let mut rho0 = &ket0 * ket0.adjoint();
        if noise.has_dephasing() {
            rho0 = Dephasing::new(noise.dephasing_rates(2)?, noise.durations.state_prep)?.apply(&rho0);
        }
        Ok(GateSet { space, iso, group, cliffords, target: None, initial: vec_of(&rho0), spam: None })
    }

    pub fn with_target(mut self, target: &Target) -> Result<Self> {
        let index = self
            .group
            .index_of(target.ideal(), 1e-9)
            .ok_or_else(|| Error::InvalidSetup("interleaved target must be a Clifford".into()))?;
        self.target = Some((index, target.channel().matrix().clone()));
        Ok(self)
    }

    /// Channel applied right before every measurement.
    pub fn with_spam(mut self, channel: &dyn Channel) -> Result<Self> {
        if channel.dim() != REGISTER_DIM {
            return Err(Error::DimensionMismatch { expected: REGISTER_DIM, got: channel.dim() });
        }
        self.spam = Some(Superop::of(channel).matrix().clone());
        Ok(self)
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn iso(&self) -> &CMatrix {
        &self.iso
    }

    /// Mean true fidelity of the noisy Cliffords, the quantity reference
    /// RB estimates.
    pub fn clifford_fidelity(&self) -> Result<f64> {
        let total = (0..self.group.len())
            .map(|c| space_fidelity(&self.cliffords[c], self.group.element(c), self.space, &self.iso))
            .sum::<Result<f64>>()?;
        Ok(total / self.group.len() as f64)
    }

    /// Final register state of one random sequence of `m` Cliffords.
    fn run_sequence(&self, m: usize, interleaved: bool, recovery: bool, rng: &mut impl Rng) -> Result<CMatrix> {
        let target = match (interleaved, &self.target) {
            (false, _) => None,
            (true, Some(t)) => Some(t),
            (true, None) => return Err(Error::InvalidSetup("interleaved run without a target".into())),
        };
        let mut state = self.initial.clone();
        let mut net = self.group.index_of(&crate::linalg::identity(2), 1e-12).expect("identity is a Clifford");
        for _ in 0..m {
            let c = rng.random_range(0..self.group.len());
            state = self.cliffords[c].matrix() * state;
            net = self.group.product(c, net);
            if let Some((t, channel)) = target {
                state = channel * state;
                net = self.group.product(*t, net);
            }
        }
        if recovery {
            state = self.cliffords[self.group.inverse(net)].matrix() * state;
        }
        if let Some(spam) = &self.spam {
            state = spam * state;
        }
        Ok(mat_of(&state))
    }

    fn logical_block(&self, rho: &CMatrix) -> CMatrix {
        self.iso.adjoint() * rho * &self.iso
    }

    fn survival(&self, rho: &CMatrix) -> f64 {
        self.logical_block(rho)[(0, 0)].re
    }

    fn purity(&self, rho: &CMatrix) -> f64 {
        match self.space {
            Space::Logical => purity_of(&self.logical_block(rho)),
            _ => purity_of(rho),
        }
    }

    fn collect(&self, tag: u16, settings: &SequenceSettings, interleaved: bool, recovery: bool) -> Result<Vec<DecayPoint>> {
        settings.validate()?;
        let tasks: Vec<(usize, usize)> =
            (0..settings.m_values.len()).flat_map(|row| (0..settings.k).map(move |s| (row, s))).collect();
        let outcomes = tasks
            .par_iter()
            .map(|&(row, s)| {
                let mut rng = task_rng(settings.seed, stream_id(tag, row as u32, s as u32));
                let rho = self.run_sequence(settings.m_values[row], interleaved, recovery, &mut rng)?;
                Ok(if recovery { self.survival(&rho) } else { self.purity(&rho) })
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(settings
            .m_values
            .iter()
            .enumerate()
            .map(|(row, &m)| {
                let values = &outcomes[row * settings.k..(row + 1) * settings.k];
                let n = values.len() as f64;
                let mean = values.iter().sum::<f64>() / n;
                let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
                DecayPoint { m, mean, stddev: var.sqrt(), k: settings.k }
            })
            .collect())
    }

    /// Reference RB: random Clifford sequences closed by the recovery
    /// Clifford, fitted to `A + B f^m`.
    pub fn rb_reference(&self, settings: &SequenceSettings) -> Result<RbResult> {
        let fit = fit_decay(&self.collect(1, settings, false, true)?, 0)?;
        let d = formula_dim(self.space);
        let fidelity = 1.0 - (1.0 - fit.rate) * (d - 1.0) / d;
        Ok(RbResult { fit, fidelity })
    }

    /// Interleaved RB of the target against a reference run.
    pub fn rb_interleaved(&self, settings: &SequenceSettings, reference: &RbResult) -> Result<InterleavedResult> {
        let fit = fit_decay(&self.collect(2, settings, true, true)?, 0)?;
        let d = formula_dim(self.space);
        let ratio = fit.rate / reference.fit.rate;
        let fidelity = 1.0 - (1.0 - ratio) * (d - 1.0) / d;
        Ok(InterleavedResult { fit, fidelity, rate_exceeds_reference: ratio > 1.0 })
    }

    /// Purity benchmarking: the same sequences without recovery, purity read
    /// out at the end, fitted to `A + B u^(m-1)`.
    pub fn pb_run(&self, settings: &SequenceSettings, interleaved: bool) -> Result<PbResult> {
        let tag = if interleaved { 4 } else { 3 };
        let fit = fit_decay(&self.collect(tag, settings, interleaved, false)?, 1)?;
        let d = formula_dim(self.space);
        let incoherent_error = (1.0 - fit.rate.sqrt()) * (d - 1.0) / d;
        Ok(PbResult { fit, incoherent_error })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RbResult {
    pub fit: DecayFit,
    /// Average fidelity per Clifford.
    pub fidelity: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct InterleavedResult {
    pub fit: DecayFit,
    /// Estimated average fidelity of the target.
    pub fidelity: f64,
    /// The interleaved decay was slower than the reference one, which
    /// makes the estimated infidelity negative.
    pub rate_exceeds_reference: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PbResult {
    /// Fit with `rate` the unitarity `u`.
    pub fit: DecayFit,
    /// `(1 - sqrt(u)) (d-1)/d` for this line.
    pub incoherent_error: f64,
}

/// Split of the target's infidelity into incoherent and coherent parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorBudget {
    pub total_infidelity: f64,
    pub incoherent: f64,
    pub coherent: f64,
    /// The coherent part came out below `-COHERENT_TOLERANCE`.
    pub negative_coherent: bool,
}

/// Slack allowed for a negative coherent component from fit noise.
pub const COHERENT_TOLERANCE: f64 = 3e-3;

pub fn error_budget(space: Space, rb_int: &InterleavedResult, pb_ref: &PbResult, pb_int: &PbResult) -> ErrorBudget {
    let d = formula_dim(space);
    let total_infidelity = 1.0 - rb_int.fidelity;
    let incoherent = (1.0 - (pb_int.fit.rate / pb_ref.fit.rate).sqrt()) * (d - 1.0) / d;
    let coherent = total_infidelity - incoherent;
    ErrorBudget { total_infidelity, incoherent, coherent, negative_coherent: coherent < -COHERENT_TOLERANCE }
}

/// CSV with columns `m,mean,stddev,k`.
pub fn decay_csv(points: &[DecayPoint]) -> String {
    let mut out = String::from("m,mean,stddev,k\n");
    for p in points {
        out.push_str(&format!("{},{:.12e},{:.12e},{}\n", p.m, p.mean, p.stddev, p.k));
    }
    out
}

/// Qubit-0 Pauli X on the register, handy as a coherent SPAM error.
pub fn register_x(qubit: usize) -> CMatrix {
    embed_single(&crate::linalg::pauli(1), qubit, 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> SequenceSettings {
        SequenceSettings { m_values: vec![1, 2, 4, 8, 16, 32], k: 8, seed: 11 }
    }

    #[test]
    fn noiseless_cliffords_survive() {
        let enc = LogicalEncoding::fibonacci();
        let set = GateSet::new(Space::Logical, &NoiseModel::noiseless(), &enc).unwrap();
        let rb = set.rb_reference(&settings()).unwrap();
        assert!((rb.fit.rate - 1.0).abs() < 1e-9);
        for p in &rb.fit.points {
            assert!((p.mean - 1.0).abs() < 1e-10);
        }
        let pb = set.pb_run(&settings(), false).unwrap();
        assert!(pb.fit.points.iter().all(|p| (p.mean - 1.0).abs() < 1e-10));
    }

    #[test]
    fn depolarizing_decay_matches_closed_form() {
        let enc = LogicalEncoding::fibonacci();
        let p = 0.02;
        let set = GateSet::new(Space::Logical, &NoiseModel::noiseless().with_depolarizing(p), &enc).unwrap();
        let rb = set.rb_reference(&settings()).unwrap();
        assert!((rb.fit.rate - (1.0 - p)).abs() < 1e-8, "{:?}", rb.fit);
        assert!((rb.fidelity - (1.0 - p / 2.0)).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_settings() {
        let enc = LogicalEncoding::fibonacci();
        let set = GateSet::new(Space::Logical, &NoiseModel::noiseless(), &enc).unwrap();
        let bad = SequenceSettings { m_values: vec![1, 2], k: 1, seed: 0 };
        assert!(set.rb_reference(&bad).is_err());
        assert!(set.pb_run(&settings(), true).is_err());
        assert!(GateSet::new(Space::Extended, &NoiseModel::noiseless(), &enc).is_err());
    }

    #[test]
    fn same_seed_same_points() {
        let enc = LogicalEncoding::fibonacci();
        let set = GateSet::new(Space::Logical, &NoiseModel::dephasing(&[0.3, 0.3]), &enc).unwrap();
        let a = set.rb_reference(&settings()).unwrap();
        let b = set.rb_reference(&settings()).unwrap();
        assert_eq!(a.fit.points, b.fit.points);
    }
}
