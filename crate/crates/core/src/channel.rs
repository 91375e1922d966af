//! Quantum channels on density matrices.
//!
//! Channels act on plain [`CMatrix`] density matrices for speed; validated
//! states live in [`crate::noise::DensityMatrix`]. Superoperators use the
//! row-major vectorization `vec(rho)[i d + j] = rho[i][j]`, under which
//! `vec(A rho B) = (A (x) B^T) vec(rho)`.

use crate::error::{Error, Result};
use crate::linalg::{c, ensure_unitary, identity, kron, pauli, pauli_basis, qubit_count, CMatrix};

pub trait Channel: Send + Sync {
    /// Hilbert-space dimension of inputs and outputs.
    fn dim(&self) -> usize;

    fn apply(&self, rho: &CMatrix) -> CMatrix;
}

impl<T: Channel + ?Sized> Channel for Box<T> {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        (**self).apply(rho)
    }
}

impl<T: Channel + ?Sized> Channel for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        (**self).apply(rho)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityChannel(pub usize);

impl Channel for IdentityChannel {
    fn dim(&self) -> usize {
        self.0
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        rho.clone()
    }
}

#[derive(Debug, Clone)]
pub struct UnitaryChannel {
    u: CMatrix,
}

impl UnitaryChannel {
    pub fn new(u: CMatrix) -> Result<Self> {
        ensure_unitary(&u, 1e-9)?;
        Ok(UnitaryChannel { u })
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.u
    }
}

impl Channel for UnitaryChannel {
    fn dim(&self) -> usize {
        self.u.nrows()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        &self.u * rho * self.u.adjoint()
    }
}

/// `rho -> sum_k p_k U_k rho U_k^dag`.
#[derive(Debug, Clone)]
pub struct UnitaryMixture {
    terms: Vec<(f64, CMatrix)>,
}

fn check_probability(name: &str, p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(Error::NonPhysicalNoise(format!("{name} must lie in [0, 1], got {p}")));
    }
    Ok(())
}

impl UnitaryMixture {
    pub fn new(terms: Vec<(f64, CMatrix)>) -> Result<Self> {
        let total: f64 = terms.iter().map(|t| t.0).sum();
        if terms.is_empty() || (total - 1.0).abs() > 1e-12 || terms.iter().any(|t| t.0 < 0.0) {
            return Err(Error::NonPhysicalNoise(format!("mixture weights must be nonnegative and sum to 1, got {total}")));
        }
        let dim = terms[0].1.nrows();
        for (_, u) in &terms {
            if u.nrows() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: u.nrows() });
            }
            ensure_unitary(u, 1e-9)?;
        }
        Ok(UnitaryMixture { terms })
    }

    /// Depolarizing channel `rho -> (1-p) rho + p I/d` on `n_qubits`,
    /// written as a uniform Pauli twirl.
    pub fn depolarizing(n_qubits: usize, p: f64) -> Result<Self> {
        check_probability("depolarizing probability", p)?;
        let basis = pauli_basis(n_qubits);
        let n = basis.len() as f64;
        let terms = basis
            .into_iter()
            .enumerate()
            .map(|(k, pauli)| (if k == 0 { 1.0 - p + p / n } else { p / n }, pauli))
            .collect();
        Self::new(terms)
    }

    /// Depolarizing channel on the range of `iso`, acting as identity on its
    /// complement.
    pub fn logical_depolarizing(iso: &CMatrix, p: f64) -> Result<Self> {
        check_probability("depolarizing probability", p)?;
        let complement = identity(iso.nrows()) - iso * iso.adjoint();
        let terms = (0..4)
            .map(|k| {
                let lifted = iso * pauli(k) * iso.adjoint() + &complement;
                (if k == 0 { 1.0 - 3.0 * p / 4.0 } else { p / 4.0 }, lifted)
            })
            .collect();
        Self::new(terms)
    }

    /// Z flip with probability `p` on one qubit of an `n_qubits` register.
    pub fn phase_flip(n_qubits: usize, qubit: usize, p: f64) -> Result<Self> {
        check_probability("phase-flip probability", p)?;
        let z = crate::linalg::embed_single(&pauli(3), qubit, n_qubits);
        Self::new(vec![(1.0 - p, identity(1 << n_qubits)), (p, z)])
    }
}

impl Channel for UnitaryMixture {
    fn dim(&self) -> usize {
        self.terms[0].1.nrows()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        self.terms
            .iter()
            .filter(|(p, _)| *p > 0.0)
            .fold(CMatrix::zeros(rho.nrows(), rho.ncols()), |acc, (p, u)| acc + (u * rho * u.adjoint()) * c(*p, 0.0))
    }
}

/// Channel given by Kraus operators.
#[derive(Debug, Clone)]
pub struct Kraus {
    ops: Vec<CMatrix>,
}

impl Kraus {
    /// Accepts trace-preserving sets, `sum K^dag K = I` within `1e-9`.
    pub fn new(ops: Vec<CMatrix>) -> Result<Self> {
        let dim = ops.first().map(|k| k.ncols()).ok_or_else(|| Error::NonPhysicalNoise("no Kraus operators".into()))?;
        let sum = ops.iter().fold(CMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
        let defect = crate::linalg::op_norm(&(sum - identity(dim)));
        if defect > 1e-9 {
            return Err(Error::NonPhysicalNoise(format!("Kraus operators are not trace preserving (defect {defect:.3e})")));
        }
        Ok(Kraus { ops })
    }

    pub fn ops(&self) -> &[CMatrix] {
        &self.ops
    }
}

impl Channel for Kraus {
    fn dim(&self) -> usize {
        self.ops[0].nrows()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        self.ops.iter().fold(CMatrix::zeros(rho.nrows(), rho.ncols()), |acc, k| acc + k * rho * k.adjoint())
    }
}

/// Pure dephasing in the computational basis for a fixed duration.
///
/// `rho_ab` is multiplied by `exp(-t sum_q gamma_q [bit_q(a) != bit_q(b)])`
/// with qubit 0 the most significant bit.
#[derive(Debug, Clone)]
pub struct Dephasing {
    rates: Vec<f64>,
    duration: f64,
    factors: CMatrix,
}

impl Dephasing {
    /// `rates` are `1/T2` per qubit, in 1/s.
    pub fn new(rates: Vec<f64>, duration: f64) -> Result<Self> {
        if rates.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
            return Err(Error::NonPhysicalNoise(format!("dephasing rates must be finite and >= 0, got {rates:?}")));
        }
        if !(duration.is_finite() && duration >= 0.0) {
            return Err(Error::NonPhysicalNoise(format!("duration must be finite and >= 0, got {duration}")));
        }
        let n = rates.len();
        let dim = 1usize << n;
        let factors = CMatrix::from_fn(dim, dim, |a, b| {
            let diff = a ^ b;
            let rate: f64 = (0..n).filter(|q| diff >> (n - 1 - q) & 1 == 1).map(|q| rates[q]).sum();
            c((-rate * duration).exp(), 0.0)
        });
        Ok(Dephasing { rates, duration, factors })
    }

    pub fn rates(&self) -> &[f64] {
        &self.rates
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }
}

impl Channel for Dephasing {
    fn dim(&self) -> usize {
        self.factors.nrows()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        rho.component_mul(&self.factors)
    }
}

/// Stages applied in order, first stage first.
#[derive(Default)]
pub struct Composed {
    stages: Vec<Box<dyn Channel>>,
}

impl Composed {
    pub fn new() -> Self {
        Composed::default()
    }

    pub fn then(mut self, stage: impl Channel + 'static) -> Result<Self> {
        if let Some(first) = self.stages.first() {
            if first.dim() != stage.dim() {
                return Err(Error::DimensionMismatch { expected: first.dim(), got: stage.dim() });
            }
        }
        self.stages.push(Box::new(stage));
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }
}

impl Channel for Composed {
    fn dim(&self) -> usize {
        self.stages.first().map_or(0, |s| s.dim())
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        self.stages.iter().fold(rho.clone(), |acc, s| s.apply(&acc))
    }
}

/// Restriction of a channel to the range of an isometry:
/// `rho_L -> iso^dag E(iso rho_L iso^dag) iso`.
pub struct Compressed<C> {
    inner: C,
    iso: CMatrix,
}

impl<C: Channel> Compressed<C> {
    pub fn new(inner: C, iso: CMatrix) -> Result<Self> {
        if iso.nrows() != inner.dim() {
            return Err(Error::DimensionMismatch { expected: inner.dim(), got: iso.nrows() });
        }
        Ok(Compressed { inner, iso })
    }
}

impl<C: Channel> Channel for Compressed<C> {
    fn dim(&self) -> usize {
        self.iso.ncols()
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        self.iso.adjoint() * self.inner.apply(&(&self.iso * rho * self.iso.adjoint())) * &self.iso
    }
}

/// Superoperator matrix of a channel in the row-major vectorization.
#[derive(Debug, Clone, PartialEq)]
pub struct Superop {
    dim: usize,
    matrix: CMatrix,
}

impl Superop {
    pub fn of(channel: &dyn Channel) -> Self {
        let d = channel.dim();
        let mut matrix = CMatrix::zeros(d * d, d * d);
        for k in 0..d {
            for l in 0..d {
                let mut e = CMatrix::zeros(d, d);
                e[(k, l)] = c(1.0, 0.0);
                let out = channel.apply(&e);
                for i in 0..d {
                    for j in 0..d {
                        matrix[(i * d + j, k * d + l)] = out[(i, j)];
                    }
                }
            }
        }
        Superop { dim: d, matrix }
    }

    pub fn unitary(u: &CMatrix) -> Self {
        Superop { dim: u.nrows(), matrix: kron(u, &u.map(|z| z.conj())) }
    }

    pub fn identity(dim: usize) -> Self {
        Superop { dim, matrix: identity(dim * dim) }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Superop) -> Superop {
        Superop { dim: self.dim, matrix: &next.matrix * &self.matrix }
    }
}

impl Channel for Superop {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        let d = self.dim;
        let v = nalgebra::DVector::from_iterator(d * d, (0..d * d).map(|k| rho[(k / d, k % d)]));
        let out = &self.matrix * v;
        CMatrix::from_fn(d, d, |i, j| out[i * d + j])
    }
}

/// Number of qubits behind a channel's dimension.
pub fn channel_qubits(channel: &dyn Channel) -> Result<usize> {
    qubit_count(channel.dim()).ok_or(Error::DimensionMismatch { expected: channel.dim().next_power_of_two(), got: channel.dim() })
}

/// Maximally mixed state `I/d`.
pub fn maximally_mixed(dim: usize) -> CMatrix {
    identity(dim) * c(1.0 / dim as f64, 0.0)
}

/// Pure state `|psi><psi|`.
pub fn projector(psi: &nalgebra::DVector<crate::linalg::C64>) -> CMatrix {
    psi * psi.adjoint()
}
