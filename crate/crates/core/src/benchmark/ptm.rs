use nalgebra::{DMatrix, DVector};

use crate::channel::Channel;
use crate::error::{Error, Result};
use crate::linalg::{c, identity, pauli_basis, qubit_count, trace, CMatrix, C64};

/// Pauli transfer matrix `R_ij = tr(P_i E(P_j)) / d` over unnormalized
/// Pauli strings in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTransferMap {
    dim: usize,
    matrix: DMatrix<f64>,
}

fn paulis_for(dim: usize) -> Result<Vec<CMatrix>> {
    let n = qubit_count(dim).ok_or(Error::DimensionMismatch { expected: dim.next_power_of_two(), got: dim })?;
    Ok(pauli_basis(n))
}

fn pauli_coefficients(paulis: &[CMatrix], rho: &CMatrix) -> DVector<f64> {
    DVector::from_iterator(paulis.len(), paulis.iter().map(|p| trace(&(p * rho)).re))
}

impl PauliTransferMap {
    /// Transfer matrix computed by applying the channel to each Pauli
    /// operator directly.
    pub fn of_channel(channel: &dyn Channel) -> Result<Self> {
        let dim = channel.dim();
        let paulis = paulis_for(dim)?;
        let n = paulis.len();
        let mut matrix = DMatrix::zeros(n, n);
        for (j, pj) in paulis.iter().enumerate() {
            let out = channel.apply(pj);
            for (i, pi) in paulis.iter().enumerate() {
                matrix[(i, j)] = trace(&(pi * &out)).re / dim as f64;
            }
        }
        Ok(PauliTransferMap { dim, matrix })
    }

    pub fn of_unitary(u: &CMatrix) -> Result<Self> {
        Self::of_channel(&crate::channel::UnitaryChannel::new(u.clone())?)
    }

    pub fn from_matrix(dim: usize, matrix: DMatrix<f64>) -> Result<Self> {
        if matrix.nrows() != dim * dim || matrix.ncols() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, got: matrix.nrows() });
        }
        Ok(PauliTransferMap { dim, matrix })
    }

    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PauliTransferMap) -> PauliTransferMap {
        PauliTransferMap { dim: self.dim, matrix: &next.matrix * &self.matrix }
    }

    /// Apply the map to a density matrix.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let paulis = paulis_for(self.dim)?;
        let out = &self.matrix * pauli_coefficients(&paulis, rho);
        Ok(paulis
            .iter()
            .zip(out.iter())
            .fold(CMatrix::zeros(self.dim, self.dim), |acc, (p, x)| acc + p * c(x / self.dim as f64, 0.0)))
    }

    /// Block acting on traceless operators.
    pub fn unital_block(&self) -> DMatrix<f64> {
        let n = self.matrix.nrows();
        self.matrix.view((1, 1), (n - 1, n - 1)).into_owned()
    }

    /// Transfer map of `rho_L -> iso^dag E(iso rho_L iso^dag) iso` on the
    /// range of an isometry.
    pub fn project(&self, iso: &CMatrix) -> Result<PauliTransferMap> {
        if iso.nrows() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: iso.nrows() });
        }
        let small = iso.ncols();
        let inner = paulis_for(small)?;
        let outer = paulis_for(self.dim)?;
        let n_small = inner.len();
        // lift[a][j] = tr(Q_a iso P_j iso^dag) / D, drop[i][a] = tr(P_i iso^dag Q_a iso) / d
        let lift = DMatrix::from_fn(outer.len(), n_small, |a, j| {
            trace(&(&outer[a] * iso * &inner[j] * iso.adjoint())).re / self.dim as f64
        });
        let drop = DMatrix::from_fn(n_small, outer.len(), |i, a| trace(&(&inner[i] * iso.adjoint() * &outer[a] * iso)).re);
        let matrix = &drop * &self.matrix * &lift / small as f64;
        Ok(PauliTransferMap { dim: small, matrix })
    }

    /// Row-major entries, for JSON export.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.matrix.nrows()).map(|i| self.matrix.row(i).iter().copied().collect()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.matrix.nrows() {
            let row: Vec<String> = (0..self.matrix.ncols()).map(|j| format!("{:e}", self.matrix[(i, j)])).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

impl Channel for PauliTransferMap {
    fn dim(&self) -> usize {
        self.dim
    }

    fn apply(&self, rho: &CMatrix) -> CMatrix {
        PauliTransferMap::apply(self, rho).expect("dimension checked at construction")
    }
}

const LINEARITY_TOL: f64 = 1e-8;

/// Process tomography from the informationally complete states `I/d` and
/// `(I + P_j)/d`, followed by a linearity check on an extra probe state.
pub fn qpt(channel: &dyn Channel) -> Result<PauliTransferMap> {
    let dim = channel.dim();
    let paulis = paulis_for(dim)?;
    let n = paulis.len();
    let scale = c(1.0 / dim as f64, 0.0);
    let mixed_out = channel.apply(&(identity(dim) * scale));
    let mut matrix = DMatrix::zeros(n, n);
    for (j, pj) in paulis.iter().enumerate() {
        // E(P_j) = d E((I + P_j)/d) - d E(I/d); for j = 0 this is d E(I/d).
        let image = if j == 0 {
            &mixed_out / scale
        } else {
            (channel.apply(&((identity(dim) + pj) * scale)) - &mixed_out) / scale
        };
        for (i, pi) in paulis.iter().enumerate() {
            matrix[(i, j)] = trace(&(pi * &image)).re / dim as f64;
        }
    }
    let ptm = PauliTransferMap { dim, matrix };

    let probe = probe_state(dim);
    let predicted = ptm.apply(&probe)?;
    let actual = channel.apply(&probe);
    let residual = crate::linalg::max_abs_diff(&predicted, &actual);
    if residual > LINEARITY_TOL {
        return Err(Error::NonLinearChannel { residual });
    }
    Ok(ptm)
}

/// A fixed pure state with support on every basis vector and complex
/// amplitudes.
fn probe_state(dim: usize) -> CMatrix {
    let psi = DVector::from_iterator(dim, (0..dim).map(|k| C64::from_polar(1.0 + k as f64, 0.7 * k as f64 + 0.3)));
    let psi = &psi / C64::new(psi.norm(), 0.0);
    &psi * psi.adjoint()
}

fn check_dims(zeta: &PauliTransferMap, ideal: &CMatrix) -> Result<()> {
    if ideal.nrows() != zeta.dim || ideal.ncols() != zeta.dim {
        return Err(Error::DimensionMismatch { expected: zeta.dim, got: ideal.nrows() });
    }
    Ok(())
}

/// `tr(R_ideal^T R) / d^2`.
pub fn process_fidelity(zeta: &PauliTransferMap, ideal: &CMatrix) -> Result<f64> {
    check_dims(zeta, ideal)?;
    let r_ideal = PauliTransferMap::of_unitary(ideal)?;
    let d2 = (zeta.dim * zeta.dim) as f64;
    Ok(r_ideal.matrix.component_mul(&zeta.matrix).sum() / d2)
}

/// `(d F_pro + 1) / (d + 1)`.
pub fn average_gate_fidelity(zeta: &PauliTransferMap, ideal: &CMatrix) -> Result<f64> {
    let d = zeta.dim as f64;
    Ok((d * process_fidelity(zeta, ideal)? + 1.0) / (d + 1.0))
}

/// `||T||_F^2 / (d^2 - 1)` for the traceless block `T`.
pub fn unitarity(zeta: &PauliTransferMap) -> f64 {
    let t = zeta.unital_block();
    t.norm_squared() / t.nrows() as f64
}

/// Rescaled purity `d/(d-1) tr(rho^2) - 1/(d-1)`: 1 for pure states, 0 for
/// the maximally mixed state.
pub fn purity_of(rho: &CMatrix) -> f64 {
    let d = rho.nrows() as f64;
    let tr2: f64 = rho.iter().map(|z| z.norm_sqr()).sum();
    d / (d - 1.0) * tr2 - 1.0 / (d - 1.0)
}
