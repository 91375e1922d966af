use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, identity, max_abs_diff, trace, CMatrix, C64};

/// A validated density matrix: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const POSITIVITY_TOL: f64 = 1e-10;

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        let rho = DensityMatrix(m);
        rho.check(HERMITIAN_TOL, TRACE_TOL, POSITIVITY_TOL)?;
        Ok(rho)
    }

    /// `|psi><psi|` for a normalized `psi`.
    pub fn pure(psi: &DVector<C64>) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidState(format!("state vector has norm {norm}")));
        }
        Ok(DensityMatrix(psi * psi.adjoint()))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        DensityMatrix(identity(dim) / C64::new(dim as f64, 0.0))
    }

    /// Check the defining properties with explicit tolerances.
    pub fn check(&self, hermitian_tol: f64, trace_tol: f64, positivity_tol: f64) -> Result<()> {
        let m = &self.0;
        if !m.is_square() {
            return Err(Error::InvalidState(format!("{}x{} matrix is not square", m.nrows(), m.ncols())));
        }
        let herm = max_abs_diff(m, &m.adjoint());
        if herm > hermitian_tol {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:.3e})")));
        }
        let tr = trace(m);
        if (tr - C64::new(1.0, 0.0)).norm() > trace_tol {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min_eig = hermitian_eigen(m).0.first().copied().unwrap_or(0.0);
        if min_eig < -positivity_tol {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// CSV with one line per entry: `row,col,re,im`.
    pub fn to_csv(&self) -> String {
        crate::linalg::matrix_to_csv(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(identity(2) * c(0.5, 0.0)).is_ok());
        assert!(DensityMatrix::new(identity(2)).is_err());
        let neg = CMatrix::from_fn(2, 2, |i, j| c(if i == j { 0.5 } else { 0.8 }, 0.0));
        assert!(DensityMatrix::new(neg).is_err());
        let non_herm = CMatrix::from_fn(2, 2, |i, j| c(if i == j { 0.5 } else { 0.0 }, if i < j { 0.1 } else { 0.0 }));
        assert!(DensityMatrix::new(non_herm).is_err());
    }

    #[test]
    fn purity_extremes() {
        let psi = DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]);
        assert!((DensityMatrix::pure(&psi).unwrap().purity() - 1.0).abs() < 1e-14);
        assert!((DensityMatrix::maximally_mixed(4).purity() - 0.25).abs() < 1e-14);
    }
}
