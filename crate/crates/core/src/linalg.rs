//! Small dense complex linear-algebra toolkit built on `nalgebra`.
//!
//! Every matrix in the workbench is at most 16x16, so everything here is
//! plain dense arithmetic on [`CMatrix`]. Multi-qubit index conventions are
//! lexicographic with the first qubit as the most significant bit.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_rows(rows: &[&[C64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn from_real(n: usize, m: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_fn(n, m, |i, j| c(data[i * m + j], 0.0))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().max()
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "shape mismatch");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `||U U^dag - I||` in operator norm.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    op_norm(&(u * u.adjoint() - identity(u.nrows())))
}

pub fn ensure_square(m: &CMatrix, dim: usize) -> Result<()> {
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: m.nrows().max(m.ncols()) });
    }
    Ok(())
}

pub fn ensure_unitary(u: &CMatrix, tol: f64) -> Result<()> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch { expected: u.nrows(), got: u.ncols() });
    }
    let defect = unitarity_defect(u);
    if defect > tol {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

/// `u^p` for a unitary `u`; negative powers use the adjoint.
pub fn unitary_power(u: &CMatrix, p: i32) -> CMatrix {
    let base = if p < 0 { u.adjoint() } else { u.clone() };
    let mut out = identity(u.nrows());
    for _ in 0..p.unsigned_abs() {
        out = &out * &base;
    }
    out
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

/// Hilbert-Schmidt inner product `tr(a^dag b)`.
pub fn hs_inner(a: &CMatrix, b: &CMatrix) -> C64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum()
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and
/// the matching eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let herm = (m + m.adjoint()) * c(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| eig.eigenvectors[(i, order[j])]);
    (values, vectors)
}

/// `exp(-i h t)` for Hermitian `h`.
pub fn expm_hermitian(h: &CMatrix, t: f64) -> CMatrix {
    let (values, vectors) = hermitian_eigen(h);
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|&e| cis(-e * t)),
    ));
    &vectors * phases * vectors.adjoint()
}

/// Eigenphases in `(-pi, pi]` of a unitary matrix.
pub fn eigenphases(u: &CMatrix) -> Vec<f64> {
    if u.nrows() == 1 {
        return vec![u[(0, 0)].arg()];
    }
    let schur = nalgebra::linalg::Schur::new(u.clone());
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|k| t[(k, k)].arg()).collect()
}

/// Single-qubit Pauli matrix by index 0..4 = I, X, Y, Z.
pub fn pauli(index: usize) -> CMatrix {
    match index {
        0 => from_rows(&[&[ONE, ZERO], &[ZERO, ONE]]),
        1 => from_rows(&[&[ZERO, ONE], &[ONE, ZERO]]),
        2 => from_rows(&[&[ZERO, -I], &[I, ZERO]]),
        3 => from_rows(&[&[ONE, ZERO], &[ZERO, -ONE]]),
        _ => panic!("pauli index out of range: {index}"),
    }
}

/// All `4^n` unnormalized n-qubit Pauli strings, lexicographic in
/// (I, X, Y, Z) with qubit 0 as the leading factor.
pub fn pauli_basis(n_qubits: usize) -> Vec<CMatrix> {
    let mut basis = vec![identity(1)];
    for _ in 0..n_qubits {
        basis = basis
            .iter()
            .flat_map(|b| (0..4).map(move |k| kron(b, &pauli(k))))
            .collect();
    }
    basis
}

/// Operator `op` (2x2) acting on `qubit` of an `n_qubits` register.
pub fn embed_single(op: &CMatrix, qubit: usize, n_qubits: usize) -> CMatrix {
    let mut out = identity(1);
    for q in 0..n_qubits {
        out = if q == qubit { kron(&out, op) } else { kron(&out, &identity(2)) };
    }
    out
}

/// Number of qubits of a `2^n`-dimensional space.
pub fn qubit_count(dim: usize) -> Option<usize> {
    dim.is_power_of_two().then(|| dim.trailing_zeros() as usize)
}

/// JSON form of a complex matrix: entries as `[re, im]` pairs, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&CMatrix> for MatrixJson {
    fn from(m: &CMatrix) -> Self {
        MatrixJson {
            rows: m.nrows(),
            cols: m.ncols(),
            entries: (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<&MatrixJson> for CMatrix {
    type Error = Error;

    fn try_from(j: &MatrixJson) -> Result<CMatrix> {
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::DimensionMismatch { expected: j.rows * j.cols, got: j.entries.iter().map(Vec::len).sum() });
        }
        Ok(CMatrix::from_fn(j.rows, j.cols, |r, s| c(j.entries[r][s][0], j.entries[r][s][1])))
    }
}

/// CSV rendering with one line per entry: `row,col,re,im`.
pub fn matrix_to_csv(m: &CMatrix) -> String {
    let mut out = String::from("row,col,re,im\n");
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            out.push_str(&format!("{i},{j},{:e},{:e}\n", m[(i, j)].re, m[(i, j)].im));
        }
    }
    out
}
