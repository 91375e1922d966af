//! Two-CNOT circuits for braiding operations on the two-qubit register.
//!
//! `sigma_12^p` never changes `k` (qubit 1), so it is a controlled
//! operation `A0 (x) |0><0| + A1 (x) |1><1|` on qubit 0. With
//! `W = A0^dag A1 = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)` the circuit is,
//! in time order,
//!
//! ```text
//! Rz_0((delta-beta)/2)  CNOT(1->0)  Rz_0(-(delta+beta)/2)  Ry_0(-gamma/2)
//! CNOT(1->0)  Ry_0(gamma/2)  Rz_0(beta + phi0)  Rz_1(alpha)
//! ```
//!
//! where `A0 = diag(1, e^{i phi0})` up to phase. `sigma_23^p` uses the same
//! circuit with the qubits exchanged.

use serde::{Deserialize, Serialize};

use crate::braid_space::{sigma, Generator};
use crate::error::{Error, Result};
use crate::linalg::{c, embed_single, identity, kron, pauli, unitary_power, CMatrix, I};

/// Published rotation angles for the squared-generator circuits, kept for
/// comparison. They belong to a different rotation template and are not
/// expected to match [`CircuitDecomposition::angles`].
pub const REFERENCE_ANGLES_SQUARE: [f64; 6] = [0.314, -0.628, -1.179, 1.179, -2.1991, 1.885];
pub const REFERENCE_ANGLES_INVERSE_SQUARE: [f64; 6] = [2.827, -2.513, -1.179, 1.179, 2.1991, 2.827];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CircuitGate {
    Cnot { control: usize, target: usize },
    /// `exp(-i angle sigma_axis / 2)`.
    Rotation { qubit: usize, axis: Axis, angle: f64 },
}

impl CircuitGate {
    pub fn unitary(&self) -> CMatrix {
        match *self {
            CircuitGate::Cnot { control, target } => {
                let p0 = CMatrix::from_fn(2, 2, |i, j| c(if (i, j) == (0, 0) { 1.0 } else { 0.0 }, 0.0));
                let p1 = CMatrix::from_fn(2, 2, |i, j| c(if (i, j) == (1, 1) { 1.0 } else { 0.0 }, 0.0));
                let mut on = [identity(2), identity(2)];
                on[control] = p1;
                on[target] = pauli(1);
                embed_single(&p0, control, 2) + kron(&on[0], &on[1])
            }
            CircuitGate::Rotation { qubit, axis, angle } => embed_single(&rotation(axis, angle), qubit, 2),
        }
    }

    fn swapped(self) -> CircuitGate {
        match self {
            CircuitGate::Cnot { control, target } => CircuitGate::Cnot { control: 1 - control, target: 1 - target },
            CircuitGate::Rotation { qubit, axis, angle } => CircuitGate::Rotation { qubit: 1 - qubit, axis, angle },
        }
    }
}

pub fn rotation(axis: Axis, angle: f64) -> CMatrix {
    let sigma = pauli(match axis {
        Axis::X => 1,
        Axis::Y => 2,
        Axis::Z => 3,
    });
    identity(2) * c((angle / 2.0).cos(), 0.0) - sigma * (I * (angle / 2.0).sin())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitDecomposition {
    /// Gates in time order.
    pub gates: Vec<CircuitGate>,
    /// Published angles for this operation, when available.
    pub reference_angles: Option<[f64; 6]>,
}

impl CircuitDecomposition {
    /// Product of the gates, last gate leftmost.
    pub fn unitary(&self) -> CMatrix {
        self.gates.iter().fold(identity(4), |acc, g| g.unitary() * acc)
    }

    pub fn angles(&self) -> Vec<f64> {
        self.gates
            .iter()
            .filter_map(|g| match g {
                CircuitGate::Rotation { angle, .. } => Some(*angle),
                CircuitGate::Cnot { .. } => None,
            })
            .collect()
    }

    pub fn cnot_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, CircuitGate::Cnot { .. })).count()
    }

    /// The same circuit with the two qubits exchanged.
    pub fn swapped(&self) -> CircuitDecomposition {
        CircuitDecomposition { gates: self.gates.iter().map(|g| g.swapped()).collect(), reference_angles: self.reference_angles }
    }
}

/// ZYZ angles `(alpha, beta, gamma, delta)` with
/// `w = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta)`.
fn zyz(w: &CMatrix) -> (f64, f64, f64, f64) {
    let det = w[(0, 0)] * w[(1, 1)] - w[(0, 1)] * w[(1, 0)];
    let root = det.sqrt();
    let a = w[(0, 0)] / root;
    let b = w[(1, 0)] / root;
    let gamma = 2.0 * b.norm().atan2(a.norm());
    let sum = -2.0 * a.arg();
    let diff = 2.0 * b.arg();
    (root.arg(), (sum + diff) / 2.0, gamma, (sum - diff) / 2.0)
}

fn block(u: &CMatrix, k: usize) -> CMatrix {
    CMatrix::from_fn(2, 2, |i, j| u[(2 * i + k, 2 * j + k)])
}

/// Circuit of two CNOTs and six rotations implementing `generator^power`.
pub fn decompose_braiding(generator: Generator, power: i32) -> Result<CircuitDecomposition> {
    if power == 0 {
        return Err(Error::InvalidSetup("braiding power must be nonzero".into()));
    }
    if generator == Generator::S23 {
        return Ok(decompose_braiding(Generator::S12, power)?.swapped());
    }
    let u = unitary_power(&sigma(Generator::S12, false), power);
    let a0 = block(&u, 0);
    let a1 = block(&u, 1);
    if a0[(0, 1)].norm() > 1e-12 || a0[(1, 0)].norm() > 1e-12 {
        return Err(Error::InvalidSetup("k = 0 block is not diagonal".into()));
    }
    let phi0 = (a0[(1, 1)] / a0[(0, 0)]).arg();
    let (alpha, beta, gamma, delta) = zyz(&(a0.adjoint() * a1));

    let rot = |qubit, axis, angle| CircuitGate::Rotation { qubit, axis, angle };
    let cnot = CircuitGate::Cnot { control: 1, target: 0 };
    let gates = vec![
        rot(0, Axis::Z, (delta - beta) / 2.0),
        cnot,
        rot(0, Axis::Z, -(delta + beta) / 2.0),
        rot(0, Axis::Y, -gamma / 2.0),
        cnot,
        rot(0, Axis::Y, gamma / 2.0),
        rot(0, Axis::Z, beta + phi0),
        rot(1, Axis::Z, alpha),
    ];
    let reference_angles = match power {
        2 => Some(REFERENCE_ANGLES_SQUARE),
        -2 => Some(REFERENCE_ANGLES_INVERSE_SQUARE),
        _ => None,
    };
    Ok(CircuitDecomposition { gates, reference_angles })
}
