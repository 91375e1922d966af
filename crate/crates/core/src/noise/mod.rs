//! Two-qubit open-system simulation: NMR Hamiltonian, split-step dephasing,
//! circuit decompositions of braiding operations, and fidelity prediction.

mod circuit;
mod density;
mod fidelity;
mod hamiltonian;
mod model;

pub use circuit::{decompose_braiding, rotation, Axis, CircuitDecomposition, CircuitGate, REFERENCE_ANGLES_INVERSE_SQUARE, REFERENCE_ANGLES_SQUARE};
pub use density::DensityMatrix;
pub use fidelity::{braid_word_channel, calibrate_t2, predict_gate_fidelity, Calibration};
pub use hamiltonian::{evolve_with_dephasing, nmr_hamiltonian, ControlSlice, J_COUPLING_HZ};
pub use model::{GateDurations, NoiseModel};
