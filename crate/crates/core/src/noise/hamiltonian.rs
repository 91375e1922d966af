use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::{DensityMatrix, NoiseModel};
use crate::channel::{Channel, Dephasing};
use crate::error::{Error, Result};
use crate::linalg::{c, embed_single, expm_hermitian, kron, pauli, CMatrix};

/// Scalar J coupling between the two spins, in Hz.
pub const J_COUPLING_HZ: f64 = 215.0;

/// Piecewise-constant control: per-qubit RF amplitude (Hz) and phase (rad)
/// held for `duration` seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlSlice {
    pub duration: f64,
    pub amplitudes: [f64; 2],
    pub phases: [f64; 2],
}

impl ControlSlice {
    pub fn new(duration: f64, amplitudes: [f64; 2], phases: [f64; 2]) -> Result<Self> {
        let slice = ControlSlice { duration, amplitudes, phases };
        slice.validate()?;
        Ok(slice)
    }

    /// Free evolution under the coupling alone.
    pub fn free(duration: f64) -> Result<Self> {
        Self::new(duration, [0.0; 2], [0.0; 2])
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(Error::InvalidSetup(format!("slice duration must be positive, got {}", self.duration)));
        }
        if self.amplitudes.iter().chain(&self.phases).any(|x| !x.is_finite()) {
            return Err(Error::InvalidSetup("slice amplitudes and phases must be finite".into()));
        }
        Ok(())
    }
}

/// `H = (pi J / 2) Z(x)Z + sum_i pi B_i (cos phi_i X_i + sin phi_i Y_i)` in
/// rad/s.
pub fn nmr_hamiltonian(slice: &ControlSlice) -> CMatrix {
    let zz = kron(&pauli(3), &pauli(3)) * c(PI * J_COUPLING_HZ / 2.0, 0.0);
    (0..2).fold(zz, |h, q| {
        let (b, phi) = (slice.amplitudes[q], slice.phases[q]);
        let drive = pauli(1) * c(phi.cos(), 0.0) + pauli(2) * c(phi.sin(), 0.0);
        h + embed_single(&drive, q, 2) * c(PI * b, 0.0)
    })
}

/// Split-step evolution: for each slice, unitary evolution under
/// [`nmr_hamiltonian`] for its duration, then dephasing for the same
/// duration.
pub fn evolve_with_dephasing(rho: &DensityMatrix, slices: &[ControlSlice], noise: &NoiseModel) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, got: rho.dim() });
    }
    let rates = noise.dephasing_rates(2)?;
    let mut state = rho.matrix().clone();
    for slice in slices {
        slice.validate()?;
        let u = expm_hermitian(&nmr_hamiltonian(slice), slice.duration);
        state = &u * state * u.adjoint();
        state = Dephasing::new(rates.clone(), slice.duration)?.apply(&state);
    }
    // Re-symmetrize to keep round-off from accumulating in the Hermitian part.
    let state = (&state + state.adjoint()) * c(0.5, 0.0);
    DensityMatrix::new(state)
}
