use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Durations in seconds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GateDurations {
    /// One braiding operation, a squared generator (two exchanges).
    pub braid: f64,
    pub clifford: f64,
    pub state_prep: f64,
}

impl Default for GateDurations {
    fn default() -> Self {
        GateDurations { braid: 2e-3, clifford: 5e-3, state_prep: 4e-3 }
    }
}

/// Noise acting on the two-qubit register.
///
/// `t2` holds one entry per qubit; `null` (or an empty list) means no
/// dephasing. The gate-level terms act once per gate: `depolarizing` is the
/// probability `p` of `rho -> (1-p) rho + p I/d`, `over_rotation` an extra
/// rotation angle about the logical x axis.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseModel {
    pub t2: Vec<Option<f64>>,
    pub t2_star: Option<Vec<f64>>,
    pub durations: GateDurations,
    pub depolarizing: f64,
    pub over_rotation: f64,
}

impl NoiseModel {
    pub fn noiseless() -> Self {
        NoiseModel::default()
    }

    /// Dephasing only, with the given per-qubit T2 in seconds.
    pub fn dephasing(t2: &[f64]) -> Self {
        NoiseModel { t2: t2.iter().map(|&t| Some(t)).collect(), ..NoiseModel::default() }
    }

    pub fn with_depolarizing(mut self, p: f64) -> Self {
        self.depolarizing = p;
        self
    }

    pub fn with_over_rotation(mut self, angle: f64) -> Self {
        self.over_rotation = angle;
        self
    }

    /// The same model with `t2_star` in place of `t2`.
    pub fn star_variant(&self) -> Result<Self> {
        let star = self.t2_star.as_ref().ok_or_else(|| Error::InvalidSetup("noise model has no t2_star".into()))?;
        Ok(NoiseModel { t2: star.iter().map(|&t| Some(t)).collect(), t2_star: None, ..self.clone() })
    }

    pub fn validate(&self) -> Result<()> {
        let times = self.t2.iter().flatten().chain(self.t2_star.iter().flatten());
        for &t in times {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::NonPhysicalNoise(format!("T2 must be positive and finite, got {t}")));
            }
        }
        if !(0.0..=1.0).contains(&self.depolarizing) {
            return Err(Error::NonPhysicalNoise(format!("depolarizing probability must lie in [0, 1], got {}", self.depolarizing)));
        }
        if !self.over_rotation.is_finite() {
            return Err(Error::NonPhysicalNoise("over-rotation angle must be finite".into()));
        }
        let d = self.durations;
        if [d.braid, d.clifford, d.state_prep].iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
            return Err(Error::NonPhysicalNoise("gate durations must be finite and >= 0".into()));
        }
        Ok(())
    }

    /// Per-qubit dephasing rates `1/T2` for an `n_qubits` register.
    pub fn dephasing_rates(&self, n_qubits: usize) -> Result<Vec<f64>> {
        self.validate()?;
        match self.t2.len() {
            0 => Ok(vec![0.0; n_qubits]),
            n if n == n_qubits => Ok(self.t2.iter().map(|t| t.map_or(0.0, |t| 1.0 / t)).collect()),
            n => Err(Error::DimensionMismatch { expected: n_qubits, got: n }),
        }
    }

    pub fn has_dephasing(&self) -> bool {
        self.t2.iter().any(Option::is_some)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let model: NoiseModel = serde_json::from_str(text)?;
        model.validate()?;
        Ok(model)
    }
}
