use serde::Serialize;

use super::NoiseModel;
use crate::benchmark::{average_gate_fidelity, PauliTransferMap};
use crate::braid_space::{BraidSpace, Space};
use crate::channel::{Dephasing, Superop};
use crate::compiler::{evaluate, BraidWord};
use crate::error::{Error, Result};

/// Superoperator of a braid word on the two-qubit register, letter by
/// letter: each letter is its ideal unitary followed by dephasing for the
/// letter's duration (`|power|/2` braiding operations).
pub fn braid_word_channel(word: &BraidWord, noise: &NoiseModel, braids: &BraidSpace) -> Result<Superop> {
    let rates = noise.dephasing_rates(2)?;
    let per_exchange = noise.durations.braid / 2.0;
    word.letters().iter().try_fold(Superop::identity(4), |acc, letter| {
        let u = braids.power(Space::Physical, letter.generator, letter.power);
        let duration = per_exchange * letter.power.unsigned_abs() as f64;
        let dephasing = Superop::of(&Dephasing::new(rates.clone(), duration)?);
        Ok(acc.then(&Superop::unitary(&u)).then(&dephasing))
    })
}

/// Average gate fidelity (d = 4) of the noisy word against its ideal
/// physical unitary.
pub fn predict_gate_fidelity(word: &BraidWord, noise: &NoiseModel, braids: &BraidSpace) -> Result<f64> {
    let channel = braid_word_channel(word, noise, braids)?;
    let ptm = PauliTransferMap::of_channel(&channel)?;
    average_gate_fidelity(&ptm, &evaluate(word, Space::Physical, braids))
}

/// Outcome of a T2 calibration.
#[derive(Debug, Clone, Serialize)]
pub struct Calibration {
    pub target_fidelity: f64,
    /// Common T2 of both qubits, in seconds.
    pub t2: f64,
    pub achieved_fidelity: f64,
    pub iterations: usize,
}

/// Find the common T2 of both qubits at which `word` reaches
/// `target_fidelity`, by bisection in `log T2`.
pub fn calibrate_t2(word: &BraidWord, target_fidelity: f64, base: &NoiseModel, braids: &BraidSpace) -> Result<Calibration> {
    let fidelity_at = |t2: f64| {
        let model = NoiseModel { t2: vec![Some(t2); 2], ..base.clone() };
        predict_gate_fidelity(word, &model, braids)
    };
    let (mut lo, mut hi) = (1e-5f64.ln(), 1e3f64.ln());
    let (f_lo, f_hi) = (fidelity_at(lo.exp())?, fidelity_at(hi.exp())?);
    if !(f_lo..=f_hi).contains(&target_fidelity) {
        return Err(Error::InvalidSetup(format!(
            "target fidelity {target_fidelity} outside the reachable range [{f_lo}, {f_hi}]"
        )));
    }
    let mut iterations = 0;
    while hi - lo > 1e-12 && iterations < 200 {
        let mid = 0.5 * (lo + hi);
        if fidelity_at(mid.exp())? < target_fidelity {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let t2 = (0.5 * (lo + hi)).exp();
    Ok(Calibration { target_fidelity, t2, achieved_fidelity: fidelity_at(t2)?, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compiler::hadamard_word;

    #[test]
    fn noiseless_word_is_perfect() {
        let braids = BraidSpace::fibonacci();
        let f = predict_gate_fidelity(&hadamard_word(), &NoiseModel::noiseless(), &braids).unwrap();
        assert!((f - 1.0).abs() < 1e-10);
    }

    #[test]
    fn longer_words_lose_fidelity() {
        let braids = BraidSpace::fibonacci();
        let noise = NoiseModel::dephasing(&[0.2, 0.2]);
        let mut previous = 1.0;
        for scale in [0.5, 1.0, 2.0, 4.0] {
            let model = NoiseModel { durations: crate::noise::GateDurations { braid: 2e-3 * scale, ..Default::default() }, ..noise.clone() };
            let f = predict_gate_fidelity(&hadamard_word(), &model, &braids).unwrap();
            assert!(f <= previous + 1e-12);
            previous = f;
        }
        assert!(previous < 1.0);
    }
}
