mod clifford;
mod fit;
mod ptm;
mod rb;

pub use clifford::CliffordGroup;
pub use fit::{fit_decay, DecayFit, DecayPoint};
pub use ptm::{average_gate_fidelity, process_fidelity, purity_of, qpt, unitarity, PauliTransferMap};
pub use rb::{
    decay_csv, error_budget, formula_dim, gate_noise, register_x, space_fidelity, ErrorBudget, GateSet, InterleavedResult, PbResult,
    RbResult, SequenceSettings, Target, COHERENT_TOLERANCE,
};
