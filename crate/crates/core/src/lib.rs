pub mod anyon;
pub mod error;
pub mod linalg;
pub mod reference;
pub mod braid_space;
pub mod compiler;
pub mod channel;
pub mod benchmark;
pub mod noise;
pub mod rng;
pub mod robustness;
