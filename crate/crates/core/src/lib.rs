//! Decoherence of a driven two-level system under the Lindblad master
//! equation `dρ/dt = -i[H, ρ] + Dρ`.
//!
//! The density matrix is carried as the column `Ψ = (a, b, b̄, d)` evolving
//! under `W = Ĥ + D̂`. The crate provides closed forms for `e^{tD̂}` and
//! `e^{tĤ}`, their split product, the exact spectral solution of `W`, both
//! long-time limits, and a brute-force matrix exponential against which all
//! of them are checked.

pub mod asymptotics;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod propagators;
pub mod sampling;
pub mod spectral;
pub mod superoperator;
pub mod types;
pub mod zassenhaus;

pub use error::{Error, Result};
pub use propagators::{Model, PropagatorMethod};
pub use types::{DensityMatrix2, EnergyPair, LindbladRates, SuperpositionAmplitudes};
