//! Thermal quantum discord and entanglement of a two-qubit XYZ Heisenberg chain.
//!
//! The crate is layered bottom-up:
//!
//! * [`qmat`]: 2×2 / 4×4 complex matrices, Jacobi eigensolver, entropies.
//! * [`model`]: Hamiltonian and Gibbs state (closed form and spectral).
//! * [`entanglement`]: concurrence and entanglement of formation.
//! * [`discord`]: mutual information, classical correlation, discord.
//! * [`analysis`]: parameter sweeps and phenomenon detectors.
//! * [`cli`]: the `thermal-discord` command-line tool.

pub mod analysis;
pub mod cli;
pub mod discord;
pub mod entanglement;
pub mod error;
pub mod model;
pub mod qmat;

pub use discord::{CorrelationReport, MeasurementBasis, OptimizerConfig};
pub use error::{Error, Result};
pub use model::{ModelParams, XStateElements};
pub use qmat::ComplexMatrix;
