//! Ergotropy, daemonic ergotropy and daemonic gain, quantum discord and
//! concurrence for bipartite states, with a seeded Monte Carlo harness.
//!
//! The default `parallel` feature distributes sweeps and optimizer grids
//! over rayon; without it every loop runs sequentially with identical
//! results.

pub mod bounds;
pub mod correlations;
pub mod daemonic;
pub mod ergotropy;
pub mod error;
pub mod matcore;
pub mod optimize;
pub mod par;
pub mod rng;
pub mod states;
pub mod sweep;

pub use bounds::{
    binary_entropy, check_record, gain_bound_concurrence, gain_bound_discord, BoundReport,
};
pub use correlations::{
    classical_information, concurrence, concurrence_x_state, discord, mutual_information,
    von_neumann_entropy, DiscordDirection,
};
pub use daemonic::{
    conditional_states, daemonic_ergotropy, daemonic_gain, measurement_from_angles,
    pure_state_gain, BlochAngles, GainResult, OptimizerConfig, ProjectiveMeasurement,
};
pub use ergotropy::{
    ergotropy, passive_state, thermal_ergotropy, HamiltonianFile, HamiltonianSpec,
};
pub use error::{Error, Result};
pub use matcore::{
    hermitian_eig, kron, partial_trace, ComplexMatrix, EigenDecomposition, Subsystem, C64,
};
pub use par::Execution;
pub use states::{BipartiteState, DensityMatrix, RngStream, XStateParams};
pub use sweep::{run_sweep, verify, Ensemble, Suite, SweepConfig, SweepRecord, VerificationReport};
