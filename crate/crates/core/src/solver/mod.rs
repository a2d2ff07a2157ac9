//! Dissipative and conservative solutions, pointwise evaluation, jump
//! detection and the passive-scalar coupling.

mod characteristic;
mod hj;
mod query;
mod solve;
mod transport;

pub use characteristic::{characteristic_map, CharacteristicField};
pub use hj::{hamilton_jacobi_solve, HamiltonJacobiSolution};
pub use query::{evaluate, fan_segments, jump_set, jump_set_default, Jump};
pub use solve::{
    filter_spikes, solve, solve_conservative, solve_dissipative, solve_dissipative_with, solve_times,
    Projection, SolverOptions,
};
pub use transport::{passive_scalar, ScalarTransportField, DEFAULT_RHO_MAX};
