//! Convex hull algorithm (CHA) for one-dimensional scalar conservation laws
//! and Hamilton-Jacobi equations.
//!
//! The solution at any time `t` is computed directly from the characteristic
//! map `S(t, y) = S0(y) + t f'(v0(y))` on the parameter domain `(-1/2, 1/2)`:
//!
//! 1. [`parametrization`] builds `S0` by monotone transport of Lebesgue measure
//!    onto `|u0'| / TV(u0)` and samples `v0 = u0 ∘ S0`.
//! 2. [`hodge`] turns the sampled map into a potential `h` with `h' = S`.
//! 3. [`hull`] replaces `h` by its lower convex hull `h⁺`; flat pieces of
//!    `S⁺ = (h⁺)'` are shocks.
//! 4. [`solver`] assembles the cloud `(S⁺(t, yᵢ), v0(yᵢ))`.
//!
//! [`oracles`] holds independent reference solutions (exact Riemann hull,
//! Hopf-Lax, Godunov, pre-shock characteristic inversion) used for
//! verification only.

pub mod cloud;
pub mod data;
pub mod error;
pub mod exec;
pub mod flux;
pub mod grid;
pub mod hodge;
pub mod hull;
pub mod oracles;
pub mod parametrization;
pub mod solver;

pub use cloud::{Mode, SolutionCloud};
pub use data::InitialData;
pub use error::{ChaError, Result};
pub use exec::Execution;
pub use flux::FluxModel;
pub use grid::SamplingGrid;
pub use parametrization::InitialParametrization;
