//! Independent reference solutions used to check the solver.

pub mod characteristics;
pub mod godunov;
pub mod hopf_lax;
pub mod riemann;

pub use characteristics::{breaking_time, characteristic_foot, characteristic_solution};
pub use godunov::{godunov_flux, godunov_solve, godunov_solve_with, GodunovFlux, GodunovSolution};
pub use hopf_lax::{hopf_lax, legendre_transform, HopfLax};
pub use riemann::{riemann_exact, RiemannSolution, Wave};
