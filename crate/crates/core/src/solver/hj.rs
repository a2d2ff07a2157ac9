use crate::cloud::SolutionCloud;
use crate::error::Result;
use crate::flux::FluxModel;
use crate::parametrization::InitialParametrization;

use super::solve::solve_dissipative;

#[derive(Debug, Clone, PartialEq)]
pub struct HamiltonJacobiSolution {
    /// `u = ∂ₓw`, the dissipative cloud for the flux `H`.
    pub gradient: SolutionCloud,
    /// `w(t, xᵢ)` at the cloud positions.
    pub potential: Vec<f64>,
}

/// Solves `∂ₜw + H(∂ₓw) = 0` with `∂ₓw(0,·) = u0`.
///
/// `w` is the running trapezoid integral of the `u` cloud, anchored on the
/// leftmost characteristic: `w(t, x₀) = w0(S0(y₀)) + t (v H'(v) - H(v))`
/// with `v = v0(y₀)`. `w0_left` is `w0(S0(y₀))`.
pub fn hamilton_jacobi_solve(
    parametrization: &InitialParametrization,
    hamiltonian: &FluxModel,
    t: f64,
    w0_left: f64,
) -> Result<HamiltonJacobiSolution> {
    let gradient = solve_dissipative(parametrization, hamiltonian, t)?;
    let v = parametrization.v0[0];
    let mut w = w0_left + t * (v * hamiltonian.fprime(v) - hamiltonian.f(v));
    let (xs, us) = (&gradient.xs, &gradient.us);
    let mut potential = Vec::with_capacity(xs.len());
    potential.push(w);
    for i in 1..xs.len() {
        w += 0.5 * (us[i] + us[i - 1]) * (xs[i] - xs[i - 1]);
        potential.push(w);
    }
    Ok(HamiltonJacobiSolution { gradient, potential })
}
