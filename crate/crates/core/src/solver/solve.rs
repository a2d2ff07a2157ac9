use serde::{Deserialize, Serialize};

use crate::cloud::{Mode, SolutionCloud};
use crate::error::{ChaError, Result};
use crate::exec::Execution;
use crate::flux::FluxModel;
use crate::hodge::{self, BasisSystem};
use crate::hull::{lower_convex_hull_with_gradient, HullResult};
use crate::parametrization::InitialParametrization;

use super::characteristic::characteristic_map;
use super::query::jump_set_default;

/// How the potential `h` with `∇h = S(t,·)` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    /// Cumulative trapezoid integral of `S(t,·)` over the grid.
    #[default]
    Fast,
    /// Galerkin projection onto the `ψ` basis, then evaluation at the grid.
    Gram,
}

impl std::str::FromStr for Projection {
    type Err = ChaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Projection::Fast),
            "gram" => Ok(Projection::Gram),
            other => Err(ChaError::invalid(format!("unknown projection `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolverOptions {
    pub projection: Projection,
    /// Drop the points strictly inside each detected jump.
    pub spike_filter: bool,
    pub execution: Execution,
}

pub fn solve_dissipative(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    t: f64,
) -> Result<SolutionCloud> {
    solve_dissipative_with(parametrization, flux, t, &SolverOptions::default())
}

pub fn solve_dissipative_with(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    t: f64,
    options: &SolverOptions,
) -> Result<SolutionCloud> {
    let hull = dissipative_hull(parametrization, flux, t, options)?;
    let cloud = SolutionCloud::new(t, hull.s_plus, parametrization.v0.clone(), Mode::Dissipative)?;
    if options.spike_filter {
        Ok(filter_spikes(&cloud, flux))
    } else {
        Ok(cloud)
    }
}

pub(crate) fn dissipative_hull(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    t: f64,
    options: &SolverOptions,
) -> Result<HullResult> {
    let field = characteristic_map(parametrization, flux, t)?;
    let grid = &parametrization.grid;
    let h = match options.projection {
        Projection::Fast => hodge::cumulative_potential(grid, &field.s_t),
        Projection::Gram => {
            let system = BasisSystem::with_execution(grid, options.execution);
            let coeffs = system.project_galerkin(&field.s_t)?;
            hodge::potential_on(&coeffs, grid.points(), options.execution)
        }
    };
    lower_convex_hull_with_gradient(grid, &h, &field.s_t)
}

/// Monotone rearrangement of `S(t,·)`: stable sort of `(S(t,yᵢ), v0ᵢ)` by position.
pub fn solve_conservative(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    t: f64,
) -> Result<SolutionCloud> {
    let field = characteristic_map(parametrization, flux, t)?;
    let mut order: Vec<usize> = (0..field.s_t.len()).collect();
    order.sort_by(|&a, &b| field.s_t[a].total_cmp(&field.s_t[b]));
    let xs = order.iter().map(|&i| field.s_t[i]).collect();
    let us = order.iter().map(|&i| parametrization.v0[i]).collect();
    SolutionCloud::new(t, xs, us, Mode::Conservative)
}

pub fn solve(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    t: f64,
    mode: Mode,
    options: &SolverOptions,
) -> Result<SolutionCloud> {
    match mode {
        Mode::Dissipative => solve_dissipative_with(parametrization, flux, t, options),
        Mode::Conservative => solve_conservative(parametrization, flux, t),
    }
}

/// Independent solves at several times, in parallel when enabled.
pub fn solve_times(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    times: &[f64],
    mode: Mode,
    options: &SolverOptions,
) -> Result<Vec<SolutionCloud>> {
    let inner = SolverOptions { execution: Execution::Sequential, ..*options };
    options
        .execution
        .map_slice(times, |&t| solve(parametrization, flux, t, mode, &inner))
        .into_iter()
        .collect()
}

/// Removes the cloud points strictly inside each jump, keeping the two
/// flanking points of every coincident run.
pub fn filter_spikes(cloud: &SolutionCloud, flux: &FluxModel) -> SolutionCloud {
    let jumps = jump_set_default(cloud, flux);
    if jumps.is_empty() {
        return cloud.clone();
    }
    let mut keep = vec![true; cloud.len()];
    for j in &jumps {
        for k in j.first + 1..j.last {
            keep[k] = false;
        }
    }
    let (xs, us) = cloud
        .xs
        .iter()
        .zip(&cloud.us)
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|((&x, &u), _)| (x, u))
        .unzip();
    SolutionCloud { time: cloud.time, xs, us, mode: cloud.mode }
}
