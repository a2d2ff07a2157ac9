use crate::error::{ChaError, Result};
use crate::flux::FluxModel;
use crate::parametrization::InitialParametrization;

use super::solve::{dissipative_hull, SolverOptions};

pub const DEFAULT_RHO_MAX: f64 = 10.0;

/// Passive scalar `w` carried by the flow, and its density `ρ = ∂ₓw`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarTransportField {
    pub time: f64,
    pub xs: Vec<f64>,
    pub ws: Vec<f64>,
    /// Divided differences of `w`, with `|ρ| ≤ rho_max`.
    pub rho: Vec<f64>,
}

impl ScalarTransportField {
    pub fn w_cloud(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.ws.iter().copied())
    }

    pub fn rho_cloud(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xs.iter().copied().zip(self.rho.iter().copied())
    }
}

/// `w(t,·) = w0 ∘ S0 ∘ (S⁺(t,·))⁻¹` on the dissipative cloud.
pub fn passive_scalar<W: Fn(f64) -> f64>(
    parametrization: &InitialParametrization,
    flux: &FluxModel,
    w0: W,
    t: f64,
    rho_max: f64,
) -> Result<ScalarTransportField> {
    if !(rho_max > 0.0) {
        return Err(ChaError::invalid(format!("rho_max must be positive, got {rho_max}")));
    }
    let hull = dissipative_hull(parametrization, flux, t, &SolverOptions::default())?;
    let xs = hull.s_plus;
    let ws: Vec<f64> = parametrization.s0.iter().map(|&s| w0(s)).collect();
    let n = xs.len();
    let rho = (0..n)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
            let (dx, dw) = (xs[b] - xs[a], ws[b] - ws[a]);
            if dw == 0.0 {
                0.0
            } else if dx <= 0.0 {
                rho_max.copysign(dw)
            } else {
                (dw / dx).clamp(-rho_max, rho_max)
            }
        })
        .collect();
    Ok(ScalarTransportField { time: t, xs, ws, rho })
}
