//! Classical solution before shock formation: `u(t,x) = u0(ξ)` with
//! `ξ + t f'(u0(ξ)) = x`.

use crate::data::InitialData;
use crate::error::{ChaError, Result};
use crate::flux::FluxModel;

/// Foot `ξ` of the characteristic through `(t, x)`, by safeguarded Newton.
pub fn characteristic_foot(flux: &FluxModel, data: &InitialData, t: f64, x: f64) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(ChaError::invalid(format!("time must be non-negative, got {t}")));
    }
    let (umin, umax) = data.value_range();
    let speeds = [flux.fprime(umin), flux.fprime(umax)];
    let (smin, smax) = (speeds[0].min(speeds[1]), speeds[0].max(speeds[1]));
    let phi = |xi: f64| xi + t * flux.fprime(data.eval(xi)) - x;
    let (mut lo, mut hi) = (x - t * smax - 1.0, x - t * smin + 1.0);
    if phi(lo) > 0.0 || phi(hi) < 0.0 {
        return Err(ChaError::invalid(format!("no characteristic reaches x = {x} at t = {t}")));
    }
    let mut xi = 0.5 * (lo + hi);
    for _ in 0..200 {
        let r = phi(xi);
        if r.abs() <= 1e-15 * (1.0 + x.abs()) {
            return Ok(xi);
        }
        if r < 0.0 {
            lo = xi;
        } else {
            hi = xi;
        }
        let h = 1e-7 * (1.0 + xi.abs());
        let dphi = (phi(xi + h) - phi(xi - h)) / (2.0 * h);
        let newton = xi - r / dphi;
        xi = if dphi > 0.0 && newton >= lo && newton <= hi { newton } else { 0.5 * (lo + hi) };
        if hi - lo <= 1e-14 * (1.0 + xi.abs()) {
            break;
        }
    }
    Ok(xi)
}

/// Exact pre-shock solution `u(t, x)`.
pub fn characteristic_solution(flux: &FluxModel, data: &InitialData, t: f64, x: f64) -> Result<f64> {
    Ok(data.eval(characteristic_foot(flux, data, t, x)?))
}

/// First time at which characteristics of smooth data cross, estimated on
/// `samples` points of the data domain.
pub fn breaking_time(flux: &FluxModel, data: &InitialData, samples: usize) -> f64 {
    let (a, b) = data.domain();
    let h = (b - a) / samples as f64;
    let steepest = (0..samples)
        .map(|k| {
            let (x0, x1) = (a + h * k as f64, a + h * (k + 1) as f64);
            (flux.fprime(data.eval(x1)) - flux.fprime(data.eval(x0))) / h
        })
        .fold(0.0f64, f64::min);
    if steepest < 0.0 {
        -1.0 / steepest
    } else {
        f64::INFINITY
    }
}
