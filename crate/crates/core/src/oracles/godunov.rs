//! First-order Godunov scheme with the exact scalar Riemann flux.

use crate::data::InitialData;
use crate::error::{ChaError, Result};
use crate::exec::Execution;
use crate::flux::FluxModel;

/// Exact Godunov flux `F(a,b) = min_{[a,b]} f` (`a ≤ b`) or `max_{[b,a]} f`,
/// using the critical points of `f` in a value range.
#[derive(Debug, Clone)]
pub struct GodunovFlux {
    flux: FluxModel,
    critical: Vec<f64>,
}

impl GodunovFlux {
    pub fn new(flux: &FluxModel, range: (f64, f64)) -> Self {
        let (lo, hi) = range;
        let samples = 1024;
        let h = (hi - lo) / samples as f64;
        let mut critical = Vec::new();
        if h > 0.0 {
            for k in 0..samples {
                let (mut a, mut b) = (lo + h * k as f64, lo + h * (k + 1) as f64);
                let (fa, fb) = (flux.fprime(a), flux.fprime(b));
                if fa == 0.0 {
                    critical.push(a);
                    continue;
                }
                if fa.signum() == fb.signum() || fb == 0.0 {
                    continue;
                }
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    if flux.fprime(m).signum() == fa.signum() {
                        a = m;
                    } else {
                        b = m;
                    }
                }
                critical.push(0.5 * (a + b));
            }
            if flux.fprime(hi) == 0.0 {
                critical.push(hi);
            }
        }
        GodunovFlux { flux: flux.clone(), critical }
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        let (lo, hi) = (a.min(b), a.max(b));
        let inner = self.critical.iter().filter(|&&c| c > lo && c < hi).map(|&c| self.flux.f(c));
        let ends = [self.flux.f(a), self.flux.f(b)];
        if a <= b {
            inner.chain(ends).fold(f64::INFINITY, f64::min)
        } else {
            inner.chain(ends).fold(f64::NEG_INFINITY, f64::max)
        }
    }
}

pub fn godunov_flux(flux: &FluxModel, a: f64, b: f64) -> f64 {
    GodunovFlux::new(flux, (a.min(b), a.max(b))).eval(a, b)
}

/// Cell averages on a uniform grid of `[lower, upper]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GodunovSolution {
    pub time: f64,
    pub lower: f64,
    pub upper: f64,
    /// Cell centres.
    pub xs: Vec<f64>,
    pub us: Vec<f64>,
    /// `∫₀ᵗ (F_right - F_left) dt` through the outflow boundaries.
    pub boundary_outflow: f64,
    pub initial_mass: f64,
}

impl GodunovSolution {
    pub fn dx(&self) -> f64 {
        (self.upper - self.lower) / self.us.len() as f64
    }

    pub fn mass(&self) -> f64 {
        self.us.iter().sum::<f64>() * self.dx()
    }

    /// Piecewise-linear interpolation between cell centres, constant beyond.
    pub fn sample(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.us[0];
        }
        if x >= self.xs[n - 1] {
            return self.us[n - 1];
        }
        let k = self.xs.partition_point(|&c| c <= x) - 1;
        let w = (x - self.xs[k]) / (self.xs[k + 1] - self.xs[k]);
        self.us[k] + w * (self.us[k + 1] - self.us[k])
    }
}

/// Extreme values of `f'` on `[lo, hi]`.
fn speed_bounds(flux: &FluxModel, lo: f64, hi: f64) -> (f64, f64) {
    (0..=1000)
        .map(|k| flux.fprime(lo + (hi - lo) * k as f64 / 1000.0))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), s| (a.min(s), b.max(s)))
}

pub fn godunov_solve(
    flux: &FluxModel,
    data: &InitialData,
    t: f64,
    cells: usize,
    cfl: f64,
) -> Result<GodunovSolution> {
    godunov_solve_with(flux, data, t, cells, cfl, Execution::default())
}

pub fn godunov_solve_with(
    flux: &FluxModel,
    data: &InitialData,
    t: f64,
    cells: usize,
    cfl: f64,
    exec: Execution,
) -> Result<GodunovSolution> {
    if cells < 10 {
        return Err(ChaError::invalid(format!("need at least 10 cells, got {cells}")));
    }
    if !(cfl > 0.0 && cfl <= 0.9) {
        return Err(ChaError::invalid(format!("cfl must lie in (0, 0.9], got {cfl}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(ChaError::invalid(format!("time must be finite and non-negative, got {t}")));
    }
    let (umin, umax) = data.value_range();
    let (smin, smax) = speed_bounds(flux, umin, umax);
    let (a, b) = data.domain();
    let lower = a + t * smin.min(0.0) - 1.0;
    let upper = b + t * smax.max(0.0) + 1.0;
    let dx = (upper - lower) / cells as f64;
    let xs: Vec<f64> = (0..cells).map(|i| lower + (i as f64 + 0.5) * dx).collect();
    let mut us: Vec<f64> = (0..cells)
        .map(|i| {
            let (l, r) = (lower + i as f64 * dx, lower + (i + 1) as f64 * dx);
            (data.primitive(r) - data.primitive(l)) / dx
        })
        .collect();
    let initial_mass = us.iter().sum::<f64>() * dx;
    let riemann = GodunovFlux::new(flux, (umin, umax));
    let max_speed = smin.abs().max(smax.abs());
    let dt_max = if max_speed > 0.0 { cfl * dx / max_speed } else { t };

    let mut time = 0.0;
    let mut boundary_outflow = 0.0;
    while time < t {
        let dt = dt_max.min(t - time);
        let fluxes = exec.map_range(cells + 1, |k| {
            let left = us[k.saturating_sub(1)];
            let right = us[k.min(cells - 1)];
            riemann.eval(left, right)
        });
        for i in 0..cells {
            us[i] -= dt / dx * (fluxes[i + 1] - fluxes[i]);
        }
        boundary_outflow += dt * (fluxes[cells] - fluxes[0]);
        time += dt;
        if dt <= 0.0 {
            break;
        }
    }
    Ok(GodunovSolution { time: t, lower, upper, xs, us, boundary_outflow, initial_mass })
}
