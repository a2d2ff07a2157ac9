//! Lax-Oleinik formula `w(t,x) = inf_z w0(z) + t f*((x - z)/t)` for convex flux.

use crate::error::{ChaError, Result};
use crate::exec::Execution;
use crate::flux::FluxModel;

const LEGENDRE_GRID: usize = 32;
const Z_GRID: usize = 1000;
const GOLDEN_ITERS: usize = 80;

/// Minimizes `g` on `[a, b]` assuming unimodality.
fn golden_min<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut gc, mut gd) = (g(c), g(d));
    for _ in 0..GOLDEN_ITERS {
        if gc <= gd {
            b = d;
            d = c;
            gd = gc;
            c = b - r * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + r * (b - a);
            gd = g(d);
        }
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs()) {
            break;
        }
    }
    if gc <= gd {
        (c, gc)
    } else {
        (d, gd)
    }
}

/// Grid search followed by golden-section refinement around the best node.
fn grid_min<G: Fn(f64) -> f64>(g: G, a: f64, b: f64, nodes: usize) -> (f64, f64) {
    let h = (b - a) / nodes as f64;
    let (k, _) = (0..=nodes)
        .map(|k| (k, g(a + h * k as f64)))
        .fold((0, f64::INFINITY), |best, (k, v)| if v < best.1 { (k, v) } else { best });
    let lo = (a + h * (k as f64 - 1.0)).max(a);
    let hi = (a + h * (k as f64 + 1.0)).min(b);
    let refined = golden_min(&g, lo, hi);
    let node = (a + h * k as f64, g(a + h * k as f64));
    let ends = [(a, g(a)), (b, g(b)), node];
    ends.into_iter().fold(refined, |best, c| if c.1 < best.1 { c } else { best })
}

/// `f*(z) = sup_{u ∈ u_range} (z u - f(u))`.
pub fn legendre_transform(flux: &FluxModel, z: f64, u_range: (f64, f64)) -> f64 {
    let (_, v) = grid_min(|u| flux.f(u) - z * u, u_range.0, u_range.1, LEGENDRE_GRID);
    -v
}

/// Hopf-Lax evaluator for a convex flux with `∂ₓw0` in `u_range`.
#[derive(Debug, Clone)]
pub struct HopfLax {
    flux: FluxModel,
    u_range: (f64, f64),
    speed_range: (f64, f64),
}

impl HopfLax {
    /// `data_range` is inflated by half its width on each side.
    pub fn new(flux: &FluxModel, data_range: (f64, f64)) -> Result<Self> {
        let (lo, hi) = data_range;
        if !(lo <= hi) {
            return Err(ChaError::invalid(format!("empty data range [{lo}, {hi}]")));
        }
        if !flux.is_convex_on(lo, hi, 1000) {
            return Err(ChaError::NonConvexFlux { lo, hi });
        }
        let pad = 0.5 * (hi - lo).max(1e-3);
        let u_range = (lo - pad, hi + pad);
        // f' is non-decreasing on the data range
        let speed_range = (flux.fprime(lo), flux.fprime(hi));
        Ok(HopfLax { flux: flux.clone(), u_range, speed_range })
    }

    pub fn evaluate<W: Fn(f64) -> f64>(&self, w0: W, t: f64, x: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(ChaError::invalid(format!("Hopf-Lax needs t > 0, got {t}")));
        }
        let (smin, smax) = self.speed_range;
        let pad = 1e-3 * (1.0 + t * (smax - smin));
        let (za, zb) = (x - t * smax - pad, x - t * smin + pad);
        let cost = |z: f64| w0(z) + t * legendre_transform(&self.flux, (x - z) / t, self.u_range);
        Ok(grid_min(cost, za, zb, Z_GRID).1)
    }

    pub fn evaluate_many<W>(&self, w0: W, t: f64, xs: &[f64], exec: Execution) -> Result<Vec<f64>>
    where
        W: Fn(f64) -> f64 + Sync + Send,
    {
        exec.map_slice(xs, |&x| self.evaluate(&w0, t, x)).into_iter().collect()
    }
}

pub fn hopf_lax<W: Fn(f64) -> f64>(
    flux: &FluxModel,
    w0: W,
    t: f64,
    x: f64,
    data_range: (f64, f64),
) -> Result<f64> {
    HopfLax::new(flux, data_range)?.evaluate(w0, t, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_of_burgers() {
        let f = FluxModel::burgers();
        assert!((legendre_transform(&f, 2.0, (-5.0, 5.0)) - 2.0).abs() < 1e-12);
        assert!(legendre_transform(&f, 0.0, (-5.0, 5.0)).abs() < 1e-15);
        let cubic = FluxModel::cubic();
        let min_f = (0..=1000).map(|k| cubic.f(-2.0 + 4.0 * k as f64 / 1000.0)).fold(f64::INFINITY, f64::min);
        assert!((legendre_transform(&cubic, 0.0, (-2.0, 2.0)) + min_f).abs() < 1e-6);
    }

    #[test]
    fn zero_and_linear_data() {
        let f = FluxModel::burgers();
        assert!(hopf_lax(&f, |_| 0.0, 2.0, 0.7, (0.0, 0.0)).unwrap().abs() < 1e-12);
        for x in [-1.0, 0.0, 2.5] {
            let w = hopf_lax(&f, |z| z, 3.0, x, (1.0, 1.0)).unwrap();
            assert!((w - (x - 1.5)).abs() < 1e-9, "x={x} w={w}");
        }
    }

    #[test]
    fn short_time_limit_recovers_initial_data() {
        let f = FluxModel::burgers();
        let w0 = |z: f64| (z * 0.8).sin();
        let hl = HopfLax::new(&f, (-0.8, 0.8)).unwrap();
        for x in [-2.0, -0.3, 1.1] {
            assert!((hl.evaluate(w0, 1e-4, x).unwrap() - w0(x)).abs() < 1e-4);
        }
    }

    #[test]
    fn rejects_non_convex_flux_and_bad_time() {
        assert!(matches!(
            HopfLax::new(&FluxModel::cubic(), (-0.5, 0.5)),
            Err(ChaError::NonConvexFlux { .. })
        ));
        assert!(hopf_lax(&FluxModel::burgers(), |z| z, 0.0, 0.0, (1.0, 1.0)).is_err());
    }
}
