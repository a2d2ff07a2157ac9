//! Initial map `S0` pushing Lebesgue measure on `Λ` onto `μ0 = |u0'| / TV(u0)`.
//!
//! In one dimension the gradient-of-convex transport map is the monotone
//! quantile map, so `S0(y) = F⁻¹(y + 1/2)` with `F` the cumulative
//! distribution of `μ0`. Jumps of `u0` are Dirac masses of `μ0`; each one
//! receives a block of consecutive grid points that all sit at the jump,
//! with `v0` traversing the jump linearly.

use serde::{Deserialize, Serialize};

use crate::data::InitialData;
use crate::error::{ChaError, Result};
use crate::grid::SamplingGrid;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InitialParametrization {
    pub grid: SamplingGrid,
    /// `S0(yᵢ)`, non-decreasing.
    pub s0: Vec<f64>,
    /// `v0(yᵢ) = u0(S0(yᵢ))`.
    pub v0: Vec<f64>,
    /// `TV(u0)`.
    pub tv: f64,
}

impl InitialParametrization {
    pub fn len(&self) -> usize {
        self.s0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s0.is_empty()
    }
}

/// Cells in the cumulative-distribution table of a smooth profile.
const CDF_CELLS: usize = 4096;
const QUAD_TOL: f64 = 1e-14;
const BISECT_TOL: f64 = 1e-12;

pub fn initial_map(data: &InitialData, grid: &SamplingGrid) -> Result<InitialParametrization> {
    data.validate()?;
    match data {
        InitialData::Gaussian { center, sigma } => {
            let (c, s) = (*center, *sigma);
            let u0 = |x: f64| data.eval(x);
            let du0 = move |x: f64| -(x - c) / (s * s) * data.eval(x);
            smooth_map(u0, du0, data.domain(), grid)
        }
        InitialData::Riemann { left, right, x0 } => riemann_parametrization(*left, *right, *x0, grid),
        InitialData::PiecewiseConstant { breaks, states } => atomic_map(breaks, states, grid),
        InitialData::Tabulated { xs, us } => tabulated_map(xs, us, grid),
    }
}

/// Riemann data: `μ0` is a single Dirac mass at `x0`.
pub fn riemann_parametrization(
    ul: f64,
    ur: f64,
    x0: f64,
    grid: &SamplingGrid,
) -> Result<InitialParametrization> {
    if ul == ur {
        return Err(ChaError::DegenerateData(format!("riemann data with equal states {ul}")));
    }
    atomic_map(&[x0], &[ul, ur], grid)
}

/// Piecewise-constant data: the k-th jump gets `round(wₖ N)` points, `wₖ = |Δuₖ| / TV`,
/// with largest-remainder correction so the counts sum to `N`.
fn atomic_map(breaks: &[f64], states: &[f64], grid: &SamplingGrid) -> Result<InitialParametrization> {
    let n = grid.len();
    let sizes: Vec<f64> = states.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let tv: f64 = sizes.iter().sum();
    if tv <= 0.0 {
        return Err(ChaError::DegenerateData("zero total variation".into()));
    }
    let ideal: Vec<f64> = sizes.iter().map(|s| s / tv * n as f64).collect();
    let mut counts: Vec<i64> = ideal.iter().map(|v| v.round() as i64).collect();
    let mut total: i64 = counts.iter().sum();
    while total != n as i64 {
        let (k, _) = ideal
            .iter()
            .zip(&counts)
            .enumerate()
            .filter(|(_, (_, &c))| total < n as i64 || c > 0)
            .map(|(k, (&want, &c))| (k, c as f64 - want))
            .min_by(|a, b| {
                let (a, b) = if total > n as i64 { (b.1, a.1) } else { (a.1, b.1) };
                a.total_cmp(&b)
            })
            .expect("at least one jump");
        if total > n as i64 {
            counts[k] -= 1;
            total -= 1;
        } else {
            counts[k] += 1;
            total += 1;
        }
    }

    let mut s0 = Vec::with_capacity(n);
    let mut v0 = Vec::with_capacity(n);
    for (k, &c) in counts.iter().enumerate() {
        let (a, b) = (states[k], states[k + 1]);
        for j in 0..c {
            s0.push(breaks[k]);
            v0.push(a + (j as f64 + 0.5) / c as f64 * (b - a));
        }
    }
    Ok(InitialParametrization { grid: grid.clone(), s0, v0, tv })
}

/// Piecewise-linear data: `μ0` has a piecewise-constant density, so `F` is
/// piecewise linear and is inverted exactly.
fn tabulated_map(xs: &[f64], us: &[f64], grid: &SamplingGrid) -> Result<InitialParametrization> {
    let masses: Vec<f64> = us.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let tv: f64 = masses.iter().sum();
    if tv <= 0.0 {
        return Err(ChaError::DegenerateData("tabulated data is constant".into()));
    }
    let first = masses.iter().position(|&m| m > 0.0).unwrap();
    let last = masses.iter().rposition(|&m| m > 0.0).unwrap();
    if let Some(k) = (first..=last).find(|&k| masses[k] == 0.0) {
        return Err(ChaError::DegenerateData(format!(
            "flat part on [{}, {}]; perturb u0 so that its derivative does not vanish",
            xs[k],
            xs[k + 1]
        )));
    }
    let mut cum = Vec::with_capacity(masses.len() + 1);
    cum.push(0.0);
    for m in &masses {
        cum.push(cum.last().unwrap() + m);
    }
    let data = InitialData::Tabulated { xs: xs.to_vec(), us: us.to_vec() };
    let mut s0 = Vec::with_capacity(grid.len());
    for &y in grid.points() {
        let target = (y + 0.5) * tv;
        let k = (cum.partition_point(|c| *c <= target).max(1) - 1).min(masses.len() - 1);
        let w = if masses[k] > 0.0 { (target - cum[k]) / masses[k] } else { 0.0 };
        s0.push(xs[k] + w.clamp(0.0, 1.0) * (xs[k + 1] - xs[k]));
    }
    let v0 = s0.iter().map(|&x| data.eval(x)).collect();
    Ok(InitialParametrization { grid: grid.clone(), s0, v0, tv })
}

/// Smooth data given by `u0` and its derivative on `domain`.
///
/// The cumulative distribution of `|u0'|` is tabulated by adaptive Simpson
/// quadrature and inverted by bisection to `1e-12` in `x`.
pub fn smooth_map<U, D>(
    u0: U,
    du0: D,
    domain: (f64, f64),
    grid: &SamplingGrid,
) -> Result<InitialParametrization>
where
    U: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let (a, b) = domain;
    if !(b > a) {
        return Err(ChaError::invalid(format!("empty domain [{a}, {b}]")));
    }
    let density = |x: f64| du0(x).abs();
    let width = (b - a) / CDF_CELLS as f64;
    let nodes: Vec<f64> = (0..=CDF_CELLS).map(|k| a + k as f64 * width).collect();
    let mut cum = Vec::with_capacity(CDF_CELLS + 1);
    cum.push(0.0);
    for k in 0..CDF_CELLS {
        let m = adaptive_simpson(&density, nodes[k], nodes[k + 1], QUAD_TOL);
        cum.push(cum[k] + m);
    }
    let tv = cum[CDF_CELLS];
    if !(tv > 0.0) || !tv.is_finite() {
        return Err(ChaError::DegenerateData("zero total variation".into()));
    }
    // A run of empty cells strictly inside the support is a flat part.
    let first = cum.iter().position(|&c| c > 0.0).unwrap_or(0);
    let last = cum.iter().position(|&c| c >= tv).unwrap_or(CDF_CELLS);
    let mut flat_run = 0usize;
    for k in first..last {
        if cum[k + 1] - cum[k] <= 0.0 {
            flat_run += 1;
            if flat_run > 1 {
                return Err(ChaError::DegenerateData(format!(
                    "flat part near x = {}; perturb u0 so that its derivative does not vanish",
                    nodes[k]
                )));
            }
        } else {
            flat_run = 0;
        }
    }

    let mut s0 = Vec::with_capacity(grid.len());
    for &y in grid.points() {
        let target = (y + 0.5) * tv;
        let k = (cum.partition_point(|c| *c <= target).max(1) - 1).min(CDF_CELLS - 1);
        let (mut lo, mut hi) = (nodes[k], nodes[k + 1]);
        let base = cum[k];
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if base + adaptive_simpson(&density, nodes[k], mid, QUAD_TOL) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        s0.push(0.5 * (lo + hi));
    }
    let v0 = s0.iter().map(|&x| u0(x)).collect();
    Ok(InitialParametrization { grid: grid.clone(), s0, v0, tv })
}

fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 40)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}
