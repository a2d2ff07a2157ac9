use serde::{Deserialize, Serialize};

use crate::cloud::SolutionCloud;
use crate::error::{ChaError, Result};
use crate::flux::FluxModel;

/// Relative width below which cloud positions are treated as coincident.
const COINCIDENT: f64 = 1e-9;

/// Generalized inverse of the monotone cloud: linear interpolation between
/// nodes, left limit at a shock.
pub fn evaluate(cloud: &SolutionCloud, x: f64) -> Result<f64> {
    let (lo, hi) = cloud.x_range();
    if !(x >= lo && x <= hi) {
        return Err(ChaError::OutOfDomain { x, lo, hi });
    }
    let k = cloud.xs.partition_point(|&p| p < x);
    if cloud.xs[k] == x || k == 0 {
        return Ok(cloud.us[k]);
    }
    let (x0, x1) = (cloud.xs[k - 1], cloud.xs[k]);
    let (u0, u1) = (cloud.us[k - 1], cloud.us[k]);
    Ok(u0 + (u1 - u0) * (x - x0) / (x1 - x0))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Jump {
    pub position: f64,
    pub u_left: f64,
    pub u_right: f64,
    /// Rankine-Hugoniot speed `[f] / [u]`.
    pub speed: f64,
    /// First and last cloud index of the coincident run.
    pub first: usize,
    pub last: usize,
}

/// Maximal runs of coincident positions whose values spread more than
/// `min_strength`.
pub fn jump_set(cloud: &SolutionCloud, flux: &FluxModel, min_strength: f64) -> Vec<Jump> {
    let n = cloud.len();
    let (lo, hi) = cloud.x_range();
    let eps = COINCIDENT * (hi - lo);
    let mut jumps = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && cloud.xs[j + 1] - cloud.xs[i] <= eps {
            j += 1;
        }
        if j > i {
            let u_left = cloud.us[i.saturating_sub(1)];
            let u_right = cloud.us[(j + 1).min(n - 1)];
            let (mn, mx) = value_bounds(&cloud.us[i.saturating_sub(1)..(j + 2).min(n)]);
            if mx - mn > min_strength {
                let speed = if u_right != u_left {
                    (flux.f(u_right) - flux.f(u_left)) / (u_right - u_left)
                } else {
                    flux.fprime(u_left)
                };
                jumps.push(Jump { position: cloud.xs[i], u_left, u_right, speed, first: i, last: j });
            }
        }
        i = j + 1;
    }
    jumps
}

/// [`jump_set`] with `min_strength = 1e-3 (max u - min u)`.
pub fn jump_set_default(cloud: &SolutionCloud, flux: &FluxModel) -> Vec<Jump> {
    let (mn, mx) = value_bounds(&cloud.us);
    jump_set(cloud, flux, 1e-3 * (mx - mn))
}

/// Index ranges of the cloud between jumps over which `u` varies, i.e.
/// rarefaction fans.
pub fn fan_segments(cloud: &SolutionCloud, jumps: &[Jump]) -> Vec<std::ops::Range<usize>> {
    let (mn, mx) = value_bounds(&cloud.us);
    let (lo, hi) = cloud.x_range();
    let mut bounds = vec![0];
    for j in jumps {
        bounds.push(j.first);
        bounds.push(j.last + 1);
    }
    bounds.push(cloud.len());
    bounds
        .chunks(2)
        .map(|w| w[0]..w[1])
        .filter(|r| r.len() > 1)
        .filter(|r| {
            let (a, b) = value_bounds(&cloud.us[r.clone()]);
            let width = cloud.xs[r.end - 1] - cloud.xs[r.start];
            b - a > 1e-3 * (mx - mn) && width > COINCIDENT * (hi - lo)
        })
        .collect()
}

fn value_bounds(us: &[f64]) -> (f64, f64) {
    us.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &u| (a.min(u), b.max(u)))
}
