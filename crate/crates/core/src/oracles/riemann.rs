//! Entropy solution of the scalar Riemann problem from the convex hull
//! (lower for `ul < ur`, upper for `ul > ur`) of the flux.

use serde::{Deserialize, Serialize};

use crate::error::{ChaError, Result};
use crate::flux::FluxModel;
use crate::hull::lower_hull_vertices;

const SAMPLES: usize = 10_000;
const POLISH_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Wave {
    Shock { u_left: f64, u_right: f64, speed: f64 },
    Rarefaction { u_left: f64, u_right: f64, speed_left: f64, speed_right: f64 },
}

impl Wave {
    pub fn is_shock(&self) -> bool {
        matches!(self, Wave::Shock { .. })
    }

    pub fn states(&self) -> (f64, f64) {
        match *self {
            Wave::Shock { u_left, u_right, .. } | Wave::Rarefaction { u_left, u_right, .. } => {
                (u_left, u_right)
            }
        }
    }

    /// Slowest and fastest speed of the wave.
    pub fn speeds(&self) -> (f64, f64) {
        match *self {
            Wave::Shock { speed, .. } => (speed, speed),
            Wave::Rarefaction { speed_left, speed_right, .. } => (speed_left, speed_right),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiemannSolution {
    pub flux: FluxModel,
    pub ul: f64,
    pub ur: f64,
    /// Waves in order of increasing speed.
    pub waves: Vec<Wave>,
}

impl RiemannSolution {
    /// Self-similar profile `u(ξ)`, `ξ = (x - x0) / t`; left limit at shocks.
    pub fn sample(&self, xi: f64) -> f64 {
        let mut u = self.ul;
        for wave in &self.waves {
            match *wave {
                Wave::Shock { u_right, speed, .. } => {
                    if xi <= speed {
                        return u;
                    }
                    u = u_right;
                }
                Wave::Rarefaction { u_left, u_right, speed_left, speed_right } => {
                    if xi <= speed_left {
                        return u;
                    }
                    if xi < speed_right {
                        return self.invert_speed(u_left, u_right, xi);
                    }
                    u = u_right;
                }
            }
        }
        u
    }

    pub fn shock_count(&self) -> usize {
        self.waves.iter().filter(|w| w.is_shock()).count()
    }

    pub fn rarefaction_count(&self) -> usize {
        self.waves.len() - self.shock_count()
    }

    /// `f'(u) = xi` inside a rarefaction, by bisection.
    fn invert_speed(&self, a: f64, b: f64, xi: f64) -> f64 {
        let increasing = self.flux.fprime(b) >= self.flux.fprime(a);
        let (mut lo, mut hi) = (a, b);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (self.flux.fprime(mid) < xi) == increasing {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo).abs() <= 1e-15 * (1.0 + mid.abs()) {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Hull piece in ascending `u`: `[a, b]`, linear (shock) or curved.
#[derive(Debug, Clone, Copy)]
struct Piece {
    a: f64,
    b: f64,
    linear: bool,
}

pub fn riemann_exact(flux: &FluxModel, ul: f64, ur: f64) -> Result<RiemannSolution> {
    if !(ul.is_finite() && ur.is_finite()) || ul == ur {
        return Err(ChaError::invalid(format!("Riemann states must be finite and distinct, got {ul}, {ur}")));
    }
    let sign = if ul < ur { 1.0 } else { -1.0 };
    let g = |u: f64| sign * flux.f(u);
    let dg = |u: f64| sign * flux.fprime(u);
    let ddg = |u: f64| sign * flux.fsecond(u);
    let (lo, hi) = (ul.min(ur), ul.max(ur));

    let mut us: Vec<f64> = (0..=SAMPLES).map(|k| lo + (hi - lo) * k as f64 / SAMPLES as f64).collect();
    us[SAMPLES] = hi;
    let gs: Vec<f64> = us.iter().map(|&u| g(u)).collect();
    let vertices = lower_hull_vertices(&us, &gs);
    let scale = gs.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);

    let mut pieces: Vec<Piece> = Vec::new();
    for w in vertices.windows(2) {
        let (i, j) = (w[0], w[1]);
        let linear = j > i + 1 && {
            let slope = (gs[j] - gs[i]) / (us[j] - us[i]);
            (i + 1..j).any(|k| gs[k] - (gs[i] + slope * (us[k] - us[i])) > 1e-12 * scale)
        };
        match pieces.last_mut() {
            Some(p) if !p.linear && !linear => p.b = us[j],
            _ => pieces.push(Piece { a: us[i], b: us[j], linear }),
        }
    }

    for k in 0..pieces.len() {
        if !pieces[k].linear {
            continue;
        }
        let (a, b) = (pieces[k].a, pieces[k].b);
        let (a, b) = polish_tangency(a, b, a > lo, b < hi, &g, &dg, &ddg);
        pieces[k].a = a;
        pieces[k].b = b;
        if k > 0 {
            pieces[k - 1].b = a;
        }
        if k + 1 < pieces.len() {
            pieces[k + 1].a = b;
        }
    }

    let mut waves: Vec<Wave> = pieces
        .iter()
        .filter(|p| p.b > p.a)
        .map(|p| {
            let (u_left, u_right) = if sign > 0.0 { (p.a, p.b) } else { (p.b, p.a) };
            if p.linear {
                let speed = (flux.f(u_right) - flux.f(u_left)) / (u_right - u_left);
                Wave::Shock { u_left, u_right, speed }
            } else {
                Wave::Rarefaction {
                    u_left,
                    u_right,
                    speed_left: flux.fprime(u_left),
                    speed_right: flux.fprime(u_right),
                }
            }
        })
        .collect();
    if sign < 0.0 {
        waves.reverse();
    }
    Ok(RiemannSolution { flux: flux.clone(), ul, ur, waves })
}

/// Newton refinement of a hull chord whose free end points are tangent to `g`.
fn polish_tangency<G, D, DD>(
    mut a: f64,
    mut b: f64,
    free_a: bool,
    free_b: bool,
    g: &G,
    dg: &D,
    ddg: &DD,
) -> (f64, f64)
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
    DD: Fn(f64) -> f64,
{
    let (a0, b0) = (a, b);
    let cell = (b - a).abs() / 50.0;
    for _ in 0..100 {
        let s = (g(b) - g(a)) / (b - a);
        let ds_da = (s - dg(a)) / (b - a);
        let ds_db = (dg(b) - s) / (b - a);
        let (da, db) = match (free_a, free_b) {
            (true, true) => {
                let (f1, f2) = (dg(a) - s, dg(b) - s);
                let (j11, j12, j21, j22) = (ddg(a) - ds_da, -ds_db, -ds_da, ddg(b) - ds_db);
                let det = j11 * j22 - j12 * j21;
                if det == 0.0 {
                    break;
                }
                (-(f1 * j22 - f2 * j12) / det, -(j11 * f2 - j21 * f1) / det)
            }
            (true, false) => {
                let d = ddg(a) - ds_da;
                if d == 0.0 {
                    break;
                }
                (-(dg(a) - s) / d, 0.0)
            }
            (false, true) => {
                let d = ddg(b) - ds_db;
                if d == 0.0 {
                    break;
                }
                (0.0, -(dg(b) - s) / d)
            }
            (false, false) => break,
        };
        a += da;
        b += db;
        if da.abs().max(db.abs()) <= POLISH_TOL * (1.0 + a.abs().max(b.abs())) {
            break;
        }
    }
    // Keep the sampled chord if Newton wandered off.
    if !(a.is_finite() && b.is_finite()) || (a - a0).abs() > cell || (b - b0).abs() > cell || a >= b {
        return (a0, b0);
    }
    (a, b)
}
