//! Lower convex hull of a sampled potential and the transformed map `S⁺`.

use crate::error::{ChaError, Result};
use crate::grid::SamplingGrid;
use crate::hodge::{self, BasisSystem, PotentialCoefficients};
use crate::exec::Execution;

#[derive(Debug, Clone, PartialEq)]
pub struct HullResult {
    pub grid: SamplingGrid,
    /// `h⁺(yᵢ)`.
    pub h_plus: Vec<f64>,
    /// `S⁺(yᵢ)`, non-decreasing.
    pub s_plus: Vec<f64>,
    /// `h⁺(yᵢ) = h(yᵢ)`.
    pub contact: Vec<bool>,
    /// Indices of the hull vertices, increasing.
    pub vertices: Vec<usize>,
}

fn collinear_tol(a: f64, b: f64, c: f64) -> f64 {
    8.0 * f64::EPSILON * (a.abs() + b.abs() + c.abs()) + f64::MIN_POSITIVE
}

/// Vertices of the lower hull of `(xs[i], hs[i])` for sorted `xs`
/// (monotone chain; near-collinear points are dropped).
pub fn lower_hull_vertices(xs: &[f64], hs: &[f64]) -> Vec<usize> {
    let mut stack: Vec<usize> = Vec::with_capacity(xs.len());
    for i in 0..xs.len() {
        while stack.len() >= 2 {
            let o = stack[stack.len() - 2];
            let a = stack[stack.len() - 1];
            let chord = hs[o] + (hs[i] - hs[o]) * (xs[a] - xs[o]) / (xs[i] - xs[o]);
            if hs[a] - chord >= -collinear_tol(hs[o], hs[a], hs[i]) {
                stack.pop();
            } else {
                break;
            }
        }
        stack.push(i);
    }
    stack
}

/// Central differences of `h` (one-sided at the ends).
pub fn finite_difference_gradient(grid: &SamplingGrid, h: &[f64]) -> Vec<f64> {
    let y = grid.points();
    let n = h.len();
    (0..n)
        .map(|i| {
            let (a, b) = (i.saturating_sub(1), (i + 1).min(n - 1));
            (h[b] - h[a]) / (y[b] - y[a])
        })
        .collect()
}

pub fn lower_convex_hull(grid: &SamplingGrid, h_values: &[f64]) -> Result<HullResult> {
    check_len(grid, h_values.len())?;
    let g = finite_difference_gradient(grid, h_values);
    lower_convex_hull_with_gradient(grid, h_values, &g)
}

/// Lower hull with a reference gradient `g ∈ ∂h`.
///
/// Between vertices `S⁺` is the chord slope. At a vertex it is `gᵢ` clamped
/// into the hull subdifferential `[left slope, right slope]`, so `S⁺ = g`
/// wherever the hull is locally the original function.
pub fn lower_convex_hull_with_gradient(
    grid: &SamplingGrid,
    h_values: &[f64],
    gradient: &[f64],
) -> Result<HullResult> {
    check_len(grid, h_values.len())?;
    check_len(grid, gradient.len())?;
    let y = grid.points();
    let n = y.len();
    let vertices = lower_hull_vertices(y, h_values);
    let slopes: Vec<f64> = vertices
        .windows(2)
        .map(|w| (h_values[w[1]] - h_values[w[0]]) / (y[w[1]] - y[w[0]]))
        .collect();

    let mut h_plus = vec![0.0; n];
    let mut s_plus = vec![0.0; n];
    for (k, &v) in vertices.iter().enumerate() {
        h_plus[v] = h_values[v];
        let lo = if k > 0 { slopes[k - 1] } else { f64::NEG_INFINITY };
        let hi = slopes.get(k).copied().unwrap_or(f64::INFINITY);
        s_plus[v] = gradient[v].max(lo).min(hi);
    }
    for (k, w) in vertices.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        for i in a + 1..b {
            h_plus[i] = h_values[a] + slopes[k] * (y[i] - y[a]);
            s_plus[i] = slopes[k];
        }
    }
    let contact = h_plus
        .iter()
        .zip(h_values)
        .map(|(&p, &h)| (p - h).abs() <= collinear_tol(p, h, 0.0) * 4.0)
        .collect();
    Ok(HullResult { grid: grid.clone(), h_plus, s_plus, contact, vertices })
}

/// Convex hull transform in coefficient space: `α ↦ α⁺` with
/// `Σ α⁺ₙ ψ_{Yₙ} = h⁺` at every grid point.
pub fn hull_transform(coeffs: &PotentialCoefficients) -> Result<PotentialCoefficients> {
    hull_transform_with(&BasisSystem::new(&coeffs.grid), coeffs)
}

pub fn hull_transform_with(
    system: &BasisSystem,
    coeffs: &PotentialCoefficients,
) -> Result<PotentialCoefficients> {
    if system.grid() != &coeffs.grid {
        return Err(ChaError::invalid("basis system and coefficients use different grids"));
    }
    let y = coeffs.grid.points();
    let exec = Execution::default();
    let h = hodge::potential_on(coeffs, y, exec);
    let g = hodge::gradient_on(coeffs, y, exec);
    let hull = lower_convex_hull_with_gradient(&coeffs.grid, &h, &g)?;
    system.interpolate(&hull.h_plus)
}

fn check_len(grid: &SamplingGrid, len: usize) -> Result<()> {
    if len != grid.len() {
        return Err(ChaError::invalid(format!("{len} values for a grid of {}", grid.len())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::InitialData;
    use crate::grid::make_grid;
    use crate::hodge::{gradient_on, project, PotentialCoefficients};
    use crate::parametrization::initial_map;
    use proptest::prelude::*;

    /// Greatest convex minorant at each node: the lowest chord through a
    /// bracketing pair of nodes.
    fn brute_force_hull(y: &[f64], h: &[f64]) -> Vec<f64> {
        let n = y.len();
        (0..n)
            .map(|i| {
                let mut best = h[i];
                for j in 0..=i {
                    for k in i..n {
                        if j < k {
                            let v = h[j] + (h[k] - h[j]) * (y[i] - y[j]) / (y[k] - y[j]);
                            best = best.min(v);
                        }
                    }
                }
                best
            })
            .collect()
    }

    fn second_differences_ok(y: &[f64], h: &[f64]) -> bool {
        (1..h.len() - 1).all(|i| {
            let l = (h[i] - h[i - 1]) / (y[i] - y[i - 1]);
            let r = (h[i + 1] - h[i]) / (y[i + 1] - y[i]);
            r - l >= -1e-12
        })
    }

    #[test]
    fn convex_input_is_unchanged() {
        let grid = make_grid(50).unwrap();
        let h: Vec<f64> = grid.points().iter().map(|y| y * y).collect();
        let r = lower_convex_hull(&grid, &h).unwrap();
        assert_eq!(r.h_plus, h);
        assert!(r.contact.iter().all(|&c| c));
        assert_eq!(r.s_plus, finite_difference_gradient(&grid, &h));
    }

    #[test]
    fn tent_becomes_chord() {
        let grid = make_grid(3).unwrap();
        let r = lower_convex_hull(&grid, &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!(r.h_plus, vec![0.0, 0.0, 0.0]);
        assert_eq!(r.contact, vec![true, false, true]);
        assert_eq!(r.s_plus, vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn burgers_shock_is_one_flat_run() {
        let grid = make_grid(100).unwrap();
        let p = initial_map(&InitialData::gaussian(), &grid).unwrap();
        let s: Vec<f64> = p.s0.iter().zip(&p.v0).map(|(a, v)| a + 6.0 * v).collect();
        let h = hodge::cumulative_potential(&grid, &s);
        let r = lower_convex_hull_with_gradient(&grid, &h, &s).unwrap();
        let mut runs = Vec::new();
        let mut i = 0;
        while i < r.contact.len() {
            if !r.contact[i] {
                let start = i;
                while i < r.contact.len() && !r.contact[i] {
                    i += 1;
                }
                runs.push((start, i));
            } else {
                i += 1;
            }
        }
        assert_eq!(runs.len(), 1, "runs {runs:?}");
        let (a, b) = runs[0];
        assert!(r.s_plus[a..b].windows(2).all(|w| w[0] == w[1]));
        assert!(r.s_plus.windows(2).all(|w| w[1] >= w[0]));
        // contact points keep the original characteristic position
        for i in 0..100 {
            if r.contact[i] && (i + 1 < a || i > b) {
                assert_eq!(r.s_plus[i], s[i]);
            }
        }
    }

    #[test]
    fn transform_of_convex_potential_is_identity() {
        let grid = make_grid(40).unwrap();
        let alphas: Vec<f64> = (0..40).map(|i| 0.1 + (i % 7) as f64 * 0.3).collect();
        let c = PotentialCoefficients::new(grid.clone(), alphas).unwrap();
        let plus = hull_transform(&c).unwrap();
        let g0 = gradient_on(&c, grid.points(), Execution::Sequential);
        let g1 = gradient_on(&plus, grid.points(), Execution::Sequential);
        for (a, b) in g0.iter().zip(&g1) {
            assert!((a - b).abs() < 1e-8);
        }
        let zero = hull_transform(&PotentialCoefficients::zeros(grid)).unwrap();
        assert!(zero.alphas.iter().all(|a| a.abs() < 1e-15));
    }

    #[test]
    fn transform_gradient_is_monotone_between_nodes() {
        let grid = make_grid(100).unwrap();
        let p = initial_map(&InitialData::gaussian(), &grid).unwrap();
        let s: Vec<f64> = p.s0.iter().zip(&p.v0).map(|(a, v)| a + 6.0 * v).collect();
        let c = project(&grid, &s).unwrap();
        let plus = hull_transform(&c).unwrap();
        let fine: Vec<f64> = (1..1000).map(|k| -0.5 + k as f64 / 1000.0).collect();
        let g = gradient_on(&plus, &fine, Execution::default());
        let worst = g.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        assert!(worst >= -1e-9, "largest decrease {worst}");
    }

    #[test]
    fn rejects_length_mismatch() {
        let grid = make_grid(4).unwrap();
        assert!(lower_convex_hull(&grid, &[0.0; 3]).is_err());
    }

    proptest! {
        #[test]
        fn matches_brute_force(values in prop::collection::vec(-1.0f64..1.0, 2..=12)) {
            let grid = make_grid(values.len()).unwrap();
            let y = grid.points();
            let r = lower_convex_hull(&grid, &values).unwrap();
            let brute = brute_force_hull(y, &values);
            for i in 0..values.len() {
                prop_assert!((r.h_plus[i] - brute[i]).abs() < 1e-12);
                prop_assert!(r.h_plus[i] <= values[i] + 1e-12);
            }
            prop_assert!(second_differences_ok(y, &r.h_plus));
            prop_assert!(r.s_plus.windows(2).all(|w| w[1] >= w[0]));
            let again = lower_convex_hull(&grid, &r.h_plus).unwrap();
            prop_assert_eq!(&again.h_plus, &r.h_plus);
        }

        #[test]
        fn flat_runs_are_non_contact_runs(values in prop::collection::vec(-1.0f64..1.0, 3..=30)) {
            let grid = make_grid(values.len()).unwrap();
            let r = lower_convex_hull(&grid, &values).unwrap();
            for w in r.vertices.windows(2) {
                for i in w[0] + 1..w[1] {
                    prop_assert_eq!(r.s_plus[i], r.s_plus[w[0] + 1]);
                }
            }
            for (i, c) in r.contact.iter().enumerate() {
                if !c {
                    prop_assert!(!r.vertices.contains(&i));
                }
            }
        }
    }
}
