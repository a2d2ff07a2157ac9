//! Projection of a sampled map onto the non-local basis `ψ_Y(x) = |x − Y| / 2`.
//!
//! A potential `h = Σ αₙ ψ_{Yₙ}` is piecewise linear with a kink of size `αₙ`
//! at every grid point. Two linear systems are available:
//!
//! * [`project`] solves the normal equations of the *sampled* least-squares
//!   problem `min Σᵢ |S(yᵢ) − Σₙ αₙ ψ'_{Yₙ}(yᵢ)|²`, whose Gram matrix is the
//!   closed form with `1/(4N)` removed from the diagonal. For even `N` the
//!   sampled gradients span the sample space and the round trip
//!   `reconstruct_gradient(project(s), yᵢ) = sᵢ` is exact.
//! * [`project_galerkin`] uses the closed-form Gram matrix
//!   `⟨ψ'_{Yᵢ}, ψ'_{Yⱼ}⟩ = (1 − 2|yᵢ − yⱼ|)/4`. Its potential is the
//!   cumulative trapezoid integral of the samples, up to a constant.
//!
//! In 1D both agree with [`cumulative_potential`], the fast path used by the
//! solver by default.

use std::sync::OnceLock;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, LU};

use crate::error::{ChaError, Result};
use crate::exec::Execution;
use crate::grid::SamplingGrid;

/// `ψ_Y(x) = |x − Y| / 2`.
pub fn basis_value(y_center: f64, x: f64) -> f64 {
    0.5 * (x - y_center).abs()
}

/// `ψ_Y'(x) = sign(x − Y) / 2`, with 0 at the kink.
pub fn basis_gradient(y_center: f64, x: f64) -> f64 {
    if x > y_center {
        0.5
    } else if x < y_center {
        -0.5
    } else {
        0.0
    }
}

/// Closed-form Gram matrix `Gᵢⱼ = (1 − 2|yᵢ − yⱼ|)/4` on `Λ = (−1/2, 1/2)`.
pub fn gram_matrix(grid: &SamplingGrid) -> DMatrix<f64> {
    gram_matrix_with(grid, Execution::default())
}

pub fn gram_matrix_with(grid: &SamplingGrid, exec: Execution) -> DMatrix<f64> {
    let y = grid.points();
    let n = y.len();
    let rows = exec.map_range(n, |i| {
        y.iter().map(|&yj| 0.25 * (1.0 - 2.0 * (y[i] - yj).abs())).collect::<Vec<_>>()
    });
    DMatrix::from_row_iterator(n, n, rows.into_iter().flatten())
}

/// Midpoint-rule Gram matrix, consistent with the midpoint right-hand side.
pub fn quadrature_gram_matrix(grid: &SamplingGrid) -> DMatrix<f64> {
    let mut g = gram_matrix(grid);
    let shift = 0.25 * grid.spacing();
    for i in 0..grid.len() {
        g[(i, i)] -= shift;
    }
    g
}

/// Coefficients of `h = Σ αₙ ψ_{Yₙ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialCoefficients {
    pub grid: SamplingGrid,
    pub alphas: Vec<f64>,
    /// `max |Σ αₙ ψ'_{Yₙ}(yᵢ) − sᵢ|` at projection time (0 when built directly).
    pub residual: f64,
}

impl PotentialCoefficients {
    pub fn new(grid: SamplingGrid, alphas: Vec<f64>) -> Result<Self> {
        if alphas.len() != grid.len() {
            return Err(ChaError::invalid(format!(
                "{} coefficients for a grid of {}",
                alphas.len(),
                grid.len()
            )));
        }
        Ok(Self { grid, alphas, residual: 0.0 })
    }

    pub fn zeros(grid: SamplingGrid) -> Self {
        let n = grid.len();
        Self { grid, alphas: vec![0.0; n], residual: 0.0 }
    }
}

pub fn reconstruct_potential(coeffs: &PotentialCoefficients, x: f64) -> f64 {
    coeffs
        .grid
        .points()
        .iter()
        .zip(&coeffs.alphas)
        .map(|(&y, &a)| a * basis_value(y, x))
        .sum()
}

pub fn reconstruct_gradient(coeffs: &PotentialCoefficients, x: f64) -> f64 {
    coeffs
        .grid
        .points()
        .iter()
        .zip(&coeffs.alphas)
        .map(|(&y, &a)| a * basis_gradient(y, x))
        .sum()
}

/// [`reconstruct_potential`] at many points.
pub fn potential_on(coeffs: &PotentialCoefficients, xs: &[f64], exec: Execution) -> Vec<f64> {
    exec.map_slice(xs, |&x| reconstruct_potential(coeffs, x))
}

/// [`reconstruct_gradient`] at many points.
pub fn gradient_on(coeffs: &PotentialCoefficients, xs: &[f64], exec: Execution) -> Vec<f64> {
    exec.map_slice(xs, |&x| reconstruct_gradient(coeffs, x))
}

/// Cumulative trapezoid integral of the samples, `h(y₀) = 0`.
pub fn cumulative_potential(grid: &SamplingGrid, s_values: &[f64]) -> Vec<f64> {
    let dy = grid.spacing();
    let mut h = Vec::with_capacity(s_values.len());
    let mut acc = 0.0;
    h.push(acc);
    for w in s_values.windows(2) {
        acc += 0.5 * (w[0] + w[1]) * dy;
        h.push(acc);
    }
    h
}

/// Factorizations attached to one grid, built on first use.
///
/// All matrices depend on the grid only, so a system can be shared across
/// every time level and across threads.
pub struct BasisSystem {
    grid: SamplingGrid,
    exec: Execution,
    sampled: OnceLock<Option<Cholesky<f64, Dyn>>>,
    galerkin: OnceLock<Option<Cholesky<f64, Dyn>>>,
    values: OnceLock<LU<f64, Dyn, Dyn>>,
}

impl BasisSystem {
    pub fn new(grid: &SamplingGrid) -> Self {
        Self::with_execution(grid, Execution::default())
    }

    pub fn with_execution(grid: &SamplingGrid, exec: Execution) -> Self {
        Self {
            grid: grid.clone(),
            exec,
            sampled: OnceLock::new(),
            galerkin: OnceLock::new(),
            values: OnceLock::new(),
        }
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    /// `bᵢ = (1/N) Σ_{n≠i} sₙ ψ'_{Yᵢ}(yₙ)`.
    fn rhs(&self, s_values: &[f64]) -> Result<DVector<f64>> {
        let n = self.grid.len();
        if s_values.len() != n {
            return Err(ChaError::invalid(format!(
                "{} samples for a grid of {n}",
                s_values.len()
            )));
        }
        let dy = self.grid.spacing();
        // ψ'_{Yᵢ}(yₙ) = −1/2 for n < i and +1/2 for n > i
        let mut prefix = vec![0.0; n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] + s_values[k];
        }
        let total = prefix[n];
        let b = (0..n).map(|i| {
            let below = prefix[i];
            let above = total - prefix[i + 1];
            0.5 * (above - below) * dy
        });
        Ok(DVector::from_iterator(n, b))
    }

    fn finish(&self, alphas: DVector<f64>, s_values: &[f64]) -> PotentialCoefficients {
        let mut coeffs = PotentialCoefficients {
            grid: self.grid.clone(),
            alphas: alphas.iter().copied().collect(),
            residual: 0.0,
        };
        let g = gradient_on(&coeffs, self.grid.points(), self.exec);
        coeffs.residual = g.iter().zip(s_values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        coeffs
    }

    /// Sampled least-squares projection; requires an even number of points.
    pub fn project(&self, s_values: &[f64]) -> Result<PotentialCoefficients> {
        let b = self.rhs(s_values)?;
        let chol = self.sampled.get_or_init(|| {
            if self.grid.len() % 2 == 1 {
                return None;
            }
            Cholesky::new(quadrature_gram_matrix(&self.grid))
        });
        let chol = chol.as_ref().ok_or_else(|| {
            ChaError::LinearAlgebra(format!(
                "sampled Gram matrix is singular for odd N = {}",
                self.grid.len()
            ))
        })?;
        Ok(self.finish(chol.solve(&b), s_values))
    }

    /// Galerkin projection with the closed-form Gram matrix.
    pub fn project_galerkin(&self, s_values: &[f64]) -> Result<PotentialCoefficients> {
        let b = self.rhs(s_values)?;
        let chol = self
            .galerkin
            .get_or_init(|| Cholesky::new(gram_matrix_with(&self.grid, self.exec)))
            .as_ref()
            .ok_or_else(|| ChaError::LinearAlgebra("Gram matrix is not positive definite".into()))?;
        Ok(self.finish(chol.solve(&b), s_values))
    }

    /// Coefficients whose potential takes the values `h_values` at the grid points.
    pub fn interpolate(&self, h_values: &[f64]) -> Result<PotentialCoefficients> {
        let n = self.grid.len();
        if h_values.len() != n {
            return Err(ChaError::invalid(format!("{} values for a grid of {n}", h_values.len())));
        }
        let lu = self.values.get_or_init(|| {
            let y = self.grid.points();
            DMatrix::from_fn(n, n, |i, j| basis_value(y[j], y[i])).lu()
        });
        let alphas = lu
            .solve(&DVector::from_column_slice(h_values))
            .ok_or_else(|| ChaError::LinearAlgebra("basis value matrix is singular".into()))?;
        Ok(PotentialCoefficients {
            grid: self.grid.clone(),
            alphas: alphas.iter().copied().collect(),
            residual: 0.0,
        })
    }
}

/// One-shot [`BasisSystem::project`].
pub fn project(grid: &SamplingGrid, s_values: &[f64]) -> Result<PotentialCoefficients> {
    BasisSystem::new(grid).project(s_values)
}

/// One-shot [`BasisSystem::project_galerkin`].
pub fn project_galerkin(grid: &SamplingGrid, s_values: &[f64]) -> Result<PotentialCoefficients> {
    BasisSystem::new(grid).project_galerkin(s_values)
}
