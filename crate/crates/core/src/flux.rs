//! Polynomial flux functions with analytic derivatives.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ChaError, Result};

/// A flux (or Hamiltonian) `f(u) = Σ cₖ uᵏ`.
///
/// Coefficients are stored in ascending order. All built-in fluxes are
/// polynomials, so derivatives are exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluxModel {
    label: String,
    coeffs: Vec<f64>,
}

impl FluxModel {
    pub fn polynomial(label: impl Into<String>, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(ChaError::invalid("polynomial flux needs finite coefficients"));
        }
        Ok(Self { label: label.into(), coeffs })
    }

    /// `u²/2`.
    pub fn burgers() -> Self {
        Self { label: "burgers".into(), coeffs: vec![0.0, 0.0, 0.5] }
    }

    /// `u³/3 − u`, one inflection point at 0.
    pub fn cubic() -> Self {
        Self { label: "cubic".into(), coeffs: vec![0.0, -1.0, 0.0, 1.0 / 3.0] }
    }

    /// `−u(u−1)(u−2)(u−3)(u−5)/200`, expanded.
    pub fn quintic() -> Self {
        let c = [0.0, -30.0, 61.0, -41.0, 11.0, -1.0];
        Self { label: "quintic".into(), coeffs: c.iter().map(|v| v / 200.0).collect() }
    }

    pub fn builtin(label: &str) -> Result<Self> {
        match label {
            "burgers" => Ok(Self::burgers()),
            "cubic" => Ok(Self::cubic()),
            "quintic" => Ok(Self::quintic()),
            other => Err(ChaError::invalid(format!("unknown flux `{other}`"))),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn f(&self, u: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    pub fn fprime(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * u + k as f64 * c)
    }

    pub fn fsecond(&self, u: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(2)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * u + (k * (k - 1)) as f64 * c)
    }

    /// Checks `f'' ≥ −tol` on `samples` points of `[lo, hi]`.
    pub fn is_convex_on(&self, lo: f64, hi: f64, samples: usize) -> bool {
        let samples = samples.max(2);
        let scale = self.coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max).max(1.0);
        (0..samples).all(|k| {
            let u = lo + (hi - lo) * k as f64 / (samples - 1) as f64;
            self.fsecond(u) >= -1e-12 * scale
        })
    }
}

/// Shorthand for [`FluxModel::builtin`].
pub fn builtin_flux(label: &str) -> Result<FluxModel> {
    FluxModel::builtin(label)
}

impl fmt::Display for FluxModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}
