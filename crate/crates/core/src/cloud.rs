use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ChaError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Dissipative,
    Conservative,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dissipative => "dissipative",
            Mode::Conservative => "conservative",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = ChaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dissipative" => Ok(Mode::Dissipative),
            "conservative" => Ok(Mode::Conservative),
            other => Err(ChaError::invalid(format!("unknown mode `{other}`"))),
        }
    }
}

/// Cloud of points `(xᵢ, uᵢ)` representing `u(t, ·)`.
///
/// Positions move with time; values are the frozen parametrized initial
/// values `v0(yᵢ)` (permuted in conservative mode).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionCloud {
    pub time: f64,
    pub xs: Vec<f64>,
    pub us: Vec<f64>,
    pub mode: Mode,
}

impl SolutionCloud {
    pub fn new(time: f64, xs: Vec<f64>, us: Vec<f64>, mode: Mode) -> Result<Self> {
        if xs.len() != us.len() {
            return Err(ChaError::invalid(format!(
                "cloud arrays differ in length: {} vs {}",
                xs.len(),
                us.len()
            )));
        }
        if xs.is_empty() {
            return Err(ChaError::invalid("empty cloud"));
        }
        if xs.windows(2).any(|w| w[1] < w[0]) {
            return Err(ChaError::invalid("cloud positions must be non-decreasing"));
        }
        Ok(Self { time, xs, us, mode })
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.xs[0], self.xs[self.xs.len() - 1])
    }

    /// Trapezoid `∫ g(u) dx` over the cloud; coincident points add nothing.
    pub fn integrate<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        self.xs
            .windows(2)
            .zip(self.us.windows(2))
            .map(|(x, u)| 0.5 * (g(u[0]) + g(u[1])) * (x[1] - x[0]))
            .sum()
    }

    /// Discrete entropy `Σ U(uᵢ) / N`.
    pub fn mean_of<G: Fn(f64) -> f64>(&self, g: G) -> f64 {
        self.us.iter().map(|&u| g(u)).sum::<f64>() / self.us.len() as f64
    }
}
