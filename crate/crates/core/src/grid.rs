use serde::{Deserialize, Serialize};

use crate::error::{ChaError, Result};

/// Midpoint sampling `yᵢ = (i + 1/2)/N − 1/2` of the parameter domain
/// `Λ = (−1/2, 1/2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingGrid {
    points: Vec<f64>,
}

impl SamplingGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(ChaError::invalid(format!("grid needs at least 2 points, got {n}")));
        }
        let nf = n as f64;
        // mirror the lower half so that y_{N-1-i} = -y_i holds bit-for-bit
        let mut points = vec![0.0; n];
        for i in 0..n / 2 {
            let y = (i as f64 + 0.5) / nf - 0.5;
            points[i] = y;
            points[n - 1 - i] = -y;
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Uniform spacing `1/N`, also the quadrature weight of each point.
    pub fn spacing(&self) -> f64 {
        1.0 / self.points.len() as f64
    }
}

/// Shorthand for [`SamplingGrid::new`].
pub fn make_grid(n: usize) -> Result<SamplingGrid> {
    SamplingGrid::new(n)
}
