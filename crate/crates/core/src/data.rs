//! Initial data descriptions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{ChaError, Result};

/// Initial data `u0` on a bounded interval of interest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialData {
    /// Normal density `exp(−(x−c)²/(2σ²)) / (σ√(2π))`.
    Gaussian { center: f64, sigma: f64 },
    /// `left` for `x < x0`, `right` for `x ≥ x0`.
    Riemann { left: f64, right: f64, x0: f64 },
    /// `states[k]` on `[breaks[k−1], breaks[k])`, with `states.len() == breaks.len() + 1`.
    PiecewiseConstant { breaks: Vec<f64>, states: Vec<f64> },
    /// Piecewise-linear interpolation of `(xs, us)`, constant outside.
    Tabulated { xs: Vec<f64>, us: Vec<f64> },
}

/// Half-width of the Gaussian domain in units of σ.
const GAUSSIAN_HALF_WIDTH: f64 = 12.0;

impl InitialData {
    pub fn gaussian() -> Self {
        InitialData::Gaussian { center: 0.0, sigma: 1.0 }
    }

    pub fn riemann(left: f64, right: f64, x0: f64) -> Result<Self> {
        let d = InitialData::Riemann { left, right, x0 };
        d.validate()?;
        Ok(d)
    }

    pub fn piecewise_constant(breaks: Vec<f64>, states: Vec<f64>) -> Result<Self> {
        let d = InitialData::PiecewiseConstant { breaks, states };
        d.validate()?;
        Ok(d)
    }

    pub fn tabulated(xs: Vec<f64>, us: Vec<f64>) -> Result<Self> {
        let d = InitialData::Tabulated { xs, us };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        match self {
            InitialData::Gaussian { center, sigma } => {
                if !center.is_finite() || !(*sigma > 0.0) || !sigma.is_finite() {
                    return Err(ChaError::invalid("gaussian needs a finite center and sigma > 0"));
                }
            }
            InitialData::Riemann { left, right, x0 } => {
                if !finite(&[*left, *right, *x0]) {
                    return Err(ChaError::invalid("riemann states must be finite"));
                }
                if left == right {
                    return Err(ChaError::DegenerateData(format!(
                        "riemann data with equal states {left}"
                    )));
                }
            }
            InitialData::PiecewiseConstant { breaks, states } => {
                if breaks.is_empty() || states.len() != breaks.len() + 1 {
                    return Err(ChaError::invalid(
                        "piecewise-constant data needs k breaks and k+1 states",
                    ));
                }
                if !finite(breaks) || !finite(states) {
                    return Err(ChaError::invalid("piecewise-constant values must be finite"));
                }
                if breaks.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(ChaError::invalid("breaks must be strictly increasing"));
                }
                if states.windows(2).all(|w| w[0] == w[1]) {
                    return Err(ChaError::DegenerateData("all states are equal".into()));
                }
            }
            InitialData::Tabulated { xs, us } => {
                if xs.len() < 2 || xs.len() != us.len() {
                    return Err(ChaError::invalid("tabulated data needs ≥ 2 aligned samples"));
                }
                if !finite(xs) || !finite(us) {
                    return Err(ChaError::invalid("tabulated values must be finite"));
                }
                if xs.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(ChaError::invalid("tabulated xs must be strictly increasing"));
                }
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            InitialData::Gaussian { center, sigma } => {
                let z = (x - center) / sigma;
                (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
            }
            InitialData::Riemann { left, right, x0 } => {
                if x < *x0 {
                    *left
                } else {
                    *right
                }
            }
            InitialData::PiecewiseConstant { breaks, states } => {
                states[breaks.partition_point(|b| *b <= x)]
            }
            InitialData::Tabulated { xs, us } => {
                let n = xs.len();
                if x <= xs[0] {
                    return us[0];
                }
                if x >= xs[n - 1] {
                    return us[n - 1];
                }
                let k = xs.partition_point(|v| *v <= x) - 1;
                let w = (x - xs[k]) / (xs[k + 1] - xs[k]);
                us[k] + w * (us[k + 1] - us[k])
            }
        }
    }

    /// Primitive `w0` with `w0' = u0`, vanishing at the left end of
    /// [`domain`](Self::domain) (at `-∞` for the Gaussian).
    pub fn primitive(&self, x: f64) -> f64 {
        let lo = self.domain().0;
        match self {
            InitialData::Gaussian { center, sigma } => {
                0.5 * libm::erfc(-(x - center) / (sigma * std::f64::consts::SQRT_2))
            }
            InitialData::Riemann { left, right, x0 } => {
                left * (x.min(*x0) - lo) + right * (x - x0).max(0.0)
            }
            InitialData::PiecewiseConstant { breaks, states } => {
                let mut acc = 0.0;
                let mut a = lo;
                for (k, &u) in states.iter().enumerate() {
                    let b = breaks.get(k).copied().unwrap_or(f64::INFINITY);
                    if x <= b {
                        return acc + u * (x - a);
                    }
                    acc += u * (b - a);
                    a = b;
                }
                acc
            }
            InitialData::Tabulated { xs, us } => {
                if x <= xs[0] {
                    return us[0] * (x - xs[0]);
                }
                let mut acc = 0.0;
                for k in 0..xs.len() - 1 {
                    let (a, b) = (xs[k], xs[k + 1]);
                    if x <= b {
                        let ux = self.eval(x);
                        return acc + 0.5 * (us[k] + ux) * (x - a);
                    }
                    acc += 0.5 * (us[k] + us[k + 1]) * (b - a);
                }
                acc + us[us.len() - 1] * (x - xs[xs.len() - 1])
            }
        }
    }

    /// Interval on which the data varies (padded for the jump kinds).
    pub fn domain(&self) -> (f64, f64) {
        match self {
            InitialData::Gaussian { center, sigma } => (
                center - GAUSSIAN_HALF_WIDTH * sigma,
                center + GAUSSIAN_HALF_WIDTH * sigma,
            ),
            InitialData::Riemann { x0, .. } => (x0 - 1.0, x0 + 1.0),
            InitialData::PiecewiseConstant { breaks, .. } => {
                let (a, b) = (breaks[0], breaks[breaks.len() - 1]);
                let pad = ((b - a) * 0.5).max(1.0);
                (a - pad, b + pad)
            }
            InitialData::Tabulated { xs, .. } => (xs[0], xs[xs.len() - 1]),
        }
    }

    pub fn total_variation(&self) -> f64 {
        let jumps = |v: &[f64]| v.windows(2).map(|w| (w[1] - w[0]).abs()).sum::<f64>();
        match self {
            // 2 · peak height
            InitialData::Gaussian { sigma, .. } => 2.0 / (sigma * (2.0 * PI).sqrt()),
            InitialData::Riemann { left, right, .. } => (right - left).abs(),
            InitialData::PiecewiseConstant { states, .. } => jumps(states),
            InitialData::Tabulated { us, .. } => jumps(us),
        }
    }

    /// Extreme values of `u0`.
    pub fn value_range(&self) -> (f64, f64) {
        let minmax = |v: &[f64]| {
            v.iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
        };
        match self {
            InitialData::Gaussian { sigma, .. } => (0.0, 1.0 / (sigma * (2.0 * PI).sqrt())),
            InitialData::Riemann { left, right, .. } => (left.min(*right), left.max(*right)),
            InitialData::PiecewiseConstant { states, .. } => minmax(states),
            InitialData::Tabulated { us, .. } => minmax(us),
        }
    }

    /// Whether `u0` has jump discontinuities (purely atomic `|u0'|`).
    pub fn is_atomic(&self) -> bool {
        matches!(self, InitialData::Riemann { .. } | InitialData::PiecewiseConstant { .. })
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitialData::Gaussian { .. } => "gaussian",
            InitialData::Riemann { .. } => "riemann",
            InitialData::PiecewiseConstant { .. } => "piecewise-constant",
            InitialData::Tabulated { .. } => "tabulated",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation() {
        let g = InitialData::gaussian();
        assert!((g.eval(0.0) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);

        let r = InitialData::riemann(-0.5, 0.5, 0.0).unwrap();
        assert_eq!(r.eval(-1e-9), -0.5);
        assert_eq!(r.eval(0.0), 0.5);

        let p = InitialData::piecewise_constant(vec![-0.5, 0.5], vec![1.0, -0.5, 0.25]).unwrap();
        assert_eq!(p.eval(-0.6), 1.0);
        assert_eq!(p.eval(-0.5), -0.5);
        assert_eq!(p.eval(0.49), -0.5);
        assert_eq!(p.eval(0.5), 0.25);
        assert!((p.total_variation() - 2.25).abs() < 1e-15);

        let t = InitialData::tabulated(vec![0.0, 1.0, 2.0], vec![0.0, 2.0, 1.0]).unwrap();
        assert_eq!(t.eval(0.5), 1.0);
        assert_eq!(t.eval(1.5), 1.5);
        assert_eq!(t.eval(5.0), 1.0);
        assert_eq!(t.total_variation(), 3.0);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            InitialData::riemann(1.0, 1.0, 0.0),
            Err(ChaError::DegenerateData(_))
        ));
        assert!(InitialData::piecewise_constant(vec![0.0], vec![1.0]).is_err());
        assert!(InitialData::piecewise_constant(vec![0.0, 1.0], vec![2.0, 2.0, 2.0]).is_err());
        assert!(InitialData::tabulated(vec![0.0, 0.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn primitive_differentiates_to_data() {
        let cases = [
            InitialData::gaussian(),
            InitialData::riemann(1.0, 0.0, 0.5).unwrap(),
            InitialData::piecewise_constant(vec![-1.0, 1.0], vec![0.0, 1.0, 0.25]).unwrap(),
            InitialData::tabulated(vec![-1.0, 0.0, 2.0], vec![0.0, 1.0, -1.0]).unwrap(),
        ];
        let h = 1e-6;
        for data in &cases {
            for k in 0..40 {
                let x = -2.05 + 0.1 * k as f64;
                let fd = (data.primitive(x + h) - data.primitive(x - h)) / (2.0 * h);
                assert!((fd - data.eval(x)).abs() < 1e-6, "{} at {x}", data.kind());
            }
        }
        assert_eq!(InitialData::gaussian().primitive(0.0), 0.5);
    }

    #[test]
    fn serde_tagging() {
        let d = InitialData::riemann(0.0, 4.5, 0.0).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"kind\":\"riemann\""));
    }
}
