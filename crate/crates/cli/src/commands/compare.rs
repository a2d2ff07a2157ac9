use std::path::PathBuf;

use cha_core::oracles::{
    breaking_time, characteristic_solution, godunov_solve, riemann_exact, HopfLax, Wave,
};
use cha_core::parametrization::{initial_map, InitialParametrization};
use cha_core::solver::{evaluate, fan_segments, hamilton_jacobi_solve, jump_set_default, solve_dissipative_with, Jump};
use cha_core::grid::make_grid;
use cha_core::{InitialData, SolutionCloud};
use clap::ValueEnum;
use serde::Serialize;

use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::ensure_dir;

const ORACLE_POINTS: usize = 2000;
const GODUNOV_CELLS: usize = 2000;
const GODUNOV_CFL: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Riemann,
    Godunov,
    Hopflax,
    Characteristics,
}

impl Oracle {
    pub fn name(self) -> &'static str {
        match self {
            Oracle::Riemann => "riemann",
            Oracle::Godunov => "godunov",
            Oracle::Hopflax => "hopflax",
            Oracle::Characteristics => "characteristics",
        }
    }
}

impl std::str::FromStr for Oracle {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        <Oracle as ValueEnum>::from_str(s, false).map_err(|_| CliError::usage(format!("unknown oracle `{s}`")))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TimeReport {
    pub t: f64,
    pub l1: f64,
    pub linf: f64,
    pub jumps: Vec<Jump>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub waves: Option<Vec<Wave>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wave_count_match: Option<bool>,
    /// Largest state error over CHA jumps paired in order with exact shocks.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shock_state_error: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub oracle: Oracle,
    pub flux: String,
    pub init: InitialData,
    pub n: usize,
    pub reports: Vec<TimeReport>,
}

/// Cloud value, continued by its end states outside the cloud.
fn eval_extended(cloud: &SolutionCloud, x: f64) -> f64 {
    let (lo, hi) = cloud.x_range();
    if x <= lo {
        cloud.us[0]
    } else if x >= hi {
        cloud.us[cloud.len() - 1]
    } else {
        evaluate(cloud, x).expect("x inside the cloud range")
    }
}

/// L1 and L∞ distance on a uniform grid of `[a, b]`.
fn distances<F, G>(a: f64, b: f64, mut cha: F, mut oracle: G) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
    G: FnMut(f64) -> f64,
{
    let h = (b - a) / ORACLE_POINTS as f64;
    (0..ORACLE_POINTS)
        .map(|k| {
            let x = a + h * (k as f64 + 0.5);
            (cha(x) - oracle(x)).abs()
        })
        .fold((0.0, 0.0), |(l1, linf), e| (l1 + e * h, f64::max(linf, e)))
}

fn compare_at(config: &RunConfig, p: &InitialParametrization, oracle: Oracle, t: f64) -> CliResult<TimeReport> {
    let flux = &config.flux;
    let cloud = solve_dissipative_with(p, flux, t, &config.solver_options())?;
    let jumps = jump_set_default(&cloud, flux);
    let mut report = TimeReport {
        t,
        l1: 0.0,
        linf: 0.0,
        jumps,
        waves: None,
        wave_count_match: None,
        shock_state_error: None,
    };
    match oracle {
        Oracle::Riemann => {
            let InitialData::Riemann { left, right, x0 } = config.init else {
                return Err(CliError::usage("the riemann oracle needs riemann initial data"));
            };
            if !(t > 0.0) {
                return Err(CliError::usage("the riemann oracle needs t > 0"));
            }
            let exact = riemann_exact(flux, left, right)?;
            let speeds: Vec<f64> = exact.waves.iter().flat_map(|w| [w.speeds().0, w.speeds().1]).collect();
            let (smin, smax) = (speeds[0], speeds[speeds.len() - 1]);
            let pad = 0.1 * t * (smax - smin) + 0.1;
            let (l1, linf) = distances(
                x0 + t * smin - pad,
                x0 + t * smax + pad,
                |x| eval_extended(&cloud, x),
                |x| exact.sample((x - x0) / t),
            );
            let fans = fan_segments(&cloud, &report.jumps).len();
            report.wave_count_match =
                Some(report.jumps.len() == exact.shock_count() && fans == exact.rarefaction_count());
            let shocks: Vec<&Wave> = exact.waves.iter().filter(|w| w.is_shock()).collect();
            if shocks.len() == report.jumps.len() {
                let err = shocks
                    .iter()
                    .zip(&report.jumps)
                    .map(|(w, j)| {
                        let (ul, ur) = w.states();
                        (ul - j.u_left).abs().max((ur - j.u_right).abs())
                    })
                    .fold(0.0, f64::max);
                report.shock_state_error = Some(err);
            }
            report.waves = Some(exact.waves);
            (report.l1, report.linf) = (l1, linf);
        }
        Oracle::Godunov => {
            let fv = godunov_solve(flux, &config.init, t, GODUNOV_CELLS, GODUNOV_CFL)?;
            let (l1, linf) = distances(fv.lower, fv.upper, |x| eval_extended(&cloud, x), |x| fv.sample(x));
            (report.l1, report.linf) = (l1, linf);
        }
        Oracle::Characteristics => {
            if config.init.is_atomic() {
                return Err(CliError::usage("the characteristics oracle needs smooth initial data"));
            }
            let tb = breaking_time(flux, &config.init, 20_000);
            if t >= tb {
                return Err(CliError::usage(format!(
                    "the characteristics oracle is valid before the breaking time {tb:.4}, got t = {t}"
                )));
            }
            let (a, b) = cloud.x_range();
            let mut failure = None;
            let (l1, linf) = distances(a, b, |x| eval_extended(&cloud, x), |x| {
                characteristic_solution(flux, &config.init, t, x).unwrap_or_else(|e| {
                    failure = Some(e);
                    f64::NAN
                })
            });
            if let Some(e) = failure {
                return Err(e.into());
            }
            (report.l1, report.linf) = (l1, linf);
        }
        Oracle::Hopflax => {
            let hl = HopfLax::new(flux, config.init.value_range())?;
            let w0 = |z: f64| config.init.primitive(z);
            let hj = hamilton_jacobi_solve(p, flux, t, w0(p.s0[0]))?;
            let xs = &hj.gradient.xs;
            let oracle_w: Vec<f64> = if t > 0.0 {
                hl.evaluate_many(w0, t, xs, Default::default())?
            } else {
                xs.iter().map(|&x| w0(x)).collect()
            };
            let errs: Vec<f64> = oracle_w.iter().zip(&hj.potential).map(|(a, b)| (a - b).abs()).collect();
            report.linf = errs.iter().cloned().fold(0.0, f64::max);
            report.l1 = (1..xs.len()).map(|i| 0.5 * (errs[i] + errs[i - 1]) * (xs[i] - xs[i - 1])).sum();
        }
    }
    Ok(report)
}

pub fn run(config: &RunConfig, oracle: Oracle) -> CliResult<(CompareReport, PathBuf)> {
    let p = initial_map(&config.init, &make_grid(config.n)?)?;
    let reports = config
        .times
        .iter()
        .map(|&t| compare_at(config, &p, oracle, t))
        .collect::<CliResult<Vec<_>>>()?;
    let report = CompareReport {
        oracle,
        flux: config.flux.label().to_string(),
        init: config.init.clone(),
        n: config.n,
        reports,
    };
    ensure_dir(&config.output)?;
    let path = config.output.join(format!("compare-{}.json", oracle.name()));
    let body = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    std::fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
    Ok((report, path))
}
