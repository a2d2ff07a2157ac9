//! Data and gnuplot scripts for the figures: Burgers clouds, pipeline
//! stages, non-convex Riemann tests and the fluid coupling.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use cha_core::grid::make_grid;
use cha_core::hodge::cumulative_potential;
use cha_core::hull::lower_convex_hull_with_gradient;
use cha_core::oracles::{godunov_solve, riemann_exact};
use cha_core::parametrization::{initial_map, InitialParametrization};
use cha_core::solver::{characteristic_map, passive_scalar, solve_conservative, solve_dissipative};
use cha_core::{FluxModel, InitialData};

use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, write_columns};

const BURGERS_TIMES: [f64; 4] = [0.0, 3.0, 6.0, 106.0];

struct Series {
    file: String,
    title: String,
    points: bool,
}

struct Figure {
    id: u8,
    title: String,
    xlabel: &'static str,
    ylabel: &'static str,
    series: Vec<Series>,
}

impl Figure {
    fn new(id: u8, title: &str, xlabel: &'static str, ylabel: &'static str) -> Self {
        Figure { id, title: title.to_string(), xlabel, ylabel, series: Vec::new() }
    }

    fn add(&mut self, dir: &Path, name: &str, title: String, points: bool, xs: &[f64], ys: &[f64]) -> CliResult<()> {
        let file = format!("fig{}-{name}.dat", self.id);
        write_columns(&dir.join(&file), &format!("fig{} {title}: {} {}", self.id, self.xlabel, self.ylabel), xs, ys)?;
        self.series.push(Series { file, title, points });
        Ok(())
    }

    fn script(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "set terminal pngcairo size 900,600");
        let _ = writeln!(s, "set output 'fig{}.png'", self.id);
        let _ = writeln!(s, "set title '{}'", self.title);
        let _ = writeln!(s, "set xlabel '{}'", self.xlabel);
        let _ = writeln!(s, "set ylabel '{}'", self.ylabel);
        let _ = writeln!(s, "set key outside right");
        let plots: Vec<String> = self
            .series
            .iter()
            .map(|p| {
                let style = if p.points { "with points pt 7 ps 0.4" } else { "with lines lw 2" };
                format!("'{}' using 1:2 {style} title '{}'", p.file, p.title)
            })
            .collect();
        let _ = writeln!(s, "plot {}", plots.join(", \\\n     "));
        s
    }

    fn finish(self, dir: &Path) -> CliResult<Vec<PathBuf>> {
        let script = dir.join(format!("fig{}.gp", self.id));
        std::fs::write(&script, self.script()).map_err(|e| CliError::io(&script, e))?;
        let mut files: Vec<PathBuf> = self.series.iter().map(|s| dir.join(&s.file)).collect();
        files.push(script);
        Ok(files)
    }
}

fn burgers(n: usize) -> CliResult<InitialParametrization> {
    Ok(initial_map(&InitialData::gaussian(), &make_grid(n)?)?)
}

/// Pipeline stage `k` against `y`: 3 = S, 4 = h and h⁺, 5 = S⁺.
fn pipeline_figure(id: u8, dir: &Path, n: usize) -> CliResult<Figure> {
    let (title, ylabel) = match id {
        3 => ("Characteristic map S(t,y)", "S"),
        4 => ("Potential h(t,y) and its convex hull", "h"),
        _ => ("Convex hull transform S+(t,y)", "S+"),
    };
    let mut fig = Figure::new(id, title, "y", ylabel);
    let p = burgers(n)?;
    let y = p.grid.points().to_vec();
    let flux = FluxModel::burgers();
    for t in BURGERS_TIMES {
        let s = characteristic_map(&p, &flux, t)?.s_t;
        let h = cumulative_potential(&p.grid, &s);
        let hull = lower_convex_hull_with_gradient(&p.grid, &h, &s)?;
        match id {
            3 => fig.add(dir, &format!("t{t}"), format!("t={t}"), false, &y, &s)?,
            4 => {
                fig.add(dir, &format!("h-t{t}"), format!("h, t={t}"), false, &y, &h)?;
                fig.add(dir, &format!("hplus-t{t}"), format!("h+, t={t}"), false, &y, &hull.h_plus)?;
            }
            _ => fig.add(dir, &format!("t{t}"), format!("t={t}"), false, &y, &hull.s_plus)?,
        }
    }
    Ok(fig)
}

fn riemann_figure(id: u8, dir: &Path, flux: FluxModel, left: f64, right: f64, t: f64, n: usize) -> CliResult<Figure> {
    let title = format!("{} flux, Riemann ({left}, {right}), t={t}", flux.label());
    let mut fig = Figure::new(id, &title, "x", "u");
    let data = InitialData::riemann(left, right, 0.0)?;
    let cloud = solve_dissipative(&initial_map(&data, &make_grid(n)?)?, &flux, t)?;
    fig.add(dir, "cloud", "CHA".into(), true, &cloud.xs, &cloud.us)?;
    let exact = riemann_exact(&flux, left, right)?;
    let (a, b) = cloud.x_range();
    let pad = 0.1 * (b - a) + 0.5;
    let xs: Vec<f64> = (0..=2000).map(|k| a - pad + (b - a + 2.0 * pad) * k as f64 / 2000.0).collect();
    let us: Vec<f64> = xs.iter().map(|&x| exact.sample(x / t)).collect();
    fig.add(dir, "exact", "exact".into(), false, &xs, &us)?;
    Ok(fig)
}

pub fn run(id: u8, dir: &Path, n: Option<usize>) -> CliResult<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let fig = match id {
        1 | 2 => {
            let conservative = id == 2;
            let title = if conservative { "Entropy conservative solutions" } else { "Entropy dissipative solutions" };
            let mut fig = Figure::new(id, title, "x", "u");
            let p = burgers(n.unwrap_or(100))?;
            let flux = FluxModel::burgers();
            for t in BURGERS_TIMES {
                let c = if conservative { solve_conservative(&p, &flux, t)? } else { solve_dissipative(&p, &flux, t)? };
                fig.add(dir, &format!("t{t}"), format!("t={t}"), true, &c.xs, &c.us)?;
            }
            fig
        }
        3..=5 => pipeline_figure(id, dir, n.unwrap_or(100))?,
        6 => riemann_figure(6, dir, FluxModel::cubic(), -0.5, 0.5, 10.0, n.unwrap_or(400))?,
        7 => {
            let mut fig = Figure::new(7, "cubic flux, shock interaction (1, -0.5, 0.25), t=10", "x", "u");
            let data = InitialData::piecewise_constant(vec![-0.5, 0.5], vec![1.0, -0.5, 0.25])?;
            let flux = FluxModel::cubic();
            let cloud = solve_dissipative(&initial_map(&data, &make_grid(n.unwrap_or(400))?)?, &flux, 10.0)?;
            fig.add(dir, "cloud", "CHA".into(), true, &cloud.xs, &cloud.us)?;
            let fv = godunov_solve(&flux, &data, 10.0, 2000, 0.9)?;
            fig.add(dir, "godunov", "Godunov".into(), false, &fv.xs, &fv.us)?;
            fig
        }
        8 => riemann_figure(8, dir, FluxModel::quintic(), 0.0, 4.5, 20.0, n.unwrap_or(800))?,
        9 => {
            let mut fig = Figure::new(9, "Fluid coupling: density rho(t,x)", "x", "rho");
            let data = InitialData::gaussian();
            let p = initial_map(&data, &make_grid(n.unwrap_or(100))?)?;
            let flux = FluxModel::burgers();
            for t in BURGERS_TIMES {
                let field = passive_scalar(&p, &flux, |x| data.primitive(x), t, cha_core::solver::DEFAULT_RHO_MAX)?;
                fig.add(dir, &format!("rho-t{t}"), format!("rho, t={t}"), true, &field.xs, &field.rho)?;
                fig.add(dir, &format!("w-t{t}"), format!("w, t={t}"), true, &field.xs, &field.ws)?;
            }
            fig
        }
        _ => return Err(CliError::usage(format!("unknown figure {id}, expected 1 to 9"))),
    };
    fig.finish(dir)
}
