use std::path::PathBuf;

use cha_core::exec::Execution;
use cha_core::grid::make_grid;
use cha_core::parametrization::initial_map;
use cha_core::solver::{solve, SolverOptions};
use cha_core::Mode;

use crate::config::RunConfig;
use crate::error::CliResult;
use crate::output::{ensure_dir, CloudFile};

/// Solves every (time, mode) pair and writes one file per pair.
pub fn run(config: &RunConfig) -> CliResult<Vec<PathBuf>> {
    let p = initial_map(&config.init, &make_grid(config.n)?)?;
    let jobs: Vec<(f64, Mode)> = config
        .times
        .iter()
        .flat_map(|&t| config.mode.modes().into_iter().map(move |m| (t, m)))
        .collect();
    let options = SolverOptions { execution: Execution::Sequential, ..config.solver_options() };
    let clouds = Execution::default().map_slice(&jobs, |&(t, mode)| solve(&p, &config.flux, t, mode, &options));
    ensure_dir(&config.output)?;
    let mut written = Vec::with_capacity(clouds.len());
    for cloud in clouds {
        let file = CloudFile::new(&cloud?, config.n, config.flux.label());
        written.push(file.write(&config.output, config.format)?);
    }
    Ok(written)
}
