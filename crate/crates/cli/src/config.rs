//! Run configuration: command-line flags layered over an optional TOML file
//! whose keys are the flag names.

use std::path::{Path, PathBuf};

use cha_core::solver::{Projection, SolverOptions, DEFAULT_RHO_MAX};
use cha_core::{FluxModel, InitialData, Mode};
use clap::{Args, ValueEnum};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::spec::{parse_flux, parse_init, parse_times};

pub const OUTPUT_ENV: &str = "CHA_OUTPUT_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeChoice {
    Dissipative,
    Conservative,
    Both,
}

impl ModeChoice {
    pub fn modes(self) -> Vec<Mode> {
        match self {
            ModeChoice::Dissipative => vec![Mode::Dissipative],
            ModeChoice::Conservative => vec![Mode::Conservative],
            ModeChoice::Both => vec![Mode::Dissipative, Mode::Conservative],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionChoice {
    Fast,
    Gram,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML file with the same keys as the flags; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// burgers | cubic | quintic | poly:c0,c1,...
    #[arg(long)]
    pub flux: Option<String>,
    /// gaussian[:c,s] | riemann:l,r[,x0] | piecewise:s0,b1,s1,... | tabulated:FILE
    #[arg(long)]
    pub init: Option<String>,
    /// Comma-separated output times.
    #[arg(long)]
    pub times: Option<String>,
    /// Number of sample points.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeChoice>,
    /// Output directory [default: $CHA_OUTPUT_DIR, else .]
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Remove the points inside each jump.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub spike_filter: Option<bool>,
    /// Cap on the fluid density.
    #[arg(long)]
    pub rho_max: Option<f64>,
    #[arg(long, value_enum)]
    pub projection: Option<ProjectionChoice>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum FluxEntry {
    Label(String),
    Coefficients(Vec<f64>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum InitEntry {
    Text(String),
    Table(InitialData),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum TimesEntry {
    Text(String),
    List(Vec<f64>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct FileConfig {
    flux: Option<FluxEntry>,
    init: Option<InitEntry>,
    times: Option<TimesEntry>,
    n: Option<usize>,
    mode: Option<ModeChoice>,
    output: Option<PathBuf>,
    format: Option<Format>,
    spike_filter: Option<bool>,
    rho_max: Option<f64>,
    projection: Option<ProjectionChoice>,
    /// Used by `compare`.
    pub oracle: Option<String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub flux: FluxModel,
    pub init: InitialData,
    pub times: Vec<f64>,
    pub n: usize,
    pub mode: ModeChoice,
    pub output: PathBuf,
    pub format: Format,
    pub spike_filter: bool,
    pub rho_max: f64,
    pub projection: Projection,
}

impl RunConfig {
    /// Flags, then the config file, then defaults.
    pub fn resolve(args: &RunArgs) -> CliResult<(Self, FileConfig)> {
        let file = match &args.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let flux = match (&args.flux, &file.flux) {
            (Some(text), _) | (None, Some(FluxEntry::Label(text))) => parse_flux(text)?,
            (None, Some(FluxEntry::Coefficients(c))) => FluxModel::polynomial("poly", c.clone())?,
            (None, None) => FluxModel::burgers(),
        };
        let init = match (&args.init, &file.init) {
            (Some(text), _) | (None, Some(InitEntry::Text(text))) => parse_init(text)?,
            (None, Some(InitEntry::Table(data))) => {
                data.validate()?;
                data.clone()
            }
            (None, None) => InitialData::gaussian(),
        };
        let mut times = match (&args.times, &file.times) {
            (Some(text), _) | (None, Some(TimesEntry::Text(text))) => parse_times(text)?,
            (None, Some(TimesEntry::List(v))) => v.clone(),
            (None, None) => vec![0.0],
        };
        if times.is_empty() || times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
            return Err(CliError::usage("times must be a non-empty list of finite non-negative numbers"));
        }
        times.sort_by(f64::total_cmp);
        times.dedup();
        let n = args.n.or(file.n).unwrap_or(100);
        if n < 2 {
            return Err(CliError::usage(format!("n must be at least 2, got {n}")));
        }
        let rho_max = args.rho_max.or(file.rho_max).unwrap_or(DEFAULT_RHO_MAX);
        if !(rho_max > 0.0) {
            return Err(CliError::usage(format!("rho-max must be positive, got {rho_max}")));
        }
        let output = args
            .output
            .clone()
            .or_else(|| file.output.clone())
            .or_else(|| std::env::var_os(OUTPUT_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."));
        let projection = match args.projection.or(file.projection).unwrap_or(ProjectionChoice::Fast) {
            ProjectionChoice::Fast => Projection::Fast,
            ProjectionChoice::Gram => Projection::Gram,
        };
        let config = RunConfig {
            flux,
            init,
            times,
            n,
            mode: args.mode.or(file.mode).unwrap_or(ModeChoice::Dissipative),
            output,
            format: args.format.or(file.format).unwrap_or(Format::Csv),
            spike_filter: args.spike_filter.or(file.spike_filter).unwrap_or(false),
            rho_max,
            projection,
        };
        Ok((config, file))
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions { projection: self.projection, spike_filter: self.spike_filter, ..Default::default() }
    }
}
