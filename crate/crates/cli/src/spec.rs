//! Text forms of fluxes, initial data and time lists.
//!
//! ```text
//! flux:  burgers | cubic | quintic | poly:c0,c1,...
//! init:  gaussian[:center,sigma] | riemann:left,right[,x0]
//!        | piecewise:s0,b1,s1,...,bk,sk | tabulated:<csv file of x,u>
//! times: 0,3,6,106
//! ```

use std::path::Path;

use cha_core::{FluxModel, InitialData};

use crate::error::{CliError, CliResult};

fn numbers(text: &str, what: &str) -> CliResult<Vec<f64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("{what}: `{s}` is not a number")))
        })
        .collect()
}

pub fn parse_flux(text: &str) -> CliResult<FluxModel> {
    if let Some(rest) = text.strip_prefix("poly:") {
        return Ok(FluxModel::polynomial(text, numbers(rest, "flux coefficients")?)?);
    }
    FluxModel::builtin(text).map_err(|_| {
        CliError::usage(format!("unknown flux `{text}` (expected burgers, cubic, quintic or poly:c0,c1,...)"))
    })
}

pub fn parse_init(text: &str) -> CliResult<InitialData> {
    let (kind, args) = text.split_once(':').unwrap_or((text, ""));
    let data = match kind {
        "gaussian" if args.is_empty() => InitialData::gaussian(),
        "gaussian" => match numbers(args, "gaussian")?[..] {
            [center, sigma] => InitialData::Gaussian { center, sigma },
            _ => return Err(CliError::usage("gaussian takes center,sigma")),
        },
        "riemann" => match numbers(args, "riemann")?[..] {
            [l, r] => InitialData::riemann(l, r, 0.0)?,
            [l, r, x0] => InitialData::riemann(l, r, x0)?,
            _ => return Err(CliError::usage("riemann takes left,right[,x0]")),
        },
        "piecewise" => {
            let v = numbers(args, "piecewise")?;
            if v.len() < 3 || v.len() % 2 == 0 {
                return Err(CliError::usage("piecewise takes s0,b1,s1,...,bk,sk"));
            }
            let states = v.iter().step_by(2).copied().collect();
            let breaks = v.iter().skip(1).step_by(2).copied().collect();
            InitialData::piecewise_constant(breaks, states)?
        }
        "tabulated" => read_table(Path::new(args))?,
        _ => return Err(CliError::usage(format!("unknown initial data `{text}`"))),
    };
    data.validate()?;
    Ok(data)
}

fn read_table(path: &Path) -> CliResult<InitialData> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let (mut xs, mut us) = (Vec::new(), Vec::new());
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('#') || line.starts_with(char::is_alphabetic) {
            continue;
        }
        match numbers(line, "table row")?[..] {
            [x, u] => {
                xs.push(x);
                us.push(u);
            }
            _ => return Err(CliError::usage(format!("{}: rows must be x,u", path.display()))),
        }
    }
    Ok(InitialData::tabulated(xs, us)?)
}

pub fn parse_times(text: &str) -> CliResult<Vec<f64>> {
    numbers(text, "times")
}
