//! Cloud files: CSV with a `# t=… mode=… n=… flux=…` header, or JSON.

use std::fs;
use std::path::{Path, PathBuf};

use cha_core::{Mode, SolutionCloud};
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CloudFile {
    pub t: f64,
    pub mode: Mode,
    pub n: usize,
    pub flux: String,
    pub x: Vec<f64>,
    pub u: Vec<f64>,
}

impl CloudFile {
    pub fn new(cloud: &SolutionCloud, n: usize, flux: &str) -> Self {
        CloudFile {
            t: cloud.time,
            mode: cloud.mode,
            n,
            flux: flux.to_string(),
            x: cloud.xs.clone(),
            u: cloud.us.clone(),
        }
    }

    pub fn cloud(&self) -> CliResult<SolutionCloud> {
        Ok(SolutionCloud::new(self.t, self.x.clone(), self.u.clone(), self.mode)?)
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("# t={} mode={} n={} flux={}\nx,u\n", self.t, self.mode, self.n, self.flux);
        for (x, u) in self.x.iter().zip(&self.u) {
            s.push_str(&format!("{x:.16e},{u:.16e}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> CliResult<Self> {
        let mut lines = text.lines();
        let header = lines.next().and_then(|l| l.strip_prefix("# ")).ok_or_else(|| bad("missing header"))?;
        let mut file = CloudFile { t: f64::NAN, mode: Mode::Dissipative, n: 0, flux: String::new(), x: vec![], u: vec![] };
        for field in header.split(' ') {
            match field.split_once('=') {
                Some(("t", v)) => file.t = v.parse().map_err(|_| bad("bad t"))?,
                Some(("mode", v)) => file.mode = v.parse().map_err(|_| bad("bad mode"))?,
                Some(("n", v)) => file.n = v.parse().map_err(|_| bad("bad n"))?,
                Some(("flux", v)) => file.flux = v.to_string(),
                _ => return Err(bad("unrecognised header field")),
            }
        }
        for line in lines.filter(|l| !l.is_empty() && *l != "x,u") {
            let (x, u) = line.split_once(',').ok_or_else(|| bad("row is not x,u"))?;
            file.x.push(x.parse().map_err(|_| bad("bad x"))?);
            file.u.push(u.parse().map_err(|_| bad("bad u"))?);
        }
        Ok(file)
    }

    pub fn file_name(&self, format: Format) -> String {
        format!("{}-t{}.{}", self.mode, self.t, format.extension())
    }

    pub fn write(&self, dir: &Path, format: Format) -> CliResult<PathBuf> {
        let path = dir.join(self.file_name(format));
        let body = match format {
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("cloud serializes") + "\n",
        };
        fs::write(&path, body).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        if path.extension().is_some_and(|e| e == "json") {
            serde_json::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
        } else {
            Self::from_csv(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
        }
    }
}

fn bad(msg: &str) -> CliError {
    CliError::usage(format!("malformed cloud file: {msg}"))
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Two-column data file with a comment header.
pub fn write_columns(path: &Path, header: &str, xs: &[f64], ys: &[f64]) -> CliResult<()> {
    let mut s = format!("# {header}\n");
    for (x, y) in xs.iter().zip(ys) {
        s.push_str(&format!("{x:.16e} {y:.16e}\n"));
    }
    fs::write(path, s).map_err(|e| CliError::io(path, e))
}
