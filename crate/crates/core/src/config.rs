//! Run configuration files.
//!
//! ```toml
//! [sd]
//! preset = "garg"          # rubin | garg | ohmic_hard_cutoff | peak_sum | table
//! omega_r = 0.1
//! omega_0 = 0.04
//! d_0 = 0.01
//! gamma = 0.01
//! # peak_sum: peaks = [[omega, d, gamma], ...]
//! # table:    table = "j0.dat"   (relative to the config file)
//!
//! [run]
//! grid_points = 4000
//! steps = 15
//! oracle_modes = 4000      # 0 disables the oracle
//! output_dir = "out"
//!
//! [tolerances]
//! pole_tol = 1e-8
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::chain::Tolerances;
use crate::spectral::{read_table, Peak, SDSpec, DEFAULT_GRID_POINTS, MIN_GRID_POINTS};

pub const DEFAULT_STEPS: usize = 15;
pub const DEFAULT_ORACLE_MODES: usize = 4000;
pub const DEFAULT_COMPARE_MODES: usize = 10;
pub const DEFAULT_ORACLE_BOUND: f64 = 5e-3;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Spec(#[from] crate::Error),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub sd: SDSpec,
    pub grid_points: usize,
    pub steps: usize,
    pub oracle_modes: usize,
    pub compare_modes: usize,
    pub oracle_bound: f64,
    pub tolerances: Tolerances,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn new(sd: SDSpec) -> Self {
        Self {
            sd,
            grid_points: DEFAULT_GRID_POINTS,
            steps: DEFAULT_STEPS,
            oracle_modes: DEFAULT_ORACLE_MODES,
            compare_modes: DEFAULT_COMPARE_MODES,
            oracle_bound: DEFAULT_ORACLE_BOUND,
            tolerances: Tolerances::default(),
            output_dir: PathBuf::from("out"),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.steps < 1 {
            return Err(ConfigError::Invalid("steps must be at least 1".into()));
        }
        if self.grid_points < MIN_GRID_POINTS {
            return Err(ConfigError::Invalid(format!(
                "grid_points must be at least {MIN_GRID_POINTS}"
            )));
        }
        if !(self.oracle_bound > 0.0) {
            return Err(ConfigError::Invalid("oracle_bound must be positive".into()));
        }
        self.tolerances.validate()?;
        self.sd.validate()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.to_path_buf(), source })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::parse(&text, base)
    }

    /// Parse config text; relative table paths resolve against `base`.
    pub fn parse(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.message().to_string()))?;
        let sd = raw.sd.into_spec(base)?;
        let mut cfg = RunConfig::new(sd);
        cfg.output_dir = base.join(&cfg.output_dir);
        let run = raw.run.unwrap_or_default();
        if let Some(v) = run.grid_points {
            cfg.grid_points = v;
        }
        if let Some(v) = run.steps {
            cfg.steps = v;
        }
        if let Some(v) = run.oracle_modes {
            cfg.oracle_modes = v;
        }
        if let Some(v) = run.compare_modes {
            cfg.compare_modes = v;
        }
        if let Some(v) = run.output_dir {
            cfg.output_dir = if v.is_absolute() { v } else { base.join(v) };
        }
        if let Some(t) = raw.tolerances {
            let tol = &mut cfg.tolerances;
            tol.pole_tol = t.pole_tol.unwrap_or(tol.pole_tol);
            tol.floor = t.floor.unwrap_or(tol.floor);
            tol.clamp = t.clamp.unwrap_or(tol.clamp);
            tol.ratio_tol = t.ratio_tol.unwrap_or(tol.ratio_tol);
            tol.rubin_tol = t.rubin_tol.unwrap_or(tol.rubin_tol);
            tol.consecutive = t.consecutive.unwrap_or(tol.consecutive);
            cfg.oracle_bound = t.oracle_bound.unwrap_or(cfg.oracle_bound);
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    sd: RawSd,
    run: Option<RawRun>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSd {
    preset: String,
    omega_r: Option<f64>,
    omega_0: Option<f64>,
    d_0: Option<f64>,
    gamma: Option<f64>,
    eta: Option<f64>,
    peaks: Option<Vec<[f64; 3]>>,
    table: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    grid_points: Option<usize>,
    steps: Option<usize>,
    oracle_modes: Option<usize>,
    compare_modes: Option<usize>,
    output_dir: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    pole_tol: Option<f64>,
    floor: Option<f64>,
    clamp: Option<f64>,
    ratio_tol: Option<f64>,
    rubin_tol: Option<f64>,
    consecutive: Option<usize>,
    oracle_bound: Option<f64>,
}

fn required(name: &str, v: Option<f64>) -> Result<f64, ConfigError> {
    v.ok_or_else(|| ConfigError::Invalid(format!("[sd] is missing `{name}`")))
}

impl RawSd {
    fn into_spec(self, base: &Path) -> Result<SDSpec, ConfigError> {
        let spec = match self.preset.as_str() {
            "rubin" => SDSpec::Rubin { omega_r: required("omega_r", self.omega_r)? },
            "garg" => SDSpec::Garg {
                omega_0: required("omega_0", self.omega_0)?,
                d_0: required("d_0", self.d_0)?,
                gamma: required("gamma", self.gamma)?,
                omega_r: required("omega_r", self.omega_r)?,
            },
            "ohmic_hard_cutoff" => SDSpec::OhmicHardCutoff {
                eta: required("eta", self.eta)?,
                omega_r: required("omega_r", self.omega_r)?,
            },
            "peak_sum" => SDSpec::PeakSum {
                peaks: self
                    .peaks
                    .ok_or_else(|| ConfigError::Invalid("[sd] is missing `peaks`".into()))?
                    .into_iter()
                    .map(|[w, d, g]| Peak::new(w, d, g))
                    .collect(),
                omega_r: required("omega_r", self.omega_r)?,
            },
            "table" => {
                let path = self
                    .table
                    .ok_or_else(|| ConfigError::Invalid("[sd] is missing `table`".into()))?;
                let path = if path.is_absolute() { path } else { base.join(path) };
                let points = read_table(&path)?;
                let omega_r = self.omega_r.unwrap_or(points[points.len() - 1].0);
                SDSpec::Table { points, omega_r }
            }
            other => {
                return Err(ConfigError::Invalid(format!("unknown preset `{other}`")));
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}
