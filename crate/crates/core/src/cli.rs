//! `chainmap reduce | oracle | presets`.
//!
//! Exit codes: 0 on success (converged or step budget exhausted), 1 on
//! configuration or I/O errors, 2 when the reduction hits a gap pole or a
//! numerical breakdown, or when the oracle deviation exceeds its bound.
//! Partial results are written before exiting with 2.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use log::{info, warn, LevelFilter};
use serde::Serialize;

use crate::chain::{run_reduction, Reduction, ReductionOptions, Status};
use crate::config::{ConfigError, RunConfig};
use crate::oracle::{compare, discretize, lanczos_chain, MIN_MODES};
use crate::spectral::{FrequencyGrid, SpectralDensity};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USER_ERROR: u8 = 1;
pub const EXIT_REDUCTION_FAILED: u8 = 2;

/// Environment variable selecting the log level: `quiet`, `info` or `debug`.
pub const LOG_ENV: &str = "CHAINMAP_LOG";

#[derive(Debug, Parser)]
#[command(name = "chainmap", version, about = "Effective-mode chain mapping of bath spectral densities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// Number of chain modes to extract.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Number of points of the working frequency grid.
    #[arg(long = "grid-points")]
    pub grid_points: Option<usize>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the recurrence and write coefficients, residual densities and a report.
    Reduce {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Cross-check the recurrence against a Lanczos chain of the discretized bath.
    Oracle {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// List the available spectral density presets.
    Presets,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Spec(#[from] crate::Error),
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Precondition(String),
}

/// Parse arguments, run, and return the process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USER_ERROR } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    init_logging();
    let result = match cli.command {
        Command::Presets => {
            print!("{}", presets_listing());
            Ok(EXIT_OK)
        }
        Command::Reduce { config, overrides } => {
            load_config(&config, &overrides).and_then(|cfg| cmd_reduce(&cfg))
        }
        Command::Oracle { config, overrides } => {
            load_config(&config, &overrides).and_then(|cfg| cmd_oracle(&cfg))
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("chainmap: {e}");
            EXIT_USER_ERROR
        }
    }
}

fn init_logging() {
    let level = match std::env::var(LOG_ENV).as_deref() {
        Ok("debug") => LevelFilter::Debug,
        Ok("info") => LevelFilter::Info,
        Ok("quiet") => LevelFilter::Off,
        _ => LevelFilter::Warn,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

pub fn load_config(path: &Path, overrides: &Overrides) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(path)?;
    if let Some(s) = overrides.steps {
        cfg.steps = s;
    }
    if let Some(m) = overrides.grid_points {
        cfg.grid_points = m;
    }
    if let Some(out) = &overrides.out {
        cfg.output_dir = out.clone();
    }
    cfg.validate()?;
    Ok(cfg)
}

/// 17 significant digits, scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_atomic(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    let path = dir.join(name);
    let tmp = dir.join(format!(".{name}.tmp"));
    let err = |source| CliError::Write { path: path.clone(), source };
    fs::write(&tmp, contents).map_err(err)?;
    fs::rename(&tmp, &path).map_err(err)?;
    Ok(())
}

fn working_density(cfg: &RunConfig) -> Result<SpectralDensity, CliError> {
    let grid = Arc::new(FrequencyGrid::uniform(cfg.sd.omega_r(), cfg.grid_points)?);
    Ok(cfg.sd.evaluate(grid)?)
}

fn reduce(cfg: &RunConfig) -> Result<(SpectralDensity, Reduction), CliError> {
    let j0 = working_density(cfg)?;
    let opts = ReductionOptions { tolerances: cfg.tolerances, stop_on_convergence: false };
    let run = run_reduction(&j0, cfg.steps, &opts)?;
    Ok((j0, run))
}

pub fn coefficients_csv(run: &Reduction) -> String {
    let mut s = String::from("n,omega2_n,d_n,ratio_n,rubin_l2_n\n");
    let c = &run.coefficients;
    for k in 0..c.len() {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            k + 1,
            format_float(c.omega2[k]),
            format_float(c.d[k]),
            format_float(run.report.ratios[k]),
            format_float(run.report.rubin_l2[k]),
        );
    }
    s
}

pub fn density_csv(j: &SpectralDensity) -> String {
    let mut s = String::from("omega,j\n");
    for (w, v) in j.frequencies().iter().zip(j.values()) {
        let _ = writeln!(s, "{},{}", format_float(*w), format_float(*v));
    }
    s
}

#[derive(Debug, Serialize)]
struct ReportJson<'a> {
    preset: &'a str,
    status: &'static str,
    failed_step: Option<usize>,
    gap_frequency: Option<f64>,
    completed_steps: usize,
    convergence_step: Option<usize>,
    delta_omega0_sq: f64,
    zero_crossings: &'a [Vec<f64>],
    limiting_omega_l: &'a [f64],
    limiting_l2: &'a [f64],
}

pub fn report_json(preset: &str, run: &Reduction) -> String {
    let r = &run.report;
    let (status, failed_step, gap_frequency) = match r.status {
        Status::Converged => ("Converged", None, None),
        Status::MaxStepsReached => ("MaxStepsReached", None, None),
        Status::GapPole { step, frequency } => ("GapPole", Some(step), Some(frequency)),
        Status::NumericalBreakdown { step } => ("NumericalBreakdown", Some(step), None),
    };
    let json = ReportJson {
        preset,
        status,
        failed_step,
        gap_frequency,
        completed_steps: r.completed_steps(),
        convergence_step: r.convergence_step,
        delta_omega0_sq: run.coefficients.delta_omega0_sq,
        zero_crossings: &r.zero_crossings,
        limiting_omega_l: &r.limiting_omega_l,
        limiting_l2: &r.limiting_l2,
    };
    serde_json::to_string_pretty(&json).expect("report serializes") + "\n"
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Write { path: dir.to_path_buf(), source })
}

pub fn cmd_reduce(cfg: &RunConfig) -> Result<u8, CliError> {
    let (_, run) = reduce(cfg)?;
    let dir = &cfg.output_dir;
    create_dir(dir)?;
    write_atomic(dir, "coefficients.csv", &coefficients_csv(&run))?;
    for (n, j) in run.residuals.densities.iter().enumerate() {
        write_atomic(dir, &format!("jn_{n}.csv"), &density_csv(j))?;
    }
    write_atomic(dir, "report.json", &report_json(cfg.sd.name(), &run))?;
    info!("wrote {} steps to {}", run.report.completed_steps(), dir.display());
    match run.report.status {
        Status::GapPole { step, frequency } => {
            eprintln!("chainmap: gap pole at step {step}, w = {frequency}");
            Ok(EXIT_REDUCTION_FAILED)
        }
        Status::NumericalBreakdown { step } => {
            eprintln!("chainmap: numerical breakdown at step {step}");
            Ok(EXIT_REDUCTION_FAILED)
        }
        _ => Ok(EXIT_OK),
    }
}

#[derive(Debug, Serialize)]
struct CompareJson {
    modes: usize,
    oracle_modes: usize,
    bound: f64,
    max_omega2_dev: f64,
    max_d_dev: f64,
    max_dev: f64,
    within_bound: bool,
    omega2_dev: Vec<f64>,
    d_dev: Vec<f64>,
}

pub fn cmd_oracle(cfg: &RunConfig) -> Result<u8, CliError> {
    if cfg.oracle_modes < MIN_MODES {
        return Err(CliError::Precondition(format!(
            "oracle_modes must be at least {MIN_MODES} (got {})",
            cfg.oracle_modes
        )));
    }
    if cfg.steps > cfg.oracle_modes {
        return Err(CliError::Precondition(format!(
            "steps ({}) exceed oracle_modes ({})",
            cfg.steps, cfg.oracle_modes
        )));
    }
    let (j0, run) = reduce(cfg)?;
    let bath = discretize(&j0, cfg.oracle_modes)?;
    let chain = lanczos_chain(&bath, cfg.steps)?;
    let modes = cfg.compare_modes.min(cfg.steps);
    let cmp = compare(&run.coefficients, &chain, modes);

    let dir = &cfg.output_dir;
    create_dir(dir)?;
    let mut csv = String::from("n,omega2_n,d_n\n");
    for (k, (a, d)) in chain.alpha.iter().zip(chain.couplings()).enumerate() {
        let _ = writeln!(csv, "{},{},{}", k + 1, format_float(*a), format_float(d));
    }
    write_atomic(dir, "oracle_coefficients.csv", &csv)?;
    let within = cmp.max_dev() <= cfg.oracle_bound && cmp.omega2_dev.len() == modes;
    let json = CompareJson {
        modes: cmp.omega2_dev.len(),
        oracle_modes: cfg.oracle_modes,
        bound: cfg.oracle_bound,
        max_omega2_dev: cmp.max_omega2_dev(),
        max_d_dev: cmp.max_d_dev(),
        max_dev: cmp.max_dev(),
        within_bound: within,
        omega2_dev: cmp.omega2_dev.clone(),
        d_dev: cmp.d_dev.clone(),
    };
    write_atomic(dir, "compare.json", &(serde_json::to_string_pretty(&json).expect("serializes") + "\n"))?;
    if within {
        info!("oracle agrees to {:.3e}", cmp.max_dev());
        Ok(EXIT_OK)
    } else {
        warn!("oracle deviation {:.3e} exceeds {:.3e}", cmp.max_dev(), cfg.oracle_bound);
        eprintln!(
            "chainmap: oracle deviation {:.3e} over {} modes exceeds bound {:.3e}",
            cmp.max_dev(),
            cmp.omega2_dev.len(),
            cfg.oracle_bound
        );
        Ok(EXIT_REDUCTION_FAILED)
    }
}

pub fn presets_listing() -> String {
    "\
rubin              omega_r
    J(w) = (w w_R / 2) sqrt(1 - w^2/w_R^2); provenance: Rubin model of dissipation (homogeneous harmonic chain); fixed point of the chain recurrence
garg               omega_0, d_0, gamma, omega_r
    J(w) = d_0^2 gamma w / ((w^2 - omega_0^2)^2 + gamma^2 w^2); provenance: Garg-type effective density of a Brownian particle coupled to an oscillator damped by an Ohmic bath
ohmic_hard_cutoff  eta, omega_r
    J(w) = eta w for w <= omega_r
peak_sum           peaks = [[omega_j, d_j, gamma_j], ...], omega_r
    J(w) = sum_j d_j^2 gamma_j w / ((w^2 - omega_j^2)^2 + gamma_j^2 w^2); structured multi-peak bath (sum of garg terms)
table              table = \"<file>\", omega_r (optional, defaults to the last frequency)
    two-column text file (frequency value), '#' comments, linear interpolation, zero outside the table
"
    .to_string()
}
