use std::path::Path;
use std::sync::Arc;

use super::density::SpectralDensity;
use super::grid::FrequencyGrid;
use crate::error::{Error, Result};

/// One Lorentzian-like term `d^2 gamma w / ((w^2 - w_j^2)^2 + gamma^2 w^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub omega: f64,
    pub d: f64,
    pub gamma: f64,
}

impl Peak {
    pub fn new(omega: f64, d: f64, gamma: f64) -> Self {
        Self { omega, d, gamma }
    }

    fn eval(&self, w: f64) -> f64 {
        let detune = w * w - self.omega * self.omega;
        self.d * self.d * self.gamma * w / (detune * detune + self.gamma * self.gamma * w * w)
    }
}

/// Analytic or tabulated description of a bath spectral density.
#[derive(Debug, Clone, PartialEq)]
pub enum SDSpec {
    /// Terminal-mode density of a homogeneous harmonic chain,
    /// `(w w_R / 2) sqrt(1 - w^2 / w_R^2)`.
    Rubin { omega_r: f64 },
    /// Brownian particle coupled to one oscillator that is itself damped
    /// by an Ohmic bath.
    Garg { omega_0: f64, d_0: f64, gamma: f64, omega_r: f64 },
    /// `eta * w` up to a hard cutoff.
    OhmicHardCutoff { eta: f64, omega_r: f64 },
    /// Sum of `Garg`-type terms.
    PeakSum { peaks: Vec<Peak>, omega_r: f64 },
    /// Frequency/value pairs, linearly interpolated; zero outside the table.
    Table { points: Vec<(f64, f64)>, omega_r: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidSpec(format!("{name} must be strictly positive, got {v}")))
    }
}

impl SDSpec {
    pub fn omega_r(&self) -> f64 {
        match self {
            SDSpec::Rubin { omega_r }
            | SDSpec::Garg { omega_r, .. }
            | SDSpec::OhmicHardCutoff { omega_r, .. }
            | SDSpec::PeakSum { omega_r, .. }
            | SDSpec::Table { omega_r, .. } => *omega_r,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SDSpec::Rubin { .. } => "rubin",
            SDSpec::Garg { .. } => "garg",
            SDSpec::OhmicHardCutoff { .. } => "ohmic_hard_cutoff",
            SDSpec::PeakSum { .. } => "peak_sum",
            SDSpec::Table { .. } => "table",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let omega_r = self.omega_r();
        positive("omega_r", omega_r)?;
        let below_cutoff = |name: &str, w: f64| {
            if w < omega_r {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!(
                    "{name} = {w} must lie below the cutoff {omega_r}"
                )))
            }
        };
        match self {
            SDSpec::Rubin { .. } => Ok(()),
            SDSpec::Garg { omega_0, d_0, gamma, .. } => {
                positive("omega_0", *omega_0)?;
                positive("d_0", *d_0)?;
                positive("gamma", *gamma)?;
                below_cutoff("omega_0", *omega_0)
            }
            SDSpec::OhmicHardCutoff { eta, .. } => positive("eta", *eta),
            SDSpec::PeakSum { peaks, .. } => {
                if peaks.is_empty() {
                    return Err(Error::InvalidSpec("peak_sum needs at least one peak".into()));
                }
                for p in peaks {
                    positive("peak omega", p.omega)?;
                    positive("peak d", p.d)?;
                    positive("peak gamma", p.gamma)?;
                    below_cutoff("peak omega", p.omega)?;
                }
                Ok(())
            }
            SDSpec::Table { points, .. } => validate_table(points),
        }
    }

    /// Pointwise value; zero above the cutoff and wherever the form is not positive.
    pub fn value_at(&self, w: f64) -> f64 {
        let omega_r = self.omega_r();
        if !(w > 0.0) || w > omega_r {
            return 0.0;
        }
        let v = match self {
            SDSpec::Rubin { omega_r } => {
                let x = 1.0 - (w / omega_r).powi(2);
                0.5 * w * omega_r * x.max(0.0).sqrt()
            }
            SDSpec::Garg { omega_0, d_0, gamma, .. } => {
                Peak::new(*omega_0, *d_0, *gamma).eval(w)
            }
            SDSpec::OhmicHardCutoff { eta, .. } => eta * w,
            SDSpec::PeakSum { peaks, .. } => peaks.iter().map(|p| p.eval(w)).sum(),
            SDSpec::Table { points, .. } => interpolate_table(points, w),
        };
        if v > 0.0 { v } else { 0.0 }
    }

    /// Sample the density on `grid`; the grid must end at this spec's cutoff.
    pub fn evaluate(&self, grid: Arc<FrequencyGrid>) -> Result<SpectralDensity> {
        self.validate()?;
        let omega_r = self.omega_r();
        if (grid.omega_r() - omega_r).abs() > 1e-12 * omega_r {
            return Err(Error::GridMismatch(format!(
                "grid cutoff {} differs from spec cutoff {omega_r}",
                grid.omega_r()
            )));
        }
        let values = grid.points().iter().map(|w| self.value_at(*w)).collect();
        SpectralDensity::new(grid, values)
    }

    /// Convenience: uniform grid with `m` points plus evaluation.
    pub fn evaluate_uniform(&self, m: usize) -> Result<SpectralDensity> {
        self.validate()?;
        let grid = Arc::new(FrequencyGrid::uniform(self.omega_r(), m)?);
        self.evaluate(grid)
    }
}

fn validate_table(points: &[(f64, f64)]) -> Result<()> {
    if points.len() < 2 {
        return Err(Error::InvalidSpec("table needs at least two rows".into()));
    }
    for (w, v) in points {
        if !(w.is_finite() && *w >= 0.0) {
            return Err(Error::InvalidSpec(format!("table frequency {w} is not valid")));
        }
        if !(v.is_finite() && *v >= 0.0) {
            return Err(Error::InvalidSpec(format!("table value {v} at w = {w} is negative")));
        }
    }
    if let Some(p) = points.windows(2).find(|p| !(p[1].0 > p[0].0)) {
        return Err(Error::InvalidSpec(format!(
            "table frequencies must be strictly increasing ({} then {})",
            p[0].0, p[1].0
        )));
    }
    Ok(())
}

fn interpolate_table(points: &[(f64, f64)], w: f64) -> f64 {
    let first = points[0].0;
    let last = points[points.len() - 1].0;
    if w < first || w > last {
        return 0.0;
    }
    let k = points.partition_point(|p| p.0 < w);
    if k == 0 {
        return points[0].1;
    }
    let (w0, v0) = points[k - 1];
    let (w1, v1) = points[k];
    let t = (w - w0) / (w1 - w0);
    v0 * (1.0 - t) + v1 * t
}

/// Parse a two-column `frequency value` table. Lines starting with `#` and
/// blank lines are skipped; columns may be separated by whitespace or commas.
/// A non-numeric first row (such as the `omega,j` header of the density CSV
/// files written by the CLI) is taken as a header.
pub fn parse_table(text: &str) -> Result<Vec<(f64, f64)>> {
    let mut rows = Vec::new();
    let mut first = true;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty());
        if std::mem::take(&mut first) && cols.clone().next().is_some_and(|c| c.parse::<f64>().is_err()) {
            continue;
        }
        let parse = |s: Option<&str>| -> Result<f64> {
            s.ok_or_else(|| Error::InvalidSpec(format!("line {}: expected two columns", lineno + 1)))?
                .parse::<f64>()
                .map_err(|e| Error::InvalidSpec(format!("line {}: {e}", lineno + 1)))
        };
        let w = parse(cols.next())?;
        let v = parse(cols.next())?;
        if cols.next().is_some() {
            return Err(Error::InvalidSpec(format!("line {}: more than two columns", lineno + 1)));
        }
        rows.push((w, v));
    }
    validate_table(&rows)?;
    Ok(rows)
}

pub fn read_table(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidSpec(format!("cannot read {}: {e}", path.display())))?;
    parse_table(&text)
}
