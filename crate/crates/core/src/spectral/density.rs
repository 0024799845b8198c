use std::sync::Arc;

use super::grid::FrequencyGrid;
use crate::error::{Error, Result};

/// Nonnegative spectral density sampled on a [`FrequencyGrid`].
///
/// Only the positive-frequency branch is stored; the odd continuation
/// `J(-w) = -J(w)` is implied. Values beyond the grid cutoff are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDensity {
    grid: Arc<FrequencyGrid>,
    values: Vec<f64>,
}

impl SpectralDensity {
    pub fn new(grid: Arc<FrequencyGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidSpec(format!(
                "{} values for a grid of {} points",
                values.len(),
                grid.len()
            )));
        }
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "J must be finite and nonnegative, got {v} at w = {}",
                grid.points()[i]
            )));
        }
        Ok(Self { grid, values })
    }

    /// All-zero density.
    pub fn zero(grid: Arc<FrequencyGrid>) -> Self {
        let values = vec![0.0; grid.len()];
        Self { grid, values }
    }

    /// `J(w) = mass * w * Re gamma(w)` from the real part of a memory kernel
    /// sampled on `grid`.
    pub fn from_memory_kernel(grid: Arc<FrequencyGrid>, re_gamma: &[f64], mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidSpec(format!("mass must be positive, got {mass}")));
        }
        if re_gamma.len() != grid.len() {
            return Err(Error::InvalidSpec("kernel length differs from grid length".into()));
        }
        if let Some((i, g)) = re_gamma.iter().enumerate().find(|(_, g)| !(**g >= 0.0)) {
            return Err(Error::InvalidSpec(format!(
                "Re gamma must be nonnegative, got {g} at w = {}",
                grid.points()[i]
            )));
        }
        let values = grid
            .points()
            .iter()
            .zip(re_gamma)
            .map(|(w, g)| mass * w * g)
            .collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> &Arc<FrequencyGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn frequencies(&self) -> &[f64] {
        self.grid.points()
    }

    pub fn omega_r(&self) -> f64 {
        self.grid.omega_r()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `lambda * J` for `lambda >= 0`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.grid.clone(), self.values.iter().map(|v| lambda * v).collect())
    }

    /// `a * self + b * other` on a shared grid.
    pub fn combine(&self, a: f64, other: &SpectralDensity, b: f64) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| a * x + b * y)
            .collect();
        Self::new(self.grid.clone(), values)
    }

    /// Linear interpolation at an arbitrary frequency. `J(0) = 0` and
    /// `J = 0` beyond the cutoff.
    pub fn interpolate(&self, w: f64) -> f64 {
        let pts = self.grid.points();
        if !(w > 0.0) || w > self.grid.omega_r() {
            return 0.0;
        }
        let k = pts.partition_point(|p| *p < w);
        if k == 0 {
            return self.values[0] * w / pts[0];
        }
        if k == pts.len() {
            return self.values[pts.len() - 1];
        }
        let (w0, w1) = (pts[k - 1], pts[k]);
        let t = (w - w0) / (w1 - w0);
        self.values[k - 1] * (1.0 - t) + self.values[k] * t
    }

    pub(crate) fn check_same_grid(&self, other: &SpectralDensity) -> Result<()> {
        if Arc::ptr_eq(&self.grid, &other.grid) || self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch("spectral densities live on different grids".into()))
        }
    }
}
