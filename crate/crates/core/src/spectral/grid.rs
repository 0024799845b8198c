use crate::error::{Error, Result};

/// Minimum number of grid points accepted by [`FrequencyGrid`].
pub const MIN_GRID_POINTS: usize = 64;

/// Default number of points for a working grid.
pub const DEFAULT_GRID_POINTS: usize = 4000;

/// Strictly increasing positive frequencies ending at the high-frequency cutoff.
///
/// The integration domain is `[0, omega_r]`: every quadrature on the grid treats
/// the origin as an implicit extra node, so the `(0, points[0])` sliver is
/// always covered.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    /// Trapezoid weights for the nodes `[0, points...]`.
    weights: Vec<f64>,
}

impl FrequencyGrid {
    /// Uniform grid `w_k = k * omega_r / m` for `k = 1..=m`.
    pub fn uniform(omega_r: f64, m: usize) -> Result<Self> {
        if !(omega_r.is_finite() && omega_r > 0.0) {
            return Err(Error::InvalidGrid(format!("cutoff must be positive, got {omega_r}")));
        }
        if m < MIN_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_GRID_POINTS} points, got {m}"
            )));
        }
        let step = omega_r / m as f64;
        let mut points: Vec<f64> = (1..=m).map(|k| k as f64 * step).collect();
        // pin the last node to the cutoff exactly
        points[m - 1] = omega_r;
        Self::from_points(points)
    }

    /// Validate an arbitrary set of frequencies; the last point becomes the cutoff.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.len() < MIN_GRID_POINTS {
            return Err(Error::InvalidGrid(format!(
                "need at least {MIN_GRID_POINTS} points, got {}",
                points.len()
            )));
        }
        if !(points[0].is_finite() && points[0] > 0.0) {
            return Err(Error::InvalidGrid("first frequency must be positive".into()));
        }
        if let Some(w) = points.windows(2).find(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "frequencies must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let weights = trapezoid_weights(&points);
        Ok(Self { points, weights })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn omega_r(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Smallest spacing between adjacent nodes, including the origin.
    pub fn min_spacing(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(self.points[0], f64::min)
    }

    /// Spacing of a uniform grid (mean spacing otherwise).
    pub fn spacing(&self) -> f64 {
        self.omega_r() / self.points.len() as f64
    }

    /// Trapezoid weights over `[0, omega_r]`; index 0 belongs to the origin.
    pub(crate) fn weights_with_origin(&self) -> &[f64] {
        &self.weights
    }

    /// `∫_0^{omega_r} f dw` by the composite trapezoid rule. `f0` is the
    /// integrand value at the origin.
    pub fn integrate_with_origin(&self, f0: f64, values: &[f64]) -> f64 {
        debug_assert_eq!(values.len(), self.points.len());
        let w = &self.weights;
        w[0] * f0 + w[1..].iter().zip(values).map(|(a, b)| a * b).sum::<f64>()
    }

    /// Trapezoid integral with the integrand linearly extrapolated to the
    /// origin from the first two nodes (clamped at zero).
    pub fn integrate(&self, values: &[f64]) -> f64 {
        self.integrate_with_origin(extrapolate_to_origin(&self.points, values).max(0.0), values)
    }

    /// Same as [`integrate`](Self::integrate) without the positivity clamp.
    pub fn integrate_signed(&self, values: &[f64]) -> f64 {
        self.integrate_with_origin(extrapolate_to_origin(&self.points, values), values)
    }

    pub(crate) fn same_as(&self, other: &FrequencyGrid) -> bool {
        std::ptr::eq(self, other) || self.points == other.points
    }
}

/// Linear extrapolation of tabulated `values` at `points` down to `w = 0`.
pub(crate) fn extrapolate_to_origin(points: &[f64], values: &[f64]) -> f64 {
    let (w1, w2) = (points[0], points[1]);
    let (f1, f2) = (values[0], values[1]);
    f1 - w1 * (f2 - f1) / (w2 - w1)
}

fn trapezoid_weights(points: &[f64]) -> Vec<f64> {
    let n = points.len() + 1;
    let node = |i: usize| if i == 0 { 0.0 } else { points[i - 1] };
    let mut w = vec![0.0; n];
    for i in 0..n - 1 {
        let h = node(i + 1) - node(i);
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }
    w
}
