//! Cauchy transform `W(z) = (2/pi) ∫ J(w) w / (w^2 - z^2) dw` of a spectral
//! density, on the real axis (boundary value from above) and off it.
//!
//! On the real axis the imaginary part of the boundary value is `J` itself
//! and the real part is a principal-value integral. The principal value is
//! taken by singularity subtraction:
//!
//! ```text
//! PV ∫ f(w') / (w'^2 - w^2) dw' = ∫ [f(w') - f(w)] / (w'^2 - w^2) dw'
//!                                 + f(w) / (2w) * ln|(w_R - w) / (w_R + w)|
//! ```
//!
//! with `f = J w`. The first integral is regular and is summed with the
//! trapezoid rule on the grid (plus the origin); at the collocation node the
//! integrand is replaced by its limit `f'(w) / (2w)`.

use std::f64::consts::{FRAC_1_PI, FRAC_2_PI};
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{chain_moments, FrequencyGrid, SpectralDensity};

/// Boundary values `W+(w) = Re W+(w) + i J(w)` on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryTransform {
    grid: Arc<FrequencyGrid>,
    values: Vec<Complex64>,
}

impl BoundaryTransform {
    pub(crate) fn from_values(grid: Arc<FrequencyGrid>, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(grid.len(), values.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn shared_grid(&self) -> &Arc<FrequencyGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn re(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.re).collect()
    }

    pub fn im(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.im).collect()
    }

    /// The spectral density `Im W+`.
    pub fn density(&self) -> Result<SpectralDensity> {
        SpectralDensity::new(self.grid.clone(), self.im())
    }

    /// Frequencies where `Re W+` changes sign, located by linear interpolation
    /// between neighbouring grid points.
    pub fn zero_crossings(&self) -> Vec<f64> {
        let w = self.grid.points();
        let mut out = Vec::new();
        for i in 0..w.len() - 1 {
            let (a, b) = (self.values[i].re, self.values[i + 1].re);
            if a == 0.0 {
                out.push(w[i]);
            } else if a * b < 0.0 {
                out.push(w[i] + (w[i + 1] - w[i]) * a / (a - b));
            }
        }
        out
    }
}

/// Singularity-subtracted principal value of `Re W+` at single grid points.
struct PrincipalValue<'a> {
    j: &'a SpectralDensity,
    weights: &'a [f64],
    /// Squared nodes, with the origin at index 0.
    nodes_sq: Vec<f64>,
    /// `f = J w` at the nodes, with `f(0) = 0`.
    f: Vec<f64>,
}

impl<'a> PrincipalValue<'a> {
    fn new(j: &'a SpectralDensity) -> Self {
        let w = j.frequencies();
        Self {
            j,
            weights: j.grid().weights_with_origin(),
            nodes_sq: std::iter::once(0.0).chain(w.iter().map(|x| x * x)).collect(),
            f: std::iter::once(0.0)
                .chain(w.iter().zip(j.values()).map(|(x, v)| x * v))
                .collect(),
        }
    }

    fn node(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            self.j.frequencies()[k - 1]
        }
    }

    /// `Re W+` at grid index `i`.
    fn re_at(&self, i: usize) -> f64 {
        let w = self.j.frequencies();
        let m = w.len();
        let f = &self.f;
        let k = i + 1;
        let x = w[i];
        let x2 = x * x;
        let fx = f[k];
        let slope = if k < m {
            (f[k + 1] - f[k - 1]) / (self.node(k + 1) - self.node(k - 1))
        } else {
            (f[k] - f[k - 1]) / (self.node(k) - self.node(k - 1))
        };
        let mut regular = 0.0;
        for (n, ((wt, fn_), xn2)) in self.weights.iter().zip(f).zip(&self.nodes_sq).enumerate() {
            let g = if n == k { slope / (2.0 * x) } else { (fn_ - fx) / (xn2 - x2) };
            regular += wt * g;
        }
        // the last node sits on the log singularity; shift it half a cell inward
        let omega_r = self.j.omega_r();
        let xe = if k == m { omega_r - 0.5 * (w[m - 1] - self.node(m - 1)) } else { x };
        let jx = self.j.values()[i];
        let log = if fx != 0.0 {
            FRAC_1_PI * jx * ((omega_r - xe) / (omega_r + xe)).abs().ln()
        } else {
            0.0
        };
        FRAC_2_PI * regular + log
    }
}

/// Boundary value of the Cauchy transform of `j` on its own grid.
pub fn boundary_values(j: &SpectralDensity) -> BoundaryTransform {
    let pv = PrincipalValue::new(j);
    let values = (0..j.values().len())
        .map(|i| Complex64::new(pv.re_at(i), j.values()[i]))
        .collect();
    BoundaryTransform { grid: j.shared_grid().clone(), values }
}

/// `Re W+` of the Cauchy transform of `j` at the given grid indices.
pub(crate) fn real_parts_at(j: &SpectralDensity, indices: &[usize]) -> Vec<f64> {
    let pv = PrincipalValue::new(j);
    indices.iter().map(|i| pv.re_at(*i)).collect()
}

/// `W(z)` for `Im z > 0` by plain trapezoid quadrature.
pub fn offaxis_value(j: &SpectralDensity, z: Complex64) -> Result<Complex64> {
    if !(z.im > 0.0) {
        return Err(Error::DomainError { re: z.re, im: z.im });
    }
    let z2 = z * z;
    let weights = &j.grid().weights_with_origin()[1..];
    let sum: Complex64 = j
        .frequencies()
        .iter()
        .zip(j.values())
        .zip(weights)
        .map(|((x, v), wt)| wt * x * v / (x * x - z2))
        .sum();
    Ok(FRAC_2_PI * sum)
}

/// Leading large-|z| behaviour `-(D^2 / z^2)(1 + Omega^2 / z^2)` built from
/// the density's own moments.
pub fn asymptotic_form(d2: f64, omega2: f64, z: Complex64) -> Complex64 {
    let z2 = z * z;
    -(d2 / z2) * (1.0 + omega2 / z2)
}

/// Relative deviation of `W(i R)` from its two-term asymptotic form at
/// `R = 20 w_R`.
pub fn asymptotic_check(j: &SpectralDensity) -> Result<f64> {
    let (d2, omega2) = chain_moments(j)?;
    let z = Complex64::new(0.0, 20.0 * j.omega_r());
    let exact = offaxis_value(j, z)?;
    let approx = asymptotic_form(d2, omega2, z);
    Ok((exact - approx).norm() / approx.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{counter_term, SDSpec};

    #[test]
    fn imaginary_part_is_the_density() {
        let j = SDSpec::Garg { omega_0: 0.04, d_0: 0.01, gamma: 0.01, omega_r: 0.1 }
            .evaluate_uniform(500)
            .unwrap();
        let t = boundary_values(&j);
        assert_eq!(t.im(), j.values());
    }

    #[test]
    fn rubin_boundary_value_is_a_parabola() {
        let wr = 2.0;
        let j = SDSpec::Rubin { omega_r: wr }.evaluate_uniform(2000).unwrap();
        let t = boundary_values(&j);
        for (x, v) in j.frequencies().iter().zip(t.values()).take(1800) {
            let exact = wr * wr / 4.0 - x * x / 2.0;
            assert!((v.re - exact).abs() < 1e-4 * wr * wr, "w={x}: {} vs {exact}", v.re);
        }
    }

    #[test]
    fn low_frequency_limit_is_the_counter_term() {
        let j = SDSpec::OhmicHardCutoff { eta: 0.5, omega_r: 1.0 }.evaluate_uniform(4000).unwrap();
        let t = boundary_values(&j);
        let ct = counter_term(&j).unwrap();
        assert!(((t.values()[0].re - ct) / ct).abs() < 1e-3);
    }

    #[test]
    fn offaxis_requires_upper_half_plane() {
        let j = SDSpec::Rubin { omega_r: 1.0 }.evaluate_uniform(100).unwrap();
        assert!(matches!(
            offaxis_value(&j, Complex64::new(0.5, 0.0)),
            Err(Error::DomainError { .. })
        ));
        assert!(offaxis_value(&j, Complex64::new(0.5, -1.0)).is_err());
    }

    #[test]
    fn rubin_far_field() {
        let j = SDSpec::Rubin { omega_r: 2.0 }.evaluate_uniform(4000).unwrap();
        let w = offaxis_value(&j, Complex64::new(0.0, 10.0)).unwrap();
        // W(10i) = (D^2 / 100)(1 - Omega^2 / 100) with D^2 = 1, Omega^2 = 2
        let expected = 0.01 * (1.0 - 0.02);
        assert!(((w.re - expected) / expected).abs() < 1e-2, "{}", w.re);
        assert!(w.im.abs() < 1e-12);
    }

    #[test]
    fn zero_crossings_are_interpolated() {
        let g = Arc::new(FrequencyGrid::uniform(1.0, 100).unwrap());
        let values = g
            .points()
            .iter()
            .map(|w| Complex64::new(0.3 - w, 0.0))
            .collect();
        let t = BoundaryTransform::from_values(g, values);
        let z = t.zero_crossings();
        assert_eq!(z.len(), 1);
        assert!((z[0] - 0.3).abs() < 1e-12);
    }
}
