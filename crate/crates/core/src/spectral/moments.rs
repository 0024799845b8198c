//! Frequency moments of a spectral density.
//!
//! With `J` the positive branch of an odd density on `(0, w_R]`:
//!
//! * `D^2 = (2/pi) ∫ J(w) w dw` is the squared coupling to the next chain mode,
//! * `Omega^2 = ∫ J w^3 dw / ∫ J w dw` is that mode's squared frequency,
//! * `dOmega0^2 = (2/pi) ∫ J(w) / w dw` is the potential counter term.
//!
//! All integrals use the composite trapezoid rule on the grid with the
//! integrand extrapolated linearly to `w = 0`.

use std::f64::consts::FRAC_2_PI;

use super::density::SpectralDensity;
use super::grid::extrapolate_to_origin;
use crate::error::{Error, Result};

/// First moments below this value are treated as an all-zero density.
pub const MOMENT_FLOOR: f64 = 1e-300;

/// Growth of `J/w` over the first grid spacing beyond which the counter
/// term is declared divergent.
pub const DIVERGENCE_RATIO: f64 = 1.25;

/// `∫_0^{w_R} J(w) w^power dw` (no prefactor).
pub fn raw_moment(j: &SpectralDensity, power: i32) -> f64 {
    let integrand: Vec<f64> = j
        .frequencies()
        .iter()
        .zip(j.values())
        .map(|(w, v)| v * w.powi(power))
        .collect();
    j.grid().integrate(&integrand)
}

/// `D^2 = (2/pi) ∫ J w dw`.
pub fn moment_mu1(j: &SpectralDensity) -> Result<f64> {
    let mu1 = FRAC_2_PI * raw_moment(j, 1);
    if !(mu1 >= MOMENT_FLOOR) || !mu1.is_finite() {
        return Err(Error::DegenerateSD { moment: mu1 });
    }
    Ok(mu1)
}

/// `Omega^2 = ∫ J w^3 dw / ∫ J w dw`, invariant under `J -> lambda J`.
pub fn moment_omega2(j: &SpectralDensity) -> Result<f64> {
    let mu1 = moment_mu1(j)?;
    Ok(FRAC_2_PI * raw_moment(j, 3) / mu1)
}

/// Both chain moments at once: `(D^2, Omega^2)`.
pub fn chain_moments(j: &SpectralDensity) -> Result<(f64, f64)> {
    let d2 = moment_mu1(j)?;
    Ok((d2, FRAC_2_PI * raw_moment(j, 3) / d2))
}

/// `dOmega0^2 = (2/pi) ∫ J / w dw`.
pub fn counter_term(j: &SpectralDensity) -> Result<f64> {
    let w = j.frequencies();
    let ratio: Vec<f64> = w.iter().zip(j.values()).map(|(w, v)| v / w).collect();
    let (g1, g2) = (ratio[0], ratio[1]);
    if g1 > 0.0 && g1 > DIVERGENCE_RATIO * g2 {
        return Err(Error::DivergentMoment { ratio: g1 / g2 });
    }
    let g0 = extrapolate_to_origin(w, &ratio).max(0.0);
    Ok(FRAC_2_PI * j.grid().integrate_with_origin(g0, &ratio))
}
