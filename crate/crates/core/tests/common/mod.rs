#![allow(dead_code)]

use std::sync::Arc;

use chainmap::spectral::{FrequencyGrid, Peak, SDSpec, SpectralDensity};

pub const M: usize = 4000;

pub fn rubin(omega_r: f64) -> SDSpec {
    SDSpec::Rubin { omega_r }
}

/// Oscillator at 0.04 coupled with d_0 = 0.01 and damped with gamma = 0.01, cutoff 0.1.
pub fn garg() -> SDSpec {
    SDSpec::Garg { omega_0: 0.04, d_0: 0.01, gamma: 0.01, omega_r: 0.1 }
}

pub fn ohmic() -> SDSpec {
    SDSpec::OhmicHardCutoff { eta: 0.5, omega_r: 0.1 }
}

/// Five-peak structured density with cutoff 0.08.
pub fn peak_sum() -> SDSpec {
    SDSpec::PeakSum {
        peaks: vec![
            Peak::new(0.010, 0.004, 0.004),
            Peak::new(0.022, 0.006, 0.003),
            Peak::new(0.035, 0.005, 0.004),
            Peak::new(0.048, 0.007, 0.005),
            Peak::new(0.060, 0.004, 0.006),
        ],
        omega_r: 0.08,
    }
}

pub fn grid(omega_r: f64, m: usize) -> Arc<FrequencyGrid> {
    Arc::new(FrequencyGrid::uniform(omega_r, m).unwrap())
}

/// `J = w` on `(0, 0.04]` and `[0.06, 0.1]`, zero in between (hard band edges).
pub fn two_band(m: usize) -> SpectralDensity {
    let g = grid(0.1, m);
    let v = g
        .points()
        .iter()
        .map(|w| if *w <= 0.04 || *w >= 0.06 { *w } else { 0.0 })
        .collect();
    SpectralDensity::new(g, v).unwrap()
}

pub const GAP: (f64, f64) = (0.04, 0.06);

/// Vanishes below 0.03 and at the cutoff 0.1, positive in between.
pub fn low_cutoff(m: usize) -> SpectralDensity {
    let g = grid(0.1, m);
    let v = g
        .points()
        .iter()
        .map(|w| if *w > 0.03 { (w - 0.03) * (0.1 - w).max(0.0).sqrt() } else { 0.0 })
        .collect();
    SpectralDensity::new(g, v).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n.is_multiple_of(2));
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let x = a + i as f64 * h;
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
    }
    s * h / 3.0
}

/// Relative L2 distance on a sub-range of grid indices (plain sums).
pub fn rel_l2_range(a: &[f64], b: &[f64], range: std::ops::Range<usize>) -> f64 {
    let num: f64 = range.clone().map(|i| (a[i] - b[i]).powi(2)).sum();
    let den: f64 = range.map(|i| b[i].powi(2)).sum();
    (num / den).sqrt()
}
