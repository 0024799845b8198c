//! Stepwise extraction of effective chain modes from a spectral density.
//!
//! Starting from the boundary transform `W_0+` of `J_0`, each step computes
//! the coupling `D_n` and next-mode frequency `Omega_{n+1}^2` from the
//! moments of `J_n = Im W_n+`, then
//!
//! ```text
//! W_{n+1}(w) = Omega_{n+1}^2 - w^2 - D_n^2 / W_n(w)
//! ```
//!
//! pointwise on the grid, so that `J_{n+1} = D_n^2 J_n / |W_n+|^2`.
//! Outside the support of `J_{n+1}` the real part is re-derived from
//! `J_{n+1}` itself, where the pointwise recurrence is unstable.
//! The sequence is driven towards the homogeneous-chain fixed point
//! `Omega^2 = 2 D`, whose density is [`SDSpec::Rubin`].

use std::sync::Arc;

use log::{debug, info};
use num_complex::Complex64;

use crate::cauchy::{boundary_values, real_parts_at, BoundaryTransform};
use crate::error::{Error, Result};
use crate::spectral::{chain_moments, counter_term, FrequencyGrid, SDSpec, SpectralDensity};

/// Numeric thresholds for [`reduce_step`] and [`run_reduction`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// `|W| < pole_tol * w_R^2` at a sub-floor point flags a gap pole.
    pub pole_tol: f64,
    /// `J < floor * max(J)` counts as "no spectral weight here".
    pub floor: f64,
    /// Negative `Im W_{n+1}` down to `-clamp * max` is rounding and is zeroed.
    pub clamp: f64,
    /// Convergence needs `|Omega^2 / D - 2| < ratio_tol` ...
    pub ratio_tol: f64,
    /// ... and a Rubin distance below `rubin_tol` ...
    pub rubin_tol: f64,
    /// ... for this many consecutive steps.
    pub consecutive: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            pole_tol: 1e-8,
            floor: 1e-10,
            clamp: 1e-10,
            ratio_tol: 1e-3,
            rubin_tol: 1e-2,
            consecutive: 3,
        }
    }
}

impl Tolerances {
    pub fn validate(&self) -> Result<()> {
        let all = [self.pole_tol, self.floor, self.clamp, self.ratio_tol, self.rubin_tol];
        if all.iter().any(|t| !(t.is_finite() && *t > 0.0)) || self.consecutive == 0 {
            return Err(Error::InvalidSpec("tolerances must be strictly positive".into()));
        }
        Ok(())
    }
}

/// Output of one recurrence step.
#[derive(Debug, Clone)]
pub struct StepResult {
    /// `D_n^2 = (2/pi) ∫ J_n w dw`.
    pub d2: f64,
    /// `Omega_{n+1}^2`.
    pub omega2_next: f64,
    /// `W_{n+1}+` on the same grid.
    pub next: BoundaryTransform,
}

impl StepResult {
    pub fn d(&self) -> f64 {
        self.d2.sqrt()
    }
}

/// Sub-floor grid point where `W+` vanishes, if any.
fn find_gap_zero(w: &BoundaryTransform, floor_abs: f64, pole_abs: f64) -> Option<f64> {
    let freqs = w.grid().points();
    let vals = w.values();
    let empty = |i: usize| vals[i].im <= floor_abs;
    for i in 0..vals.len() {
        if !empty(i) {
            continue;
        }
        if vals[i].norm() < pole_abs {
            return Some(freqs[i]);
        }
        // on a finite grid the zero usually falls between nodes
        if i + 1 < vals.len() && empty(i + 1) {
            let (a, b) = (vals[i].re, vals[i + 1].re);
            if a * b < 0.0 {
                return Some(freqs[i] + (freqs[i + 1] - freqs[i]) * a / (a - b));
            }
        }
    }
    None
}

/// One application of the Cauchy-transform recurrence.
pub fn reduce_step(w: &BoundaryTransform, tol: &Tolerances) -> Result<StepResult> {
    let density = w.density().map_err(|_| {
        let (i, v) = w
            .values()
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.im.total_cmp(&b.1.im))
            .expect("nonempty grid");
        Error::NumericalBreakdown { frequency: w.grid().points()[i], min_value: v.im }
    })?;
    let (d2, omega2_next) = chain_moments(&density)?;

    let omega_r = w.grid().omega_r();
    let floor_abs = tol.floor * density.max_value();
    if let Some(frequency) = find_gap_zero(w, floor_abs, tol.pole_tol * omega_r * omega_r) {
        return Err(Error::GapPole { frequency });
    }

    let freqs = w.grid().points();
    let mut next: Vec<Complex64> = freqs
        .iter()
        .zip(w.values())
        .map(|(x, wn)| Complex64::new(omega2_next - x * x, 0.0) - d2 / wn)
        .collect();

    if let Some(i) = next.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NumericalBreakdown { frequency: freqs[i], min_value: f64::NAN });
    }
    let max_im = next.iter().map(|v| v.im).fold(0.0, f64::max);
    let clamp_abs = tol.clamp * max_im;
    for (i, v) in next.iter_mut().enumerate() {
        if v.im < 0.0 {
            if v.im < -clamp_abs {
                return Err(Error::NumericalBreakdown { frequency: freqs[i], min_value: v.im });
            }
            v.im = 0.0;
        }
    }
    // Where J_{n+1} vanishes, W_{n+1} is real and the recurrence runs away from
    // the physical (small) root of W = Omega^2 - w^2 - D^2 / W, amplifying
    // rounding by the ratio of the two roots at every step. W_{n+1} is the
    // Cauchy transform of J_{n+1}, so take the real part from it there.
    let empty: Vec<usize> = (0..next.len()).filter(|i| next[*i].im <= tol.floor * max_im).collect();
    if !empty.is_empty() {
        let grid = w.shared_grid().clone();
        let j_next = SpectralDensity::new(grid, next.iter().map(|v| v.im).collect())?;
        for (i, re) in empty.iter().zip(real_parts_at(&j_next, &empty)) {
            next[*i].re = re;
        }
    }
    Ok(StepResult {
        d2,
        omega2_next,
        next: BoundaryTransform::from_values(w.shared_grid().clone(), next),
    })
}

/// Chain parameters: `omega2[k] = Omega_{k+1}^2`, `d[k] = D_k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainCoefficients {
    pub omega2: Vec<f64>,
    pub d: Vec<f64>,
    pub delta_omega0_sq: f64,
}

impl ChainCoefficients {
    pub fn len(&self) -> usize {
        self.omega2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega2.is_empty()
    }
}

/// `J_0, J_1, ...` on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualSequence {
    pub densities: Vec<SpectralDensity>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Status {
    Converged,
    MaxStepsReached,
    GapPole { step: usize, frequency: f64 },
    NumericalBreakdown { step: usize },
}

impl Status {
    pub fn is_failure(&self) -> bool {
        matches!(self, Status::GapPole { .. } | Status::NumericalBreakdown { .. })
    }
}

/// Per-step diagnostics. Index `k` refers to the step that produced
/// `D_k`, `Omega_{k+1}^2` and `J_{k+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    /// `Omega_{k+1}^2 / D_k`.
    pub ratios: Vec<f64>,
    /// Relative L2 distance of `J_{k+1}` to the Rubin density with the grid cutoff.
    pub rubin_l2: Vec<f64>,
    /// `sqrt(max(Omega^2 - 2D, 0))` for this step's coefficients.
    pub limiting_omega_l: Vec<f64>,
    /// Relative L2 distance of `J_{k+1}` to [`limiting_sd`] built from this step's coefficients.
    pub limiting_l2: Vec<f64>,
    /// Sign changes of `Re W_k+`.
    pub zero_crossings: Vec<Vec<f64>>,
    /// First step at which the convergence test had held for the configured
    /// number of consecutive steps.
    pub convergence_step: Option<usize>,
    pub status: Status,
}

impl ReductionReport {
    pub fn completed_steps(&self) -> usize {
        self.ratios.len()
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReductionOptions {
    pub tolerances: Tolerances,
    /// Stop as soon as convergence is declared instead of running all steps.
    pub stop_on_convergence: bool,
}

/// Everything produced by [`run_reduction`]. On failure the completed
/// prefix is kept.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub coefficients: ChainCoefficients,
    pub residuals: ResidualSequence,
    /// `W_0+, W_1+, ...`; one more than the number of completed steps.
    pub transforms: Vec<BoundaryTransform>,
    pub report: ReductionReport,
}

pub fn run_reduction(j0: &SpectralDensity, steps: usize, opts: &ReductionOptions) -> Result<Reduction> {
    if steps == 0 {
        return Err(Error::InvalidSpec("at least one reduction step is required".into()));
    }
    let tol = &opts.tolerances;
    tol.validate()?;
    let delta_omega0_sq = counter_term(j0)?;
    let w0 = boundary_values(j0);

    let mut coefficients = ChainCoefficients { delta_omega0_sq, ..Default::default() };
    let mut densities = vec![j0.clone()];
    let mut transforms = vec![w0];
    let mut report = ReductionReport {
        ratios: Vec::new(),
        rubin_l2: Vec::new(),
        limiting_omega_l: Vec::new(),
        limiting_l2: Vec::new(),
        zero_crossings: Vec::new(),
        convergence_step: None,
        status: Status::MaxStepsReached,
    };
    let mut streak = 0;

    for step in 0..steps {
        let current = transforms.last().expect("W_0 present");
        let result = match reduce_step(current, tol) {
            Ok(r) => r,
            Err(Error::GapPole { frequency }) => {
                info!("step {step}: gap pole at w = {frequency}");
                report.status = Status::GapPole { step, frequency };
                break;
            }
            Err(e) => {
                info!("step {step}: breakdown ({e})");
                report.status = Status::NumericalBreakdown { step };
                break;
            }
        };
        let crossings = current.zero_crossings();
        let d = result.d();
        let jn = result.next.density()?;
        let ratio = result.omega2_next / d;
        let rubin = rubin_distance(&jn);
        let limit = limiting_sd(result.omega2_next, d, jn.shared_grid().clone())?;
        let limit_l2 = relative_l2(&jn, &limit);
        debug!(
            "step {step}: D = {d:.6e}, Omega^2 = {:.6e}, ratio = {ratio:.6}, rubin = {rubin:.3e}",
            result.omega2_next
        );

        coefficients.d.push(d);
        coefficients.omega2.push(result.omega2_next);
        report.ratios.push(ratio);
        report.rubin_l2.push(rubin);
        report.limiting_omega_l.push((result.omega2_next - 2.0 * d).max(0.0).sqrt());
        report.limiting_l2.push(limit_l2);
        report.zero_crossings.push(crossings);
        densities.push(jn);
        transforms.push(result.next);

        if (ratio - 2.0).abs() < tol.ratio_tol && rubin < tol.rubin_tol {
            streak += 1;
        } else {
            streak = 0;
        }
        if streak >= tol.consecutive && report.convergence_step.is_none() {
            report.convergence_step = Some(step);
            if opts.stop_on_convergence {
                break;
            }
        }
    }
    if !report.status.is_failure() && report.convergence_step.is_some() {
        report.status = Status::Converged;
    }
    Ok(Reduction {
        coefficients,
        residuals: ResidualSequence { densities },
        transforms,
        report,
    })
}

/// `‖a - b‖ / ‖b‖` in the trapezoid L2 norm of the shared grid.
pub fn relative_l2(a: &SpectralDensity, b: &SpectralDensity) -> f64 {
    let diff: Vec<f64> = a.values().iter().zip(b.values()).map(|(x, y)| (x - y).powi(2)).collect();
    let norm: Vec<f64> = b.values().iter().map(|y| y * y).collect();
    (a.grid().integrate(&diff) / a.grid().integrate(&norm)).sqrt()
}

/// Relative L2 distance to the Rubin density with the grid's cutoff.
pub fn rubin_distance(j: &SpectralDensity) -> f64 {
    let rubin = SDSpec::Rubin { omega_r: j.omega_r() }
        .evaluate(j.shared_grid().clone())
        .expect("grid cutoff matches by construction");
    relative_l2(j, &rubin)
}

/// Terminal density of a homogeneous chain with on-site `Omega^2` and coupling `D`:
/// `J(w) = sqrt((w^2 - w_L^2)(w_R^2 - w^2)) / 2` on `[w_L, w_R]`,
/// `w_R^2 = Omega^2 + 2D`, `w_L^2 = max(Omega^2 - 2D, 0)`.
pub fn limiting_sd(omega2_inf: f64, d_inf: f64, grid: Arc<FrequencyGrid>) -> Result<SpectralDensity> {
    if !(d_inf.is_finite() && d_inf > 0.0) {
        return Err(Error::InvalidSpec(format!("coupling must be positive, got {d_inf}")));
    }
    let (wl2, wr2) = limiting_band(omega2_inf, d_inf);
    if !(wr2 > wl2) {
        return Err(Error::InvalidSpec(format!("empty band: w_R^2 = {wr2} <= w_L^2 = {wl2}")));
    }
    let values = grid
        .points()
        .iter()
        .map(|w| {
            let w2 = w * w;
            if w2 < wl2 || w2 > wr2 {
                0.0
            } else {
                0.5 * ((w2 - wl2) * (wr2 - w2)).sqrt()
            }
        })
        .collect();
    SpectralDensity::new(grid, values)
}

/// `(w_L^2, w_R^2)` of the limiting band.
pub fn limiting_band(omega2: f64, d: f64) -> (f64, f64) {
    ((omega2 - 2.0 * d).max(0.0), omega2 + 2.0 * d)
}
