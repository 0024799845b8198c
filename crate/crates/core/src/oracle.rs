//! Independent check of the chain coefficients through an explicit,
//! finite harmonic bath.
//!
//! The density is discretized into `N` oscillators `w_k = k dw` with
//! couplings `c_k = sqrt(2 w_k dw J(w_k) / pi)`. The chain is then the
//! Lanczos tridiagonalization of `diag(w_k^2)` started from `c / |c|`:
//! diagonal entries are `Omega_n^2`, off-diagonal entries are `D_n`.

use std::f64::consts::{FRAC_2_PI, PI};
use std::sync::Arc;

use crate::chain::ChainCoefficients;
use crate::error::{Error, Result};
use crate::spectral::{FrequencyGrid, SpectralDensity};

/// Smallest bath accepted by [`discretize`].
pub const MIN_MODES: usize = 100;

/// Default Gaussian width, in units of the bath spacing.
pub const DEFAULT_WIDTH_SPACINGS: f64 = 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedBath {
    pub omegas: Vec<f64>,
    pub couplings: Vec<f64>,
    pub delta_omega: f64,
    pub n_modes: usize,
}

impl DiscretizedBath {
    /// `sum_k c_k^2`, the Riemann-sum estimate of `D_0^2`.
    pub fn coupling_norm_sq(&self) -> f64 {
        self.couplings.iter().map(|c| c * c).sum()
    }

    pub fn omega_r(&self) -> f64 {
        self.omegas[self.n_modes - 1]
    }

    /// Uniform grid whose nodes are the bath frequencies.
    pub fn grid(&self) -> Result<FrequencyGrid> {
        FrequencyGrid::uniform(self.omega_r(), self.n_modes)
    }
}

pub fn discretize(j0: &SpectralDensity, n_modes: usize) -> Result<DiscretizedBath> {
    if n_modes < MIN_MODES {
        return Err(Error::InvalidSpec(format!(
            "oracle needs at least {MIN_MODES} modes, got {n_modes}"
        )));
    }
    let omega_r = j0.omega_r();
    let delta_omega = omega_r / n_modes as f64;
    let omegas: Vec<f64> = (1..=n_modes)
        .map(|k| if k == n_modes { omega_r } else { k as f64 * delta_omega })
        .collect();
    let couplings = omegas
        .iter()
        .map(|w| (FRAC_2_PI * w * delta_omega * j0.interpolate(*w)).sqrt())
        .collect();
    Ok(DiscretizedBath { omegas, couplings, delta_omega, n_modes })
}

/// Lanczos chain of the discretized bath.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalChain {
    /// `alpha[n] = Omega_{n+1}^2`.
    pub alpha: Vec<f64>,
    /// `beta[n] = D_{n+1}`, stored positive. The last entry is the norm of
    /// the final residual and may be zero when the Krylov space is exhausted.
    pub beta: Vec<f64>,
    /// `D_0 = |c|`.
    pub d0: f64,
    /// Orthonormal chain-mode vectors over the bath coordinates.
    pub basis: Vec<Vec<f64>>,
}

impl TridiagonalChain {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    /// `D_0, D_1, ...` aligned with [`ChainCoefficients::d`].
    pub fn couplings(&self) -> Vec<f64> {
        std::iter::once(self.d0)
            .chain(self.beta.iter().copied())
            .take(self.alpha.len())
            .collect()
    }

    /// `D_n` for `n >= 0`.
    pub fn coupling(&self, n: usize) -> f64 {
        if n == 0 {
            self.d0
        } else {
            self.beta[n - 1]
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn lanczos_chain(bath: &DiscretizedBath, steps: usize) -> Result<TridiagonalChain> {
    if steps == 0 || steps > bath.n_modes {
        return Err(Error::InvalidSpec(format!(
            "steps must be in 1..={}, got {steps}",
            bath.n_modes
        )));
    }
    let d0 = bath.coupling_norm_sq().sqrt();
    if !(d0 > 0.0) {
        return Err(Error::DegenerateSD { moment: 0.0 });
    }
    let diag: Vec<f64> = bath.omegas.iter().map(|w| w * w).collect();
    let scale = diag.iter().copied().fold(0.0, f64::max);
    let breakdown_tol = 1e-13 * scale;

    let mut basis: Vec<Vec<f64>> = vec![bath.couplings.iter().map(|c| c / d0).collect()];
    let mut alpha = Vec::with_capacity(steps);
    let mut beta: Vec<f64> = Vec::with_capacity(steps);

    for j in 0..steps {
        let q = &basis[j];
        let mut v: Vec<f64> = diag.iter().zip(q).map(|(a, x)| a * x).collect();
        let a = dot(q, &v);
        alpha.push(a);
        axpy(-a, q, &mut v);
        if j > 0 {
            axpy(-beta[j - 1], &basis[j - 1], &mut v);
        }
        // two passes of classical Gram-Schmidt against every previous vector
        for _ in 0..2 {
            for qk in &basis {
                let p = dot(qk, &v);
                axpy(-p, qk, &mut v);
            }
        }
        let b = dot(&v, &v).sqrt();
        if j + 1 == steps {
            beta.push(if b > breakdown_tol { b } else { 0.0 });
            break;
        }
        if !(b > breakdown_tol) {
            return Err(Error::Breakdown { step: j });
        }
        beta.push(b);
        basis.push(v.into_iter().map(|x| x / b).collect());
    }
    Ok(TridiagonalChain { alpha, beta, d0, basis })
}

/// Normal modes of the bath left after extracting `n` chain modes, and
/// their couplings to chain mode `n` (`n = 0` is the system itself).
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualBath {
    /// Eigenfrequencies `Omega_bar_k`, increasing.
    pub frequencies: Vec<f64>,
    /// `C_k`, magnitudes.
    pub couplings: Vec<f64>,
}

/// Discrete spectral measure: nodes (squared frequencies) and weights summing to one.
struct Measure {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Measure {
    fn deflated(nodes: Vec<f64>, weights: Vec<f64>) -> Self {
        let max = weights.iter().copied().fold(0.0, f64::max);
        let cut = f64::EPSILON * f64::EPSILON * max;
        let (nodes, weights): (Vec<f64>, Vec<f64>) =
            nodes.into_iter().zip(weights).filter(|(_, w)| *w > cut).unzip();
        let total: f64 = weights.iter().sum();
        let weights = weights.into_iter().map(|w| w / total).collect();
        Self { nodes, weights }
    }

    /// `m(origin + t)` and its derivative, where `m(x) = sum_k w_k / (x_k - x)`
    /// and `shifted[k] = x_k - origin`.
    fn eval_shifted(&self, shifted: &[f64], t: f64) -> (f64, f64) {
        let mut f = 0.0;
        let mut df = 0.0;
        for (w, s) in self.weights.iter().zip(shifted) {
            let r = 1.0 / (s - t);
            f += w * r;
            df += w * r * r;
        }
        (f, df)
    }

    /// Root of `m` strictly between nodes `k` and `k + 1`, returned as
    /// `(root, m'(root))`.
    fn root_between(&self, k: usize, shifted: &mut [f64]) -> (f64, f64) {
        let (a, b) = (self.nodes[k], self.nodes[k + 1]);
        let half = 0.5 * (b - a);
        // m is increasing on (a, b); its sign at the midpoint picks the closer pole
        for (s, x) in shifted.iter_mut().zip(&self.nodes) {
            *s = x - a;
        }
        let (fm, _) = self.eval_shifted(shifted, half);
        let (origin, mut lo, mut hi) = if fm > 0.0 { (a, 0.0, half) } else { (b, -half, 0.0) };
        if origin == b {
            for (s, x) in shifted.iter_mut().zip(&self.nodes) {
                *s = x - origin;
            }
        }
        // distances to the nearer pole are resolved to relative precision
        let mut t = 0.5 * (lo + hi);
        for _ in 0..200 {
            let (f, df) = self.eval_shifted(shifted, t);
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - f / df;
            let next = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            let converged = (next - t).abs() <= 2.0 * f64::EPSILON * next.abs()
                || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs());
            t = next;
            if converged {
                break;
            }
        }
        let (_, df) = self.eval_shifted(shifted, t);
        (origin + t, df)
    }

    /// Measure of the tail after removing the first chain site: nodes are
    /// the zeros of `m`, weights `1 / m'` renormalized.
    fn peel(&self) -> Measure {
        let mut shifted = vec![0.0; self.nodes.len()];
        let (nodes, weights): (Vec<f64>, Vec<f64>) = (0..self.nodes.len().saturating_sub(1))
            .map(|k| {
                let (root, df) = self.root_between(k, &mut shifted);
                (root, 1.0 / df)
            })
            .unzip();
        Measure::deflated(nodes, weights)
    }
}

/// Eigenfrequencies of the bath orthogonal to the first `n` chain vectors
/// and their couplings to chain mode `n`.
///
/// The residual normal modes are the poles of the tail of the continued
/// fraction of `sum_k w_k / (w_k^2 - z)`; each level's poles are the zeros
/// of the previous level, which interlace its nodes.
pub fn residual_spectrum(bath: &DiscretizedBath, chain: &TridiagonalChain, n: usize) -> Result<ResidualBath> {
    if n >= chain.len() {
        return Err(Error::InvalidSpec(format!(
            "residual index {n} must be below the chain length {}",
            chain.len()
        )));
    }
    let nodes = bath.omegas.iter().map(|w| w * w).collect();
    let weights = bath.couplings.iter().map(|c| c * c).collect();
    let mut measure = Measure::deflated(nodes, weights);
    for _ in 0..n {
        measure = measure.peel();
    }
    let d = chain.coupling(n);
    Ok(ResidualBath {
        frequencies: measure.nodes.iter().map(|x| x.sqrt()).collect(),
        couplings: measure.weights.iter().map(|w| d * w.sqrt()).collect(),
    })
}

/// `(pi/2) sum_k C_k^2 / Omega_bar_k * delta(w - Omega_bar_k)` with each delta
/// replaced by a normalized Gaussian of standard deviation `width`, sampled on
/// the bath grid.
pub fn residual_sd_estimate(
    bath: &DiscretizedBath,
    chain: &TridiagonalChain,
    n: usize,
    width: f64,
) -> Result<SpectralDensity> {
    if !(width.is_finite() && width > 0.0) {
        return Err(Error::InvalidSpec(format!("width must be positive, got {width}")));
    }
    let residual = residual_spectrum(bath, chain, n)?;
    let grid = Arc::new(bath.grid()?);
    let pts = grid.points();
    let norm = 1.0 / (width * (2.0 * PI).sqrt());
    let reach = 8.0 * width;
    let mut values = vec![0.0; pts.len()];
    for (f, c) in residual.frequencies.iter().zip(&residual.couplings) {
        let amp = 0.5 * PI * c * c / f * norm;
        let lo = pts.partition_point(|w| *w < f - reach);
        let hi = pts.partition_point(|w| *w <= f + reach);
        for (v, w) in values[lo..hi].iter_mut().zip(&pts[lo..hi]) {
            let x = (w - f) / width;
            *v += amp * (-0.5 * x * x).exp();
        }
    }
    SpectralDensity::new(grid, values)
}

/// Relative deviations between the two routes, mode by mode.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleComparison {
    pub omega2_dev: Vec<f64>,
    pub d_dev: Vec<f64>,
}

impl OracleComparison {
    pub fn max_omega2_dev(&self) -> f64 {
        self.omega2_dev.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_d_dev(&self) -> f64 {
        self.d_dev.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_dev(&self) -> f64 {
        self.max_omega2_dev().max(self.max_d_dev())
    }
}

/// Compare the first `modes` coefficients of a reduction against a Lanczos chain.
pub fn compare(coefficients: &ChainCoefficients, chain: &TridiagonalChain, modes: usize) -> OracleComparison {
    let rel = |a: f64, b: f64| ((a - b) / a).abs();
    let couplings = chain.couplings();
    let m = modes.min(coefficients.len()).min(chain.len());
    OracleComparison {
        omega2_dev: (0..m).map(|k| rel(coefficients.omega2[k], chain.alpha[k])).collect(),
        d_dev: (0..m).map(|k| rel(coefficients.d[k], couplings[k])).collect(),
    }
}
