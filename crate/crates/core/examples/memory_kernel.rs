//! Build the spectral density from the real part of a sampled memory kernel,
//! `J(w) = m w Re gamma(w)`, and map it to a chain. The kernel here is a
//! Drude (exponentially decaying) friction, `Re gamma = gamma_0 / (1 + (w tau)^2)`.

use std::sync::Arc;

use chainmap::chain::{run_reduction, ReductionOptions};
use chainmap::spectral::{moment_mu1, FrequencyGrid, SpectralDensity};

fn main() -> chainmap::Result<()> {
    let (mass, gamma_0, tau) = (2.0, 0.05, 40.0);
    let grid = Arc::new(FrequencyGrid::uniform(0.1, 4000)?);
    let re_gamma: Vec<f64> = grid.points().iter().map(|w| gamma_0 / (1.0 + (w * tau).powi(2))).collect();
    let j0 = SpectralDensity::from_memory_kernel(grid, &re_gamma, mass)?;
    println!("D_0^2 = {:.6e}", moment_mu1(&j0)?);

    let run = run_reduction(&j0, 8, &ReductionOptions::default())?;
    println!("delta Omega_0^2 = {:.6e}", run.coefficients.delta_omega0_sq);
    for k in 0..run.coefficients.len() {
        println!(
            "n = {}: Omega^2 = {:.6e}, D = {:.6e}, ratio = {:.4}",
            k + 1,
            run.coefficients.omega2[k],
            run.coefficients.d[k],
            run.report.ratios[k]
        );
    }
    Ok(())
}
