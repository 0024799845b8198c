//! A Brownian particle coupled to an oscillator that is itself damped by an
//! Ohmic bath. The first extracted mode is the oscillator, and the density
//! felt by it is Ohmic, `J_1 = gamma w`, up to cutoff corrections.

use chainmap::chain::{run_reduction, rubin_distance, ReductionOptions};
use chainmap::spectral::SDSpec;

fn main() -> chainmap::Result<()> {
    let (omega_0, d_0, gamma) = (0.04, 0.01, 0.01);
    let spec = SDSpec::Garg { omega_0, d_0, gamma, omega_r: 0.1 };
    let j0 = spec.evaluate_uniform(4000)?;
    let run = run_reduction(&j0, 10, &ReductionOptions::default())?;

    println!("{:>3} {:>12} {:>12} {:>8} {:>8}", "n", "Omega_n^2", "D_(n-1)", "ratio", "Rubin");
    for k in 0..run.coefficients.len() {
        println!(
            "{:>3} {:>12.5e} {:>12.5e} {:>8.4} {:>8.4}",
            k + 1,
            run.coefficients.omega2[k],
            run.coefficients.d[k],
            run.report.ratios[k],
            rubin_distance(&run.residuals.densities[k + 1]),
        );
    }

    println!("\nJ_1 / (gamma w) across the band:");
    let j1 = &run.residuals.densities[1];
    for i in (399..4000).step_by(400) {
        let w = j1.frequencies()[i];
        println!("  w = {w:.3}  {:.4}", j1.values()[i] / (gamma * w));
    }

    // the truncated Lorentzian tail sets how close D_0 and Omega_1^2 get to d_0, omega_0^2
    println!("\ncutoff dependence of the first mode:");
    for omega_r in [0.1, 0.4, 1.6] {
        let j = SDSpec::Garg { omega_0, d_0, gamma, omega_r }.evaluate_uniform(16000)?;
        let r = run_reduction(&j, 1, &ReductionOptions::default())?;
        println!(
            "  w_R = {omega_r:>4}: D_0 / d_0 = {:.4}, Omega_1^2 / omega_0^2 = {:.4}",
            r.coefficients.d[0] / d_0,
            r.coefficients.omega2[0] / (omega_0 * omega_0)
        );
    }
    Ok(())
}
