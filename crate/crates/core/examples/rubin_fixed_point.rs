//! The Rubin density is the fixed point of the chain recurrence: every
//! extracted mode has `Omega^2 = 2 D` and every residual density is the
//! input again.

use chainmap::chain::{relative_l2, run_reduction, ReductionOptions};
use chainmap::spectral::SDSpec;

fn main() -> chainmap::Result<()> {
    let omega_r = 0.1;
    let j0 = SDSpec::Rubin { omega_r }.evaluate_uniform(4000)?;
    let run = run_reduction(&j0, 20, &ReductionOptions::default())?;

    println!("w_R = {omega_r}: expected Omega^2 = {:.6e}, D = {:.6e}", omega_r * omega_r / 2.0, omega_r * omega_r / 4.0);
    println!("{:>3} {:>14} {:>14} {:>10} {:>12}", "n", "Omega_n^2", "D_(n-1)", "ratio", "|J_n - J_0|");
    for k in 0..run.coefficients.len() {
        println!(
            "{:>3} {:>14.6e} {:>14.6e} {:>10.6} {:>12.3e}",
            k + 1,
            run.coefficients.omega2[k],
            run.coefficients.d[k],
            run.report.ratios[k],
            relative_l2(&run.residuals.densities[k + 1], &j0),
        );
    }
    println!("status: {:?}, converged at step {:?}", run.report.status, run.report.convergence_step);
    Ok(())
}
