//! Cross-check of the recurrence against an explicit discretized bath:
//! Lanczos coefficients, and the broadened density seen by the first
//! chain mode.

use chainmap::chain::{run_reduction, ReductionOptions};
use chainmap::oracle::{compare, discretize, lanczos_chain, residual_sd_estimate, DEFAULT_WIDTH_SPACINGS};
use chainmap::spectral::SDSpec;

fn main() -> chainmap::Result<()> {
    let n = 4000;
    let j0 = SDSpec::Garg { omega_0: 0.04, d_0: 0.01, gamma: 0.01, omega_r: 0.1 }.evaluate_uniform(n)?;
    let run = run_reduction(&j0, 10, &ReductionOptions::default())?;
    let bath = discretize(&j0, n)?;
    let chain = lanczos_chain(&bath, 10)?;

    println!("{:>3} {:>14} {:>14} {:>14} {:>14}", "n", "Omega^2 chain", "Omega^2 bath", "D chain", "D bath");
    let couplings = chain.couplings();
    for k in 0..10 {
        println!(
            "{:>3} {:>14.8e} {:>14.8e} {:>14.8e} {:>14.8e}",
            k + 1,
            run.coefficients.omega2[k],
            chain.alpha[k],
            run.coefficients.d[k],
            couplings[k]
        );
    }
    let cmp = compare(&run.coefficients, &chain, 10);
    println!("max relative deviation: {:.3e}", cmp.max_dev());

    let est = residual_sd_estimate(&bath, &chain, 1, DEFAULT_WIDTH_SPACINGS * bath.delta_omega)?;
    let j1 = &run.residuals.densities[1];
    println!("\nJ_1: recurrence vs broadened residual bath");
    for i in (399..4000).step_by(400) {
        println!("  w = {:.3}  {:.6e}  {:.6e}", j1.frequencies()[i], j1.values()[i], est.values()[i]);
    }
    Ok(())
}
