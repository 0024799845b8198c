//! A structured five-peak density relaxes towards the Rubin form within a
//! few steps; peaks are absorbed into the first chain modes.

use chainmap::chain::{run_reduction, rubin_distance, ReductionOptions};
use chainmap::spectral::{Peak, SDSpec};

fn main() -> chainmap::Result<()> {
    let spec = SDSpec::PeakSum {
        peaks: vec![
            Peak::new(0.010, 0.004, 0.004),
            Peak::new(0.022, 0.006, 0.003),
            Peak::new(0.035, 0.005, 0.004),
            Peak::new(0.048, 0.007, 0.005),
            Peak::new(0.060, 0.004, 0.006),
        ],
        omega_r: 0.08,
    };
    let j0 = spec.evaluate_uniform(4000)?;
    let run = run_reduction(&j0, 15, &ReductionOptions::default())?;

    println!("n = 0: Rubin distance {:.4}", rubin_distance(&j0));
    for k in 0..run.coefficients.len() {
        let crossings = &run.report.zero_crossings[k];
        println!(
            "n = {:>2}: Rubin distance {:.4}, Omega^2 / D = {:.4}, Re W_{k} crosses zero at {:?}",
            k + 1,
            run.report.rubin_l2[k],
            run.report.ratios[k],
            crossings.iter().map(|w| format!("{w:.4}")).collect::<Vec<_>>(),
        );
    }
    println!("status: {:?}", run.report.status);
    Ok(())
}
