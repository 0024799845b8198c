//! Densities with an interior gap stop with a pole of `1/W` inside the gap;
//! a density that only vanishes below some `w_L` runs through and tends to
//! the gapped band form with that lower edge.

use std::sync::Arc;

use chainmap::chain::{run_reduction, ReductionOptions};
use chainmap::spectral::{FrequencyGrid, SpectralDensity};

fn main() -> chainmap::Result<()> {
    let grid = Arc::new(FrequencyGrid::uniform(0.1, 4000)?);
    let opts = ReductionOptions::default();

    let two_band = grid.points().iter().map(|w| if (0.04..0.06).contains(w) { 0.0 } else { *w }).collect();
    let j = SpectralDensity::new(grid.clone(), two_band)?;
    let run = run_reduction(&j, 10, &opts)?;
    println!("two bands with a gap on (0.04, 0.06): {:?}", run.report.status);
    println!("  completed steps kept: {}", run.report.completed_steps());

    let low = grid
        .points()
        .iter()
        .map(|w| if *w > 0.03 { (w - 0.03) * (0.1 - w).max(0.0).sqrt() } else { 0.0 })
        .collect();
    let j = SpectralDensity::new(grid, low)?;
    let run = run_reduction(&j, 15, &opts)?;
    println!("\nsupport on (0.03, 0.1): {:?}", run.report.status);
    for k in (0..15).step_by(2) {
        println!(
            "  n = {:>2}: w_L = sqrt(max(Omega^2 - 2D, 0)) = {:.5}, distance to band form {:.4}",
            k + 1,
            run.report.limiting_omega_l[k],
            run.report.limiting_l2[k]
        );
    }
    Ok(())
}
