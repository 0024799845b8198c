//! Boundary values of the Cauchy transform: the Rubin parabola, the
//! logarithmic edge of a hard cutoff, and evaluation off the real axis.

use chainmap::cauchy::{asymptotic_check, boundary_values, offaxis_value};
use chainmap::spectral::{counter_term, SDSpec};
use num_complex::Complex64;

fn main() -> chainmap::Result<()> {
    let wr = 2.0;
    let rubin = SDSpec::Rubin { omega_r: wr }.evaluate_uniform(4000)?;
    let t = boundary_values(&rubin);
    println!("Rubin w_R = {wr}: Re W+(w) against w_R^2/4 - w^2/2");
    for i in [0, 999, 1999, 2999, 3799] {
        let w = rubin.frequencies()[i];
        println!("  w = {w:.4}  Re W+ = {:+.8}  exact = {:+.8}", t.re()[i], wr * wr / 4.0 - w * w / 2.0);
    }
    println!("  counter term (2/pi) int J/w = {:.8}", counter_term(&rubin)?);

    println!("\nOhmic with a hard cutoff: Re W+ at the last grid point");
    for m in [1000, 4000, 16000] {
        let j = SDSpec::OhmicHardCutoff { eta: 0.5, omega_r: 0.1 }.evaluate_uniform(m)?;
        let re = boundary_values(&j).re();
        println!("  M = {m:>5}: Re W+(w_R) = {:+.6}", re[m - 1]);
    }

    println!("\nOff the real axis");
    for r in [1.0, 10.0, 100.0] {
        let z = Complex64::new(0.0, r);
        let w = offaxis_value(&rubin, z)?;
        println!("  W({r}i) = {:+.6e} {:+.1e}i   D^2 / r^2 = {:.6e}", w.re, w.im, 1.0 / (r * r));
    }
    println!("  asymptotic self-check at 20 w_R: {:.2e}", asymptotic_check(&rubin)?);
    Ok(())
}
