mod common;

use std::f64::consts::PI;

use chainmap::spectral::{
    chain_moments, counter_term, moment_mu1, moment_omega2, raw_moment, support_analysis, SDSpec,
};
use common::*;
use proptest::prelude::*;

#[test]
fn presets_are_nonnegative_and_vanish_at_or_above_the_cutoff() {
    for spec in [rubin(0.1), garg(), ohmic(), peak_sum()] {
        let j = spec.evaluate_uniform(M).unwrap();
        assert!(j.values().iter().all(|v| *v >= 0.0));
        assert_eq!(spec.value_at(spec.omega_r() * 1.000001), 0.0);
        assert_eq!(spec.value_at(10.0 * spec.omega_r()), 0.0);
    }
}

#[test]
fn rubin_moments_closed_form() {
    for wr in [0.1, 1.0, 2.0] {
        let j = rubin(wr).evaluate_uniform(M).unwrap();
        // D0^2 = wR^4 / 16, Omega1^2 = wR^2 / 2, dOmega0^2 = wR^2 / 4
        assert!(rel(moment_mu1(&j).unwrap(), wr.powi(4) / 16.0) < 1e-5);
        assert!(rel(moment_omega2(&j).unwrap(), wr * wr / 2.0) < 1e-5);
        assert!(rel(counter_term(&j).unwrap(), wr * wr / 4.0) < 1e-5);
    }
}

#[test]
fn ohmic_moments_closed_form() {
    let (eta, wr) = (0.5, 0.1);
    let j = ohmic().evaluate_uniform(M).unwrap();
    assert!(rel(moment_mu1(&j).unwrap(), 2.0 * eta * wr * wr * wr / (3.0 * PI)) < 1e-6);
    assert!(rel(moment_omega2(&j).unwrap(), 0.6 * wr * wr) < 1e-6);
    assert!(rel(counter_term(&j).unwrap(), 2.0 * eta * wr / PI) < 1e-10);
}

#[test]
fn garg_moments_match_independent_simpson() {
    let spec = garg();
    let f = |w: f64| spec.value_at(w);
    let mu1 = 2.0 / PI * simpson(|w| f(w) * w, 0.0, 0.1, 200_000);
    let mu3 = 2.0 / PI * simpson(|w| f(w) * w.powi(3), 0.0, 0.1, 200_000);
    let ct = 2.0 / PI * simpson(|w| if w > 0.0 { f(w) / w } else { 0.0 }, 0.0, 0.1, 200_000);
    let j = spec.evaluate_uniform(M).unwrap();
    let (d2, om2) = chain_moments(&j).unwrap();
    assert!(rel(d2, mu1) < 1e-5, "{d2} vs {mu1}");
    assert!(rel(om2, mu3 / mu1) < 1e-5);
    // J / w has a finite limit at 0 that Simpson misses at the first node
    assert!(rel(counter_term(&j).unwrap(), ct) < 1e-4);
}

#[test]
fn rubin_moments_converge_under_refinement() {
    // the square-root edge at w_R limits the trapezoid rule to O(h^1.5)
    let moments = |m: usize| {
        let j = rubin(1.0).evaluate_uniform(m).unwrap();
        [moment_mu1(&j).unwrap(), moment_omega2(&j).unwrap(), counter_term(&j).unwrap()]
    };
    let levels: Vec<[f64; 3]> = [4000, 8000, 16000, 32000].iter().map(|m| moments(*m)).collect();
    for k in 0..3 {
        let d1 = rel(levels[0][k], levels[1][k]);
        let d2 = rel(levels[1][k], levels[2][k]);
        let d3 = rel(levels[2][k], levels[3][k]);
        let order = (d1 / d2).log2();
        assert!((1.3..1.7).contains(&order), "moment {k}: order {order}");
        assert!(d1 < 5e-6 && d3 < 1e-6, "moment {k}: {d1:e} {d3:e}");
    }
}

#[test]
fn cauchy_schwarz_on_all_presets() {
    for spec in [rubin(0.1), garg(), ohmic(), peak_sum()] {
        let j = spec.evaluate_uniform(M).unwrap();
        let (m1, m2, m3) = (raw_moment(&j, 1), raw_moment(&j, 2), raw_moment(&j, 3));
        assert!(m3 / m1 >= (m2 / m1).powi(2), "{}", spec.name());
    }
}

#[test]
fn table_reproduces_analytic_preset() {
    let garg = garg();
    let g = grid(0.1, M);
    let points: Vec<(f64, f64)> = g.points().iter().map(|w| (*w, garg.value_at(*w))).collect();
    let table = SDSpec::Table { points, omega_r: 0.1 };
    let a = garg.evaluate(g.clone()).unwrap();
    let b = table.evaluate(g).unwrap();
    assert_eq!(a.values(), b.values());
}

#[test]
fn gap_and_low_cutoff_support() {
    let j = two_band(M);
    let s = support_analysis(&j, 1e-10 * j.max_value());
    assert_eq!(s.gaps.len(), 1);
    assert!(s.gaps[0].lo >= GAP.0 - 1e-3 && s.gaps[0].hi <= GAP.1 + 1e-3);
    let j = low_cutoff(M);
    let s = support_analysis(&j, 1e-10 * j.max_value());
    assert!((s.omega_l.unwrap() - 0.03).abs() <= 1.0001 * 0.1 / M as f64);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn moments_are_homogeneous(lambda in 1e-3f64..1e3, which in 0usize..4) {
        let spec = [rubin(0.1), garg(), ohmic(), peak_sum()][which].clone();
        let j = spec.evaluate_uniform(1000).unwrap();
        let s = j.scaled(lambda).unwrap();
        prop_assert!(rel(moment_mu1(&s).unwrap(), lambda * moment_mu1(&j).unwrap()) < 1e-12);
        prop_assert!(rel(counter_term(&s).unwrap(), lambda * counter_term(&j).unwrap()) < 1e-12);
        prop_assert!(rel(moment_omega2(&s).unwrap(), moment_omega2(&j).unwrap()) < 1e-12);
    }
}
