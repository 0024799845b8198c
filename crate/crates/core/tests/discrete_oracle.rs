mod common;

use chainmap::chain::{run_reduction, ReductionOptions};
use chainmap::oracle::{
    compare, discretize, lanczos_chain, residual_sd_estimate, residual_spectrum, DiscretizedBath, TridiagonalChain,
    DEFAULT_WIDTH_SPACINGS,
};
use chainmap::spectral::{moment_mu1, SDSpec, SpectralDensity};
use common::*;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

fn bath(spec: &SDSpec, n: usize) -> DiscretizedBath {
    discretize(&spec.evaluate_uniform(n).unwrap(), n).unwrap()
}

fn basis_matrix(chain: &TridiagonalChain) -> DMatrix<f64> {
    let n = chain.basis[0].len();
    DMatrix::from_fn(chain.basis.len(), n, |i, k| chain.basis[i][k])
}

#[test]
fn couplings_follow_the_density() {
    let j = rubin(1.0).evaluate_uniform(M).unwrap();
    let b = discretize(&j, M).unwrap();
    assert_eq!(b.n_modes, M);
    assert!(rel(b.delta_omega, 1.0 / M as f64) < 1e-15);
    assert!(b.couplings.iter().all(|c| *c >= 0.0));
    let d2 = moment_mu1(&j).unwrap();
    assert!(rel(b.coupling_norm_sq(), d2) < 1e-3);
    let fine = discretize(&j, 2 * M).unwrap();
    assert!(rel(fine.coupling_norm_sq(), b.coupling_norm_sq()) < 1e-3);
    let zero = discretize(&SpectralDensity::zero(grid(1.0, M)), M).unwrap();
    assert!(zero.couplings.iter().all(|c| *c == 0.0));
}

#[test]
fn rubin_chain_is_homogeneous() {
    let wr: f64 = 0.1;
    let chain = lanczos_chain(&bath(&rubin(wr), M), 10).unwrap();
    for a in &chain.alpha {
        assert!(rel(*a, wr * wr / 2.0) < 5e-3, "{a}");
    }
    for b in &chain.beta {
        assert!(rel(*b, wr * wr / 4.0) < 5e-3, "{b}");
    }
}

#[test]
fn chain_vectors_are_orthonormal() {
    let chain = lanczos_chain(&bath(&garg(), M), 40).unwrap();
    let q = basis_matrix(&chain);
    let gram = &q * q.transpose();
    let dev = (gram - DMatrix::identity(40, 40)).abs().max();
    assert!(dev < 1e-10, "{dev:e}");
}

#[test]
fn full_tridiagonalization_preserves_the_spectrum() {
    let n = 120;
    let b = bath(&ohmic(), n);
    let chain = lanczos_chain(&b, n).unwrap();
    let t = DMatrix::from_fn(n, n, |i, k| {
        if i == k {
            chain.alpha[i]
        } else if i + 1 == k {
            chain.beta[i]
        } else if k + 1 == i {
            chain.beta[k]
        } else {
            0.0
        }
    });
    let mut eig: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    for (e, w) in eig.iter().zip(&b.omegas) {
        assert!(rel(*e, w * w) < 1e-8, "{e} vs {}", w * w);
    }
    // the chain vectors reproduce the same operator: Q diag(w^2) Q^T = T
    let q = basis_matrix(&chain);
    let a = DMatrix::from_diagonal(&DVector::from_iterator(n, b.omegas.iter().map(|w| w * w)));
    let scale = b.omega_r().powi(2);
    let t2 = &q * a * q.transpose();
    for i in 0..n {
        assert!((t2[(i, i)] - chain.alpha[i]).abs() < 1e-10 * scale);
    }
}

#[test]
fn residual_frequencies_interlace_the_bath() {
    let b = bath(&garg(), 500);
    let chain = lanczos_chain(&b, 3).unwrap();
    let res = residual_spectrum(&b, &chain, 1).unwrap();
    assert_eq!(res.frequencies.len(), b.n_modes - 1);
    for (k, f) in res.frequencies.iter().enumerate() {
        assert!(b.omegas[k] <= *f && *f <= b.omegas[k + 1], "k={k}");
    }
}

/// The residual bath after one extraction is `diag(w^2)` restricted to the
/// complement of the first chain vector.
#[test]
fn residual_spectrum_matches_dense_projection() {
    let n = 200;
    let b = bath(&garg(), n);
    let chain = lanczos_chain(&b, 3).unwrap();
    let res = residual_spectrum(&b, &chain, 1).unwrap();

    let a = DMatrix::from_diagonal(&DVector::from_iterator(n, b.omegas.iter().map(|w| w * w)));
    let v0 = DVector::from_column_slice(&chain.basis[0]);
    let p = DMatrix::identity(n, n) - &v0 * v0.transpose();
    let eig = SymmetricEigen::new(&p * &a * &p);
    let av0 = &a * &v0;
    // drop the null direction v0 itself
    let mut modes: Vec<(f64, f64)> = (0..n)
        .filter(|i| eig.eigenvectors.column(*i).dot(&v0).abs() < 0.5)
        .map(|i| (eig.eigenvalues[i], eig.eigenvectors.column(i).dot(&av0)))
        .collect();
    modes.sort_by(|x, y| x.0.total_cmp(&y.0));
    assert_eq!(modes.len(), res.frequencies.len());
    for ((lam, c), (f, cc)) in modes.iter().zip(res.frequencies.iter().zip(&res.couplings)) {
        assert!(rel(f * f, *lam) < 1e-8, "{} vs {lam}", f * f);
        assert!(rel(cc * cc, c * c) < 1e-6, "{} vs {}", cc * cc, c * c);
    }
}

#[test]
fn unextracted_bath_is_the_input_density() {
    let spec = garg();
    let b = bath(&spec, M);
    let chain = lanczos_chain(&b, 2).unwrap();
    let est = residual_sd_estimate(&b, &chain, 0, DEFAULT_WIDTH_SPACINGS * b.delta_omega).unwrap();
    let j0 = spec.evaluate_uniform(M).unwrap();
    let err = rel_l2_range(est.values(), j0.values(), M / 10..9 * M / 10);
    assert!(err < 1e-2, "{err:e}");
}

#[test]
fn first_residual_tracks_the_recurrence() {
    let spec = garg();
    let j0 = spec.evaluate_uniform(M).unwrap();
    let b = discretize(&j0, M).unwrap();
    let chain = lanczos_chain(&b, 3).unwrap();
    let est = residual_sd_estimate(&b, &chain, 1, DEFAULT_WIDTH_SPACINGS * b.delta_omega).unwrap();
    let run = run_reduction(&j0, 1, &ReductionOptions::default()).unwrap();
    let j1 = &run.residuals.densities[1];
    for i in M / 10..9 * M / 10 {
        assert!(rel(est.values()[i], j1.values()[i]) < 0.1, "w={}", j1.frequencies()[i]);
    }
}

#[test]
fn broadening_conserves_weight_and_sharpens() {
    let b = bath(&garg(), 400);
    let chain = lanczos_chain(&b, 2).unwrap();
    let res = residual_spectrum(&b, &chain, 1).unwrap();
    let delta_sum: f64 = res
        .frequencies
        .iter()
        .zip(&res.couplings)
        .map(|(f, c)| 0.5 * std::f64::consts::PI * c * c / f)
        .sum();
    let mut peaks = Vec::new();
    for spacings in [6.0, 3.0, 1.5] {
        let est = residual_sd_estimate(&b, &chain, 1, spacings * b.delta_omega).unwrap();
        let weight: f64 = est.values().iter().sum::<f64>() * b.delta_omega;
        assert!(rel(weight, delta_sum) < 2e-2, "width {spacings}: {weight} vs {delta_sum}");
        peaks.push(est.max_value());
    }
    assert!(peaks.windows(2).all(|p| p[1] >= p[0]), "{peaks:?}");
}

#[test]
fn oracle_agrees_with_the_recurrence() {
    for spec in [rubin(0.1), garg(), ohmic(), peak_sum()] {
        let j0 = spec.evaluate_uniform(M).unwrap();
        let run = run_reduction(&j0, 10, &ReductionOptions::default()).unwrap();
        let chain = lanczos_chain(&discretize(&j0, M).unwrap(), 10).unwrap();
        let cmp = compare(&run.coefficients, &chain, 10);
        assert_eq!(cmp.omega2_dev.len(), 10);
        assert!(cmp.max_dev() < 5e-3, "{}: {:e}", spec.name(), cmp.max_dev());
    }
}

#[test]
fn residual_index_must_be_inside_the_chain() {
    let b = bath(&garg(), 200);
    let chain = lanczos_chain(&b, 2).unwrap();
    assert!(residual_spectrum(&b, &chain, 2).is_err());
}
