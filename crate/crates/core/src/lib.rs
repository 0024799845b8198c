//! Effective-mode chain mapping of harmonic-bath spectral densities.
//!
//! A Brownian particle linearly coupled to a harmonic bath is characterized
//! by its spectral density `J_0`. An orthogonal change of bath coordinates
//! turns the bath into a semi-infinite chain of effective modes with
//! on-site frequencies `Omega_n^2` and nearest-neighbour couplings `D_n`;
//! the terminal mode of a chain truncated after `n` sites feels a residual
//! density `J_n`. This crate computes that sequence from `J_0` alone:
//!
//! * [`spectral`]: densities on frequency grids, presets, moments, support;
//! * [`cauchy`]: boundary values of the Cauchy transform of a density;
//! * [`chain`]: the one-term recurrence on Cauchy transforms, convergence
//!   diagnostics towards the Rubin fixed point, gap detection;
//! * [`oracle`]: an explicit discretized bath tridiagonalized by Lanczos,
//!   used to cross-check the recurrence;
//! * [`config`] and [`cli`]: the file-driven pipeline behind the `chainmap` binary.
//!
//! ```
//! use chainmap::chain::{run_reduction, ReductionOptions};
//! use chainmap::spectral::SDSpec;
//!
//! let j0 = SDSpec::Rubin { omega_r: 0.1 }.evaluate_uniform(1000).unwrap();
//! let run = run_reduction(&j0, 5, &ReductionOptions::default()).unwrap();
//! for ratio in &run.report.ratios {
//!     assert!((ratio - 2.0).abs() < 1e-3);
//! }
//! ```

// `!(x > 0.0)` is used deliberately so that NaN is rejected along with negatives.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cauchy;
pub mod chain;
pub mod cli;
pub mod config;
pub mod error;
pub mod oracle;
pub mod spectral;

pub use error::{Error, Result};
