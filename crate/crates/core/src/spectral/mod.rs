//! Spectral densities on frequency grids: presets, tabulated input, moments
//! and support analysis.

mod density;
mod grid;
mod moments;
mod presets;
mod support;

pub use density::SpectralDensity;
pub use grid::{FrequencyGrid, DEFAULT_GRID_POINTS, MIN_GRID_POINTS};
pub use moments::{
    chain_moments, counter_term, moment_mu1, moment_omega2, raw_moment, DIVERGENCE_RATIO,
    MOMENT_FLOOR,
};
pub use presets::{parse_table, read_table, Peak, SDSpec};
pub use support::{default_floor, support_analysis, Interval, Support, DEFAULT_FLOOR_FRACTION};
