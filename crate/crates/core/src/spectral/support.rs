use super::density::SpectralDensity;

/// Relative floor used by [`default_floor`].
pub const DEFAULT_FLOOR_FRACTION: f64 = 1e-10;

/// Closed frequency interval `[lo, hi]` on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Where a density is above a floor.
#[derive(Debug, Clone, PartialEq)]
pub struct Support {
    /// Lower edge of the first interval with `J > floor` (`None` for empty support).
    pub omega_l: Option<f64>,
    /// Cutoff of the grid.
    pub omega_r: f64,
    /// Maximal runs of grid points with `J > floor`.
    pub intervals: Vec<Interval>,
    /// Interior runs with `J <= floor`, between two support intervals.
    pub gaps: Vec<Interval>,
}

impl Support {
    pub fn is_gapped(&self) -> bool {
        !self.gaps.is_empty()
    }
}

/// `1e-10 * max(J)`.
pub fn default_floor(j: &SpectralDensity) -> f64 {
    DEFAULT_FLOOR_FRACTION * j.max_value()
}

pub fn support_analysis(j: &SpectralDensity, floor: f64) -> Support {
    let w = j.frequencies();
    let mut intervals = Vec::new();
    let mut start: Option<usize> = None;
    for (i, v) in j.values().iter().enumerate() {
        match (start, *v > floor) {
            (None, true) => start = Some(i),
            (Some(s), false) => {
                intervals.push(Interval { lo: w[s], hi: w[i - 1] });
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        intervals.push(Interval { lo: w[s], hi: w[w.len() - 1] });
    }
    // gap edges are the last/first grid points still inside the neighbouring bands
    let gaps = intervals
        .windows(2)
        .map(|p| Interval { lo: p[0].hi, hi: p[1].lo })
        .collect();
    Support {
        omega_l: intervals.first().map(|i| i.lo),
        omega_r: j.omega_r(),
        intervals,
        gaps,
    }
}
