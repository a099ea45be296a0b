//! Fixtures shared by the kernel benchmarks.

use transtat_core::classify::{single_mode_character, StatisticsSpec};
use transtat_core::symfunc::IntegerSeries;

pub fn label(s: &str) -> StatisticsSpec {
    s.parse().expect("valid label")
}

/// `Q₋` of `[1,3,1]-`.
pub fn finite_series() -> IntegerSeries {
    single_mode_character(&label("1,3,1:-"), 0).expect("valid statistics")
}

/// `1/Q₊` of `[1,3,1]+` up to `horizon`.
pub fn bosonic_series(horizon: usize) -> IntegerSeries {
    single_mode_character(&label("1,3,1:+"), horizon).expect("valid statistics")
}
