//! Partition of a level series at its maximum.

use std::ops::Range;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeakSplit {
    /// Index of the first maximum.
    pub peak: usize,
    /// Up to and including the peak.
    pub pre: Range<usize>,
    /// From the observation after the peak; empty when the peak is last.
    pub post: Range<usize>,
}

/// Splits at the earliest maximum. NaN values are never chosen as the peak.
pub fn split_at_peak(levels: &[f64]) -> Option<PeakSplit> {
    let peak = levels
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_nan())
        .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
            Some((_, b)) if v <= b => best,
            _ => Some((i, v)),
        })?
        .0;
    Some(PeakSplit {
        peak,
        pre: 0..peak + 1,
        post: peak + 1..levels.len(),
    })
}
