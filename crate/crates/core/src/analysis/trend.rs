use alloc::format;
use alloc::vec::Vec;

use crate::channel::MetricSeries;
use crate::{Error, Result};

/// Centered moving average. Near the ends the window shrinks to the samples
/// that exist, so the output has the same axis as the input.
pub fn moving_average(series: &MetricSeries, window: usize) -> Result<MetricSeries> {
    if window == 0 {
        return Err(Error::invalid("moving average", "window must be >= 1"));
    }
    let v = series.values();
    let n = v.len();
    let before = (window - 1) / 2;
    let after = window / 2;
    // prefix sums keep this O(n) for long series
    let mut prefix = Vec::with_capacity(n + 1);
    prefix.push(0.0);
    for x in v {
        prefix.push(prefix.last().copied().unwrap_or(0.0) + x);
    }
    let smoothed = (0..n)
        .map(|i| {
            let lo = i.saturating_sub(before);
            let hi = (i + after + 1).min(n);
            if window == 1 {
                v[i]
            } else {
                (prefix[hi] - prefix[lo]) / (hi - lo) as f64
            }
        })
        .collect();
    Ok(MetricSeries::new(
        format!("{}_trend", series.name()),
        series.axis_kind(),
        series.quantity(),
        series.axis().to_vec(),
        smoothed,
    )?
    .with_excluded(series.excluded().to_vec()))
}
