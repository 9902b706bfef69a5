use alloc::format;
use alloc::vec::Vec;

use super::{AnalysisParams, CorrelationInput, StationarityMode};
use crate::channel::{AxisKind, MetricSeries, PdpMatrix, Quantity};
use crate::channel::mean_std;
use crate::{math, Error, Result};

/// Sample Pearson correlation of two equally long vectors.
///
/// `Ok(None)` when either input has zero variance (correlation undefined).
pub fn pearson(x: &[f64], y: &[f64]) -> Result<Option<f64>> {
    if x.len() != y.len() {
        return Err(Error::invalid(
            "pearson",
            format!("length mismatch: {} vs {}", x.len(), y.len()),
        ));
    }
    if x.len() < 2 {
        return Err(Error::Insufficient("pearson needs at least 2 points".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(None);
    }
    Ok(Some((sxy / math::sqrt(sxx * syy)).clamp(-1.0, 1.0)))
}

/// Quasi-stationary intervals of a PDP record.
#[derive(Debug, Clone, PartialEq)]
pub struct StationarityReport {
    /// Length of every region, seconds, in time order.
    pub region_lengths: Vec<f64>,
    /// First snapshot index of every region.
    pub boundaries: Vec<usize>,
    pub mean: f64,
    /// Population standard deviation of the region lengths.
    pub std: f64,
    /// Time between compared PDPs, `step * dt`.
    pub resolution: f64,
    /// Correlation of each compared PDP (from the second subsample on) with its reference.
    pub correlation: MetricSeries,
    /// Comparisons where a PDP was constant and the correlation had to be substituted.
    pub undefined_correlations: usize,
}

impl StationarityReport {
    /// Total analyzed span, seconds.
    pub fn span(&self) -> f64 {
        self.region_lengths.iter().sum()
    }
}

fn correlate(a: &[f64], b: &[f64], undefined: &mut usize) -> Result<f64> {
    Ok(match pearson(a, b)? {
        Some(r) => r,
        None => {
            *undefined += 1;
            let constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
            if constant(a) && constant(b) {
                1.0
            } else {
                0.0
            }
        }
    })
}

/// Splits a PDP record into stationarity regions.
///
/// Every `stationarity_step`-th PDP is kept. In anchor mode a region starts
/// at a kept PDP and grows while the next kept PDPs correlate with it at or
/// above the threshold; the first one that does not opens the next region.
/// Consecutive mode compares neighbouring kept PDPs instead.
pub fn stationarity_regions(p: &PdpMatrix, params: &AnalysisParams) -> Result<StationarityReport> {
    let grid = p.grid();
    let step = params.stationarity_step;
    if step == 0 {
        return Err(Error::invalid("analysis params", "stationarity_step must be >= 1"));
    }
    let n = grid.num_snapshots();
    if n < 2 * step {
        return Err(Error::Insufficient(format!(
            "stationarity needs at least {} snapshots at step {step}, got {n}",
            2 * step
        )));
    }
    if grid.num_delay_bins() < 2 {
        return Err(Error::Insufficient("stationarity needs at least 2 delay bins".into()));
    }
    let count = n / step;
    let rows: Vec<Vec<f64>> = (0..count)
        .map(|i| {
            let row = p.snapshot(i * step);
            match params.correlation_input {
                CorrelationInput::Power => row.to_vec(),
                CorrelationInput::Magnitude => row.iter().map(|&v| math::sqrt(v)).collect(),
            }
        })
        .collect();

    let mut starts = alloc::vec![0usize];
    let mut anchor = 0;
    let mut undefined = 0;
    let mut times = Vec::with_capacity(count - 1);
    let mut trace = Vec::with_capacity(count - 1);
    for i in 1..count {
        let reference = match params.stationarity_mode {
            StationarityMode::Anchor => anchor,
            StationarityMode::Consecutive => i - 1,
        };
        let r = correlate(&rows[reference], &rows[i], &mut undefined)?;
        times.push((i * step) as f64 * grid.snapshot_interval());
        trace.push(r);
        if r < params.stationarity_threshold {
            starts.push(i);
            anchor = i;
        }
    }

    let resolution = step as f64 * grid.snapshot_interval();
    let region_lengths: Vec<f64> = starts
        .iter()
        .zip(starts.iter().skip(1).chain([&count]))
        .map(|(a, b)| (b - a) as f64 * resolution)
        .collect();
    let (mean, std) = mean_std(&region_lengths);
    Ok(StationarityReport {
        boundaries: starts.iter().map(|i| i * step).collect(),
        region_lengths,
        mean,
        std,
        resolution,
        correlation: MetricSeries::new(
            "pdp_correlation",
            AxisKind::Time,
            Quantity::Dimensionless,
            times,
            trace,
        )?,
        undefined_correlations: undefined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::SamplingGrid;
    use alloc::vec;

    fn record(rows: Vec<Vec<f64>>) -> PdpMatrix {
        let grid = SamplingGrid::new(125e-6, 1e-9, rows.len(), rows[0].len(), 60e9, 1e9).unwrap();
        PdpMatrix::new(grid, rows.concat()).unwrap()
    }

    #[test]
    fn pearson_reference_values() {
        let x = [1.0, 2.0, 3.0];
        assert!((pearson(&x, &x).unwrap().unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&x, &[-1.0, -2.0, -3.0]).unwrap().unwrap() + 1.0).abs() < 1e-15);
        // 3.5 / sqrt(2 * 4.6667) = 0.98198
        let r = pearson(&x, &[1.0, 2.0, 4.0]).unwrap().unwrap();
        assert!((r - 0.981).abs() < 1e-3, "{r}");
        assert_eq!(pearson(&x, &[2.0, 2.0, 2.0]).unwrap(), None);
        assert!(pearson(&x, &[1.0]).is_err());
        assert!(pearson(&[1.0], &[1.0]).is_err());
    }

    #[test]
    fn static_record_is_one_region() {
        let row = vec![0.0, 1.0, 0.25, 0.0, 0.1];
        let p = record(vec![row; 500]);
        let r = stationarity_regions(&p, &AnalysisParams::default()).unwrap();
        assert_eq!(r.region_lengths.len(), 1);
        assert_eq!(r.boundaries, [0]);
        assert!((r.span() - 10.0 * 50.0 * 125e-6).abs() < 1e-12);
        assert!((r.resolution - 6.25e-3).abs() < 1e-15);
    }

    #[test]
    fn constant_rows_use_the_fallback() {
        let p = record(vec![vec![0.0; 4]; 200]);
        let r = stationarity_regions(&p, &AnalysisParams::default()).unwrap();
        assert_eq!(r.region_lengths.len(), 1);
        assert_eq!(r.undefined_correlations, 3);

        let mut rows = vec![vec![0.0; 4]; 200];
        for row in rows.iter_mut().skip(100) {
            *row = vec![1.0, 0.0, 0.0, 0.5];
        }
        let r = stationarity_regions(&record(rows), &AnalysisParams::default()).unwrap();
        assert_eq!(r.boundaries, [0, 100]);
    }

    #[test]
    fn consecutive_mode_tracks_slow_drift() {
        // a peak walking one bin per kept PDP: neighbours stay correlated
        // only with a wide enough kernel, the anchor loses it quickly
        let bins = 40;
        let rows: Vec<Vec<f64>> = (0..400)
            .map(|n| {
                let c = n as f64 / 50.0 + 5.0;
                (0..bins).map(|m| (-((m as f64 - c) / 3.0).powi(2)).exp()).collect()
            })
            .collect();
        let p = record(rows);
        let anchor = stationarity_regions(&p, &AnalysisParams::default()).unwrap();
        let consecutive = stationarity_regions(
            &p,
            &AnalysisParams {
                stationarity_mode: StationarityMode::Consecutive,
                ..AnalysisParams::default()
            },
        )
        .unwrap();
        assert_eq!(consecutive.region_lengths.len(), 1);
        assert!(anchor.region_lengths.len() > 1);
    }

    #[test]
    fn short_records_are_rejected() {
        let p = record(vec![vec![1.0, 2.0]; 99]);
        assert!(stationarity_regions(&p, &AnalysisParams::default()).is_err());
    }
}
