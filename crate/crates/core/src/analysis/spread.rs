use alloc::vec::Vec;

use crate::channel::{AxisKind, MetricSeries, PdpMatrix, Quantity};
use crate::{math, par, Result};

/// Power-weighted RMS width of `weights` over `axis`:
/// `sqrt(sum x^2 w / sum w - (sum x w / sum w)^2)`.
///
/// The second moment is taken about the weighted mean, which is the same
/// quantity without the cancellation of the raw-moment difference.
/// Returns `None` when the total weight is zero.
pub fn rms_width(axis: &[f64], weights: &[f64]) -> Option<f64> {
    debug_assert_eq!(axis.len(), weights.len());
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return None;
    }
    let mean = axis.iter().zip(weights).map(|(x, w)| x * w).sum::<f64>() / total;
    let var = axis
        .iter()
        .zip(weights)
        .map(|(x, w)| (x - mean) * (x - mean) * w)
        .sum::<f64>()
        / total;
    Some(math::sqrt(var.max(0.0)))
}

/// RMS delay spread per snapshot, `sigma_tau(t)`.
///
/// Snapshots with zero total power are left out and listed in
/// [`MetricSeries::excluded`]; mean and std run over the remaining ones.
pub fn rms_delay_spread(p: &PdpMatrix) -> Result<MetricSeries> {
    let grid = p.grid();
    let delays = grid.delay_axis();
    let per_snapshot = par::map_indexed(grid.num_snapshots(), |n| rms_width(&delays, p.snapshot(n)));
    let mut axis = Vec::new();
    let mut values = Vec::new();
    let mut excluded = Vec::new();
    for (n, v) in per_snapshot.into_iter().enumerate() {
        match v {
            Some(v) => {
                axis.push(n as f64 * grid.snapshot_interval());
                values.push(v);
            }
            None => excluded.push(n),
        }
    }
    Ok(MetricSeries::new("rms_delay_spread", AxisKind::Time, Quantity::DelaySpread, axis, values)?
        .with_excluded(excluded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::SamplingGrid;
    use alloc::vec;

    fn pdp(rows: &[&[f64]], delay_bin: f64) -> PdpMatrix {
        let grid = SamplingGrid::new(1e-3, delay_bin, rows.len(), rows[0].len(), 60e9, 1.0 / delay_bin).unwrap();
        PdpMatrix::new(grid, rows.concat()).unwrap()
    }

    #[test]
    fn single_bin_has_zero_spread() {
        let s = rms_delay_spread(&pdp(&[&[0.0, 0.0, 3.0, 0.0]], 1e-9)).unwrap();
        assert_eq!(s.values(), [0.0]);
    }

    #[test]
    fn equal_two_point_distribution() {
        // bins at 0 and 100 ns
        let mut row = vec![0.0; 11];
        row[0] = 1.0;
        row[10] = 1.0;
        let s = rms_delay_spread(&pdp(&[&row], 10e-9)).unwrap();
        assert!((s.values()[0] - 50e-9).abs() < 1e-9 * 50e-9);
    }

    #[test]
    fn unequal_two_point_distribution() {
        let mut row = vec![0.0; 11];
        row[0] = 0.9;
        row[10] = 0.1;
        let s = rms_delay_spread(&pdp(&[&row], 10e-9)).unwrap();
        // sqrt(p1 p2) / (p1 + p2) * dtau
        assert!((s.values()[0] - 30e-9).abs() < 1e-9 * 30e-9);
    }

    #[test]
    fn zero_snapshots_are_excluded() {
        let s = rms_delay_spread(&pdp(&[&[1.0, 1.0], &[0.0, 0.0], &[1.0, 0.0]], 1e-9)).unwrap();
        assert_eq!(s.excluded(), [1]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.axis(), [0.0, 2e-3]);
        assert!((s.mean() - 0.25e-9).abs() < 1e-20);
    }

    #[test]
    fn rms_width_of_empty_weight_is_none() {
        assert_eq!(rms_width(&[1.0, 2.0], &[0.0, 0.0]), None);
    }
}
