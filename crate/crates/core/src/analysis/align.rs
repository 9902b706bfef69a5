use alloc::vec::Vec;

use super::pdp::below_threshold;
use crate::channel::CirMatrix;
use crate::{Complex64, Result};

/// LOS candidates must be within this many dB of the snapshot maximum.
pub const LOS_WINDOW_DB: f64 = 6.0;

/// Output of [`align_los`].
#[derive(Debug, Clone, PartialEq)]
pub struct Alignment {
    /// Each snapshot circularly shifted so its LOS bin sits at delay 0.
    /// Unalignable snapshots are zeroed.
    pub cir: CirMatrix,
    /// Per-snapshot shift in bins; `None` marks an unalignable snapshot.
    pub shifts: Vec<Option<usize>>,
}

impl Alignment {
    /// Indices of snapshots with no bin at or above the noise threshold.
    pub fn unalignable(&self) -> Vec<usize> {
        self.shifts
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(i, _)| i)
            .collect()
    }
}

/// Earliest bin whose power is within [`LOS_WINDOW_DB`] of the row maximum.
/// `None` if the row is empty or its maximum is below `threshold` dBm.
pub fn detect_los(row: &[Complex64], threshold: Option<f64>) -> Option<usize> {
    let peak = row.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    if peak <= 0.0 || threshold.is_some_and(|t| below_threshold(peak, t)) {
        return None;
    }
    let floor = peak * crate::channel::db_to_power(-LOS_WINDOW_DB);
    row.iter().position(|z| z.norm_sqr() >= floor)
}

/// Time-aligns a CIR record so the LOS component of every snapshot appears at delay bin 0.
pub fn align_los(h: &CirMatrix, threshold: Option<f64>) -> Result<Alignment> {
    let grid = *h.grid();
    let width = grid.num_delay_bins();
    let mut samples = Vec::with_capacity(h.samples().len());
    let mut shifts = Vec::with_capacity(grid.num_snapshots());
    for n in 0..grid.num_snapshots() {
        let row = h.snapshot(n);
        let shift = detect_los(row, threshold);
        match shift {
            Some(s) => {
                samples.extend_from_slice(&row[s..]);
                samples.extend_from_slice(&row[..s]);
            }
            None => samples.resize(samples.len() + width, Complex64::new(0.0, 0.0)),
        }
        shifts.push(shift);
    }
    Ok(Alignment {
        cir: CirMatrix::new(grid, samples)?,
        shifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{db_to_power, SamplingGrid};
    use alloc::vec;

    fn record(rows: usize, bins: usize, taps: &[(usize, f64)]) -> CirMatrix {
        let grid = SamplingGrid::new(1e-3, 1e-9, rows, bins, 60e9, 1e9).unwrap();
        let mut s = vec![Complex64::new(0.0, 0.0); rows * bins];
        for n in 0..rows {
            for &(bin, db) in taps {
                s[n * bins + bin] = Complex64::new(db_to_power(db).sqrt(), 0.0);
            }
        }
        CirMatrix::new(grid, s).unwrap()
    }

    #[test]
    fn single_path_moves_to_bin_zero() {
        let h = record(5, 64, &[(37, -30.0)]);
        let a = align_los(&h, Some(-70.0)).unwrap();
        assert!(a.shifts.iter().all(|s| *s == Some(37)));
        for n in 0..5 {
            assert_eq!(a.cir.get(n, 0), h.get(n, 37));
            assert!(a.cir.snapshot(n)[1..].iter().all(|z| z.norm_sqr() == 0.0));
        }
    }

    #[test]
    fn relative_delays_are_preserved() {
        let h = record(3, 64, &[(10, 0.0), (20, -10.0)]);
        let a = align_los(&h, None).unwrap();
        assert!(a.shifts.iter().all(|s| *s == Some(10)));
        assert_eq!(a.cir.get(0, 10), h.get(0, 20));
    }

    #[test]
    fn earlier_weaker_path_within_6_db_wins() {
        let h = record(1, 32, &[(5, -34.0), (9, -30.0)]);
        assert_eq!(align_los(&h, None).unwrap().shifts[0], Some(5));
        let h = record(1, 32, &[(5, -37.0), (9, -30.0)]);
        assert_eq!(align_los(&h, None).unwrap().shifts[0], Some(9));
    }

    #[test]
    fn quiet_snapshots_are_flagged() {
        let grid = SamplingGrid::new(1e-3, 1e-9, 3, 8, 60e9, 1e9).unwrap();
        let mut s = vec![Complex64::new(0.0, 0.0); 24];
        s[3] = Complex64::new(1e-2, 0.0); // -40 dBm in snapshot 0
        s[8 + 4] = Complex64::new(1e-5, 0.0); // -100 dBm in snapshot 1
        let h = CirMatrix::new(grid, s).unwrap();
        let a = align_los(&h, Some(-70.0)).unwrap();
        assert_eq!(a.shifts, [Some(3), None, None]);
        assert_eq!(a.unalignable(), [1, 2]);
        assert!(a.cir.snapshot(1).iter().all(|z| z.norm_sqr() == 0.0));
    }
}
