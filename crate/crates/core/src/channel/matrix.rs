use alloc::vec::Vec;

use super::{doppler_axis, SamplingGrid};
use crate::{Complex64, Error, Result};

fn check_shape(grid: &SamplingGrid, len: usize) -> Result<()> {
    let expected = grid.num_snapshots() * grid.num_delay_bins();
    if len != expected {
        return Err(Error::Shape {
            expected_rows: grid.num_snapshots(),
            expected_cols: grid.num_delay_bins(),
            rows: len / grid.num_delay_bins().max(1),
            cols: grid.num_delay_bins(),
        });
    }
    Ok(())
}

/// Complex channel impulse response `h(t_n, tau_m)`, row-major by snapshot.
///
/// `|h|^2` is power in milliwatts.
#[derive(Debug, Clone, PartialEq)]
pub struct CirMatrix {
    grid: SamplingGrid,
    samples: Vec<Complex64>,
}

impl CirMatrix {
    pub fn new(grid: SamplingGrid, samples: Vec<Complex64>) -> Result<Self> {
        check_shape(&grid, samples.len())?;
        if let Some(i) = samples.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            let bins = grid.num_delay_bins();
            return Err(Error::invalid(
                "CIR",
                alloc::format!("non-finite sample at snapshot {}, bin {}", i / bins, i % bins),
            ));
        }
        Ok(Self { grid, samples })
    }

    pub fn zeros(grid: SamplingGrid) -> Self {
        let n = grid.num_snapshots() * grid.num_delay_bins();
        Self {
            grid,
            samples: alloc::vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    /// One snapshot (all delay bins).
    pub fn snapshot(&self, n: usize) -> &[Complex64] {
        let w = self.grid.num_delay_bins();
        &self.samples[n * w..(n + 1) * w]
    }

    pub fn get(&self, snapshot: usize, bin: usize) -> Complex64 {
        self.samples[snapshot * self.grid.num_delay_bins() + bin]
    }

    /// Time series of one delay bin.
    pub fn delay_column(&self, bin: usize) -> Vec<Complex64> {
        let w = self.grid.num_delay_bins();
        self.samples.iter().skip(bin).step_by(w).copied().collect()
    }

    /// Contiguous snapshot range `[start, start + len)` as a new matrix.
    pub fn slice_snapshots(&self, start: usize, len: usize) -> Result<Self> {
        if len == 0 || start + len > self.grid.num_snapshots() {
            return Err(Error::invalid(
                "snapshot range",
                alloc::format!(
                    "[{start}, {}) outside 0..{}",
                    start + len,
                    self.grid.num_snapshots()
                ),
            ));
        }
        let w = self.grid.num_delay_bins();
        Ok(Self {
            grid: self.grid.with_num_snapshots(len)?,
            samples: self.samples[start * w..(start + len) * w].to_vec(),
        })
    }

    /// Multiplies every sample by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|z| z * c).collect(),
        }
    }
}

/// Instantaneous power delay profile `P(t_n, tau_m)` in linear milliwatts.
#[derive(Debug, Clone, PartialEq)]
pub struct PdpMatrix {
    grid: SamplingGrid,
    power: Vec<f64>,
}

impl PdpMatrix {
    pub fn new(grid: SamplingGrid, power: Vec<f64>) -> Result<Self> {
        check_shape(&grid, power.len())?;
        if let Some(p) = power.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
            return Err(Error::invalid(
                "PDP",
                alloc::format!("entries must be finite and >= 0, found {p}"),
            ));
        }
        Ok(Self { grid, power })
    }

    pub(crate) fn new_unchecked(grid: SamplingGrid, power: Vec<f64>) -> Self {
        debug_assert_eq!(power.len(), grid.num_snapshots() * grid.num_delay_bins());
        Self { grid, power }
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    pub fn snapshot(&self, n: usize) -> &[f64] {
        let w = self.grid.num_delay_bins();
        &self.power[n * w..(n + 1) * w]
    }

    /// Total received power of one snapshot.
    pub fn snapshot_power(&self, n: usize) -> f64 {
        self.snapshot(n).iter().sum()
    }
}

/// Delay-Doppler power `S(tau_m, nu_k)`, row-major by delay, Doppler axis centered on 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayDopplerSpectrum {
    grid: SamplingGrid,
    transform_len: usize,
    power: Vec<f64>,
    doppler_axis: Vec<f64>,
}

impl DelayDopplerSpectrum {
    /// `power` is `num_delay_bins x transform_len`, already in centered Doppler order.
    pub fn new(grid: SamplingGrid, transform_len: usize, power: Vec<f64>) -> Result<Self> {
        if transform_len == 0 {
            return Err(Error::invalid("delay-Doppler spectrum", "empty transform"));
        }
        let rows = grid.num_delay_bins();
        if power.len() != rows * transform_len {
            return Err(Error::Shape {
                expected_rows: rows,
                expected_cols: transform_len,
                rows: power.len() / transform_len,
                cols: transform_len,
            });
        }
        if power.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::invalid(
                "delay-Doppler spectrum",
                "entries must be finite and >= 0",
            ));
        }
        let doppler_axis = doppler_axis(transform_len, grid.snapshot_interval());
        Ok(Self {
            grid,
            transform_len,
            power,
            doppler_axis,
        })
    }

    pub fn grid(&self) -> &SamplingGrid {
        &self.grid
    }

    pub fn transform_len(&self) -> usize {
        self.transform_len
    }

    pub fn power(&self) -> &[f64] {
        &self.power
    }

    /// Doppler power distribution of one delay bin.
    pub fn delay_row(&self, bin: usize) -> &[f64] {
        &self.power[bin * self.transform_len..(bin + 1) * self.transform_len]
    }

    pub fn doppler_axis(&self) -> &[f64] {
        &self.doppler_axis
    }

    pub fn doppler_spacing(&self) -> f64 {
        1.0 / (self.transform_len as f64 * self.grid.snapshot_interval())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(n: usize, m: usize) -> SamplingGrid {
        SamplingGrid::new(1e-3, 1e-9, n, m, 60e9, 1e9).unwrap()
    }

    #[test]
    fn cir_rejects_wrong_shape_and_non_finite() {
        let g = grid(2, 3);
        assert!(matches!(
            CirMatrix::new(g, alloc::vec![Complex64::new(0.0, 0.0); 5]),
            Err(Error::Shape { .. })
        ));
        let mut s = alloc::vec![Complex64::new(0.0, 0.0); 6];
        s[4] = Complex64::new(f64::NAN, 0.0);
        assert!(CirMatrix::new(g, s).is_err());
    }

    #[test]
    fn column_and_slice_access() {
        let g = grid(3, 2);
        let s: Vec<_> = (0..6).map(|i| Complex64::new(i as f64, 0.0)).collect();
        let h = CirMatrix::new(g, s).unwrap();
        assert_eq!(h.delay_column(1), [1.0, 3.0, 5.0].map(|v| Complex64::new(v, 0.0)));
        let tail = h.slice_snapshots(1, 2).unwrap();
        assert_eq!(tail.grid().num_snapshots(), 2);
        assert_eq!(tail.get(0, 0).re, 2.0);
        assert!(h.slice_snapshots(2, 2).is_err());
    }

    #[test]
    fn pdp_rejects_negative_entries() {
        assert!(PdpMatrix::new(grid(1, 2), alloc::vec![1.0, -0.5]).is_err());
        assert!(PdpMatrix::new(grid(1, 2), alloc::vec![1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn spectrum_axis_spacing() {
        let s = DelayDopplerSpectrum::new(grid(8, 1), 8, alloc::vec![0.0; 8]).unwrap();
        assert_eq!(s.doppler_axis().len(), 8);
        assert!((s.doppler_spacing() - 125.0).abs() < 1e-9);
        assert_eq!(s.doppler_axis()[4], 0.0);
    }
}
