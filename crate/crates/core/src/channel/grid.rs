use alloc::vec::Vec;

use crate::{Error, Result};

/// Sounder bandwidth used for the default delay resolution (about 15 cm per bin).
pub const DEFAULT_BANDWIDTH: f64 = 2.048e9;

/// Discrete time/delay sampling of a CIR record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingGrid {
    snapshot_interval: f64,
    delay_bin: f64,
    num_snapshots: usize,
    num_delay_bins: usize,
    carrier_frequency: f64,
    bandwidth: f64,
}

impl SamplingGrid {
    /// Builds a grid, checking that `delay_bin` agrees with `1 / bandwidth`
    /// to within one part in 10^6.
    pub fn new(
        snapshot_interval: f64,
        delay_bin: f64,
        num_snapshots: usize,
        num_delay_bins: usize,
        carrier_frequency: f64,
        bandwidth: f64,
    ) -> Result<Self> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(snapshot_interval) {
            return Err(Error::invalid("grid", "snapshot_interval must be > 0"));
        }
        if !positive(delay_bin) {
            return Err(Error::invalid("grid", "delay_bin must be > 0"));
        }
        if num_snapshots == 0 || num_delay_bins == 0 {
            return Err(Error::invalid("grid", "dimensions must be at least 1x1"));
        }
        if !positive(carrier_frequency) {
            return Err(Error::invalid("grid", "carrier_frequency must be > 0"));
        }
        if !positive(bandwidth) {
            return Err(Error::invalid("grid", "bandwidth must be > 0"));
        }
        let expected = 1.0 / bandwidth;
        if crate::math::abs(delay_bin - expected) > 1e-6 * expected {
            return Err(Error::invalid(
                "grid",
                alloc::format!("delay_bin {delay_bin:e} s is not 1/bandwidth ({expected:e} s)"),
            ));
        }
        Ok(Self {
            snapshot_interval,
            delay_bin,
            num_snapshots,
            num_delay_bins,
            carrier_frequency,
            bandwidth,
        })
    }

    /// Grid whose delay bin is exactly `1 / bandwidth`.
    pub fn from_bandwidth(
        snapshot_interval: f64,
        num_snapshots: usize,
        num_delay_bins: usize,
        carrier_frequency: f64,
        bandwidth: f64,
    ) -> Result<Self> {
        if !(bandwidth.is_finite() && bandwidth > 0.0) {
            return Err(Error::invalid("grid", "bandwidth must be > 0"));
        }
        Self::new(
            snapshot_interval,
            1.0 / bandwidth,
            num_snapshots,
            num_delay_bins,
            carrier_frequency,
            bandwidth,
        )
    }

    pub fn snapshot_interval(&self) -> f64 {
        self.snapshot_interval
    }

    pub fn delay_bin(&self) -> f64 {
        self.delay_bin
    }

    pub fn num_snapshots(&self) -> usize {
        self.num_snapshots
    }

    pub fn num_delay_bins(&self) -> usize {
        self.num_delay_bins
    }

    pub fn carrier_frequency(&self) -> f64 {
        self.carrier_frequency
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Record duration `num_snapshots * snapshot_interval`.
    pub fn duration(&self) -> f64 {
        self.num_snapshots as f64 * self.snapshot_interval
    }

    /// Doppler resolution of a transform over the whole record.
    pub fn doppler_resolution(&self) -> f64 {
        1.0 / self.duration()
    }

    /// Largest unambiguous Doppler shift, `1 / (2 dt)`.
    pub fn max_unambiguous_doppler(&self) -> f64 {
        1.0 / (2.0 * self.snapshot_interval)
    }

    /// `[0, dtau, 2 dtau, ...]`, one entry per delay bin.
    pub fn delay_axis(&self) -> Vec<f64> {
        (0..self.num_delay_bins)
            .map(|i| i as f64 * self.delay_bin)
            .collect()
    }

    /// Snapshot timestamps `t_n = n dt`.
    pub fn time_axis(&self) -> Vec<f64> {
        (0..self.num_snapshots)
            .map(|i| i as f64 * self.snapshot_interval)
            .collect()
    }

    /// Same sampling with a different number of snapshots.
    pub fn with_num_snapshots(&self, num_snapshots: usize) -> Result<Self> {
        if num_snapshots == 0 {
            return Err(Error::invalid("grid", "num_snapshots must be >= 1"));
        }
        Ok(Self {
            num_snapshots,
            ..*self
        })
    }
}

/// Centered Doppler axis for a transform of `len` snapshots: bin `k` maps to
/// `(k - len/2) / (len dt)`, so negative shifts come first and zero sits at `len/2`.
pub fn doppler_axis(len: usize, snapshot_interval: f64) -> Vec<f64> {
    let spacing = 1.0 / (len as f64 * snapshot_interval);
    let half = (len / 2) as f64;
    (0..len).map(|k| (k as f64 - half) * spacing).collect()
}
