use crate::{Error, Result};

/// Window applied along time before each Doppler transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Taper {
    #[default]
    Rectangular,
    /// Periodic Hann, `0.5 (1 - cos(2 pi n / N))`.
    Hann,
}

/// How stationarity regions are grown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StationarityMode {
    /// Correlate each subsampled PDP against the first PDP of the current region.
    #[default]
    Anchor,
    /// Correlate each subsampled PDP against the previous subsampled PDP.
    Consecutive,
}

/// Which per-bin quantity enters the Pearson correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CorrelationInput {
    /// Linear power `|h|^2`.
    #[default]
    Power,
    /// Magnitude `|h|`.
    Magnitude,
}

/// Knobs of the characterization pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisParams {
    /// dBm; entries below are zeroed. `None` disables truncation.
    pub noise_threshold: Option<f64>,
    pub align_los: bool,
    /// Sliding-window length in snapshots.
    pub stft_window: usize,
    /// Window hop in snapshots.
    pub stft_step: usize,
    pub stft_taper: Taper,
    /// Compare every `stationarity_step`-th PDP.
    pub stationarity_step: usize,
    pub stationarity_threshold: f64,
    pub stationarity_mode: StationarityMode,
    pub correlation_input: CorrelationInput,
    /// Moving-average length, in samples of the smoothed series.
    pub trend_window: usize,
}

impl Default for AnalysisParams {
    fn default() -> Self {
        Self {
            noise_threshold: Some(-70.0),
            align_los: true,
            stft_window: 256,
            stft_step: 64,
            stft_taper: Taper::Rectangular,
            stationarity_step: 50,
            stationarity_threshold: 0.9,
            stationarity_mode: StationarityMode::Anchor,
            correlation_input: CorrelationInput::Power,
            trend_window: 101,
        }
    }
}

impl AnalysisParams {
    /// Checks the parameter set against a record of `num_snapshots` snapshots.
    pub fn validate(&self, num_snapshots: usize) -> Result<()> {
        if let Some(t) = self.noise_threshold {
            if t.is_nan() {
                return Err(Error::invalid("analysis params", "noise_threshold is NaN"));
            }
        }
        if self.stft_step == 0 || self.stft_step > self.stft_window {
            return Err(Error::invalid(
                "analysis params",
                alloc::format!(
                    "need 0 < stft_step <= stft_window, got step {} window {}",
                    self.stft_step, self.stft_window
                ),
            ));
        }
        if self.stft_window > num_snapshots {
            return Err(Error::invalid(
                "analysis params",
                alloc::format!(
                    "stft_window {} exceeds the record length of {num_snapshots} snapshots",
                    self.stft_window
                ),
            ));
        }
        if !(self.stationarity_threshold > 0.0 && self.stationarity_threshold <= 1.0) {
            return Err(Error::invalid(
                "analysis params",
                "stationarity_threshold must be in (0, 1]",
            ));
        }
        if self.stationarity_step == 0 {
            return Err(Error::invalid("analysis params", "stationarity_step must be >= 1"));
        }
        if self.trend_window == 0 {
            return Err(Error::invalid("analysis params", "trend_window must be >= 1"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate_on_a_full_record() {
        let p = AnalysisParams::default();
        p.validate(32_000).unwrap();
        assert_eq!(p.noise_threshold, Some(-70.0));
        assert_eq!((p.stft_window, p.stft_step, p.stationarity_step), (256, 64, 50));
    }

    #[test]
    fn rejects_inconsistent_windows() {
        let mut p = AnalysisParams::default();
        p.stft_step = 0;
        assert!(p.validate(1000).is_err());
        let mut p = AnalysisParams::default();
        p.stft_step = 300;
        assert!(p.validate(1000).is_err());
        assert!(AnalysisParams::default().validate(255).is_err());
        let mut p = AnalysisParams::default();
        p.stationarity_threshold = 0.0;
        assert!(p.validate(1000).is_err());
        p.stationarity_threshold = 1.0;
        assert!(p.validate(1000).is_ok());
        p.stationarity_step = 0;
        assert!(p.validate(1000).is_err());
    }
}
