use alloc::vec::Vec;

use super::{
    align_los, delay_doppler, moving_average, pdp, rms_delay_spread, rms_doppler_spread_m1,
    rms_doppler_spread_m2, stationarity_regions, threshold_cir, AnalysisParams, StationarityReport,
};
use crate::channel::{CirMatrix, DelayDopplerSpectrum, MetricSeries, PdpMatrix};
use crate::Result;

/// Everything the pipeline derives from one CIR record.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub params: AnalysisParams,
    /// Per-snapshot LOS shift in bins; empty when alignment is off.
    pub los_shifts: Vec<Option<usize>>,
    /// Snapshots dropped because nothing reached the noise threshold.
    pub unalignable: Vec<usize>,
    /// Aligned, truncated PDP.
    pub pdp: PdpMatrix,
    pub delay_spread: MetricSeries,
    pub delay_spread_trend: MetricSeries,
    pub spectrum: DelayDopplerSpectrum,
    pub doppler_m1: MetricSeries,
    pub doppler_m2: MetricSeries,
    pub doppler_m2_trend: MetricSeries,
    pub stationarity: StationarityReport,
}

/// Runs alignment, noise truncation, RMS delay spread, the delay-Doppler
/// spectrum, both RMS Doppler spread methods and stationarity regions, in
/// that order.
pub fn analyze(h: &CirMatrix, params: &AnalysisParams) -> Result<AnalysisReport> {
    params.validate(h.grid().num_snapshots())?;
    let (aligned, los_shifts, unalignable) = if params.align_los {
        let a = align_los(h, params.noise_threshold)?;
        let unalignable = a.unalignable();
        (a.cir, a.shifts, unalignable)
    } else {
        (h.clone(), Vec::new(), Vec::new())
    };
    let cir = match params.noise_threshold {
        Some(t) => threshold_cir(&aligned, t)?,
        None => aligned,
    };
    let power = pdp(&cir);
    let delay_spread = rms_delay_spread(&power)?;
    let delay_spread_trend = moving_average(&delay_spread, params.trend_window)?;
    let spectrum = delay_doppler(&cir, params.stft_taper)?;
    let doppler_m1 = rms_doppler_spread_m1(&spectrum)?;
    let doppler_m2 = rms_doppler_spread_m2(&cir, params)?;
    let doppler_m2_trend = moving_average(&doppler_m2, params.trend_window)?;
    let stationarity = stationarity_regions(&power, params)?;
    Ok(AnalysisReport {
        params: params.clone(),
        los_shifts,
        unalignable,
        pdp: power,
        delay_spread,
        delay_spread_trend,
        spectrum,
        doppler_m1,
        doppler_m2,
        doppler_m2_trend,
        stationarity,
    })
}
