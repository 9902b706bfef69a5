//! Channel characterization pipeline.
//!
//! The stages follow the usual processing order: align the LOS to delay 0,
//! truncate entries below the noise threshold, then compute the RMS delay
//! spread per snapshot, the delay-Doppler spectrum with its per-delay RMS
//! Doppler spread (method 1), the sliding-window RMS Doppler spread
//! (method 2) and the PDP-correlation stationarity regions. [`analyze`]
//! chains all of them.

mod align;
mod doppler;
mod params;
mod pdp;
mod pipeline;
mod spread;
mod stationarity;
mod trend;

pub use align::{align_los, detect_los, Alignment, LOS_WINDOW_DB};
pub use doppler::{delay_doppler, rms_doppler_spread_m1, rms_doppler_spread_m2, window_starts};
pub use params::{AnalysisParams, CorrelationInput, StationarityMode, Taper};
pub use pdp::{pdp, threshold_cir, threshold_noise};
pub use pipeline::{analyze, AnalysisReport};
pub use spread::{rms_delay_spread, rms_width};
pub use stationarity::{pearson, stationarity_regions, StationarityReport};
pub use trend::moving_average;
