//! Domain types shared by synthesis and analysis.
//!
//! Power is carried in linear milliwatts everywhere; dBm only shows up in
//! thresholds and at IO boundaries (see [`power_to_db`]).

mod grid;
mod matrix;
mod series;
mod units;

pub use grid::{doppler_axis, SamplingGrid, DEFAULT_BANDWIDTH};
pub use matrix::{CirMatrix, DelayDopplerSpectrum, PdpMatrix};
pub use series::{AxisKind, MetricSeries, Quantity};
pub(crate) use series::mean_std;
pub use units::{db_to_power, power_to_db};
