//! Synthesis and characterization of time-varying vehicle-to-vehicle
//! millimeter-wave channels.
//!
//! The crate is `no_std` (it needs `alloc`). It covers three layers:
//!
//! * [`channel`]: sampling grids, the CIR / PDP / delay-Doppler containers and
//!   metric series shared by everything else.
//! * [`synth`]: a geometric two-vehicles-passing scenario that produces
//!   band-limited CIR matrices with ground-truth path lists.
//! * [`analysis`]: LOS alignment, noise truncation, RMS delay spread,
//!   delay-Doppler spectra, RMS Doppler spread (full record and sliding
//!   window) and PDP-correlation stationarity regions.
//!
//! Enable the `parallel` feature to spread the per-snapshot and per-delay
//! loops over a rayon pool; results do not depend on the thread count.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

pub mod analysis;
pub mod channel;
mod error;
pub mod fft;
mod math;
mod par;
pub mod synth;

pub use error::{Error, Result};

pub use num_complex::Complex64;

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
