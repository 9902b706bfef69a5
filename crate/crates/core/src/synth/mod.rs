//! Geometric two-vehicles-passing channel synthesis.
//!
//! Paths are the direct TX-RX path plus single-bounce reflections off point
//! scatterers. Each path's delay, Doppler and amplitude follow from the
//! vehicle kinematics; [`simulate`] renders them onto the delay grid through
//! a band-limited kernel and adds receiver noise.

mod geometry;
mod scenario;
mod simulate;

pub use geometry::{list_paths, path_geometry, MultipathComponent, PathGeometry, PathLabel};
pub use scenario::{
    kmh, roadside_scatterers, AntennaGainModel, DelayKernel, ScenarioConfig, Scatterer,
};
pub use simulate::{check_aliasing, simulate};
