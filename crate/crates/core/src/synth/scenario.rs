use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::channel::{SamplingGrid, DEFAULT_BANDWIDTH};
use crate::{math, Error, Result};

/// Point scatterer for single-bounce paths.
#[derive(Debug, Clone, PartialEq)]
pub struct Scatterer {
    /// `[x along the road, y lateral, z height]`, meters.
    pub position: [f64; 3],
    /// Extra loss of the bounce, dB (>= 0).
    pub reflection_loss: f64,
    /// Optional `[start, end]` visibility window, seconds.
    pub active_interval: Option<(f64, f64)>,
}

impl Scatterer {
    pub fn new(position: [f64; 3], reflection_loss: f64) -> Self {
        Self {
            position,
            reflection_loss,
            active_interval: None,
        }
    }

    pub fn active_at(&self, t: f64) -> bool {
        match self.active_interval {
            Some((start, end)) => t >= start && t <= end,
            None => true,
        }
    }
}

/// Scalar antenna gain as a function of elevation angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AntennaGainModel {
    Isotropic,
    /// `-min(12 (theta / beamwidth)^2, floor_db)` dB, the usual parabolic
    /// main lobe clipped at a side-lobe floor.
    Beam {
        /// Vertical 3 dB beamwidth, degrees.
        beamwidth_deg: f64,
        /// Attenuation floor, dB.
        floor_db: f64,
    },
}

impl AntennaGainModel {
    /// Wide vertical beam of the 60 GHz horn.
    pub const WIDE_130: Self = AntennaGainModel::Beam {
        beamwidth_deg: 130.0,
        floor_db: 20.0,
    };
    /// Narrow vertical beam of the 80 GHz horn.
    pub const NARROW_30: Self = AntennaGainModel::Beam {
        beamwidth_deg: 30.0,
        floor_db: 20.0,
    };

    /// Gain in dB at `elevation` radians from boresight.
    pub fn gain_db(&self, elevation: f64) -> f64 {
        match *self {
            AntennaGainModel::Isotropic => 0.0,
            AntennaGainModel::Beam {
                beamwidth_deg,
                floor_db,
            } => {
                let ratio = elevation.to_degrees() / beamwidth_deg;
                -(12.0 * ratio * ratio).min(floor_db)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            AntennaGainModel::Isotropic => Ok(()),
            AntennaGainModel::Beam {
                beamwidth_deg,
                floor_db,
            } => {
                if !(beamwidth_deg.is_finite() && beamwidth_deg > 0.0) {
                    return Err(Error::invalid("antenna", "beamwidth must be > 0"));
                }
                if !(floor_db.is_finite() && floor_db >= 0.0) {
                    return Err(Error::invalid("antenna", "attenuation floor must be >= 0 dB"));
                }
                Ok(())
            }
        }
    }
}

/// How a path at a fractional delay is spread over the delay bins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DelayKernel {
    /// Periodic sinc of a flat band: exact single-bin response for on-grid delays.
    #[default]
    Dirichlet,
    /// Hann-tapered band: wider main lobe, much faster side-lobe decay.
    Hann,
}

/// Two vehicles passing each other in opposite directions on a straight road.
///
/// The transmitter drives along `y = 0` in `+x`, the receiver along
/// `y = lane_offset` in `-x`; both are at `x = 0` at `passing_time`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// m/s
    pub tx_speed: f64,
    /// m/s
    pub rx_speed: f64,
    /// Lateral TX/RX separation, meters (> 0).
    pub lane_offset: f64,
    /// Antenna height above the road on both vehicles, meters.
    pub antenna_height: f64,
    /// Instant of closest approach, seconds from record start.
    pub passing_time: f64,
    /// Record length, seconds.
    pub duration: f64,
    /// Hz
    pub carrier_frequency: f64,
    /// Time between CIR snapshots, seconds.
    pub snapshot_interval: f64,
    /// Hz; the delay bin is `1 / bandwidth`.
    pub bandwidth: f64,
    pub num_delay_bins: usize,
    pub scatterers: Vec<Scatterer>,
    /// Received LOS power at 1 m, dBm.
    pub los_power_at_1m: f64,
    pub path_loss_exponent: f64,
    /// Mean noise power per (snapshot, delay bin), dBm.
    pub noise_floor: f64,
    pub noise_enabled: bool,
    pub antenna_gain: AntennaGainModel,
    pub delay_kernel: DelayKernel,
    pub rng_seed: u64,
}

/// km/h to m/s.
pub fn kmh(v: f64) -> f64 {
    v / 3.6
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self::passing_cars(60e9)
    }
}

impl ScenarioConfig {
    /// Desk-scale passing scenario: 4 s at 8000 snapshots/s, 547 delay bins of
    /// 1/2.048 GHz, a roadside scatterer field, cars at 15 and 25 km/h so the
    /// largest Doppler shift stays below the 4 kHz limit even at 80 GHz.
    pub fn passing_cars(carrier_frequency: f64) -> Self {
        Self {
            tx_speed: kmh(15.0),
            rx_speed: kmh(25.0),
            lane_offset: 3.5,
            antenna_height: 1.5,
            passing_time: 2.0,
            duration: 4.0,
            carrier_frequency,
            snapshot_interval: 125e-6,
            bandwidth: DEFAULT_BANDWIDTH,
            num_delay_bins: 547,
            scatterers: roadside_scatterers(40, 0x5eed),
            los_power_at_1m: -20.0,
            path_loss_exponent: 2.0,
            noise_floor: -85.0,
            noise_enabled: true,
            antenna_gain: AntennaGainModel::Isotropic,
            delay_kernel: DelayKernel::Dirichlet,
            rng_seed: 1,
        }
    }

    /// Number of snapshots, `round(duration / snapshot_interval)`.
    pub fn num_snapshots(&self) -> usize {
        let n = math::round(self.duration / self.snapshot_interval);
        if n.is_finite() && n >= 0.0 {
            n as usize
        } else {
            0
        }
    }

    pub fn grid(&self) -> Result<SamplingGrid> {
        SamplingGrid::from_bandwidth(
            self.snapshot_interval,
            self.num_snapshots(),
            self.num_delay_bins,
            self.carrier_frequency,
            self.bandwidth,
        )
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &'static str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid("scenario", format!("{name} must be finite")))
            }
        };
        for (name, v) in [
            ("tx_speed", self.tx_speed),
            ("rx_speed", self.rx_speed),
            ("lane_offset", self.lane_offset),
            ("antenna_height", self.antenna_height),
            ("passing_time", self.passing_time),
            ("duration", self.duration),
            ("los_power_at_1m", self.los_power_at_1m),
            ("path_loss_exponent", self.path_loss_exponent),
            ("noise_floor", self.noise_floor),
        ] {
            finite(name, v)?;
        }
        if self.duration <= 0.0 {
            return Err(Error::invalid("scenario", "duration must be > 0"));
        }
        if self.tx_speed < 0.0 || self.rx_speed < 0.0 {
            return Err(Error::invalid("scenario", "speeds must be >= 0"));
        }
        if self.lane_offset <= 0.0 {
            return Err(Error::invalid("scenario", "lane_offset must be > 0"));
        }
        if self.path_loss_exponent <= 0.0 {
            return Err(Error::invalid("scenario", "path_loss_exponent must be > 0"));
        }
        if self.noise_floor >= self.los_power_at_1m {
            return Err(Error::invalid(
                "scenario",
                "noise_floor must be below los_power_at_1m",
            ));
        }
        self.antenna_gain.validate()?;
        for (i, s) in self.scatterers.iter().enumerate() {
            if s.position.iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid("scenario", format!("scatterer {i}: non-finite position")));
            }
            if !(s.reflection_loss.is_finite() && s.reflection_loss >= 0.0) {
                return Err(Error::invalid("scenario", format!("scatterer {i}: reflection_loss must be >= 0")));
            }
            if let Some((a, b)) = s.active_interval {
                if !(a.is_finite() && b.is_finite() && a <= b) {
                    return Err(Error::invalid("scenario", format!("scatterer {i}: bad active_interval")));
                }
            }
        }
        if self.num_snapshots() == 0 {
            return Err(Error::invalid("scenario", "duration shorter than one snapshot"));
        }
        self.grid().map(|_| ())
    }

    pub(crate) fn scatterer_label(index: usize) -> String {
        format!("scatterer {index}")
    }
}

/// Deterministic roadside clutter: parked cars and kerb objects close to the
/// road, poles and trees further out. Positions cover `x` in [-30, 30] m so
/// every single-bounce path fits in an 80 m delay window.
pub fn roadside_scatterers(count: usize, seed: u64) -> Vec<Scatterer> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut uniform = move |lo: f64, hi: f64| {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        lo + (hi - lo) * u
    };
    (0..count)
        .map(|i| {
            let x = uniform(-30.0, 30.0);
            // alternate sides of the road
            let (y, z, loss) = match i % 4 {
                // parked cars, near kerb
                0 => (uniform(-4.5, -3.0), uniform(0.5, 1.2), uniform(6.0, 12.0)),
                1 => (uniform(6.5, 8.0), uniform(0.5, 1.2), uniform(6.0, 12.0)),
                // signs, poles, trees
                2 => (uniform(-9.0, -6.0), uniform(2.0, 5.0), uniform(10.0, 18.0)),
                _ => (uniform(9.5, 12.5), uniform(2.0, 5.0), uniform(10.0, 18.0)),
            };
            Scatterer::new([x, y, z], loss)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_scenario_is_valid_and_sized() {
        let cfg = ScenarioConfig::default();
        cfg.validate().unwrap();
        assert_eq!(cfg.num_snapshots(), 32_000);
        let g = cfg.grid().unwrap();
        assert_eq!(g.num_delay_bins(), 547);
    }

    #[test]
    fn validation_catches_bad_fields() {
        let mut c = ScenarioConfig::default();
        c.duration = 0.0;
        assert!(c.validate().is_err());
        let mut c = ScenarioConfig::default();
        c.rx_speed = -1.0;
        assert!(c.validate().is_err());
        let mut c = ScenarioConfig::default();
        c.noise_floor = c.los_power_at_1m;
        assert!(c.validate().is_err());
        let mut c = ScenarioConfig::default();
        c.scatterers[0].reflection_loss = -3.0;
        assert!(c.validate().is_err());
        let mut c = ScenarioConfig::default();
        c.antenna_gain = AntennaGainModel::Beam { beamwidth_deg: 0.0, floor_db: 20.0 };
        assert!(c.validate().is_err());
    }

    #[test]
    fn beam_gain_is_parabolic_then_flat() {
        let g = AntennaGainModel::NARROW_30;
        assert_eq!(g.gain_db(0.0), 0.0);
        assert!((g.gain_db(15f64.to_radians()) + 3.0).abs() < 1e-12);
        assert_eq!(g.gain_db(80f64.to_radians()), -20.0);
        assert_eq!(AntennaGainModel::Isotropic.gain_db(1.0), 0.0);
        // wide beam loses only ~0.2 dB at 15 degrees
        assert!(AntennaGainModel::WIDE_130.gain_db(15f64.to_radians()) > -0.2);
    }

    #[test]
    fn scatterer_field_is_deterministic() {
        assert_eq!(roadside_scatterers(10, 3), roadside_scatterers(10, 3));
        assert_ne!(roadside_scatterers(10, 3), roadside_scatterers(10, 4));
    }
}
