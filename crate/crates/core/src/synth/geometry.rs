use alloc::format;
use alloc::vec::Vec;

use super::{ScenarioConfig, Scatterer};
use crate::channel::db_to_power;
use crate::{math, Error, Result, SPEED_OF_LIGHT};

/// Which propagation path a component belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathLabel {
    Los,
    /// Index into [`ScenarioConfig::scatterers`].
    Scatterer(usize),
}

/// Delay, Doppler and amplitude of one path at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    /// seconds
    pub delay: f64,
    /// Hz; positive while the path is shortening.
    pub doppler: f64,
    /// `sqrt(mW)`
    pub amplitude: f64,
}

/// One multipath component `a_l e^{j phi_l} delta(tau - tau_l)` evaluated at a time instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipathComponent {
    pub label: PathLabel,
    /// Amplitude `a_l(t)`, `sqrt(mW)`.
    pub amplitude: f64,
    /// Phase `phi_l(t) = -2 pi f_c tau_l(t)` wrapped to `(-pi, pi]`.
    pub phase: f64,
    /// Delay `tau_l(t)`, seconds.
    pub delay: f64,
    /// Doppler shift, Hz.
    pub doppler: f64,
}

#[derive(Debug, Clone, Copy)]
struct Kinematics {
    pos: [f64; 3],
    vel: [f64; 3],
}

fn tx_state(cfg: &ScenarioConfig, t: f64) -> Kinematics {
    let dt = t - cfg.passing_time;
    Kinematics {
        pos: [cfg.tx_speed * dt, 0.0, cfg.antenna_height],
        vel: [cfg.tx_speed, 0.0, 0.0],
    }
}

fn rx_state(cfg: &ScenarioConfig, t: f64) -> Kinematics {
    let dt = t - cfg.passing_time;
    Kinematics {
        pos: [-cfg.rx_speed * dt, cfg.lane_offset, cfg.antenna_height],
        vel: [-cfg.rx_speed, 0.0, 0.0],
    }
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    math::sqrt(dot(a, a))
}

/// Elevation of `to` seen from `from`, radians.
fn elevation(from: [f64; 3], to: [f64; 3]) -> f64 {
    let d = sub(to, from);
    math::atan2(d[2], math::hypot(d[0], d[1]))
}

/// Received power in mW for a path of `length` meters with `extra_loss_db`.
fn path_power(cfg: &ScenarioConfig, length: f64, extra_loss_db: f64) -> f64 {
    let db = cfg.los_power_at_1m - 10.0 * cfg.path_loss_exponent * math::log10(length) - extra_loss_db;
    db_to_power(db)
}

/// Delay, Doppler and amplitude of the LOS path (`scatterer = None`) or a
/// single-bounce path via `scatterer` at time `t`.
///
/// Doppler is `-(f_c / c) dL/dt` with `L` the path length, so an approaching
/// path has a positive shift.
pub fn path_geometry(
    cfg: &ScenarioConfig,
    scatterer: Option<&Scatterer>,
    t: f64,
) -> Result<PathGeometry> {
    if !(t >= 0.0 && t <= cfg.duration) {
        return Err(Error::invalid(
            "time",
            format!("t = {t} s outside the scenario [0, {}] s", cfg.duration),
        ));
    }
    Ok(geometry_unchecked(cfg, scatterer, t))
}

fn geometry_unchecked(cfg: &ScenarioConfig, scatterer: Option<&Scatterer>, t: f64) -> PathGeometry {
    let tx = tx_state(cfg, t);
    let rx = rx_state(cfg, t);
    let k = cfg.carrier_frequency / SPEED_OF_LIGHT;
    match scatterer {
        None => {
            let d = sub(rx.pos, tx.pos);
            let len = norm(d);
            // dL/dt = (rx - tx) . (v_rx - v_tx) / L
            let rate = dot(d, sub(rx.vel, tx.vel)) / len;
            let gain = cfg.antenna_gain.gain_db(elevation(tx.pos, rx.pos))
                + cfg.antenna_gain.gain_db(elevation(rx.pos, tx.pos));
            PathGeometry {
                delay: len / SPEED_OF_LIGHT,
                doppler: -k * rate,
                amplitude: math::sqrt(path_power(cfg, len, -gain)),
            }
        }
        Some(s) => {
            let to_tx = sub(tx.pos, s.position);
            let to_rx = sub(rx.pos, s.position);
            let (l1, l2) = (norm(to_tx), norm(to_rx));
            let len = l1 + l2;
            let rate = dot(to_tx, tx.vel) / l1 + dot(to_rx, rx.vel) / l2;
            let gain = cfg.antenna_gain.gain_db(elevation(tx.pos, s.position))
                + cfg.antenna_gain.gain_db(elevation(rx.pos, s.position));
            PathGeometry {
                delay: len / SPEED_OF_LIGHT,
                doppler: -k * rate,
                amplitude: math::sqrt(path_power(cfg, len, s.reflection_loss - gain)),
            }
        }
    }
}

/// `-2 pi f_c tau` reduced to `(-pi, pi]` without losing the fractional cycle.
pub(crate) fn carrier_phase(carrier_frequency: f64, delay: f64) -> f64 {
    let cycles = carrier_frequency * delay;
    let mut frac = cycles - math::floor(cycles);
    if frac > 0.5 {
        frac -= 1.0;
    }
    -2.0 * core::f64::consts::PI * frac
}

/// All components present at `t`: the LOS path first, then every scatterer
/// whose `active_interval` contains `t`, in configuration order.
pub fn list_paths(cfg: &ScenarioConfig, t: f64) -> Result<Vec<MultipathComponent>> {
    path_geometry(cfg, None, t)?;
    Ok(components_at(cfg, t))
}

pub(crate) fn components_at(cfg: &ScenarioConfig, t: f64) -> Vec<MultipathComponent> {
    let mut out = Vec::with_capacity(cfg.scatterers.len() + 1);
    let make = |label, g: PathGeometry| MultipathComponent {
        label,
        amplitude: g.amplitude,
        phase: carrier_phase(cfg.carrier_frequency, g.delay),
        delay: g.delay,
        doppler: g.doppler,
    };
    out.push(make(PathLabel::Los, geometry_unchecked(cfg, None, t)));
    for (i, s) in cfg.scatterers.iter().enumerate() {
        if s.active_at(t) {
            out.push(make(PathLabel::Scatterer(i), geometry_unchecked(cfg, Some(s), t)));
        }
    }
    out
}
