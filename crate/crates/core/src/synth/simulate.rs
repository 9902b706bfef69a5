use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::geometry::{components_at, PathLabel};
use super::{DelayKernel, ScenarioConfig};
use crate::channel::{db_to_power, CirMatrix};
use crate::{math, par, Complex64, Error, Result};

use core::f64::consts::PI;

/// Synthesizes the CIR record of a scenario.
///
/// Every path present at `t_n = n dt` contributes `a e^{j phi}` spread over
/// the delay bins by the band-limited kernel; circular complex Gaussian
/// noise of mean power `noise_floor` is then added per bin. Noise is drawn
/// from a ChaCha stream selected by the snapshot index, so the output does
/// not depend on how snapshots are scheduled across threads.
pub fn simulate(cfg: &ScenarioConfig) -> Result<CirMatrix> {
    cfg.validate()?;
    check_aliasing(cfg)?;
    let grid = cfg.grid()?;
    let width = grid.num_delay_bins();
    let dt = grid.snapshot_interval();
    let delay_bin = grid.delay_bin();
    let phasors = half_turn_table(width);
    let noise_sigma = if cfg.noise_enabled {
        Some(math::sqrt(db_to_power(cfg.noise_floor) / 2.0))
    } else {
        None
    };

    let mut samples = vec![Complex64::new(0.0, 0.0); grid.num_snapshots() * width];
    par::for_each_row(&mut samples, width, |n, row| {
        let t = n as f64 * dt;
        for path in components_at(cfg, t) {
            let coeff = math::cis(path.phase) * path.amplitude;
            let x = path.delay / delay_bin;
            match cfg.delay_kernel {
                DelayKernel::Dirichlet => accumulate_dirichlet(row, x, coeff, &phasors),
                DelayKernel::Hann => {
                    accumulate_dirichlet(row, x, coeff, &phasors);
                    accumulate_dirichlet(row, x + 1.0, coeff * 0.5, &phasors);
                    accumulate_dirichlet(row, x - 1.0, coeff * 0.5, &phasors);
                }
            }
        }
        if let Some(sigma) = noise_sigma {
            add_noise(row, cfg.rng_seed, n as u64, sigma);
        }
    });
    CirMatrix::new(grid, samples)
}

/// Rejects scenarios where any path's Doppler shift reaches `1 / (2 dt)`.
pub fn check_aliasing(cfg: &ScenarioConfig) -> Result<()> {
    let grid = cfg.grid()?;
    let limit = grid.max_unambiguous_doppler();
    let mut worst: Option<(PathLabel, f64)> = None;
    for n in 0..grid.num_snapshots() {
        let t = n as f64 * grid.snapshot_interval();
        for p in components_at(cfg, t) {
            if worst.is_none_or(|(_, d)| math::abs(p.doppler) > math::abs(d)) {
                worst = Some((p.label, p.doppler));
            }
        }
    }
    match worst {
        Some((label, doppler)) if math::abs(doppler) >= limit => Err(Error::Aliasing {
            path: match label {
                PathLabel::Los => "LOS".into(),
                PathLabel::Scatterer(i) => ScenarioConfig::scatterer_label(i),
            },
            doppler_hz: doppler,
            limit_hz: limit,
        }),
        _ => Ok(()),
    }
}

/// `e^{j pi m / n}` for `m = 0..n`.
fn half_turn_table(n: usize) -> Vec<Complex64> {
    (0..n).map(|m| math::cis(PI * m as f64 / n as f64)).collect()
}

/// Periodic sinc `sin(pi u) / (n sin(pi u / n))` at offset `u` already wrapped to `[-n/2, n/2)`.
fn dirichlet(u: f64, n: usize) -> f64 {
    if u == 0.0 {
        return 1.0;
    }
    math::sin(PI * u) / (n as f64 * math::sin(PI * u / n as f64))
}

fn wrap_offset(u: f64, n: usize) -> f64 {
    let nf = n as f64;
    if u < -nf / 2.0 {
        u + nf
    } else if u >= nf / 2.0 {
        u - nf
    } else {
        u
    }
}

/// Adds `coeff * D(m - x)` to every bin `m` of `row`.
///
/// The numerator `sin(pi (m - x))` only changes sign from bin to bin and the
/// denominator is expanded with the angle-sum identity against a phasor
/// table, so each path costs one `sincos` instead of one `sin` per bin. The
/// two bins bracketing `x` are evaluated directly to avoid cancellation.
fn accumulate_dirichlet(row: &mut [Complex64], x: f64, coeff: Complex64, phasors: &[Complex64]) {
    let n = row.len();
    let nf = n as f64;
    let x = x - math::floor(x / nf) * nf;
    let base = math::floor(x);
    let frac = x - base;
    let i0 = (base as usize).min(n - 1);
    if frac == 0.0 || n == 1 {
        row[i0] += coeff;
        return;
    }
    let i1 = (i0 + 1) % n;
    let sign_i0 = if i0 % 2 == 0 { 1.0 } else { -1.0 };
    let sin_pi_x = sign_i0 * math::sin(PI * frac);
    let (s0, c0) = math::sin_cos(-PI * x / nf);
    let even = n % 2 == 0;
    for (m, (out, ph)) in row.iter_mut().zip(phasors).enumerate() {
        let u = m as f64 - x;
        let k = if m == i0 || m == i1 {
            dirichlet(wrap_offset(u, n), n)
        } else {
            let alt = if m % 2 == 0 { 1.0 } else { -1.0 };
            let num = -alt * sin_pi_x;
            let den = nf * (s0 * ph.re + c0 * ph.im);
            let k = num / den;
            if even && (u < -nf / 2.0 || u >= nf / 2.0) {
                -k
            } else {
                k
            }
        };
        *out += coeff * k;
    }
}

fn add_noise(row: &mut [Complex64], seed: u64, snapshot: u64, sigma: f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(snapshot);
    let mut unit = || ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
    for z in row.iter_mut() {
        let (u1, u2) = (unit(), unit());
        let r = math::sqrt(-2.0 * math::ln(u1)) * sigma;
        let (s, c) = math::sin_cos(2.0 * PI * u2);
        *z += Complex64::new(r * c, r * s);
    }
}
