use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::spread::rms_width;
use super::{AnalysisParams, Taper};
use crate::channel::{doppler_axis, AxisKind, CirMatrix, DelayDopplerSpectrum, MetricSeries, Quantity};
use crate::fft::FftPlan;
use crate::{math, par, Complex64, Error, Result};

fn taper_weights(taper: Taper, len: usize) -> Option<Vec<f64>> {
    match taper {
        Taper::Rectangular => None,
        Taper::Hann => Some(
            (0..len)
                .map(|n| 0.5 * (1.0 - math::cos(2.0 * core::f64::consts::PI * n as f64 / len as f64)))
                .collect(),
        ),
    }
}

/// Transforms `series` in place and writes `|X|^2` to `out` in centered
/// (negative-first) Doppler order.
fn centered_power(plan: &FftPlan, series: &mut [Complex64], weights: Option<&[f64]>, out: &mut [f64]) {
    if let Some(w) = weights {
        series.iter_mut().zip(w).for_each(|(z, &w)| *z *= w);
    }
    plan.forward(series);
    let len = series.len();
    let half = len / 2;
    for (j, o) in out.iter_mut().enumerate() {
        *o = series[(j + len - half) % len].norm_sqr();
    }
}

/// Delay-Doppler spectrum `S(tau, nu) = |DFT_t{h(t, tau)}|^2` over the whole record.
pub fn delay_doppler(h: &CirMatrix, taper: Taper) -> Result<DelayDopplerSpectrum> {
    let grid = *h.grid();
    let n = grid.num_snapshots();
    if n < 2 {
        return Err(Error::Insufficient(format!(
            "delay-Doppler spectrum needs at least 2 snapshots, got {n}"
        )));
    }
    let plan = FftPlan::new(n);
    let weights = taper_weights(taper, n);
    let rows = par::map_indexed(grid.num_delay_bins(), |bin| {
        let mut column = h.delay_column(bin);
        let mut out = vec![0.0; n];
        centered_power(&plan, &mut column, weights.as_deref(), &mut out);
        out
    });
    DelayDopplerSpectrum::new(grid, n, rows.concat())
}

/// Method 1: RMS Doppler spread `sigma_nu(tau)` of every delay row of a
/// full-record spectrum. Rows without power are excluded.
pub fn rms_doppler_spread_m1(s: &DelayDopplerSpectrum) -> Result<MetricSeries> {
    let grid = s.grid();
    let mut axis = Vec::new();
    let mut values = Vec::new();
    let mut excluded = Vec::new();
    for bin in 0..grid.num_delay_bins() {
        match rms_width(s.doppler_axis(), s.delay_row(bin)) {
            Some(v) => {
                axis.push(bin as f64 * grid.delay_bin());
                values.push(v);
            }
            None => excluded.push(bin),
        }
    }
    if values.is_empty() {
        return Err(Error::Insufficient(
            "every delay row of the spectrum has zero power".into(),
        ));
    }
    Ok(MetricSeries::new("rms_doppler_spread_m1", AxisKind::Delay, Quantity::DopplerSpread, axis, values)?
        .with_excluded(excluded))
}

/// Start snapshots of every full window.
pub fn window_starts(num_snapshots: usize, window: usize, step: usize) -> Vec<usize> {
    if window == 0 || step == 0 || window > num_snapshots {
        return Vec::new();
    }
    (0..=(num_snapshots - window) / step).map(|i| i * step).collect()
}

/// Method 2: sliding-window RMS Doppler spread.
///
/// For each window of `stft_window` snapshots (hop `stft_step`) the windowed
/// delay-Doppler spectrum is formed, `sigma_nu` is computed for every delay
/// row with power, and the row values are averaged. The result is stamped at
/// the window's center time. Windows with no power at all are excluded.
pub fn rms_doppler_spread_m2(h: &CirMatrix, params: &AnalysisParams) -> Result<MetricSeries> {
    let grid = *h.grid();
    let n = grid.num_snapshots();
    let window = params.stft_window;
    if window > n {
        return Err(Error::Insufficient(format!(
            "record has {n} snapshots, fewer than one {window}-snapshot window"
        )));
    }
    if params.stft_step == 0 || params.stft_step > window || window < 2 {
        return Err(Error::invalid(
            "analysis params",
            "need 2 <= stft_window and 0 < stft_step <= stft_window",
        ));
    }
    let starts = window_starts(n, window, params.stft_step);
    let plan = FftPlan::new(window);
    let weights = taper_weights(params.stft_taper, window);
    let axis = doppler_axis(window, grid.snapshot_interval());

    // Per delay bin: sigma_nu in every window (None = no power there).
    let per_bin: Vec<Vec<Option<f64>>> = par::map_indexed(grid.num_delay_bins(), |bin| {
        let column = h.delay_column(bin);
        let mut buf = vec![Complex64::new(0.0, 0.0); window];
        let mut power = vec![0.0; window];
        starts
            .iter()
            .map(|&s| {
                let seg = &column[s..s + window];
                if seg.iter().all(|z| z.norm_sqr() == 0.0) {
                    return None;
                }
                buf.copy_from_slice(seg);
                centered_power(&plan, &mut buf, weights.as_deref(), &mut power);
                rms_width(&axis, &power)
            })
            .collect()
    });

    let mut times = Vec::new();
    let mut values = Vec::new();
    let mut excluded = Vec::new();
    let center = (window as f64 - 1.0) / 2.0;
    for (w, &start) in starts.iter().enumerate() {
        let (sum, count) = per_bin
            .iter()
            .filter_map(|row| row[w])
            .fold((0.0, 0usize), |(s, c), v| (s + v, c + 1));
        if count == 0 {
            excluded.push(w);
            continue;
        }
        times.push((start as f64 + center) * grid.snapshot_interval());
        values.push(sum / count as f64);
    }
    Ok(MetricSeries::new("rms_doppler_spread_m2", AxisKind::Time, Quantity::DopplerSpread, times, values)?
        .with_excluded(excluded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::SamplingGrid;

    fn tone_record(n: usize, bins: usize, dt: f64, tones: &[(usize, f64, f64)]) -> CirMatrix {
        let grid = SamplingGrid::new(dt, 1e-9, n, bins, 60e9, 1e9).unwrap();
        let mut s = vec![Complex64::new(0.0, 0.0); n * bins];
        for t in 0..n {
            for &(bin, freq, amp) in tones {
                let arg = 2.0 * core::f64::consts::PI * freq * t as f64 * dt;
                s[t * bins + bin] += Complex64::new(arg.cos(), arg.sin()) * amp;
            }
        }
        CirMatrix::new(grid, s).unwrap()
    }

    #[test]
    fn on_bin_tone_lands_in_one_doppler_bin() {
        // 64 snapshots at 1 ms: 15.625 Hz bins; tone at +5 bins
        let h = tone_record(64, 2, 1e-3, &[(1, 5.0 * 15.625, 1.0)]);
        let s = delay_doppler(&h, Taper::Rectangular).unwrap();
        let row = s.delay_row(1);
        let peak = row.iter().cloned().fold(0.0, f64::max);
        let k = row.iter().position(|&v| v == peak).unwrap();
        assert!((s.doppler_axis()[k] - 78.125).abs() < 1e-9);
        assert!((peak - 64.0 * 64.0).abs() < 1e-6);
        let rest: f64 = row.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v).sum();
        assert!(rest < 1e-18 * peak);
        assert!(s.delay_row(0).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn constant_row_is_dc() {
        let h = tone_record(16, 1, 1e-3, &[(0, 0.0, 2.0)]);
        let s = delay_doppler(&h, Taper::Rectangular).unwrap();
        let zero = s.doppler_axis().iter().position(|&f| f == 0.0).unwrap();
        assert!((s.delay_row(0)[zero] - 16.0 * 16.0 * 4.0).abs() < 1e-9);
        assert!(s.delay_row(0).iter().enumerate().all(|(i, &v)| i == zero || v < 1e-20));
    }

    #[test]
    fn m1_two_tone_and_single_tone() {
        let h = tone_record(64, 2, 1e-3, &[(0, 5.0 * 15.625, 1.0), (1, 8.0 * 15.625, 1.0), (1, -8.0 * 15.625, 1.0)]);
        let m1 = rms_doppler_spread_m1(&delay_doppler(&h, Taper::Rectangular).unwrap()).unwrap();
        assert!(m1.values()[0].abs() < 1e-9);
        assert!((m1.values()[1] - 125.0).abs() < 1e-9 * 125.0);
    }

    #[test]
    fn m1_rejects_all_zero_spectrum() {
        let h = tone_record(8, 3, 1e-3, &[]);
        let s = delay_doppler(&h, Taper::Rectangular).unwrap();
        assert!(matches!(rms_doppler_spread_m1(&s), Err(Error::Insufficient(_))));
    }

    #[test]
    fn m1_excludes_empty_rows() {
        let h = tone_record(32, 3, 1e-3, &[(2, 0.0, 1.0)]);
        let m1 = rms_doppler_spread_m1(&delay_doppler(&h, Taper::Rectangular).unwrap()).unwrap();
        assert_eq!(m1.excluded(), [0, 1]);
        assert_eq!(m1.axis(), [2e-9]);
    }

    #[test]
    fn delay_doppler_needs_two_snapshots() {
        let h = tone_record(1, 2, 1e-3, &[(0, 0.0, 1.0)]);
        assert!(delay_doppler(&h, Taper::Rectangular).is_err());
    }

    #[test]
    fn windows_tile_the_record() {
        assert_eq!(window_starts(1000, 256, 64), (0..=11).map(|i| i * 64).collect::<Vec<_>>());
        assert_eq!(window_starts(256, 256, 64), [0]);
        assert!(window_starts(100, 256, 64).is_empty());
    }

    #[test]
    fn m2_static_channel_is_zero() {
        let h = tone_record(512, 4, 125e-6, &[(2, 0.0, 1e-2)]);
        let m2 = rms_doppler_spread_m2(&h, &AnalysisParams::default()).unwrap();
        assert_eq!(m2.len(), 5);
        assert!(m2.values().iter().all(|v| v.abs() < 1e-9));
        assert!((m2.axis()[0] - 127.5 * 125e-6).abs() < 1e-15);
    }

    #[test]
    fn m2_rejects_short_records() {
        let h = tone_record(100, 2, 125e-6, &[(0, 0.0, 1.0)]);
        assert!(matches!(
            rms_doppler_spread_m2(&h, &AnalysisParams::default()),
            Err(Error::Insufficient(_))
        ));
    }

    #[test]
    fn m2_full_window_equals_m1_mean() {
        let h = tone_record(200, 3, 1e-3, &[(0, 40.0, 1.0), (0, -95.0, 0.4), (2, 11.0, 0.3), (2, 180.0, 0.2)]);
        for taper in [Taper::Rectangular, Taper::Hann] {
            let params = AnalysisParams {
                stft_window: 200,
                stft_step: 7,
                stft_taper: taper,
                ..AnalysisParams::default()
            };
            let m2 = rms_doppler_spread_m2(&h, &params).unwrap();
            let m1 = rms_doppler_spread_m1(&delay_doppler(&h, taper).unwrap()).unwrap();
            assert_eq!(m2.len(), 1);
            assert!(((m2.values()[0] - m1.mean()) / m1.mean()).abs() < 1e-9);
        }
    }
}
