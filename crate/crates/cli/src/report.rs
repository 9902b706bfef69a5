//! Run summaries laid out like the paper's parameter table: a mean and a std
//! row for every metric.

use std::fmt::Write as _;

use mmv2v_core::analysis::{AnalysisReport, Taper};
use mmv2v_core::channel::{MetricSeries, SamplingGrid};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    fn of(series: &MetricSeries, scale: f64) -> Self {
        Self {
            mean: series.mean() * scale,
            std: series.std() * scale,
        }
    }
}

/// Sampling grid as recorded in a summary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub snapshot_interval_s: f64,
    pub delay_bin_s: f64,
    pub num_snapshots: usize,
    pub num_delay_bins: usize,
    pub carrier_frequency_hz: f64,
    pub bandwidth_hz: f64,
}

impl GridInfo {
    pub fn of(grid: &SamplingGrid) -> Self {
        Self {
            snapshot_interval_s: grid.snapshot_interval(),
            delay_bin_s: grid.delay_bin(),
            num_snapshots: grid.num_snapshots(),
            num_delay_bins: grid.num_delay_bins(),
            carrier_frequency_hz: grid.carrier_frequency(),
            bandwidth_hz: grid.bandwidth(),
        }
    }

    /// Same time/delay sampling; the carrier may differ.
    pub fn comparable(&self, other: &Self) -> bool {
        self.snapshot_interval_s == other.snapshot_interval_s
            && self.delay_bin_s == other.delay_bin_s
            && self.num_snapshots == other.num_snapshots
            && self.num_delay_bins == other.num_delay_bins
    }
}

/// Machine-readable result of one `analyze` run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub grid: GridInfo,
    pub delay_spread_ns: Stat,
    pub doppler_m1_khz: Stat,
    pub doppler_m2_khz: Stat,
    pub stationarity_s: Stat,
    pub stationarity_regions: usize,
    pub stationarity_resolution_s: f64,
    pub undefined_correlations: usize,
    pub stft_window: usize,
    pub stft_step: usize,
    pub stft_taper: String,
    pub unalignable_snapshots: usize,
}

impl Summary {
    pub fn of(report: &AnalysisReport) -> Self {
        let st = &report.stationarity;
        Self {
            grid: GridInfo::of(report.pdp.grid()),
            delay_spread_ns: Stat::of(&report.delay_spread, 1e9),
            doppler_m1_khz: Stat::of(&report.doppler_m1, 1e-3),
            doppler_m2_khz: Stat::of(&report.doppler_m2, 1e-3),
            stationarity_s: Stat {
                mean: st.mean,
                std: st.std,
            },
            stationarity_regions: st.region_lengths.len(),
            stationarity_resolution_s: st.resolution,
            undefined_correlations: st.undefined_correlations,
            stft_window: report.params.stft_window,
            stft_step: report.params.stft_step,
            stft_taper: match report.params.stft_taper {
                Taper::Rectangular => "rect",
                Taper::Hann => "hann",
            }
            .into(),
            unalignable_snapshots: report.unalignable.len(),
        }
    }

    fn rows(&self) -> [(&'static str, Stat); 4] {
        [
            ("RMS delay spread [ns]", self.delay_spread_ns),
            ("RMS Doppler spread M1 [kHz]", self.doppler_m1_khz),
            ("RMS Doppler spread M2 [kHz]", self.doppler_m2_khz),
            ("Stationarity region [s]", self.stationarity_s),
        ]
    }
}

/// Three significant digits, as in the paper's table.
pub fn sig3(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let digits = 2 - v.abs().log10().floor() as i32;
    format!("{:.*}", digits.max(0) as usize, v)
}

fn band_label(hz: f64) -> String {
    format!("{} GHz", hz / 1e9)
}

const LABEL_W: usize = 30;
const STAT_W: usize = 6;
const COL_W: usize = 12;

fn table(header: &[String], rows: &[(&str, Vec<Stat>)]) -> String {
    let mut s = String::new();
    write!(s, "{:<LABEL_W$}{:<STAT_W$}", "Parameter", "").unwrap();
    for h in header {
        write!(s, "{h:>COL_W$}").unwrap();
    }
    s.push('\n');
    for (label, stats) in rows {
        for (i, which) in ["mean", "std"].iter().enumerate() {
            let name = if i == 0 { *label } else { "" };
            write!(s, "{name:<LABEL_W$}{which:<STAT_W$}").unwrap();
            for st in stats {
                let v = if i == 0 { st.mean } else { st.std };
                write!(s, "{:>COL_W$}", sig3(v)).unwrap();
            }
            s.push('\n');
        }
    }
    s
}

/// Human-readable table for one run.
pub fn render_summary(summary: &Summary) -> String {
    let rows: Vec<(&str, Vec<Stat>)> = summary.rows().iter().map(|(l, st)| (*l, vec![*st])).collect();
    let mut s = table(&[band_label(summary.grid.carrier_frequency_hz)], &rows);
    writeln!(s).unwrap();
    writeln!(
        s,
        "M2 window {} snapshots, step {}, {} taper",
        summary.stft_window, summary.stft_step, summary.stft_taper
    )
    .unwrap();
    writeln!(
        s,
        "stationarity: {} regions, resolution {} ms, {} undefined correlations",
        summary.stationarity_regions,
        sig3(summary.stationarity_resolution_s * 1e3),
        summary.undefined_correlations
    )
    .unwrap();
    writeln!(s, "unalignable snapshots: {}", summary.unalignable_snapshots).unwrap();
    s
}

/// Paper values for the first measurement (cars passing at the marked point),
/// as `(metric label, 60 GHz, 80 GHz)`.
pub const PAPER_MEASUREMENT_1: [(&str, Stat, Stat); 4] = [
    ("RMS delay spread [ns]", Stat { mean: 18.7, std: 5.94 }, Stat { mean: 34.9, std: 18.2 }),
    ("RMS Doppler spread M1 [kHz]", Stat { mean: 1.83, std: 0.44 }, Stat { mean: 2.05, std: 0.45 }),
    ("RMS Doppler spread M2 [kHz]", Stat { mean: 1.65, std: 0.39 }, Stat { mean: 1.44, std: 0.63 }),
    ("Stationarity region [s]", Stat { mean: 0.51, std: 0.30 }, Stat { mean: 0.48, std: 0.23 }),
];

/// Ratios and the carrier scaling check between two runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub delay_spread_ratio: f64,
    pub doppler_m1_ratio: f64,
    pub doppler_m2_ratio: f64,
    pub stationarity_ratio: f64,
    /// `f_c(b) / f_c(a)`, the expected M1 ratio for identical geometry.
    pub expected_doppler_ratio: f64,
    /// Relative deviation of the M1 ratio from the expected one.
    pub doppler_scaling_deviation: f64,
}

impl Comparison {
    pub fn of(a: &Summary, b: &Summary) -> Self {
        let ratio = |x: f64, y: f64| y / x;
        let expected = b.grid.carrier_frequency_hz / a.grid.carrier_frequency_hz;
        let m1 = ratio(a.doppler_m1_khz.mean, b.doppler_m1_khz.mean);
        Self {
            delay_spread_ratio: ratio(a.delay_spread_ns.mean, b.delay_spread_ns.mean),
            doppler_m1_ratio: m1,
            doppler_m2_ratio: ratio(a.doppler_m2_khz.mean, b.doppler_m2_khz.mean),
            stationarity_ratio: ratio(a.stationarity_s.mean, b.stationarity_s.mean),
            expected_doppler_ratio: expected,
            doppler_scaling_deviation: (m1 - expected) / expected,
        }
    }
}

/// Side-by-side table of two runs, optionally with the paper's values.
pub fn render_comparison(a: &Summary, b: &Summary, paper_reference: bool) -> String {
    let cmp = Comparison::of(a, b);
    let mut header = vec![
        format!("A {}", band_label(a.grid.carrier_frequency_hz)),
        format!("B {}", band_label(b.grid.carrier_frequency_hz)),
    ];
    if paper_reference {
        header.push("paper 60 GHz".into());
        header.push("paper 80 GHz".into());
    }
    let rows: Vec<(&str, Vec<Stat>)> = a
        .rows()
        .iter()
        .zip(b.rows())
        .zip(PAPER_MEASUREMENT_1)
        .map(|(((label, sa), (_, sb)), (_, p60, p80))| {
            let mut v = vec![*sa, sb];
            if paper_reference {
                v.extend([p60, p80]);
            }
            (*label, v)
        })
        .collect();
    let mut s = table(&header, &rows);
    writeln!(s).unwrap();
    writeln!(s, "ratios B/A of the means:").unwrap();
    for (label, r) in [
        ("RMS delay spread", cmp.delay_spread_ratio),
        ("RMS Doppler spread M1", cmp.doppler_m1_ratio),
        ("RMS Doppler spread M2", cmp.doppler_m2_ratio),
        ("Stationarity region", cmp.stationarity_ratio),
    ] {
        writeln!(s, "  {label:<28}{r:.4}").unwrap();
    }
    writeln!(
        s,
        "Doppler scaling: M1 ratio {:.4}, carrier ratio {:.4}, deviation {:+.1}%",
        cmp.doppler_m1_ratio,
        cmp.expected_doppler_ratio,
        cmp.doppler_scaling_deviation * 100.0
    )
    .unwrap();
    if paper_reference {
        writeln!(
            s,
            "paper columns: field measurement 1, shown for context only; not an acceptance target"
        )
        .unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(fc: f64, m1: f64) -> Summary {
        let st = |m| Stat { mean: m, std: m / 4.0 };
        Summary {
            grid: GridInfo {
                snapshot_interval_s: 125e-6,
                delay_bin_s: 1.0 / 2.048e9,
                num_snapshots: 32000,
                num_delay_bins: 547,
                carrier_frequency_hz: fc,
                bandwidth_hz: 2.048e9,
            },
            delay_spread_ns: st(18.7),
            doppler_m1_khz: st(m1),
            doppler_m2_khz: st(0.9),
            stationarity_s: st(0.5),
            stationarity_regions: 8,
            stationarity_resolution_s: 6.25e-3,
            undefined_correlations: 0,
            stft_window: 256,
            stft_step: 64,
            stft_taper: "rect".into(),
            unalignable_snapshots: 0,
        }
    }

    #[test]
    fn three_significant_digits() {
        assert_eq!(sig3(18.7), "18.7");
        assert_eq!(sig3(5.944), "5.94");
        assert_eq!(sig3(0.00625), "0.00625");
        assert_eq!(sig3(1234.4), "1234");
        assert_eq!(sig3(0.0), "0");
    }

    #[test]
    fn summary_table_has_mean_and_std_rows() {
        let text = render_summary(&summary(60e9, 1.83));
        assert!(text.contains("60 GHz"));
        assert_eq!(text.lines().filter(|l| l.contains("mean")).count(), 4);
        assert_eq!(text.lines().filter(|l| l.contains("std")).count(), 4);
        assert!(text.contains("resolution 6.25 ms"));
    }

    #[test]
    fn identical_runs_compare_to_one() {
        let a = summary(60e9, 1.2);
        let c = Comparison::of(&a, &a);
        for r in [c.delay_spread_ratio, c.doppler_m1_ratio, c.doppler_m2_ratio, c.stationarity_ratio] {
            assert_eq!(r, 1.0);
        }
        assert_eq!(c.doppler_scaling_deviation, 0.0);
    }

    #[test]
    fn paper_columns_are_labelled_non_binding() {
        let text = render_comparison(&summary(60e9, 1.2), &summary(80e9, 1.6), true);
        assert!(text.contains("paper 60 GHz") && text.contains("not an acceptance target"));
        assert!(text.contains("1.83") && text.contains("2.05"));
        let plain = render_comparison(&summary(60e9, 1.2), &summary(80e9, 1.6), false);
        assert!(!plain.contains("paper"));
        assert!(plain.contains("carrier ratio 1.3333"));
    }

    #[test]
    fn grids_compare_without_carrier() {
        let a = summary(60e9, 1.0).grid;
        let mut b = summary(80e9, 1.0).grid;
        assert!(a.comparable(&b));
        b.num_snapshots = 100;
        assert!(!a.comparable(&b));
    }
}
