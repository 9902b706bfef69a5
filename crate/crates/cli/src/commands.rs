//! The `synth`, `analyze` and `compare` commands, independent of argument parsing.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mmv2v_core::analysis::{analyze, AnalysisParams, AnalysisReport, StationarityMode, Taper};
use mmv2v_core::channel::PdpMatrix;
use mmv2v_core::synth::simulate;
use mmv2v_core::Error as CoreError;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{load_config, ConfigError};
use crate::io::{export_grid, export_metrics, read_cir, write_cir, IoError};
use crate::report::{render_comparison, render_summary, Comparison, Summary};

/// Most time columns an exported heatmap may have.
pub const MAX_HEATMAP_COLUMNS: usize = 2000;

pub const PDP_HEATMAP: &str = "pdp_heatmap.csv";
pub const DELAY_SPREAD: &str = "delay_spread.csv";
pub const DELAY_DOPPLER: &str = "delay_doppler.csv";
pub const DOPPLER_M1: &str = "doppler_m1.csv";
pub const DOPPLER_M2: &str = "doppler_m2.csv";
pub const STATIONARITY: &str = "stationarity.csv";
pub const SUMMARY_TXT: &str = "summary.txt";
pub const SUMMARY_JSON: &str = "summary.json";

/// Everything `analyze` writes, in write order.
pub const ANALYZE_OUTPUTS: [&str; 8] = [
    PDP_HEATMAP,
    DELAY_SPREAD,
    DELAY_DOPPLER,
    DOPPLER_M1,
    DOPPLER_M2,
    STATIONARITY,
    SUMMARY_TXT,
    SUMMARY_JSON,
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Aliasing(String),
    #[error("cannot read input: {0}")]
    Input(IoError),
    #[error("grids differ: {0}")]
    GridMismatch(String),
    #[error("cannot write output: {0}")]
    Output(IoError),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    /// 2 bad config or flags, 3 aliasing, 4 unreadable input, 5 mismatched
    /// grids, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) => 2,
            CliError::Aliasing(_) => 3,
            CliError::Input(_) => 4,
            CliError::GridMismatch(_) => 5,
            CliError::Output(_) | CliError::Failed(_) => 1,
        }
    }

    fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::Aliasing { .. } => CliError::Aliasing(e.to_string()),
            CoreError::Invalid { .. } => CliError::Usage(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StageTiming {
    pub stage: &'static str,
    pub seconds: f64,
}

/// What a command did; printed as JSON on stdout.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: Option<String>,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub parameters: Value,
    pub result: Value,
    pub timings: Vec<StageTiming>,
}

impl RunManifest {
    fn new(command: &'static str) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            parameters: Value::Null,
            result: Value::Null,
            timings: Vec::new(),
        }
    }

    fn time<T>(&mut self, stage: &'static str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push(StageTiming {
            stage,
            seconds: start.elapsed().as_secs_f64(),
        });
        out
    }
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

/// Simulates the scenario in `config_path` and writes the CIR to `out_path`.
pub fn synth(config_path: &Path, out_path: &Path, seed: Option<u64>) -> Result<RunManifest, CliError> {
    let mut m = RunManifest::new("synth");
    m.config = Some(display(config_path));
    let mut cfg = m.time("load_config", || load_config(config_path))?;
    if let Some(seed) = seed {
        cfg.rng_seed = seed;
    }
    let h = m.time("simulate", || simulate(&cfg)).map_err(CliError::from_core)?;
    m.time("write_cir", || write_cir(out_path, &h)).map_err(CliError::Output)?;
    m.outputs.push(display(out_path));
    m.parameters = json!({
        "carrier_frequency_hz": cfg.carrier_frequency,
        "rng_seed": cfg.rng_seed,
        "num_snapshots": h.grid().num_snapshots(),
        "num_delay_bins": h.grid().num_delay_bins(),
        "noise_enabled": cfg.noise_enabled,
    });
    Ok(m)
}

fn params_json(p: &AnalysisParams) -> Value {
    json!({
        "noise_threshold_dbm": p.noise_threshold,
        "align_los": p.align_los,
        "stft_window": p.stft_window,
        "stft_step": p.stft_step,
        "stft_taper": match p.stft_taper { Taper::Rectangular => "rect", Taper::Hann => "hann" },
        "stationarity_step": p.stationarity_step,
        "stationarity_threshold": p.stationarity_threshold,
        "stationarity_mode": match p.stationarity_mode {
            StationarityMode::Anchor => "anchor",
            StationarityMode::Consecutive => "consecutive",
        },
        "trend_window": p.trend_window,
    })
}

/// Max-hold decimation of `rows x cols` data (row-major) to at most
/// `max_cols` columns. Returns the `[start, end)` column groups and the result.
pub fn decimate_max_hold(data: &[f64], cols: usize, max_cols: usize) -> (Vec<(usize, usize)>, Vec<f64>) {
    let out_cols = cols.min(max_cols).max(1);
    let bounds: Vec<(usize, usize)> = (0..out_cols)
        .map(|j| (j * cols / out_cols, (j + 1) * cols / out_cols))
        .collect();
    let mut out = Vec::with_capacity(data.len() / cols.max(1) * out_cols);
    for row in data.chunks_exact(cols) {
        for &(a, b) in &bounds {
            out.push(row[a..b].iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        }
    }
    (bounds, out)
}

fn group_centers(axis: &[f64], bounds: &[(usize, usize)]) -> Vec<f64> {
    bounds.iter().map(|&(a, b)| 0.5 * (axis[a] + axis[b - 1])).collect()
}

/// PDP transposed to delay rows, so time runs along the columns.
fn pdp_by_delay(p: &PdpMatrix) -> Vec<f64> {
    let g = p.grid();
    let (n, bins) = (g.num_snapshots(), g.num_delay_bins());
    let mut out = vec![0.0; n * bins];
    for t in 0..n {
        for (b, &v) in p.snapshot(t).iter().enumerate() {
            out[b * n + t] = v;
        }
    }
    out
}

/// Writes every analysis artifact into `dir` and returns the file paths.
pub fn write_analysis(report: &AnalysisReport, dir: &Path) -> Result<Vec<PathBuf>, IoError> {
    std::fs::create_dir_all(dir).map_err(|e| IoError::io(dir, e))?;
    let grid = report.pdp.grid();
    let delay_ns: Vec<f64> = grid.delay_axis().iter().map(|d| d * 1e9).collect();
    let path = |name: &str| dir.join(name);

    let (bounds, pdp) = decimate_max_hold(&pdp_by_delay(&report.pdp), grid.num_snapshots(), MAX_HEATMAP_COLUMNS);
    export_grid(&path(PDP_HEATMAP), "delay_ns\\time_s", &delay_ns, &group_centers(&grid.time_axis(), &bounds), &pdp)?;

    export_metrics(&[&report.delay_spread, &report.delay_spread_trend], &path(DELAY_SPREAD))?;

    let s = &report.spectrum;
    let (bounds, dd) = decimate_max_hold(s.power(), s.transform_len(), MAX_HEATMAP_COLUMNS);
    export_grid(&path(DELAY_DOPPLER), "delay_ns\\doppler_hz", &delay_ns, &group_centers(s.doppler_axis(), &bounds), &dd)?;

    export_metrics(&[&report.doppler_m1], &path(DOPPLER_M1))?;
    export_metrics(&[&report.doppler_m2, &report.doppler_m2_trend], &path(DOPPLER_M2))?;

    let st = &report.stationarity;
    let mut text = String::from("region,start_snapshot,start_s,length_s\n");
    for (i, (&b, &len)) in st.boundaries.iter().zip(&st.region_lengths).enumerate() {
        writeln!(text, "{i},{b},{:e},{len:e}", b as f64 * grid.snapshot_interval()).unwrap();
    }
    writeln!(text, "# mean_s,{:e}", st.mean).unwrap();
    writeln!(text, "# std_s,{:e}", st.std).unwrap();
    writeln!(text, "# resolution_s,{:e}", st.resolution).unwrap();
    writeln!(text, "# undefined_correlations,{}", st.undefined_correlations).unwrap();
    write_text(&path(STATIONARITY), &text)?;

    let summary = Summary::of(report);
    write_text(&path(SUMMARY_TXT), &render_summary(&summary))?;
    let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    write_text(&path(SUMMARY_JSON), &json)?;

    Ok(ANALYZE_OUTPUTS.iter().map(|n| path(n)).collect())
}

fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|e| IoError::io(path, e))
}

/// Runs the analysis pipeline on a CIR file and writes the artifacts to `out_dir`.
pub fn analyze_file(cir_path: &Path, out_dir: &Path, params: &AnalysisParams) -> Result<RunManifest, CliError> {
    let mut m = RunManifest::new("analyze");
    m.inputs.push(display(cir_path));
    m.parameters = params_json(params);
    let h = m.time("read_cir", || read_cir(cir_path)).map_err(CliError::Input)?;
    params
        .validate(h.grid().num_snapshots())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let report = m.time("analyze", || analyze(&h, params)).map_err(CliError::from_core)?;
    drop(h);
    let outputs = m.time("export", || write_analysis(&report, out_dir)).map_err(CliError::Output)?;
    m.outputs = outputs.iter().map(|p| display(p)).collect();
    m.result = serde_json::to_value(Summary::of(&report)).expect("summary serializes");
    Ok(m)
}

fn load_summary(dir: &Path) -> Result<Summary, CliError> {
    let path = dir.join(SUMMARY_JSON);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::Input(IoError::io(&path, e)))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Input(IoError::Parse {
            path: path.clone(),
            line: e.line(),
            reason: e.to_string(),
        })
    })
}

/// Compares two `analyze` output directories. Returns the manifest and the
/// rendered side-by-side table.
pub fn compare(a: &Path, b: &Path, paper_reference: bool) -> Result<(RunManifest, String), CliError> {
    let mut m = RunManifest::new("compare");
    m.inputs = vec![display(a), display(b)];
    let (sa, sb) = m.time("load", || Ok::<_, CliError>((load_summary(a)?, load_summary(b)?)))?;
    if !sa.grid.comparable(&sb.grid) {
        return Err(CliError::GridMismatch(format!(
            "{} has {} x {} at {} s / {} s, {} has {} x {} at {} s / {} s",
            a.display(),
            sa.grid.num_snapshots,
            sa.grid.num_delay_bins,
            sa.grid.snapshot_interval_s,
            sa.grid.delay_bin_s,
            b.display(),
            sb.grid.num_snapshots,
            sb.grid.num_delay_bins,
            sb.grid.snapshot_interval_s,
            sb.grid.delay_bin_s,
        )));
    }
    m.parameters = json!({ "paper_reference": paper_reference });
    m.result = serde_json::to_value(Comparison::of(&sa, &sb)).expect("comparison serializes");
    Ok((m, render_comparison(&sa, &sb, paper_reference)))
}
