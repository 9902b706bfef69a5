use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use mmv2v::commands::{self, CliError, RunManifest};
use mmv2v_core::analysis::{AnalysisParams, StationarityMode, Taper};

/// Synthesize and characterize time-varying V2V millimeter-wave channels.
///
/// Exit codes: 0 ok, 1 other failure, 2 bad config or flags, 3 Doppler
/// aliasing, 4 unreadable input, 5 mismatched grids. The run manifest goes to
/// stdout as JSON; diagnostics go to stderr.
#[derive(Parser)]
#[command(name = "mmv2v", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate a scenario file into a binary CIR file.
    Synth {
        config: PathBuf,
        out: PathBuf,
        /// Override the scenario's rng_seed.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the characterization pipeline on a CIR file.
    Analyze {
        input: PathBuf,
        out_dir: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Compare two analyze output directories.
    Compare {
        run_a: PathBuf,
        run_b: PathBuf,
        /// Also print the paper's field values (context only, not a target).
        #[arg(long)]
        paper_reference: bool,
        /// Write the comparison table to this file instead of stderr.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TaperArg {
    Rect,
    Hann,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Anchor,
    Consecutive,
}

#[derive(clap::Args)]
struct ParamArgs {
    /// Noise threshold in dBm, or `none` to keep everything.
    #[arg(long, default_value = "-70", value_parser = parse_threshold, allow_hyphen_values = true)]
    noise_threshold: Threshold,
    /// Skip LOS alignment.
    #[arg(long)]
    no_align: bool,
    /// Method 2 window length, snapshots.
    #[arg(long, default_value_t = 256)]
    stft_window: usize,
    /// Method 2 window hop, snapshots.
    #[arg(long, default_value_t = 64)]
    stft_step: usize,
    #[arg(long, value_enum, default_value = "rect")]
    taper: TaperArg,
    /// Compare every n-th PDP for stationarity.
    #[arg(long, default_value_t = 50)]
    stationarity_step: usize,
    /// Correlation below which a new stationarity region starts.
    #[arg(long, default_value_t = 0.9, allow_hyphen_values = true)]
    stationarity_threshold: f64,
    #[arg(long, value_enum, default_value = "anchor")]
    stationarity_mode: ModeArg,
    /// Moving-average length for the trend series, samples.
    #[arg(long, default_value_t = 101)]
    trend_window: usize,
}

/// A dBm threshold, or none.
#[derive(Clone, Copy)]
struct Threshold(Option<f64>);

fn parse_threshold(s: &str) -> Result<Threshold, String> {
    if s == "none" {
        return Ok(Threshold(None));
    }
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number or `none`"))?;
    if !v.is_finite() {
        return Err("threshold must be finite".into());
    }
    Ok(Threshold(Some(v)))
}

impl ParamArgs {
    fn to_params(&self) -> AnalysisParams {
        AnalysisParams {
            noise_threshold: self.noise_threshold.0,
            align_los: !self.no_align,
            stft_window: self.stft_window,
            stft_step: self.stft_step,
            stft_taper: match self.taper {
                TaperArg::Rect => Taper::Rectangular,
                TaperArg::Hann => Taper::Hann,
            },
            stationarity_step: self.stationarity_step,
            stationarity_threshold: self.stationarity_threshold,
            stationarity_mode: match self.stationarity_mode {
                ModeArg::Anchor => StationarityMode::Anchor,
                ModeArg::Consecutive => StationarityMode::Consecutive,
            },
            trend_window: self.trend_window,
            ..AnalysisParams::default()
        }
    }
}

fn run(cli: Cli) -> Result<RunManifest, CliError> {
    match cli.command {
        Command::Synth { config, out, seed } => commands::synth(&config, &out, seed),
        Command::Analyze {
            input,
            out_dir,
            params,
        } => commands::analyze_file(&input, &out_dir, &params.to_params()),
        Command::Compare {
            run_a,
            run_b,
            paper_reference,
            out,
        } => {
            let (mut manifest, table) = commands::compare(&run_a, &run_b, paper_reference)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, &table)
                        .map_err(|e| CliError::Output(mmv2v::io::IoError::Os { path: path.clone(), source: e }))?;
                    manifest.outputs.push(path.display().to_string());
                }
                None => eprint!("{table}"),
            }
            Ok(manifest)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(manifest) => {
            let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
            // a closed stdout (e.g. `| head`) is not a failure of the command
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
