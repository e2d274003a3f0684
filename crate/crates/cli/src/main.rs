//! `uwb-toa`: sweeps, single trials, timing, and self-checks for the
//! two-step TOA estimator.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use toa_core::harness::{
    run_sweep, run_trial_with, selftest, sweep_to_csv, sweep_to_json, ExperimentConfig,
};
use toa_core::model::ChannelPreset;
use toa_core::{acquisition_time, ToaError};

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_SELFTEST: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "uwb-toa",
    version,
    about = "Two-step IR-UWB time-of-arrival experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an RMSE-versus-SNR sweep.
    Sweep(SweepArgs),
    /// Run one seeded trial and dump every diagnostic.
    Trial(TrialArgs),
    /// Report the acquisition time of a configuration.
    Timing(TimingArgs),
    /// Run the built-in numerical self-checks.
    Selftest(SelftestArgs),
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Experiment document (JSON). Missing keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Channel preset, overriding the document's.
    #[arg(long, value_parser = parse_preset)]
    preset: Option<ChannelPreset>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Comma-separated SNRs in dB.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    snr: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct TrialArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// SNR in dB; defaults to the first SNR in the document.
    #[arg(long, allow_hyphen_values = true)]
    snr: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TimingArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(Args, Debug)]
struct SelftestArgs {
    #[arg(long, value_enum, default_value_t = TextFormat::Text)]
    format: TextFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TextFormat {
    Text,
    Json,
}

fn parse_preset(s: &str) -> Result<ChannelPreset, String> {
    ChannelPreset::parse(s).ok_or_else(|| {
        let names: Vec<_> = ChannelPreset::ALL.iter().map(|p| p.name()).collect();
        format!(
            "unknown preset '{s}' (expected one of: {})",
            names.join(", ")
        )
    })
}

enum Failure {
    Config(String),
    Selftest,
}

impl From<ToaError> for Failure {
    fn from(e: ToaError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(Failure::Selftest) => ExitCode::from(EXIT_SELFTEST),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sweep(args) => sweep(args),
        Command::Trial(args) => trial(args),
        Command::Timing(args) => timing(args),
        Command::Selftest(args) => self_checks(args),
    }
}

fn load(args: &ConfigArgs) -> Result<ExperimentConfig, Failure> {
    let mut exp = match &args.config {
        Some(path) => ExperimentConfig::load(path)
            .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?,
        None => ExperimentConfig::default(),
    };
    if let Some(preset) = args.preset {
        exp.channel.preset = Some(preset);
    }
    Ok(exp)
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut exp = load(&args.config)?;
    if let Some(snr) = args.snr {
        exp.experiment.snr_db = snr;
    }
    if let Some(trials) = args.trials {
        exp.experiment.trials = trials;
    }
    if let Some(seed) = args.seed {
        exp.experiment.seed = seed;
    }
    exp.validate()?;
    let model = exp.channel.model()?;
    let e = &exp.experiment;
    let result = run_sweep(&exp.system, &model, &e.snr_db, e.trials, e.seed).result;
    let text = match args.output.format {
        Format::Csv => sweep_to_csv(&result),
        Format::Json => sweep_to_json(&result),
    };
    emit(args.output.out.as_deref(), &text)
}

fn trial(args: TrialArgs) -> Result<(), Failure> {
    let mut exp = load(&args.config)?;
    if let Some(snr) = args.snr {
        exp.experiment.snr_db = vec![snr];
    }
    if let Some(seed) = args.seed {
        exp.experiment.seed = seed;
    }
    exp.validate()?;
    let model = exp.channel.model()?;
    let snr = exp.experiment.snr_db[0];
    let record = run_trial_with(&exp.system, &model, snr, exp.experiment.seed);
    emit(args.out.as_deref(), &to_json(&record))
}

#[derive(Serialize)]
struct TimingReport {
    acquisition_time_us: f64,
    frame_duration_ns: f64,
}

fn timing(args: TimingArgs) -> Result<(), Failure> {
    let exp = load(&ConfigArgs {
        config: args.config,
        preset: None,
    })?;
    exp.system.validate()?;
    let report = TimingReport {
        acquisition_time_us: acquisition_time(&exp.system),
        frame_duration_ns: exp.system.frame_duration_ns(),
    };
    match args.format {
        TextFormat::Text => println!("acquisition time: {} us", report.acquisition_time_us),
        TextFormat::Json => print!("{}", to_json(&report)),
    }
    Ok(())
}

fn self_checks(args: SelftestArgs) -> Result<(), Failure> {
    let checks = selftest::run_all();
    match args.format {
        TextFormat::Text => {
            for c in &checks {
                let verdict = if c.passed { "PASS" } else { "FAIL" };
                println!("{verdict} {:<28} {}", c.name, c.detail);
            }
        }
        TextFormat::Json => print!("{}", to_json(&checks)),
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::Selftest)
    }
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn emit(out: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => output::write_atomic(path, text.as_bytes())
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
