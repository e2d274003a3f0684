//! Monte Carlo driver, acquisition-time model, configuration documents,
//! result reporting, and the built-in self test.

mod config;
mod report;
pub mod selftest;
mod stats;
mod sweep;
mod timing;

pub use config::{ChannelSection, ExperimentConfig, ExperimentSection};
pub use report::{read_sweep_csv, sweep_to_csv, sweep_to_json, CSV_HEADER};
pub use stats::{bootstrap_rmse_ci, rmse};
pub use sweep::{
    run_sweep, run_trial, run_trial_with, snr_sweep, SweepOutcome, SweepResult, SweepRow,
    TrialDiagnostics, TrialRecord, TrialResult,
};
pub use timing::acquisition_time;
