//! Two-step time-of-arrival estimation for impulse-radio UWB.
//!
//! A coarse step picks the frame block with the most received energy; a fine
//! step runs a generalized log-likelihood-ratio change detector over low-rate
//! correlator outputs, with the tap statistics fitted per hypothesis by the
//! method of moments. The crate also synthesizes the observations from a
//! sparse Nakagami-m multipath model and drives Monte Carlo RMSE sweeps.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimator;
pub mod frontend;
pub mod harness;
pub mod model;
pub mod rng;
pub mod specfun;

pub use error::{Result, ToaError};
pub use estimator::{coarse_step, estimate_toa, fine_step, gllr_score, mm_estimate, ToaEstimate};
pub use frontend::{correlate, energy_blocks, CorrelationWindow, EnergyObservation};
pub use harness::{
    acquisition_time, run_trial, snr_sweep, ExperimentConfig, SweepResult, SweepRow, TrialResult,
};
pub use model::{
    default_paper_config, generate_channel, ChannelModel, ChannelPreset, ChannelRealization,
    SystemConfig, TapStatistics,
};
pub use rng::SimRng;
