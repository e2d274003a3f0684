use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::rmse;
use crate::estimator::{estimate_toa, ToaEstimate};
use crate::model::{ChannelModel, ChannelRealization, SystemConfig, TapStatistics};
use crate::rng::{derive_seed, stream};

/// Error of one seeded end-to-end trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub true_k: usize,
    pub k_hat: usize,
    /// `k_hat - true_k`.
    pub error_chips: i64,
    /// `error_chips * Tc`.
    pub error_ns: f64,
    pub diagnostics: TrialDiagnostics,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialDiagnostics {
    pub true_block: usize,
    pub k_b_hat: usize,
    pub noise_only_triggered: bool,
    pub all_signal_triggered: bool,
    pub retries_used: usize,
    pub shifts_used: usize,
    pub degenerate: bool,
}

impl TrialResult {
    pub fn new(cfg: &SystemConfig, ch: &ChannelRealization, est: &ToaEstimate) -> Self {
        let error_chips = est.k_hat as i64 - ch.toa_chip as i64;
        Self {
            true_k: ch.toa_chip,
            k_hat: est.k_hat,
            error_chips,
            error_ns: error_chips as f64 * cfg.chip_duration_ns,
            diagnostics: TrialDiagnostics {
                true_block: ch.toa_chip / cfg.chips_per_block(),
                k_b_hat: est.k_b_hat,
                noise_only_triggered: est.noise_only_triggered,
                all_signal_triggered: est.all_signal_triggered,
                retries_used: est.retries_used,
                shifts_used: est.shifts_used,
                degenerate: est.degenerate,
            },
        }
    }

    pub fn block_correct(&self) -> bool {
        self.diagnostics.true_block == self.diagnostics.k_b_hat
    }
}

/// Everything one trial produced, for diagnostic dumps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub snr_db: f64,
    pub seed: u64,
    pub result: TrialResult,
    pub estimate: ToaEstimate,
    pub channel: ChannelRealization,
}

/// Runs one trial on the stationary channel with statistics `theta`.
///
/// `theta.omega` is rescaled for unit expected channel energy, so `snr_db`
/// is `10 log10(E/N0)` with `E` the total received energy per pulse.
pub fn run_trial(cfg: &SystemConfig, theta: &TapStatistics, snr_db: f64, seed: u64) -> TrialResult {
    run_trial_with(cfg, &ChannelModel::stationary(*theta), snr_db, seed).result
}

pub fn run_trial_with(
    cfg: &SystemConfig,
    model: &ChannelModel,
    snr_db: f64,
    seed: u64,
) -> TrialRecord {
    let cfg = cfg.clone().with_snr_db(snr_db);
    let model = model.normalized(cfg.num_taps);
    let mut rng = stream(seed);
    let channel = model.generate(&cfg, &mut rng);
    let estimate = estimate_toa(&cfg, &channel, &mut rng);
    TrialRecord {
        snr_db,
        seed,
        result: TrialResult::new(&cfg, &channel, &estimate),
        estimate,
        channel,
    }
}

/// One SNR point of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub trials: usize,
    pub rmse_chips: f64,
    pub rmse_ns: f64,
    pub mean_abs_error_chips: f64,
    pub p_block_correct: f64,
    pub p_within_1chip: f64,
}

/// RMSE-versus-SNR table, rows in ascending SNR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

/// A sweep together with the per-trial results behind each row.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub result: SweepResult,
    /// `trials[r][t]` is trial `t` of row `r`.
    pub trials: Vec<Vec<TrialResult>>,
}

/// Stationary-channel sweep; see [`run_sweep`].
pub fn snr_sweep(
    cfg: &SystemConfig,
    theta: &TapStatistics,
    snrs_db: &[f64],
    trials: usize,
    seed: u64,
) -> SweepResult {
    run_sweep(
        cfg,
        &ChannelModel::stationary(*theta),
        snrs_db,
        trials,
        seed,
    )
    .result
}

/// Runs `trials` trials at each SNR. Trial `t` uses the seed derived from
/// `(seed, t)` at every SNR, so all rows see the same channel draws; the
/// reduction is indexed, so results do not depend on thread scheduling.
pub fn run_sweep(
    cfg: &SystemConfig,
    model: &ChannelModel,
    snrs_db: &[f64],
    trials: usize,
    seed: u64,
) -> SweepOutcome {
    assert!(trials >= 1, "a sweep needs at least one trial per SNR");
    assert!(!snrs_db.is_empty(), "a sweep needs at least one SNR");
    let mut snrs = snrs_db.to_vec();
    snrs.sort_by(f64::total_cmp);

    let per_row: Vec<Vec<TrialResult>> = snrs
        .iter()
        .map(|&snr| {
            (0..trials as u64)
                .into_par_iter()
                .map(|t| run_trial_with(cfg, model, snr, derive_seed(seed, t, 0)).result)
                .collect()
        })
        .collect();

    let rows = snrs
        .iter()
        .zip(&per_row)
        .map(|(&snr_db, results)| summarize(cfg, snr_db, results))
        .collect();
    SweepOutcome {
        result: SweepResult { rows },
        trials: per_row,
    }
}

fn summarize(cfg: &SystemConfig, snr_db: f64, results: &[TrialResult]) -> SweepRow {
    let n = results.len() as f64;
    let errors: Vec<i64> = results.iter().map(|r| r.error_chips).collect();
    let rmse_chips = rmse(&errors);
    SweepRow {
        snr_db,
        trials: results.len(),
        rmse_chips,
        rmse_ns: rmse_chips * cfg.chip_duration_ns,
        mean_abs_error_chips: errors.iter().map(|e| e.abs() as f64).sum::<f64>() / n,
        p_block_correct: results.iter().filter(|r| r.block_correct()).count() as f64 / n,
        p_within_1chip: errors.iter().filter(|e| e.abs() <= 1).count() as f64 / n,
    }
}
