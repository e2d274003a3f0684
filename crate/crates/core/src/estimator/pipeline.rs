use rand::Rng;
use serde::{Deserialize, Serialize};

use super::coarse::coarse_step;
use super::fine::fine_step;
use super::guards::{all_signal_test, noise_only_test};
use crate::frontend::{self, CorrelationWindow, EnergyObservation, WindowSpan};
use crate::model::{ChannelRealization, SystemConfig, TapStatistics, MIN_FIT_SAMPLES};

/// Final estimate with the diagnostics of how it was reached.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToaEstimate {
    pub k_hat: usize,
    /// Block chosen by the last coarse step.
    pub k_b_hat: usize,
    pub theta_mm: TapStatistics,
    /// Scores over the final window's hypotheses `n_s ..= n_e`.
    pub scores: Vec<f64>,
    pub window: WindowSpan,
    pub noise_only_triggered: bool,
    pub all_signal_triggered: bool,
    pub retries_used: usize,
    pub shifts_used: usize,
    /// The fit at `k_hat` was clamped or replaced, or the window tail was
    /// clamped below the minimum fit size.
    pub degenerate: bool,
}

/// Source of receiver observations for the pipeline.
pub trait Observer {
    fn energy(&mut self, cfg: &SystemConfig) -> EnergyObservation;
    fn correlate(&mut self, cfg: &SystemConfig, span: WindowSpan) -> CorrelationWindow;
}

/// Draws fresh observations of a fixed channel from a random stream.
pub struct SyntheticObserver<'a, R: ?Sized> {
    pub channel: &'a ChannelRealization,
    pub rng: &'a mut R,
}

impl<R: Rng + ?Sized> Observer for SyntheticObserver<'_, R> {
    fn energy(&mut self, cfg: &SystemConfig) -> EnergyObservation {
        frontend::energy_blocks(cfg, self.channel, self.rng)
    }

    fn correlate(&mut self, cfg: &SystemConfig, span: WindowSpan) -> CorrelationWindow {
        frontend::correlate(cfg, self.channel, span, self.rng)
    }
}

/// Runs the full estimator on synthetic observations of `ch`.
pub fn estimate_toa<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    ch: &ChannelRealization,
    rng: &mut R,
) -> ToaEstimate {
    estimate_toa_with(cfg, &mut SyntheticObserver { channel: ch, rng })
}

/// Coarse step, window construction, fine step, then the guard tests: a
/// noise-only verdict restarts from fresh block energies (up to
/// `max_retries` times); an all-signal verdict moves the window one block
/// earlier and re-correlates (up to `max_shifts` times). Exhausted budgets
/// return the latest estimate with the flags set.
pub fn estimate_toa_with<O: Observer + ?Sized>(cfg: &SystemConfig, obs: &mut O) -> ToaEstimate {
    let block = cfg.chips_per_block();
    let mut retries = 0;
    let mut shifts = 0;
    let mut noise_only_seen = false;
    let mut all_signal_seen = false;

    'coarse: loop {
        let k_b_hat = coarse_step(&obs.energy(cfg));
        let mut span = WindowSpan::around_block(cfg, k_b_hat);
        loop {
            let window = obs.correlate(cfg, span);
            let fine = fine_step(&window, cfg);
            let finish =
                |noise_only_seen, all_signal_seen, retries_used, shifts_used| ToaEstimate {
                    k_hat: fine.k_hat,
                    k_b_hat,
                    theta_mm: fine.theta_mm,
                    scores: fine.scores.clone(),
                    window: span,
                    noise_only_triggered: noise_only_seen,
                    all_signal_triggered: all_signal_seen,
                    retries_used,
                    shifts_used,
                    degenerate: fine.degenerate || span.tail_len() < MIN_FIT_SAMPLES,
                };

            if noise_only_test(&window, fine.k_hat, cfg) {
                noise_only_seen = true;
                if retries < cfg.max_retries {
                    retries += 1;
                    continue 'coarse;
                }
                return finish(noise_only_seen, all_signal_seen, retries, shifts);
            }
            if all_signal_test(&window, fine.k_hat, cfg) {
                all_signal_seen = true;
                if shifts < cfg.max_shifts {
                    if let Some(next) = span.shifted_back(block) {
                        shifts += 1;
                        span = next;
                        continue;
                    }
                }
            }
            return finish(noise_only_seen, all_signal_seen, retries, shifts);
        }
    }
}
