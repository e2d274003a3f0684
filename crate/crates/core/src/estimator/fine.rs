use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::coarse::argmax_earliest;
use super::gllr::GllrModel;
use super::moments::{mm_from_moments, MmFit, SuffixMoments};
use crate::frontend::CorrelationWindow;
use crate::model::{SystemConfig, TapStatistics, MIN_FIT_SAMPLES};

/// Outcome of the change detector over one window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FineStep {
    pub k_hat: usize,
    pub theta_mm: TapStatistics,
    /// The fit at `k_hat` was clamped or replaced.
    pub degenerate: bool,
    /// Every hypothesis' fit was clamped or replaced.
    pub all_degenerate: bool,
    /// Score per hypothesis `n_s ..= n_e`.
    pub scores: Vec<f64>,
}

/// Refits `θ` on `z_{k+1} ..= z_{n_f}` for each hypothesis `k ∈ [n_s, n_e]`,
/// scores it, and returns the arg max (earliest on ties).
///
/// The arg max is taken over the scores less the window constant
/// `Σ_{i>=n_s} z_i²/(2σ²)`, which resolves hypotheses whose absolute scores
/// agree to every representable digit at very high SNR.
pub fn fine_step(window: &CorrelationWindow, cfg: &SystemConfig) -> FineStep {
    let suffix = SuffixMoments::new(&window.z);
    let per_k: Vec<(MmFit, f64, f64)> = window
        .hypotheses()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            let offset = k - window.n_s;
            let (mu2, mu4, mu6, n) = suffix.moments(offset + 1);
            let mut fit = mm_from_moments(
                mu2,
                mu4,
                mu6,
                window.sigma_n2,
                cfg.pulse_energy,
                cfg.frames_step2,
            );
            fit.degenerate |= n < MIN_FIT_SAMPLES;
            let (common, excess) = GllrModel::for_config(fit.theta, window.sigma_n2, cfg)
                .score_parts(&window.z[offset..]);
            (fit, common + excess, excess)
        })
        .collect();

    // Σ_{n_s <= i < k} z_i²/(2σ²), accumulated forward so that hypotheses
    // near the start of the window keep full precision.
    let mut skipped = 0.0;
    let rebased: Vec<f64> = per_k
        .iter()
        .zip(&window.z)
        .map(|((_, _, excess), &z)| {
            let r = excess - skipped;
            skipped += z * z / (2.0 * window.sigma_n2);
            r
        })
        .collect();
    let best = argmax_earliest(&rebased);
    let scores: Vec<f64> = per_k.iter().map(|(_, s, _)| *s).collect();
    let (fit, _, _) = per_k[best];
    FineStep {
        k_hat: window.n_s + best,
        theta_mm: fit.theta,
        degenerate: fit.degenerate,
        all_degenerate: per_k.iter().all(|(f, _, _)| f.degenerate),
        scores,
    }
}
