//! Densities and the generalized log-likelihood ratio of the change
//! hypotheses.
//!
//! Under noise only `z ~ N(0, σ²)` (`p1`). A present tap gives
//! `z = N2 √E d|α| + η` with density
//!
//! ```text
//! p2(z) = ν1 p1(z) M(m, 1/2, z²/ν2)
//! ν1 = 2√π Γ(2m) / (Γ(m) Γ(m + 1/2)) · (4 + 2EN2²Ω/(mσ²))^(-m)
//! ν2 = 2σ² (1 + 2mσ²/(EN2²Ω))
//! ```
//!
//! Legendre's duplication formula collapses the Gamma prefactor, leaving
//! `ν1 = (1 + EN2²Ω/(2mσ²))^(-m)`.
//!
//! At high SNR every signal output contributes a term near `z²/(2σ²)`,
//! which swamps the differences between neighbouring hypotheses. Each log
//! ratio is therefore split as `c(z) + r(z)` with `c(z) = z²/(2σ²)` and the
//! remainder `r` computed without forming `c`:
//! `r(z) = ln ν1 + [ln M(m, ½, x) - x] - z²/(EN2²Ω/m + 2σ²)`, `x = z²/ν2`.

use serde::{Deserialize, Serialize};

use crate::frontend::CorrelationWindow;
use crate::model::{SystemConfig, TapStatistics};
use crate::specfun::ln_kummer_scaled;

/// `ln ν1` for signal-to-noise ratio `snr = E N2² Ω / σ²`.
pub fn ln_nu1(m: f64, snr: f64) -> f64 {
    -m * (snr / (2.0 * m)).ln_1p()
}

/// Precomputed per-`θ` constants for evaluating the densities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GllrModel {
    pub theta: TapStatistics,
    pub sigma_n2: f64,
    pub ln_nu1: f64,
    /// `1/ν2`; zero when there is no signal energy.
    pub inv_nu2: f64,
    /// `1/(EN2²Ω/m + 2σ²)`.
    inv_spread: f64,
    ln_p: f64,
    ln_1mp: f64,
}

impl GllrModel {
    pub fn new(theta: TapStatistics, sigma_n2: f64, energy: f64, frames_step2: usize) -> Self {
        let signal = energy * (frames_step2 * frames_step2) as f64 * theta.omega;
        let snr = signal / sigma_n2;
        let inv_nu2 = if signal > 0.0 {
            1.0 / (2.0 * sigma_n2 * (1.0 + 2.0 * theta.m / snr))
        } else {
            0.0
        };
        Self {
            theta,
            sigma_n2,
            ln_nu1: ln_nu1(theta.m, snr),
            inv_nu2,
            inv_spread: 1.0 / (signal / theta.m + 2.0 * sigma_n2),
            ln_p: theta.p.ln(),
            ln_1mp: (-theta.p).ln_1p(),
        }
    }

    pub fn for_config(theta: TapStatistics, sigma_n2: f64, cfg: &SystemConfig) -> Self {
        Self::new(theta, sigma_n2, cfg.pulse_energy, cfg.frames_step2)
    }

    /// `c(z) = z²/(2σ²)`, the part of every log ratio that does not depend on `θ`.
    pub fn common_part(&self, z: f64) -> f64 {
        z * z / (2.0 * self.sigma_n2)
    }

    /// `ln p2(z) - ln p1(z) - c(z)`.
    pub fn ln_likelihood_excess(&self, z: f64) -> f64 {
        let z2 = z * z;
        self.ln_nu1 + ln_kummer_scaled(self.theta.m, 0.5, z2 * self.inv_nu2) - z2 * self.inv_spread
    }

    /// `ln[(p p2(z) + (1-p) p1(z)) / p1(z)] - c(z)`.
    pub fn ln_mixture_excess(&self, z: f64) -> f64 {
        log_add_exp(
            self.ln_p + self.ln_likelihood_excess(z),
            self.ln_1mp - self.common_part(z),
        )
    }

    /// `ln p2(z) - ln p1(z)`.
    pub fn ln_likelihood_ratio(&self, z: f64) -> f64 {
        self.common_part(z) + self.ln_likelihood_excess(z)
    }

    /// `ln[(p p2(z) + (1-p) p1(z)) / p1(z)]`.
    pub fn ln_mixture_ratio(&self, z: f64) -> f64 {
        self.common_part(z) + self.ln_mixture_excess(z)
    }

    /// `ln p1(z)`.
    pub fn ln_p1(&self, z: f64) -> f64 {
        -0.5 * (2.0 * std::f64::consts::PI * self.sigma_n2).ln() - z * z / (2.0 * self.sigma_n2)
    }

    /// `ln p2(z)`.
    pub fn ln_p2(&self, z: f64) -> f64 {
        self.ln_p1(z) + self.ln_likelihood_ratio(z)
    }

    /// Score of a change at the first element of `z_from_k`.
    pub fn score(&self, z_from_k: &[f64]) -> f64 {
        let (common, excess) = self.score_parts(z_from_k);
        common + excess
    }

    /// The score as `(Σ c(z_i), remainder)`.
    pub fn score_parts(&self, z_from_k: &[f64]) -> (f64, f64) {
        let (first, rest) = z_from_k
            .split_first()
            .expect("hypothesis must have its own output");
        let common = z_from_k.iter().map(|&z| self.common_part(z)).sum::<f64>();
        let excess = self.ln_likelihood_excess(*first)
            + rest.iter().map(|&z| self.ln_mixture_excess(z)).sum::<f64>();
        (common, excess)
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if b == f64::NEG_INFINITY {
        return a;
    }
    if a == f64::NEG_INFINITY {
        return b;
    }
    let hi = a.max(b);
    hi + (-(a - b).abs()).exp().ln_1p()
}

/// The change-detection objective for hypothesis `k`:
/// `ln ν1 + ln M(m, ½, z_k²/ν2) + Σ_{i>k} ln[p ν1 M(m, ½, z_i²/ν2) + 1 - p]`.
///
/// # Panics
///
/// If `k` is outside `[n_s, n_f]`.
pub fn gllr_score(
    k: usize,
    window: &CorrelationWindow,
    theta: &TapStatistics,
    cfg: &SystemConfig,
) -> f64 {
    assert!(
        (window.n_s..=window.n_f).contains(&k),
        "hypothesis {k} outside window [{}, {}]",
        window.n_s,
        window.n_f
    );
    GllrModel::for_config(*theta, window.sigma_n2, cfg).score(window.from(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::log_gamma;

    fn window(z: Vec<f64>, sigma_n2: f64) -> CorrelationWindow {
        let n = z.len();
        CorrelationWindow {
            n_s: 0,
            n_e: n - 1,
            n_f: n - 1,
            z,
            lookback: vec![],
            sigma_n2,
        }
    }

    #[test]
    fn nu1_matches_gamma_form() {
        for &m in &[0.5, 0.8, 1.0, 2.0, 5.0, 13.5] {
            for &snr in &[0.0, 0.1, 1.0, 10.0, 1000.0] {
                let gamma_form = std::f64::consts::LN_2
                    + 0.5 * std::f64::consts::PI.ln()
                    + log_gamma(2.0 * m).unwrap()
                    - log_gamma(m).unwrap()
                    - log_gamma(m + 0.5).unwrap()
                    - m * (4.0 + 2.0 * snr / m).ln();
                let v = ln_nu1(m, snr);
                assert!(
                    (v - gamma_form).abs() < 1e-12,
                    "m={m} snr={snr}: {v} vs {gamma_form}"
                );
            }
        }
        assert_eq!(ln_nu1(3.0, 0.0), 0.0);
    }

    #[test]
    fn score_with_empty_tail_and_zero_output_is_ln_nu1() {
        let cfg = crate::model::default_paper_config();
        let theta = TapStatistics {
            p: 0.4,
            m: 1.7,
            omega: 0.8,
        };
        let w = window(vec![1.3, -0.2, 0.0], 2.0);
        let s = gllr_score(2, &w, &theta, &cfg);
        let model = GllrModel::for_config(theta, 2.0, &cfg);
        assert_eq!(s, model.ln_nu1);
    }

    #[test]
    fn vanishing_signal_power_scores_zero() {
        let cfg = crate::model::default_paper_config();
        let theta = TapStatistics {
            p: 0.4,
            m: 1.7,
            omega: 1e-300,
        };
        let w = window(vec![1.3, -0.2, 0.9, 3.0, -4.0], 1.0);
        let s = gllr_score(0, &w, &theta, &cfg);
        assert!(s.abs() < 1e-12, "{s}");
    }

    #[test]
    fn gaussian_shape_reduces_to_wider_gaussian() {
        // m = 1/2: d|α| is N(0, Ω), so p2 = N(0, σ² + EN2²Ω).
        let theta = TapStatistics {
            p: 1.0,
            m: 0.5,
            omega: 2.0,
        };
        let model = GllrModel::new(theta, 0.7, 1.0, 3);
        let var = 0.7 + 9.0 * 2.0;
        for &z in &[0.0, 0.5, 3.0, -12.0, 40.0] {
            let expected = -0.5 * (2.0 * std::f64::consts::PI * var).ln() - z * z / (2.0 * var);
            assert!((model.ln_p2(z) - expected).abs() < 1e-12, "z={z}");
        }
    }
}
