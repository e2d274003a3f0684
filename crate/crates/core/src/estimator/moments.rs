//! Method-of-moments fit of `θ = (p, m, Ω)` from post-change correlator
//! outputs. With `c = E N2²`, the Gaussian-plus-sparse-Nakagami mixture has
//!
//! ```text
//! γ1 = (μ2 - σ²) / c                             = pΩ
//! γ2 = ((μ4 - 3σ⁴)/γ1 - 6cσ²) / c²               = E|α|⁴ / Ω
//! γ3 = ((μ6 - 15σ⁶)/γ1 - 15c²γ2σ² - 45cσ⁴) / c³  = E|α|⁶ / Ω
//! ```
//!
//! which inverts to `p = γ1γ2/(2γ2² - γ3)`, `m = (2γ2² - γ3)/(γ3 - γ2²)`,
//! `Ω = (2γ2² - γ3)/γ2`.

use serde::{Deserialize, Serialize};

use crate::model::{TapStatistics, MIN_FIT_SAMPLES};

const P_RANGE: (f64, f64) = (1e-3, 1.0);
const M_RANGE: (f64, f64) = (0.5, 50.0);
const OMEGA_MIN: f64 = 1e-12;
const FALLBACK_P: f64 = 0.1;
const FALLBACK_M: f64 = 1.0;

/// A fitted `θ` and whether it had to be clamped or replaced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MmFit {
    pub theta: TapStatistics,
    pub degenerate: bool,
}

/// Fits `θ` from the samples `z_{k+1} ..= z_{n_f}`.
///
/// Never fails: too few samples, no excess energy, or moments no mixture
/// can produce all yield the fallback `θ` with `degenerate` set.
pub fn mm_estimate(z_tail: &[f64], sigma_n2: f64, energy: f64, frames_step2: usize) -> MmFit {
    let n = z_tail.len();
    let (mut s2, mut s4, mut s6) = (0.0, 0.0, 0.0);
    for &z in z_tail {
        let z2 = z * z;
        s2 += z2;
        s4 += z2 * z2;
        s6 += z2 * z2 * z2;
    }
    let nf = n.max(1) as f64;
    let fit = mm_from_moments(s2 / nf, s4 / nf, s6 / nf, sigma_n2, energy, frames_step2);
    if n < MIN_FIT_SAMPLES {
        return MmFit {
            degenerate: true,
            ..fit
        };
    }
    fit
}

/// Inverts the moment equations for given sample moments `μ2, μ4, μ6`.
pub fn mm_from_moments(
    mu2: f64,
    mu4: f64,
    mu6: f64,
    sigma_n2: f64,
    energy: f64,
    frames_step2: usize,
) -> MmFit {
    let c = energy * (frames_step2 * frames_step2) as f64;
    let s2 = sigma_n2;
    let s4 = s2 * s2;
    let s6 = s4 * s2;

    let g1 = (mu2 - s2) / c;
    let fallback = |g1: f64| MmFit {
        theta: TapStatistics {
            p: FALLBACK_P,
            m: FALLBACK_M,
            omega: (g1.max(OMEGA_MIN) / FALLBACK_P).max(OMEGA_MIN),
        },
        degenerate: true,
    };
    if !(g1 > 0.0) {
        return fallback(0.0);
    }
    let g2 = ((mu4 - 3.0 * s4) / g1 - 6.0 * c * s2) / (c * c);
    let g3 = ((mu6 - 15.0 * s6) / g1 - 15.0 * c * c * g2 * s2 - 45.0 * c * s4) / (c * c * c);

    let num = 2.0 * g2 * g2 - g3;
    let den = g3 - g2 * g2;
    if !(g2 > 0.0) || !(num > 0.0) || !(den > 0.0) || !num.is_finite() || !den.is_finite() {
        return fallback(g1);
    }

    let p = g1 * g2 / num;
    let m = num / den;
    let omega = num / g2;
    let pc = p.clamp(P_RANGE.0, P_RANGE.1);
    let mc = m.clamp(M_RANGE.0, M_RANGE.1);
    let oc = omega.max(OMEGA_MIN);
    MmFit {
        theta: TapStatistics {
            p: pc,
            m: mc,
            omega: oc,
        },
        degenerate: pc != p || mc != m || oc != omega,
    }
}

/// Suffix sums of `z²`, `z⁴`, `z⁶` so every hypothesis' tail moments are O(1).
#[derive(Debug, Clone)]
pub struct SuffixMoments {
    // sums[i] covers z[i..]
    sums: Vec<[f64; 3]>,
}

impl SuffixMoments {
    pub fn new(z: &[f64]) -> Self {
        let mut sums = vec![[0.0; 3]; z.len() + 1];
        for i in (0..z.len()).rev() {
            let z2 = z[i] * z[i];
            let next = sums[i + 1];
            sums[i] = [next[0] + z2, next[1] + z2 * z2, next[2] + z2 * z2 * z2];
        }
        Self { sums }
    }

    /// `(μ2, μ4, μ6, count)` over `z[from..]`.
    pub fn moments(&self, from: usize) -> (f64, f64, f64, usize) {
        let n = self.sums.len() - 1 - from;
        let d = n.max(1) as f64;
        let s = self.sums[from];
        (s[0] / d, s[1] / d, s[2] / d, n)
    }
}
