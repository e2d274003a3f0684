//! Receiver observables under a chip-matched-filter model.
//!
//! Each chip of each frame contributes one real sample
//! `x = √E α + w`, `w ~ N(0, N0/2)`. With no inter-frame interference and a
//! template matched to the time-hopping and polarity codes, those codes
//! cancel from both the block energies and the correlator outputs, so they
//! are not materialized.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::model::{ChannelRealization, SystemConfig};

/// Per-block energies `Y_i` accumulated over the coarse-step frames.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyObservation {
    pub y: Vec<f64>,
}

/// Chip indices delimiting one fine-step search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowSpan {
    /// First hypothesis.
    pub n_s: usize,
    /// Last hypothesis.
    pub n_e: usize,
    /// Last correlated chip.
    pub n_f: usize,
}

impl WindowSpan {
    /// Search span around coarse block `k_b`: `n_s = k_b B - M1`,
    /// `n_e = (k_b + 1) B - 1`, `n_f = n_e + M2`, clamped to the frame.
    pub fn around_block(cfg: &SystemConfig, k_b: usize) -> Self {
        let b = cfg.chips_per_block();
        let n_e = ((k_b + 1) * b - 1).min(cfg.chips_per_frame - 1);
        let n_s = (k_b * b).saturating_sub(cfg.backward_search_chips).min(n_e);
        let n_f = (n_e + cfg.tail_extension_chips).min(cfg.chips_per_frame - 1);
        Self { n_s, n_e, n_f }
    }

    /// Moves the whole span `chips` earlier, clamping at chip zero. Returns
    /// `None` when the span is already at the start of the frame.
    pub fn shifted_back(self, chips: usize) -> Option<Self> {
        if self.n_s == 0 {
            return None;
        }
        let step = chips.min(self.n_s);
        Some(Self {
            n_s: self.n_s - step,
            n_e: self.n_e - step,
            n_f: self.n_f - step,
        })
    }

    pub fn contains(&self, k: usize) -> bool {
        (self.n_s..=self.n_e).contains(&k)
    }

    /// Number of correlator outputs past the last hypothesis.
    pub fn tail_len(&self) -> usize {
        self.n_f - self.n_e
    }
}

/// Low-rate correlator outputs `z_i` for `i ∈ [n_s, n_f]`, plus up to M3
/// earlier outputs used only by the all-signal guard.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationWindow {
    pub n_s: usize,
    pub n_e: usize,
    pub n_f: usize,
    /// `z[i - n_s]` is the output for delay `i`.
    pub z: Vec<f64>,
    /// Outputs for delays `n_s - lookback.len() .. n_s`.
    pub lookback: Vec<f64>,
    /// Output noise variance `σ_n² = N2 N0 / 2`.
    pub sigma_n2: f64,
}

impl CorrelationWindow {
    pub fn span(&self) -> WindowSpan {
        WindowSpan {
            n_s: self.n_s,
            n_e: self.n_e,
            n_f: self.n_f,
        }
    }

    /// Output at absolute delay `i`, including the lookback prefix.
    pub fn at(&self, i: usize) -> Option<f64> {
        if i >= self.n_s {
            self.z.get(i - self.n_s).copied()
        } else {
            let back = self.n_s - i;
            self.lookback
                .len()
                .checked_sub(back)
                .map(|j| self.lookback[j])
        }
    }

    /// Outputs `z_{from} ..= z_{n_f}`.
    pub fn from(&self, from: usize) -> &[f64] {
        &self.z[from - self.n_s..]
    }

    /// Hypotheses `n_s ..= n_e`.
    pub fn hypotheses(&self) -> std::ops::RangeInclusive<usize> {
        self.n_s..=self.n_e
    }

    pub fn is_valid(&self) -> bool {
        self.n_s <= self.n_e
            && self.n_e <= self.n_f
            && self.z.len() == self.n_f - self.n_s + 1
            && self.lookback.len() <= self.n_s
            && self.sigma_n2 > 0.0
    }
}

/// Block energies `Y_i = Σ_j Σ_{n ∈ block i} x_{j,n}²` over N1 frames.
pub fn energy_blocks<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    ch: &ChannelRealization,
    rng: &mut R,
) -> EnergyObservation {
    let b = cfg.chips_per_block();
    let amp = cfg.pulse_energy.sqrt();
    let sigma = (cfg.noise_psd / 2.0).sqrt();
    let signal: Vec<f64> = (0..cfg.chips_per_frame)
        .map(|n| amp * ch.tap_at(n))
        .collect();
    let mut y = vec![0.0; cfg.blocks_per_frame];
    for _ in 0..cfg.frames_step1 {
        for (n, s) in signal.iter().enumerate() {
            let w: f64 = rng.sample(StandardNormal);
            let x = s + sigma * w;
            y[n / b] += x * x;
        }
    }
    EnergyObservation { y }
}

/// Correlator outputs `z_i = N2 √E α_{i-k+1} + η_i`, `η_i ~ N(0, N2 N0/2)`,
/// for `i ∈ [n_s - M3', n_f]` with `M3' = min(M3, n_s)`.
///
/// # Panics
///
/// If `n_s <= n_e <= n_f` does not hold.
pub fn correlate<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    ch: &ChannelRealization,
    span: WindowSpan,
    rng: &mut R,
) -> CorrelationWindow {
    let WindowSpan { n_s, n_e, n_f } = span;
    assert!(n_s <= n_e && n_e <= n_f, "malformed window {span:?}");
    let gain = cfg.frames_step2 as f64 * cfg.pulse_energy.sqrt();
    let sigma_n2 = cfg.correlator_noise_variance();
    let sigma = sigma_n2.sqrt();
    let lb = cfg.allsignal_lookback_chips.min(n_s);
    let mut out: Vec<f64> = ((n_s - lb)..=n_f)
        .map(|i| {
            let w: f64 = rng.sample(StandardNormal);
            gain * ch.tap_at(i) + sigma * w
        })
        .collect();
    let z = out.split_off(lb);
    CorrelationWindow {
        n_s,
        n_e,
        n_f,
        z,
        lookback: out,
        sigma_n2,
    }
}
