//! System geometry, tap statistics, and random generation of the sparse
//! chip-spaced Nakagami-m multipath channel.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result, ToaError};
use crate::specfun::{sample_nakagami, NakagamiParams};

/// Frame/chip/block geometry, signal and noise levels, and estimator knobs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemConfig {
    pub chip_duration_ns: f64,
    pub chips_per_frame: usize,
    pub blocks_per_frame: usize,
    /// Frames of energy collected per block in the coarse step (N1).
    pub frames_step1: usize,
    /// Frames per correlator output in the fine step (N2).
    pub frames_step2: usize,
    /// Extra chips searched before the strongest block (M1).
    pub backward_search_chips: usize,
    /// Correlator outputs past the uncertainty region used for fitting (M2).
    pub tail_extension_chips: usize,
    /// Outputs before the window start included in the all-signal test (M3).
    pub allsignal_lookback_chips: usize,
    pub pulse_energy: f64,
    pub noise_psd: f64,
    pub num_correlators: usize,
    pub num_taps: usize,
    pub max_toa_chip: usize,
    pub noise_only_threshold_sigma: f64,
    pub all_signal_threshold_sigma: f64,
    pub max_retries: usize,
    pub max_shifts: usize,
}

/// Smallest post-change sample count the moment fit accepts.
pub const MIN_FIT_SAMPLES: usize = 10;

impl Default for SystemConfig {
    fn default() -> Self {
        default_paper_config()
    }
}

/// 7.5 GHz signal, 300 ns frame of 2250 chips split into 50 blocks,
/// N1 = 50, N2 = 25, M1 = 180, ten parallel correlators.
pub fn default_paper_config() -> SystemConfig {
    let chips_per_frame = 2250;
    let num_taps = 200;
    SystemConfig {
        chip_duration_ns: 300.0 / chips_per_frame as f64,
        chips_per_frame,
        blocks_per_frame: 50,
        frames_step1: 50,
        frames_step2: 25,
        backward_search_chips: 180,
        tail_extension_chips: 30,
        allsignal_lookback_chips: 10,
        pulse_energy: 1.0,
        noise_psd: 1.0,
        num_correlators: 10,
        num_taps,
        max_toa_chip: chips_per_frame - num_taps,
        noise_only_threshold_sigma: 3.0,
        all_signal_threshold_sigma: 3.0,
        max_retries: 2,
        max_shifts: 3,
    }
}

impl SystemConfig {
    /// Chips per block (B).
    pub fn chips_per_block(&self) -> usize {
        self.chips_per_frame / self.blocks_per_frame
    }

    pub fn frame_duration_ns(&self) -> f64 {
        self.chips_per_frame as f64 * self.chip_duration_ns
    }

    /// Correlator output noise variance `N2 N0 / 2`.
    pub fn correlator_noise_variance(&self) -> f64 {
        self.frames_step2 as f64 * self.noise_psd / 2.0
    }

    /// Sets `N0` so that `10 log10(E / N0) = snr_db`.
    pub fn with_snr_db(mut self, snr_db: f64) -> Self {
        self.noise_psd = self.pulse_energy / 10f64.powf(snr_db / 10.0);
        self
    }

    /// Geometry and level checks shared by every consumer.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(ToaError::InvalidConfig(msg));
        if !(self.chip_duration_ns > 0.0) {
            return bad(format!(
                "chip_duration_ns must be > 0, got {}",
                self.chip_duration_ns
            ));
        }
        for (name, v) in [
            ("chips_per_frame", self.chips_per_frame),
            ("blocks_per_frame", self.blocks_per_frame),
            ("frames_step1", self.frames_step1),
            ("frames_step2", self.frames_step2),
            ("num_correlators", self.num_correlators),
            ("num_taps", self.num_taps),
        ] {
            if v == 0 {
                return bad(format!("{name} must be > 0"));
            }
        }
        if self.chips_per_frame % self.blocks_per_frame != 0 {
            return bad(format!(
                "chips_per_frame ({}) must be a multiple of blocks_per_frame ({})",
                self.chips_per_frame, self.blocks_per_frame
            ));
        }
        if self.max_toa_chip + self.num_taps > self.chips_per_frame {
            return bad(format!(
                "max_toa_chip + num_taps ({} + {}) exceeds chips_per_frame ({}): inter-frame interference",
                self.max_toa_chip, self.num_taps, self.chips_per_frame
            ));
        }
        if !(self.pulse_energy > 0.0) || !self.pulse_energy.is_finite() {
            return bad(format!(
                "pulse_energy must be > 0, got {}",
                self.pulse_energy
            ));
        }
        if !(self.noise_psd > 0.0) || !self.noise_psd.is_finite() {
            return bad(format!("noise_psd must be > 0, got {}", self.noise_psd));
        }
        if !(self.noise_only_threshold_sigma > 0.0) || !(self.all_signal_threshold_sigma > 0.0) {
            return bad("guard threshold multipliers must be > 0".into());
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus the minimum tail length the
    /// moment fit needs.
    pub fn validate_for_estimation(&self) -> Result<()> {
        self.validate()?;
        if self.tail_extension_chips < MIN_FIT_SAMPLES {
            return Err(ToaError::InvalidConfig(format!(
                "tail_extension_chips must be >= {MIN_FIT_SAMPLES}, got {}",
                self.tail_extension_chips
            )));
        }
        Ok(())
    }
}

/// Per-chip tap statistics `(p, m, Ω)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TapStatistics {
    /// Probability that a tap is present in a given chip.
    pub p: f64,
    pub m: f64,
    pub omega: f64,
}

impl Default for TapStatistics {
    fn default() -> Self {
        Self {
            p: 0.3,
            m: 1.5,
            omega: 1.0,
        }
    }
}

impl TapStatistics {
    pub fn new(p: f64, m: f64, omega: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(domain("TapStatistics", p, "0 < p <= 1"));
        }
        NakagamiParams::new(m, omega)?;
        Ok(Self { p, m, omega })
    }

    pub fn nakagami(&self) -> NakagamiParams {
        NakagamiParams {
            m: self.m,
            omega: self.omega,
        }
    }

    /// Rescales `omega` so the expected total channel energy
    /// `Σ_l E[α_l²]` is one.
    pub fn normalized(self, num_taps: usize, decay_chips: Option<f64>) -> Self {
        let tail: f64 = (1..num_taps).map(|l| decay_weight(l, decay_chips)).sum();
        Self {
            omega: 1.0 / (1.0 + self.p * tail),
            ..self
        }
    }
}

/// Relative mean-square power of tap `l` (zero-based) under optional
/// exponential decay with the given 1/e length in chips.
pub fn decay_weight(l: usize, decay_chips: Option<f64>) -> f64 {
    match decay_chips {
        Some(d) => (-(l as f64) / d).exp(),
        None => 1.0,
    }
}

/// Tap statistics plus the optional per-chip power decay.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub theta: TapStatistics,
    pub decay_chips: Option<f64>,
}

impl ChannelModel {
    pub fn stationary(theta: TapStatistics) -> Self {
        Self {
            theta,
            decay_chips: None,
        }
    }

    pub fn from_preset(preset: ChannelPreset) -> Self {
        Self {
            theta: preset.theta(),
            decay_chips: preset.decay_chips(),
        }
    }

    /// Same model with `omega` chosen for unit expected channel energy.
    pub fn normalized(self, num_taps: usize) -> Self {
        Self {
            theta: self.theta.normalized(num_taps, self.decay_chips),
            ..self
        }
    }

    pub fn generate<R: Rng + ?Sized>(&self, cfg: &SystemConfig, rng: &mut R) -> ChannelRealization {
        generate_channel_with_decay(cfg, &self.theta, self.decay_chips, rng)
    }
}

/// One channel draw: the true TOA chip and the chip-spaced signed taps.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelRealization {
    pub toa_chip: usize,
    pub taps: Vec<f64>,
}

impl ChannelRealization {
    /// Tap amplitude seen at absolute chip `n`, zero outside the channel.
    pub fn tap_at(&self, n: usize) -> f64 {
        n.checked_sub(self.toa_chip)
            .and_then(|l| self.taps.get(l).copied())
            .unwrap_or(0.0)
    }

    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|a| a * a).sum()
    }
}

/// Draws a channel with stationary tap statistics.
pub fn generate_channel<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    theta: &TapStatistics,
    rng: &mut R,
) -> ChannelRealization {
    generate_channel_with_decay(cfg, theta, None, rng)
}

/// Draws a channel; with `decay_chips` set, tap `l` has mean-square power
/// `Ω e^{-l/decay}`, which departs from the estimator's stationary model.
pub fn generate_channel_with_decay<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    theta: &TapStatistics,
    decay_chips: Option<f64>,
    rng: &mut R,
) -> ChannelRealization {
    let toa_chip = rng.random_range(0..=cfg.max_toa_chip);
    let mut taps = Vec::with_capacity(cfg.num_taps);
    for l in 0..cfg.num_taps {
        if l > 0 && !rng.random_bool(theta.p) {
            taps.push(0.0);
            continue;
        }
        let params = NakagamiParams {
            m: theta.m,
            omega: theta.omega * decay_weight(l, decay_chips),
        };
        let mag = sample_nakagami(params, rng);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        // A zero magnitude has probability zero but would break the
        // first-path-present invariant.
        taps.push(sign * mag.max(f64::MIN_POSITIVE));
    }
    ChannelRealization { toa_chip, taps }
}

/// Qualitative stand-ins for residential/office, LOS/NLOS environments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelPreset {
    Stationary,
    ResidentialLosLike,
    ResidentialNlosLike,
    OfficeLosLike,
    OfficeNlosLike,
}

impl ChannelPreset {
    pub const ALL: [ChannelPreset; 5] = [
        ChannelPreset::Stationary,
        ChannelPreset::ResidentialLosLike,
        ChannelPreset::ResidentialNlosLike,
        ChannelPreset::OfficeLosLike,
        ChannelPreset::OfficeNlosLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelPreset::Stationary => "stationary",
            ChannelPreset::ResidentialLosLike => "residential-los-like",
            ChannelPreset::ResidentialNlosLike => "residential-nlos-like",
            ChannelPreset::OfficeLosLike => "office-los-like",
            ChannelPreset::OfficeNlosLike => "office-nlos-like",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    /// Tap statistics before energy normalization.
    pub fn theta(self) -> TapStatistics {
        let (p, m) = match self {
            ChannelPreset::Stationary => (0.3, 1.5),
            ChannelPreset::ResidentialLosLike => (0.3, 2.0),
            ChannelPreset::ResidentialNlosLike => (0.25, 1.0),
            ChannelPreset::OfficeLosLike => (0.5, 3.0),
            ChannelPreset::OfficeNlosLike => (0.5, 1.5),
        };
        TapStatistics { p, m, omega: 1.0 }
    }

    /// Longer decay lengths stand in for larger delay spreads.
    pub fn decay_chips(self) -> Option<f64> {
        match self {
            ChannelPreset::Stationary => None,
            ChannelPreset::ResidentialLosLike => Some(90.0),
            ChannelPreset::ResidentialNlosLike => Some(140.0),
            ChannelPreset::OfficeLosLike => Some(40.0),
            ChannelPreset::OfficeNlosLike => Some(70.0),
        }
    }
}
