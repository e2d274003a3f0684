use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::gamma::ln_gamma;
use crate::error::{domain, Result};

/// Shape `m` and mean-square power `omega` of a Nakagami-m amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NakagamiParams {
    pub m: f64,
    pub omega: f64,
}

impl NakagamiParams {
    pub fn new(m: f64, omega: f64) -> Result<Self> {
        if !(m >= 0.5) || !m.is_finite() {
            return Err(domain("NakagamiParams", m, "m >= 0.5"));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(domain("NakagamiParams", omega, "omega > 0"));
        }
        Ok(Self { m, omega })
    }
}

/// Raw moment `E[X^n] = Γ(m + n/2) / Γ(m) (Ω/m)^(n/2)`.
pub fn nakagami_moment(n: u32, params: NakagamiParams) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let NakagamiParams { m, omega } = params;
    let half = n as f64 / 2.0;
    (ln_gamma(m + half) - ln_gamma(m) + half * (omega / m).ln()).exp()
}

/// Draws a Nakagami-m amplitude as the square root of a Gamma variate with
/// shape `m` and mean `omega`.
pub fn sample_nakagami<R: Rng + ?Sized>(params: NakagamiParams, rng: &mut R) -> f64 {
    let g = sample_gamma(params.m, rng);
    (g * (params.omega / params.m)).sqrt()
}

/// Unit-scale Gamma(shape) variate.
///
/// Marsaglia & Tsang squeeze/rejection for `shape >= 1`; smaller shapes draw
/// `Gamma(shape + 1)` and multiply by `U^(1/shape)`.
pub fn sample_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> f64 {
    debug_assert!(shape > 0.0);
    if shape < 1.0 {
        let g = sample_gamma(shape + 1.0, rng);
        let u: f64 = rng.random();
        return g * u.powf(1.0 / shape);
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x: f64 = rng.sample(StandardNormal);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u: f64 = rng.random();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}
