//! One-sided energy tests on the correlator outputs. Each squared noise
//! output has mean `σ²` and variance `2σ⁴`, so the average of `N` of them
//! is compared against `σ² (1 + q √(2/N))`.

use crate::frontend::CorrelationWindow;
use crate::model::SystemConfig;

pub fn guard_threshold(sigma_n2: f64, q: f64, count: usize) -> f64 {
    sigma_n2 * (1.0 + q * (2.0 / count as f64).sqrt())
}

/// True when the outputs from `k_hat` to `n_f` carry no significant energy
/// above noise, i.e. the coarse step picked a noise-only block.
pub fn noise_only_test(window: &CorrelationWindow, k_hat: usize, cfg: &SystemConfig) -> bool {
    let tail = window.from(k_hat);
    let n = tail.len();
    let mean = tail.iter().map(|z| z * z).sum::<f64>() / n as f64;
    mean < guard_threshold(window.sigma_n2, cfg.noise_only_threshold_sigma, n)
}

/// True when the outputs before `k_hat`, including the lookback prefix,
/// carry significant energy, i.e. the first path precedes the window.
pub fn all_signal_test(window: &CorrelationWindow, k_hat: usize, cfg: &SystemConfig) -> bool {
    let head = &window.z[..k_hat - window.n_s];
    let n = window.lookback.len() + head.len();
    if n == 0 {
        return false;
    }
    let energy: f64 = window.lookback.iter().chain(head).map(|z| z * z).sum();
    energy / n as f64 > guard_threshold(window.sigma_n2, cfg.all_signal_threshold_sigma, n)
}
