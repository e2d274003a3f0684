use rand::Rng;

use crate::rng::stream;

/// Root mean square of integer chip errors.
pub fn rmse(errors: &[i64]) -> f64 {
    if errors.is_empty() {
        return 0.0;
    }
    let ss: f64 = errors.iter().map(|&e| (e * e) as f64).sum();
    (ss / errors.len() as f64).sqrt()
}

/// Percentile bootstrap interval for the RMSE at confidence `level`.
pub fn bootstrap_rmse_ci(errors: &[i64], resamples: usize, level: f64, seed: u64) -> (f64, f64) {
    if errors.is_empty() {
        return (0.0, 0.0);
    }
    let mut rng = stream(seed);
    let n = errors.len();
    let mut stats: Vec<f64> = (0..resamples)
        .map(|_| {
            let ss: f64 = (0..n)
                .map(|_| {
                    let e = errors[rng.random_range(0..n)];
                    (e * e) as f64
                })
                .sum();
            (ss / n as f64).sqrt()
        })
        .collect();
    stats.sort_by(f64::total_cmp);
    let alpha = (1.0 - level) / 2.0;
    let idx = |q: f64| ((q * (resamples - 1) as f64).round() as usize).min(resamples - 1);
    (stats[idx(alpha)], stats[idx(1.0 - alpha)])
}
