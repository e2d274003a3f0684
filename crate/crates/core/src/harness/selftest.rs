//! Quick invariant checks runnable from the command line. The full suites
//! live in the test targets; these are fast spot checks of the same
//! properties on a shipped binary.

use serde::Serialize;

use super::sweep::run_trial;
use super::timing::acquisition_time;
use crate::estimator::{ln_nu1, mm_from_moments, GllrModel};
use crate::model::{default_paper_config, SystemConfig, TapStatistics};
use crate::specfun::log_kummer;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn run_all() -> Vec<Check> {
    vec![
        kummer_vs_series(),
        mm_round_trip(),
        nu1_duplication(),
        density_normalization(),
        noiseless_recovery(),
        determinism(),
        timing_budget(),
    ]
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check {
        name,
        passed: worst <= tol,
        detail: format!("worst deviation {worst:.3e} (tolerance {tol:.0e})"),
    }
}

/// `ln M(a, b, x)` by summing the series terms in the log domain.
fn log_series(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut logs = vec![0.0];
    let mut lt = 0.0;
    let mut n = 0.0;
    loop {
        lt += ((a + n) / (b + n)).ln() + (x / (n + 1.0)).ln();
        logs.push(lt);
        n += 1.0;
        if n > x + 10.0 && lt < logs.iter().cloned().fold(f64::MIN, f64::max) - 40.0 {
            break;
        }
    }
    let hi = logs.iter().cloned().fold(f64::MIN, f64::max);
    hi + logs.iter().map(|l| (l - hi).exp()).sum::<f64>().ln()
}

fn kummer_vs_series() -> Check {
    let mut worst: f64 = 0.0;
    for a in [0.5, 1.0, 2.0, 5.0] {
        for x in [0.0, 0.1, 1.0, 10.0, 100.0, 1000.0] {
            let got = log_kummer(a, 0.5, x).unwrap_or(f64::NAN);
            let err = (got - log_series(a, 0.5, x)).abs();
            worst = worst.max(if err.is_nan() { f64::INFINITY } else { err });
        }
    }
    check("kummer-vs-series", worst, 1e-9)
}

fn mm_round_trip() -> Check {
    let mut worst: f64 = 0.0;
    for p in [0.1, 0.5, 1.0] {
        for m in [0.5, 1.0, 2.0, 5.0] {
            for omega in [0.5, 3.0] {
                let (s2, c) = (1.0, 1.0);
                let a4 = omega * omega * (m + 1.0) / m;
                let a6 = omega * omega * omega * (m + 1.0) * (m + 2.0) / (m * m);
                let mu2 = s2 + c * p * omega;
                let mu4 = 3.0 * s2 * s2 + 6.0 * s2 * c * p * omega + c * c * p * a4;
                let mu6 = 15.0 * s2 * s2 * s2
                    + 45.0 * s2 * s2 * c * p * omega
                    + 15.0 * s2 * c * c * p * a4
                    + c * c * c * p * a6;
                let fit = mm_from_moments(mu2, mu4, mu6, s2, 1.0, 1).theta;
                worst = worst
                    .max((fit.p - p).abs() / p)
                    .max((fit.m - m).abs() / m)
                    .max((fit.omega - omega).abs() / omega);
            }
        }
    }
    check("mm-population-round-trip", worst, 1e-9)
}

fn nu1_duplication() -> Check {
    let worst = [0.5, 1.0, 2.0, 5.0, 17.0]
        .iter()
        .map(|&m| ln_nu1(m, 0.0).exp() - 1.0)
        .fold(0.0f64, |w, d| w.max(d.abs()));
    check("nu1-zero-signal", worst, 1e-12)
}

fn density_normalization() -> Check {
    let mut worst: f64 = 0.0;
    for m in [0.5, 2.0, 5.0] {
        for snr in [0.1, 10.0, 100.0] {
            let theta = TapStatistics {
                p: 1.0,
                m,
                omega: snr,
            };
            let model = GllrModel::new(theta, 1.0, 1.0, 1);
            let half = 12.0 * (1.0 + snr).sqrt();
            let n = 20_000;
            let h = 2.0 * half / n as f64;
            let mut total = 0.0;
            for i in 0..=n {
                let z = -half + i as f64 * h;
                let w = if i == 0 || i == n {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                total += w * model.ln_p2(z).exp();
            }
            worst = worst.max((total * h / 3.0 - 1.0).abs());
        }
    }
    check("p2-integrates-to-one", worst, 1e-6)
}

fn noiseless_recovery() -> Check {
    let cfg = default_paper_config();
    let theta = TapStatistics::default();
    let misses = (0..5)
        .filter(|&s| run_trial(&cfg, &theta, 150.0, 1000 + s).error_chips != 0)
        .count();
    Check {
        name: "noiseless-recovery",
        passed: misses == 0,
        detail: format!("{misses} of 5 noiseless trials missed the first path"),
    }
}

fn determinism() -> Check {
    let cfg = default_paper_config();
    let theta = TapStatistics::default();
    let a = run_trial(&cfg, &theta, 12.0, 99);
    let b = run_trial(&cfg, &theta, 12.0, 99);
    Check {
        name: "seeded-determinism",
        passed: a == b,
        detail: format!("k_hat {} vs {}", a.k_hat, b.k_hat),
    }
}

fn timing_budget() -> Check {
    let cfg = SystemConfig {
        tail_extension_chips: 0,
        ..default_paper_config()
    };
    let t = acquisition_time(&cfg);
    check("acquisition-time", (t - 922.5).abs(), 1e-9)
}
