//! Logarithm of Kummer's function `M(a, b, x) = 1F1(a; b; x)` for `a, b > 0`
//! and `x >= 0`, the regime in which every series term is positive.
//!
//! Small arguments use the defining power series summed with a running log
//! scale so nothing overflows. Large arguments use the asymptotic expansion
//!
//! ```text
//! M(a, b, x) ~ Γ(b)/Γ(a) e^x x^(a-b) Σ_k (b-a)_k (1-a)_k / (k! x^k)
//! ```
//!
//! which follows from the Kummer transformation `M(a,b,x) = e^x M(b-a,b,-x)`.
//! The expansion is truncated adaptively; when it has not converged to
//! working precision the series is used instead.

use super::gamma::ln_gamma;
use crate::error::{domain, Result};

/// Arguments above this try the asymptotic expansion first.
const ASYMPTOTIC_MIN_X: f64 = 30.0;
const ASYMPTOTIC_MAX_TERMS: usize = 64;
const TOL: f64 = 1e-17;
const RESCALE_AT: f64 = 1e200;

/// `ln 1F1(a; b; x)`.
///
/// Requires `a > 0`, `b > 0`, `x >= 0`; the log form stays finite for
/// arguments where the function itself overflows.
pub fn log_kummer(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(domain("log_kummer", b, "b > 0"));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain("log_kummer", a, "a > 0"));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain("log_kummer", x, "x >= 0"));
    }
    Ok(ln_kummer(a, b, x))
}

pub(crate) fn ln_kummer(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if a == b {
        return x;
    }
    if x > ASYMPTOTIC_MIN_X {
        if let Some(v) = asymptotic_scaled(a, b, x) {
            return x + v;
        }
    }
    series(a, b, x)
}

/// `ln M(a, b, x) - x`, accurate where both terms are huge.
pub(crate) fn ln_kummer_scaled(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 || a == b {
        return 0.0;
    }
    if x > ASYMPTOTIC_MIN_X {
        if let Some(v) = asymptotic_scaled(a, b, x) {
            return v;
        }
    }
    series(a, b, x) - x
}

pub(super) fn series(a: f64, b: f64, x: f64) -> f64 {
    let mut log_scale = 0.0;
    let mut sum = 1.0;
    let mut term = 1.0;
    let mut n = 0.0;
    loop {
        term *= (a + n) / (b + n) * x / (n + 1.0);
        sum += term;
        n += 1.0;
        if sum > RESCALE_AT {
            log_scale += sum.ln();
            term /= sum;
            sum = 1.0;
        }
        // Bound the remaining tail by a geometric series once the term ratio
        // has dropped below one for good.
        let growth = ((a + n) / (b + n)).max(1.0);
        let ratio = growth * x / (n + 1.0);
        if ratio < 1.0 && term * ratio / (1.0 - ratio) <= TOL * sum {
            break;
        }
    }
    log_scale + sum.ln()
}

#[cfg(test)]
fn asymptotic(a: f64, b: f64, x: f64) -> Option<f64> {
    asymptotic_scaled(a, b, x).map(|v| x + v)
}

fn asymptotic_scaled(a: f64, b: f64, x: f64) -> Option<f64> {
    let mut sum = 1.0;
    let mut term: f64 = 1.0;
    for k in 0..ASYMPTOTIC_MAX_TERMS {
        let kf = k as f64;
        let next = term * (b - a + kf) * (1.0 - a + kf) / ((kf + 1.0) * x);
        if next == 0.0 {
            break;
        }
        if next.abs() > term.abs() {
            return None;
        }
        sum += next;
        term = next;
        if term.abs() <= TOL * sum.abs() {
            break;
        }
        if k + 1 == ASYMPTOTIC_MAX_TERMS {
            return None;
        }
    }
    if sum <= 0.0 {
        return None;
    }
    Some((a - b) * x.ln() + ln_gamma(b) - ln_gamma(a) + sum.ln())
}
