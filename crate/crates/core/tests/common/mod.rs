//! Independent reference routines for the test suites. Nothing here calls
//! into the crate's numerical code.

#![allow(dead_code)]

use std::path::PathBuf;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("..")
        .join("core")
        .join("tests")
        .join("data")
        .join(name)
}

pub fn load_json(name: &str) -> serde_json::Value {
    let text = std::fs::read_to_string(data_path(name)).expect("oracle table present");
    serde_json::from_str(&text).expect("oracle table parses")
}

// ---------------------------------------------------------------------------
// double-double arithmetic

#[derive(Debug, Clone, Copy)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    fn norm(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Dd { hi: h, lo: l }
    }

    pub fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        Dd::norm(s, e + self.lo + o.lo)
    }

    pub fn mul_f(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        Dd::norm(p, e + self.lo * b)
    }

    pub fn div_f(self, b: f64) -> Dd {
        let q1 = self.hi / b;
        let r = self.add(Dd::new(q1).mul_f(-b));
        let q2 = r.hi / b;
        Dd::norm(q1, q2)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `M(a, b, x)` for any real `a`, `b > 0`, and moderate `|x|` by direct
/// summation in double-double arithmetic.
pub fn kummer_dd(a: f64, b: f64, x: f64) -> f64 {
    let mut term = Dd::new(1.0);
    let mut sum = Dd::new(1.0);
    let mut n = 0.0;
    loop {
        term = term.mul_f(a + n).mul_f(x).div_f(b + n).div_f(n + 1.0);
        sum = sum.add(term);
        n += 1.0;
        if n > x.abs() + 10.0 && term.hi.abs() < 1e-34 * sum.hi.abs() {
            break;
        }
        if term.hi == 0.0 {
            break;
        }
    }
    sum.to_f64()
}

/// `ln M(a, b, x)` for `a, b > 0`, `x >= 0`, summing term logarithms with a
/// log-sum-exp so nothing overflows.
pub fn ln_kummer_logsum(a: f64, b: f64, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let mut logs = vec![0.0f64];
    let mut lt = 0.0;
    let mut peak = 0.0f64;
    let mut n = 0.0;
    loop {
        lt += ((a + n) / (b + n)).ln() + (x / (n + 1.0)).ln();
        logs.push(lt);
        peak = peak.max(lt);
        n += 1.0;
        if n > x + 10.0 && lt < peak - 45.0 {
            break;
        }
    }
    // Kahan-summed scaled terms
    let mut sum = 0.0;
    let mut c = 0.0;
    for l in &logs {
        let y = (l - peak).exp() - c;
        let t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    peak + sum.ln()
}

// ---------------------------------------------------------------------------
// quadrature

/// Adaptive Gauss–Kronrod (7/15) integration.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    gk_adaptive(f, a, b, tol, 0)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let dx = h * XGK[i];
        let s = f(c - dx) + f(c + dx);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

fn gk_adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    let (k, err) = gk15(f, a, b);
    if err <= tol || depth > 40 {
        return k;
    }
    let m = 0.5 * (a + b);
    gk_adaptive(f, a, m, tol / 2.0, depth + 1) + gk_adaptive(f, m, b, tol / 2.0, depth + 1)
}

// ---------------------------------------------------------------------------
// distributions

pub fn erf(x: f64) -> f64 {
    if x < 0.0 {
        return -erf(-x);
    }
    if x < 3.0 {
        // Maclaurin series
        let mut sum = x;
        let mut term = x;
        let x2 = x * x;
        let mut n = 0.0;
        loop {
            n += 1.0;
            term *= -x2 / n;
            let add = term / (2.0 * n + 1.0);
            sum += add;
            if add.abs() < 1e-17 * sum.abs() {
                break;
            }
        }
        sum * 2.0 / std::f64::consts::PI.sqrt()
    } else {
        1.0 - erfc_cf(x)
    }
}

/// Continued fraction for erfc, good for x >= 3.
fn erfc_cf(x: f64) -> f64 {
    let mut f = 0.0;
    for k in (1..60).rev() {
        f = (k as f64 / 2.0) / (x + f);
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
}

pub fn normal_cdf(x: f64, var: f64) -> f64 {
    0.5 * (1.0 + erf(x / (2.0 * var).sqrt()))
}

/// Two-sided Kolmogorov–Smirnov statistic of `samples` against `cdf`.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &mut [f64], cdf: F) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in samples.iter().enumerate() {
        let c = cdf(x);
        d = d.max((i as f64 + 1.0) / n - c).max(c - i as f64 / n);
    }
    d
}

/// Asymptotic KS critical value `D * sqrt(n)` at level 0.01.
pub const KS_CRIT_01: f64 = 1.627_6;

/// Upper-0.01 chi-square quantile by the Wilson–Hilferty approximation.
pub fn chi2_crit_01(df: f64) -> f64 {
    let z = 2.326_347_874;
    let t = 2.0 / (9.0 * df);
    df * (1.0 - t + z * t.sqrt()).powi(3)
}

// ---------------------------------------------------------------------------
// model oracles

/// Closed-form `E[z²], E[z⁴], E[z⁶]` for `z = N2 √E d|α| 1{present} + η`.
pub fn population_moments(p: f64, m: f64, omega: f64, s2: f64, e: f64, n2: f64) -> [f64; 3] {
    let c = e * n2 * n2;
    let a2 = omega;
    let a4 = omega * omega * (m + 1.0) / m;
    let a6 = omega.powi(3) * (m + 1.0) * (m + 2.0) / (m * m);
    [
        s2 + c * p * a2,
        3.0 * s2 * s2 + 6.0 * s2 * c * p * a2 + c * c * p * a4,
        15.0 * s2.powi(3)
            + 45.0 * s2 * s2 * c * p * a2
            + 15.0 * s2 * c * c * p * a4
            + c.powi(3) * p * a6,
    ]
}

/// Lanczos (g = 7, n = 9) Gamma function, independent of the crate's
/// log-gamma.
pub fn gamma_lanczos(x: f64) -> f64 {
    const G: f64 = 7.0;
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma_lanczos(1.0 - x));
    }
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + G + 0.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// `p1(z)` and `p2(z)` evaluated literally from their defining formulas,
/// with `M` summed directly.
pub fn densities_direct(z: f64, p_m_omega: (f64, f64), s2: f64, e: f64, n2: f64) -> (f64, f64) {
    let (m, omega) = p_m_omega;
    let p1 = (-z * z / (2.0 * s2)).exp() / (2.0 * std::f64::consts::PI * s2).sqrt();
    let nu1 = 2.0 * std::f64::consts::PI.sqrt() * gamma_lanczos(2.0 * m)
        / (gamma_lanczos(m) * gamma_lanczos(m + 0.5))
        * (4.0 + 2.0 * e * n2 * n2 * omega / (m * s2)).powf(-m);
    let nu2 = 2.0 * s2 * (1.0 + 2.0 * m * s2 / (e * n2 * n2 * omega));
    let phi = kummer_dd(m, 0.5, z * z / nu2);
    (p1, nu1 * p1 * phi)
}

/// The log-likelihood-ratio sum for a change at `z[0]`, from the densities.
pub fn score_direct(z: &[f64], theta: (f64, f64, f64), s2: f64, e: f64, n2: f64) -> f64 {
    let (p, m, omega) = theta;
    let (p1, p2) = densities_direct(z[0], (m, omega), s2, e, n2);
    let mut s = (p2 / p1).ln();
    for &zi in &z[1..] {
        let (p1, p2) = densities_direct(zi, (m, omega), s2, e, n2);
        s += ((p * p2 + (1.0 - p) * p1) / p1).ln();
    }
    s
}

/// Regularized upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    let ln_ga = gamma_lanczos(a).ln();
    if x < a + 1.0 {
        let mut sum = 1.0 / a;
        let mut del = sum;
        let mut ap = a;
        for _ in 0..10_000 {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if del.abs() < sum.abs() * 1e-16 {
                break;
            }
        }
        1.0 - sum * (-x + a * x.ln() - ln_ga).exp()
    } else {
        // Lentz continued fraction
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..10_000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x + a * x.ln() - ln_ga).exp() * h
    }
}
