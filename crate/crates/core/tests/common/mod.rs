//! Oracles shared by the integration tests.
#![allow(dead_code)]

use isingff::specfun::elliptic_complete;
use std::f64::consts::PI;

fn binom(k: usize, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (k - i) as f64 / (i + 1) as f64)
}

/// Taylor coefficient of order `k` at 0 from the half-step central
/// difference `h^-k sum_j (-1)^j C(k,j) f((k/2 - j) h)`, Richardson
/// extrapolated over three halvings.
pub fn taylor(f: &dyn Fn(f64) -> f64, k: usize, h0: f64) -> f64 {
    let diff = |h: f64| {
        let s: f64 = (0..=k)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * binom(k, j) * f((k as f64 / 2.0 - j as f64) * h)
            })
            .sum();
        s / h.powi(k as i32)
    };
    let mut prev: Vec<f64> = Vec::new();
    for i in 0..4 {
        let mut row = vec![diff(h0 / 2f64.powi(i))];
        for j in 1..=i as usize {
            let p = 4f64.powi(j as i32);
            let v = row[j - 1] + (row[j - 1] - prev[j - 1]) / (p - 1.0);
            row.push(v);
        }
        prev = row;
    }
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    prev[prev.len() - 1] / fact
}

pub fn odd(v: f64, l: f64) -> f64 {
    if l < 0.0 {
        -v
    } else {
        v
    }
}

/// Known lambda-expansion coefficients in terms of `K(t)`, `E(t)`; the
/// suffix is the power of `lambda`. `low_*`, `high_*` are for
/// `(1-t)^(-1/4) I_0`.
pub struct SeriesCoeffs {
    pub i1_2: f64,
    pub i1_4: f64,
    pub im1_2: f64,
    pub im1_4: f64,
    pub r0_1: f64,
    pub r0_3: f64,
    pub rbar0_1: f64,
    pub rbar0_3: f64,
    pub low_2: f64,
    pub low_4: f64,
    pub high_1: f64,
    pub high_3: f64,
    pub high_5: f64,
}

pub fn series_coeffs(t: f64) -> SeriesCoeffs {
    let (k, e) = elliptic_complete(t).unwrap();
    let p2 = PI * PI;
    let p4 = p2 * p2;
    SeriesCoeffs {
        i1_2: (p2 - 4.0 * (t - 1.0) * k * k - 8.0 * e * k) / (2.0 * p2),
        i1_4: (9.0 * p4 - 40.0 * p2 * (t - 1.0) * k * k + 16.0 * (t * t + 2.0 * t - 3.0) * k.powi(4)
            + e * (-80.0 * p2 * k + 64.0 * (t + 1.0) * k.powi(3)))
            / (24.0 * p4),
        im1_2: (p2 + 8.0 * e * k + 4.0 * (t - 1.0) * k * k) / (2.0 * p2),
        im1_4: (9.0 * p4 + 40.0 * p2 * (t - 1.0) * k * k + 384.0 * e * e * k * k
            + 16.0 * (5.0 * t * t - 14.0 * t + 9.0) * k.powi(4)
            + 16.0 * e * (5.0 * p2 * k + 4.0 * (5.0 * t - 7.0) * k.powi(3)))
            / (24.0 * p4),
        r0_1: 2.0 * k / PI,
        r0_3: k * (p2 - 4.0 * (t + 1.0) * k * k) / (3.0 * PI * p2),
        rbar0_1: (2.0 * (t - 1.0) * k + 4.0 * e) / PI,
        rbar0_3: (-24.0 * e * e * k + 2.0 * e * (p2 - 12.0 * (t - 1.0) * k * k)
            + (t - 1.0) * k * (p2 - 4.0 * (t - 1.0) * k * k))
            / (3.0 * PI * p2),
        low_2: 2.0 / p2 * k * (k - e),
        low_4: 16.0 / p4
            * k
            * (p2 / 24.0 * k - p2 / 24.0 * e + k.powi(3) / 8.0 + k * e * e / 8.0 - t * k.powi(3) / 12.0
                - k * k * e / 4.0),
        high_1: 2.0 * k / PI,
        high_3: 2.0 * k / PI * 4.0 / p2 * (p2 / 24.0 - (t - 2.0) * k * k / 6.0 - k * e / 2.0),
        high_5: 2.0 * k / PI * 16.0 / p4
            * (3.0 * p4 / 640.0 - p2 / 16.0 * k * e - (t - 2.0) * k * k * (p2 / 4.0 - k * e) / 12.0
                + k * k * e * e / 8.0
                + (t * t - 6.0 * t + 6.0) * k.powi(4) / 120.0),
    }
}
