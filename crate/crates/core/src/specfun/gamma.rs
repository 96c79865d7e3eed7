//! Gamma function, reciprocal gamma and Pochhammer symbols.

use crate::scalar::Real;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
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

/// `sin(pi x)` with exact zeros at the integers.
pub fn sin_pi<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    let mut r = x % two;
    if r < T::zero() {
        r = r + two;
    }
    if r == T::zero() || r == T::one() {
        return T::zero();
    }
    if r > T::one() {
        -(T::PI() * (r - T::one())).sin()
    } else {
        (T::PI() * r).sin()
    }
}

fn is_nonpositive_integer<T: Real>(x: T) -> bool {
    x <= T::zero() && x == x.round()
}

fn lanczos_sum<T: Real>(x: T) -> T {
    // x >= 0.5 after reflection; series in 1/(x + i)
    let xm1 = x - T::one();
    let mut acc = T::lit(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc = acc + T::lit(c) / (xm1 + T::int(i as i64));
    }
    acc
}

/// Gamma function. Poles return infinity.
pub fn gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::infinity();
    }
    if x == x.round() && x <= T::lit(30.0) {
        let mut p = T::one();
        let mut k = T::lit(2.0);
        while k < x {
            p = p * k;
            k = k + T::one();
        }
        return p;
    }
    let half = T::lit(0.5);
    if x < half {
        return T::PI() / (sin_pi(x) * gamma(T::one() - x));
    }
    let tt = x - half + T::lit(LANCZOS_G);
    let sqrt_2pi = (T::lit(2.0) * T::PI()).sqrt();
    if x > T::lit(140.0) {
        // avoid overflow of tt^(x-1/2) before the exponential is applied
        let hp = tt.powf((x - half) / T::lit(2.0));
        return sqrt_2pi * hp * (hp * (-tt).exp()) * lanczos_sum(x);
    }
    sqrt_2pi * tt.powf(x - half) * (-tt).exp() * lanczos_sum(x)
}

/// Natural logarithm of `|Gamma(x)|`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        return T::infinity();
    }
    let half = T::lit(0.5);
    if x < half {
        return (T::PI() / sin_pi(x).abs()).ln() - ln_gamma(T::one() - x);
    }
    let tt = x - half + T::lit(LANCZOS_G);
    half * (T::lit(2.0) * T::PI()).ln() + (x - half) * tt.ln() - tt + lanczos_sum(x).ln()
}

/// Reciprocal gamma `1/Gamma(x)`, entire; exactly zero at the poles.
pub fn rgamma<T: Real>(x: T) -> T {
    if is_nonpositive_integer(x) {
        T::zero()
    } else {
        T::one() / gamma(x)
    }
}

/// Pochhammer symbol `(a)_k` for any integer `k`, with
/// `(a)_{-m} = 1/((a-1)(a-2)...(a-m))`.
pub fn poch<T: Real>(a: T, k: i64) -> T {
    let mut p = T::one();
    if k >= 0 {
        for j in 0..k {
            p = p * (a + T::int(j));
        }
    } else {
        for j in 1..=(-k) {
            p = p / (a - T::int(j));
        }
    }
    p
}

/// `(a)_k / k!` for `k >= 0`, accumulated as a product of ratios so it
/// stays finite where the factors separately overflow.
pub fn poch_over_factorial<T: Real>(a: T, k: u64) -> T {
    let mut p = T::one();
    for j in 0..k {
        let jj = T::int(j as i64);
        p = p * (a + jj) / (jj + T::one());
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_integers() {
        let sp = std::f64::consts::PI.sqrt();
        assert!((gamma(0.5_f64) - sp).abs() < 1e-14);
        assert!((gamma(1.5_f64) - sp / 2.0).abs() < 1e-14);
        assert!((gamma(-0.5_f64) + 2.0 * sp).abs() < 1e-13);
        assert_eq!(gamma(5.0_f64), 24.0);
    }

    #[test]
    fn gamma_large_argument_matches_log_gamma() {
        let x = 150.3_f64;
        let rel = (gamma(x).ln() - ln_gamma(x)).abs() / ln_gamma(x);
        assert!(rel < 1e-14);
    }

    #[test]
    fn reciprocal_gamma_poles() {
        assert_eq!(rgamma(0.0_f64), 0.0);
        assert_eq!(rgamma(-3.0_f64), 0.0);
        assert!((rgamma(3.0_f64) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_negative_index() {
        // (1/2)_{-1} = 1/(-1/2)
        assert!((poch(0.5_f64, -1) + 2.0).abs() < 1e-15);
        assert!((poch(0.5_f64, 3) - 0.5 * 1.5 * 2.5).abs() < 1e-15);
        let r = poch_over_factorial(0.5_f64, 3);
        assert!((r - 0.5 * 1.5 * 2.5 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn single_precision_instantiation() {
        assert!((gamma(4.5_f32) - 11.631_728).abs() < 1e-4);
    }
}
