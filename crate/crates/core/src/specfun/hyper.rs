//! Gauss hypergeometric function and its regularized variant.
//!
//! Direct Maclaurin series on `-1/2 <= z < 1`, Pfaff map
//! `z -> z/(z-1)` for any `z < -1/2`, Gauss summation at `z = 1`.

use super::gamma::{gamma, poch, rgamma};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_TERMS: usize = 200_000;

fn nonpositive_int<T: Real>(x: T) -> Option<i64> {
    if x <= T::zero() && x == x.round() {
        x.to_i64()
    } else {
        None
    }
}

/// Maclaurin series; `c` must not be a pole of the terms actually summed.
fn series<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    let eps = T::epsilon();
    let mut term = T::one();
    let mut sum = T::one();
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kk = T::int(k as i64);
        term = term * (a + kk) * (b + kk) / ((c + kk) * (kk + T::one())) * z;
        sum = sum + term;
        if term == T::zero() {
            return Ok(sum);
        }
        let past_hump = kk > (a.abs() + b.abs() + c.abs());
        if past_hump && term.abs() <= eps * T::lit(0.25) * sum.abs() {
            small += 1;
            if small >= 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Accuracy(format!(
        "2F1({a},{b};{c};{z}) series did not converge"
    )))
}

/// Terminating polynomial when `a` is a non-positive integer `-m`.
fn terminating<T: Real>(m: i64, b: T, c: T, z: T) -> T {
    let a = -T::int(m);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 0..m {
        let kk = T::int(k);
        term = term * (a + kk) * (b + kk) / ((c + kk) * (kk + T::one())) * z;
        sum = sum + term;
    }
    sum
}

fn check_argument<T: Real>(z: T) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain(format!("2F1 argument {z} not finite")));
    }
    if z > T::one() {
        return Err(Error::Domain(format!("2F1 argument z = {z} > 1")));
    }
    Ok(())
}

/// Unregularized `2F1(a,b;c;z)` for `c` off the poles (or a terminating
/// series that stops before them), `z` in `(-1, 1]`.
fn eval<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    if z == T::zero() {
        return Ok(T::one());
    }
    if let Some(k) = nonpositive_int(c) {
        let m = [nonpositive_int(a), nonpositive_int(b)]
            .into_iter()
            .flatten()
            .map(|v| -v)
            .filter(|&m| m <= -k)
            .min();
        return match m {
            Some(m) => {
                let (aa, bb) = if nonpositive_int(a) == Some(-m) { (m, b) } else { (m, a) };
                Ok(terminating(aa, bb, c, z))
            }
            None => Err(Error::Domain(format!(
                "2F1 lower parameter c = {c} is a pole; use the regularized variant"
            ))),
        };
    }
    if z == T::one() {
        let s = c - a - b;
        if s <= T::zero() {
            return Err(Error::Divergent(format!("2F1 at z = 1 with c-a-b = {s}")));
        }
        return Ok(gamma(c) * gamma(s) * rgamma(c - a) * rgamma(c - b));
    }
    if z < -T::lit(0.5) {
        let w = z / (z - T::one());
        return Ok((T::one() - z).powf(-a) * series(a, c - b, c, w)?);
    }
    series(a, b, c, z)
}

/// Gauss hypergeometric function `2F1(a,b;c;z)`.
///
/// With `regularized` the result is divided by `Gamma(c)`, which is finite for
/// every real `c`; at `c = -k` the limit
/// `(a)_{k+1}(b)_{k+1} z^{k+1}/(k+1)! * 2F1(a+k+1,b+k+1;k+2;z)` is used.
///
/// ```
/// use isingff::specfun::gauss_2f1;
/// let v = gauss_2f1(1.0, 1.0, 2.0, 0.5, false).unwrap();
/// assert!((v - 2.0 * 2f64.ln()).abs() < 1e-14);
/// ```
pub fn gauss_2f1<T: Real>(a: T, b: T, c: T, z: T, regularized: bool) -> Result<T> {
    check_argument(z)?;
    if !regularized {
        return eval(a, b, c, z);
    }
    match nonpositive_int(c) {
        Some(ck) => {
            let k = -ck;
            if z == T::zero() {
                return Ok(T::zero());
            }
            let pre = poch(a, k + 1) * poch(b, k + 1) * z.powi((k + 1) as i32)
                / gamma(T::int(k + 2));
            if pre == T::zero() {
                return Ok(T::zero());
            }
            let one = T::one();
            let shift = T::int(k) + one;
            Ok(pre * eval(a + shift, b + shift, T::int(k + 2), z)?)
        }
        None => Ok(eval(a, b, c, z)? * rgamma(c)),
    }
}

/// `2F1(a,b;c;z)`.
pub fn hyp2f1<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    gauss_2f1(a, b, c, z, false)
}

/// Regularized `2F1(a,b;c;z)/Gamma(c)`.
pub fn hyp2f1_regularized<T: Real>(a: T, b: T, c: T, z: T) -> Result<T> {
    gauss_2f1(a, b, c, z, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn empty_series_at_origin() {
        assert_eq!(hyp2f1(0.3, -2.7, 1.9, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn logarithm_case() {
        let v = hyp2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-14);
        // -ln(1-z)/z at a Pfaff-mapped argument
        let z = -0.8_f64;
        let v = hyp2f1(1.0, 1.0, 2.0, z).unwrap();
        assert!((v + (1.0 - z).ln() / z).abs() < 1e-14);
    }

    #[test]
    fn kummer_relation_sample() {
        let (a, b, c, t) = (-0.5, 0.5, 2.0, 0.3);
        let lhs = hyp2f1(a, b, c, t).unwrap();
        let rhs = (1.0_f64 - t).powf(-a) * hyp2f1(a, c - b, c, t / (t - 1.0)).unwrap();
        assert!((lhs - rhs).abs() < 1e-14);
    }

    #[test]
    fn gauss_summation() {
        // 2F1(1/2,1/2;2;1) = Gamma(2)Gamma(1)/Gamma(3/2)^2 = 4/pi
        let v = hyp2f1(0.5, 0.5, 2.0, 1.0).unwrap();
        assert!((v - 4.0 / std::f64::consts::PI).abs() < 1e-14);
        assert!(matches!(hyp2f1(0.5, 0.5, 1.0, 1.0), Err(Error::Divergent(_))));
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(hyp2f1(0.5, 0.5, 1.0, 1.5), Err(Error::Domain(_))));
        assert!(hyp2f1(0.5, 0.5, 1.0, -3.0).is_ok());
        assert!(matches!(hyp2f1(0.5, 0.5, -1.0, 0.3), Err(Error::Domain(_))));
    }

    #[test]
    fn regularized_limit_through_pole() {
        // continuity of 2F1/Gamma(c) in c across c = -1
        let (a, b, z) = (0.5, 1.5, 0.4);
        let at: f64 = hyp2f1_regularized(a, b, -1.0, z).unwrap();
        let near_lo = hyp2f1_regularized(a, b, -1.0 - 1e-7, z).unwrap();
        let near_hi = hyp2f1_regularized(a, b, -1.0 + 1e-7, z).unwrap();
        assert!((at - 0.5 * (near_lo + near_hi)).abs() < 1e-9 * at.abs().max(1.0));
    }

    #[test]
    fn terminating_before_pole() {
        // a = -1 stops the series before the pole at c = -2
        let v: f64 = hyp2f1(-1.0, 2.0, -2.0, 0.25).unwrap();
        assert!((v - (1.0 + 0.25)).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn kummer_consistency(a in -1.5f64..1.5, b in -1.5f64..1.5, c in 0.3f64..3.0, t in 0.0f64..0.6) {
            let lhs = hyp2f1(a, b, c, t).unwrap();
            let rhs = (1.0 - t).powf(-a) * hyp2f1(a, c - b, c, t / (t - 1.0)).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-11 * lhs.abs().max(1.0));
        }

        #[test]
        fn euler_transformation(a in -1.0f64..1.0, b in -1.0f64..1.0, c in 0.5f64..3.0, z in -0.45f64..0.45) {
            let lhs = hyp2f1(a, b, c, z).unwrap();
            let rhs = (1.0 - z).powf(c - a - b) * hyp2f1(c - a, c - b, c, z).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12 * lhs.abs().max(1.0));
        }
    }
}
