//! Complete and incomplete elliptic integrals and the Jacobi functions.
//!
//! Everything is in the parameter convention `m = k^2`, so that
//! `K(m) = (pi/2) 2F1(1/2,1/2;1;m)`. No modulus-convention entry points exist.

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_AGM: usize = 64;

/// `(K(m), E(m))` by the arithmetic-geometric mean, `0 <= m < 1`.
///
/// ```
/// use isingff::specfun::elliptic_complete;
/// let (k, e) = elliptic_complete(0.0_f64).unwrap();
/// assert_eq!((k, e), (std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2));
/// ```
pub fn elliptic_complete<T: Real>(m: T) -> Result<(T, T)> {
    if m.is_nan() || m < T::zero() {
        return Err(Error::Domain(format!("elliptic parameter m = {m} < 0")));
    }
    if m >= T::one() {
        return Err(Error::Divergent(format!("K(m) diverges at m = {m}")));
    }
    let half = T::lit(0.5);
    let mut a = T::one();
    let mut b = (T::one() - m).sqrt();
    let mut pow = half;
    let mut sum = half * m;
    for _ in 0..MAX_AGM {
        let c = half * (a - b);
        if c.abs() <= T::epsilon() * a {
            break;
        }
        let an = half * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow = pow + pow;
        sum = sum + pow * c * c;
    }
    let k = T::FRAC_PI_2() / a;
    Ok((k, k * (T::one() - sum)))
}

/// Carlson's symmetric integral `R_F(x,y,z)`.
pub fn carlson_rf<T: Real>(x: T, y: T, z: T) -> T {
    let (mut x, mut y, mut z) = (x, y, z);
    let quarter = T::lit(0.25);
    let third = T::one() / T::lit(3.0);
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = quarter * (x + lam);
        y = quarter * (y + lam);
        z = quarter * (z + lam);
        let ave = third * (x + y + z);
        let dx = (ave - x) / ave;
        let dy = (ave - y) / ave;
        let dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < T::epsilon().powf(T::lit(1.0 / 6.0)) {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            let s = T::one() + (T::lit(1.0 / 24.0) * e2 - T::lit(0.1) - T::lit(3.0 / 44.0) * e3) * e2
                + T::lit(1.0 / 14.0) * e3;
            return s / ave.sqrt();
        }
    }
}

/// Carlson's degenerate integral `R_D(x,y,z)`.
pub fn carlson_rd<T: Real>(x: T, y: T, z: T) -> T {
    let (mut x, mut y, mut z) = (x, y, z);
    let quarter = T::lit(0.25);
    let mut sum = T::zero();
    let mut fac = T::one();
    loop {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        sum = sum + fac / (sz * (z + lam));
        fac = quarter * fac;
        x = quarter * (x + lam);
        y = quarter * (y + lam);
        z = quarter * (z + lam);
        let ave = T::lit(0.2) * (x + y + T::lit(3.0) * z);
        let dx = (ave - x) / ave;
        let dy = (ave - y) / ave;
        let dz = (ave - z) / ave;
        if dx.abs().max(dy.abs()).max(dz.abs()) < T::lit(0.6) * T::epsilon().powf(T::lit(1.0 / 6.0)) {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - T::lit(6.0) * eb;
            let ee = ed + ec + ec;
            let c1 = T::lit(3.0 / 14.0);
            let c2 = T::lit(1.0 / 6.0);
            let c3 = T::lit(9.0 / 22.0);
            let c4 = T::lit(3.0 / 26.0);
            let c5 = T::lit(0.25 * 9.0 / 22.0);
            let c6 = T::lit(1.5 * 3.0 / 26.0);
            let s = T::one()
                + ed * (-c1 + c5 * ed - c6 * dz * ee)
                + dz * (c2 * ee + dz * (-c3 * ec + dz * c4 * ea));
            return T::lit(3.0) * sum + fac * s / (ave * ave.sqrt());
        }
    }
}

/// Incomplete integrals `(F(phi|m), E(phi|m))` for any real amplitude.
pub fn elliptic_incomplete<T: Real>(phi: T, m: T) -> Result<(T, T)> {
    let (kc, ec) = elliptic_complete(m)?;
    let j = (phi / T::PI()).round();
    let p0 = phi - j * T::PI();
    let (s, c) = p0.sin_cos();
    let q = T::one() - m * s * s;
    let rf = carlson_rf(c * c, q, T::one());
    let rd = carlson_rd(c * c, q, T::one());
    let f = s * rf;
    let e = s * rf - m * s * s * s * rd / T::lit(3.0);
    let two_j = j + j;
    Ok((two_j * kc + f, two_j * ec + e))
}

/// Jacobi elliptic functions and the quantities built on them at a real
/// argument `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiSuite<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
    /// Amplitude, continuous and increasing in `z`.
    pub am: T,
    /// `E(am(z)|m)`.
    pub e_incomplete: T,
    /// Jacobi zeta `Z(z|m) = E(am z|m) - (E(m)/K(m)) z`.
    pub zeta: T,
}

/// Amplitude by descending Landen (AGM) transformation.
pub fn jacobi_am<T: Real>(u: T, m: T) -> Result<T> {
    if m.is_nan() || m < T::zero() || m >= T::one() {
        return Err(Error::Domain(format!("Jacobi parameter m = {m} outside [0,1)")));
    }
    if m == T::zero() {
        return Ok(u);
    }
    let half = T::lit(0.5);
    let mut a = vec![T::one()];
    let mut c = vec![m.sqrt()];
    let mut b = (T::one() - m).sqrt();
    for _ in 0..MAX_AGM {
        let ap = *a.last().unwrap();
        let cn = half * (ap - b);
        let an = half * (ap + b);
        b = (ap * b).sqrt();
        a.push(an);
        c.push(cn);
        if cn.abs() <= T::epsilon() * an {
            break;
        }
    }
    let nlev = a.len() - 1;
    let mut phi = T::lit(2f64.powi(nlev as i32)) * a[nlev] * u;
    for i in (1..=nlev).rev() {
        phi = half * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    Ok(phi)
}

/// `sn, cn, dn, am`, `E(am|m)` and `Z(z|m)`.
///
/// ```
/// use isingff::specfun::jacobi_suite;
/// let s = jacobi_suite(0.7_f64, 0.0).unwrap();
/// assert!((s.sn - 0.7f64.sin()).abs() < 1e-15 && s.dn == 1.0);
/// ```
pub fn jacobi_suite<T: Real>(z: T, m: T) -> Result<JacobiSuite<T>> {
    let am = jacobi_am(z, m)?;
    let (sn, cn) = am.sin_cos();
    let dn = (T::one() - m * sn * sn).sqrt();
    let (kc, ec) = elliptic_complete(m)?;
    let (_, e_inc) = elliptic_incomplete(am, m)?;
    Ok(JacobiSuite {
        sn,
        cn,
        dn,
        am,
        e_incomplete: e_inc,
        zeta: e_inc - ec / kc * z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp2f1;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn degenerate_parameter() {
        assert_eq!(elliptic_complete(0.0_f64).unwrap(), (FRAC_PI_2, FRAC_PI_2));
        assert!(matches!(elliptic_complete(1.0_f64), Err(Error::Divergent(_))));
        let s = jacobi_suite(1.2_f64, 0.0).unwrap();
        assert!((s.sn - 1.2f64.sin()).abs() < 1e-15);
        assert!((s.cn - 1.2f64.cos()).abs() < 1e-15);
        assert_eq!(s.dn, 1.0);
    }

    #[test]
    fn legendre_relation() {
        let m = 0.37_f64;
        let (k, e) = elliptic_complete(m).unwrap();
        let (kp, ep) = elliptic_complete(1.0 - m).unwrap();
        assert!((e * kp + ep * k - k * kp - FRAC_PI_2).abs() < 1e-13);
    }

    #[test]
    fn complete_integrals_match_gauss_series() {
        for i in 1..10 {
            let m = i as f64 / 10.0;
            let (k, e) = elliptic_complete(m).unwrap();
            assert!((2.0 / PI * k - hyp2f1(0.5, 0.5, 1.0, m).unwrap()).abs() < 1e-12);
            assert!((2.0 / PI * e - hyp2f1(-0.5, 0.5, 1.0, m).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn zeta_vanishes_at_quarter_period() {
        let m = 0.5_f64;
        let (k, _) = elliptic_complete(m).unwrap();
        let s = jacobi_suite(k, m).unwrap();
        assert!(s.zeta.abs() < 1e-14);
        assert!((s.sn - 1.0).abs() < 1e-14);
    }

    #[test]
    fn incomplete_at_quarter_turn_is_complete() {
        let m = 0.6_f64;
        let (k, e) = elliptic_complete(m).unwrap();
        let (f, ei) = elliptic_incomplete(FRAC_PI_2, m).unwrap();
        assert!((f - k).abs() < 1e-14 && (ei - e).abs() < 1e-14);
        let (f3, _) = elliptic_incomplete(3.0 * FRAC_PI_2, m).unwrap();
        assert!((f3 - 3.0 * k).abs() < 1e-13);
    }

    #[test]
    fn amplitude_inverts_incomplete_integral() {
        let m = 0.8_f64;
        let u = 1.9;
        let am = jacobi_am(u, m).unwrap();
        let (f, _) = elliptic_incomplete(am, m).unwrap();
        assert!((f - u).abs() < 1e-13);
    }

    #[test]
    fn cn_expansion_near_quarter_period() {
        // cn ~ -(2/pi) sqrt(1-t) K (x - pi/2) near x = pi/2
        let t = 0.4_f64;
        let (k, _) = elliptic_complete(t).unwrap();
        let dx = 1e-5;
        let x = FRAC_PI_2 + dx;
        let s = jacobi_suite(2.0 * k / PI * x, t).unwrap();
        let lin = -(2.0 / PI) * (1.0 - t).sqrt() * k * dx;
        assert!((s.cn - lin).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn pythagorean_identities(z in -6.0f64..6.0, m in 0.0f64..0.99) {
            let s = jacobi_suite(z, m).unwrap();
            prop_assert!((s.sn * s.sn + s.cn * s.cn - 1.0).abs() < 1e-13);
            prop_assert!((s.dn * s.dn + m * s.sn * s.sn - 1.0).abs() < 1e-13);
        }

        #[test]
        fn addition_of_quarter_period(z in -2.0f64..2.0, m in 0.05f64..0.95) {
            // sn(z + K) = cn z / dn z
            let (k, _) = elliptic_complete(m).unwrap();
            let a = jacobi_suite(z + k, m).unwrap();
            let b = jacobi_suite(z, m).unwrap();
            prop_assert!((a.sn - b.cn / b.dn).abs() < 1e-12);
        }
    }
}
