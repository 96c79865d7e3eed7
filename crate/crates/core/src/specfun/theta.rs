//! Jacobi theta functions at a real argument with nome from the parameter.

use super::elliptic::elliptic_complete;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Nome `q = exp(-pi K(1-m)/K(m))`, `0 < m < 1`.
pub fn nome<T: Real>(m: T) -> Result<T> {
    if !(m > T::zero() && m < T::one()) {
        return Err(Error::Domain(format!("nome needs 0 < m < 1, got {m}")));
    }
    let (k, _) = elliptic_complete(m)?;
    let (kp, _) = elliptic_complete(T::one() - m)?;
    Ok((-T::PI() * kp / k).exp())
}

/// `theta_nu(x | q(m))` for `nu` in `1..=4`, series cut once `q^(...) < 1e-17`.
///
/// ```
/// use isingff::specfun::theta_nome;
/// let m = 0.3_f64;
/// let t2 = theta_nome(2, 0.0, m).unwrap();
/// let t3 = theta_nome(3, 0.0, m).unwrap();
/// let t4 = theta_nome(4, 0.0, m).unwrap();
/// assert!((t2.powi(4) + t4.powi(4) - t3.powi(4)).abs() < 1e-12);
/// ```
pub fn theta_nome<T: Real>(nu: u8, x: T, m: T) -> Result<T> {
    let q = nome(m)?;
    theta_q(nu, x, q)
}

/// Theta function with an explicit nome `0 <= q < 1`.
pub fn theta_q<T: Real>(nu: u8, x: T, q: T) -> Result<T> {
    if !(q >= T::zero() && q < T::one()) {
        return Err(Error::Domain(format!("nome q = {q} outside [0,1)")));
    }
    let cut = T::lit(1e-17);
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let lq = q.ln();
    match nu {
        1 | 2 => {
            let mut s = T::zero();
            for n in 0..10_000 {
                let nn = T::int(n);
                let w = ((nn + half) * (nn + half) * lq).exp();
                let arg = (two * nn + T::one()) * x;
                let sign = if nu == 1 && n % 2 == 1 { -T::one() } else { T::one() };
                let trig = if nu == 1 { arg.sin() } else { arg.cos() };
                s = s + sign * w * trig;
                if w < cut {
                    break;
                }
            }
            Ok(two * s)
        }
        3 | 4 => {
            let mut s = T::one();
            for n in 1..10_000 {
                let nn = T::int(n);
                let w = (nn * nn * lq).exp();
                let sign = if nu == 4 && n % 2 == 1 { -T::one() } else { T::one() };
                s = s + two * sign * w * (two * nn * x).cos();
                if w < cut {
                    break;
                }
            }
            Ok(s)
        }
        _ => Err(Error::Parameter(format!("theta index {nu} not in 1..=4"))),
    }
}
