//! Closed-form values at `n = 0` from Jacobi elliptic and theta functions,
//! parametrized by `lambda = sin x`, `z = 2 K(t) x / pi`, and their
//! small-`lambda` expansions.

use crate::error::{Error, Result};
use crate::specfun::{elliptic_complete, jacobi_suite, nome, theta_q};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// `(x, z)` for a given `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambdaCoordinates {
    pub x: f64,
    pub z: f64,
}

impl LambdaCoordinates {
    pub fn new(t: f64, lambda: f64) -> Result<Self> {
        let (k, _) = elliptic_complete(t)?;
        let x = lambda.asin();
        Ok(Self { x, z: 2.0 * k * x / PI })
    }
}

/// Reference values at one `(t, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExactValues {
    pub i1_over_i0: f64,
    /// `+inf` at `lambda = 1`.
    pub i0_over_iminus1: f64,
    pub r0: f64,
    pub rbar0: f64,
    pub i0_low: f64,
    pub i0_high: f64,
}

/// Selector for [`lambda_series`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactQuantity {
    I1OverI0,
    I0OverIminus1,
    R0,
    Rbar0,
    I0Low,
    I0High,
}

impl ExactValues {
    pub fn get(&self, which: ExactQuantity) -> f64 {
        match which {
            ExactQuantity::I1OverI0 => self.i1_over_i0,
            ExactQuantity::I0OverIminus1 => self.i0_over_iminus1,
            ExactQuantity::R0 => self.r0,
            ExactQuantity::Rbar0 => self.rbar0,
            ExactQuantity::I0Low => self.i0_low,
            ExactQuantity::I0High => self.i0_high,
        }
    }
}

/// Exact values for `t` in `(0,1)`, `lambda` in `[0,1]`.
///
/// ```
/// use isingff::elliptic_exact::exact_values;
/// let v = exact_values(0.4, 1.0).unwrap();
/// assert!((v.r0 - 1.0).abs() < 1e-14 && (v.i0_low - 1.0).abs() < 1e-12);
/// ```
pub fn exact_values(t: f64, lambda: f64) -> Result<ExactValues> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t = {t} outside (0,1)")));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::Domain(format!("lambda = {lambda} outside [0,1]")));
    }
    values_at(t, lambda)
}

/// As [`exact_values`] on `[-1, 1]`; the formulas are analytic through 0.
fn values_at(t: f64, lambda: f64) -> Result<ExactValues> {
    let (k, e) = elliptic_complete(t)?;
    let c = LambdaCoordinates::new(t, lambda)?;
    let q = nome(t)?;
    let pre = (1.0 - t).powf(0.25);
    let th2 = theta_q(2, 0.0, q)?;
    let th3 = theta_q(3, 0.0, q)?;
    let th4 = theta_q(4, 0.0, q)?;
    let i0_low = pre * theta_q(4, c.x, q)? / th4;
    let i0_high = pre * th3 * theta_q(1, c.x, q)? / (th2 * th4);
    if lambda == 1.0 {
        // sec x diverges while cn dn + sn Z vanishes linearly in x - pi/2
        return Ok(ExactValues {
            i1_over_i0: 2.0 * e / PI,
            i0_over_iminus1: f64::INFINITY,
            r0: 1.0,
            rbar0: 1.0,
            i0_low,
            i0_high,
        });
    }
    let _ = (k, FRAC_PI_2);
    let j = jacobi_suite(c.z, t)?;
    let b = j.cn * j.dn + j.sn * j.zeta;
    let cx = c.x.cos();
    let rbar0 = if j.sn == 0.0 { 0.0 } else { (1.0 - b * b) / j.sn };
    Ok(ExactValues {
        i1_over_i0: b / cx,
        i0_over_iminus1: 1.0 / (cx * b),
        r0: j.sn,
        rbar0,
        i0_low,
        i0_high,
    })
}

/// Largest coefficient index served by [`lambda_series`].
pub const MAX_SERIES_ORDER: usize = 4;
const BASE_STEP: f64 = 0.1;
const LEVELS: usize = 5;

/// Central difference for the `k`-th derivative at 0 with an even error
/// expansion in `h`.
fn central(k: usize, h: f64, f: &dyn Fn(f64) -> Result<f64>) -> Result<f64> {
    Ok(match k {
        0 => f(0.0)?,
        1 => (f(h)? - f(-h)?) / (2.0 * h),
        2 => (f(h)? - 2.0 * f(0.0)? + f(-h)?) / (h * h),
        3 => (f(2.0 * h)? - 2.0 * f(h)? + 2.0 * f(-h)? - f(-2.0 * h)?) / (2.0 * h.powi(3)),
        4 => (f(2.0 * h)? - 4.0 * f(h)? + 6.0 * f(0.0)? - 4.0 * f(-h)? + f(-2.0 * h)?) / h.powi(4),
        _ => return Err(Error::Parameter(format!("no stencil for derivative order {k}"))),
    })
}

/// Taylor coefficients `c_0..c_order` in `lambda` at 0, from central
/// differences with steps `0.1 / 2^i` extrapolated by Richardson.
///
/// ```
/// use isingff::elliptic_exact::{lambda_series, ExactQuantity};
/// let c = lambda_series(ExactQuantity::R0, 0.3, 1).unwrap();
/// let k = isingff::specfun::elliptic_complete(0.3).unwrap().0;
/// assert!((c[1] - 2.0 * k / std::f64::consts::PI).abs() < 1e-9);
/// ```
pub fn lambda_series(which: ExactQuantity, t: f64, order: usize) -> Result<Vec<f64>> {
    if order > MAX_SERIES_ORDER {
        return Err(Error::OrderBudget { p: order, max: MAX_SERIES_ORDER });
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::Domain(format!("t = {t} outside (0,1)")));
    }
    let f = |l: f64| -> Result<f64> { Ok(values_at(t, l)?.get(which)) };
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut fact = 1.0;
    for k in 0..=order {
        if k > 0 {
            fact *= k as f64;
        }
        if k == 0 {
            coeffs.push(f(0.0)?);
            continue;
        }
        let mut table: Vec<Vec<f64>> = Vec::with_capacity(LEVELS);
        for i in 0..LEVELS {
            let h = BASE_STEP / 2f64.powi(i as i32);
            let mut row = vec![central(k, h, &f)?];
            for j in 1..=i {
                let p = 4f64.powi(j as i32);
                let v = row[j - 1] + (row[j - 1] - table[i - 1][j - 1]) / (p - 1.0);
                row.push(v);
            }
            table.push(row);
        }
        let best = table[LEVELS - 1][LEVELS - 1];
        let prev = table[LEVELS - 2][LEVELS - 2];
        if (best - prev).abs() > 1e-8 * best.abs().max(1.0) {
            log::warn!("lambda^{k} coefficient of {which:?} changed by {:e} in the last extrapolation", (best - prev).abs());
        }
        coeffs.push(best / fact);
    }
    Ok(coeffs)
}
