//! Form factors `f^(2p)_{n,n}` (low phase) and `f^(2p+1)_{n,n}` (high phase)
//! as multiple integrals over `(0,1)`, and the lambda-extended series.
//!
//! The variables split into two groups carrying the Jacobi weights
//!
//! | phase | group `u` (size)              | group `v` (size)            |
//! |-------|-------------------------------|-----------------------------|
//! | low   | `x^(n+1/2)(1-x)^(-1/2)`, `p`  | `x^(n-1/2)(1-x)^(1/2)`, `p` |
//! | high  | `x^(n-1/2)(1-x)^(-1/2)`, `p+1`| `x^(n+1/2)(1-x)^(1/2)`, `p` |
//!
//! with the smooth remainder `(1-tu)^(-1/2) (1-tv)^(1/2) prod (1-t u v)^(-2)`
//! times the squared Vandermonde of each group. The tensor-product Gauss-Jacobi
//! sum is evaluated exactly: the sum over the `u` grid runs over increasing
//! index tuples, and for each tuple the `v`-grid sum is collapsed into a Gram
//! determinant by Cauchy-Binet.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::point::{ModelPoint, Phase};
use crate::quad::{gauss_jacobi_rule, QuadRule};
use crate::specfun::ln_gamma;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Default nodes per integration variable.
pub const DEFAULT_Q: usize = 24;
/// Default largest `p` served by the direct product rule.
pub const DEFAULT_MAX_ORDER: usize = 3;

/// One form factor with its quadrature-doubling error estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FormFactorValue {
    pub p: usize,
    pub value: f64,
    pub est_error: f64,
}

/// Power of `t` factored out of the integral.
pub fn leading_power(phase: Phase, n: u32, p: usize) -> f64 {
    let (n, p) = (n as f64, p as f64);
    match phase {
        Phase::Low => p * (n + p),
        Phase::High => n * (p + 0.5) + p * (p + 1.0),
    }
}

fn group_rules(phase: Phase, n: u32, q: usize) -> Result<(QuadRule<f64>, QuadRule<f64>)> {
    let n = n as f64;
    match phase {
        Phase::Low => Ok((gauss_jacobi_rule(q, -0.5, n + 0.5)?, gauss_jacobi_rule(q, 0.5, n - 0.5)?)),
        Phase::High => Ok((gauss_jacobi_rule(q, -0.5, n - 0.5)?, gauss_jacobi_rule(q, 0.5, n + 0.5)?)),
    }
}

fn group_sizes(phase: Phase, p: usize) -> (usize, usize) {
    match phase {
        Phase::Low => (p, p),
        Phase::High => (p + 1, p),
    }
}

/// Increasing `k`-tuples drawn from `0..q`.
fn increasing_tuples(q: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > q {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < q - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Monic shifted Legendre polynomials `P_0..P_{k-1}` at `x`.
fn monic_basis(x: f64, k: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(k);
    if k == 0 {
        return p;
    }
    p.push(1.0);
    if k > 1 {
        p.push(x - 0.5);
    }
    for j in 1..k.saturating_sub(1) {
        let jj = j as f64;
        let next = (x - 0.5) * p[j] - jj * jj / (4.0 * (4.0 * jj * jj - 1.0)) * p[j - 1];
        p.push(next);
    }
    p
}

/// The integral with `t^leading_power` removed, on `q` nodes per variable.
/// Analytic in `t`, so negative `t` (with `|t| < 1`) is accepted.
pub fn reduced_form_factor(phase: Phase, n: u32, p: usize, t: f64, q: usize) -> Result<f64> {
    if !(t.abs() < 1.0) {
        return Err(Error::Domain(format!("|t| = {} must be < 1", t.abs())));
    }
    if phase == Phase::Low && p == 0 {
        return Err(Error::Parameter("low-phase form factors start at p = 1".into()));
    }
    let (nu, nv) = group_sizes(phase, p);
    let (ru, rv) = group_rules(phase, n, q)?;
    let fu: Vec<f64> = ru.nodes.iter().zip(&ru.weights).map(|(&x, &w)| w / (1.0 - t * x).sqrt()).collect();
    let gv: Vec<f64> = rv.nodes.iter().zip(&rv.weights).map(|(&x, &w)| w * (1.0 - t * x).sqrt()).collect();
    let coupling: Vec<Vec<f64>> = ru
        .nodes
        .iter()
        .map(|&u| rv.nodes.iter().map(|&v| (1.0 - t * u * v).powi(-2)).collect())
        .collect();
    let basis: Vec<Vec<f64>> = rv.nodes.iter().map(|&v| monic_basis(v, nv)).collect();

    let tuples = increasing_tuples(q, nu);
    let parts: Vec<f64> = tuples
        .par_iter()
        .map(|tu| {
            let mut w = 1.0;
            for (a, &i) in tu.iter().enumerate() {
                w *= fu[i];
                for &j in &tu[a + 1..] {
                    let d = ru.nodes[i] - ru.nodes[j];
                    w *= d * d;
                }
            }
            if nv == 0 {
                return w;
            }
            let mut gram = Matrix::<f64>::zeros(nv);
            for k in 0..q {
                let mut g = gv[k];
                for &i in tu {
                    g *= coupling[i][k];
                }
                let b = &basis[k];
                for r in 0..nv {
                    for c in r..nv {
                        gram[(r, c)] += g * b[r] * b[c];
                    }
                }
            }
            for r in 0..nv {
                for c in 0..r {
                    gram[(r, c)] = gram[(c, r)];
                }
            }
            w * gram.det()
        })
        .collect();
    let total: f64 = parts.iter().sum();
    Ok(total / PI.powi((nu + nv) as i32))
}

/// `f^(2p)_{n,n}` (low) or `f^(2p+1)_{n,n}` (high) at `point.t`, with the
/// default order budget.
///
/// ```
/// use isingff::{formfactor::form_factor, ModelPoint};
/// let f = form_factor(&ModelPoint::high(0, 0.3, 1.0).unwrap(), 0, 16).unwrap();
/// let k = isingff::specfun::elliptic_complete(0.3).unwrap().0;
/// assert!((f.value - 2.0 * k / std::f64::consts::PI).abs() < 1e-13);
/// ```
pub fn form_factor(point: &ModelPoint, p: usize, q: usize) -> Result<FormFactorValue> {
    form_factor_with_budget(point, p, q, DEFAULT_MAX_ORDER)
}

/// As [`form_factor`] with an explicit order budget.
pub fn form_factor_with_budget(point: &ModelPoint, p: usize, q: usize, max_order: usize) -> Result<FormFactorValue> {
    point.validate()?;
    if p > max_order {
        return Err(Error::OrderBudget { p, max: max_order });
    }
    if q == 0 {
        return Err(Error::Parameter("quadrature size q must be >= 1".into()));
    }
    if point.t > 0.9 {
        log::warn!("form factor at t = {} is close to the divergence at t = 1", point.t);
    }
    let power = leading_power(point.phase, point.n, p);
    let scale = point.t.powf(power);
    if scale == 0.0 {
        return Ok(FormFactorValue { p, value: 0.0, est_error: 0.0 });
    }
    let coarse = reduced_form_factor(point.phase, point.n, p, point.t, q)?;
    let fine = reduced_form_factor(point.phase, point.n, p, point.t, 2 * q)?;
    Ok(FormFactorValue {
        p,
        value: scale * fine,
        est_error: scale * (coarse - fine).abs(),
    })
}

/// Leading small-`t` coefficients `(c0, c1)` from the Selberg and Aomoto
/// evaluations.
pub fn small_t_coeffs(n: u32, p: usize, phase: Phase) -> Result<(f64, f64)> {
    let nf = n as f64;
    let pf = p as f64;
    let lg = ln_gamma::<f64>;
    match phase {
        Phase::Low => {
            if p == 0 {
                return Err(Error::Parameter("low-phase coefficients need p >= 1".into()));
            }
            let mut l = -2.0 * lg(pf + 1.0) - 2.0 * pf * PI.ln() + lg(nf + pf + 0.5) + lg(pf + 0.5)
                - lg(nf + 0.5)
                - lg(0.5);
            for j in 0..p {
                let jf = j as f64;
                l += 2.0 * (lg(nf + jf + 0.5) + lg(jf + 0.5) + lg(jf + 2.0) - lg(nf + pf + jf + 1.0));
            }
            let c0 = l.exp();
            let c1 = c0 * pf * (nf + pf) / (2.0 * (nf + 2.0 * pf).powi(2)) * (4.0 * pf * (nf + pf) + 1.0);
            Ok((c0, c1))
        }
        Phase::High => {
            let mut l = -lg(pf + 1.0) - (2.0 * pf + 1.0) * PI.ln() + lg(nf + 0.5) + lg(0.5) - lg(nf + pf + 1.0);
            for j in 0..p {
                let jf = j as f64;
                l += 2.0 * (lg(nf + jf + 1.5) + lg(jf + 1.5) + lg(jf + 2.0) - lg(nf + pf + jf + 2.0));
            }
            let c0 = l.exp();
            let m = nf + pf + 0.5;
            let c1 = c0 * m / (2.0 * (nf + 2.0 * pf + 1.0).powi(2))
                * (4.0 * pf * (pf + 1.0) * m + nf + 2.0 * pf + 1.0);
            Ok((c0, c1))
        }
    }
}

/// Quadrature extraction of `(c0, c1)` from the reduced integral at `+-t`:
/// the even and odd parts of `J(t) = c0 + c1 t + c2 t^2 + ...`.
pub fn extract_small_t_coeffs(phase: Phase, n: u32, p: usize, t: f64, q: usize) -> Result<(f64, f64)> {
    let jp = reduced_form_factor(phase, n, p, t, q)?;
    let jm = reduced_form_factor(phase, n, p, -t, q)?;
    Ok((0.5 * (jp + jm), (jp - jm) / (2.0 * t)))
}

/// Partial sum of the lambda-extended form-factor series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    /// `(1-t)^(1/4)` times the partial sum.
    pub value: f64,
    /// Size of the first omitted term without its coefficient,
    /// `(1-t)^(1/4) lambda^j t^(leading power)`.
    pub tail_estimate: f64,
    /// Accumulated quadrature error estimate, same scaling as `value`.
    pub est_error: f64,
    pub terms: Vec<FormFactorValue>,
}

/// Correlation from the form-factor series truncated at `p_max`:
/// low `(1-t)^(1/4) (1 + sum_{p>=1} lambda^(2p) f^(2p))`,
/// high `(1-t)^(1/4) sum_{p>=0} lambda^(2p+1) f^(2p+1)`.
///
/// ```
/// use isingff::{formfactor::correlation_series, ModelPoint};
/// let s = correlation_series(&ModelPoint::low(5, 0.3, 0.0).unwrap(), 3).unwrap();
/// assert_eq!(s.value, 0.7f64.powf(0.25));
/// ```
pub fn correlation_series(point: &ModelPoint, p_max: usize) -> Result<SeriesValue> {
    correlation_series_with(point, p_max, DEFAULT_Q)
}

/// [`correlation_series`] with an explicit quadrature size.
pub fn correlation_series_with(point: &ModelPoint, p_max: usize, q: usize) -> Result<SeriesValue> {
    point.validate()?;
    if p_max > DEFAULT_MAX_ORDER {
        return Err(Error::OrderBudget { p: p_max, max: DEFAULT_MAX_ORDER });
    }
    let pre = point.prefactor();
    let lam = point.lambda;
    let (first, lam_power): (usize, fn(usize) -> i32) = match point.phase {
        Phase::Low => (1, |p| 2 * p as i32),
        Phase::High => (0, |p| 2 * p as i32 + 1),
    };
    let mut sum = if point.phase == Phase::Low { 1.0 } else { 0.0 };
    let mut err = 0.0;
    let mut terms = Vec::new();
    if lam != 0.0 {
        for p in first..=p_max {
            let f = form_factor(point, p, q)?;
            let w = lam.powi(lam_power(p));
            sum += w * f.value;
            err += w * f.est_error;
            terms.push(f);
        }
    }
    let next = p_max + 1;
    let tail = lam.powi(lam_power(next)) * point.t.powf(leading_power(point.phase, point.n, next));
    Ok(SeriesValue {
        value: pre * sum,
        tail_estimate: pre * tail,
        est_error: pre * err,
        terms,
    })
}
