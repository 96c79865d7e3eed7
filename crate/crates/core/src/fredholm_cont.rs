//! Continuous-kernel route: integrable kernels on `(0,1)` built from the first
//! Appell function, their Fredholm determinant (low phase) and bordered minor
//! (high phase), with Neumann coefficients and a Nystrom cross-check.
//!
//! Both phases discretize on a Gauss-Jacobi rule whose weight is the square of
//! the kernel's separable endpoint factor `s(x)`, so the Nystrom matrix
//! `A_jk = c_j c_k K(x_j, x_k)`, `c_j = sqrt(w_j)/s(x_j)`, is smooth.
//!
//! | phase | `s(x)`                            | operator                     |
//! |-------|-----------------------------------|------------------------------|
//! | low   | `x^(n/2+1/4) (1-x)^(-1/4)`        | `det(I - lambda^2 K)`        |
//! | high  | `x^(n/2+1/4) (1-x)^(1/4)`         | `(lambda K0/pi) det(I + lambda^2 Khat)` |
//!
//! with `Khat(x,y) = K2(x,y) - K1(x) K1(y)/K0`, the Schur complement of the
//! bordered kernel.

use crate::error::{Error, Result};
use crate::linalg::{bordered_minor_sum, principal_minor_sum, Matrix};
use crate::point::{ModelPoint, Phase};
use crate::quad::gauss_jacobi_rule;
use crate::specfun::{appell_f1, appell_f1_dy, hyp2f1, ln_gamma};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Largest Neumann order served by this route.
pub const MAX_NEUMANN_ORDER: usize = 6;
/// Below this separation the divided difference switches to the derivative.
const DIAGONAL_GAP: f64 = 1e-9;

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && t.abs() < 1.0) {
        return Err(Error::Domain(format!("|t| = {} must be < 1", t.abs())));
    }
    Ok(())
}

fn check_interior(x: f64) -> Result<()> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "kernel argument {x} not in (0,1); the endpoint factors are singular there"
        )));
    }
    Ok(())
}

/// `Gamma(n+1/2) Gamma(1/2) / n!`.
fn gamma_ratio(n: u32) -> f64 {
    (ln_gamma(n as f64 + 0.5) + ln_gamma(0.5) - ln_gamma(n as f64 + 1.0)).exp()
}

/// `x F1(a; b, 1; c; t, t x)` and its `x`-derivative.
#[derive(Debug, Clone, Copy)]
struct AppellProfile {
    a: f64,
    b: f64,
    c: f64,
    t: f64,
}

impl AppellProfile {
    fn low(n: u32, t: f64) -> Self {
        Self { a: n as f64 + 0.5, b: -0.5, c: n as f64 + 2.0, t }
    }

    fn high(n: u32, t: f64) -> Self {
        Self { a: n as f64 + 0.5, b: 0.5, c: n as f64 + 1.0, t }
    }

    fn f1(&self, x: f64) -> Result<f64> {
        appell_f1(self.a, self.b, 1.0, self.c, self.t, self.t * x)
    }

    fn h(&self, x: f64) -> Result<f64> {
        Ok(x * self.f1(x)?)
    }

    fn dh(&self, x: f64) -> Result<f64> {
        let d = appell_f1_dy(self.a, self.b, 1.0, self.c, self.t, self.t * x)?;
        Ok(self.f1(x)? + x * self.t * d)
    }

    /// `(h(x) - h(y))/(x - y)` from precomputed values, `h'` on the diagonal.
    fn divided(&self, x: f64, hx: f64, y: f64, hy: f64) -> Result<f64> {
        if (x - y).abs() < DIAGONAL_GAP {
            self.dh(0.5 * (x + y))
        } else {
            Ok((hx - hy) / (x - y))
        }
    }
}

/// Low-phase kernel `K^-(x,y)`; symmetric, with the analytic diagonal.
///
/// ```
/// use isingff::fredholm_cont::kernel_low;
/// let a = kernel_low(0.3, 0.7, 1, 0.4).unwrap();
/// let b = kernel_low(0.7, 0.3, 1, 0.4).unwrap();
/// assert!((a - b).abs() < 1e-15 * a.abs());
/// ```
pub fn kernel_low(x: f64, y: f64, n: u32, t: f64) -> Result<f64> {
    check_interior(x)?;
    check_interior(y)?;
    check_t(t)?;
    let prof = AppellProfile::low(n, t);
    let d = prof.divided(x, prof.h(x)?, y, prof.h(y)?)?;
    Ok(low_prefactor(n, t) * low_envelope(x, n, t) * low_envelope(y, n, t) * d)
}

fn low_prefactor(n: u32, t: f64) -> f64 {
    -gamma_ratio(n) / (2.0 * PI * PI * (n as f64 + 1.0)) * t.powi(n as i32 + 1)
}

fn low_envelope(x: f64, n: u32, t: f64) -> f64 {
    x.powf(0.5 * n as f64 + 0.25) * ((1.0 - x) * (1.0 - t * x)).powf(-0.25)
}

/// The three components of the high-phase bordered kernel at `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HighKernel {
    pub k0: f64,
    pub k1x: f64,
    pub k2xy: f64,
}

/// `K^+_0`, the scalar corner of the bordered kernel.
pub fn kernel_high_k0(n: u32, t: f64) -> Result<f64> {
    check_t(t)?;
    if t > 0.99 {
        log::warn!("high-phase kernels diverge logarithmically as t -> 1 (t = {t})");
    }
    Ok(gamma_ratio(n) * t.abs().powf(0.5 * n as f64) * hyp2f1(n as f64 + 0.5, 0.5, n as f64 + 1.0, t)?)
}

/// `K^+_1(x)`. The power of `t` is `3n/4`, the value that makes every term
/// of the bordered determinant scale alike and reproduces the form factors.
pub fn kernel_high_k1(x: f64, n: u32, t: f64) -> Result<f64> {
    check_interior(x)?;
    check_t(t)?;
    let prof = AppellProfile::high(n, t);
    Ok(k1_from_f1(x, n, t, prof.f1(x)?))
}

fn k1_from_f1(x: f64, n: u32, t: f64, f1: f64) -> f64 {
    -gamma_ratio(n) / PI * t.abs().powf(0.75 * n as f64) * high_envelope(x, n, t) * f1
}

fn high_envelope(x: f64, n: u32, t: f64) -> f64 {
    x.powf(0.5 * n as f64 - 0.75) * ((1.0 - x) * (1.0 - t * x)).powf(0.25)
}

fn k2_prefactor(n: u32, t: f64) -> f64 {
    gamma_ratio(n) / (PI * PI) * t.powi(n as i32)
}

/// `K^+_2(x,y)`, symmetric, with the analytic diagonal.
pub fn kernel_high_k2(x: f64, y: f64, n: u32, t: f64) -> Result<f64> {
    check_interior(x)?;
    check_interior(y)?;
    check_t(t)?;
    let prof = AppellProfile::high(n, t);
    let d = prof.divided(x, prof.h(x)?, y, prof.h(y)?)?;
    Ok(k2_prefactor(n, t) * high_envelope(x, n, t) * high_envelope(y, n, t) * d)
}

/// All three high-phase components.
pub fn kernel_high(x: f64, y: f64, n: u32, t: f64) -> Result<HighKernel> {
    Ok(HighKernel {
        k0: kernel_high_k0(n, t)?,
        k1x: kernel_high_k1(x, n, t)?,
        k2xy: kernel_high_k2(x, y, n, t)?,
    })
}

/// Nystrom discretization of one phase's kernel on `q` nodes.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub phase: Phase,
    pub nodes: Vec<f64>,
    /// Low: `c c^T K^-`. High: bordered matrix with `K0` at `(0,0)`,
    /// `c_k K1(x_k)` on the border and `c_j c_k K2` inside.
    pub matrix: Matrix<f64>,
}

/// Builds the symmetrized Nystrom matrix for `(phase, n, t)`.
pub fn discretize(phase: Phase, n: u32, t: f64, q: usize) -> Result<Discretization> {
    check_t(t)?;
    if q == 0 {
        return Err(Error::Parameter("quadrature size q must be >= 1".into()));
    }
    let nf = n as f64;
    let (rule, prof) = match phase {
        Phase::Low => (gauss_jacobi_rule(q, -0.5, nf + 0.5)?, AppellProfile::low(n, t)),
        Phase::High => (gauss_jacobi_rule(q, 0.5, nf + 0.5)?, AppellProfile::high(n, t)),
    };
    let x = rule.nodes.clone();
    let per_node: Vec<(f64, f64, f64)> = x
        .par_iter()
        .map(|&xi| -> Result<(f64, f64, f64)> { Ok((prof.f1(xi)?, prof.h(xi)?, prof.dh(xi)?)) })
        .collect::<Result<_>>()?;
    let c: Vec<f64> = x
        .iter()
        .zip(&rule.weights)
        .map(|(&xi, &w)| {
            let s2 = match phase {
                Phase::Low => xi.powf(nf + 0.5) / (1.0 - xi).sqrt(),
                Phase::High => xi.powf(nf + 0.5) * (1.0 - xi).sqrt(),
            };
            (w / s2).sqrt()
        })
        .collect();
    let div = |j: usize, k: usize| {
        if j == k {
            per_node[j].2
        } else {
            (per_node[j].1 - per_node[k].1) / (x[j] - x[k])
        }
    };
    let matrix = match phase {
        Phase::Low => {
            let pre = low_prefactor(n, t);
            let env: Vec<f64> = x.iter().map(|&xi| low_envelope(xi, n, t)).collect();
            Matrix::from_fn(q, |j, k| pre * c[j] * c[k] * env[j] * env[k] * div(j, k))
        }
        Phase::High => {
            let k0 = kernel_high_k0(n, t)?;
            let pre = k2_prefactor(n, t);
            let env: Vec<f64> = x.iter().map(|&xi| high_envelope(xi, n, t)).collect();
            let k1: Vec<f64> = (0..q).map(|j| c[j] * k1_from_f1(x[j], n, t, per_node[j].0)).collect();
            Matrix::from_fn(q + 1, |j, k| match (j, k) {
                (0, 0) => k0,
                (0, k) => k1[k - 1],
                (j, 0) => k1[j - 1],
                (j, k) => pre * c[j - 1] * c[k - 1] * env[j - 1] * env[k - 1] * div(j - 1, k - 1),
            })
        }
    };
    Ok(Discretization { phase, nodes: x, matrix })
}

impl Discretization {
    /// Neumann coefficient of order `p`: `f^(2p)` (low) or `f^(2p+1)` (high).
    pub fn neumann(&self, p: usize) -> f64 {
        match self.phase {
            Phase::Low => {
                let sgn = if p % 2 == 0 { 1.0 } else { -1.0 };
                sgn * principal_minor_sum(&self.matrix, p)
            }
            Phase::High => bordered_minor_sum(&self.matrix, p) / PI,
        }
    }

    /// Full operator value at `lambda` by one determinant.
    pub fn nystrom(&self, lambda: f64) -> f64 {
        let l2 = lambda * lambda;
        match self.phase {
            Phase::Low => {
                let q = self.matrix.dim();
                Matrix::from_fn(q, |j, k| (if j == k { 1.0 } else { 0.0 }) - l2 * self.matrix[(j, k)]).det()
            }
            Phase::High => {
                let k0 = self.matrix[(0, 0)];
                if k0 == 0.0 {
                    return 0.0;
                }
                let q = self.matrix.dim() - 1;
                let a = &self.matrix;
                let m = Matrix::from_fn(q, |j, k| {
                    let schur = a[(j + 1, k + 1)] - a[(j + 1, 0)] * a[(0, k + 1)] / k0;
                    (if j == k { 1.0 } else { 0.0 }) + l2 * schur
                });
                lambda * k0 / PI * m.det()
            }
        }
    }
}

/// Neumann assembly and the Nystrom determinant at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FredholmContValue {
    /// Neumann coefficients for `p = 0..=p_max` (without powers of lambda).
    pub terms: Vec<f64>,
    /// `sum_p lambda^(2p) f^(2p)` or `lambda sum_p lambda^(2p) f^(2p+1)`.
    pub neumann: f64,
    /// Full Nystrom determinant (or bordered minor) on the same nodes.
    pub nystrom: f64,
    /// `|neumann - nystrom|`, dominated by the truncated Neumann tail.
    pub gap: f64,
}

/// Continuous-kernel correlation without the `(1-t)^(1/4)` prefactor.
///
/// ```
/// use isingff::{fredholm_cont::fredholm_cont, ModelPoint};
/// let v = fredholm_cont(&ModelPoint::low(1, 0.3, 0.0).unwrap(), 3, 16).unwrap();
/// assert_eq!(v.nystrom, 1.0);
/// ```
pub fn fredholm_cont(point: &ModelPoint, p_max: usize, q: usize) -> Result<FredholmContValue> {
    point.validate()?;
    if p_max > MAX_NEUMANN_ORDER {
        return Err(Error::OrderBudget { p: p_max, max: MAX_NEUMANN_ORDER });
    }
    let disc = discretize(point.phase, point.n, point.t, q)?;
    let terms: Vec<f64> = (0..=p_max).map(|p| disc.neumann(p)).collect();
    let l2 = point.lambda * point.lambda;
    let mut neumann: f64 = terms.iter().enumerate().map(|(p, f)| f * l2.powi(p as i32)).sum();
    if point.phase == Phase::High {
        neumann *= point.lambda;
    }
    let nystrom = disc.nystrom(point.lambda);
    Ok(FredholmContValue { terms, neumann, nystrom, gap: (neumann - nystrom).abs() })
}
