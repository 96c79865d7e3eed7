//! Gauss-Jacobi rules on `(0,1)` and periodic trapezoid rules on the circle.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::ln_gamma;
use num_complex::Complex;

/// Which family a [`QuadRule`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RuleFamily<T> {
    /// Weight `x^beta (1-x)^alpha` on `(0,1)`.
    Jacobi { alpha: T, beta: T },
    /// `points` equispaced angles in `(-pi, pi]`, weights `1/points`.
    Circle { points: usize },
}

/// Nodes and positive weights; nodes strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub family: RuleFamily<T>,
}

impl<T: Real> QuadRule<T> {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F: Fn(T) -> T>(&self, f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Eigenvalues of a symmetric tridiagonal matrix (implicit QL), ascending.
fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[..n - 1].copy_from_slice(&off[..n - 1]);
    let two = T::lit(2.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= T::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Accuracy("tridiagonal QL did not converge".into()));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = g.hypot(T::one());
            g = d[m] - d[l] + e[l] / (g + if g >= T::zero() { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (T::one(), T::one(), T::zero());
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == T::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = T::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = T::zero();
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(d)
}

/// Recurrence coefficients of the monic Jacobi polynomials on `(0,1)`:
/// diagonal `a_k` and squared off-diagonal `b_k` (index 0 unused).
fn jacobi_recurrence<T: Real>(q: usize, alpha: T, beta: T) -> (Vec<T>, Vec<T>) {
    let one = T::one();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let s = alpha + beta;
    let mut a = Vec::with_capacity(q);
    let mut b = vec![T::zero(); q];
    for k in 0..q {
        let kk = T::int(k as i64);
        let ak = if k == 0 {
            (beta - alpha) / (s + two)
        } else {
            (beta * beta - alpha * alpha) / ((two * kk + s) * (two * kk + s + two))
        };
        a.push((one + ak) / two);
        if k >= 1 {
            let bk = if k == 1 {
                four * (one + alpha) * (one + beta) / ((two + s) * (two + s) * (T::lit(3.0) + s))
            } else {
                let d = two * kk + s;
                four * kk * (kk + alpha) * (kk + beta) * (kk + s) / (d * d * (d + one) * (d - one))
            };
            b[k] = bk / four;
        }
    }
    (a, b)
}

/// Gauss-Jacobi rule with `q` nodes for the weight `x^beta (1-x)^alpha` on
/// `(0,1)`: exact for polynomials of degree `<= 2q-1`.
///
/// Nodes are the eigenvalues of the Jacobi matrix, polished by Newton steps
/// on the three-term recurrence; weights are Christoffel numbers.
///
/// ```
/// use isingff::quad::gauss_jacobi_rule;
/// let r = gauss_jacobi_rule(2, 0.0_f64, 0.0).unwrap();
/// assert!((r.nodes[0] - (0.5 - 0.5 / 3f64.sqrt())).abs() < 1e-15);
/// ```
pub fn gauss_jacobi_rule<T: Real>(q: usize, alpha: T, beta: T) -> Result<QuadRule<T>> {
    if q == 0 {
        return Err(Error::Parameter("Gauss-Jacobi rule needs q >= 1".into()));
    }
    if !(alpha > -T::one()) || !(beta > -T::one()) {
        return Err(Error::Parameter(format!(
            "Jacobi exponents must exceed -1, got alpha = {alpha}, beta = {beta}"
        )));
    }
    let (a, b) = jacobi_recurrence(q + 1, alpha, beta);
    let sb: Vec<T> = b.iter().map(|v| v.sqrt()).collect();
    let mu0 = (ln_gamma(alpha + T::one()) + ln_gamma(beta + T::one()) - ln_gamma(alpha + beta + T::lit(2.0))).exp();
    let off: Vec<T> = (0..q).map(|k| if k + 1 < q { sb[k + 1] } else { T::zero() }).collect();
    let mut nodes = tridiagonal_eigenvalues(&a[..q], &off)?;

    // orthonormal values p_0..p_q and the derivative of p_q
    let eval = |x: T| -> (Vec<T>, T) {
        let mut p = vec![T::zero(); q + 1];
        let mut dp = vec![T::zero(); q + 1];
        p[0] = T::one() / mu0.sqrt();
        if q >= 1 {
            p[1] = (x - a[0]) * p[0] / sb[1];
            dp[1] = p[0] / sb[1];
        }
        for k in 1..q {
            p[k + 1] = ((x - a[k]) * p[k] - sb[k] * p[k - 1]) / sb[k + 1];
            dp[k + 1] = (p[k] + (x - a[k]) * dp[k] - sb[k] * dp[k - 1]) / sb[k + 1];
        }
        let d = dp[q];
        (p, d)
    };
    let mut weights = Vec::with_capacity(q);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let (p, d) = eval(*x);
            if d == T::zero() {
                break;
            }
            let step = p[q] / d;
            *x = *x - step;
            if step.abs() <= T::epsilon() * x.abs() {
                break;
            }
        }
        let (p, _) = eval(*x);
        let s: T = p[..q].iter().map(|v| *v * *v).sum();
        weights.push(T::one() / s);
    }
    for w in nodes.windows(2) {
        if !(w[0] < w[1]) || w[0] <= T::zero() || w[1] >= T::one() {
            return Err(Error::Accuracy(format!(
                "Gauss-Jacobi nodes not strictly inside (0,1) and increasing for q = {q}"
            )));
        }
    }
    Ok(QuadRule {
        nodes,
        weights,
        family: RuleFamily::Jacobi { alpha, beta },
    })
}

/// `M`-point periodic trapezoid rule on the circle, angles in `(-pi, pi]`.
pub fn circle_rule<T: Real>(points: usize) -> Result<QuadRule<T>> {
    if points == 0 {
        return Err(Error::Parameter("circle rule needs at least one point".into()));
    }
    let mm = T::int(points as i64);
    let two_pi = T::lit(2.0) * T::PI();
    let nodes = (0..points)
        .map(|j| -T::PI() + two_pi * T::int(j as i64 + 1) / mm)
        .collect();
    Ok(QuadRule {
        nodes,
        weights: vec![T::one() / mm; points],
        family: RuleFamily::Circle { points },
    })
}

/// Trigonometric moments `w_k = (1/2pi) int w(e^{i theta}) e^{-ik theta} d theta`
/// for `|k| <= k_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable<T> {
    k_max: usize,
    values: Vec<T>,
}

impl<T: Real> MomentTable<T> {
    /// Builds a table from `w_{-k_max} .. w_{k_max}`.
    pub fn from_values(k_max: usize, values: Vec<T>) -> Result<Self> {
        if values.len() != 2 * k_max + 1 {
            return Err(Error::Parameter("moment table length must be 2 k_max + 1".into()));
        }
        Ok(Self { k_max, values })
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// `w_k`; zero outside the stored window.
    pub fn get(&self, k: i64) -> T {
        if k.unsigned_abs() as usize > self.k_max {
            T::zero()
        } else {
            self.values[(k + self.k_max as i64) as usize]
        }
    }

    /// Moments of `zeta^s w(zeta)`: `w_k -> w_{k-s}`; the window shrinks by `|s|`.
    pub fn shifted(&self, s: i64) -> Self {
        let k_max = self.k_max.saturating_sub(s.unsigned_abs() as usize);
        let values = (-(k_max as i64)..=k_max as i64).map(|k| self.get(k - s)).collect();
        Self { k_max, values }
    }
}

fn trapezoid_moments<T, F>(symbol: &F, k_max: usize, points: usize) -> Result<(Vec<T>, T)>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    let rule = circle_rule::<T>(points)?;
    let samples: Vec<Complex<T>> = rule.nodes.iter().map(|&th| symbol(th)).collect();
    let mm = T::int(points as i64);
    let mut out = Vec::with_capacity(2 * k_max + 1);
    let mut max_imag = T::zero();
    for k in -(k_max as i64)..=(k_max as i64) {
        let kk = T::int(k);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (s, &th) in samples.iter().zip(&rule.nodes) {
            let (sn, cs) = (kk * th).sin_cos();
            acc = acc + *s * Complex::new(cs, -sn);
        }
        acc = acc / mm;
        max_imag = max_imag.max(acc.im.abs());
        out.push(acc.re);
    }
    Ok((out, max_imag))
}

/// Trapezoid moments of a real-coefficient symbol given as a function of the
/// angle. Fails if doubling `points` moves any moment by more than `1e-12`
/// or the moments are not real.
///
/// ```
/// use isingff::quad::circle_moments;
/// use num_complex::Complex64;
/// let w = circle_moments(|_t: f64| Complex64::new(1.0, 0.0), 4, 16).unwrap();
/// assert_eq!(w.get(0), 1.0);
/// assert!(w.get(3).abs() < 1e-15);
/// ```
pub fn circle_moments<T, F>(symbol: F, k_max: usize, points: usize) -> Result<MomentTable<T>>
where
    T: Real,
    F: Fn(T) -> Complex<T>,
{
    if points < 4 * k_max.max(1) {
        return Err(Error::Parameter(format!(
            "circle rule with {points} points is too coarse for k_max = {k_max}"
        )));
    }
    let (coarse, imag) = trapezoid_moments(&symbol, k_max, points)?;
    let (fine, _) = trapezoid_moments(&symbol, k_max, 2 * points)?;
    let tol = T::lit(1e-12);
    let drift = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (*a - *b).abs())
        .fold(T::zero(), T::max);
    if drift > tol {
        return Err(Error::Accuracy(format!(
            "circle moments moved by {drift} under doubling of {points} points"
        )));
    }
    if imag > tol {
        return Err(Error::Domain(format!("symbol moments are not real (imag {imag})")));
    }
    MomentTable::from_values(k_max, fine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn midpoint_rule() {
        let r = gauss_jacobi_rule(1, 0.0_f64, 0.0).unwrap();
        assert!((r.nodes[0] - 0.5).abs() < 1e-15);
        assert!((r.weights[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn two_point_legendre() {
        let r = gauss_jacobi_rule(2, 0.0_f64, 0.0).unwrap();
        let d = 0.5 / 3f64.sqrt();
        assert!((r.nodes[0] - (0.5 - d)).abs() < 1e-15);
        assert!((r.nodes[1] - (0.5 + d)).abs() < 1e-15);
    }

    #[test]
    fn beta_function_weight_sum() {
        let r = gauss_jacobi_rule(8, 0.5_f64, -0.5).unwrap();
        let s: f64 = r.weights.iter().sum();
        assert!((s - PI / 2.0).abs() < 1e-14);
    }

    #[test]
    fn parameter_errors() {
        assert!(gauss_jacobi_rule(4, -1.0_f64, 0.0).is_err());
        assert!(gauss_jacobi_rule(0, 0.0_f64, 0.0).is_err());
        assert!(circle_moments(|_t: f64| Complex::new(1.0, 0.0), 8, 16).is_err());
    }

    #[test]
    fn chebyshev_limit_nodes() {
        // alpha = beta = -1/2: nodes (1 - cos((2i-1)pi/(2q)))/2
        let q = 7;
        let r = gauss_jacobi_rule(q, -0.5_f64, -0.5).unwrap();
        for (i, x) in r.nodes.iter().enumerate() {
            let th = (2 * (q - i) - 1) as f64 * PI / (2 * q) as f64;
            assert!((x - 0.5 * (1.0 + th.cos())).abs() < 1e-14);
            assert!((r.weights[i] - PI / q as f64).abs() < 1e-13);
        }
    }

    #[test]
    fn single_precision_rule() {
        let r = gauss_jacobi_rule(6, 0.5_f32, 1.5).unwrap();
        let exact = (ln_gamma(1.5_f64) + ln_gamma(2.5) - ln_gamma(4.0)).exp();
        let s: f32 = r.weights.iter().sum();
        assert!(((s as f64) - exact).abs() < 1e-6);
    }

    #[test]
    fn log_moments_of_ising_factor() {
        // log(1 - sqrt(t) e^{-i th}) has coefficients -t^{p/2}/p at k = -p
        let t = 0.25_f64;
        let st = t.sqrt();
        let w = circle_moments(
            |th: f64| {
                let z = Complex::new(th.cos(), -th.sin());
                (Complex::new(1.0, 0.0) - z * st).ln()
            },
            6,
            128,
        )
        .unwrap();
        for p in 1..=6i64 {
            assert!((w.get(-p) + st.powi(p as i32) / p as f64).abs() < 1e-14);
            assert!(w.get(p).abs() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn jacobi_exactness(q in 1usize..30, alpha in -0.9f64..3.0, beta in -0.9f64..3.0, deg_frac in 0.0f64..1.0) {
            let r = gauss_jacobi_rule(q, alpha, beta).unwrap();
            let deg = ((2 * q - 1) as f64 * deg_frac).round() as i32;
            let s = r.integrate(|x| x.powi(deg));
            let exact = (ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0 + deg as f64)
                - ln_gamma(alpha + beta + 2.0 + deg as f64)).exp();
            prop_assert!(((s - exact) / exact).abs() < 1e-12);
            prop_assert!(r.weights.iter().all(|&w| w > 0.0));
        }
    }
}
