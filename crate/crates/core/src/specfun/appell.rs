//! First Appell function `F1(alpha; beta, beta'; gamma; x, y)`.

use super::gamma::ln_gamma;
use crate::error::{Error, Result};
use crate::quad::gauss_jacobi_rule;
use crate::scalar::Real;

const MAX_ROWS: usize = 20_000;

/// Double series, summed row by row in the power of `x`; a row is dropped
/// once its terms fall below `1e-16` of the running total.
///
/// ```
/// use isingff::specfun::{appell_f1, hyp2f1};
/// let f = appell_f1(0.5f64, -0.5, 1.0, 2.0, 0.25, 0.25).unwrap();
/// let g = hyp2f1(0.5f64, 0.5, 2.0, 0.25).unwrap();
/// assert!((f - g).abs() < 1e-14);
/// ```
pub fn appell_f1<T: Real>(alpha: T, beta: T, beta_p: T, gamma: T, x: T, y: T) -> Result<T> {
    if !(x.abs() < T::one() && y.abs() < T::one()) {
        return Err(Error::Domain(format!(
            "Appell F1 series needs max(|x|,|y|) < 1, got ({x}, {y})"
        )));
    }
    if gamma <= T::zero() && gamma == gamma.round() {
        return Err(Error::Domain(format!("Appell F1 gamma = {gamma} is a pole")));
    }
    let tol = T::lit(1e-17);
    let mut total = T::zero();
    // row_head = (alpha)_m (beta)_m / ((gamma)_m m!) x^m
    let mut row_head = T::one();
    let mut quiet_rows = 0;
    for m in 0..MAX_ROWS {
        let mm = T::int(m as i64);
        let mut term = row_head;
        let mut row = term;
        let mut quiet = 0;
        for k in 0..MAX_ROWS {
            let kk = T::int(k as i64);
            term = term * (alpha + mm + kk) * (beta_p + kk) / ((gamma + mm + kk) * (kk + T::one())) * y;
            row = row + term;
            if term == T::zero() {
                break;
            }
            let past_hump = kk > (alpha + mm).abs() + beta_p.abs() + (gamma + mm).abs();
            if past_hump && term.abs() <= tol * (total + row).abs().max(T::lit(1e-300)) {
                quiet += 1;
                if quiet >= 2 {
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        total = total + row;
        let past_hump = mm > alpha.abs() + beta.abs() + gamma.abs();
        if row == T::zero() || (past_hump && row.abs() <= tol * total.abs()) {
            quiet_rows += 1;
            if quiet_rows >= 2 || row_head == T::zero() {
                return Ok(total);
            }
        } else {
            quiet_rows = 0;
        }
        row_head = row_head * (alpha + mm) * (beta + mm) / ((gamma + mm) * (mm + T::one())) * x;
        if row_head == T::zero() {
            return Ok(total);
        }
    }
    Err(Error::Accuracy("Appell F1 series did not converge".into()))
}

/// Euler-type integral route
/// `Gamma(g)/(Gamma(a)Gamma(g-a)) * int_0^1 u^(a-1)(1-u)^(g-a-1)(1-xu)^(-b)(1-yu)^(-b') du`
/// on a Gauss-Jacobi rule with `q` nodes. Kept as an independent cross-check
/// of [`appell_f1`].
pub fn appell_f1_quadrature<T: Real>(
    alpha: T,
    beta: T,
    beta_p: T,
    gamma: T,
    x: T,
    y: T,
    q: usize,
) -> Result<T> {
    if alpha <= T::zero() || gamma - alpha <= T::zero() {
        return Err(Error::Domain(format!(
            "Appell F1 integral needs alpha > 0 and gamma > alpha, got ({alpha}, {gamma})"
        )));
    }
    if x >= T::one() || y >= T::one() {
        return Err(Error::Domain("Appell F1 integral needs x, y < 1".into()));
    }
    let rule = gauss_jacobi_rule(q, gamma - alpha - T::one(), alpha - T::one())?;
    let s: T = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&u, &w)| w * (T::one() - x * u).powf(-beta) * (T::one() - y * u).powf(-beta_p))
        .sum();
    let lnorm = ln_gamma(gamma) - ln_gamma(alpha) - ln_gamma(gamma - alpha);
    Ok(s * lnorm.exp())
}

/// `d/dy F1 = (alpha beta'/gamma) F1(alpha+1; beta, beta'+1; gamma+1; x, y)`.
pub fn appell_f1_dy<T: Real>(alpha: T, beta: T, beta_p: T, gamma: T, x: T, y: T) -> Result<T> {
    let one = T::one();
    Ok(alpha * beta_p / gamma * appell_f1(alpha + one, beta, beta_p + one, gamma + one, x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::hyp2f1;

    #[test]
    fn origin_is_one() {
        assert_eq!(appell_f1(0.7, 0.2, -0.4, 1.3, 0.0, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn equal_arguments_reduce_to_gauss() {
        let f: f64 = appell_f1(0.5, -0.5, 1.0, 2.0, 0.25, 0.25).unwrap();
        let g = hyp2f1(0.5, 0.5, 2.0, 0.25).unwrap();
        assert!((f - g).abs() < 1e-14);
    }

    #[test]
    fn zero_y_reduces_to_gauss() {
        let f: f64 = appell_f1(1.5, 0.5, 1.0, 2.5, 0.6, 0.0).unwrap();
        let g = hyp2f1(1.5, 0.5, 2.5, 0.6).unwrap();
        assert!((f - g).abs() < 1e-14);
    }

    #[test]
    fn series_matches_integral_kernel_parameters() {
        // (n, t, x) = (0, 0.4, 0.5)
        let (n, t, x) = (0.0_f64, 0.4, 0.5);
        let s = appell_f1(n + 0.5, -0.5, 1.0, n + 2.0, t, t * x).unwrap();
        let q = appell_f1_quadrature(n + 0.5, -0.5, 1.0, n + 2.0, t, t * x, 40).unwrap();
        assert!((s - q).abs() < 1e-12, "{s} vs {q}");
    }

    #[test]
    fn y_derivative_matches_difference_quotient() {
        let (a, b, bp, g, x, y) = (1.5_f64, -0.5, 1.0, 3.0, 0.3, 0.2);
        let h = 1e-5;
        let fd = (appell_f1(a, b, bp, g, x, y + h).unwrap() - appell_f1(a, b, bp, g, x, y - h).unwrap()) / (2.0 * h);
        let d = appell_f1_dy(a, b, bp, g, x, y).unwrap();
        assert!((fd - d).abs() < 1e-8);
    }

    #[test]
    fn outside_domain() {
        assert!(appell_f1(0.5, 0.5, 0.5, 1.0, 1.2, 0.1).is_err());
    }
}
