//! Discrete route (low phase): Jost factorisation of the symbol, Fourier
//! coefficients of the scattering function, the kernel `G`, truncated
//! Fredholm determinants `det[1 + lambda^2 G]_n` and the Marchenko solutions.
//!
//! Conventions: `F_m = [z^-m] S`, `Fbar_m = [z^m] 1/S`, `S = f_-/f_+`,
//! `G_{l,m} = -sum_{k>=1} Fbar_{l+k} F_{m+k}`, and `Gbar_{l,m} = G_{m,l}`.
//! Every index may be negative; `F` and `Fbar` depend on `|m|` only.

use crate::error::{Error, Result};
use crate::linalg::{principal_minor_sum, Matrix};
use crate::point::{ModelPoint, Phase};
use crate::quad::circle_rule;
use crate::specfun::{hyp2f1, hyp2f1_regularized, poch, poch_over_factorial};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Largest window the adaptive truncation will pick.
pub const MAX_TRUNCATION: usize = 512;
/// Smallest window the adaptive truncation will pick.
pub const MIN_TRUNCATION: usize = 8;

/// Scattering Fourier coefficients `F_m`, `Fbar_m` for `0 <= m <= m_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringData {
    pub t: f64,
    pub f: Vec<f64>,
    pub fbar: Vec<f64>,
    /// Largest gap between the closed-form and circle-quadrature routes.
    pub route_gap: f64,
}

impl ScatteringData {
    /// `F_m`; zero beyond the table.
    pub fn f(&self, m: i64) -> f64 {
        self.f.get(m.unsigned_abs() as usize).copied().unwrap_or(0.0)
    }

    /// `Fbar_m`; zero beyond the table.
    pub fn fbar(&self, m: i64) -> f64 {
        self.fbar.get(m.unsigned_abs() as usize).copied().unwrap_or(0.0)
    }
}

fn check_t(t: f64) -> Result<()> {
    if !(t.is_finite() && (0.0..1.0).contains(&t)) {
        return Err(Error::Domain(format!("t = {t} outside [0,1)")));
    }
    Ok(())
}

/// Closed form `F_m = ((1/2)_m/m!) t^(m/2) 2F1(1/2, m+1/2; m+1; t)`.
pub fn f_closed(t: f64, m: u64) -> Result<f64> {
    let mf = m as f64;
    Ok(poch_over_factorial(0.5, m) * t.powf(0.5 * mf) * hyp2f1(0.5, mf + 0.5, mf + 1.0, t)?)
}

/// Closed form `Fbar_m = ((-1/2)_m/m!) t^(m/2) 2F1(-1/2, m-1/2; m+1; t)`.
pub fn fbar_closed(t: f64, m: u64) -> Result<f64> {
    let mf = m as f64;
    Ok(poch_over_factorial(-0.5, m) * t.powf(0.5 * mf) * hyp2f1(-0.5, mf - 0.5, mf + 1.0, t)?)
}

/// Circle points adequate for the annulus of analyticity `sqrt t < |z| < 1/sqrt t`.
fn circle_points_for(t: f64, m_max: usize) -> usize {
    let need = if t > 0.0 { (2.0 * (1e-18f64).ln() / t.ln()).ceil() as usize } else { 0 };
    (4 * m_max).max(need).max(256).next_power_of_two()
}

/// Trapezoid evaluation of `F_m`, `Fbar_m` from `S = f_-/f_+`.
pub fn fourier_coeffs_quadrature(t: f64, m_max: usize, points: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_t(t)?;
    let rule = circle_rule::<f64>(points)?;
    let st = t.sqrt();
    let samples: Vec<(Complex64, Complex64)> = rule
        .nodes
        .iter()
        .map(|&th| {
            let z = Complex64::from_polar(1.0, th);
            let fp = (1.0 - st * z).sqrt();
            let fm = (1.0 - st / z).sqrt().inv();
            (z, fm / fp)
        })
        .collect();
    let mut f = Vec::with_capacity(m_max + 1);
    let mut fb = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max as i32 {
        let mut a = Complex64::new(0.0, 0.0);
        let mut b = Complex64::new(0.0, 0.0);
        for (z, s) in &samples {
            a += z.powi(m) * s;
            b += z.powi(-m) / s;
        }
        f.push(a.re / points as f64);
        fb.push(b.re / points as f64);
    }
    Ok((f, fb))
}

/// `F_m`, `Fbar_m` for `0 <= m <= m_max` by the closed forms, checked against
/// circle quadrature of the scattering function.
///
/// ```
/// use isingff::scattering::fourier_coeffs;
/// let d = fourier_coeffs(0.0, 3).unwrap();
/// assert_eq!((d.f(0), d.fbar(0), d.f(2)), (1.0, 1.0, 0.0));
/// ```
pub fn fourier_coeffs(t: f64, m_max: usize) -> Result<ScatteringData> {
    check_t(t)?;
    let mut f = Vec::with_capacity(m_max + 1);
    let mut fbar = Vec::with_capacity(m_max + 1);
    for m in 0..=m_max as u64 {
        f.push(f_closed(t, m)?);
        fbar.push(fbar_closed(t, m)?);
    }
    let (qf, qfb) = fourier_coeffs_quadrature(t, m_max, circle_points_for(t, m_max))?;
    let gap = f
        .iter()
        .zip(&qf)
        .chain(fbar.iter().zip(&qfb))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if gap > 1e-9 {
        return Err(Error::Accuracy(format!("Fourier coefficient routes differ by {gap}")));
    }
    Ok(ScatteringData { t, f, fbar, route_gap: gap })
}

/// Side of the unit circle on which a Jost function is analytic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JostSide {
    /// `f_+(z) = (1 - sqrt(t) z)^(1/2)`.
    Interior,
    /// `f_-(z) = (1 - sqrt(t)/z)^(-1/2)`.
    Exterior,
}

/// Principal-branch Jost function; `w f_+ f_- = 1` on the circle.
///
/// ```
/// use isingff::scattering::{jost, JostSide};
/// use num_complex::Complex64;
/// let v = jost(Complex64::new(0.0, 0.0), 0.4, JostSide::Interior).unwrap();
/// assert_eq!(v, Complex64::new(1.0, 0.0));
/// ```
pub fn jost(z: Complex64, t: f64, side: JostSide) -> Result<Complex64> {
    check_t(t)?;
    let st = t.sqrt();
    match side {
        JostSide::Interior => {
            let arg = 1.0 - st * z;
            if arg.im == 0.0 && arg.re <= 0.0 {
                return Err(Error::Branch(format!("f_+ cut at z = {z}")));
            }
            Ok(arg.sqrt())
        }
        JostSide::Exterior => {
            if z.norm() == 0.0 {
                return Err(Error::Branch("f_- is singular at z = 0".into()));
            }
            if z.is_infinite() {
                return Ok(Complex64::new(1.0, 0.0));
            }
            let arg = 1.0 - st / z;
            if arg.im == 0.0 && arg.re <= 0.0 {
                return Err(Error::Branch(format!("f_- cut at z = {z}")));
            }
            Ok(arg.sqrt().inv())
        }
    }
}

/// Low-phase symbol `w(z) = (1 - sqrt(t)/z)^(1/2) (1 - sqrt(t) z)^(-1/2)`.
pub fn low_symbol(z: Complex64, t: f64) -> Complex64 {
    let st = t.sqrt();
    (1.0 - st / z).sqrt() / (1.0 - st * z).sqrt()
}

/// Truncation `ceil(ln 1e-16 / ln t) - n`, clamped to `[8, 512]`.
pub fn default_truncation(t: f64, n: i64) -> usize {
    if t <= 0.0 {
        return MIN_TRUNCATION;
    }
    let l = ((1e-16f64).ln() / t.ln() - 1e-9).ceil() as i64 - n;
    l.clamp(MIN_TRUNCATION as i64, MAX_TRUNCATION as i64) as usize
}

/// Closed-form ingredients and the diagonal of `G` over an index range.
#[derive(Debug, Clone)]
pub struct GTable {
    t: f64,
    lo: i64,
    hi: i64,
    // P_i, Q_i, R_i, S_i for i in lo..=hi
    pqrs: Vec<[f64; 4]>,
    // G_{l,l} for l in diag_lo..=hi
    diag_lo: i64,
    diag: Vec<f64>,
    anchor_residual: f64,
}

fn pqrs(t: f64, i: i64) -> Result<[f64; 4]> {
    let fi = i as f64;
    let p = if i >= 0 {
        -0.5 * poch_over_factorial(0.5, i as u64) * hyp2f1(0.5, fi + 1.5, fi + 1.0, t)?
    } else {
        poch(-0.5, i + 1) * hyp2f1_regularized(0.5, fi + 1.5, fi + 1.0, t)?
    };
    let q = if i >= -1 {
        poch_over_factorial(0.5, (i + 1) as u64) * hyp2f1(0.5, fi + 0.5, fi + 2.0, t)?
    } else {
        poch(0.5, i + 1) * hyp2f1_regularized(0.5, fi + 0.5, fi + 2.0, t)?
    };
    let r = if i >= 0 {
        0.5 * poch_over_factorial(1.5, i as u64) * hyp2f1(0.5, fi + 1.5, fi + 1.0, t)?
    } else {
        poch(0.5, i + 1) * hyp2f1_regularized(0.5, fi + 1.5, fi + 1.0, t)?
    };
    let s = if i >= -1 {
        poch_over_factorial(-0.5, (i + 1) as u64) * hyp2f1(0.5, fi + 0.5, fi + 2.0, t)?
    } else {
        poch(-0.5, i + 1) * hyp2f1_regularized(0.5, fi + 0.5, fi + 2.0, t)?
    };
    Ok([p, q, r, s])
}

impl GTable {
    /// Tables for indices `lo..=hi`. The diagonal comes from the downward
    /// recurrence `G_{l,l} = G_{l+1,l+1} - Fbar_{l+1} F_{l+1}` started at zero
    /// once `t^(l+1) < 1e-18`, and must satisfy `G_{0,0} + G_{-1,-1} = -1`
    /// to `1e-10`.
    pub fn new(t: f64, lo: i64, hi: i64) -> Result<Self> {
        check_t(t)?;
        if hi < lo {
            return Err(Error::Parameter(format!("empty index range {lo}..={hi}")));
        }
        let pqrs = (lo..=hi).into_par_iter().map(|i| pqrs(t, i)).collect::<Result<Vec<_>>>()?;
        let start = if t > 0.0 {
            ((1e-18f64).ln() / t.ln()).ceil() as i64 - 1
        } else {
            0
        }
        .max(hi)
        .max(0);
        let diag_lo = lo.min(-1);
        let count = (start - diag_lo + 1) as usize;
        let mut g = vec![0.0; count];
        let mut next = 0.0;
        for l in (diag_lo..=start).rev() {
            let m = (l + 1).unsigned_abs();
            next -= fbar_closed(t, m)? * f_closed(t, m)?;
            g[(l - diag_lo) as usize] = next;
        }
        let anchor_residual = g[(0 - diag_lo) as usize] + g[(-1 - diag_lo) as usize] + 1.0;
        if anchor_residual.abs() > 1e-10 {
            return Err(Error::Truncation(format!(
                "anchor G00 + G-1-1 + 1 = {anchor_residual:e} at t = {t}"
            )));
        }
        g.truncate((hi - diag_lo + 1) as usize);
        Ok(Self { t, lo, hi, pqrs, diag_lo, diag: g, anchor_residual })
    }

    /// `G_{0,0} + G_{-1,-1} + 1`.
    pub fn anchor_residual(&self) -> f64 {
        self.anchor_residual
    }

    /// `G_{l,m}` for `lo <= l, m <= hi`.
    pub fn get(&self, l: i64, m: i64) -> f64 {
        assert!(l >= self.lo && l <= self.hi && m >= self.lo && m <= self.hi, "index outside table");
        if l == m {
            return self.diag[(l - self.diag_lo) as usize];
        }
        let [p_l, _, _, s_l] = self.pqrs[(l - self.lo) as usize];
        let [_, q_m, r_m, _] = self.pqrs[(m - self.lo) as usize];
        let k = self.t.powf(0.5 * (l + m) as f64 + 1.0) / (l - m) as f64 * (p_l * q_m - r_m * s_l);
        -k
    }
}

/// Single kernel entry `G_{l,m}`.
pub fn g_entry(l: i64, m: i64, t: f64) -> Result<f64> {
    let lo = l.min(m).min(-1);
    let hi = l.max(m).max(0);
    Ok(GTable::new(t, lo, hi)?.get(l, m))
}

/// `G_{l,m}` by direct summation of `-sum_{k>=1} Fbar_{|l+k|} F_{|m+k|}`.
pub fn g_entry_series(l: i64, m: i64, t: f64) -> Result<f64> {
    check_t(t)?;
    let mut s = 0.0;
    let mut k = 1i64;
    loop {
        let a = (l + k).unsigned_abs();
        let b = (m + k).unsigned_abs();
        let term = fbar_closed(t, a)? * f_closed(t, b)?;
        s -= term;
        if l + k > 0 && m + k > 0 && (term.abs() < 1e-19 || t == 0.0) {
            return Ok(s);
        }
        k += 1;
        if k > 100_000 {
            return Err(Error::Accuracy("G series did not converge".into()));
        }
    }
}

/// Truncated kernel `G_{l,m}`, `l, m` in `n_start..n_start+size`.
#[derive(Debug, Clone)]
pub struct KernelMatrix {
    pub t: f64,
    pub n_start: i64,
    pub size: usize,
    pub lambda: f64,
    g: Matrix<f64>,
}

impl KernelMatrix {
    pub fn build(t: f64, n_start: i64, size: usize, lambda: f64) -> Result<Self> {
        if size == 0 {
            return Err(Error::Parameter("kernel window must be non-empty".into()));
        }
        let hi = n_start + size as i64 - 1;
        let table = GTable::new(t, n_start, hi)?;
        let rows: Vec<Vec<f64>> = (0..size)
            .into_par_iter()
            .map(|i| (0..size).map(|j| table.get(n_start + i as i64, n_start + j as i64)).collect())
            .collect();
        let g = Matrix::from_rows(size, rows.into_iter().flatten().collect())?;
        Ok(Self { t, n_start, size, lambda, g })
    }

    /// `G_{l,m}` by absolute indices.
    pub fn g(&self, l: i64, m: i64) -> f64 {
        self.g[((l - self.n_start) as usize, (m - self.n_start) as usize)]
    }

    /// The `G` block as a matrix.
    pub fn g_matrix(&self) -> &Matrix<f64> {
        &self.g
    }

    /// `1 + lambda^2 G` restricted to indices `>= from`.
    pub fn fredholm_matrix(&self, from: i64) -> Matrix<f64> {
        let off = (from - self.n_start) as usize;
        let mu = self.lambda * self.lambda;
        Matrix::from_fn(self.size - off, |i, j| {
            let d = if i == j { 1.0 } else { 0.0 };
            d + mu * self.g[(i + off, j + off)]
        })
    }

    /// `det[1 + lambda^2 G]` on indices `>= from`.
    pub fn det_from(&self, from: i64) -> f64 {
        self.fredholm_matrix(from).det()
    }
}

fn discrete_det_sized(t: f64, n: i64, lambda: f64, size: usize) -> Result<f64> {
    Ok(KernelMatrix::build(t, n, size, lambda)?.det_from(n))
}

/// `det[1 + lambda^2 G]_n` with an explicit index `n` (may be negative) and
/// optional window size; the window is doubled once and the two values must
/// agree to `1e-12`.
pub fn discrete_det(t: f64, n: i64, lambda: f64, size: Option<usize>) -> Result<f64> {
    check_t(t)?;
    let size = size.unwrap_or_else(|| default_truncation(t, n));
    let a = discrete_det_sized(t, n, lambda, size)?;
    let b = discrete_det_sized(t, n, lambda, 2 * size)?;
    if (a - b).abs() > 1e-12 * a.abs().max(1.0) {
        return Err(Error::Truncation(format!(
            "det[1+lambda^2 G]_{n} moved by {:e} when the window doubled from {size}",
            (a - b).abs()
        )));
    }
    Ok(b)
}

fn require_low(point: &ModelPoint) -> Result<()> {
    point.validate()?;
    if point.phase != Phase::Low {
        return Err(Error::Unsupported("the discrete route covers the low phase only".into()));
    }
    Ok(())
}

/// `det[1 + lambda^2 G]_n` at a model point.
pub fn fredholm_disc(point: &ModelPoint, size: Option<usize>) -> Result<f64> {
    require_low(point)?;
    discrete_det(point.t, point.n as i64, point.lambda, size)
}

/// Coefficient of `lambda^(2p)` in `det[1 + lambda^2 G]_n`: the sum of the
/// `p x p` principal minors of `G` on the window.
pub fn neumann_coefficient(t: f64, n: i64, p: usize, size: Option<usize>) -> Result<f64> {
    let size = size.unwrap_or_else(|| default_truncation(t, n));
    let k = KernelMatrix::build(t, n, size, 1.0)?;
    Ok(principal_minor_sum(k.g_matrix(), p))
}

/// Smallest `lambda` in `(0, lambda_max]` at which `det[1+lambda^2 G]_n`
/// changes sign, by scanning then bisecting.
pub fn first_zero_lambda(t: f64, n: i64, lambda_max: f64, size: Option<usize>) -> Result<Option<f64>> {
    let size = size.unwrap_or_else(|| default_truncation(t, n));
    let k = KernelMatrix::build(t, n, size, 1.0)?;
    let det_at = |lam: f64| {
        let mu = lam * lam;
        Matrix::from_fn(size, |i, j| if i == j { 1.0 } else { 0.0 } + mu * k.g_matrix()[(i, j)]).det()
    };
    let steps = 64;
    let mut prev_l = 0.0;
    let mut prev_d = det_at(0.0);
    for s in 1..=steps {
        let l = lambda_max * s as f64 / steps as f64;
        let d = det_at(l);
        if d == 0.0 {
            return Ok(Some(l));
        }
        if d.signum() != prev_d.signum() {
            let (mut a, mut b, mut da) = (prev_l, l, prev_d);
            for _ in 0..60 {
                let m = 0.5 * (a + b);
                let dm = det_at(m);
                if dm.signum() == da.signum() {
                    a = m;
                    da = dm;
                } else {
                    b = m;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        prev_l = l;
        prev_d = d;
    }
    Ok(None)
}

/// Outputs of the (lambda-extended) Marchenko system at index `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarchenkoSolution {
    /// `kappa_inf^2 / kappa_n^2 = D_{n+1}/D_n`.
    pub kappa_ratio: f64,
    /// `r_{n+1}`.
    pub r_next: f64,
    /// `rbar_{n+1}`.
    pub rbar_next: f64,
}

/// Marchenko solution at index `n >= -1` (signed), `F, Fbar -> lambda F,
/// lambda Fbar`, `G -> lambda^2 G`.
///
/// `r_{n+1}` is the bordered determinant with first row `lambda F_{n+1+c}`
/// and rows `delta_{rc} + lambda^2 G_{n+r,n+c}` (`r >= 1`), divided by
/// `D_{n+1}`; `rbar_{n+1}` uses `lambda Fbar` and `G_{n+c,n+r}`.
pub fn marchenko_solve_at(t: f64, n: i64, lambda: f64, size: Option<usize>) -> Result<MarchenkoSolution> {
    check_t(t)?;
    let nn = size.unwrap_or_else(|| default_truncation(t, n));
    let k = KernelMatrix::build(t, n, nn + 1, lambda)?;
    let d_n = k.det_from(n);
    let d_n1 = k.det_from(n + 1);
    for (d, idx) in [(d_n, n), (d_n1, n + 1)] {
        if d.abs() < 1e-14 {
            return Err(Error::Singular(format!("det[1+lambda^2 G]_{idx} = {d:e} at lambda = {lambda}")));
        }
        if d < 0.0 {
            let z = first_zero_lambda(t, idx, lambda, Some(nn))?.unwrap_or(lambda);
            return Err(Error::BeyondFirstZero { lambda_zero: z });
        }
    }
    let sd = ScatteringData {
        t,
        f: (0..=(n.unsigned_abs() as usize + nn + 2)).map(|m| f_closed(t, m as u64)).collect::<Result<_>>()?,
        fbar: (0..=(n.unsigned_abs() as usize + nn + 2))
            .map(|m| fbar_closed(t, m as u64))
            .collect::<Result<_>>()?,
        route_gap: 0.0,
    };
    let mu = lambda * lambda;
    let bordered = |first: &dyn Fn(i64) -> f64, transpose: bool| {
        Matrix::from_fn(nn + 1, |r, c| {
            if r == 0 {
                lambda * first(n + 1 + c as i64)
            } else {
                let (a, b) = if transpose { (n + c as i64, n + r as i64) } else { (n + r as i64, n + c as i64) };
                let d = if r == c { 1.0 } else { 0.0 };
                d + mu * k.g(a, b)
            }
        })
        .det()
    };
    let r_next = bordered(&|m| sd.f(m), false) / d_n1;
    let rbar_next = bordered(&|m| sd.fbar(m), true) / d_n1;
    Ok(MarchenkoSolution { kappa_ratio: d_n1 / d_n, r_next, rbar_next })
}

/// [`marchenko_solve_at`] at a model point.
pub fn marchenko_solve(point: &ModelPoint, size: Option<usize>) -> Result<MarchenkoSolution> {
    require_low(point)?;
    marchenko_solve_at(point.t, point.n as i64, point.lambda, size)
}

/// `I_n = I_0 det[1+lambda^2 G]_n / det[1+lambda^2 G]_0`, with
/// `I_0 = (1-t)^(1/4) det[1+lambda^2 G]_0` (`kappa_inf = 1`).
pub fn toeplitz_from_g(point: &ModelPoint, size: Option<usize>) -> Result<f64> {
    require_low(point)?;
    let d0 = discrete_det(point.t, 0, point.lambda, size)?;
    let i0 = point.prefactor() * d0;
    if point.n == 0 {
        return Ok(i0);
    }
    if d0.abs() < 1e-14 {
        return Err(Error::Singular("det[1+lambda^2 G]_0 vanishes".into()));
    }
    let dn = discrete_det(point.t, point.n as i64, point.lambda, size)?;
    Ok(i0 * dn / d0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::elliptic_complete;
    use std::f64::consts::PI;

    #[test]
    fn elliptic_evaluations_of_low_coefficients() {
        let t = 0.36;
        let (k, e) = elliptic_complete(t).unwrap();
        let d = fourier_coeffs(t, 4).unwrap();
        assert!((d.f(0) - 2.0 / PI * k).abs() < 1e-14);
        assert!((d.fbar(0) - 2.0 / PI * ((t - 1.0) * k + 2.0 * e)).abs() < 1e-14);
        assert!((d.f(1) - 2.0 / PI / t.sqrt() * (k - e)).abs() < 1e-14);
        assert!((d.f(-1) - d.f(1)).abs() == 0.0);
        let fb1 = -2.0 / (3.0 * PI) / t.sqrt() * ((t - 1.0) * k + (t + 1.0) * e);
        assert!((d.fbar(1) - fb1).abs() < 1e-14);
        assert!(d.route_gap < 1e-12);
    }

    #[test]
    fn jost_factorisation_on_circle() {
        let t = 0.4;
        for j in 0..64 {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 64.0 + 0.01);
            let fp = jost(z, t, JostSide::Interior).unwrap();
            let fm = jost(z, t, JostSide::Exterior).unwrap();
            assert!((low_symbol(z, t) * fp * fm - 1.0).norm() < 1e-12);
        }
        assert!(jost(Complex64::new(2.0, 0.0), 0.64, JostSide::Interior).is_err());
        assert!(jost(Complex64::new(0.5, 0.0), 0.64, JostSide::Exterior).is_err());
        let inf = Complex64::new(f64::INFINITY, 0.0);
        assert_eq!(jost(inf, t, JostSide::Exterior).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn anchor_and_zero_t() {
        let tab = GTable::new(0.0, -1, 3).unwrap();
        assert_eq!(tab.get(-1, -1), -1.0);
        assert_eq!(tab.get(2, 1), 0.0);
        assert_eq!(tab.get(0, 0), 0.0);
        for i in 1..8 {
            let t = i as f64 / 10.0;
            assert!(GTable::new(t, -1, 2).unwrap().anchor_residual().abs() < 1e-12);
        }
    }

    #[test]
    fn g00_elliptic_form() {
        let t = 0.3;
        let (k, e) = elliptic_complete(t).unwrap();
        let expect = (-PI * PI + 4.0 * (t - 1.0) * k * k + 8.0 * k * e) / (2.0 * PI * PI);
        assert!((g_entry(0, 0, t).unwrap() - expect).abs() < 1e-14);
    }

    #[test]
    fn closed_form_matches_series() {
        for &t in &[0.2, 0.5] {
            for l in -1..=6i64 {
                for m in -1..=6i64 {
                    let a = g_entry(l, m, t).unwrap();
                    let b = g_entry_series(l, m, t).unwrap();
                    assert!((a - b).abs() < 1e-12, "({l},{m}) t={t}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn truncation_rule() {
        assert_eq!(default_truncation(0.1, 0), 16);
        assert_eq!(default_truncation(0.1, 12), 8);
        assert_eq!(default_truncation(0.999, 0), 512);
    }

    #[test]
    fn lambda_zero_determinant_is_one() {
        let p = ModelPoint::low(2, 0.4, 0.0).unwrap();
        assert_eq!(fredholm_disc(&p, None).unwrap(), 1.0);
        assert!(fredholm_disc(&ModelPoint::high(2, 0.4, 1.0).unwrap(), None).is_err());
    }

    #[test]
    fn n_minus_one_is_singular_at_unit_lambda() {
        assert!(discrete_det(0.3, -1, 1.0, None).unwrap().abs() < 1e-13);
        assert!(matches!(marchenko_solve_at(0.3, -1, 1.0, None), Err(Error::Singular(_))));
    }

    #[test]
    fn first_zero_is_reported() {
        let z = first_zero_lambda(0.3, -1, 1.5, None).unwrap().unwrap();
        assert!((z - 1.0).abs() < 1e-9);
        assert!(matches!(
            marchenko_solve_at(0.3, -1, 1.2, None),
            Err(Error::BeyondFirstZero { .. })
        ));
    }
}
