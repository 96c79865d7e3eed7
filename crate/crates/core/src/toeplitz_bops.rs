//! Toeplitz determinants `I_n[zeta^eps w] = det[w_{-eps+j-k}]` of a symbol on
//! the unit circle, the bi-orthogonal polynomial system they define, the
//! associated functions, and the identities tying them together.
//!
//! `I_0 := 1` for every shift, so `kappa_0^2 = 1/w_0` and `r_0 = rbar_0 = 1`.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::point::Phase;
use crate::quad::{circle_moments, circle_rule, MomentTable};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Default circle points for Cauchy integrals over the symbol.
pub const DEFAULT_CIRCLE_POINTS: usize = 1024;
/// Minimum distance from the circle at which Cauchy integrals are trusted.
pub const MIN_CIRCLE_DISTANCE: f64 = 0.05;

/// Symbols with real Fourier coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum Symbol {
    Unit,
    /// `(1 - sqrt(t)/z)^(1/2) (1 - sqrt(t) z)^(-1/2)`.
    IsingLow { t: f64 },
    /// `-z^-1 (1 - sqrt(t) z)^(1/2) (1 - sqrt(t)/z)^(-1/2)`, winding number -1.
    IsingHigh { t: f64 },
    /// `z^power` times another symbol.
    Shifted { power: i32, inner: Box<Symbol> },
    /// `w(1/z)`: moments reversed.
    Reflected(Box<Symbol>),
}

impl Symbol {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Symbol::Unit => Complex64::new(1.0, 0.0),
            Symbol::IsingLow { t } => {
                let st = t.sqrt();
                (1.0 - st / z).sqrt() / (1.0 - st * z).sqrt()
            }
            Symbol::IsingHigh { t } => {
                let st = t.sqrt();
                -(1.0 - st * z).sqrt() / (1.0 - st / z).sqrt() / z
            }
            Symbol::Shifted { power, inner } => z.powi(*power) * inner.eval(z),
            Symbol::Reflected(inner) => inner.eval(z.inv()),
        }
    }

    /// Largest `t` among the Ising factors, setting the annulus of analyticity.
    fn t_param(&self) -> f64 {
        match self {
            Symbol::Unit => 0.0,
            Symbol::IsingLow { t } | Symbol::IsingHigh { t } => *t,
            Symbol::Shifted { inner, .. } | Symbol::Reflected(inner) => inner.t_param(),
        }
    }

    /// Circle points giving double-precision moments up to `k_max`.
    pub fn circle_points(&self, k_max: usize) -> usize {
        let t = self.t_param();
        let need = if t > 0.0 { (2.0 * (1e-18f64).ln() / t.ln()).ceil() as usize } else { 0 };
        (4 * k_max.max(1)).max(need).max(64).next_power_of_two()
    }

    /// Moments `w_{-k_max}..w_{k_max}`.
    pub fn moments(&self, k_max: usize) -> Result<MomentTable<f64>> {
        circle_moments(
            |th: f64| self.eval(Complex64::from_polar(1.0, th)),
            k_max,
            self.circle_points(k_max),
        )
    }
}

/// The Ising symbol of a phase.
pub fn ising_symbol(phase: Phase, t: f64) -> Result<Symbol> {
    if !(t.is_finite() && (0.0..1.0).contains(&t)) {
        return Err(Error::Domain(format!("t = {t} outside [0,1)")));
    }
    Ok(match phase {
        Phase::Low => Symbol::IsingLow { t },
        Phase::High => Symbol::IsingHigh { t },
    })
}

/// `I_n[zeta^eps w] = det[w_{-eps+j-k}]_{0<=j,k<n}`, with `I_0 = 1`.
///
/// ```
/// use isingff::toeplitz_bops::{toeplitz_det, Symbol};
/// let w = Symbol::Unit.moments(6).unwrap();
/// assert_eq!(toeplitz_det(&w, 5, 0).unwrap(), 1.0);
/// ```
pub fn toeplitz_det(moments: &MomentTable<f64>, n: usize, eps: i32) -> Result<f64> {
    if !(-1..=1).contains(&eps) {
        return Err(Error::Parameter(format!("shift eps = {eps} not in {{-1,0,1}}")));
    }
    if n == 0 {
        return Ok(1.0);
    }
    let need = n - 1 + eps.unsigned_abs() as usize;
    if need > moments.k_max() {
        return Err(Error::Parameter(format!(
            "moment window {} too small for I_{n} with eps = {eps}",
            moments.k_max()
        )));
    }
    let m = Matrix::from_fn(n, |j, k| moments.get(j as i64 - k as i64 - eps as i64));
    let lu = m.lu();
    if lu.pivot_ratio() < 1e-13 {
        log::warn!("Toeplitz matrix of size {n} (eps = {eps}) is close to singular");
    }
    Ok(lu.det())
}

/// Determinant ladders, norms and reflection coefficients up to `n_max`.
#[derive(Debug, Clone)]
pub struct BopsState {
    pub n_max: usize,
    pub moments: MomentTable<f64>,
    /// Symbol, when known, for Cauchy integrals and boundary values.
    pub symbol: Option<Symbol>,
    /// `I_n[w]`, `n = 0..=n_max+1`.
    pub i_w: Vec<f64>,
    /// `I_n[zeta w]`, `n = 0..=n_max+1`.
    pub i_zw: Vec<f64>,
    /// `I_n[zeta^-1 w]`, `n = 0..=n_max+1`.
    pub i_zinv_w: Vec<f64>,
    /// `kappa_n^2 = I_n/I_{n+1}`, `n = 0..=n_max`.
    pub kappa_sq: Vec<f64>,
    /// `r_n = (-1)^n I_n[zeta w]/I_n[w]`, `n = 0..=n_max+1`.
    pub r: Vec<f64>,
    /// `rbar_n = (-1)^n I_n[zeta^-1 w]/I_n[w]`, `n = 0..=n_max+1`.
    pub rbar: Vec<f64>,
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Builds the ladder from moments covering `|k| <= n_max + 1`.
pub fn bops_ladder(moments: &MomentTable<f64>, n_max: usize) -> Result<BopsState> {
    let top = n_max + 1;
    let mut i_w = Vec::with_capacity(top + 1);
    let mut i_zw = Vec::with_capacity(top + 1);
    let mut i_zinv_w = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let d = toeplitz_det(moments, n, 0)?;
        if d == 0.0 || !d.is_finite() {
            return Err(Error::Existence(n));
        }
        i_w.push(d);
        i_zw.push(toeplitz_det(moments, n, 1)?);
        i_zinv_w.push(toeplitz_det(moments, n, -1)?);
    }
    let kappa_sq = (0..=n_max).map(|n| i_w[n] / i_w[n + 1]).collect();
    let r = (0..=top).map(|n| sign(n) * i_zw[n] / i_w[n]).collect();
    let rbar = (0..=top).map(|n| sign(n) * i_zinv_w[n] / i_w[n]).collect();
    Ok(BopsState {
        n_max,
        moments: moments.clone(),
        symbol: None,
        i_w,
        i_zw,
        i_zinv_w,
        kappa_sq,
        r,
        rbar,
    })
}

/// Values of the polynomial and associated solutions at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociatedValues {
    pub phi: Complex64,
    pub phi_star: Complex64,
    pub psi: Complex64,
    pub psi_star: Complex64,
    pub eps: Complex64,
    pub eps_star: Complex64,
}

/// Which one-sided boundary value of a function analytic off the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CircleSide {
    Interior,
    Exterior,
}

impl BopsState {
    /// Ladder for a symbol, keeping the symbol for Cauchy integrals.
    pub fn from_symbol(symbol: &Symbol, n_max: usize) -> Result<Self> {
        let moments = symbol.moments(n_max + 2)?;
        let mut s = bops_ladder(&moments, n_max)?;
        s.symbol = Some(symbol.clone());
        Ok(s)
    }

    /// `kappa_n`, requiring `kappa_n^2 > 0`.
    pub fn kappa(&self, n: usize) -> Result<f64> {
        let k2 = self.kappa_sq[n];
        if k2 > 0.0 {
            Ok(k2.sqrt())
        } else {
            Err(Error::NonPositiveNorm(n))
        }
    }

    /// `phi_n(0) = kappa_n r_n`.
    pub fn phi0(&self, n: usize) -> Result<f64> {
        Ok(self.kappa(n)? * self.r[n])
    }

    /// `phibar_n(0) = kappa_n rbar_n`.
    pub fn phibar0(&self, n: usize) -> Result<f64> {
        Ok(self.kappa(n)? * self.rbar[n])
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Parameter(format!("level {n} beyond n_max = {}", self.n_max)));
        }
        Ok(())
    }

    /// `(phi_k(z), phi*_k(z))` for `k = 0..=n` by the forward recurrence; with
    /// `conjugate` the roles of `r` and `rbar` swap, giving `(phibar_k, phibar*_k)`.
    pub fn polynomials(&self, n: usize, z: Complex64, conjugate: bool) -> Result<Vec<(Complex64, Complex64)>> {
        self.check_level(n)?;
        let k0 = self.kappa(0)?;
        let mut out = Vec::with_capacity(n + 1);
        let (mut p, mut ps) = (Complex64::new(k0, 0.0), Complex64::new(k0, 0.0));
        out.push((p, ps));
        for k in 0..n {
            let (kk, k1) = (self.kappa(k)?, self.kappa(k + 1)?);
            let (a0, b0) = if conjugate {
                (self.phibar0(k + 1)?, self.phi0(k + 1)?)
            } else {
                (self.phi0(k + 1)?, self.phibar0(k + 1)?)
            };
            let np = (k1 * z * p + a0 * ps) / kk;
            let nps = (k1 * ps + b0 * z * p) / kk;
            p = np;
            ps = nps;
            out.push((p, ps));
        }
        Ok(out)
    }

    /// `(psi_n, psi*_n)` from the recurrence with reversed signs of
    /// `phi_{k+1}(0)`, `phibar_{k+1}(0)`, started at `psi_0 = psi*_0 = 1/kappa_0`.
    pub fn second_kind(&self, n: usize, z: Complex64) -> Result<(Complex64, Complex64)> {
        self.check_level(n)?;
        let k0 = self.kappa(0)?;
        let (mut p, mut ps) = (Complex64::new(1.0 / k0, 0.0), Complex64::new(1.0 / k0, 0.0));
        for k in 0..n {
            let (kk, k1) = (self.kappa(k)?, self.kappa(k + 1)?);
            let np = (k1 * z * p - self.phi0(k + 1)? * ps) / kk;
            let nps = (k1 * ps - self.phibar0(k + 1)? * z * p) / kk;
            p = np;
            ps = nps;
        }
        Ok((p, ps))
    }

    fn symbol_ref(&self) -> Result<&Symbol> {
        self.symbol
            .as_ref()
            .ok_or_else(|| Error::Unsupported("state carries no symbol for circle integrals".into()))
    }

    /// `phi_n`, `phi*_n` and the associated functions at `z`: polynomials by
    /// recurrence, `psi`, `psi*`, `eps`, `eps*` by their Cauchy-integral
    /// definitions on `points` circle nodes.
    pub fn eval_with(&self, n: usize, z: Complex64, points: usize) -> Result<AssociatedValues> {
        self.check_level(n)?;
        let dist = (z.norm() - 1.0).abs();
        if dist < MIN_CIRCLE_DISTANCE {
            return Err(Error::NearCircle(dist));
        }
        let symbol = self.symbol_ref()?;
        let rule = circle_rule::<f64>(points)?;
        let (phi, phi_star) = self.polynomials(n, z, false)?[n];
        let zn = z.powi(n as i32);
        let mut f = Complex64::new(0.0, 0.0);
        let mut eps_int = Complex64::new(0.0, 0.0);
        let mut eps_star_int = Complex64::new(0.0, 0.0);
        let mut psi_int = Complex64::new(0.0, 0.0);
        let mut psi_star_int = Complex64::new(0.0, 0.0);
        for &th in &rule.nodes {
            let zeta = Complex64::from_polar(1.0, th);
            let kern = (zeta + z) / (zeta - z) * symbol.eval(zeta);
            let (p, ps) = self.polynomials(n, zeta, false)?[n];
            // phibar_n(conj zeta) = zeta^-n phi*_n(zeta) on the circle
            let pbar = ps / zeta.powi(n as i32);
            f += kern;
            eps_int += kern * p;
            eps_star_int += kern * ps;
            psi_int += kern * (p - phi);
            psi_star_int += kern * (zn * pbar - phi_star);
        }
        let m = points as f64;
        let (f, eps_int, eps_star_int) = (f / m, eps_int / m, eps_star_int / m);
        let k0 = self.kappa(0)?;
        let w0 = self.moments.get(0);
        let (psi, psi_star, eps, eps_star) = if n == 0 {
            let inv = Complex64::new(1.0 / k0, 0.0);
            (inv, inv, k0 * (w0 + f), k0 * (w0 - f))
        } else {
            (psi_int / m, -psi_star_int / m, eps_int, 1.0 / self.kappa(n)? - eps_star_int)
        };
        Ok(AssociatedValues { phi, phi_star, psi, psi_star, eps, eps_star })
    }

    /// [`BopsState::eval_with`] on the default circle rule.
    pub fn eval(&self, n: usize, z: Complex64) -> Result<AssociatedValues> {
        self.eval_with(n, z, DEFAULT_CIRCLE_POINTS)
    }

    /// Caratheodory function from the moment series: `F^<` inside,
    /// `F^>` outside, evaluated at any `z` where the series converges.
    pub fn caratheodory_series(&self, z: Complex64, side: CircleSide, k_max: usize) -> Result<Complex64> {
        let w = self.symbol_ref()?.moments(k_max)?;
        Ok(caratheodory_from(&w, z, side, k_max))
    }

    /// `(eps_n, eps*_n)` on one side, as `psi + F phi` and `psi* - F phi*`
    /// with the series form of `F`.
    pub fn eps_series(&self, n: usize, z: Complex64, side: CircleSide, k_max: usize) -> Result<(Complex64, Complex64)> {
        let w = self.symbol_ref()?.moments(k_max)?;
        self.eps_series_from(&w, n, z, side, k_max)
    }

    fn eps_series_from(
        &self,
        w: &MomentTable<f64>,
        n: usize,
        z: Complex64,
        side: CircleSide,
        k_max: usize,
    ) -> Result<(Complex64, Complex64)> {
        let (p, ps) = self.polynomials(n, z, false)?[n];
        let (q, qs) = self.second_kind(n, z)?;
        let f = caratheodory_from(w, z, side, k_max);
        Ok((q + f * p, qs - f * ps))
    }

    /// `K_n(z)`, with `Y_{n+1} = K_n Y_n`.
    pub fn k_matrix(&self, n: usize, z: Complex64) -> Result<[[Complex64; 2]; 2]> {
        self.check_level(n + 1)?;
        let kn = self.kappa(n)?;
        let k1 = self.kappa(n + 1)?;
        Ok([
            [k1 * z / kn, Complex64::new(self.phi0(n + 1)? / kn, 0.0)],
            [self.phibar0(n + 1)? * z / kn, Complex64::new(k1 / kn, 0.0)],
        ])
    }

    /// `max_{1<=n<=n_max} |I_{n+1}I_{n-1}/I_n^2 - (1 - r_n rbar_n)|`.
    pub fn ops_i0_residual(&self) -> f64 {
        (1..=self.n_max)
            .map(|n| {
                let lhs = self.i_w[n + 1] * self.i_w[n - 1] / (self.i_w[n] * self.i_w[n]);
                (lhs - (1.0 - self.r[n] * self.rbar[n])).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `max_{1<=n<=n_max} |kappa_n^2 - kappa_{n-1}^2 - phi_n(0) phibar_n(0)|`.
    pub fn ops_kappa_residual(&self) -> f64 {
        (1..=self.n_max)
            .map(|n| {
                let k2 = self.kappa_sq[n];
                (k2 - self.kappa_sq[n - 1] - k2 * self.r[n] * self.rbar[n]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Free-function form of [`BopsState::eval`].
pub fn bops_eval(state: &BopsState, n: usize, z: Complex64) -> Result<AssociatedValues> {
    state.eval(n, z)
}

/// Series of `F` from moments `w_{-k_max..k_max}`.
fn caratheodory_from(w: &MomentTable<f64>, z: Complex64, side: CircleSide, k_max: usize) -> Complex64 {
    let mut acc = Complex64::new(w.get(0), 0.0);
    let mut pw = Complex64::new(1.0, 0.0);
    let x = if side == CircleSide::Interior { z } else { z.inv() };
    for k in 1..=k_max as i64 {
        pw *= x;
        let wk = if side == CircleSide::Interior { w.get(k) } else { w.get(-k) };
        acc += 2.0 * wk * pw;
    }
    if side == CircleSide::Interior {
        acc
    } else {
        -acc
    }
}

/// Maximum jump-condition residual at `circle_points` points:
/// `|w phi_n + eps^>/2 - lambda^2 eps^</2|` and
/// `|w phi*_n - eps*^>/2 + lambda^2 eps*^</2|`.
///
/// Boundary values come from radii `1 -+ delta`, `delta = 1e-3, 5e-4, 2.5e-4`,
/// Richardson-extrapolated to `delta = 0`. Only `lambda = 1` is supported.
pub fn jump_residual(state: &BopsState, n: usize, circle_points: usize, lambda: f64) -> Result<f64> {
    if lambda != 1.0 {
        return Err(Error::Unsupported(
            "jump conditions at lambda != 1 need lambda-deformed polynomials".into(),
        ));
    }
    let symbol = state.symbol_ref()?.clone();
    let t = symbol.t_param();
    let k_max = if t > 0.0 {
        ((2.0 * (1e-18f64).ln() / t.ln()).ceil() as usize).max(8)
    } else {
        8
    };
    let moments = symbol.moments(k_max)?;
    let delta = 1e-3;
    let boundary = |z: Complex64, side: CircleSide| -> Result<(Complex64, Complex64)> {
        let sgn = if side == CircleSide::Interior { -1.0 } else { 1.0 };
        let at = |d: f64| state.eps_series_from(&moments, n, z * (1.0 + sgn * d), side, k_max);
        let g1 = at(delta)?;
        let g2 = at(0.5 * delta)?;
        let g3 = at(0.25 * delta)?;
        let rich = |a: Complex64, b: Complex64, c: Complex64| {
            let r1 = 2.0 * b - a;
            let r2 = 2.0 * c - b;
            let r = (4.0 * r2 - r1) / 3.0;
            if (r - r2).norm() > 1e-6 * r.norm().max(1.0) {
                log::warn!("boundary-value extrapolation changed by {:e}", (r - r2).norm());
            }
            r
        };
        Ok((rich(g1.0, g2.0, g3.0), rich(g1.1, g2.1, g3.1)))
    };
    let mut worst = 0.0f64;
    let lam2 = lambda * lambda;
    for j in 0..circle_points {
        let th = std::f64::consts::PI * (2.0 * j as f64 + 1.0) / circle_points as f64;
        let z = Complex64::from_polar(1.0, th);
        let (p, ps) = state.polynomials(n, z, false)?[n];
        let w = symbol.eval(z);
        let (ein, esin) = boundary(z, CircleSide::Interior)?;
        let (eout, esout) = boundary(z, CircleSide::Exterior)?;
        let a = (w * p + 0.5 * eout - 0.5 * lam2 * ein).norm();
        let b = (w * ps - 0.5 * esout + 0.5 * lam2 * esin).norm();
        worst = worst.max(a).max(b);
    }
    Ok(worst)
}

/// Christoffel-Uvarov-Geronimus map for `w -> z^dir w`, `dir = +-1`.
/// The result covers one level fewer than the input.
pub fn cug_transform(state: &BopsState, dir: i32) -> Result<BopsState> {
    if dir != 1 && dir != -1 {
        return Err(Error::Parameter(format!("direction {dir} must be +1 or -1")));
    }
    if state.n_max == 0 {
        return Err(Error::Parameter("need n_max >= 1 to transform".into()));
    }
    let (a, b) = if dir == 1 { (&state.r, &state.rbar) } else { (&state.rbar, &state.r) };
    for (n, v) in a.iter().enumerate() {
        // moments carry quadrature roundoff, so a vanishing r is only known to ~1e-14
        if v.abs() < 1e-14 || !v.is_finite() {
            return Err(Error::ZeroReflection(n));
        }
    }
    let n_max = state.n_max - 1;
    let top = n_max + 1;
    let i_w: Vec<f64> = (0..=top).map(|n| sign(n) * a[n] * state.i_w[n]).collect();
    let kappa_sq: Vec<f64> = (0..=n_max).map(|n| -state.kappa_sq[n] * a[n] / a[n + 1]).collect();
    let a_new: Vec<f64> = (0..=top)
        .map(|n| {
            if n == 0 {
                1.0
            } else {
                a[n] - state.kappa_sq[n - 1] / state.kappa_sq[n] * a[n + 1] * a[n - 1] / a[n]
            }
        })
        .collect();
    let b_new: Vec<f64> = (0..=top).map(|n| 1.0 / a[n]).collect();
    let _ = b;
    let (r, rbar) = if dir == 1 { (a_new, b_new) } else { (b_new, a_new) };
    let i_zw = (0..=top).map(|n| sign(n) * r[n] * i_w[n]).collect();
    let i_zinv_w = (0..=top).map(|n| sign(n) * rbar[n] * i_w[n]).collect();
    Ok(BopsState {
        n_max,
        moments: state.moments.shifted(dir as i64),
        symbol: state.symbol.as_ref().map(|s| Symbol::Shifted { power: dir, inner: Box::new(s.clone()) }),
        i_w,
        i_zw,
        i_zinv_w,
        kappa_sq,
        r,
        rbar,
    })
}

/// Correlation from the Toeplitz route at `lambda = 1`: `I_n` of the phase's
/// symbol.
pub fn toeplitz_correlation(phase: Phase, n: usize, t: f64) -> Result<f64> {
    let sym = ising_symbol(phase, t)?;
    let w = sym.moments(n + 2)?;
    toeplitz_det(&w, n, 0)
}

/// Serializable summary of the identity residuals of a ladder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LadderResiduals {
    pub ops_i0: f64,
    pub ops_kappa: f64,
}

impl From<&BopsState> for LadderResiduals {
    fn from(s: &BopsState) -> Self {
        Self { ops_i0: s.ops_i0_residual(), ops_kappa: s.ops_kappa_residual() }
    }
}
