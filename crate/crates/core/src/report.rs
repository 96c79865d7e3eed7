//! Route dispatch, evaluation grids and the cross-check report schema.
//!
//! Reports serialize deterministically: maps are ordered, gap and identity
//! lists follow a fixed route order, and floats use shortest round-trip form.

use crate::elliptic_exact::exact_values;
use crate::error::{Error, Result};
use crate::formfactor::{correlation_series_with, DEFAULT_MAX_ORDER, DEFAULT_Q};
use crate::fredholm_cont::fredholm_cont;
use crate::painleve::{sigma_residual, SigmaRoute};
use crate::point::{ModelPoint, Phase};
use crate::scattering::{discrete_det, GTable};
use crate::toeplitz_bops::{ising_symbol, toeplitz_correlation, BopsState};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// The independent evaluation routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    Toeplitz,
    Formfactor,
    FredholmCont,
    FredholmDisc,
    Exact,
}

impl Route {
    pub const ALL: [Route; 5] = [Route::Toeplitz, Route::Formfactor, Route::FredholmCont, Route::FredholmDisc, Route::Exact];

    pub fn name(self) -> &'static str {
        match self {
            Route::Toeplitz => "toeplitz",
            Route::Formfactor => "formfactor",
            Route::FredholmCont => "fredholm-cont",
            Route::FredholmDisc => "fredholm-disc",
            Route::Exact => "exact",
        }
    }

    /// Whether the route is defined at `point`.
    pub fn applies(self, point: &ModelPoint) -> bool {
        match self {
            Route::Toeplitz => point.lambda == 1.0,
            Route::Formfactor | Route::FredholmCont => true,
            Route::FredholmDisc => point.phase == Phase::Low,
            Route::Exact => point.n == 0 && point.t > 0.0 && point.lambda <= 1.0,
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Route::ALL
            .iter()
            .copied()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown method '{s}'")))
    }
}

/// Budgets shared by all routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouteOptions {
    /// Largest form-factor order in truncated series.
    pub p_max: usize,
    /// Gauss-Jacobi nodes per variable.
    pub q: usize,
    /// Discrete-kernel truncation; `None` picks it from `t`.
    pub trunc: Option<usize>,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self { p_max: DEFAULT_MAX_ORDER, q: DEFAULT_Q, trunc: None }
    }
}

/// A route's correlation value and the accuracy it can claim.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RouteValue {
    pub value: f64,
    /// Truncation or quadrature bound; zero when negligible.
    pub uncertainty: f64,
}

/// The correlation `<sigma_00 sigma_nn>` (lambda-extended) by one route.
///
/// ```
/// use isingff::report::{evaluate, Route, RouteOptions};
/// use isingff::ModelPoint;
/// let v = evaluate(&ModelPoint::low(0, 0.0, 1.0).unwrap(), Route::Toeplitz, &RouteOptions::default()).unwrap();
/// assert_eq!(v.value, 1.0);
/// ```
pub fn evaluate(point: &ModelPoint, route: Route, opts: &RouteOptions) -> Result<RouteValue> {
    point.validate()?;
    if !route.applies(point) {
        return Err(Error::Unsupported(format!(
            "route {route} is not defined at phase {} n = {} t = {} lambda = {}",
            point.phase, point.n, point.t, point.lambda
        )));
    }
    let pre = point.prefactor();
    match route {
        Route::Toeplitz => Ok(RouteValue { value: toeplitz_correlation(point.phase, point.n as usize, point.t)?, uncertainty: 0.0 }),
        Route::Formfactor => {
            let s = correlation_series_with(point, opts.p_max, opts.q)?;
            Ok(RouteValue { value: s.value, uncertainty: s.tail_estimate + s.est_error })
        }
        Route::FredholmCont => {
            let v = fredholm_cont(point, 0, opts.q)?;
            Ok(RouteValue { value: pre * v.nystrom, uncertainty: 0.0 })
        }
        Route::FredholmDisc => Ok(RouteValue {
            value: pre * discrete_det(point.t, point.n as i64, point.lambda, opts.trunc)?,
            uncertainty: 0.0,
        }),
        Route::Exact => {
            let v = exact_values(point.t, point.lambda)?;
            let value = match point.phase {
                Phase::Low => v.i0_low,
                Phase::High => v.i0_high,
            };
            Ok(RouteValue { value, uncertainty: 0.0 })
        }
    }
}

/// Pairwise discrepancy between two routes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gap {
    pub a: String,
    pub b: String,
    pub abs: f64,
    pub rel: f64,
    pub tol: f64,
    pub pass: bool,
}

/// One identity residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Diagnostics (such as the sigma form away from `lambda = 1`) do not
    /// affect the exit status.
    pub gated: bool,
}

/// Provenance and budgets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub versions: BTreeMap<String, String>,
    pub budgets: BTreeMap<String, f64>,
}

/// Every route's value at one point, their gaps and identity residuals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub point: ModelPoint,
    pub values: BTreeMap<String, f64>,
    pub gaps: Vec<Gap>,
    pub identities: Vec<IdentityCheck>,
    /// Routes that failed to evaluate, with the reason.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub errors: BTreeMap<String, String>,
    pub meta: Meta,
}

impl CrosscheckReport {
    /// No gap or gated identity fails, and no applicable route errored.
    pub fn pass(&self) -> bool {
        self.errors.is_empty()
            && self.gaps.iter().all(|g| g.pass)
            && self.identities.iter().all(|i| i.pass || !i.gated)
    }
}

/// Tolerances for [`crosscheck`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub gap: f64,
    pub szego: f64,
    pub ladder: f64,
    pub anchor: f64,
    pub sigma: f64,
    pub sigma_step: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { gap: 1e-7, szego: 1e-5, ladder: 1e-10, anchor: 1e-10, sigma: 1e-5, sigma_step: 1e-3 }
    }
}

fn identity(name: &str, residual: f64, tol: f64, gated: bool) -> IdentityCheck {
    IdentityCheck { name: name.into(), residual, tol, pass: residual.abs() <= tol, gated }
}

/// Szego order used for the large-`n` identity.
pub const SZEGO_N: usize = 24;

fn identities(point: &ModelPoint, tol: &Tolerances) -> Vec<IdentityCheck> {
    let mut out = Vec::new();
    // the high-phase symbol has winding number -1 and no Szego limit
    if point.lambda == 1.0 && point.phase == Phase::Low {
        if let Ok(i) = toeplitz_correlation(point.phase, SZEGO_N, point.t) {
            out.push(identity("szego", i - point.prefactor(), tol.szego, true));
        }
    }
    if let Ok(sym) = ising_symbol(point.phase, point.t) {
        match BopsState::from_symbol(&sym, point.n as usize + 1) {
            Ok(s) => {
                out.push(identity("ops_i0", s.ops_i0_residual(), tol.ladder, true));
                out.push(identity("ops_kappa", s.ops_kappa_residual(), tol.ladder, true));
            }
            Err(e) => log::warn!("ladder at {point:?}: {e}"),
        }
    }
    if point.t > 0.0 {
        if let Ok(g) = GTable::new(point.t, -1, 0) {
            out.push(identity("g_anchor", g.get(0, 0) + g.get(-1, -1) + 1.0, tol.anchor, true));
        }
    }
    let route = if point.lambda == 1.0 { Some(SigmaRoute::Toeplitz) } else if point.phase == Phase::Low { Some(SigmaRoute::DiscreteFredholm) } else { None };
    if let Some(route) = route {
        if let Ok(s) = sigma_residual(point, route, tol.sigma_step) {
            let name = if s.conjecture_level { "sigma_form_conjecture" } else { "sigma_form" };
            out.push(identity(name, s.residual, tol.sigma, false));
        }
    }
    out
}

/// Runs every applicable route at `point`.
pub fn crosscheck(point: &ModelPoint, opts: &RouteOptions, tol: &Tolerances) -> Result<CrosscheckReport> {
    point.validate()?;
    let mut vals: Vec<(Route, RouteValue)> = Vec::new();
    let mut errors = BTreeMap::new();
    for r in Route::ALL {
        if !r.applies(point) {
            continue;
        }
        match evaluate(point, r, opts) {
            Ok(v) if v.value.is_finite() => vals.push((r, v)),
            Ok(v) => {
                errors.insert(r.name().to_string(), format!("non-finite value {}", v.value));
            }
            Err(e) => {
                errors.insert(r.name().to_string(), e.to_string());
            }
        }
    }
    let mut gaps = Vec::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            let (ra, va) = vals[i];
            let (rb, vb) = vals[j];
            let abs = (va.value - vb.value).abs();
            let scale = va.value.abs().max(vb.value.abs());
            let t = tol.gap.max(va.uncertainty + vb.uncertainty);
            gaps.push(Gap {
                a: ra.name().into(),
                b: rb.name().into(),
                abs,
                rel: if scale > 0.0 { abs / scale } else { 0.0 },
                tol: t,
                pass: abs <= t,
            });
        }
    }
    let values = vals.iter().map(|(r, v)| (r.name().to_string(), v.value)).collect();
    let mut versions = BTreeMap::new();
    versions.insert("isingff".to_string(), env!("CARGO_PKG_VERSION").to_string());
    let mut budgets = BTreeMap::new();
    budgets.insert("p_max".to_string(), opts.p_max as f64);
    budgets.insert("q".to_string(), opts.q as f64);
    if let Some(n) = opts.trunc {
        budgets.insert("trunc".to_string(), n as f64);
    }
    budgets.insert("tol".to_string(), tol.gap);
    Ok(CrosscheckReport {
        point: *point,
        values,
        gaps,
        identities: identities(point, tol),
        errors,
        meta: Meta { versions, budgets },
    })
}

/// Cross-checks a grid in parallel; the output keeps grid order.
pub fn crosscheck_grid(points: &[ModelPoint], opts: &RouteOptions, tol: &Tolerances) -> Result<Vec<CrosscheckReport>> {
    points.par_iter().map(|p| crosscheck(p, opts, tol)).collect()
}

/// Evaluation grid over phase, `n`, `t` and `lambda`.
///
/// Syntax: comma-separated `key=values` with keys `n`, `t`, `lambda`,
/// `phase`. Values are a single number, an inclusive integer range `a..b`,
/// `a:b:k` for `k` evenly spaced points, or alternatives joined by `|`.
/// Missing keys default to `n=0`, `lambda=1`, `phase=low|high`; `t` is required.
///
/// ```
/// use isingff::report::GridSpec;
/// let g: GridSpec = "n=0..2,t=0.1:0.5:3,lambda=1".parse().unwrap();
/// assert_eq!(g.points().unwrap().len(), 18);
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub phases: Vec<Phase>,
    pub n: Vec<u32>,
    pub t: Vec<f64>,
    pub lambda: Vec<f64>,
}

fn parse_reals(key: &str, s: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parameter(format!("cannot parse {key} values '{s}'"));
    let mut out = Vec::new();
    for alt in s.split('|') {
        let parts: Vec<&str> = alt.split(':').collect();
        match parts.len() {
            1 => out.push(alt.trim().parse::<f64>().map_err(|_| bad())?),
            3 => {
                let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
                let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
                let k: usize = parts[2].trim().parse().map_err(|_| bad())?;
                match k {
                    0 => return Err(bad()),
                    1 => out.push(a),
                    _ => out.extend((0..k).map(|i| a + (b - a) * i as f64 / (k - 1) as f64)),
                }
            }
            _ => return Err(bad()),
        }
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(bad());
    }
    Ok(out)
}

fn parse_ints(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::Parameter(format!("cannot parse n values '{s}'"));
    let mut out = Vec::new();
    for alt in s.split('|') {
        if let Some((a, b)) = alt.split_once("..") {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            if b < a {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(alt.trim().parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

impl FromStr for GridSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut g = GridSpec { phases: vec![Phase::Low, Phase::High], n: vec![0], t: Vec::new(), lambda: vec![1.0] };
        for field in s.split(',').filter(|f| !f.trim().is_empty()) {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::Parameter(format!("grid field '{field}' lacks '='")))?;
            match k.trim() {
                "n" => g.n = parse_ints(v)?,
                "t" => g.t = parse_reals("t", v)?,
                "lambda" => g.lambda = parse_reals("lambda", v)?,
                "phase" => {
                    g.phases = match v.trim() {
                        "both" => vec![Phase::Low, Phase::High],
                        other => other.split('|').map(|p| p.trim().parse()).collect::<Result<_>>()?,
                    }
                }
                other => return Err(Error::Parameter(format!("unknown grid key '{other}'"))),
            }
        }
        if g.t.is_empty() {
            return Err(Error::Parameter("grid needs t values".into()));
        }
        Ok(g)
    }
}

impl GridSpec {
    /// Points in phase-major, then `n`, `t`, `lambda` order; all validated.
    pub fn points(&self) -> Result<Vec<ModelPoint>> {
        let mut out = Vec::new();
        for &ph in &self.phases {
            for &n in &self.n {
                for &t in &self.t {
                    for &l in &self.lambda {
                        out.push(ModelPoint::new(ph, n, t, l)?);
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g: GridSpec = "n=1|3,t=0.2,lambda=0:1:3,phase=low".parse().unwrap();
        assert_eq!(g.n, vec![1, 3]);
        assert_eq!(g.lambda, vec![0.0, 0.5, 1.0]);
        assert_eq!(g.points().unwrap().len(), 6);
        assert!("n=0,t=1.5".parse::<GridSpec>().unwrap().points().is_err());
        assert!("n=2..1,t=0.1".parse::<GridSpec>().is_err());
        assert!("m=1,t=0.1".parse::<GridSpec>().is_err());
    }

    #[test]
    fn route_names_round_trip() {
        for r in Route::ALL {
            assert_eq!(r.name().parse::<Route>().unwrap(), r);
        }
    }

    #[test]
    fn report_round_trips_byte_identically() {
        let p = ModelPoint::low(1, 0.3, 1.0).unwrap();
        let r = crosscheck(&p, &RouteOptions::default(), &Tolerances::default()).unwrap();
        let s1 = serde_json::to_string_pretty(&r).unwrap();
        let back: CrosscheckReport = serde_json::from_str(&s1).unwrap();
        let s2 = serde_json::to_string_pretty(&back).unwrap();
        assert_eq!(s1, s2);
        assert!(r.pass(), "{s1}");
    }
}
