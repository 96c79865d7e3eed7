//! `isingff`: evaluate, cross-check and tabulate the correlation routes.
//!
//! Exit status: 0 on success, 1 when a cross-check fails or a computation
//! breaks down, 2 on argument errors. `ISINGFF_THREADS` caps the worker pool.

use clap::{Args, Parser, Subcommand, ValueEnum};
use isingff::fredholm_cont::{discretize, kernel_high, kernel_low};
use isingff::report::{crosscheck_grid, evaluate, CrosscheckReport, GridSpec, Route, RouteOptions, Tolerances};
use isingff::scattering::{default_truncation, KernelMatrix};
use isingff::{Error, ModelPoint, Phase};
use rayon::prelude::*;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "isingff", version, about = "Ising diagonal correlations by independent routes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one route at one point.
    Correlate(CorrelateArgs),
    /// Run every applicable route on a grid and compare.
    Crosscheck(CrosscheckArgs),
    /// Write kernel matrices or tables.
    KernelDump(KernelDumpArgs),
    /// Tabulate a route along one coordinate as CSV.
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
struct Output {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV with a header row.
    #[arg(long)]
    csv: bool,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Budget {
    /// Largest form-factor order.
    #[arg(long, default_value_t = isingff::formfactor::DEFAULT_MAX_ORDER)]
    pmax: usize,
    /// Gauss-Jacobi nodes per variable.
    #[arg(long, default_value_t = isingff::formfactor::DEFAULT_Q)]
    q: usize,
    /// Discrete-kernel truncation size.
    #[arg(long)]
    trunc: Option<usize>,
}

impl Budget {
    fn options(&self) -> RouteOptions {
        RouteOptions { p_max: self.pmax, q: self.q, trunc: self.trunc }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseArg {
    Low,
    High,
}

impl From<PhaseArg> for Phase {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::Low => Phase::Low,
            PhaseArg::High => Phase::High,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Toeplitz,
    Formfactor,
    FredholmCont,
    FredholmDisc,
    Exact,
}

impl From<Method> for Route {
    fn from(m: Method) -> Self {
        match m {
            Method::Toeplitz => Route::Toeplitz,
            Method::Formfactor => Route::Formfactor,
            Method::FredholmCont => Route::FredholmCont,
            Method::FredholmDisc => Route::FredholmDisc,
            Method::Exact => Route::Exact,
        }
    }
}

#[derive(Args)]
struct CorrelateArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "low")]
    phase: PhaseArg,
    #[arg(long, value_enum, default_value = "toeplitz")]
    method: Method,
    #[command(flatten)]
    budget: Budget,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CrosscheckArgs {
    /// Grid such as `n=0..2,t=0.1:0.5:3,lambda=1,phase=low|high`.
    #[arg(long)]
    grid: String,
    /// Pairwise gap tolerance.
    #[arg(long, default_value_t = 1e-7)]
    tol: f64,
    #[command(flatten)]
    budget: Budget,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    #[value(name = "G")]
    G,
    AppellLow,
    AppellHigh,
}

#[derive(Args)]
struct KernelDumpArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 0)]
    n: u32,
    /// Matrix size for `G` (defaults to the automatic truncation).
    #[arg(long)]
    size: Option<usize>,
    /// Nodes for the Appell kernels.
    #[arg(long, default_value_t = 12)]
    q: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Vary {
    T,
    Lambda,
    N,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    vary: Vary,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long, default_value_t = 11)]
    steps: usize,
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0.3)]
    t: f64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "low")]
    phase: PhaseArg,
    #[arg(long, value_enum, default_value = "toeplitz")]
    method: Method,
    #[command(flatten)]
    budget: Budget,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_)
            | Error::Parameter(_)
            | Error::OrderBudget { .. }
            | Error::Stencil(_)
            | Error::Unsupported(_)
            | Error::Branch(_)
            | Error::NearCircle(_) => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn io_fail(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn arg_fail(msg: impl Into<String>) -> Failure {
    Failure { code: 2, message: msg.into() }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(io_fail),
        None => {
            let mut h = std::io::stdout().lock();
            h.write_all(text.as_bytes()).map_err(io_fail)
        }
    }
}

fn csv_text<F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>>(f: F) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    f(&mut w).map_err(io_fail)?;
    let bytes = w.into_inner().map_err(io_fail)?;
    String::from_utf8(bytes).map_err(io_fail)
}

fn fmt_f(v: f64) -> String {
    format!("{v:?}")
}

fn correlate(a: CorrelateArgs) -> Result<(), Failure> {
    let point = ModelPoint::new(a.phase.into(), a.n, a.t, a.lambda)?;
    let route: Route = a.method.into();
    let v = evaluate(&point, route, &a.budget.options())?;
    let text = if a.output.json {
        let j = json!({"point": point, "method": route.name(), "value": v.value, "uncertainty": v.uncertainty});
        serde_json::to_string_pretty(&j).map_err(io_fail)? + "\n"
    } else if a.output.csv {
        csv_text(|w| {
            w.write_record(["phase", "n", "t", "lambda", "method", "value", "uncertainty"])?;
            w.write_record([
                point.phase.to_string(),
                point.n.to_string(),
                fmt_f(point.t),
                fmt_f(point.lambda),
                route.name().to_string(),
                fmt_f(v.value),
                fmt_f(v.uncertainty),
            ])
        })?
    } else {
        format!("{}\n", fmt_f(v.value))
    };
    emit(&a.output.out, &text)
}

fn crosscheck_csv(reports: &[CrosscheckReport]) -> Result<String, Failure> {
    csv_text(|w| {
        w.write_record(["phase", "n", "t", "lambda", "kind", "a", "b", "value", "abs", "rel", "tol", "pass"])?;
        for r in reports {
            let p = &r.point;
            let head = [p.phase.to_string(), p.n.to_string(), fmt_f(p.t), fmt_f(p.lambda)];
            for (route, v) in &r.values {
                let tail = ["value".into(), route.clone(), String::new(), fmt_f(*v), String::new(), String::new(), String::new(), String::new()];
                w.write_record(head.iter().cloned().chain(tail))?;
            }
            for g in &r.gaps {
                let tail = ["gap".into(), g.a.clone(), g.b.clone(), String::new(), fmt_f(g.abs), fmt_f(g.rel), fmt_f(g.tol), g.pass.to_string()];
                w.write_record(head.iter().cloned().chain(tail))?;
            }
            for i in &r.identities {
                let kind = if i.gated { "identity" } else { "diagnostic" };
                let tail = [kind.into(), i.name.clone(), String::new(), fmt_f(i.residual), fmt_f(i.residual.abs()), String::new(), fmt_f(i.tol), i.pass.to_string()];
                w.write_record(head.iter().cloned().chain(tail))?;
            }
            for (route, e) in &r.errors {
                let tail = ["error".into(), route.clone(), e.clone(), String::new(), String::new(), String::new(), String::new(), "false".into()];
                w.write_record(head.iter().cloned().chain(tail))?;
            }
        }
        Ok(())
    })
}

fn crosscheck(a: CrosscheckArgs) -> Result<(), Failure> {
    if !(a.tol.is_finite() && a.tol > 0.0) {
        return Err(arg_fail(format!("--tol must be positive, got {}", a.tol)));
    }
    let grid: GridSpec = a.grid.parse()?;
    let points = grid.points()?;
    let tol = Tolerances { gap: a.tol, ..Tolerances::default() };
    let reports = crosscheck_grid(&points, &a.budget.options(), &tol)?;
    let text = if a.output.csv {
        crosscheck_csv(&reports)?
    } else {
        serde_json::to_string_pretty(&reports).map_err(io_fail)? + "\n"
    };
    emit(&a.output.out, &text)?;
    let failed: Vec<&CrosscheckReport> = reports.iter().filter(|r| !r.pass()).collect();
    eprintln!("crosscheck: {} points, {} failing", reports.len(), failed.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: 1, message: "crosscheck FAIL".into() })
    }
}

fn kernel_dump(a: KernelDumpArgs) -> Result<(), Failure> {
    // leading index columns print as integers
    let (header, rows, int_cols): (Vec<&str>, Vec<Vec<f64>>, usize) = match a.which {
        Which::G => {
            let n = a.n as i64;
            let size = a.size.unwrap_or_else(|| default_truncation(a.t, n));
            let k = KernelMatrix::build(a.t, n, size, 1.0)?;
            let mut rows = Vec::with_capacity(size * size);
            for l in n..n + size as i64 {
                for m in n..n + size as i64 {
                    rows.push(vec![l as f64, m as f64, k.g(l, m)]);
                }
            }
            (vec!["l", "m", "g"], rows, 2)
        }
        Which::AppellLow | Which::AppellHigh => {
            let phase = if matches!(a.which, Which::AppellLow) { Phase::Low } else { Phase::High };
            let nodes = discretize(phase, a.n, a.t, a.q)?.nodes;
            let mut rows = Vec::with_capacity(a.q * a.q);
            for &x in &nodes {
                for &y in &nodes {
                    rows.push(match phase {
                        Phase::Low => vec![x, y, kernel_low(x, y, a.n, a.t)?],
                        Phase::High => {
                            let k = kernel_high(x, y, a.n, a.t)?;
                            vec![x, y, k.k0, k.k1x, k.k2xy]
                        }
                    });
                }
            }
            let header = match phase {
                Phase::Low => vec!["x", "y", "k"],
                Phase::High => vec!["x", "y", "k0", "k1x", "k2xy"],
            };
            (header, rows, 0)
        }
    };
    let which = match a.which {
        Which::G => "G",
        Which::AppellLow => "appell-low",
        Which::AppellHigh => "appell-high",
    };
    let text = if a.output.json {
        let rows: Vec<Vec<serde_json::Value>> = rows
            .iter()
            .map(|r| r.iter().enumerate().map(|(i, &v)| if i < int_cols { json!(v as i64) } else { json!(v) }).collect())
            .collect();
        let j = json!({"which": which, "t": a.t, "n": a.n, "columns": header, "rows": rows});
        serde_json::to_string_pretty(&j).map_err(io_fail)? + "\n"
    } else {
        csv_text(|w| {
            w.write_record(&header)?;
            for r in &rows {
                w.write_record(r.iter().enumerate().map(|(i, v)| if i < int_cols { format!("{}", *v as i64) } else { fmt_f(*v) }))?;
            }
            Ok(())
        })?
    };
    emit(&a.output.out, &text)
}

fn sweep(a: SweepArgs) -> Result<(), Failure> {
    if a.steps == 0 {
        return Err(arg_fail("--steps must be >= 1"));
    }
    let coord: Vec<f64> = if a.vary == Vary::N {
        if a.from < 0.0 || a.to < a.from || a.from.fract() != 0.0 || a.to.fract() != 0.0 {
            return Err(arg_fail("--vary n needs integer --from <= --to"));
        }
        (a.from as u32..=a.to as u32).map(f64::from).collect()
    } else if a.steps == 1 {
        vec![a.from]
    } else {
        (0..a.steps).map(|i| a.from + (a.to - a.from) * i as f64 / (a.steps - 1) as f64).collect()
    };
    let phase: Phase = a.phase.into();
    let points: Vec<ModelPoint> = coord
        .iter()
        .map(|&c| match a.vary {
            Vary::T => ModelPoint::new(phase, a.n, c, a.lambda),
            Vary::Lambda => ModelPoint::new(phase, a.n, a.t, c),
            Vary::N => ModelPoint::new(phase, c as u32, a.t, a.lambda),
        })
        .collect::<Result<_, _>>()?;
    let route: Route = a.method.into();
    let opts = a.budget.options();
    let results: Vec<_> = points.par_iter().map(|p| evaluate(p, route, &opts)).collect();
    let text = csv_text(|w| {
        w.write_record(["phase", "n", "t", "lambda", "method", "value", "uncertainty", "error"])?;
        for (p, r) in points.iter().zip(&results) {
            let (v, u, e) = match r {
                Ok(v) => (fmt_f(v.value), fmt_f(v.uncertainty), String::new()),
                Err(e) => (String::new(), String::new(), e.to_string()),
            };
            w.write_record([p.phase.to_string(), p.n.to_string(), fmt_f(p.t), fmt_f(p.lambda), route.name().into(), v, u, e])?;
        }
        Ok(())
    })?;
    emit(&a.out, &text)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("ISINGFF_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| arg_fail(format!("ISINGFF_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(io_fail)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let run = configure_threads().and_then(|_| match cli.command {
        Command::Correlate(a) => correlate(a),
        Command::Crosscheck(a) => crosscheck(a),
        Command::KernelDump(a) => kernel_dump(a),
        Command::Sweep(a) => sweep(a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
