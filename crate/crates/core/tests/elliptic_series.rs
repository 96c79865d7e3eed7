//! Elliptic closed forms against the known coefficients of their
//! lambda-expansions, the Toeplitz ladder at lambda = 1 and the Marchenko
//! system.

use isingff::elliptic_exact::{exact_values, lambda_series, ExactQuantity};
use isingff::scattering::{marchenko_solve_at, GTable};
use isingff::specfun::elliptic_complete;
use isingff::toeplitz_bops::toeplitz_correlation;
use isingff::Phase;
use std::f64::consts::PI;

mod common;

use common::{odd, series_coeffs, taylor};

const TS: [f64; 2] = [0.3, 0.5];

fn close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() < tol, "{what}: {a} vs {b} (gap {:e})", (a - b).abs());
}

#[test]
fn library_series_matches_closed_form_coefficients() {
    for &t in &TS {
        let p = series_coeffs(t);
        let pre = (1.0 - t).powf(-0.25);
        let c = lambda_series(ExactQuantity::I1OverI0, t, 4).unwrap();
        close(c[2], p.i1_2, 1e-5, "I1/I0 l^2");
        close(c[4], p.i1_4, 1e-5, "I1/I0 l^4");
        let c = lambda_series(ExactQuantity::I0OverIminus1, t, 4).unwrap();
        close(c[2], p.im1_2, 1e-5, "I0/I-1 l^2");
        close(c[4], p.im1_4, 1e-5, "I0/I-1 l^4");
        let c = lambda_series(ExactQuantity::R0, t, 3).unwrap();
        close(c[1], p.r0_1, 1e-5, "r0 l");
        close(c[3], p.r0_3, 1e-5, "r0 l^3");
        let c = lambda_series(ExactQuantity::Rbar0, t, 3).unwrap();
        close(c[1], p.rbar0_1, 1e-5, "rbar0 l");
        close(c[3], p.rbar0_3, 1e-5, "rbar0 l^3");
        let c = lambda_series(ExactQuantity::I0Low, t, 4).unwrap();
        close(pre * c[2], p.low_2, 1e-5, "I0 low l^2");
        close(pre * c[4], p.low_4, 1e-5, "I0 low l^4");
        let c = lambda_series(ExactQuantity::I0High, t, 3).unwrap();
        close(pre * c[1], p.high_1, 1e-5, "I0 high l");
        close(pre * c[3], p.high_3, 1e-5, "I0 high l^3");
    }
}

#[test]
fn fifth_order_high_temperature_coefficient() {
    for &t in &TS {
        let p = series_coeffs(t);
        let pre = (1.0 - t).powf(-0.25);
        let f = |l: f64| odd(pre * exact_values(t, l.abs()).unwrap().i0_high, l);
        close(taylor(&f, 5, 0.2), p.high_5, 1e-5, "I0 high l^5");
    }
}

#[test]
fn marchenko_expansion_matches_closed_form_coefficients() {
    for &t in &TS {
        let p = series_coeffs(t);
        let m = |n: i64, l: f64| marchenko_solve_at(t, n, l, None).unwrap();
        let k0 = |l: f64| m(0, l).kappa_ratio;
        close(taylor(&k0, 2, 0.2), p.i1_2, 1e-5, "Marchenko I1/I0 l^2");
        close(taylor(&k0, 4, 0.2), p.i1_4, 1e-5, "Marchenko I1/I0 l^4");
        let km = |l: f64| m(-1, l).kappa_ratio;
        close(taylor(&km, 2, 0.2), p.im1_2, 1e-5, "Marchenko I0/I-1 l^2");
        close(taylor(&km, 4, 0.2), p.im1_4, 1e-5, "Marchenko I0/I-1 l^4");
        let r = |l: f64| m(-1, l).r_next;
        close(taylor(&r, 1, 0.2), p.r0_1, 1e-5, "Marchenko r0 l");
        close(taylor(&r, 3, 0.2), p.r0_3, 1e-5, "Marchenko r0 l^3");
        let rb = |l: f64| m(-1, l).rbar_next;
        close(taylor(&rb, 1, 0.2), p.rbar0_1, 1e-5, "Marchenko rbar0 l");
        close(taylor(&rb, 3, 0.2), p.rbar0_3, 1e-5, "Marchenko rbar0 l^3");
    }
}

#[test]
fn unit_lambda_matches_toeplitz_ratio() {
    for &t in &[0.2, 0.4, 0.6] {
        let exact = exact_values(t, 1.0).unwrap().i1_over_i0;
        let ratio = toeplitz_correlation(Phase::Low, 1, t).unwrap() / toeplitz_correlation(Phase::Low, 0, t).unwrap();
        close(exact, ratio, 1e-9, "I1/I0 at lambda = 1");
        let (_, e) = elliptic_complete(t).unwrap();
        close(exact, 2.0 * e / PI, 1e-12, "2E/pi");
    }
}

#[test]
fn leading_coefficients_match_the_scattering_kernel() {
    for &t in &[0.2, 0.3, 0.5] {
        let g = GTable::new(t, -1, 0).unwrap();
        let c = lambda_series(ExactQuantity::I1OverI0, t, 2).unwrap();
        close(c[2], -g.get(0, 0), 1e-6, "I1/I0 l^2 vs -G00");
        let c = lambda_series(ExactQuantity::I0OverIminus1, t, 2).unwrap();
        close(c[2], -g.get(-1, -1), 1e-6, "I0/I-1 l^2 vs -G-1-1");
        // trace of the kernel over n1 >= 0
        let hi = ((1e-18f64).ln() / t.ln()).ceil() as i64;
        let g = GTable::new(t, -1, hi).unwrap();
        let trace: f64 = (0..=hi).map(|l| g.get(l, l)).sum();
        let c = lambda_series(ExactQuantity::I0Low, t, 2).unwrap();
        close((1.0 - t).powf(-0.25) * c[2], trace, 1e-6, "I0 low l^2 vs trace");
    }
}
