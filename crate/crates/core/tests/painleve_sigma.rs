//! Sigma-form residuals on the determinant routes.

use isingff::painleve::{sigma_convergence, sigma_residual, SigmaRoute};
use isingff::ModelPoint;

#[test]
fn zero_lambda_is_trivial() {
    for &t in &[0.2, 0.5, 0.7] {
        for n in 0..3 {
            // both sides vanish up to the O(h^2) error of the third-derivative stencil
            let s = sigma_residual(&ModelPoint::low(n, t, 0.0).unwrap(), SigmaRoute::Toeplitz, 1e-3).unwrap();
            assert!(s.sigma.abs() < 1e-10 && s.residual.abs() < 1e-8, "n={n} t={t}: {s:?}");
        }
    }
}

#[test]
fn proven_case_sample() {
    let s = sigma_residual(&ModelPoint::low(1, 0.3, 1.0).unwrap(), SigmaRoute::Toeplitz, 1e-3).unwrap();
    assert!(!s.conjecture_level);
    assert!(s.residual.abs() < 1e-5, "{s:?}");
    let h = sigma_residual(&ModelPoint::high(1, 0.3, 1.0).unwrap(), SigmaRoute::Toeplitz, 1e-3).unwrap();
    assert!(h.residual.abs() < 1e-5, "{h:?}");
}

#[test]
fn routes_share_sigma_at_unit_lambda() {
    let p = ModelPoint::low(2, 0.4, 1.0).unwrap();
    let a = sigma_residual(&p, SigmaRoute::Toeplitz, 1e-3).unwrap();
    let b = sigma_residual(&p, SigmaRoute::DiscreteFredholm, 1e-3).unwrap();
    assert!((a.sigma - b.sigma).abs() < 1e-9, "{} {}", a.sigma, b.sigma);
}

#[test]
fn conjecture_level_sample() {
    let s = sigma_residual(&ModelPoint::low(2, 0.4, 0.7).unwrap(), SigmaRoute::DiscreteFredholm, 1e-3).unwrap();
    assert!(s.conjecture_level);
    eprintln!("conjecture-level residual at (2, 0.7, 0.4): {:e}", s.residual);
    assert!(s.residual.abs() < 1e-4);
}

#[test]
fn second_order_convergence() {
    for p in [ModelPoint::low(1, 0.3, 1.0).unwrap(), ModelPoint::low(2, 0.5, 1.0).unwrap(), ModelPoint::high(2, 0.3, 1.0).unwrap()] {
        let c = sigma_convergence(&p, SigmaRoute::Toeplitz, 2e-3).unwrap();
        assert!(c.ratio > 3.0 && c.ratio < 5.5, "{p:?}: ratio {}", c.ratio);
    }
}
