//! Property tests for kernel symmetries, determinant expansions, route
//! agreement off lambda = 1 and serialization round trips.

use isingff::elliptic_exact::exact_values;
use isingff::fredholm_cont::{kernel_high_k2, kernel_low};
use isingff::linalg::{principal_minor_sum, Matrix};
use isingff::painleve::{SigmaRoute, SigmaSample};
use isingff::report::GridSpec;
use isingff::scattering::{discrete_det, marchenko_solve_at};
use isingff::toeplitz_bops::{toeplitz_det, Symbol};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn continuous_kernels_are_symmetric(x in 0.01f64..0.99, y in 0.01f64..0.99, n in 0u32..4, t in 0.05f64..0.8) {
        prop_assume!((x - y).abs() > 1e-3);
        let a = kernel_low(x, y, n, t).unwrap();
        let b = kernel_low(y, x, n, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        let a = kernel_high_k2(x, y, n, t).unwrap();
        let b = kernel_high_k2(y, x, n, t).unwrap();
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn minor_sums_expand_the_determinant(vals in prop::collection::vec(-1.0f64..1.0, 16), mu in -2.0f64..2.0) {
        let a = Matrix::from_rows(4, vals).unwrap();
        let direct = Matrix::from_fn(4, |i, j| if i == j { 1.0 } else { 0.0 } + mu * a[(i, j)]).det();
        let series: f64 = (0..=4).map(|p| mu.powi(p as i32) * principal_minor_sum(&a, p)).sum();
        prop_assert!((direct - series).abs() < 1e-11 * (1.0 + direct.abs()));
    }

    #[test]
    fn reflection_preserves_toeplitz_determinants(t in 0.0f64..0.8, n in 0usize..8) {
        let w = Symbol::IsingLow { t }.moments(n + 1).unwrap();
        let wr = Symbol::Reflected(Box::new(Symbol::IsingLow { t })).moments(n + 1).unwrap();
        let a = toeplitz_det(&w, n, 0).unwrap();
        let b = toeplitz_det(&wr, n, 0).unwrap();
        prop_assert!((a - b).abs() < 1e-13);
    }

    #[test]
    fn elliptic_values_match_the_discrete_route(t in 0.05f64..0.7, lambda in 0.05f64..0.95) {
        let e = exact_values(t, lambda).unwrap();
        let m = marchenko_solve_at(t, 0, lambda, None).unwrap();
        prop_assert!((e.i1_over_i0 - m.kappa_ratio).abs() < 1e-9);
        let m = marchenko_solve_at(t, -1, lambda, None).unwrap();
        prop_assert!((e.i0_over_iminus1 - m.kappa_ratio).abs() < 1e-9);
        prop_assert!((e.r0 - m.r_next).abs() < 1e-9);
        prop_assert!((e.rbar0 - m.rbar_next).abs() < 1e-9);
        let d = discrete_det(t, 0, lambda, None).unwrap();
        prop_assert!((e.i0_low - (1.0 - t).powf(0.25) * d).abs() < 1e-9);
    }

    #[test]
    fn grid_specs_round_trip(ns in prop::collection::vec(0u32..9, 1..4), ts in prop::collection::vec(0.0f64..1.0, 1..4), low in any::<bool>()) {
        let join = |v: Vec<String>| v.join("|");
        let phase = if low { "low" } else { "both" };
        let spec = format!(
            "n={},t={},phase={phase}",
            join(ns.iter().map(|n| n.to_string()).collect()),
            join(ts.iter().map(|t| t.to_string()).collect()),
        );
        let g: GridSpec = spec.parse().unwrap();
        prop_assert_eq!(&g.n, &ns);
        prop_assert_eq!(&g.t, &ts);
        let pts = g.points().unwrap();
        prop_assert_eq!(pts.len(), ns.len() * ts.len() * if low { 1 } else { 2 });
    }

    #[test]
    fn sigma_samples_round_trip(t in 0.0f64..1.0, s in -1e3f64..1e3, r in -1.0f64..1.0, n in 0u32..10) {
        let sample = SigmaSample {
            t, n, lambda: 1.0, route: SigmaRoute::DiscreteFredholm, h: 1e-3,
            sigma: s, dsigma: s / 3.0, d2sigma: s * 7.1, residual: r, conjecture_level: false,
        };
        let json = serde_json::to_string(&sample).unwrap();
        let back: SigmaSample = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, sample);
        prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
    }
}
