use durrmeyer_lab::analysis::{
    dyadic, gruss_gap, holder_bound_check, kappa_estimate, korovkin_errors, uniform_grid,
    voronovskaya_residual, weighted_modulus_estimate, LipschitzConstant,
};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::function::TargetFunction;
use proptest::prelude::*;

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn modulus(g: &TargetFunction, xi: f64) -> f64 {
    weighted_modulus_estimate(
        g,
        xi,
        &uniform_grid(0.0, xi, 65),
        &uniform_grid(0.0, 4.0, 401),
    )
    .unwrap()
}

#[test]
fn korovkin_sup_errors_follow_the_formulas() {
    let grid = uniform_grid(0.0, 4.0, 401);
    for &u in &[10.0, 100.0, 1000.0] {
        let [e0, e1, e2] = korovkin_errors(u, &grid).unwrap();
        assert!(e0 <= 1e-15);
        assert!((e1 - 1.0 / u).abs() < 1e-12);
        assert!((e2 - (16.0 / u + 2.0 / (u * u))).abs() < 1e-12);
    }
}

#[test]
fn lipschitz_bound_for_decaying_exponential() {
    let c = holder_bound_check(
        &TargetFunction::exp_neg(),
        1.0,
        &LipschitzConstant::Analytic(1.0),
        50.0,
        2.0,
        &q(),
    )
    .unwrap();
    assert!(c.holds(), "{c:?}");
    // rhs = sqrt(Θ_2(2)) at u = 50.
    assert!((c.rhs - (4.0f64 / 50.0 + 2.0 / 2500.0).sqrt()).abs() < 1e-14);
}

#[test]
fn kappa_grid_estimate_is_a_lower_bound() {
    let grid = uniform_grid(0.0, 4.0, 400);
    let k = kappa_estimate(&TargetFunction::exp_neg(), 1.0, &grid).unwrap();
    assert!(k <= 1.0 && k > 0.98);
}

#[test]
fn voronovskaya_limit_for_exp_at_one() {
    let r = voronovskaya_residual(&TargetFunction::exp(), 1.0, 4096.0, &q()).unwrap();
    // Limit target 2e; the residual is of order 1/u.
    assert!(r.abs() < 10.0 / 4096.0);
}

#[test]
fn modulus_decays_with_step() {
    let g = TargetFunction::exp_neg();
    let mut last = f64::INFINITY;
    for xi in [1.0, 0.1, 0.01, 1e-3, 1e-4] {
        let d = modulus(&g, xi);
        assert!(d <= last);
        last = d;
    }
    assert!(last < 1e-3);
}

#[test]
fn dyadic_indices() {
    assert_eq!(dyadic(4, 6), vec![16, 32, 64]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn modulus_is_nondecreasing_in_step(xi in 0.01f64..2.0, factor in 1.0f64..3.0) {
        for g in [TargetFunction::sin_plus_two(), TargetFunction::monomial(2), TargetFunction::sqrt()] {
            // Nested h grids make the grid estimate monotone as well.
            let x_grid = uniform_grid(0.0, 4.0, 101);
            let h_small = uniform_grid(0.0, xi, 33);
            let mut h_large = h_small.clone();
            h_large.extend(uniform_grid(xi, xi * factor, 33));
            let small = weighted_modulus_estimate(&g, xi, &h_small, &x_grid).unwrap();
            let large = weighted_modulus_estimate(&g, xi * factor, &h_large, &x_grid).unwrap();
            prop_assert!(small <= large);
        }
    }

    #[test]
    fn modulus_scaling_property(xi in 0.05f64..1.0, eta in 0.5f64..4.0) {
        for g in [TargetFunction::sin_plus_two(), TargetFunction::monomial(2), TargetFunction::exp_neg()] {
            let scaled = modulus(&g, eta * xi);
            let base = modulus(&g, xi);
            prop_assert!(scaled <= 2.0 * (1.0 + eta) * (1.0 + xi * xi) * base * (1.0 + 1e-9));
        }
    }

    #[test]
    fn gruss_gap_is_symmetric(x in 0.0f64..3.0, u in 2.0f64..500.0) {
        let f = TargetFunction::exp_neg();
        let g = TargetFunction::sin_plus_two();
        let ab = gruss_gap(&f, &g, x, u, &q()).unwrap();
        let ba = gruss_gap(&g, &f, x, u, &q()).unwrap();
        prop_assert!((ab - ba).abs() <= 1e-10);
    }

    #[test]
    fn linear_function_obeys_the_lipschitz_bound(x in 0.0f64..4.0, u in 1.0f64..1000.0) {
        let c = holder_bound_check(&TargetFunction::monomial(1), 1.0, &LipschitzConstant::Analytic(1.0), u, x, &q()).unwrap();
        prop_assert!(c.holds());
        prop_assert!((c.lhs - 1.0 / u).abs() < 1e-12);
    }
}
