use durrmeyer_lab::kernel::UnSequence;
use durrmeyer_lab::moments::{
    central_moment, moment_oracle, order_bound_exponent, raw_moment, recurrence_step,
    recurrence_step_x_distributed, second_moment_limit_check, zeta, MomentKind, MomentPolynomial,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn poly(order: u32, kind: MomentKind, terms: &[(u32, u32, i64)]) -> MomentPolynomial {
    MomentPolynomial::from_int_terms(order, kind, terms)
}

/// `E[(T - x)^m]` under the operator, from a naive Poisson recursion and the
/// binomial expansion of the Gamma moments `E[T^k | j] = (j+1)...(j+k)/u^k`.
fn brute_central(m: u32, u: f64, x: f64) -> f64 {
    let lambda = u * x;
    let mut p = (-lambda).exp();
    let mut total = 0.0;
    for j in 0..4000u32 {
        let mut central = 0.0;
        let mut binom = 1.0;
        for k in 0..=m {
            let raw: f64 = (1..=k).map(|i| (j + i) as f64 / u).product();
            central += binom * raw * (-x).powi((m - k) as i32);
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
        total += p * central;
        p *= lambda / (j + 1) as f64;
    }
    total
}

#[test]
fn low_order_closed_forms() {
    assert!(central_moment(0).same_coefficients(&poly(0, MomentKind::Central, &[(0, 0, 1)])));
    assert!(central_moment(1).same_coefficients(&poly(1, MomentKind::Central, &[(0, 1, 1)])));
    assert!(central_moment(2).same_coefficients(&poly(
        2,
        MomentKind::Central,
        &[(1, 1, 2), (0, 2, 2)]
    )));
    assert!(central_moment(3).same_coefficients(&poly(
        3,
        MomentKind::Central,
        &[(1, 2, 12), (0, 3, 6)]
    )));
    assert!(central_moment(4).same_coefficients(&poly(
        4,
        MomentKind::Central,
        &[(2, 2, 12), (1, 3, 72), (0, 4, 24)]
    )));
    assert!(raw_moment(2).same_coefficients(&poly(
        2,
        MomentKind::Raw,
        &[(2, 0, 1), (1, 1, 4), (0, 2, 2)]
    )));
    assert!(zeta().same_coefficients(&raw_moment(1)));
    assert_eq!(central_moment(2).to_string(), "2*x/u + 2/u^2");
}

#[test]
fn central_moments_match_brute_force_expectation() {
    for m in 0..=6 {
        let p = central_moment(m);
        for &(u, x) in &[(1.0, 0.5), (3.0, 1.0), (10.0, 2.0), (40.0, 0.25)] {
            let exact = p.evaluate(x, u);
            let brute = brute_central(m, u, x);
            assert!(
                (exact - brute).abs() <= 1e-10 * (1.0 + exact.abs()),
                "m={m} u={u} x={x}: {exact} vs {brute}"
            );
        }
    }
}

#[test]
fn corrected_recurrence_closes_and_x_distributed_form_does_not() {
    let mut prev = central_moment(0);
    let mut cur = central_moment(1);
    for m in 1..=7 {
        let next = recurrence_step(&cur, Some(&prev), m).unwrap();
        assert!(next.same_coefficients(&central_moment(m + 1)), "m = {m}");
        prev = std::mem::replace(&mut cur, next);
    }
    let printed =
        recurrence_step_x_distributed(&central_moment(1), Some(&central_moment(0)), 1).unwrap();
    let expected = poly(2, MomentKind::Central, &[(1, 1, 2), (1, 2, 2)]);
    assert!(printed.same_coefficients(&expected));
    assert!(!printed.same_coefficients(&central_moment(2)));
}

#[test]
fn recurrence_rejects_mismatched_inputs() {
    assert!(recurrence_step(&raw_moment(1), Some(&central_moment(0)), 1).is_err());
    assert!(recurrence_step(&central_moment(2), Some(&central_moment(0)), 2).is_err());
    assert!(recurrence_step(&central_moment(2), None, 2).is_err());
    assert!(recurrence_step(&central_moment(0), None, 0)
        .unwrap()
        .same_coefficients(&central_moment(1)));
}

#[test]
fn order_bound_is_attained() {
    for m in 1..=10 {
        assert_eq!(
            central_moment(m).min_inverse_u_degree(),
            Some(order_bound_exponent(m)),
            "m = {m}"
        );
    }
}

#[test]
fn second_moment_limit() {
    let values = second_moment_limit_check(1.5, &UnSequence::Identity, 10_000).unwrap();
    for (n, v) in values.iter().enumerate() {
        let u = (n + 1) as f64;
        assert!((v - 3.0 - 2.0 / u).abs() < 1e-12);
    }
    assert!(second_moment_limit_check(1.0, &UnSequence::Identity, 1).is_err());
}

#[test]
fn exact_evaluation_agrees_with_float_evaluation() {
    let x = BigRational::new(BigInt::from(3), BigInt::from(2));
    let u = BigRational::from_integer(BigInt::from(10));
    let exact = central_moment(2).evaluate_exact(&x, &u);
    assert_eq!(exact, BigRational::new(BigInt::from(8), BigInt::from(25)));
    assert!((central_moment(2).evaluate(1.5, 10.0) - 0.32).abs() < 1e-15);
}

proptest! {
    #[test]
    fn oracle_matches_raw_closed_forms(m in 0u32..=6, u in 0.5f64..200.0, x in 0.0f64..5.0) {
        let exact = raw_moment(m).evaluate(x, u);
        let oracle = moment_oracle(m, u, x, 1e-15).unwrap();
        prop_assert!((oracle - exact).abs() <= 1e-10 * exact.abs().max(1.0), "{} vs {}", oracle, exact);
    }

    #[test]
    fn second_central_moment_is_positive(u in 0.01f64..1e6, x in 0.0f64..100.0) {
        prop_assert!(central_moment(2).evaluate(x, u) > 0.0);
    }

    #[test]
    fn derivative_lowers_x_degree(m in 1u32..=8) {
        let p = central_moment(m);
        let d = p.derivative();
        for (a, b, _) in d.terms() {
            prop_assert!(p.coefficient(a + 1, b) != BigRational::from_integer(BigInt::from(0)));
        }
    }
}
