use durrmeyer_lab::error::Error;
use durrmeyer_lab::kernel::{poisson_weight, truncation_window, BasisParams, UnSequence};
use proptest::prelude::*;

/// Poisson masses by the forward recursion `p_{j+1} = p_j λ / (j+1)`.
fn naive_masses(lambda: f64, count: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(count);
    let mut p = (-lambda).exp();
    for j in 0..count {
        out.push(p);
        p *= lambda / (j + 1) as f64;
    }
    out
}

#[test]
fn weights_match_naive_recursion_for_moderate_rates() {
    for &(c, x) in &[(1.0, 0.5), (10.0, 0.3), (25.0, 2.0), (100.0, 4.0)] {
        let naive = naive_masses(c * x, 800);
        for (j, &p) in naive.iter().enumerate() {
            if p < 1e-280 {
                continue;
            }
            let w = poisson_weight(BasisParams::new(c, j as u64, x)).unwrap();
            assert!(((w - p) / p).abs() < 1e-11, "c={c} x={x} j={j}: {w} vs {p}");
        }
    }
}

#[test]
fn origin_puts_all_mass_on_the_first_term() {
    assert_eq!(poisson_weight(BasisParams::new(7.0, 0, 0.0)).unwrap(), 1.0);
    assert_eq!(poisson_weight(BasisParams::new(7.0, 3, 0.0)).unwrap(), 0.0);
    let w = truncation_window(7.0, 0.0, 1e-14).unwrap();
    assert_eq!((w.j_min, w.j_max), (0, 0));
}

#[test]
fn invalid_parameters_are_domain_errors() {
    for p in [
        BasisParams::new(0.0, 1, 1.0),
        BasisParams::new(-1.0, 1, 1.0),
        BasisParams::new(1.0, 1, -0.5),
        BasisParams::new(f64::NAN, 1, 1.0),
    ] {
        assert!(matches!(poisson_weight(p), Err(Error::Domain(_))), "{p:?}");
    }
}

#[test]
fn sequences() {
    assert_eq!(
        UnSequence::Identity.values(&[1, 2, 50]).unwrap(),
        vec![1.0, 2.0, 50.0]
    );
    let sq = UnSequence::power(2.0).unwrap();
    assert_eq!(sq.value(7).unwrap(), 49.0);
    assert!(UnSequence::power(0.0).is_err());
    assert!(UnSequence::table(vec![2.0, 3.0]).is_err());
    assert!(UnSequence::table(vec![1.0, 1.0]).is_err());
    let t = UnSequence::table(vec![1.0, 4.0, 9.0]).unwrap();
    assert_eq!(t.value(3).unwrap(), 9.0);
    assert!(t.value(4).is_err());
    assert!(t.value(0).is_err());
}

#[test]
fn sequence_table_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("u.txt");
    std::fs::write(&path, "1, 2.5\n7\n").unwrap();
    assert_eq!(
        UnSequence::from_table_file(&path)
            .unwrap()
            .value(3)
            .unwrap(),
        7.0
    );
    std::fs::write(&path, "1 x").unwrap();
    assert!(matches!(
        UnSequence::from_table_file(&path),
        Err(Error::Config { .. })
    ));
    assert!(matches!(
        UnSequence::from_table_file(&dir.path().join("missing")),
        Err(Error::Io { .. })
    ));
}

proptest! {
    #[test]
    fn window_carries_all_but_the_certified_tail(c in 0.5f64..2000.0, x in 0.0f64..6.0, tol_exp in 4i32..15) {
        let tol = 10f64.powi(-tol_exp);
        let w = truncation_window(c, x, tol).unwrap();
        prop_assert!(w.tail_mass_bound <= tol);
        let inside: f64 = w.indices().map(|j| poisson_weight(BasisParams::new(c, j, x)).unwrap()).sum();
        prop_assert!((1.0 - inside).abs() <= tol + 1e-12, "inside {}", inside);
    }

    #[test]
    fn weights_are_probabilities(c in 0.1f64..1e5, x in 0.0f64..10.0, j in 0u64..100_000) {
        let w = poisson_weight(BasisParams::new(c, j, x)).unwrap();
        prop_assert!((0.0..=1.0).contains(&w));
    }

    #[test]
    fn weights_are_unimodal_in_j(c in 0.5f64..500.0, x in 0.01f64..5.0) {
        let w = truncation_window(c, x, 1e-12).unwrap();
        let ws: Vec<f64> = w.indices().map(|j| poisson_weight(BasisParams::new(c, j, x)).unwrap()).collect();
        let peak = ws.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
        prop_assert!(ws[..=peak].windows(2).all(|p| p[0] <= p[1] * (1.0 + 1e-12)));
        prop_assert!(ws[peak..].windows(2).all(|p| p[1] <= p[0] * (1.0 + 1e-12)));
    }
}
