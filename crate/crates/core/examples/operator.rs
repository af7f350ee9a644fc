//! Evaluating the operator pointwise, on a grid, and with fixed or adaptive quadrature.
//!
//! Run with `cargo run --example operator`.

use durrmeyer_lab::analysis::uniform_grid;
use durrmeyer_lab::evaluator::{apply, apply_discrete_szasz, Operator, QuadratureSpec};
use durrmeyer_lab::function::{Growth, TargetFunction};

fn main() -> durrmeyer_lab::error::Result<()> {
    let u = 50.0;
    let exp = TargetFunction::exp();
    for x in [0.0, 1.0, 2.0] {
        let e = apply(&exp, u, x, &QuadratureSpec::default())?;
        let closed = u / (u - 1.0) * (u * x / (u - 1.0)).exp();
        println!(
            "S(e^t; {x}) = {:.15} (closed form {closed:.15}, {} terms, tail <= {:.1e})",
            e.value, e.terms_used, e.tail_bound
        );
    }

    for order in [4, 16, 64] {
        let v = apply(
            &TargetFunction::monomial(5),
            3.0,
            1.0,
            &QuadratureSpec::fixed(order),
        )?
        .value;
        println!("fixed order {order:>2}: S(t^5; 1) at u = 3 is {v:.15}");
    }

    // User-defined target with a declared growth class.
    let g = TargetFunction::new("t*cos(t)", Growth::Polynomial { degree: 1 }, |t| {
        t * t.cos()
    });
    let grid = uniform_grid(0.0, 3.0, 7);
    let values = Operator::new(&g, 200.0, QuadratureSpec::default())?.evaluate_grid(&grid)?;
    println!("\nx       g(x)        S_200(g; x)");
    for (x, v) in grid.iter().zip(&values) {
        println!("{x:<6.2}  {:<10.6}  {:.6}", g.eval(*x), v.value);
    }

    let d = apply_discrete_szasz(&TargetFunction::sqrt(), 200.0, 1.0, 1e-14)?;
    let s = apply(
        &TargetFunction::sqrt(),
        200.0,
        1.0,
        &QuadratureSpec::default(),
    )?
    .value;
    println!("\nsqrt at x = 1, u = 200: Szász {d:.8}, Durrmeyer {s:.8}");
    Ok(())
}
