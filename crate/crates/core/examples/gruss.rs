//! Grüss-type gap S(fg) - S(f)S(g) and its rescaled residual.
//!
//! Run with `cargo run --release --example gruss`.

use durrmeyer_lab::analysis::{dyadic, gruss_gap, gruss_series};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::function::TargetFunction;
use durrmeyer_lab::kernel::UnSequence;

fn main() -> durrmeyer_lab::error::Result<()> {
    let q = QuadratureSpec::default();
    let t = TargetFunction::monomial(1);
    for (u, x) in [(10.0, 1.0), (100.0, 2.0)] {
        let gap = gruss_gap(&t, &t, x, u, &q)?;
        println!(
            "gap(t, t) at u = {u}, x = {x}: {gap:.12} (exact {:.12})",
            2.0 * x + 1.0 / u
        );
    }

    let f = TargetFunction::exp_neg();
    let g = TargetFunction::sin_plus_two();
    let s = gruss_series(&f, &g, 1.0, &UnSequence::Identity, &dyadic(4, 12), &q)?;
    println!("\nu * gap - 2x f'g' for e^-t and sin t + 2 at x = 1:");
    for (n, r) in s.ns.iter().zip(&s.residuals) {
        println!("  n = {n:<5} {r:.6e}");
    }
    println!("  slope {:?}", s.slope);
    Ok(())
}
