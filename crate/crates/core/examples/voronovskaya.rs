//! Voronovskaya residuals and their log-log convergence slopes.
//!
//! Run with `cargo run --release --example voronovskaya`.

use durrmeyer_lab::analysis::{dyadic, voronovskaya_series};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::function::TargetFunction;
use durrmeyer_lab::kernel::UnSequence;

fn main() -> durrmeyer_lab::error::Result<()> {
    let ns = dyadic(4, 12);
    let q = QuadratureSpec::default();
    for (g, x) in [
        (TargetFunction::exp(), 1.0),
        (TargetFunction::exp_neg(), 0.5),
        (TargetFunction::sin_plus_two(), 2.0),
        (TargetFunction::monomial(2), 1.0),
    ] {
        let s = voronovskaya_series(&g, x, &UnSequence::Identity, &ns, &q)?;
        println!("{} at x = {x}:", g.name());
        for (n, r) in s.ns.iter().zip(&s.residuals) {
            println!("  n = {n:<5} residual {r:.6e}");
        }
        match s.slope {
            Some(p) => println!("  slope {p:.4}"),
            None => println!("  slope undefined"),
        }
    }
    Ok(())
}
