//! Quantitative Voronovskaya: remainder against the weighted modulus of g''.
//!
//! Run with `cargo run --release --example quantitative`.

use durrmeyer_lab::analysis::{dyadic, quantitative_voronovskaya_check, QuantitativePoint};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::function::TargetFunction;
use durrmeyer_lab::kernel::UnSequence;

fn main() -> durrmeyer_lab::error::Result<()> {
    let q = QuadratureSpec::default();
    for g in [
        TargetFunction::exp(),
        TargetFunction::monomial(3),
        TargetFunction::monomial(2),
    ] {
        let s =
            quantitative_voronovskaya_check(&g, 1.0, &UnSequence::Identity, &dyadic(4, 10), &q)?;
        println!("{} at x = 1:", g.name());
        for (((n, l), d), p) in s.ns.iter().zip(&s.remainders).zip(&s.moduli).zip(&s.points) {
            let verdict = match p {
                QuantitativePoint::Ratio { value } => format!("ratio {value:.4}"),
                QuantitativePoint::BothZero => "both zero".to_string(),
                QuantitativePoint::Violation { remainder } => {
                    format!("violation, remainder {remainder:.3e}")
                }
            };
            println!("  n = {n:<5} L = {l:.4e}  modulus = {d:.4e}  {verdict}");
        }
        if let Some(slope) = s.ratios.as_ref().and_then(|r| r.slope) {
            println!("  ratio slope {slope:.4}");
        }
        println!("  violations: {}", s.violations());
    }
    Ok(())
}
