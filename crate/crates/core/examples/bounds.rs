//! Lipschitz-type error bounds for Hölder functions and the weighted Lipschitz class.
//!
//! Run with `cargo run --release --example bounds`.

use durrmeyer_lab::analysis::{
    holder_bound_check, lipschitz_space_membership, uniform_grid, weighted_lipschitz_bound_check,
    LipschitzConstant, LipschitzSpaceParams,
};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::function::TargetFunction;

fn main() -> durrmeyer_lab::error::Result<()> {
    let q = QuadratureSpec::default();
    println!("Hölder bound |S(g) - g| <= κ Θ_2^(r/2):");
    for (g, r) in [
        (TargetFunction::exp_neg(), 1.0),
        (TargetFunction::sqrt(), 0.5),
    ] {
        for u in [10.0, 1000.0] {
            let c = holder_bound_check(&g, r, &LipschitzConstant::Analytic(1.0), u, 1.0, &q)?;
            println!(
                "  {} u = {u:<6} lhs {:.4e} rhs {:.4e} holds {}",
                g.name(),
                c.lhs,
                c.rhs,
                c.holds()
            );
        }
    }

    let g = TargetFunction::saturating();
    let params = LipschitzSpaceParams::new(1.0, 1.0, 1.0, 1.0)?;
    let ratio = lipschitz_space_membership(&g, &params, &uniform_grid(0.0, 8.0, 161))?;
    println!(
        "\n{} membership ratio on the grid: {ratio:.4} (<= 1 means inside the class)",
        g.name()
    );
    for u in [10.0, 100.0, 1000.0] {
        let c = weighted_lipschitz_bound_check(&g, &params, u, 2.0, &q)?;
        println!(
            "  u = {u:<6} lhs {:.4e} rhs {:.4e} holds {}",
            c.lhs,
            c.rhs,
            c.holds()
        );
    }
    Ok(())
}
