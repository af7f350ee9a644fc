//! Korovkin test functions: sup errors on [0, 4] against their closed forms.
//!
//! Run with `cargo run --example korovkin`.

use durrmeyer_lab::analysis::{default_x_grid, korovkin_errors};

fn main() -> durrmeyer_lab::error::Result<()> {
    let grid = default_x_grid();
    println!("u        |S(1)-1|    |S(t)-x|    |S(t^2)-x^2|  16/u+2/u^2");
    for u in [10.0, 100.0, 1000.0, 10000.0] {
        let [e0, e1, e2] = korovkin_errors(u, &grid)?;
        println!(
            "{u:<8} {e0:<11.3e} {e1:<11.3e} {e2:<13.6e} {:.6e}",
            16.0 / u + 2.0 / (u * u)
        );
    }
    Ok(())
}
