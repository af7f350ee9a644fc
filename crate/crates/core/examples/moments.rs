//! Exact moment polynomials, the corrected recurrence and the floating-point oracle.
//!
//! Run with `cargo run --example moments`.

use durrmeyer_lab::moments::{
    central_moment, moment_oracle, raw_moment, recurrence_step, recurrence_step_x_distributed,
};

fn main() -> durrmeyer_lab::error::Result<()> {
    for m in 0..=6 {
        println!("Θ_{m} = {}", central_moment(m));
    }
    println!();
    for m in 0..=3 {
        println!("S(t^{m}) = {}", raw_moment(m));
    }

    let next = recurrence_step(&central_moment(1), Some(&central_moment(0)), 1)?;
    let alt = recurrence_step_x_distributed(&central_moment(1), Some(&central_moment(0)), 1)?;
    println!("\nrecurrence from Θ_1, Θ_0:      {next}");
    println!("x-distributed variant gives:   {alt}");

    let (u, x) = (10.0, 1.5);
    println!("\nraw moments at u = {u}, x = {x}:");
    for m in 0..=4 {
        let exact = raw_moment(m).evaluate(x, u);
        let oracle = moment_oracle(m, u, x, 1e-15)?;
        println!("  m = {m}: closed form {exact:.15e}, oracle {oracle:.15e}");
    }
    Ok(())
}
