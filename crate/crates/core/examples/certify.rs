//! Runs every certification suite and prints a compact summary.
//!
//! Run with `cargo run --release --example certify`.

use durrmeyer_lab::certify::{certify, CertifyKind};

fn main() -> durrmeyer_lab::error::Result<()> {
    for name in [
        "moments",
        "korovkin",
        "voronovskaya",
        "gruss",
        "quantitative",
        "bounds",
    ] {
        let report = certify(name.parse::<CertifyKind>()?)?;
        let failed = report.failures().count();
        println!("{name:<13} {} checks, {failed} failed", report.checks.len());
    }
    Ok(())
}
