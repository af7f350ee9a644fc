//! Reproduces the two approximation figures as CSV and SVG files.
//!
//! Run with `cargo run --release --example figures -- <output-dir>`.

use std::path::PathBuf;

use durrmeyer_lab::experiment::{run, ExperimentKind, ExperimentSpec};

fn main() -> durrmeyer_lab::error::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    for kind in [ExperimentKind::Figure1, ExperimentKind::Figure2] {
        let spec = ExperimentSpec {
            csv: Some(dir.join(format!("{kind}.csv"))),
            svg: Some(dir.join(format!("{kind}.svg"))),
            ..ExperimentSpec::defaults(kind)
        };
        let report = run(&spec)?;
        println!("{kind} ({}):", report.function);
        for s in &report.summary {
            println!(
                "  n = {:<4} sup error {:.6}  mean error {:.6}",
                s.n, s.sup_error, s.mean_error
            );
        }
        println!(
            "  wrote {} and {}",
            dir.join(format!("{kind}.csv")).display(),
            dir.join(format!("{kind}.svg")).display()
        );
    }
    Ok(())
}
