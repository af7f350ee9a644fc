use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use durrmeyer_lab::certify::{certify, CertifyKind};
use durrmeyer_lab::error::{Error, Result};
use durrmeyer_lab::evaluator::QuadratureSpec;
use durrmeyer_lab::experiment::{run, ExperimentKind, ExperimentSpec};
use durrmeyer_lab::kernel::UnSequence;
use durrmeyer_lab::report::format_significant;

#[derive(Parser)]
#[command(
    name = "lab",
    version,
    about = "Numerical lab for Szász-Mirakjan-Durrmeyer operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment: figure1, figure2, korovkin, voronovskaya, gruss, quantitative, bounds, custom.
    Run(RunArgs),
    /// Run a certification suite: korovkin, voronovskaya, gruss, quantitative, bounds, moments.
    Certify {
        theorem: String,
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    kind: String,
    /// Comma-separated list of n values.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    /// identity, power:<p> or table:<path>.
    #[arg(long)]
    sequence: Option<String>,
    /// Builtin function name (t^m for monomials).
    #[arg(long)]
    function: Option<String>,
    /// Second factor for the gruss experiment.
    #[arg(long)]
    partner: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    xmax: Option<f64>,
    #[arg(long)]
    points: Option<usize>,
    /// Point where residual series are evaluated.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    /// Hölder exponent for the bounds experiment.
    #[arg(long)]
    exponent: Option<f64>,
    #[arg(long = "quad-order")]
    quad_order: Option<usize>,
    /// Use the fixed-order rule instead of adaptive doubling.
    #[arg(long)]
    fixed: bool,
    /// Series truncation tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

fn parse_sequence(text: &str) -> Result<UnSequence> {
    if text == "identity" {
        return Ok(UnSequence::Identity);
    }
    if let Some(p) = text.strip_prefix("power:") {
        let p = p.parse().map_err(|_| Error::Config {
            field: "sequence".into(),
            message: format!("bad exponent `{p}`"),
        })?;
        return UnSequence::power(p);
    }
    if let Some(path) = text.strip_prefix("table:") {
        return UnSequence::from_table_file(path.as_ref());
    }
    Err(Error::Config {
        field: "sequence".into(),
        message: format!("expected identity, power:<p> or table:<path>, got `{text}`"),
    })
}

fn build_spec(args: RunArgs) -> Result<ExperimentSpec> {
    let mut spec = ExperimentSpec::defaults(args.kind.parse::<ExperimentKind>()?);
    if let Some(n) = args.n {
        spec.ns = n;
    }
    if let Some(s) = args.sequence {
        spec.sequence = parse_sequence(&s)?;
    }
    if let Some(f) = args.function {
        spec.function = f;
    }
    if args.partner.is_some() {
        spec.partner = args.partner;
    }
    spec.x_min = args.xmin.unwrap_or(spec.x_min);
    spec.x_max = args.xmax.unwrap_or(spec.x_max);
    spec.points = args.points.unwrap_or(spec.points);
    spec.x0 = args.x0.unwrap_or(spec.x0);
    spec.exponent = args.exponent.unwrap_or(spec.exponent);
    let order = args.quad_order.unwrap_or(spec.quadrature.order);
    let mut quad = if args.fixed {
        QuadratureSpec::fixed(order)
    } else {
        QuadratureSpec::adaptive(order)
    };
    quad.series_tol = args.tol.unwrap_or(spec.quadrature.series_tol);
    spec.quadrature = quad;
    spec.csv = args.csv;
    spec.svg = args.svg;
    Ok(spec)
}

fn run_command(args: RunArgs) -> Result<bool> {
    let report = run(&build_spec(args)?)?;
    println!("{} for {}", report.metadata.spec.kind, report.function);
    println!("n,u,sup_error,mean_error");
    for s in &report.summary {
        println!(
            "{},{},{},{}",
            s.n,
            format_significant(s.u),
            format_significant(s.sup_error),
            format_significant(s.mean_error)
        );
    }
    for series in &report.series {
        let slope = series
            .slope
            .map_or("none".to_string(), |s| format!("{s:.4}"));
        println!("{}: log-log slope {slope}", series.label);
    }
    for d in &report.diagnostics {
        println!("diagnostic: {d}");
    }
    Ok(true)
}

fn certify_command(theorem: &str, verbose: bool) -> Result<bool> {
    let report = certify(theorem.parse::<CertifyKind>()?)?;
    print!("{}", report.render(verbose));
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(args) => run_command(args),
        Command::Certify { theorem, verbose } => certify_command(&theorem, verbose),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
