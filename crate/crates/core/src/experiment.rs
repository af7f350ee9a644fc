//! Experiment specifications and the runner that turns them into reports.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::analysis::{self, LipschitzConstant, QuantitativePoint, ResidualSeries};
use crate::error::{Error, Result};
use crate::evaluator::{Operator, QuadratureSpec};
use crate::function::TargetFunction;
use crate::kernel::UnSequence;
use crate::report::{ErrorSummary, ExperimentReport, ReportMetadata, ReportRow, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// `e^x` on `[0, 4]` for `n = 25, 50, 100`.
    Figure1,
    /// `x^2 sin(2 pi x)` on `[0, 4]` for `n = 50, ..., 300`.
    Figure2,
    Korovkin,
    Voronovskaya,
    Gruss,
    Quantitative,
    Bounds,
    Custom,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 8] = [
        ExperimentKind::Figure1,
        ExperimentKind::Figure2,
        ExperimentKind::Korovkin,
        ExperimentKind::Voronovskaya,
        ExperimentKind::Gruss,
        ExperimentKind::Quantitative,
        ExperimentKind::Bounds,
        ExperimentKind::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Figure1 => "figure1",
            ExperimentKind::Figure2 => "figure2",
            ExperimentKind::Korovkin => "korovkin",
            ExperimentKind::Voronovskaya => "voronovskaya",
            ExperimentKind::Gruss => "gruss",
            ExperimentKind::Quantitative => "quantitative",
            ExperimentKind::Bounds => "bounds",
            ExperimentKind::Custom => "custom",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::config("kind", format!("unknown experiment `{s}`")))
    }
}

/// Everything needed to run one experiment. [`ExperimentSpec::defaults`]
/// fills in the per-kind parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Builtin function name, see [`TargetFunction::builtin`].
    pub function: String,
    /// Second factor for Grüss experiments.
    pub partner: Option<String>,
    pub ns: Vec<u64>,
    pub sequence: UnSequence,
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    /// Point at which residual series are computed.
    pub x0: f64,
    /// Hölder exponent for the bound experiment.
    pub exponent: f64,
    pub quadrature: QuadratureSpec,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let (function, ns): (&str, Vec<u64>) = match kind {
            ExperimentKind::Figure1 => ("exp", vec![25, 50, 100]),
            ExperimentKind::Figure2 => ("x2sin2pix", vec![50, 100, 150, 200, 300]),
            ExperimentKind::Korovkin => ("t^2", vec![10, 100, 1000]),
            ExperimentKind::Voronovskaya => ("exp", analysis::dyadic(4, 12)),
            ExperimentKind::Gruss => ("exp_neg", analysis::dyadic(4, 12)),
            ExperimentKind::Quantitative => ("exp", analysis::dyadic(4, 10)),
            ExperimentKind::Bounds => ("exp_neg", vec![1, 10, 50, 100, 1000]),
            ExperimentKind::Custom => ("one", vec![1, 10, 100]),
        };
        ExperimentSpec {
            kind,
            function: function.to_string(),
            partner: (kind == ExperimentKind::Gruss).then(|| "sin_plus_2".to_string()),
            ns,
            sequence: UnSequence::Identity,
            x_min: 0.0,
            x_max: 4.0,
            points: 401,
            x0: 1.0,
            exponent: 1.0,
            quadrature: QuadratureSpec::default(),
            csv: None,
            svg: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ns.is_empty() {
            return Err(Error::config("n", "list must not be empty"));
        }
        if self.ns[0] == 0 || self.ns.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::config(
                "n",
                "values must be positive and strictly increasing",
            ));
        }
        if !(self.x_min.is_finite() && self.x_min >= 0.0) {
            return Err(Error::config(
                "xmin",
                format!("must be a finite value >= 0, got {}", self.x_min),
            ));
        }
        if !(self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::config(
                "xmax",
                format!("must be finite and exceed xmin, got {}", self.x_max),
            ));
        }
        if self.points < 2 {
            return Err(Error::config(
                "points",
                format!("need at least 2 points, got {}", self.points),
            ));
        }
        if !(self.x0.is_finite() && self.x0 >= 0.0) {
            return Err(Error::config(
                "x0",
                format!("must be a finite value >= 0, got {}", self.x0),
            ));
        }
        if !(self.exponent > 0.0 && self.exponent <= 1.0) {
            return Err(Error::config(
                "exponent",
                format!("must lie in (0, 1], got {}", self.exponent),
            ));
        }
        self.sequence.validate()?;
        self.quadrature.validate()?;
        self.sequence
            .values(&self.ns)
            .map_err(|e| Error::config("n", e.to_string()))?;
        let g = TargetFunction::builtin(&self.function)?;
        let needs_derivatives = matches!(
            self.kind,
            ExperimentKind::Voronovskaya | ExperimentKind::Gruss | ExperimentKind::Quantitative
        );
        if needs_derivatives && !g.has_derivatives() {
            return Err(Error::config(
                "function",
                format!("`{}` has no derivatives", self.function),
            ));
        }
        if self.kind == ExperimentKind::Gruss {
            let name = self.partner.as_deref().ok_or_else(|| {
                Error::config("partner", "Grüss experiments need a second function")
            })?;
            let h = TargetFunction::builtin(name)
                .map_err(|e| Error::config("partner", e.to_string()))?;
            if !h.has_derivatives() {
                return Err(Error::config(
                    "partner",
                    format!("`{name}` has no derivatives"),
                ));
            }
        }
        Ok(())
    }

    pub fn x_grid(&self) -> Vec<f64> {
        analysis::uniform_grid(self.x_min, self.x_max, self.points)
    }

    /// The function plotted in the report rows.
    pub fn target(&self) -> Result<TargetFunction> {
        let g = TargetFunction::builtin(&self.function)?;
        match (self.kind, &self.partner) {
            (ExperimentKind::Gruss, Some(p)) => Ok(g.product(&TargetFunction::builtin(p)?)),
            _ => Ok(g),
        }
    }
}

/// Known Lipschitz constants `κ_r` of builtins, used as certified bounds.
pub fn analytic_lipschitz_constant(name: &str, r: f64) -> Option<f64> {
    match (name, r) {
        ("one" | "zero", _) => Some(0.0),
        ("t^1" | "exp_neg" | "sin_plus_2" | "t_over_t_plus_1", r) if r == 1.0 => Some(1.0),
        ("sqrt", r) if r == 0.5 => Some(1.0),
        _ => None,
    }
}

/// Runs the experiment and writes any requested outputs.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let g = spec.target()?;
    let xs = spec.x_grid();
    let us = spec.sequence.values(&spec.ns)?;

    let mut columns = Vec::with_capacity(us.len());
    for &u in &us {
        let mut op = Operator::new(&g, u, spec.quadrature)?;
        columns.push(
            op.evaluate_grid(&xs)?
                .into_iter()
                .map(|e| e.value)
                .collect::<Vec<_>>(),
        );
    }
    let rows: Vec<ReportRow> = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| ReportRow {
            x,
            g: g.eval(x),
            values: columns.iter().map(|c| c[i]).collect(),
        })
        .collect();
    let summary = spec
        .ns
        .iter()
        .zip(&us)
        .enumerate()
        .map(|(k, (&n, &u))| {
            let errors: Vec<f64> = rows.iter().map(|r| (r.values[k] - r.g).abs()).collect();
            ErrorSummary {
                n,
                u,
                sup_error: errors.iter().copied().fold(0.0, f64::max),
                mean_error: errors.iter().sum::<f64>() / errors.len() as f64,
            }
        })
        .collect();

    let mut diagnostics = Vec::new();
    let series = residual_series(spec, &xs, &us, &mut diagnostics)?;

    let report = ExperimentReport {
        metadata: ReportMetadata {
            spec: spec.clone(),
            tolerances: Tolerances {
                scheme: spec.quadrature.scheme,
                quad_order: spec.quadrature.order,
                series_tol: spec.quadrature.series_tol,
            },
            generated_unix_seconds: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        },
        function: g.name().to_string(),
        ns: spec.ns.clone(),
        rows,
        summary,
        series,
        diagnostics,
    };
    if let Some(path) = &spec.csv {
        report.emit_csv(path)?;
    }
    if let Some(path) = &spec.svg {
        report.emit_svg(path)?;
    }
    Ok(report)
}

fn residual_series(
    spec: &ExperimentSpec,
    xs: &[f64],
    us: &[f64],
    diagnostics: &mut Vec<String>,
) -> Result<Vec<ResidualSeries>> {
    let f = TargetFunction::builtin(&spec.function)?;
    let q = &spec.quadrature;
    let ns = &spec.ns;
    let series = match spec.kind {
        ExperimentKind::Figure1 | ExperimentKind::Figure2 | ExperimentKind::Custom => Vec::new(),
        ExperimentKind::Korovkin => {
            let errors = us
                .iter()
                .map(|&u| analysis::korovkin_errors(u, xs))
                .collect::<Result<Vec<_>>>()?;
            (0..3)
                .map(|i| {
                    ResidualSeries::new(
                        format!("korovkin sup error for t^{i}"),
                        ns.clone(),
                        us.to_vec(),
                        errors.iter().map(|e| e[i]).collect(),
                    )
                })
                .collect::<Result<Vec<_>>>()?
        }
        ExperimentKind::Voronovskaya => vec![analysis::voronovskaya_series(
            &f,
            spec.x0,
            &spec.sequence,
            ns,
            q,
        )?],
        ExperimentKind::Gruss => {
            let partner = TargetFunction::builtin(spec.partner.as_deref().unwrap_or_default())?;
            vec![analysis::gruss_series(
                &f,
                &partner,
                spec.x0,
                &spec.sequence,
                ns,
                q,
            )?]
        }
        ExperimentKind::Quantitative => {
            let check =
                analysis::quantitative_voronovskaya_check(&f, spec.x0, &spec.sequence, ns, q)?;
            for (n, point) in check.ns.iter().zip(&check.points) {
                match point {
                    QuantitativePoint::BothZero => {
                        diagnostics.push(format!("n={n}: remainder and modulus both vanish"))
                    }
                    QuantitativePoint::Violation { remainder } => diagnostics.push(format!(
                        "n={n}: modulus vanishes but remainder is {remainder:e}"
                    )),
                    QuantitativePoint::Ratio { .. } => {}
                }
            }
            let mut out = vec![
                ResidualSeries::new(
                    "quantitative remainder L_n",
                    ns.clone(),
                    us.to_vec(),
                    check.remainders.clone(),
                )?,
                ResidualSeries::new(
                    "weighted modulus D_n",
                    ns.clone(),
                    us.to_vec(),
                    check.moduli.clone(),
                )?,
            ];
            out.extend(check.ratios);
            out
        }
        ExperimentKind::Bounds => {
            let kappa = match analytic_lipschitz_constant(&spec.function, spec.exponent) {
                Some(k) => LipschitzConstant::Analytic(k),
                None => {
                    diagnostics.push(format!(
                        "no analytic constant for `{}` with r = {}; using a grid estimate",
                        spec.function, spec.exponent
                    ));
                    LipschitzConstant::Grid(xs.to_vec())
                }
            };
            let checks = us
                .iter()
                .map(|&u| analysis::holder_bound_check(&f, spec.exponent, &kappa, u, spec.x0, q))
                .collect::<Result<Vec<_>>>()?;
            for (n, c) in ns.iter().zip(&checks) {
                if !c.holds() {
                    diagnostics.push(format!(
                        "n={n}: bound violated, lhs {:e} > rhs {:e}",
                        c.lhs, c.rhs
                    ));
                }
            }
            vec![
                ResidualSeries::new(
                    "bound lhs",
                    ns.clone(),
                    us.to_vec(),
                    checks.iter().map(|c| c.lhs).collect(),
                )?,
                ResidualSeries::new(
                    "bound rhs",
                    ns.clone(),
                    us.to_vec(),
                    checks.iter().map(|c| c.rhs).collect(),
                )?,
            ]
        }
    };
    Ok(series)
}
