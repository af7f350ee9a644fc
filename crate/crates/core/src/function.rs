//! Target functions `g: [0, inf) -> R` with optional derivatives and a growth tag.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Growth of `|g(t)|` as `t -> inf`. Decides whether the operator integral
/// converges and how the evaluator weights its quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Growth {
    Bounded,
    Polynomial {
        degree: u32,
    },
    /// `|g(t)| <= C e^{rate t}`
    Exponential {
        rate: f64,
    },
}

impl Growth {
    fn product(self, other: Growth) -> Growth {
        use Growth::*;
        match (self, other) {
            (Exponential { rate: a }, Exponential { rate: b }) => Exponential { rate: a + b },
            (Exponential { rate }, _) | (_, Exponential { rate }) => Exponential { rate },
            (Polynomial { degree: a }, Polynomial { degree: b }) => Polynomial { degree: a + b },
            (Polynomial { degree }, Bounded) | (Bounded, Polynomial { degree }) => {
                Polynomial { degree }
            }
            (Bounded, Bounded) => Bounded,
        }
    }

    fn sum(self, other: Growth) -> Growth {
        use Growth::*;
        match (self, other) {
            (Exponential { rate: a }, Exponential { rate: b }) => Exponential { rate: a.max(b) },
            (Exponential { rate }, _) | (_, Exponential { rate }) => Exponential {
                rate: rate.max(0.0),
            },
            (Polynomial { degree: a }, Polynomial { degree: b }) => Polynomial { degree: a.max(b) },
            (Polynomial { degree }, Bounded) | (Bounded, Polynomial { degree }) => {
                Polynomial { degree }
            }
            (Bounded, Bounded) => Bounded,
        }
    }

    /// Exponential rate used to tilt the quadrature weight, zero otherwise.
    pub(crate) fn tilt(self) -> f64 {
        match self {
            Growth::Exponential { rate } => rate,
            _ => 0.0,
        }
    }
}

/// A real function on `[0, inf)` with optional first and second derivatives.
#[derive(Clone)]
pub struct TargetFunction {
    name: String,
    value: RealFn,
    first: Option<RealFn>,
    second: Option<RealFn>,
    growth: Growth,
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name)
            .field("growth", &self.growth)
            .field("has_derivatives", &self.has_derivatives())
            .finish()
    }
}

impl TargetFunction {
    pub fn new(
        name: impl Into<String>,
        growth: Growth,
        value: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        TargetFunction {
            name: name.into(),
            value: Arc::new(value),
            first: None,
            second: None,
            growth,
        }
    }

    pub fn with_derivatives(
        mut self,
        first: impl Fn(f64) -> f64 + Send + Sync + 'static,
        second: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.first = Some(Arc::new(first));
        self.second = Some(Arc::new(second));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn growth(&self) -> Growth {
        self.growth
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.value)(t)
    }

    pub fn has_derivatives(&self) -> bool {
        self.first.is_some() && self.second.is_some()
    }

    pub fn first_derivative(&self, t: f64) -> Result<f64> {
        self.first
            .as_ref()
            .map(|d| d(t))
            .ok_or_else(|| Error::usage(format!("`{}` has no first derivative", self.name)))
    }

    pub fn second_derivative(&self, t: f64) -> Result<f64> {
        self.second
            .as_ref()
            .map(|d| d(t))
            .ok_or_else(|| Error::usage(format!("`{}` has no second derivative", self.name)))
    }

    /// `g''` as a function in its own right (without derivatives).
    pub fn second_derivative_function(&self) -> Result<TargetFunction> {
        let second = self
            .second
            .clone()
            .ok_or_else(|| Error::usage(format!("`{}` has no second derivative", self.name)))?;
        Ok(TargetFunction {
            name: format!("({})''", self.name),
            value: second,
            first: None,
            second: None,
            growth: self.growth,
        })
    }

    /// Pointwise product; derivatives follow the product rule when both factors have them.
    pub fn product(&self, other: &TargetFunction) -> TargetFunction {
        let (f, g) = (self.value.clone(), other.value.clone());
        let mut out = TargetFunction {
            name: format!("({})*({})", self.name, other.name),
            value: Arc::new(move |t| f(t) * g(t)),
            first: None,
            second: None,
            growth: self.growth.product(other.growth),
        };
        if let (Some(f1), Some(f2), Some(g1), Some(g2)) = (
            self.first.clone(),
            self.second.clone(),
            other.first.clone(),
            other.second.clone(),
        ) {
            let (f, g) = (self.value.clone(), other.value.clone());
            let (fa, ga, f1a, g1a) = (f.clone(), g.clone(), f1.clone(), g1.clone());
            out.first = Some(Arc::new(move |t| f1a(t) * ga(t) + fa(t) * g1a(t)));
            out.second = Some(Arc::new(move |t| {
                f2(t) * g(t) + 2.0 * f1(t) * g1(t) + f(t) * g2(t)
            }));
        }
        out
    }

    /// `alpha f + beta g`.
    pub fn linear_combination(
        alpha: f64,
        f: &TargetFunction,
        beta: f64,
        g: &TargetFunction,
    ) -> TargetFunction {
        let (fv, gv) = (f.value.clone(), g.value.clone());
        let mut out = TargetFunction {
            name: format!("{alpha}*({}) + {beta}*({})", f.name, g.name),
            value: Arc::new(move |t| alpha * fv(t) + beta * gv(t)),
            first: None,
            second: None,
            growth: f.growth.sum(g.growth),
        };
        if let (Some(f1), Some(f2), Some(g1), Some(g2)) = (
            f.first.clone(),
            f.second.clone(),
            g.first.clone(),
            g.second.clone(),
        ) {
            out.first = Some(Arc::new(move |t| alpha * f1(t) + beta * g1(t)));
            out.second = Some(Arc::new(move |t| alpha * f2(t) + beta * g2(t)));
        }
        out
    }

    pub fn constant(c: f64) -> Self {
        TargetFunction::new(format!("{c}"), Growth::Bounded, move |_| c)
            .with_derivatives(|_| 0.0, |_| 0.0)
    }

    /// `t^m`
    pub fn monomial(m: u32) -> Self {
        let p = m as i32;
        let mf = m as f64;
        TargetFunction::new(
            format!("t^{m}"),
            Growth::Polynomial { degree: m },
            move |t| t.powi(p),
        )
        .with_derivatives(
            move |t| if m == 0 { 0.0 } else { mf * t.powi(p - 1) },
            move |t| {
                if m < 2 {
                    0.0
                } else {
                    mf * (mf - 1.0) * t.powi(p - 2)
                }
            },
        )
    }

    /// `e^t`
    pub fn exp() -> Self {
        TargetFunction::new("exp", Growth::Exponential { rate: 1.0 }, f64::exp)
            .with_derivatives(f64::exp, f64::exp)
    }

    /// `e^{-t}`
    pub fn exp_neg() -> Self {
        TargetFunction::new("exp_neg", Growth::Bounded, |t: f64| (-t).exp())
            .with_derivatives(|t: f64| -(-t).exp(), |t: f64| (-t).exp())
    }

    /// `t^2 sin(2 pi t)`
    pub fn x2_sin_2pi_x() -> Self {
        let w = 2.0 * PI;
        TargetFunction::new(
            "x2sin2pix",
            Growth::Polynomial { degree: 2 },
            move |t: f64| t * t * (w * t).sin(),
        )
        .with_derivatives(
            move |t: f64| 2.0 * t * (w * t).sin() + w * t * t * (w * t).cos(),
            move |t: f64| {
                2.0 * (w * t).sin() + 4.0 * w * t * (w * t).cos() - w * w * t * t * (w * t).sin()
            },
        )
    }

    /// `sqrt(t)`; derivatives are infinite at the origin.
    pub fn sqrt() -> Self {
        TargetFunction::new("sqrt", Growth::Polynomial { degree: 1 }, f64::sqrt)
            .with_derivatives(|t: f64| 0.5 / t.sqrt(), |t: f64| -0.25 / (t * t.sqrt()))
    }

    /// `sin t + 2`
    pub fn sin_plus_two() -> Self {
        TargetFunction::new("sin_plus_2", Growth::Bounded, |t: f64| t.sin() + 2.0)
            .with_derivatives(f64::cos, |t: f64| -t.sin())
    }

    /// `t / (t + 1)`
    pub fn saturating() -> Self {
        TargetFunction::new("t_over_t_plus_1", Growth::Bounded, |t: f64| t / (t + 1.0))
            .with_derivatives(
                |t: f64| 1.0 / ((t + 1.0) * (t + 1.0)),
                |t: f64| -2.0 / ((t + 1.0) * (t + 1.0) * (t + 1.0)),
            )
    }

    /// Names accepted by [`TargetFunction::builtin`].
    pub const BUILTIN_NAMES: &'static [&'static str] = &[
        "one",
        "zero",
        "exp",
        "exp_neg",
        "x2sin2pix",
        "sqrt",
        "sin_plus_2",
        "t_over_t_plus_1",
        "t^<m>",
    ];

    /// Looks up a builtin by name; monomials are written `t^m`.
    pub fn builtin(name: &str) -> Result<Self> {
        let f = match name {
            "one" => TargetFunction::constant(1.0),
            "zero" => TargetFunction::constant(0.0),
            "exp" => TargetFunction::exp(),
            "exp_neg" => TargetFunction::exp_neg(),
            "x2sin2pix" => TargetFunction::x2_sin_2pi_x(),
            "sqrt" => TargetFunction::sqrt(),
            "sin_plus_2" => TargetFunction::sin_plus_two(),
            "t_over_t_plus_1" => TargetFunction::saturating(),
            other => match other.strip_prefix("t^").map(str::parse::<u32>) {
                Some(Ok(m)) => TargetFunction::monomial(m),
                _ => {
                    return Err(Error::config(
                        "function",
                        format!(
                            "unknown function `{name}`; expected one of {}",
                            Self::BUILTIN_NAMES.join(", ")
                        ),
                    ))
                }
            },
        };
        // Keep the registry name so reports echo what the user typed.
        Ok(TargetFunction {
            name: name.to_string(),
            ..f
        })
    }
}
