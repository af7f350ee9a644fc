//! Numerical evaluation of the summation-integral operator
//!
//! ```text
//! S_u(g; x) = u * sum_j s_{u,j}(x) * ∫_0^inf s_{u,j}(t) g(t) dt
//! ```
//!
//! After `s = u t` the inner integral is the expectation of `g(s/u)` under a
//! Gamma(`j+1`, 1) law, which generalized Gauss-Laguerre quadrature with weight
//! parameter `j` integrates exactly for polynomials of degree `< 2 * order`.
//!
//! Functions tagged with exponential growth `e^{a t}` are integrated against
//! the tilted weight `e^{-(u-a)t}` instead; the basis weights then combine into
//! a Poisson law of mean `u^2 x / (u - a)` times a closed-form prefactor.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::function::{Growth, TargetFunction};
use crate::kernel::{self, TruncationWindow};
use crate::quadrature::RuleCache;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadScheme {
    /// Fixed order; the error estimate compares against the half-order rule.
    GeneralizedGaussLaguerre,
    /// Doubles the order until successive results agree or the cap is reached.
    AdaptiveFallback,
}

/// Controls evaluation of the inner integrals and truncation of the series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub scheme: QuadScheme,
    pub order: usize,
    pub series_tol: f64,
}

impl QuadratureSpec {
    pub const DEFAULT_ORDER: usize = 48;
    pub const MAX_ORDER: usize = 512;
    pub const DEFAULT_SERIES_TOL: f64 = 1e-14;

    pub fn fixed(order: usize) -> Self {
        QuadratureSpec {
            scheme: QuadScheme::GeneralizedGaussLaguerre,
            order,
            series_tol: Self::DEFAULT_SERIES_TOL,
        }
    }

    pub fn adaptive(order: usize) -> Self {
        QuadratureSpec {
            scheme: QuadScheme::AdaptiveFallback,
            ..Self::fixed(order)
        }
    }

    pub fn with_series_tol(mut self, tol: f64) -> Self {
        self.series_tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.order < 2 || self.order > Self::MAX_ORDER {
            return Err(Error::config(
                "quad-order",
                format!(
                    "order must lie in [2, {}], got {}",
                    Self::MAX_ORDER,
                    self.order
                ),
            ));
        }
        if !(self.series_tol > 0.0 && self.series_tol < 1.0) {
            return Err(Error::config(
                "tol",
                format!(
                    "series tolerance must lie in (0, 1), got {}",
                    self.series_tol
                ),
            ));
        }
        Ok(())
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self::adaptive(Self::DEFAULT_ORDER)
    }
}

/// Result of one operator evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorEvaluation {
    pub value: f64,
    pub terms_used: usize,
    /// Certified mass of the (possibly tilted) basis outside the summed window.
    pub tail_bound: f64,
    pub inner_abs_error_estimate: f64,
}

#[derive(Debug, Clone, Copy)]
struct InnerValue {
    value: f64,
    error: f64,
}

fn neumaier_add(sum: &mut f64, comp: &mut f64, term: f64) {
    let t = *sum + term;
    if sum.abs() >= term.abs() {
        *comp += (*sum - t) + term;
    } else {
        *comp += (term - t) + *sum;
    }
    *sum = t;
}

/// The operator `S_u` bound to one target function, caching inner integrals by `j`.
///
/// Inner integrals do not depend on `x`, so evaluating on a grid reuses them.
#[derive(Debug)]
pub struct Operator<'g> {
    g: &'g TargetFunction,
    u: f64,
    quad: QuadratureSpec,
    /// Exponential tilt `a`; the quadrature weight is `e^{-(u - a) t}`.
    tilt: f64,
    /// Polynomial degree of the envelope used to size truncation windows.
    envelope_degree: u32,
    inner: Vec<Option<InnerValue>>,
}

impl<'g> Operator<'g> {
    pub fn new(g: &'g TargetFunction, u: f64, quad: QuadratureSpec) -> Result<Self> {
        kernel::check_rate(u)?;
        quad.validate()?;
        let tilt = g.growth().tilt();
        if tilt >= u {
            return Err(Error::domain(format!(
                "operator integral diverges for `{}`: growth rate {tilt} >= u = {u}",
                g.name()
            )));
        }
        let envelope_degree = match g.growth() {
            Growth::Polynomial { degree } => degree,
            _ => 0,
        };
        Ok(Operator {
            g,
            u,
            quad,
            tilt,
            envelope_degree,
            inner: Vec::new(),
        })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    fn rate(&self) -> f64 {
        self.u - self.tilt
    }

    /// Expectation of `e^{-a t} g(t)` at `t = S / (u - a)`, `S ~ Gamma(j+1, 1)`.
    fn tilted_expectation(&self, j: u64, order: usize) -> Result<f64> {
        let rule = RuleCache::global().get(j, order)?;
        let b = self.rate();
        let (g, a) = (self.g, self.tilt);
        rule.integrate(|s| {
            let t = s / b;
            if a == 0.0 {
                g.eval(t)
            } else {
                g.eval(t) * (-a * t).exp()
            }
        })
        .map_err(|e| match e {
            Error::NonFinite { node, value } => Error::NonFinite {
                node: node / b,
                value,
            },
            other => other,
        })
    }

    fn compute_inner(&self, j: u64) -> Result<InnerValue> {
        let order = self.quad.order;
        match self.quad.scheme {
            QuadScheme::GeneralizedGaussLaguerre => {
                let fine = self.tilted_expectation(j, order)?;
                let coarse = self.tilted_expectation(j, (order / 2).max(1))?;
                Ok(InnerValue {
                    value: fine,
                    error: (fine - coarse).abs(),
                })
            }
            QuadScheme::AdaptiveFallback => {
                let mut order = order;
                let mut coarse = self.tilted_expectation(j, order)?;
                loop {
                    let next = (order * 2).min(QuadratureSpec::MAX_ORDER);
                    let fine = self.tilted_expectation(j, next)?;
                    let diff = (fine - coarse).abs();
                    if diff <= self.quad.series_tol * fine.abs().max(1.0)
                        || next == QuadratureSpec::MAX_ORDER
                    {
                        return Ok(InnerValue {
                            value: fine,
                            error: diff,
                        });
                    }
                    order = next;
                    coarse = fine;
                }
            }
        }
    }

    /// Fills the inner-integral cache for every index in `window`.
    fn ensure(&mut self, window: &TruncationWindow) -> Result<()> {
        let needed = window.j_max as usize + 1;
        if self.inner.len() < needed {
            self.inner.resize(needed, None);
        }
        let missing: Vec<u64> = window
            .indices()
            .filter(|&j| self.inner[j as usize].is_none())
            .collect();
        if missing.is_empty() {
            return Ok(());
        }
        let computed: Vec<(u64, InnerValue)> = missing
            .par_iter()
            .map(|&j| self.compute_inner(j).map(|v| (j, v)))
            .collect::<Result<_>>()?;
        for (j, v) in computed {
            self.inner[j as usize] = Some(v);
        }
        Ok(())
    }

    /// `u ∫ s_{u,j}(t) g(t) dt`.
    pub fn inner_integral(&mut self, j: u64) -> Result<f64> {
        let window = TruncationWindow {
            j_min: j,
            j_max: j,
            tail_mass_bound: 0.0,
        };
        self.ensure(&window)?;
        let v = self.inner[j as usize].expect("filled by ensure");
        let scale = (j as f64 + 1.0) * (self.u / self.rate()).ln();
        Ok(v.value * scale.exp())
    }

    /// Mean of the tilted Poisson law and log of the prefactor at `x`.
    fn tilted_law(&self, x: f64) -> (f64, f64) {
        let b = self.rate();
        let lambda = self.u * self.u * x / b;
        let ln_prefactor = (self.u / b).ln() + self.u * x * self.tilt / b;
        (lambda, ln_prefactor)
    }

    fn window(&self, lambda: f64) -> TruncationWindow {
        kernel::poisson_window_with_envelope(
            lambda,
            self.quad.series_tol,
            self.envelope_degree,
            self.rate(),
        )
    }

    pub fn evaluate(&mut self, x: f64) -> Result<OperatorEvaluation> {
        kernel::check_point(x)?;
        let (lambda, ln_prefactor) = self.tilted_law(x);
        let window = self.window(lambda);
        self.ensure(&window)?;
        Ok(self.sum_window(lambda, ln_prefactor, &window))
    }

    fn sum_window(
        &self,
        lambda: f64,
        ln_prefactor: f64,
        window: &TruncationWindow,
    ) -> OperatorEvaluation {
        let (mut sum, mut comp, mut err) = (0.0, 0.0, 0.0);
        for j in window.indices() {
            let p = kernel::poisson_mass(lambda, j);
            let v = self.inner[j as usize].expect("window filled");
            neumaier_add(&mut sum, &mut comp, p * v.value);
            err += p * v.error;
        }
        let prefactor = ln_prefactor.exp();
        OperatorEvaluation {
            value: prefactor * (sum + comp),
            terms_used: window.len(),
            tail_bound: window.tail_mass_bound,
            inner_abs_error_estimate: prefactor * err,
        }
    }

    /// Evaluates on a grid, sharing inner integrals across points.
    pub fn evaluate_grid(&mut self, xs: &[f64]) -> Result<Vec<OperatorEvaluation>> {
        for &x in xs {
            kernel::check_point(x)?;
        }
        let laws: Vec<(f64, f64, TruncationWindow)> = xs
            .iter()
            .map(|&x| {
                let (lambda, ln_pre) = self.tilted_law(x);
                (lambda, ln_pre, self.window(lambda))
            })
            .collect();
        if let Some(lo) = laws.iter().map(|l| l.2.j_min).min() {
            let hi = laws.iter().map(|l| l.2.j_max).max().unwrap_or(lo);
            self.ensure(&TruncationWindow {
                j_min: lo,
                j_max: hi,
                tail_mass_bound: 0.0,
            })?;
        }
        let this = &*self;
        Ok(laws
            .par_iter()
            .map(|(lambda, ln_pre, window)| this.sum_window(*lambda, *ln_pre, window))
            .collect())
    }
}

/// `u ∫_0^inf s_{u,j}(t) g(t) dt`.
pub fn inner_integral(j: u64, u: f64, g: &TargetFunction, q: &QuadratureSpec) -> Result<f64> {
    Operator::new(g, u, *q)?.inner_integral(j)
}

/// `S_u(g; x)` with diagnostics.
pub fn apply(g: &TargetFunction, u: f64, x: f64, q: &QuadratureSpec) -> Result<OperatorEvaluation> {
    Operator::new(g, u, *q)?.evaluate(x)
}

/// The discrete Szász-Mirakjan operator `sum_j s_{u,j}(x) g(j/u)`.
pub fn apply_discrete_szasz(g: &TargetFunction, u: f64, x: f64, series_tol: f64) -> Result<f64> {
    let window = kernel::truncation_window(u, x, series_tol)?;
    let lambda = u * x;
    let (mut sum, mut comp) = (0.0, 0.0);
    for j in window.indices() {
        let t = j as f64 / u;
        let v = g.eval(t);
        if !v.is_finite() {
            return Err(Error::NonFinite { node: t, value: v });
        }
        neumaier_add(&mut sum, &mut comp, kernel::poisson_mass(lambda, j) * v);
    }
    Ok(sum + comp)
}
