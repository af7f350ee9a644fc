//! Numerical evidence for the approximation theorems: Korovkin convergence,
//! the Lipschitz-type upper bounds, the Voronovskaya and Grüss-Voronovskaya
//! limits, and the weighted-modulus quantitative bound.
//!
//! Suprema (`κ_r`, `Δ`) are estimated by grid maxima and are therefore lower
//! bounds. Bound checks that need an upper bound take an analytic constant.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evaluator::{self, QuadratureSpec};
use crate::function::TargetFunction;
use crate::kernel::{self, UnSequence};
use crate::moments;

/// Pair scans for `κ_r` subsample the grid beyond this many pairs.
pub const MAX_KAPPA_PAIRS: usize = 1_000_000;

/// Relative slack allowed when comparing the two sides of a bound.
pub const BOUND_SLACK: f64 = 1e-6;

/// `n` equally spaced points on `[a, b]`.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// The default evaluation grid: 401 points on `[0, 4]`.
pub fn default_x_grid() -> Vec<f64> {
    uniform_grid(0.0, 4.0, 401)
}

/// Least-squares slope of `ln |y|` against `ln x`.
pub fn fit_loglog_slope(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::usage(
            "slope fit needs two equally long series of length >= 2",
        ));
    }
    if xs.iter().any(|&x| !(x > 0.0 && x.is_finite()))
        || ys.iter().any(|&y| !(y != 0.0 && y.is_finite()))
    {
        return Err(Error::domain(
            "slope fit needs positive abscissae and nonzero finite ordinates",
        ));
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("slope fit needs distinct abscissae"));
    }
    Ok(sxy / sxx)
}

/// A sequence of residuals indexed by `n`, with its fitted log-log slope
/// against `u_n` when every residual is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSeries {
    pub label: String,
    pub ns: Vec<u64>,
    pub us: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: Option<f64>,
}

impl ResidualSeries {
    pub fn new(
        label: impl Into<String>,
        ns: Vec<u64>,
        us: Vec<f64>,
        residuals: Vec<f64>,
    ) -> Result<Self> {
        if ns.len() != us.len() || us.len() != residuals.len() {
            return Err(Error::usage("residual series lengths disagree"));
        }
        if us.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::usage("u_n values must be strictly increasing"));
        }
        let slope = fit_loglog_slope(&us, &residuals).ok();
        Ok(ResidualSeries {
            label: label.into(),
            ns,
            us,
            residuals,
            slope,
        })
    }
}

/// `sup_x |S_u(e_i; x) - x^i|` for `e_i = t^i`, `i = 0, 1, 2`, from the exact moments.
pub fn korovkin_errors(u: f64, x_grid: &[f64]) -> Result<[f64; 3]> {
    kernel::check_rate(u)?;
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let poly = moments::raw_moment(i as u32);
        *slot = x_grid.iter().try_fold(0.0f64, |acc, &x| {
            kernel::check_point(x)?;
            Ok::<_, Error>(acc.max((poly.evaluate(x, u) - x.powi(i as i32)).abs()))
        })?;
    }
    Ok(out)
}

/// Grid lower bound of `κ_r(g) = sup |g(u) - g(v)| / |u - v|^r`.
pub fn kappa_estimate(g: &TargetFunction, r: f64, grid: &[f64]) -> Result<f64> {
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::domain(format!(
            "exponent r must lie in (0, 1], got {r}"
        )));
    }
    let mut points: Vec<f64> = grid.to_vec();
    points.sort_by(f64::total_cmp);
    points.dedup();
    if points.len() < 2 {
        return Err(Error::usage(
            "κ_r estimate needs at least two distinct grid points",
        ));
    }
    let n = points.len();
    if n * (n - 1) / 2 > MAX_KAPPA_PAIRS {
        let keep = ((1.0 + (1.0 + 8.0 * MAX_KAPPA_PAIRS as f64).sqrt()) / 2.0).floor() as usize;
        points = (0..keep)
            .map(|i| points[i * (n - 1) / (keep - 1)])
            .collect();
    }
    let values: Vec<f64> = points.iter().map(|&t| g.eval(t)).collect();
    let best = (0..points.len())
        .into_par_iter()
        .map(|i| {
            (i + 1..points.len())
                .map(|k| (values[i] - values[k]).abs() / (points[k] - points[i]).powf(r))
                .fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// The two sides of an upper-bound theorem at one `(x, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    /// Whether the constant in `rhs` is a certified upper bound.
    pub certified: bool,
}

impl BoundCheck {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs * (1.0 + BOUND_SLACK)
    }
}

/// Source of the Lipschitz constant in [`holder_bound_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum LipschitzConstant {
    /// A known upper bound of `κ_r(g)`.
    Analytic(f64),
    /// Estimate from a grid scan (a lower bound).
    Grid(Vec<f64>),
}

/// `|S_u(g;x) - g(x)|` against `κ_r(g) Θ_2(x)^{r/2}`.
pub fn holder_bound_check(
    g: &TargetFunction,
    r: f64,
    kappa: &LipschitzConstant,
    u: f64,
    x: f64,
    q: &QuadratureSpec,
) -> Result<BoundCheck> {
    let (kappa, certified) = match kappa {
        LipschitzConstant::Analytic(k) => (*k, true),
        LipschitzConstant::Grid(grid) => (kappa_estimate(g, r, grid)?, false),
    };
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::domain(format!(
            "exponent r must lie in (0, 1], got {r}"
        )));
    }
    let value = evaluator::apply(g, u, x, q)?.value;
    let theta2 = moments::central_moment(2).evaluate(x, u);
    Ok(BoundCheck {
        lhs: (value - g.eval(x)).abs(),
        rhs: kappa * theta2.powf(r / 2.0),
        certified,
    })
}

/// Parameters of the modified Lipschitz class
/// `|g(t) - g(x)| <= M |t - x|^s / (t + a1 x^2 + a2 x)^{s/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzSpaceParams {
    pub a1: f64,
    pub a2: f64,
    pub s: f64,
    pub m: f64,
}

impl LipschitzSpaceParams {
    pub fn new(a1: f64, a2: f64, s: f64, m: f64) -> Result<Self> {
        let p = LipschitzSpaceParams { a1, a2, s, m };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.a1 > 0.0 && self.a2 > 0.0 && self.s > 0.0 && self.s <= 1.0 && self.m > 0.0) {
            return Err(Error::domain(format!(
                "need a1 > 0, a2 > 0, 0 < s <= 1, M > 0; got {self:?}"
            )));
        }
        Ok(())
    }
}

/// Largest ratio of `|g(t) - g(x)|` to the class bound over ordered grid
/// pairs; `<= 1` means `g` satisfies the class inequality on the grid.
pub fn lipschitz_space_membership(
    g: &TargetFunction,
    params: &LipschitzSpaceParams,
    grid: &[f64],
) -> Result<f64> {
    params.validate()?;
    let LipschitzSpaceParams { a1, a2, s, m } = *params;
    let values: Vec<f64> = grid.iter().map(|&t| g.eval(t)).collect();
    let mut worst = 0.0f64;
    for (i, &t) in grid.iter().enumerate() {
        for (k, &x) in grid.iter().enumerate() {
            if t == x {
                continue;
            }
            let bound = m * (t - x).abs().powf(s) / (t + a1 * x * x + a2 * x).powf(s / 2.0);
            worst = worst.max((values[i] - values[k]).abs() / bound);
        }
    }
    Ok(worst)
}

/// `|S_u(g;x) - g(x)|` against `M (Θ_2(x) / (x (a1 x + a2)))^{s/2}`.
pub fn weighted_lipschitz_bound_check(
    g: &TargetFunction,
    params: &LipschitzSpaceParams,
    u: f64,
    x: f64,
    q: &QuadratureSpec,
) -> Result<BoundCheck> {
    params.validate()?;
    if !(x > 0.0) {
        return Err(Error::domain(
            "the Lipschitz-class bound is singular at x = 0",
        ));
    }
    let value = evaluator::apply(g, u, x, q)?.value;
    let theta2 = moments::central_moment(2).evaluate(x, u);
    Ok(BoundCheck {
        lhs: (value - g.eval(x)).abs(),
        rhs: params.m * (theta2 / (x * (x * params.a1 + params.a2))).powf(params.s / 2.0),
        certified: true,
    })
}

/// `u (S_u(g;x) - g(x)) - (g'(x) + x g''(x))`.
pub fn voronovskaya_residual(
    g: &TargetFunction,
    x: f64,
    u: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let limit = g.first_derivative(x)? + x * g.second_derivative(x)?;
    let value = evaluator::apply(g, u, x, q)?.value;
    Ok(u * (value - g.eval(x)) - limit)
}

/// Voronovskaya residuals over `n` for `u_n` from `sequence`.
pub fn voronovskaya_series(
    g: &TargetFunction,
    x: f64,
    sequence: &UnSequence,
    ns: &[u64],
    q: &QuadratureSpec,
) -> Result<ResidualSeries> {
    let us = sequence.values(ns)?;
    let residuals = us
        .par_iter()
        .map(|&u| voronovskaya_residual(g, x, u, q))
        .collect::<Result<Vec<_>>>()?;
    ResidualSeries::new(
        format!("voronovskaya {} at x={x}", g.name()),
        ns.to_vec(),
        us,
        residuals,
    )
}

/// Grid lower bound of the weighted modulus
/// `Δ(g; ξ) = sup_{0 <= h <= ξ, x >= 0} |g(x+h) - g(x)| / ((1+h^2)(1+x^2))`.
pub fn weighted_modulus_estimate(
    g: &TargetFunction,
    xi: f64,
    h_grid: &[f64],
    x_grid: &[f64],
) -> Result<f64> {
    if !(xi > 0.0) {
        return Err(Error::domain(format!("ξ must be positive, got {xi}")));
    }
    if h_grid.is_empty() || x_grid.is_empty() {
        return Err(Error::usage("weighted modulus needs nonempty grids"));
    }
    if h_grid.iter().any(|&h| !(0.0..=xi).contains(&h)) {
        return Err(Error::usage("h grid must lie in [0, ξ]"));
    }
    let mut best = 0.0f64;
    for &x in x_grid {
        let gx = g.eval(x);
        let wx = 1.0 + x * x;
        for &h in h_grid {
            best = best.max((g.eval(x + h) - gx).abs() / ((1.0 + h * h) * wx));
        }
    }
    Ok(best)
}

/// Points in the default `h` grid on `[0, ξ]`.
pub const DEFAULT_H_POINTS: usize = 65;

/// [`weighted_modulus_estimate`] on the default grids.
pub fn weighted_modulus_default(g: &TargetFunction, xi: f64) -> Result<f64> {
    weighted_modulus_estimate(
        g,
        xi,
        &uniform_grid(0.0, xi, DEFAULT_H_POINTS),
        &default_x_grid(),
    )
}

/// Outcome of the quantitative bound at one `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum QuantitativePoint {
    Ratio {
        value: f64,
    },
    /// Both the remainder and the modulus vanish.
    BothZero,
    /// The modulus vanishes but the remainder does not.
    Violation {
        remainder: f64,
    },
}

/// Remainders `L_n`, moduli `D_n` and their ratios.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantitativeSeries {
    pub ns: Vec<u64>,
    pub us: Vec<f64>,
    pub remainders: Vec<f64>,
    pub moduli: Vec<f64>,
    pub points: Vec<QuantitativePoint>,
    /// Series of ratios when every point has a finite ratio.
    pub ratios: Option<ResidualSeries>,
}

impl QuantitativeSeries {
    pub fn violations(&self) -> usize {
        self.points
            .iter()
            .filter(|p| matches!(p, QuantitativePoint::Violation { .. }))
            .count()
    }
}

/// Remainders below this are treated as zero when the modulus vanishes.
pub const QUANTITATIVE_ZERO: f64 = 1e-9;

/// `L_n = u |S_u(g;x) - g(x) - g'(x)/u - (g''(x)/u)(x + 1/u)|`.
pub fn quantitative_remainder(
    g: &TargetFunction,
    x: f64,
    u: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let value = evaluator::apply(g, u, x, q)?.value;
    let d1 = g.first_derivative(x)?;
    let d2 = g.second_derivative(x)?;
    Ok(u * (value - g.eval(x) - d1 / u - d2 / u * (x + 1.0 / u)).abs())
}

/// `L_n` against `D_n = Δ(g''; sqrt(1/u_n))` over `n`.
pub fn quantitative_voronovskaya_check(
    g: &TargetFunction,
    x: f64,
    sequence: &UnSequence,
    ns: &[u64],
    q: &QuadratureSpec,
) -> Result<QuantitativeSeries> {
    let g2 = g.second_derivative_function()?;
    let us = sequence.values(ns)?;
    let pairs = us
        .par_iter()
        .map(|&u| {
            let l = quantitative_remainder(g, x, u, q)?;
            let d = weighted_modulus_default(&g2, (1.0 / u).sqrt())?;
            Ok((l, d))
        })
        .collect::<Result<Vec<_>>>()?;
    let (remainders, moduli): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    let points: Vec<QuantitativePoint> = remainders
        .iter()
        .zip(&moduli)
        .map(|(&l, &d)| {
            if d > 0.0 {
                QuantitativePoint::Ratio { value: l / d }
            } else if l <= QUANTITATIVE_ZERO {
                QuantitativePoint::BothZero
            } else {
                QuantitativePoint::Violation { remainder: l }
            }
        })
        .collect();
    let ratios = if points
        .iter()
        .all(|p| matches!(p, QuantitativePoint::Ratio { .. }))
    {
        let values = points
            .iter()
            .map(|p| match p {
                QuantitativePoint::Ratio { value } => *value,
                _ => unreachable!(),
            })
            .collect();
        Some(ResidualSeries::new(
            format!("quantitative {} at x={x}", g.name()),
            ns.to_vec(),
            us.clone(),
            values,
        )?)
    } else {
        None
    };
    Ok(QuantitativeSeries {
        ns: ns.to_vec(),
        us,
        remainders,
        moduli,
        points,
        ratios,
    })
}

/// `u (S_u(fg;x) - S_u(f;x) S_u(g;x))`.
pub fn gruss_gap(
    f: &TargetFunction,
    g: &TargetFunction,
    x: f64,
    u: f64,
    q: &QuadratureSpec,
) -> Result<f64> {
    let fg = f.product(g);
    let sfg = evaluator::apply(&fg, u, x, q)?.value;
    let sf = evaluator::apply(f, u, x, q)?.value;
    let sg = evaluator::apply(g, u, x, q)?.value;
    Ok(u * (sfg - sf * sg))
}

/// `gruss_gap - 2x f'(x) g'(x)` over `n`.
pub fn gruss_series(
    f: &TargetFunction,
    g: &TargetFunction,
    x: f64,
    sequence: &UnSequence,
    ns: &[u64],
    q: &QuadratureSpec,
) -> Result<ResidualSeries> {
    let limit = 2.0 * x * f.first_derivative(x)? * g.first_derivative(x)?;
    let us = sequence.values(ns)?;
    let residuals = us
        .par_iter()
        .map(|&u| Ok(gruss_gap(f, g, x, u, q)? - limit))
        .collect::<Result<Vec<_>>>()?;
    ResidualSeries::new(
        format!("gruss {} x {} at x={x}", f.name(), g.name()),
        ns.to_vec(),
        us,
        residuals,
    )
}

/// `n = 2^lo, ..., 2^hi`.
pub fn dyadic(lo: u32, hi: u32) -> Vec<u64> {
    (lo..=hi).map(|k| 1u64 << k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(-1.5)).collect();
        assert!((fit_loglog_slope(&xs, &ys).unwrap() + 1.5).abs() < 1e-12);
        assert!(fit_loglog_slope(&xs, &[1.0, 0.0, 1.0, 1.0]).is_err());
        assert!(fit_loglog_slope(&xs[..1], &ys[..1]).is_err());
    }

    #[test]
    fn korovkin_formulas() {
        let grid = default_x_grid();
        let [e0, e1, e2] = korovkin_errors(100.0, &grid).unwrap();
        assert!(e0.abs() < 1e-15);
        assert!((e1 - 0.01).abs() < 1e-15);
        assert!((e2 - 0.1602).abs() < 1e-14);
    }

    #[test]
    fn kappa_examples() {
        let grid = uniform_grid(0.0, 4.0, 200);
        assert_eq!(
            kappa_estimate(&TargetFunction::constant(2.0), 0.5, &grid).unwrap(),
            0.0
        );
        let k = kappa_estimate(&TargetFunction::monomial(1), 1.0, &grid).unwrap();
        assert!((k - 1.0).abs() < 1e-12);
        let k = kappa_estimate(&TargetFunction::sqrt(), 0.5, &grid).unwrap();
        assert!(k <= 1.0 + 1e-12 && k > 0.99, "{k}");
        assert!(kappa_estimate(&TargetFunction::sqrt(), 0.5, &[1.0, 1.0]).is_err());
        assert!(kappa_estimate(&TargetFunction::sqrt(), 1.5, &grid).is_err());
    }

    #[test]
    fn kappa_subsamples_large_grids() {
        let grid = uniform_grid(0.0, 4.0, 3000);
        let k = kappa_estimate(&TargetFunction::monomial(1), 1.0, &grid).unwrap();
        assert!((k - 1.0).abs() < 1e-9);
    }

    #[test]
    fn holder_bound_for_linear_function() {
        let q = QuadratureSpec::default();
        let check = holder_bound_check(
            &TargetFunction::monomial(1),
            1.0,
            &LipschitzConstant::Analytic(1.0),
            100.0,
            1.0,
            &q,
        )
        .unwrap();
        assert!((check.lhs - 0.01).abs() < 1e-12);
        assert!((check.rhs - 0.0202f64.sqrt()).abs() < 1e-12);
        assert!(check.holds() && check.certified);
        let grid = LipschitzConstant::Grid(uniform_grid(0.0, 4.0, 50));
        let c =
            holder_bound_check(&TargetFunction::constant(3.0), 0.5, &grid, 10.0, 1.0, &q).unwrap();
        assert!(c.lhs < 1e-12 && c.rhs == 0.0 && !c.certified);
    }

    #[test]
    fn weighted_lipschitz_bound_rhs() {
        let p = LipschitzSpaceParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let c = weighted_lipschitz_bound_check(
            &TargetFunction::constant(1.0),
            &p,
            10.0,
            2.0,
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!((c.rhs - (0.42f64 / 6.0).sqrt()).abs() < 1e-12);
        assert!(c.lhs < 1e-12);
        assert!(matches!(
            weighted_lipschitz_bound_check(
                &TargetFunction::constant(1.0),
                &p,
                10.0,
                0.0,
                &QuadratureSpec::default()
            ),
            Err(Error::Domain(_))
        ));
        assert!(LipschitzSpaceParams::new(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(LipschitzSpaceParams::new(1.0, 1.0, 1.5, 1.0).is_err());
    }

    #[test]
    fn saturating_function_is_in_the_class() {
        let p = LipschitzSpaceParams::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let grid = uniform_grid(0.0, 6.0, 121);
        let worst = lipschitz_space_membership(&TargetFunction::saturating(), &p, &grid).unwrap();
        assert!(worst <= 1.0, "{worst}");
    }

    #[test]
    fn voronovskaya_exact_cases() {
        let q = QuadratureSpec::default();
        for &u in &[10.0, 100.0] {
            assert!(
                voronovskaya_residual(&TargetFunction::constant(2.0), 1.3, u, &q)
                    .unwrap()
                    .abs()
                    < 1e-12 * u
            );
            assert!(
                voronovskaya_residual(&TargetFunction::monomial(1), 1.3, u, &q)
                    .unwrap()
                    .abs()
                    < 1e-11 * u
            );
            let r = voronovskaya_residual(&TargetFunction::monomial(2), 1.3, u, &q).unwrap();
            assert!((r - 2.0 / u).abs() < 1e-10);
        }
        assert!(voronovskaya_residual(
            &TargetFunction::new("bare", crate::function::Growth::Bounded, |t| t),
            1.0,
            10.0,
            &q
        )
        .is_err());
    }

    #[test]
    fn weighted_modulus_examples() {
        let x_grid = uniform_grid(0.0, 4.0, 4001);
        let xi = 0.5;
        let h_grid = uniform_grid(0.0, xi, 51);
        assert_eq!(
            weighted_modulus_estimate(&TargetFunction::constant(1.0), xi, &h_grid, &x_grid)
                .unwrap(),
            0.0
        );
        let lin =
            weighted_modulus_estimate(&TargetFunction::monomial(1), xi, &h_grid, &x_grid).unwrap();
        assert!((lin - xi / (1.0 + xi * xi)).abs() < 1e-14);
        let sq = weighted_modulus_estimate(
            &TargetFunction::monomial(2),
            0.1,
            &uniform_grid(0.0, 0.1, 51),
            &x_grid,
        )
        .unwrap();
        assert!((sq - 0.1050).abs() < 1e-3, "{sq}");
        assert!(
            weighted_modulus_estimate(&TargetFunction::monomial(1), xi, &[0.6], &x_grid).is_err()
        );
    }

    #[test]
    fn gruss_exact_cases() {
        let q = QuadratureSpec::default();
        let t = TargetFunction::monomial(1);
        let t2 = TargetFunction::monomial(2);
        for &(x, u) in &[(0.5, 10.0), (2.0, 100.0)] {
            let g = gruss_gap(&t, &t, x, u, &q).unwrap();
            assert!((g - (2.0 * x + 1.0 / u)).abs() < 1e-8);
            let g = gruss_gap(&t, &t2, x, u, &q).unwrap();
            assert!((g - (4.0 * x * x + 12.0 * x / u + 4.0 / (u * u))).abs() < 1e-8);
            let c = gruss_gap(
                &TargetFunction::constant(3.0),
                &TargetFunction::exp_neg(),
                x,
                u,
                &q,
            )
            .unwrap();
            assert!(c.abs() < 1e-10);
        }
    }

    #[test]
    fn quadratic_has_no_quantitative_remainder() {
        let s = quantitative_voronovskaya_check(
            &TargetFunction::monomial(2),
            1.0,
            &UnSequence::Identity,
            &dyadic(4, 6),
            &QuadratureSpec::default(),
        )
        .unwrap();
        assert!(s.points.iter().all(|p| *p == QuantitativePoint::BothZero));
        assert!(s.ratios.is_none());
        assert_eq!(s.violations(), 0);
    }
}
