//! Exact raw and central moments of the operator as polynomials in `x` and `1/u`.
//!
//! Since `u ∫ s_{u,j}(t) t^m dt = (j+1)(j+2)...(j+m) / u^m`, the raw moment
//! `S(t^m; x)` is the expectation of that rising factorial over `J ~ Poisson(ux)`
//! divided by `u^m`. The rising factorial is expanded in powers of `J` and each
//! power is replaced by its Touchard polynomial in `ux`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{self, UnSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MomentKind {
    Raw,
    Central,
}

/// `sum c_{a,b} x^a u^{-b}` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentPolynomial {
    coeffs: BTreeMap<(u32, u32), BigRational>,
    order: u32,
    kind: MomentKind,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl MomentPolynomial {
    fn empty(order: u32, kind: MomentKind) -> Self {
        MomentPolynomial {
            coeffs: BTreeMap::new(),
            order,
            kind,
        }
    }

    /// Builds a polynomial from `(x-degree, 1/u-degree, coefficient)` triples.
    pub fn from_terms(
        order: u32,
        kind: MomentKind,
        terms: impl IntoIterator<Item = (u32, u32, BigRational)>,
    ) -> Self {
        let mut p = Self::empty(order, kind);
        for (a, b, c) in terms {
            p.add_term(a, b, c);
        }
        p
    }

    /// Convenience constructor for integer coefficients.
    pub fn from_int_terms(order: u32, kind: MomentKind, terms: &[(u32, u32, i64)]) -> Self {
        Self::from_terms(order, kind, terms.iter().map(|&(a, b, c)| (a, b, int(c))))
    }

    fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry((a, b)).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn kind(&self) -> MomentKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^a u^{-b}`.
    pub fn coefficient(&self, a: u32, b: u32) -> BigRational {
        self.coeffs
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigRational)> {
        self.coeffs.iter().map(|(&(a, b), c)| (a, b, c))
    }

    /// Smallest power of `1/u` present; `None` for the zero polynomial.
    pub fn min_inverse_u_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|&(_, b)| b).min()
    }

    /// Same coefficients regardless of the `order`/`kind` labels.
    pub fn same_coefficients(&self, other: &MomentPolynomial) -> bool {
        self.coeffs == other.coeffs
    }

    pub fn evaluate(&self, x: f64, u: f64) -> f64 {
        let inv_u = 1.0 / u;
        self.coeffs
            .iter()
            .map(|(&(a, b), c)| {
                c.to_f64().unwrap_or(f64::NAN) * x.powi(a as i32) * inv_u.powi(b as i32)
            })
            .sum()
    }

    /// Exact evaluation at rational `x` and `u != 0`.
    pub fn evaluate_exact(&self, x: &BigRational, u: &BigRational) -> BigRational {
        let inv_u = u.recip();
        let mut total = BigRational::zero();
        for (&(a, b), c) in &self.coeffs {
            total += c * pow(x, a) * pow(&inv_u, b);
        }
        total
    }

    /// `d/dx`
    pub fn derivative(&self) -> Self {
        let mut p = Self::empty(self.order, self.kind);
        for (&(a, b), c) in &self.coeffs {
            if a > 0 {
                p.add_term(a - 1, b, c * int(a as i64));
            }
        }
        p
    }

    fn shifted(&self, da: u32, db: u32, scale: &BigRational) -> Self {
        let mut p = Self::empty(self.order, self.kind);
        for (&(a, b), c) in &self.coeffs {
            p.add_term(a + da, b + db, c * scale);
        }
        p
    }

    fn accumulate(&mut self, other: &MomentPolynomial) {
        for (&(a, b), c) in &other.coeffs {
            self.add_term(a, b, c.clone());
        }
    }

    fn relabel(mut self, order: u32, kind: MomentKind) -> Self {
        self.order = order;
        self.kind = kind;
        self
    }
}

fn pow(base: &BigRational, e: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

impl fmt::Display for MomentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        // Highest x-degree first, then by increasing power of 1/u.
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|((a1, b1), _), ((a2, b2), _)| a2.cmp(a1).then(b1.cmp(b2)));
        for (i, (&(a, b), c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            match a {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{a}")),
            }
            let body = if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("*")
            };
            match b {
                0 => write!(f, "{body}")?,
                1 => write!(f, "{body}/u")?,
                _ => write!(f, "{body}/u^{b}")?,
            }
        }
        Ok(())
    }
}

/// Stirling numbers of the second kind `S(k, i)` for `0 <= i <= k <= n`.
fn stirling2_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut table = vec![vec![BigInt::zero(); n + 1]; n + 1];
    table[0][0] = BigInt::one();
    for k in 1..=n {
        for i in 1..=k {
            table[k][i] = BigInt::from(i) * &table[k - 1][i] + &table[k - 1][i - 1];
        }
    }
    table
}

/// Coefficients of `(J+1)(J+2)...(J+m)` in powers of `J`, lowest first.
fn rising_factorial_coefficients(m: u32) -> Vec<BigInt> {
    let mut poly = vec![BigInt::one()];
    for k in 1..=m as i64 {
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d] += c * k;
            next[d + 1] += c;
        }
        poly = next;
    }
    poly
}

/// Exact `S(t^m; x)`.
pub fn raw_moment(m: u32) -> MomentPolynomial {
    let rising = rising_factorial_coefficients(m);
    let stirling = stirling2_table(m as usize);
    let mut p = MomentPolynomial::empty(m, MomentKind::Raw);
    // E[J^k] = sum_i S(k, i) (ux)^i, and (ux)^i / u^m = x^i u^{-(m - i)}.
    for (k, ck) in rising.iter().enumerate() {
        for (i, s) in stirling[k].iter().enumerate().take(k + 1) {
            if s.is_zero() {
                continue;
            }
            p.add_term(i as u32, m - i as u32, BigRational::from_integer(ck * s));
        }
    }
    p
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Exact central moment `Θ_m = S((t - x)^m; x)`.
pub fn central_moment(m: u32) -> MomentPolynomial {
    let mut p = MomentPolynomial::empty(m, MomentKind::Central);
    for k in 0..=m {
        let sign = if (m - k) % 2 == 0 { 1 } else { -1 };
        let scale = BigRational::from_integer(binomial(m, k) * sign);
        p.accumulate(&raw_moment(k).shifted(m - k, 0, &scale));
    }
    p
}

/// `ζ(x) = x + 1/u`, so that `Θ_2 = (2/u) ζ(x)`.
pub fn zeta() -> MomentPolynomial {
    raw_moment(1)
}

/// Exponent `floor((m + 1) / 2)` in `Θ_m = O(u^{-floor((m+1)/2)})`.
pub fn order_bound_exponent(m: u32) -> u32 {
    (m + 1) / 2
}

fn check_recurrence_inputs(
    theta_m: &MomentPolynomial,
    theta_m_minus_1: Option<&MomentPolynomial>,
    m: u32,
) -> Result<()> {
    if theta_m.kind != MomentKind::Central || theta_m.order != m {
        return Err(Error::usage(format!(
            "recurrence step m = {m} needs the central moment of order {m}, got {:?} of order {}",
            theta_m.kind, theta_m.order
        )));
    }
    match (m, theta_m_minus_1) {
        (0, None) => Ok(()),
        (0, Some(_)) => Err(Error::usage(
            "recurrence step m = 0 takes no lower-order moment",
        )),
        (_, None) => Err(Error::usage(format!(
            "recurrence step m = {m} needs the moment of order {}",
            m - 1
        ))),
        (_, Some(prev)) if prev.kind != MomentKind::Central || prev.order != m - 1 => {
            Err(Error::usage(format!(
            "recurrence step m = {m} needs the central moment of order {}, got {:?} of order {}",
            m - 1,
            prev.kind,
            prev.order
        )))
        }
        _ => Ok(()),
    }
}

/// `Θ_{m+1}` from `u Θ_{m+1} = x Θ_m' + 2m x Θ_{m-1} + (m+1) Θ_m`.
///
/// `theta_m_minus_1` is `None` exactly when `m = 0`.
pub fn recurrence_step(
    theta_m: &MomentPolynomial,
    theta_m_minus_1: Option<&MomentPolynomial>,
    m: u32,
) -> Result<MomentPolynomial> {
    check_recurrence_inputs(theta_m, theta_m_minus_1, m)?;
    let mut rhs = theta_m.derivative().shifted(1, 0, &BigRational::one());
    if let Some(prev) = theta_m_minus_1 {
        rhs.accumulate(&prev.shifted(1, 0, &int(2 * m as i64)));
    }
    rhs.accumulate(&theta_m.shifted(0, 0, &int(m as i64 + 1)));
    Ok(rhs
        .shifted(0, 1, &BigRational::one())
        .relabel(m + 1, MomentKind::Central))
}

/// The recurrence with `x` multiplying all three terms,
/// `u Θ_{m+1} = x (Θ_m' + 2m Θ_{m-1} + (1+m) Θ_m)`. Kept for comparison only:
/// at `m = 1` it gives `u Θ_2 = 2x + 2x/u` instead of `2x + 2/u`.
pub fn recurrence_step_x_distributed(
    theta_m: &MomentPolynomial,
    theta_m_minus_1: Option<&MomentPolynomial>,
    m: u32,
) -> Result<MomentPolynomial> {
    check_recurrence_inputs(theta_m, theta_m_minus_1, m)?;
    let mut inner = theta_m.derivative();
    if let Some(prev) = theta_m_minus_1 {
        inner.accumulate(&prev.shifted(0, 0, &int(2 * m as i64)));
    }
    inner.accumulate(&theta_m.shifted(0, 0, &int(m as i64 + 1)));
    Ok(inner
        .shifted(1, 1, &BigRational::one())
        .relabel(m + 1, MomentKind::Central))
}

/// `(j+1)(j+2)...(j+m) / u^m`, falling back to log space if the product overflows.
pub(crate) fn gamma_raw_moment(j: u64, m: u32, u: f64) -> f64 {
    let j = j as f64;
    let mut prod = 1.0f64;
    for k in 1..=m {
        prod *= (j + k as f64) / u;
    }
    if prod.is_finite() && prod > 0.0 || m == 0 {
        return prod;
    }
    let ln: f64 = (1..=m).map(|k| (j + k as f64).ln() - u.ln()).sum();
    ln.exp()
}

/// Independent numeric evaluation of `S(t^m; x)` by summing the truncated
/// basis series against the per-`j` Gamma moments.
pub fn moment_oracle(m: u32, u: f64, x: f64, tol: f64) -> Result<f64> {
    let window = kernel::truncation_window_with_envelope(u, x, tol, m)?;
    let lambda = u * x;
    let mut sum = 0.0;
    let mut comp = 0.0;
    for j in window.indices() {
        let term = kernel::poisson_mass(lambda, j) * gamma_raw_moment(j, m, u);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    Ok(sum + comp)
}

/// `u_n Θ_{n,2}(x)` for `n = 1..=n_max`; converges to `2x`.
pub fn second_moment_limit_check(x: f64, sequence: &UnSequence, n_max: u64) -> Result<Vec<f64>> {
    kernel::check_point(x)?;
    if n_max < 2 {
        return Err(Error::usage("need at least two terms of the sequence"));
    }
    let theta2 = central_moment(2);
    (1..=n_max)
        .map(|n| {
            let u = sequence.value(n)?;
            Ok(u * theta2.evaluate(x, u))
        })
        .collect()
}
