//! The Szász basis `s_{c,j}(x) = e^{-cx} (cx)^j / j!` and certified truncation
//! of the series over `j`.
//!
//! Weights are evaluated with Loader's saddle-point form of the Poisson mass,
//! `exp(-stirlerr(j) - bd0(j, cx)) / sqrt(2 pi j)`, which keeps full relative
//! precision for means far beyond the range where `(cx)^j / j!` is representable.

use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arguments of one basis function `s_{c,j}(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisParams {
    pub c: f64,
    pub j: u64,
    pub x: f64,
}

impl BasisParams {
    pub fn new(c: f64, j: u64, x: f64) -> Self {
        BasisParams { c, j, x }
    }

    fn validate(&self) -> Result<()> {
        check_rate(self.c)?;
        check_point(self.x)
    }
}

pub(crate) fn check_rate(c: f64) -> Result<()> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::domain(format!(
            "rate c must be positive and finite, got {c}"
        )));
    }
    Ok(())
}

pub(crate) fn check_point(x: f64) -> Result<()> {
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::domain(format!(
            "point x must be nonnegative and finite, got {x}"
        )));
    }
    Ok(())
}

/// `stirlerr(n) = ln n! - (n + 1/2) ln n + n - ln sqrt(2 pi)` for small `n`.
const STIRLERR_TABLE: [f64; 16] = [
    0.0,
    0.081_061_466_795_327_258,
    0.041_340_695_955_409_294,
    0.027_677_925_684_998_339,
    0.020_790_672_103_765_093,
    0.016_644_691_189_821_192,
    0.013_876_128_823_070_748,
    0.011_896_709_945_891_770,
    0.010_411_265_261_972_096,
    0.009_255_462_182_712_733,
    0.008_330_563_433_362_871,
    0.007_573_675_487_951_841,
    0.006_942_840_107_209_530,
    0.006_408_994_188_004_207,
    0.005_951_370_112_758_848,
    0.005_554_733_551_962_801,
];

/// Error of Stirling's approximation to `ln n!`.
fn stirlerr(n: u64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;

    if n < STIRLERR_TABLE.len() as u64 {
        return STIRLERR_TABLE[n as usize];
    }
    let n = n as f64;
    let nn = n * n;
    if n > 500.0 {
        (S0 - S1 / nn) / n
    } else if n > 80.0 {
        (S0 - (S1 - S2 / nn) / nn) / n
    } else if n > 35.0 {
        (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n
    }
}

/// Deviance term `k ln(k / lambda) + lambda - k`, accurate when `k ~ lambda`.
fn bd0(k: f64, lambda: f64) -> f64 {
    let v = (k - lambda) / (k + lambda);
    if v.abs() < 0.9 {
        let mut s = (k - lambda) * v;
        let v2 = v * v;
        let mut ej = 2.0 * k * v;
        let mut i = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * i + 1.0);
            if next == s {
                return next;
            }
            s = next;
            i += 1.0;
        }
    }
    k * (k / lambda).ln() + lambda - k
}

/// Largest `j` for which the direct product form may be used.
const PRODUCT_MAX_J: u64 = 200;

/// Poisson mass `e^{-lambda} lambda^j / j!`, with `lambda = 0` handled exactly.
///
/// The saddle-point form loses about `|exponent|` ulps to `exp`; for small `j`
/// far from the mode the product `e^{-lambda} prod (lambda / k)` is more accurate.
pub(crate) fn poisson_mass(lambda: f64, j: u64) -> f64 {
    if lambda == 0.0 {
        return if j == 0 { 1.0 } else { 0.0 };
    }
    if j == 0 {
        return (-lambda).exp();
    }
    let k = j as f64;
    let exponent = stirlerr(j) + bd0(k, lambda);
    if j <= PRODUCT_MAX_J && lambda <= 600.0 && exponent > k.sqrt() {
        let p = (1..=j).fold((-lambda).exp(), |p, i| p * (lambda / i as f64));
        if p > 1e-290 {
            return p;
        }
    }
    (-exponent).exp() / (2.0 * PI * k).sqrt()
}

/// The basis value `s_{c,j}(x) = e^{-cx} (cx)^j / j!`.
///
/// Exact `1` at `x = 0, j = 0` and exact `0` at `x = 0, j >= 1`.
pub fn poisson_weight(p: BasisParams) -> Result<f64> {
    p.validate()?;
    Ok(poisson_mass(p.c * p.x, p.j))
}

/// A contiguous index range of the series over `j` together with a rigorous
/// bound on the basis mass it leaves out.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub j_min: u64,
    pub j_max: u64,
    pub tail_mass_bound: f64,
}

impl TruncationWindow {
    pub fn len(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, j: u64) -> bool {
        (self.j_min..=self.j_max).contains(&j)
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<u64> {
        self.j_min..=self.j_max
    }
}

/// Relative slack applied to tail bounds to absorb rounding in the weights.
const TAIL_SLACK: f64 = 1.0 + 1e-9;

/// Window for the Poisson law of mean `lambda`; see [`truncation_window`].
pub(crate) fn poisson_window(lambda: f64, tol: f64) -> TruncationWindow {
    poisson_window_with_envelope(lambda, tol, 0, 1.0)
}

/// Growth envelope `1 + (j+1)(j+2)...(j+d) / scale^d` of the per-term factors.
fn envelope(j: u64, degree: u32, scale: f64) -> f64 {
    if degree == 0 {
        return 1.0;
    }
    let j = j as f64;
    1.0 + (1..=degree)
        .map(|k| (j + k as f64) / scale)
        .product::<f64>()
}

/// Window whose excluded terms `p_j * e_j` sum below `tol`, where `p_j` is the
/// Poisson mass and `e_j` the growth envelope of degree `degree`.
///
/// With `degree = 0` the envelope is identically one and the bound is on mass.
pub(crate) fn poisson_window_with_envelope(
    lambda: f64,
    tol: f64,
    degree: u32,
    scale: f64,
) -> TruncationWindow {
    if lambda == 0.0 {
        return TruncationWindow {
            j_min: 0,
            j_max: 0,
            tail_mass_bound: 0.0,
        };
    }
    let mode = lambda.floor() as u64;
    let mut lo = mode;
    let mut hi = mode;
    let d = degree as f64;

    // Above `hi` the ratio of consecutive terms is at most
    // lambda / (k + 1) * (k + 1 + d) / (k + 1), decreasing in k, so once it
    // drops below one the right tail is dominated by a geometric series. Below
    // `lo` the envelope only shrinks and mass ratios are at most (lo - 1) / lambda.
    let right_bound = |hi: u64, next: f64| {
        let k = hi as f64 + 2.0;
        let ratio = lambda / k * (k + d) / k;
        if ratio >= 1.0 {
            f64::INFINITY
        } else {
            next / (1.0 - ratio) * TAIL_SLACK
        }
    };
    let left_bound = |lo: u64, prev: f64| {
        if lo == 0 {
            0.0
        } else {
            prev / (1.0 - (lo as f64 - 1.0) / lambda) * TAIL_SLACK
        }
    };
    let term = |j: u64| poisson_mass(lambda, j) * envelope(j, degree, scale);

    let mut next = term(hi + 1);
    let mut prev = if lo == 0 { 0.0 } else { term(lo - 1) };
    loop {
        let right = right_bound(hi, next);
        let left = left_bound(lo, prev);
        if right + left < tol {
            return TruncationWindow {
                j_min: lo,
                j_max: hi,
                tail_mass_bound: right + left,
            };
        }
        if lo > 0 && left >= right {
            lo -= 1;
            prev = if lo == 0 { 0.0 } else { term(lo - 1) };
        } else {
            hi += 1;
            next = term(hi + 1);
        }
    }
}

/// Smallest window grown outward from the mode `floor(cx)` whose excluded
/// basis mass is certified below `tol`.
pub fn truncation_window(c: f64, x: f64, tol: f64) -> Result<TruncationWindow> {
    check_rate(c)?;
    check_point(x)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(poisson_window(c * x, tol))
}

/// Like [`truncation_window`], but certifies `sum p_j (1 + (j+1)...(j+d)/c^d)`
/// over the excluded indices, the tail of a series whose `j`-th factor grows
/// like the `d`-th moment of a Gamma(`j+1`, `c`) law.
pub fn truncation_window_with_envelope(
    c: f64,
    x: f64,
    tol: f64,
    degree: u32,
) -> Result<TruncationWindow> {
    check_rate(c)?;
    check_point(x)?;
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain(format!(
            "tolerance must lie in (0, 1), got {tol}"
        )));
    }
    Ok(poisson_window_with_envelope(c * x, tol, degree, c))
}

/// The parameter sequence `u_n`: strictly increasing, `u_1 = 1`, unbounded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UnSequence {
    /// `u_n = n`
    Identity,
    /// `u_n = n^p` with `p > 0`
    Power { p: f64 },
    /// Explicit values `u_1, u_2, ...`
    Table { values: Vec<f64> },
}

impl Default for UnSequence {
    fn default() -> Self {
        UnSequence::Identity
    }
}

impl UnSequence {
    pub fn power(p: f64) -> Result<Self> {
        let seq = UnSequence::Power { p };
        seq.validate()?;
        Ok(seq)
    }

    pub fn table(values: Vec<f64>) -> Result<Self> {
        let seq = UnSequence::Table { values };
        seq.validate()?;
        Ok(seq)
    }

    /// Reads a table of `u_n` values separated by whitespace or commas.
    pub fn from_table_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let values = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::config("sequence", format!("bad table entry `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        UnSequence::table(values)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            UnSequence::Identity => Ok(()),
            UnSequence::Power { p } => {
                if p.is_finite() && *p > 0.0 {
                    Ok(())
                } else {
                    Err(Error::config(
                        "sequence",
                        format!("power exponent must be positive, got {p}"),
                    ))
                }
            }
            UnSequence::Table { values } => {
                if values.first() != Some(&1.0) {
                    return Err(Error::config("sequence", "table must start with u_1 = 1"));
                }
                if values.iter().any(|v| !v.is_finite()) {
                    return Err(Error::config("sequence", "table values must be finite"));
                }
                if values.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(Error::config(
                        "sequence",
                        "table must be strictly increasing",
                    ));
                }
                Ok(())
            }
        }
    }

    /// `u_n` for `n >= 1`.
    pub fn value(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::domain("sequence index starts at n = 1"));
        }
        match self {
            UnSequence::Identity => Ok(n as f64),
            UnSequence::Power { p } => Ok((n as f64).powf(*p)),
            UnSequence::Table { values } => values.get(n as usize - 1).copied().ok_or_else(|| {
                Error::domain(format!(
                    "sequence table has {} entries, n = {n} requested",
                    values.len()
                ))
            }),
        }
    }

    pub fn values(&self, ns: &[u64]) -> Result<Vec<f64>> {
        ns.iter().map(|&n| self.value(n)).collect()
    }
}
