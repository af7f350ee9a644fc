//! Generalized Gauss-Laguerre rules for the weight `s^alpha e^{-s} / Gamma(alpha + 1)`
//! on `[0, inf)`, built by the Golub-Welsch eigenvalue method.
//!
//! Weights are returned normalized so that they sum to one: the rule integrates
//! against the Gamma(`alpha + 1`, 1) probability density.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Nodes and normalized weights of one rule.
#[derive(Debug, Clone, PartialEq)]
pub struct LaguerreRule {
    pub alpha: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LaguerreRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `sum_i w_i f(s_i)`; stops at the first non-finite integrand value.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for (&s, &w) in self.nodes.iter().zip(&self.weights) {
            let v = f(s);
            if !v.is_finite() {
                return Err(Error::NonFinite { node: s, value: v });
            }
            // Neumaier summation.
            let term = w * v;
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
}

/// Computes the `order`-point rule for the weight parameter `alpha > -1`.
pub fn gauss_laguerre(order: usize, alpha: f64) -> Result<LaguerreRule> {
    if order == 0 {
        return Err(Error::usage("quadrature order must be positive"));
    }
    if !(alpha > -1.0 && alpha.is_finite()) {
        return Err(Error::domain(format!(
            "Laguerre parameter must exceed -1, got {alpha}"
        )));
    }
    // Jacobi matrix of the monic generalized Laguerre recurrence.
    let mut diag: Vec<f64> = (0..order).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let mut off: Vec<f64> = (0..order)
        .map(|k| {
            let k = (k + 1) as f64;
            (k * (k + alpha)).sqrt()
        })
        .collect();
    off[order - 1] = 0.0;
    let mut z = vec![0.0; order];
    z[0] = 1.0;
    implicit_ql(&mut diag, &mut off, &mut z)?;

    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(z.into_iter().map(|v| v * v)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, mut weights): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
    // The measure has unit mass; smallest weights first keeps the sum accurate.
    let total: f64 = weights.iter().rev().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ok(LaguerreRule {
        alpha,
        nodes,
        weights,
    })
}

/// Eigenvalues of the symmetric tridiagonal matrix (`diag`, `off`), with `z`
/// replaced by `Q^T z` for the orthogonal eigenvector matrix `Q`.
///
/// Implicit QL with Wilkinson shifts; `off[i]` couples rows `i` and `i + 1`.
fn implicit_ql(diag: &mut [f64], off: &mut [f64], z: &mut [f64]) -> Result<()> {
    const MAX_ITER: usize = 60;
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                if off[m].abs() <= f64::EPSILON * (diag[m].abs() + diag[m + 1].abs()) {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if iter == MAX_ITER {
                return Err(Error::domain(
                    "tridiagonal eigenvalue iteration did not converge",
                ));
            }
            iter += 1;

            let p0 = diag[l];
            let mut g = (diag[l + 1] - p0) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - p0 + off[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if r == 0.0 && m > l {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}

type RuleKey = (u64, usize);

/// Process-wide cache of rules keyed by integer weight parameter and order.
///
/// Concurrent readers share the lock; a miss computes the rule outside the
/// lock and inserts it under the write lock.
#[derive(Debug, Default)]
pub struct RuleCache {
    rules: RwLock<HashMap<RuleKey, Arc<LaguerreRule>>>,
}

impl RuleCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// The shared cache used by the evaluator.
    pub fn global() -> &'static RuleCache {
        static CACHE: OnceLock<RuleCache> = OnceLock::new();
        CACHE.get_or_init(RuleCache::new)
    }

    pub fn get(&self, alpha: u64, order: usize) -> Result<Arc<LaguerreRule>> {
        let key = (alpha, order);
        if let Some(rule) = self.rules.read().expect("rule cache poisoned").get(&key) {
            return Ok(Arc::clone(rule));
        }
        let rule = Arc::new(gauss_laguerre(order, alpha as f64)?);
        let mut rules = self.rules.write().expect("rule cache poisoned");
        Ok(Arc::clone(rules.entry(key).or_insert(rule)))
    }

    pub fn len(&self) -> usize {
        self.rules.read().expect("rule cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
