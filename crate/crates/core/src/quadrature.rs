//! Gauss rules for `|t|^{2μ} e^{-t²} dt` on ℝ, for the probability measure
//! α_μ on (−1, 1), and for general Jacobi weights.
//!
//! Nodes are eigenvalues of the Jacobi matrix, found with an implicit-shift
//! QL iteration and polished by one Newton step on the orthonormal
//! recurrence. Weights come from the Christoffel function
//! `w_j = 1/Σ_k p_k(x_j)²`, which keeps tiny tail weights accurate.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::{beta_fn, gamma_fn, theta, MuParam};

/// Which measure a rule integrates against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Measure {
    /// `|t|^{2μ} e^{-t²} dt` on ℝ, total mass Γ(μ+½).
    HermiteMu { mu: f64 },
    /// `(1−t)^{μ−1}(1+t)^μ dt / B(½, μ)` on (−1, 1), total mass 1.
    AlphaMu { mu: f64 },
    /// `(1−t)^a (1+t)^b dt` on (−1, 1).
    Jacobi { a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    exactness_degree: usize,
    measure: Measure,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest polynomial degree integrated exactly, `2N − 1`.
    pub fn exactness_degree(&self) -> usize {
        self.exactness_degree
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// For the Hermite-type rule, weights `w_j e^{x_j²}` that integrate
    /// against `|t|^{2μ} dt` alone. For other measures returns the weights.
    pub fn modified_weights(&self) -> Vec<f64> {
        match self.measure {
            Measure::HermiteMu { .. } => self
                .nodes
                .iter()
                .zip(&self.weights)
                .map(|(&x, &w)| (w.ln() + x * x).exp())
                .collect(),
            _ => self.weights.clone(),
        }
    }

    /// `node,weight` lines with a header, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,weight\n");
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let _ = writeln!(out, "{x:.16e},{w:.16e}");
        }
        out
    }
}

/// Eigenvalues (and optionally eigenvectors, stored column-wise in a
/// row-major `n×n` buffer) of a symmetric tridiagonal matrix.
///
/// `diag` has length `n`; `off` has length `n − 1`. Eigenvalues come back in
/// increasing order.
pub fn symmetric_tridiagonal_eigen(
    diag: &[f64],
    off: &[f64],
    want_vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(Vec::new)));
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "tridiagonal matrix needs {} off-diagonal entries, got {}",
            n - 1,
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut z = want_vectors.then(|| {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        z
    });

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::Eigensolve(l));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|z| {
        let mut out = vec![0.0; n * n];
        for (col, &src) in order.iter().enumerate() {
            for k in 0..n {
                out[k * n + col] = z[k * n + src];
            }
        }
        out
    });
    Ok((values, vectors))
}

/// Orthonormal polynomials `p_0..p_{n}` at `x` and the derivative of `p_n`,
/// for the recurrence `x p_k = a_{k+1} p_{k+1} + α_k p_k + a_k p_{k−1}`,
/// `a_k = √β_k`.
fn orthonormal_values(alpha: &[f64], beta: &[f64], mass: f64, n: usize, x: f64) -> (Vec<f64>, f64) {
    let mut p = Vec::with_capacity(n + 1);
    let mut dp_prev = 0.0;
    let mut dp = 0.0;
    p.push(1.0 / mass.sqrt());
    for k in 0..n {
        let a_next = beta[k + 1].sqrt();
        let a_k = if k == 0 { 0.0 } else { beta[k].sqrt() };
        let pk_1 = if k == 0 { 0.0 } else { p[k - 1] };
        let next = ((x - alpha[k]) * p[k] - a_k * pk_1) / a_next;
        let dnext = ((x - alpha[k]) * dp + p[k] - a_k * dp_prev) / a_next;
        p.push(next);
        dp_prev = dp;
        dp = dnext;
    }
    (p, dp)
}

/// Gauss rule from monic recurrence coefficients.
///
/// `alpha[k]`, `k < n`, are the diagonal entries and `beta[k]`, `1 ≤ k ≤ n`,
/// the squared off-diagonals (`beta[0]` is ignored).
fn rule_from_recurrence(alpha: &[f64], beta: &[f64], mass: f64, n: usize, measure: Measure) -> Result<QuadratureRule> {
    let off: Vec<f64> = (1..n).map(|k| beta[k].sqrt()).collect();
    let (mut nodes, _) = symmetric_tridiagonal_eigen(&alpha[..n], &off, false)?;
    let mut weights = Vec::with_capacity(n);
    for x in nodes.iter_mut() {
        let (p, dp) = orthonormal_values(alpha, beta, mass, n, *x);
        if dp != 0.0 && dp.is_finite() {
            let step = p[n] / dp;
            if step.abs() < 1e-8 * (1.0 + x.abs()) {
                *x -= step;
            }
        }
        let (p, _) = orthonormal_values(alpha, beta, mass, n - 1, *x);
        let s: f64 = p.iter().map(|v| v * v).sum();
        let w = 1.0 / s;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::Eigensolve(weights.len()));
        }
        weights.push(w);
    }
    Ok(QuadratureRule { nodes, weights, exactness_degree: 2 * n - 1, measure })
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("quadrature size must be at least 1".into()));
    }
    Ok(())
}

/// Gauss rule for `|t|^{2μ} e^{-t²} dt` with `n` nodes.
pub fn gauss_hermite_mu(mu: &MuParam, n: usize) -> Result<QuadratureRule> {
    let m = mu.ensure_numeric()?;
    check_size(n)?;
    let alpha = vec![0.0; n];
    let beta: Vec<f64> = (0..=n).map(|k| (k as f64 + 2.0 * m * theta(k) as f64) / 2.0).collect();
    let mass = gamma_fn(m + 0.5);
    let mut rule = rule_from_recurrence(&alpha, &beta, mass, n, Measure::HermiteMu { mu: m })?;
    for i in 0..n / 2 {
        let j = n - 1 - i;
        let x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
        let w = 0.5 * (rule.weights[i] + rule.weights[j]);
        rule.nodes[i] = -x;
        rule.nodes[j] = x;
        rule.weights[i] = w;
        rule.weights[j] = w;
    }
    if n % 2 == 1 {
        rule.nodes[n / 2] = 0.0;
    }
    Ok(rule)
}

/// Gauss rule for the Jacobi weight `(1−t)^a (1+t)^b` on (−1, 1).
pub fn gauss_jacobi(a: f64, b: f64, n: usize) -> Result<QuadratureRule> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::InvalidArgument(format!("Jacobi exponents must exceed -1 (got a = {a}, b = {b})")));
    }
    check_size(n)?;
    let mass = 2f64.powf(a + b + 1.0) * beta_fn(a + 1.0, b + 1.0);
    let (alpha, beta) = jacobi_recurrence(a, b, n);
    rule_from_recurrence(&alpha, &beta, mass, n, Measure::Jacobi { a, b })
}

/// Gauss rule for the probability measure α_μ, i.e. the Jacobi weight with
/// `a = μ − 1`, `b = μ`, normalized to unit mass.
pub fn gauss_alpha_mu(mu: &MuParam, n: usize) -> Result<QuadratureRule> {
    let m = mu.ensure_positive()?;
    check_size(n)?;
    let (alpha, beta) = jacobi_recurrence(m - 1.0, m, n);
    rule_from_recurrence(&alpha, &beta, 1.0, n, Measure::AlphaMu { mu: m })
}

/// Monic Jacobi recurrence: `alpha[0..n]` and `beta[0..=n]` (`beta[0]` unused).
fn jacobi_recurrence(a: f64, b: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let ab = a + b;
    let alpha = (0..n)
        .map(|k| {
            if k == 0 {
                (b - a) / (ab + 2.0)
            } else {
                let s = 2.0 * k as f64 + ab;
                (b * b - a * a) / (s * (s + 2.0))
            }
        })
        .collect();
    let beta = (0..=n)
        .map(|k| match k {
            0 => 0.0,
            1 => 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab).powi(2) * (3.0 + ab)),
            _ => {
                let k = k as f64;
                let s = 2.0 * k + ab;
                4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0))
            }
        })
        .collect();
    (alpha, beta)
}
