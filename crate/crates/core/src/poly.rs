//! Generalized Hermite polynomials and the Dunkl derivative on polynomials.
//!
//! Everything here is generic over [`Scalar`], so one implementation serves
//! both the floating path (`f64`) and the exact path ([`Rational`]).
//!
//! [`Rational`]: crate::scalar::Rational

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::Result;
use crate::mu::{gamma_mu_in, gamma_ratio_in, gamma_step_in, mu_binomial_in, theta, MuParam};
use crate::scalar::{factorial, powi, Scalar};

/// Univariate polynomial; `coeffs[k]` multiplies `x^k`.
///
/// The zero polynomial has no coefficients; otherwise the last stored
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> DensePoly<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c·x^n`.
    pub fn monomial(n: usize, c: S) -> Self {
        let mut coeffs = vec![S::zero(); n + 1];
        coeffs[n] = c;
        Self::from_coeffs(coeffs)
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(1, S::one())
    }

    pub fn from_coeffs(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> S {
        self.coeffs.last().cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Horner evaluation in floating point regardless of the field.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64())
    }

    pub fn to_f64(&self) -> DensePoly<f64> {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| c.to_f64()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `x·p(x)`.
    pub fn mul_x(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Ordinary derivative.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_usize(k))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `p(λx)`.
    pub fn scale_arg(&self, lambda: &S) -> Self {
        let mut pw = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pw.clone());
            pw = pw * lambda.clone();
        }
        Self::from_coeffs(out)
    }

    /// `p(x)/x` when `p(0) = 0`; `None` otherwise.
    pub fn div_x(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Self::zero()),
            Some(c0) if c0.is_zero() => Some(Self::from_coeffs(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    pub fn even_part(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 0 { c.clone() } else { S::zero() })
                .collect(),
        )
    }

    pub fn odd_part(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.clone() } else { S::zero() })
                .collect(),
        )
    }

    /// Applies `self` as a polynomial in an operator: `Σ c_k T^k v` by Horner,
    /// with `apply` realizing one application of `T`.
    pub fn apply_horner<V, F>(&self, v: &V, mut apply: F, add_scaled: impl Fn(&V, &S, &V) -> V, zero: V) -> V
    where
        V: Clone,
        F: FnMut(&V) -> V,
    {
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            let tv = apply(&acc);
            acc = add_scaled(&tv, c, v);
        }
        acc
    }
}

impl<S: Scalar> Add for &DensePoly<S> {
    type Output = DensePoly<S>;
    fn add(self, rhs: Self) -> DensePoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &DensePoly<S> {
    type Output = DensePoly<S>;
    fn sub(self, rhs: Self) -> DensePoly<S> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Mul for &DensePoly<S> {
    type Output = DensePoly<S>;
    fn mul(self, rhs: Self) -> DensePoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl<S: Scalar> Neg for &DensePoly<S> {
    type Output = DensePoly<S>;
    fn neg(self) -> DensePoly<S> {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

/// Bivariate polynomial; `coeffs[j][k]` multiplies `x^j y^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariatePoly<S> {
    coeffs: Vec<Vec<S>>,
}

impl<S: Scalar> BivariatePoly<S> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Vec<S>>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    /// Builds from `(j, k, c)` triples, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut p = Self::zero();
        for (j, k, c) in terms {
            p.add_term(j, k, c);
        }
        p.normalize();
        p
    }

    /// `p(x)` viewed as a polynomial in `x` only.
    pub fn from_x_poly(p: &DensePoly<S>) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(j, c)| (j, 0, c.clone())))
    }

    fn add_term(&mut self, j: usize, k: usize, c: S) {
        if self.coeffs.len() <= j {
            self.coeffs.resize_with(j + 1, Vec::new);
        }
        let row = &mut self.coeffs[j];
        if row.len() <= k {
            row.resize_with(k + 1, S::zero);
        }
        row[k] = row[k].clone() + c;
    }

    fn normalize(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Vec<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize, k: usize) -> S {
        self.coeffs.get(j).and_then(|r| r.get(k)).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as `(j, k, c)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(j, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (j, k, c)))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(j, k, _)| j + k).max()
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(|(j, k, c)| (k, j, c.clone())))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_terms(self.terms().map(|(j, k, c)| (j, k, c.clone() * s.clone())))
    }

    /// `(x + y)·p(x, y)`.
    pub fn mul_x_plus_y(&self) -> Self {
        Self::from_terms(
            self.terms()
                .flat_map(|(j, k, c)| [(j + 1, k, c.clone()), (j, k + 1, c.clone())]),
        )
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.coeffs.iter().rev().fold(S::zero(), |acc, row| {
            let ry = row.iter().rev().fold(S::zero(), |a, c| a * y.clone() + c.clone());
            acc * x.clone() + ry
        })
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, row| {
            let ry = row.iter().rev().fold(0.0, |a, c| a * y + c.to_f64());
            acc * x + ry
        })
    }

    /// Fixes `y` and returns the polynomial in `x`.
    pub fn at_y(&self, y: &S) -> DensePoly<S> {
        DensePoly::from_coeffs(
            self.coeffs
                .iter()
                .map(|row| row.iter().rev().fold(S::zero(), |a, c| a * y.clone() + c.clone()))
                .collect(),
        )
    }
}

impl<S: Scalar> Add for &BivariatePoly<S> {
    type Output = BivariatePoly<S>;
    fn add(self, rhs: Self) -> BivariatePoly<S> {
        BivariatePoly::from_terms(self.terms().chain(rhs.terms()).map(|(j, k, c)| (j, k, c.clone())))
    }
}

impl<S: Scalar> Sub for &BivariatePoly<S> {
    type Output = BivariatePoly<S>;
    fn sub(self, rhs: Self) -> BivariatePoly<S> {
        BivariatePoly::from_terms(
            self.terms()
                .map(|(j, k, c)| (j, k, c.clone()))
                .chain(rhs.terms().map(|(j, k, c)| (j, k, -c.clone()))),
        )
    }
}

impl<S: Scalar> Mul for &BivariatePoly<S> {
    type Output = BivariatePoly<S>;
    fn mul(self, rhs: Self) -> BivariatePoly<S> {
        let mut out = BivariatePoly::zero();
        for (j1, k1, a) in self.terms() {
            for (j2, k2, b) in rhs.terms() {
                out.add_term(j1 + j2, k1 + k2, a.clone() * b.clone());
            }
        }
        out.normalize();
        out
    }
}

/// Coefficients of `H_n^μ` from the explicit sum
/// `n! Σ_k (-1)^k (2x)^{n-2k} / (k! γ_μ(n-2k))`.
pub fn hermite_coeffs_in<S: Scalar>(mu: &S, n: usize) -> DensePoly<S> {
    let nf: S = factorial(n);
    let two = S::from_i64(2);
    let mut coeffs = vec![S::zero(); n + 1];
    let mut kf = S::one();
    for k in 0..=n / 2 {
        if k > 0 {
            kf = kf * S::from_usize(k);
        }
        let d = n - 2 * k;
        let mut c = nf.clone() * powi(&two, d) / (kf.clone() * gamma_mu_in(mu, d));
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[d] = c;
    }
    DensePoly::from_coeffs(coeffs)
}

/// Coefficient vector of `H_n^μ`.
pub fn hermite_coeffs<S: Scalar>(mu: &MuParam, n: usize) -> Result<DensePoly<S>> {
    Ok(hermite_coeffs_in(&S::from_mu(mu)?, n))
}

/// `H_n^μ(λx)` as a polynomial in `x`.
pub fn hermite_scaled_in<S: Scalar>(mu: &S, n: usize, lambda: &S) -> DensePoly<S> {
    hermite_coeffs_in(mu, n).scale_arg(lambda)
}

/// `H_n^μ(x)` by the upward three-term recursion
/// `H_{n+1} = (n+1)/(n+1+2μθ(n+1)) · (2x H_n − 2n H_{n−1})`.
pub fn hermite_eval(mu: &MuParam, n: usize, x: f64) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    Ok(hermite_eval_all_in(m, n, x)[n])
}

/// `H_0^μ(x), …, H_n^μ(x)` by the three-term recursion.
pub fn hermite_eval_all(mu: &MuParam, n: usize, x: f64) -> Result<Vec<f64>> {
    Ok(hermite_eval_all_in(mu.ensure_numeric()?, n, x))
}

pub(crate) fn hermite_eval_all_in(mu: f64, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let kp1 = (k + 1) as f64;
        let next = kp1 / (kp1 + 2.0 * mu * theta(k + 1) as f64) * (2.0 * x * cur - 2.0 * k as f64 * prev);
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// The Dunkl derivative on polynomials via the monomial rule
/// `x^n ↦ (γ_μ(n)/γ_μ(n−1)) x^{n−1}`, constants ↦ 0.
pub fn dunkl_apply_in<S: Scalar>(mu: &S, p: &DensePoly<S>) -> DensePoly<S> {
    DensePoly::from_coeffs(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, c)| c.clone() * gamma_step_in(mu, n))
            .collect(),
    )
}

pub fn dunkl_apply<S: Scalar>(mu: &MuParam, p: &DensePoly<S>) -> Result<DensePoly<S>> {
    Ok(dunkl_apply_in(&S::from_mu(mu)?, p))
}

/// The Dunkl derivative straight from its definition
/// `p'(x) + (μ/x)(p(x) − p(−x))`.
pub fn dunkl_by_definition_in<S: Scalar>(mu: &S, p: &DensePoly<S>) -> DensePoly<S> {
    let diff = p - &p.reflect();
    let quotient = diff.div_x().expect("p(x) - p(-x) is odd and vanishes at 0");
    &p.derivative() + &quotient.scale(mu)
}

/// `D^j p`.
pub fn dunkl_power_in<S: Scalar>(mu: &S, p: &DensePoly<S>, j: usize) -> DensePoly<S> {
    (0..j).fold(p.clone(), |acc, _| dunkl_apply_in(mu, &acc))
}

/// The raising operator `2x·p(x) − (D p)(x)`.
pub fn raise_apply_in<S: Scalar>(mu: &S, p: &DensePoly<S>) -> DensePoly<S> {
    &p.mul_x().scale(&S::from_i64(2)) - &dunkl_apply_in(mu, p)
}

pub fn raise_apply<S: Scalar>(mu: &MuParam, p: &DensePoly<S>) -> Result<DensePoly<S>> {
    Ok(raise_apply_in(&S::from_mu(mu)?, p))
}

/// One term `coeff · H_{degree}^μ` of the inversion expansion.
#[derive(Debug, Clone, PartialEq)]
pub struct InversionTerm<S> {
    pub degree: usize,
    pub coeff: S,
}

/// Coefficients `c_k = 1/(k!(n−2k)!)` with `(2x)^n/γ_μ(n) = Σ_k c_k H_{n−2k}^μ`.
///
/// The coefficients do not depend on μ; it only enters through the basis.
pub fn inversion_expand<S: Scalar>(n: usize) -> Vec<InversionTerm<S>> {
    (0..=n / 2)
        .map(|k| InversionTerm {
            degree: n - 2 * k,
            coeff: S::one() / (factorial::<S>(k) * factorial::<S>(n - 2 * k)),
        })
        .collect()
}

/// Sums an inversion expansion back into a polynomial.
pub fn inversion_reconstruct_in<S: Scalar>(mu: &S, terms: &[InversionTerm<S>]) -> DensePoly<S> {
    terms.iter().fold(DensePoly::zero(), |acc, t| &acc + &hermite_coeffs_in(mu, t.degree).scale(&t.coeff))
}

/// The μ-binomial polynomial `p_{n,μ}(x, y) = Σ_j binom(n, j)_μ x^j y^{n−j}`.
pub fn binomial_poly_in<S: Scalar>(mu: &S, n: usize) -> BivariatePoly<S> {
    BivariatePoly::from_terms((0..=n).map(|j| (j, n - j, mu_binomial_in(mu, n, j))))
}

pub fn binomial_poly<S: Scalar>(mu: &MuParam, n: usize) -> Result<BivariatePoly<S>> {
    Ok(binomial_poly_in(&S::from_mu(mu)?, n))
}

/// `exp(t D²) x^n = γ_μ(n) Σ_k x^{n−2k} t^k / (k! γ_μ(n−2k))` at a fixed `t`.
pub fn heat_poly_in<S: Scalar>(mu: &S, n: usize, t: &S) -> DensePoly<S> {
    heat_poly_xt_in(mu, n).at_y(t)
}

/// The heat polynomial as a bivariate polynomial in `(x, t)`.
pub fn heat_poly_xt_in<S: Scalar>(mu: &S, n: usize) -> BivariatePoly<S> {
    let mut kf = S::one();
    let mut terms = Vec::with_capacity(n / 2 + 1);
    for k in 0..=n / 2 {
        if k > 0 {
            kf = kf * S::from_usize(k);
        }
        let c = gamma_ratio_in(mu, n, n - 2 * k) / kf.clone();
        terms.push((n - 2 * k, k, c));
    }
    BivariatePoly::from_terms(terms)
}

pub fn heat_poly<S: Scalar>(mu: &MuParam, n: usize, t: &S) -> Result<DensePoly<S>> {
    Ok(heat_poly_in(&S::from_mu(mu)?, n, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn mus() -> Vec<Rational> {
        vec![q(0, 1), q(1, 3), q(1, 2), q(5, 2), q(-1, 4)]
    }

    /// `H_n^μ` assembled from the confluent-hypergeometric definition with
    /// Pochhammer symbols `(μ+½)_k`; independent of the explicit sum.
    fn hermite_from_definition(mu: &Rational, n: usize) -> DensePoly<Rational> {
        let m = n / 2;
        let half = q(1, 2);
        let poch = |k: usize| (0..k).fold(Rational::one(), |acc, i| acc * (mu.clone() + half.clone() + Rational::from_usize(i)));
        let binom = |m: usize, k: usize| factorial::<Rational>(m) / (factorial::<Rational>(k) * factorial::<Rational>(m - k));
        let sign_m = if m % 2 == 0 { Rational::one() } else { -Rational::one() };
        let pre = sign_m * factorial::<Rational>(n) / factorial::<Rational>(m);
        let mut coeffs = vec![Rational::zero(); n + 1];
        for k in 0..=m {
            let sign_k = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let (deg, p) = if n % 2 == 0 { (2 * k, poch(k)) } else { (2 * k + 1, poch(k + 1)) };
            coeffs[deg] = pre.clone() * sign_k * binom(m, k) / p;
        }
        DensePoly::from_coeffs(coeffs)
    }

    #[test]
    fn matches_definition_via_pochhammer() {
        for mu in mus() {
            for n in 0..=20 {
                assert_eq!(hermite_coeffs_in(&mu, n), hermite_from_definition(&mu, n), "n={n}");
            }
        }
    }

    #[test]
    fn small_examples() {
        let mu = q(3, 7);
        assert_eq!(hermite_coeffs_in(&mu, 0), DensePoly::one());
        let one_p = Rational::one() + Rational::from_i64(2) * mu.clone();
        let h2 = DensePoly::from_coeffs(vec![q(-2, 1), Rational::zero(), Rational::from_i64(4) / one_p]);
        assert_eq!(hermite_coeffs_in(&mu, 2), h2);
        let h3_classical = DensePoly::from_coeffs(vec![q(0, 1), q(-12, 1), q(0, 1), q(8, 1)]);
        assert_eq!(hermite_coeffs_in(&Rational::zero(), 3), h3_classical);
    }

    #[test]
    fn eval_examples() {
        let half = MuParam::new(0.5).unwrap();
        assert!(hermite_eval(&half, 2, 1.0).unwrap().abs() < 1e-15);
        for m in [0.0, 0.3, 1.7] {
            let mu = MuParam::new(m).unwrap();
            assert!((hermite_eval(&mu, 4, 0.0).unwrap() - 12.0).abs() < 1e-12);
        }
        assert!((hermite_eval(&MuParam::new(0.0).unwrap(), 3, 1.0).unwrap() + 4.0).abs() < 1e-14);
    }

    #[test]
    fn recursion_matches_coefficients() {
        for m in [0.0, 0.25, 1.5, -0.25] {
            let mu = MuParam::new(m).unwrap();
            for n in 0..=20 {
                let p: DensePoly<f64> = hermite_coeffs(&mu, n).unwrap();
                for i in 0..=20 {
                    let x = -5.0 + 0.5 * i as f64;
                    let a = hermite_eval(&mu, n, x).unwrap();
                    let b = p.eval(&x);
                    let scale = p.coeffs().iter().enumerate().map(|(k, c)| c.abs() * x.abs().powi(k as i32)).sum::<f64>();
                    assert!((a - b).abs() <= 1e-10 * scale.max(a.abs()), "mu={m} n={n} x={x}: {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn leading_coefficient_and_parity() {
        for mu in mus() {
            for n in 0..=20 {
                let h = hermite_coeffs_in(&mu, n);
                let want = powi(&Rational::from_i64(2), n) * factorial::<Rational>(n) / gamma_mu_in(&mu, n);
                assert_eq!(h.leading(), want);
                let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
                assert_eq!(h.reflect(), h.scale(&sign));
            }
        }
    }

    #[test]
    fn lowering_exact() {
        for mu in mus() {
            for n in 1..=30 {
                let lhs = dunkl_apply_in(&mu, &hermite_coeffs_in(&mu, n));
                let rhs = hermite_coeffs_in(&mu, n - 1).scale(&Rational::from_usize(2 * n));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dunkl_monomial_rule_matches_definition() {
        for mu in mus() {
            for n in 0..=12 {
                let p = hermite_coeffs_in(&mu, n);
                let noisy = &p + &DensePoly::monomial(n + 1, q(3, 5));
                assert_eq!(dunkl_apply_in(&mu, &noisy), dunkl_by_definition_in(&mu, &noisy));
            }
        }
        let mu = q(2, 9);
        let one_p = Rational::one() + Rational::from_i64(2) * mu.clone();
        assert_eq!(dunkl_apply_in(&mu, &DensePoly::x()), DensePoly::constant(one_p));
        assert!(dunkl_apply_in(&mu, &DensePoly::one()).is_zero());
        let h2 = hermite_coeffs_in(&mu, 2);
        assert_eq!(dunkl_apply_in(&mu, &h2), hermite_coeffs_in(&mu, 1).scale(&Rational::from_i64(4)));
    }

    #[test]
    fn raising_examples() {
        let mu = q(1, 3);
        let one_p = Rational::one() + Rational::from_i64(2) * mu.clone();
        let r0 = raise_apply_in(&mu, &DensePoly::one());
        assert_eq!(r0, hermite_coeffs_in(&mu, 1).scale(&one_p));
        assert_eq!(raise_apply_in(&mu, &hermite_coeffs_in(&mu, 1)), hermite_coeffs_in(&mu, 2));
        let mut p = DensePoly::one();
        for n in 1..=10 {
            p = raise_apply_in(&mu, &p);
            let want = hermite_coeffs_in(&mu, n).scale(&(gamma_mu_in(&mu, n) / factorial::<Rational>(n)));
            assert_eq!(p, want);
        }
    }

    #[test]
    fn inversion_examples() {
        let mu = q(1, 2);
        let t0 = inversion_expand::<Rational>(0);
        assert_eq!(t0, vec![InversionTerm { degree: 0, coeff: Rational::one() }]);
        let t2 = inversion_expand::<Rational>(2);
        assert_eq!(t2[0].coeff, q(1, 2));
        assert_eq!(t2[1].coeff, Rational::one());
        let want2 = DensePoly::monomial(2, Rational::from_i64(4) / gamma_mu_in(&mu, 2));
        assert_eq!(inversion_reconstruct_in(&mu, &t2), want2);
        let t5 = inversion_expand::<Rational>(5);
        let want5 = DensePoly::monomial(5, Rational::from_i64(32) / gamma_mu_in(&mu, 5));
        assert_eq!(inversion_reconstruct_in(&mu, &t5), want5);
    }

    #[test]
    fn binomial_examples() {
        let mu = q(2, 5);
        let one_p = Rational::one() + Rational::from_i64(2) * mu.clone();
        let three_p = Rational::from_i64(3) + Rational::from_i64(2) * mu.clone();
        assert_eq!(
            binomial_poly_in(&mu, 1),
            BivariatePoly::from_terms([(1, 0, Rational::one()), (0, 1, Rational::one())])
        );
        let p3 = BivariatePoly::from_terms([
            (3, 0, Rational::one()),
            (2, 1, three_p.clone() / one_p.clone()),
            (1, 2, three_p / one_p),
            (0, 3, Rational::one()),
        ]);
        assert_eq!(binomial_poly_in(&mu, 3), p3);
        assert_eq!(binomial_poly_in(&mu, 5), binomial_poly_in(&mu, 4).mul_x_plus_y());
        for n in 0..10 {
            let p = binomial_poly_in(&mu, n);
            assert_eq!(p.swap(), p);
            assert_eq!(p.at_y(&Rational::zero()), DensePoly::monomial(n, Rational::one()));
        }
    }

    #[test]
    fn heat_poly_examples() {
        let mu = q(1, 3);
        let t = q(5, 7);
        for n in 0..8 {
            assert_eq!(heat_poly_in(&mu, n, &Rational::zero()), DensePoly::monomial(n, Rational::one()));
        }
        // exp(tD²)x² = x² + t·γ_μ(2)
        let one_p = Rational::one() + Rational::from_i64(2) * mu.clone();
        let want = DensePoly::from_coeffs(vec![Rational::from_i64(2) * one_p * t.clone(), Rational::zero(), Rational::one()]);
        assert_eq!(heat_poly_in(&mu, 2, &t), want);
        let classical = DensePoly::from_coeffs(vec![
            Rational::from_i64(12) * t.clone() * t.clone(),
            Rational::zero(),
            Rational::from_i64(12) * t.clone(),
            Rational::zero(),
            Rational::one(),
        ]);
        assert_eq!(heat_poly_in(&Rational::zero(), 4, &t), classical);
    }

    #[test]
    fn bivariate_arithmetic() {
        let a = BivariatePoly::from_terms([(1, 0, 2.0), (0, 1, 1.0)]);
        let b = BivariatePoly::from_terms([(1, 0, 1.0), (0, 1, -1.0)]);
        let prod = &a * &b;
        assert_eq!(prod, BivariatePoly::from_terms([(2, 0, 2.0), (1, 1, -1.0), (0, 2, -1.0)]));
        assert!((&prod - &prod).is_zero());
        assert_eq!(prod.eval_f64(1.0, 2.0), 2.0 - 2.0 - 4.0);
    }
}
