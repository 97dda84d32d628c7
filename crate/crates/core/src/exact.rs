//! Exact verification of the polynomial identities of the calculus.
//!
//! Each identity is evaluated at a fixed rational μ. Both sides are built
//! independently as polynomials with rational coefficients in `x` and at
//! most one auxiliary variable (a scale `λ`, a shift `y`, or a series
//! variable `z`) and compared coefficient by coefficient.
//!
//! The coefficients of `H_n^μ` are rational functions of μ, so a polynomial
//! identity that holds at more distinct rational μ than the degree of the
//! cleared numerators holds identically. The suite runs six values of μ.
//!
//! Functions of the form `p(x) e^{−λ²x²}` are carried by their polynomial
//! factor; the Gaussian is even, so the Dunkl product rule gives
//! `𝔇(p e^{−λ²x²}) = (𝔇p − 2λ²x p) e^{−λ²x²}`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::{gamma_mu_in, gamma_ratio_in, gamma_step_in, MuParam};
use crate::poly::{
    binomial_poly_in, dunkl_apply_in, heat_poly_xt_in, hermite_coeffs_in, inversion_expand, raise_apply_in,
    BivariatePoly, DensePoly,
};
use crate::scalar::{factorial, format_rational, powi, Rational, Scalar};

/// The identities the kernel can certify.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityTag {
    Recursion,
    Lowering,
    Raising,
    Rodrigues,
    IteratedRaise,
    Inversion,
    Generating,
    Binomial,
    OddFactor,
    HeatMonomial,
    DunklProduct,
    DunklSquare,
}

impl IdentityTag {
    pub const ALL: [IdentityTag; 12] = [
        IdentityTag::Recursion,
        IdentityTag::Lowering,
        IdentityTag::Raising,
        IdentityTag::Rodrigues,
        IdentityTag::IteratedRaise,
        IdentityTag::Inversion,
        IdentityTag::Generating,
        IdentityTag::Binomial,
        IdentityTag::OddFactor,
        IdentityTag::HeatMonomial,
        IdentityTag::DunklProduct,
        IdentityTag::DunklSquare,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdentityTag::Recursion => "recursion_2_6_3",
            IdentityTag::Lowering => "lowering_2_6_1",
            IdentityTag::Raising => "raising_2_6_2",
            IdentityTag::Rodrigues => "rodrigues_2_6_5",
            IdentityTag::IteratedRaise => "iterated_raise_2_6_6",
            IdentityTag::Inversion => "inversion_2_6_7",
            IdentityTag::Generating => "generating_2_5_8",
            IdentityTag::Binomial => "binomial_4_2_1",
            IdentityTag::OddFactor => "odd_factor_4_4",
            IdentityTag::HeatMonomial => "heat_monomial_2_7_1",
            IdentityTag::DunklProduct => "dunkl_product_2_5_3",
            IdentityTag::DunklSquare => "dunkl_square_2_5_1",
        }
    }

    /// Index bound used by the acceptance matrix. Series products grow
    /// quadratically, so the generating function stops at 12.
    pub fn default_n_max(self) -> usize {
        match self {
            IdentityTag::Generating => 12,
            _ => 20,
        }
    }
}

impl fmt::Display for IdentityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdentityTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IdentityTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::UnknownTag(s.to_string()))
    }
}

/// Both sides of one instance of an identity. Polynomials are in `x` (first
/// index) and the identity's auxiliary variable (second index).
#[derive(Debug, Clone, PartialEq)]
pub struct IdentitySides {
    pub label: String,
    pub lhs: BivariatePoly<Rational>,
    pub rhs: BivariatePoly<Rational>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub instance: String,
    /// Exponents `(j, k)` of the first mismatching monomial `x^j v^k`.
    pub monomial: (usize, usize),
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub tag: String,
    pub mu: String,
    pub n_max: usize,
    pub pass: bool,
    pub counterexample: Option<Counterexample>,
}

/// Certifies one identity for every index up to `n_max` at an exact μ.
pub fn verify_identity(tag: IdentityTag, mu: &MuParam, n_max: usize) -> Result<IdentityReport> {
    let m = Rational::from_mu(mu)?;
    let sides = identity_sides(tag, &m, n_max);
    Ok(report_from_sides(tag, &m, n_max, &sides))
}

/// Same as [`verify_identity`] with the tag given by name.
pub fn verify_identity_str(tag: &str, mu: &MuParam, n_max: usize) -> Result<IdentityReport> {
    verify_identity(tag.parse()?, mu, n_max)
}

/// Compares prebuilt sides; the first mismatch becomes the counterexample.
pub fn report_from_sides(tag: IdentityTag, mu: &Rational, n_max: usize, sides: &[IdentitySides]) -> IdentityReport {
    let counterexample = sides.iter().find_map(first_mismatch);
    IdentityReport {
        tag: tag.as_str().to_string(),
        mu: format_rational(mu),
        n_max,
        pass: counterexample.is_none(),
        counterexample,
    }
}

fn first_mismatch(s: &IdentitySides) -> Option<Counterexample> {
    let diff = &s.lhs - &s.rhs;
    let (j, k, _) = diff.terms().next()?;
    Some(Counterexample {
        instance: s.label.clone(),
        monomial: (j, k),
        lhs: format_rational(&s.lhs.coeff(j, k)),
        rhs: format_rational(&s.rhs.coeff(j, k)),
    })
}

type Q = Rational;
type Poly = DensePoly<Q>;
type Bi = BivariatePoly<Q>;

fn q(n: usize) -> Q {
    Q::from_usize(n)
}

fn uni(p: &Poly) -> Bi {
    Bi::from_x_poly(p)
}

/// `H_n^μ(λx)` with `λ` formal: the coefficient of `x^j λ^j` is that of `x^j`.
fn hermite_scaled_formal(mu: &Q, n: usize) -> Bi {
    Bi::from_terms(hermite_coeffs_in(mu, n).coeffs().iter().enumerate().map(|(j, c)| (j, j, c.clone())))
}

/// 𝔇_μ acting on the `x` variable of a bivariate polynomial.
fn dunkl_x(mu: &Q, p: &Bi) -> Bi {
    Bi::from_terms(p.terms().filter(|(j, _, _)| *j > 0).map(|(j, k, c)| (j - 1, k, c.clone() * gamma_step_in(mu, j))))
}

fn monomial_bi(j: usize, k: usize, c: Q) -> Bi {
    Bi::from_terms([(j, k, c)])
}

/// Builds both sides of `tag` for all indices up to `n_max`.
pub fn identity_sides(tag: IdentityTag, mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    match tag {
        IdentityTag::Recursion => recursion(mu, n_max),
        IdentityTag::Lowering => lowering(mu, n_max),
        IdentityTag::Raising => raising(mu, n_max),
        IdentityTag::Rodrigues => rodrigues(mu, n_max),
        IdentityTag::IteratedRaise => iterated_raise(mu, n_max),
        IdentityTag::Inversion => inversion(mu, n_max),
        IdentityTag::Generating => generating(mu, n_max),
        IdentityTag::Binomial => binomial(mu, n_max),
        IdentityTag::OddFactor => odd_factor(mu, n_max),
        IdentityTag::HeatMonomial => heat_monomial(mu, n_max),
        IdentityTag::DunklProduct => dunkl_product(mu, n_max),
        IdentityTag::DunklSquare => dunkl_square(mu, n_max),
    }
}

fn sides(label: String, lhs: Bi, rhs: Bi) -> IdentitySides {
    IdentitySides { label, lhs, rhs }
}

/// `2n H_{n−1} + γ(n+1)/((n+1)γ(n)) H_{n+1} = 2x H_n`.
fn recursion(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let h: Vec<Poly> = (0..=n_max).map(|n| hermite_coeffs_in(mu, n)).collect();
    (0..n_max)
        .map(|n| {
            let mut lhs = h[n + 1].scale(&(gamma_ratio_in(mu, n + 1, n) / q(n + 1)));
            if n > 0 {
                lhs = &lhs + &h[n - 1].scale(&q(2 * n));
            }
            let rhs = h[n].mul_x().scale(&q(2));
            sides(format!("n={n}"), uni(&lhs), uni(&rhs))
        })
        .collect()
}

/// `𝔇_x H_n(λx) = 2λn H_{n−1}(λx)` with `λ` formal.
fn lowering(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (1..=n_max)
        .map(|n| {
            let lhs = dunkl_x(mu, &hermite_scaled_formal(mu, n));
            let rhs = &monomial_bi(0, 1, q(2 * n)) * &hermite_scaled_formal(mu, n - 1);
            sides(format!("n={n}"), lhs, rhs)
        })
        .collect()
}

/// `(2x − 𝔇) H_n = γ(n+1)/((n+1)γ(n)) H_{n+1} = (1 + 2μθ(n+1)/(n+1)) H_{n+1}`.
fn raising(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let mut out = Vec::new();
    for n in 0..n_max {
        let lhs = raise_apply_in(mu, &hermite_coeffs_in(mu, n));
        let h_next = hermite_coeffs_in(mu, n + 1);
        let ratio = gamma_mu_in(mu, n + 1) / (q(n + 1) * gamma_mu_in(mu, n));
        out.push(sides(format!("n={n}"), uni(&lhs), uni(&h_next.scale(&ratio))));
        let theta = if (n + 1) % 2 == 1 { Q::one() } else { Q::zero() };
        let alt = Q::one() + q(2) * mu.clone() * theta / q(n + 1);
        out.push(sides(format!("n={n} (theta form)"), uni(&lhs), uni(&h_next.scale(&alt))));
    }
    out
}

/// `(−1)ⁿ e^{λ²x²} 𝔇ⁿ e^{−λ²x²} = λⁿ γ(n)/n! H_n(λx)` with `λ` formal.
fn rodrigues(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let two_lambda_sq_x = monomial_bi(1, 2, q(2));
    let mut p = monomial_bi(0, 0, Q::one());
    let mut out = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            p = &dunkl_x(mu, &p) - &(&two_lambda_sq_x * &p);
        }
        let sign = if n % 2 == 0 { Q::one() } else { -Q::one() };
        let lhs = p.scale(&sign);
        let c = gamma_mu_in(mu, n) / factorial::<Q>(n);
        let rhs = &monomial_bi(0, n, c) * &hermite_scaled_formal(mu, n);
        out.push(sides(format!("n={n}"), lhs, rhs));
    }
    out
}

/// `H_n = n!/γ(n) (2𝔔 − 𝔇)ⁿ H_0`.
fn iterated_raise(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let mut p = Poly::one();
    let mut out = Vec::new();
    for n in 0..=n_max {
        if n > 0 {
            p = raise_apply_in(mu, &p);
        }
        let rhs = p.scale(&(factorial::<Q>(n) / gamma_mu_in(mu, n)));
        out.push(sides(format!("n={n}"), uni(&hermite_coeffs_in(mu, n)), uni(&rhs)));
    }
    out
}

/// `(2x)ⁿ/γ(n) = Σ_k H_{n−2k}/(k!(n−2k)!)`.
fn inversion(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (0..=n_max)
        .map(|n| {
            let lhs = Poly::monomial(n, powi(&q(2), n) / gamma_mu_in(mu, n));
            let rhs = inversion_expand::<Q>(n)
                .iter()
                .fold(Poly::zero(), |acc, t| &acc + &hermite_coeffs_in(mu, t.degree).scale(&t.coeff));
            sides(format!("n={n}"), uni(&lhs), uni(&rhs))
        })
        .collect()
}

/// Coefficient of `zⁿ` in `exp(−z²) e_μ(2xz)` equals `H_n/n!`. Both series
/// are truncated at degree `n_max` in `z` and multiplied as polynomials in
/// `(x, z)`.
fn generating(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let gauss = Bi::from_terms((0..=n_max / 2).map(|k| {
        let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
        (0, 2 * k, sign / factorial::<Q>(k))
    }));
    let expo = Bi::from_terms((0..=n_max).map(|j| (j, j, powi(&q(2), j) / gamma_mu_in(mu, j))));
    let product = &gauss * &expo;
    (0..=n_max)
        .map(|n| {
            let coeff = Bi::from_terms(product.terms().filter(|(_, k, _)| *k == n).map(|(j, _, c)| (j, 0, c.clone())));
            let rhs = hermite_coeffs_in(mu, n).scale(&(Q::one() / factorial::<Q>(n)));
            sides(format!("n={n}"), coeff, uni(&rhs))
        })
        .collect()
}

/// `𝔗_{y,x} xⁿ = Σ_j y^j/γ(j) 𝔇^j xⁿ`, built by repeated 𝔇, as bivariate
/// polynomial in `(x, y)`.
fn translate_series(mu: &Q, n: usize) -> Bi {
    let mut p = Poly::monomial(n, Q::one());
    let mut out = Bi::zero();
    for j in 0..=n {
        let c = Q::one() / gamma_mu_in(mu, j);
        out = &out + &Bi::from_terms(p.coeffs().iter().enumerate().map(|(i, a)| (i, j, a.clone() * c.clone())));
        p = dunkl_apply_in(mu, &p);
    }
    out
}

/// `p_{n,μ}(x, y) = Σ_j binom(n, j)_μ x^j y^{n−j}`.
fn binomial(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (0..=n_max)
        .map(|n| sides(format!("n={n}"), translate_series(mu, n), binomial_poly_in(mu, n)))
        .collect()
}

/// `p_{2n+1,μ} = (x + y) p_{2n,μ}`.
fn odd_factor(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (0..)
        .map(|n| 2 * n + 1)
        .take_while(|&odd| odd <= n_max)
        .map(|odd| {
            let rhs = binomial_poly_in(mu, odd - 1).mul_x_plus_y();
            sides(format!("n={}", odd / 2), translate_series(mu, odd), rhs)
        })
        .collect()
}

/// `exp(−y²𝔇²) xⁿ = γ(n)/n! H_n(x/2y) yⁿ`, a polynomial identity in
/// `(x, y)`. Also checks the closed heat polynomial
/// `exp(t𝔇²) xⁿ = γ(n) Σ_k x^{n−2k} t^k/(k! γ(n−2k))` in `(x, t)`.
fn heat_monomial(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        let mut p = Poly::monomial(n, Q::one());
        let mut backward = Bi::zero();
        let mut forward = Bi::zero();
        for k in 0..=n / 2 {
            let kf = factorial::<Q>(k);
            let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
            backward = &backward + &Bi::from_terms(p.coeffs().iter().enumerate().map(|(i, a)| (i, 2 * k, sign.clone() * a.clone() / kf.clone())));
            forward = &forward + &Bi::from_terms(p.coeffs().iter().enumerate().map(|(i, a)| (i, k, a.clone() / kf.clone())));
            p = dunkl_apply_in(mu, &dunkl_apply_in(mu, &p));
        }
        // γ(n)/n! Σ_j h_j x^j (2y)^{−j} yⁿ, with j ≡ n (mod 2) so n − j ≥ 0.
        let pre = gamma_mu_in(mu, n) / factorial::<Q>(n);
        let rhs = Bi::from_terms(
            hermite_coeffs_in(mu, n)
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, n - j, pre.clone() * c.clone() / powi(&q(2), j))),
        );
        out.push(sides(format!("n={n}"), backward, rhs));
        out.push(sides(format!("n={n} (heat polynomial)"), forward, heat_poly_xt_in(mu, n)));
    }
    out
}

/// `𝔇(φψ) = 𝔇(φ)ψ + φ𝔇(ψ)` for `φ = H_n + x^{n+1}/3` and the even
/// `ψ = H_{2⌈n/2⌉} + 1`.
fn dunkl_product(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (0..=n_max)
        .map(|n| {
            let phi = &hermite_coeffs_in(mu, n) + &Poly::monomial(n + 1, Q::one() / q(3));
            let psi = &hermite_coeffs_in(mu, 2 * n.div_ceil(2)) + &Poly::one();
            let lhs = dunkl_apply_in(mu, &(&phi * &psi));
            let rhs = &(&dunkl_apply_in(mu, &phi) * &psi) + &(&phi * &dunkl_apply_in(mu, &psi));
            sides(format!("n={n}"), uni(&lhs), uni(&rhs))
        })
        .collect()
}

/// `x² 𝔇²φ = x²φ'' + 2μxφ' − μ(φ(x) − φ(−x))` for `φ = H_n + x^{n+1}/3`,
/// cleared of denominators.
fn dunkl_square(mu: &Q, n_max: usize) -> Vec<IdentitySides> {
    (0..=n_max)
        .map(|n| {
            let phi = &hermite_coeffs_in(mu, n) + &Poly::monomial(n + 1, Q::one() / q(3));
            let lhs = dunkl_apply_in(mu, &dunkl_apply_in(mu, &phi)).mul_x().mul_x();
            let d1 = phi.derivative();
            let d2 = d1.derivative();
            let rhs = &(&d2.mul_x().mul_x() + &d1.mul_x().scale(&(q(2) * mu.clone())))
                - &(&phi - &phi.reflect()).scale(mu);
            sides(format!("n={n}"), uni(&lhs), uni(&rhs))
        })
        .collect()
}
