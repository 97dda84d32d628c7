//! The deformation parameter μ, the generalized factorial γ_μ and the
//! μ-binomial coefficients.
//!
//! γ_μ is built from the product recursion
//! `γ_μ(n+1) = (n + 1 + 2μ·θ(n+1))·γ_μ(n)`, `γ_μ(0) = 1`, where θ is the
//! parity indicator. At μ = 0 it is the ordinary factorial.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

/// The deformation parameter.
///
/// Numeric routines require `value > -1/2`. Exact routines accept any
/// rational outside the pole set `{-1/2, -3/2, -5/2, ...}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MuParam {
    value: f64,
    exact: Option<Rational>,
}

pub const NUMERIC_GUARD: &str = "mu must exceed -1/2";

impl MuParam {
    /// A floating-point μ; enforces the numeric guard `μ > -1/2`.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= -0.5 {
            return Err(Error::Domain(format!("{NUMERIC_GUARD} (got {value})")));
        }
        Ok(Self { value, exact: None })
    }

    /// An exact rational μ; rejects the poles `-(2k+1)/2`.
    pub fn rational(r: Rational) -> Result<Self> {
        if is_pole(&r) {
            return Err(Error::Domain(format!(
                "mu = {} is a pole of gamma_mu (excluded set -1/2, -3/2, ...)",
                format_rational(&r)
            )));
        }
        let value = ToPrimitive::to_f64(&r).unwrap_or(f64::NAN);
        Ok(Self { value, exact: Some(r) })
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        Self::rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `"p/q"` gives an exact μ; a decimal gives a numeric μ.
    pub fn parse(s: &str) -> Result<Self> {
        if s.contains('/') {
            Self::rational(parse_rational(s)?)
        } else {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("cannot parse mu `{s}`")))?;
            Self::new(v)
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// The numeric value after checking `μ > -1/2`.
    pub fn ensure_numeric(&self) -> Result<f64> {
        if self.value > -0.5 && self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(Error::Domain(format!("{NUMERIC_GUARD} (got {})", self.value)))
        }
    }

    /// The numeric value after checking `μ > 0`, required by the α_μ measure.
    pub fn ensure_positive(&self) -> Result<f64> {
        if self.value > 0.0 && self.value.is_finite() {
            Ok(self.value)
        } else {
            Err(Error::Domain(format!("mu must be positive for the alpha_mu measure (got {})", self.value)))
        }
    }

    /// μ + ½.
    pub fn half_shift(&self) -> f64 {
        self.value + 0.5
    }
}

impl TryFrom<f64> for MuParam {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl fmt::Display for MuParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => f.write_str(&format_rational(r)),
            None => write!(f, "{}", self.value),
        }
    }
}

impl Serialize for MuParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn is_pole(r: &Rational) -> bool {
    let twice = r * Rational::from_integer(BigInt::from(2));
    twice.is_integer() && twice.is_negative() && (twice.to_integer() % BigInt::from(2)) != BigInt::zero()
}

/// Parity indicator: 1 for odd `n`, 0 for even.
pub fn theta(n: usize) -> u8 {
    (n & 1) as u8
}

/// `γ_μ(n)/γ_μ(n-1) = n + 2μ·θ(n)` for `n ≥ 1`.
pub fn gamma_step_in<S: Scalar>(mu: &S, n: usize) -> S {
    let base = S::from_usize(n);
    if theta(n) == 1 {
        base + S::from_i64(2) * mu.clone()
    } else {
        base
    }
}

/// γ_μ(n) in an arbitrary field by the product recursion.
pub fn gamma_mu_in<S: Scalar>(mu: &S, n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * gamma_step_in(mu, k))
}

/// `γ_μ(n)/γ_μ(m)` for `m ≤ n` without forming either factor.
pub fn gamma_ratio_in<S: Scalar>(mu: &S, n: usize, m: usize) -> S {
    debug_assert!(m <= n);
    ((m + 1)..=n).fold(S::one(), |acc, k| acc * gamma_step_in(mu, k))
}

/// γ_μ(n) in 64-bit floating point.
///
/// Overflows near `n ≈ 170`; the error then points callers at
/// [`log_gamma_mu`].
pub fn gamma_mu(mu: &MuParam, n: usize) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    let v = gamma_mu_in(&m, n);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Overflow(format!("gamma_mu({m}, {n}); use log_gamma_mu")))
    }
}

/// log γ_μ(n).
pub fn log_gamma_mu(mu: &MuParam, n: usize) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    Ok((1..=n).map(|k| gamma_step_in(&m, k).ln()).sum())
}

/// γ_μ(0..=n_max) with log-scale companions.
#[derive(Debug, Clone)]
pub struct GammaMuTable {
    mu: MuParam,
    values: Vec<f64>,
    log_values: Vec<f64>,
}

impl GammaMuTable {
    pub fn new(mu: &MuParam, n_max: usize) -> Result<Self> {
        let m = mu.ensure_numeric()?;
        let mut values = Vec::with_capacity(n_max + 1);
        let mut log_values = Vec::with_capacity(n_max + 1);
        values.push(1.0);
        log_values.push(0.0);
        for k in 1..=n_max {
            let step = gamma_step_in(&m, k);
            values.push(values[k - 1] * step);
            log_values.push(log_values[k - 1] + step.ln());
        }
        Ok(Self { mu: mu.clone(), values, log_values })
    }

    pub fn mu(&self) -> &MuParam {
        &self.mu
    }

    pub fn n_max(&self) -> usize {
        self.values.len() - 1
    }

    /// γ_μ(n); may be `inf` past the floating range.
    pub fn value(&self, n: usize) -> f64 {
        self.values[n]
    }

    pub fn log_value(&self, n: usize) -> f64 {
        self.log_values[n]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }
}

/// μ-binomial coefficient `γ_μ(n)/(γ_μ(j)·γ_μ(n-j))` in any field.
pub fn mu_binomial_in<S: Scalar>(mu: &S, n: usize, j: usize) -> S {
    let k = j.min(n - j);
    let hi = n - k;
    (1..=k).fold(S::one(), |acc, i| acc * gamma_step_in(mu, hi + i) / gamma_step_in(mu, i))
}

/// μ-binomial coefficient in floating point.
pub fn mu_binomial(mu: &MuParam, n: usize, j: usize) -> Result<f64> {
    if j > n {
        return Err(Error::InvalidArgument(format!("mu_binomial index j = {j} exceeds n = {n}")));
    }
    let m = mu.ensure_numeric()?;
    Ok(mu_binomial_in(&m, n, j))
}

/// n-th moment of the probability measure α_μ on (-1, 1): `n!/γ_μ(n)`.
pub fn alpha_mu_moment(mu: &MuParam, n: usize) -> Result<f64> {
    let m = mu.ensure_positive()?;
    Ok((1..=n).map(|k| k as f64 / gamma_step_in(&m, k)).product())
}

/// Γ(x).
pub fn gamma_fn(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma_fn(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// B(a, b) via log-Gamma differences.
pub fn beta_fn(a: f64, b: f64) -> f64 {
    (ln_gamma_fn(a) + ln_gamma_fn(b) - ln_gamma_fn(a + b)).exp()
}

/// Exact `γ_μ(n)` for an exact μ.
pub fn gamma_mu_exact(mu: &MuParam, n: usize) -> Result<Rational> {
    let m = Rational::from_mu(mu)?;
    Ok(gamma_mu_in(&m, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(v: f64) -> MuParam {
        MuParam::new(v).unwrap()
    }

    #[test]
    fn theta_parity() {
        assert_eq!(theta(0), 0);
        assert_eq!(theta(1), 1);
        assert_eq!(theta(8), 0);
    }

    #[test]
    fn gamma_small_values() {
        let m = 0.3;
        assert!((gamma_mu(&mu(m), 1).unwrap() - (1.0 + 2.0 * m)).abs() < 1e-15);
        assert_eq!(gamma_mu(&mu(0.5), 3).unwrap(), 16.0);
        for n in 0..15 {
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            assert_eq!(gamma_mu(&mu(0.0), n).unwrap(), fact);
        }
    }

    #[test]
    fn gamma_overflow_is_reported() {
        let err = gamma_mu(&mu(0.0), 200).unwrap_err();
        assert!(matches!(err, Error::Overflow(_)));
        let lg = log_gamma_mu(&mu(0.0), 200).unwrap();
        assert!((lg - ln_gamma_fn(201.0)).abs() < 1e-9);
    }

    #[test]
    fn table_matches_recursion() {
        let t = GammaMuTable::new(&mu(1.5), 200).unwrap();
        assert_eq!(t.value(0), 1.0);
        for n in 0..200 {
            if t.value(n + 1).is_finite() {
                let ratio = t.value(n + 1) / t.value(n);
                let want = (n + 1) as f64 + 3.0 * theta(n + 1) as f64;
                assert!((ratio - want).abs() <= 1e-14 * want);
            }
            let lratio = t.log_value(n + 1) - t.log_value(n);
            let want = ((n + 1) as f64 + 3.0 * theta(n + 1) as f64).ln();
            assert!((lratio - want).abs() < 1e-12);
        }
        assert!(t.values().iter().take(150).all(|v| *v > 0.0));
    }

    #[test]
    fn guards() {
        assert!(MuParam::new(-0.5).is_err());
        assert!(MuParam::new(f64::NAN).is_err());
        assert!(MuParam::from_ratio(-1, 2).is_err());
        assert!(MuParam::from_ratio(-3, 2).is_err());
        assert!(MuParam::from_ratio(-5, 2).is_err());
        let m = MuParam::from_ratio(-3, 4).unwrap();
        assert!(m.ensure_numeric().is_err());
        assert!(MuParam::from_ratio(-1, 1).is_ok());
        assert!(MuParam::from_ratio(-1, 4).unwrap().ensure_numeric().is_ok());
        let e = MuParam::new(-0.7).unwrap_err();
        assert!(e.to_string().contains("mu must exceed -1/2"));
    }

    #[test]
    fn parse_routes() {
        let m = MuParam::parse("1/3").unwrap();
        assert!(m.is_exact());
        assert_eq!(m.to_string(), "1/3");
        let d = MuParam::parse("0.5").unwrap();
        assert!(!d.is_exact());
        assert!(MuParam::parse("-1").is_err());
        assert!(MuParam::parse("-1/1").is_ok());
    }

    #[test]
    fn binomials() {
        let m = mu(0.37);
        for n in 0..12 {
            assert_eq!(mu_binomial(&m, n, 0).unwrap(), 1.0);
            for j in 0..=n {
                let a = mu_binomial(&m, n, j).unwrap();
                let b = mu_binomial(&m, n, n - j).unwrap();
                assert!((a - b).abs() <= 1e-14 * a.abs());
            }
        }
        assert_eq!(mu_binomial(&mu(0.0), 4, 2).unwrap(), 6.0);
        let want = 2.0 / (1.0 + 2.0 * 0.37);
        assert!((mu_binomial(&m, 2, 1).unwrap() - want).abs() < 1e-15);
        assert!(mu_binomial(&m, 2, 3).is_err());
    }

    #[test]
    fn binomial_matches_gamma_quotient_exactly() {
        let r = Rational::new(1.into(), 3.into());
        for n in 0..20 {
            for j in 0..=n {
                let lhs = mu_binomial_in(&r, n, j);
                let rhs = gamma_mu_in(&r, n) / (gamma_mu_in(&r, j) * gamma_mu_in(&r, n - j));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn alpha_moments() {
        let m = mu(0.8);
        assert_eq!(alpha_mu_moment(&m, 0).unwrap(), 1.0);
        assert!((alpha_mu_moment(&m, 1).unwrap() - 1.0 / 2.6).abs() < 1e-15);
        assert!((alpha_mu_moment(&mu(0.5), 2).unwrap() - 0.5).abs() < 1e-15);
        assert!(alpha_mu_moment(&mu(0.0), 2).is_err());
        assert!(alpha_mu_moment(&mu(-0.2), 2).is_err());
    }

    #[test]
    fn exact_gamma() {
        let m = MuParam::from_ratio(1, 2).unwrap();
        assert_eq!(gamma_mu_exact(&m, 3).unwrap(), Rational::from_i64(16));
        assert!(gamma_mu_exact(&mu(0.5), 3).is_err());
    }
}
