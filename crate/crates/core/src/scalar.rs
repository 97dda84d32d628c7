//! Scalar fields the polynomial code is generic over.
//!
//! `f64` drives the floating path and [`Rational`] the exact one. The same
//! routines in [`crate::poly`] are instantiated for both.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mu::MuParam;

/// Arbitrary-precision rational, always kept reduced with a positive denominator.
pub type Rational = BigRational;

pub trait Scalar: Num + Clone + Debug + Neg<Output = Self> + Send + Sync + 'static {
    fn from_i64(n: i64) -> Self;

    /// The deformation parameter as an element of this field.
    fn from_mu(mu: &MuParam) -> Result<Self>;

    fn to_f64(&self) -> f64;

    fn abs_val(&self) -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    /// Exact-arithmetic fields compare with `==`; this flag lets callers tell
    /// the two paths apart when trimming.
    const EXACT: bool;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_mu(mu: &MuParam) -> Result<Self> {
        Ok(mu.value())
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn from_mu(mu: &MuParam) -> Result<Self> {
        mu.as_rational().cloned().ok_or_else(|| {
            Error::Domain(format!(
                "mu = {} has no exact rational representation; pass it as p/q",
                mu.value()
            ))
        })
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_val(&self) -> Self {
        self.abs()
    }
}

/// `n!` in the field `S`.
pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_usize(k))
}

/// `base^n` by repeated squaring.
pub fn powi<S: Scalar>(base: &S, mut n: usize) -> S {
    let mut result = S::one();
    let mut b = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            result = result * b.clone();
        }
        b = b.clone() * b;
        n >>= 1;
    }
    result
}

/// Parses `"p/q"`, `"p"` or a terminating decimal such as `"-0.25"` into a
/// rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("cannot parse `{s}` as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| bad())?
    };
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = Rational::new(num, den);
    Ok(if neg { -r } else { r })
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
