//! Generalized translation `𝔗_y = e_μ(y𝔇)`.
//!
//! Three realizations:
//!
//! * on polynomials, the terminating series `Σ_j y^j/γ_μ(j) 𝔇^j p`;
//! * for bounded φ and μ > 0, the α_μ average with
//!   `ω̃(t) = (x² + 2xyt + y²)^{1/2}`:
//!   `∫ [φ_e(ω̃) + (x+y) φ_o(ω̃)/ω̃] dα_μ(t)`, with `φ_e`, `φ_o` the even and
//!   odd parts of φ;
//! * the Heron-measure integral over `Ξ(x, y)`, used as an independent
//!   check of the α_μ form.
//!
//! The operator `e_μ(iyP)` on the truncated φ basis is also provided.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::efun::{e_mu_in, EvalOptions};
use crate::error::{Error, Result};
use crate::mu::{beta_fn, gamma_mu_in, MuParam};
use crate::poly::{dunkl_apply_in, DensePoly};
use crate::quadrature::{gauss_alpha_mu, gauss_jacobi, symmetric_tridiagonal_eigen};
use crate::scalar::Scalar;
use crate::transform::{expand, operator_matrix, OperatorTag, SpectralVector};

/// `𝔗_y p = Σ_j y^j/γ_μ(j) 𝔇^j p`.
pub fn translate_poly<S: Scalar>(mu: &MuParam, p: &DensePoly<S>, y: &S) -> Result<DensePoly<S>> {
    let m = S::from_mu(mu)?;
    let mut out = DensePoly::zero();
    let mut d = p.clone();
    let mut ypow = S::one();
    let mut j = 0usize;
    while !d.is_zero() {
        out = &out + &d.scale(&(ypow.clone() / gamma_mu_in(&m, j)));
        d = dunkl_apply_in(&m, &d);
        ypow = ypow * y.clone();
        j += 1;
    }
    Ok(out)
}

/// Default node count for the integral forms.
pub const DEFAULT_TRANSLATE_NODES: usize = 128;

/// `(𝔗_y φ)(x)` by the α_μ average.
pub fn translate_alpha<F: Fn(f64) -> f64>(mu: &MuParam, phi: F, x: f64, y: f64) -> Result<f64> {
    translate_alpha_with(mu, phi, x, y, DEFAULT_TRANSLATE_NODES)
}

pub fn translate_alpha_with<F: Fn(f64) -> f64>(mu: &MuParam, phi: F, x: f64, y: f64, nodes: usize) -> Result<f64> {
    let rule = gauss_alpha_mu(mu, nodes)?;
    let s = x + y;
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
        let om = (x * x + 2.0 * x * y * t + y * y).max(0.0).sqrt();
        let (p, n) = (phi(om), phi(-om));
        let mut v = 0.5 * (p + n);
        if om > 0.0 {
            v += s * 0.5 * (p - n) / om;
        }
        acc += w * v;
    }
    Ok(acc)
}

/// `Ψ(x, y, ξ) = ((x+y)² − ξ²)(ξ² − (x−y)²)/16`.
pub fn heron_psi(x: f64, y: f64, xi: f64) -> f64 {
    ((x + y).powi(2) - xi * xi) * (xi * xi - (x - y).powi(2)) / 16.0
}

/// Area of the triangle with sides `|x|, |y|, |ξ|`, or 0 if there is none.
pub fn heron_delta(x: f64, y: f64, xi: f64) -> f64 {
    let psi = heron_psi(x, y, xi);
    if psi > 0.0 {
        psi.sqrt()
    } else {
        0.0
    }
}

/// The triangle data at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeronGeometry {
    pub x: f64,
    pub y: f64,
    pub xi: f64,
    pub psi: f64,
    pub delta: f64,
    pub in_xi: bool,
}

impl HeronGeometry {
    pub fn new(x: f64, y: f64, xi: f64) -> Self {
        let psi = heron_psi(x, y, xi);
        Self { x, y, xi, psi, delta: heron_delta(x, y, xi), in_xi: psi > 0.0 }
    }
}

/// The two intervals of `Ξ(x, y)`, negative one first.
pub fn xi_intervals(x: f64, y: f64) -> [(f64, f64); 2] {
    let big = (x + y).abs();
    let small = (x - y).abs();
    let (lo, hi) = if x * y > 0.0 { (small, big) } else { (big, small) };
    [(-hi, -lo), (lo, hi)]
}

/// `(𝔗_y φ)(x)` as the Heron-measure integral
/// `∫_{Ξ(x,y)} sgn(xyξ)/(x+y−ξ) φ(ξ) (2Δ/|xy|)^{2μ} dξ / B(½, μ)`.
///
/// Each interval is mapped onto a Gauss–Jacobi rule whose exponents absorb
/// the endpoint behavior: `μ − 1` at the endpoint equal to `x + y`, `μ` at
/// the others.
pub fn translate_xi<F: Fn(f64) -> f64>(mu: &MuParam, phi: F, x: f64, y: f64) -> Result<f64> {
    translate_xi_with(mu, phi, x, y, DEFAULT_TRANSLATE_NODES)
}

pub fn translate_xi_with<F: Fn(f64) -> f64>(mu: &MuParam, phi: F, x: f64, y: f64, nodes: usize) -> Result<f64> {
    let m = mu.ensure_positive()?;
    if x == 0.0 || y == 0.0 {
        return Err(Error::InvalidArgument("translate_xi needs x and y nonzero; use translate_alpha".into()));
    }
    if (x + y) == 0.0 || (x - y) == 0.0 {
        return Err(Error::InvalidArgument("translate_xi needs |x| != |y|; use translate_alpha".into()));
    }
    let s = x + y;
    let sxy = (x * y).signum();
    let pre = 4f64.powf(-m) / (beta_fn(0.5, m) * (x * y).abs().powf(2.0 * m));
    let mut total = 0.0;
    for (a, b) in xi_intervals(x, y) {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let a_pole = a == s;
        let b_pole = b == s;
        let ea = if a_pole { m - 1.0 } else { m };
        let eb = if b_pole { m - 1.0 } else { m };
        // Weight (1 − u)^{eb} (1 + u)^{ea}: u = 1 is ξ = b.
        let rule = gauss_jacobi(eb, ea, nodes)?;
        let mut acc = 0.0;
        for (&u, &w) in rule.nodes().iter().zip(rule.weights()) {
            let xi = mid + half * u;
            // The two linear factors of 16Ψ that do not vanish on this interval.
            let others = ((xi + a).abs() * (xi + b).abs()).powf(m);
            let kernel = if a_pole {
                -1.0
            } else if b_pole {
                1.0
            } else {
                half / (s - xi)
            };
            acc += w * sxy * xi.signum() * kernel * others * phi(xi);
        }
        total += acc * half.powf(2.0 * m);
    }
    Ok(total * pre)
}

/// How a [`TranslationJob`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationMethod {
    PolySeries,
    AlphaIntegral,
    XiIntegral,
}

impl fmt::Display for TranslationMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TranslationMethod::PolySeries => "poly-series",
            TranslationMethod::AlphaIntegral => "alpha-integral",
            TranslationMethod::XiIntegral => "xi-integral",
        })
    }
}

/// The function being translated.
#[derive(Clone)]
pub enum Integrand {
    Polynomial(DensePoly<f64>),
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl fmt::Debug for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrand::Polynomial(p) => f.debug_tuple("Polynomial").field(p).finish(),
            Integrand::Function(_) => f.write_str("Function(..)"),
        }
    }
}

impl Integrand {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Integrand::Polynomial(p) => p.eval(&x),
            Integrand::Function(f) => f(x),
        }
    }
}

/// A translation `𝔗_y` of a fixed integrand by a fixed method.
#[derive(Debug, Clone)]
pub struct TranslationJob {
    mu: MuParam,
    y: f64,
    method: TranslationMethod,
    integrand: Integrand,
    poly_result: Option<DensePoly<f64>>,
}

impl TranslationJob {
    pub fn new(mu: MuParam, y: f64, method: TranslationMethod, integrand: Integrand) -> Result<Self> {
        mu.ensure_numeric()?;
        let poly_result = match method {
            TranslationMethod::PolySeries => match &integrand {
                Integrand::Polynomial(p) => Some(translate_poly(&mu, p, &y)?),
                Integrand::Function(_) => {
                    return Err(Error::InvalidArgument("poly-series translation needs a polynomial integrand".into()))
                }
            },
            TranslationMethod::AlphaIntegral | TranslationMethod::XiIntegral => {
                mu.ensure_positive()?;
                None
            }
        };
        Ok(Self { mu, y, method, integrand, poly_result })
    }

    pub fn method(&self) -> TranslationMethod {
        self.method
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// `(𝔗_y φ)(x)`. The Heron form falls back to the α_μ form where it
    /// degenerates (`x = 0`, `y = 0` or `|x| = |y|`).
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let f = |t: f64| self.integrand.eval(t);
        match self.method {
            TranslationMethod::PolySeries => Ok(self.poly_result.as_ref().expect("built in new").eval(&x)),
            TranslationMethod::AlphaIntegral => translate_alpha(&self.mu, f, x, self.y),
            TranslationMethod::XiIntegral => {
                if x == 0.0 || self.y == 0.0 || x.abs() == self.y.abs() {
                    translate_alpha(&self.mu, f, x, self.y)
                } else {
                    translate_xi(&self.mu, f, x, self.y)
                }
            }
        }
    }
}

/// `e_μ(iyP_N)` on the truncated φ basis, computed as
/// `F* V diag(e_μ(iyλ_j)) Vᵀ F` from the eigenpairs `(λ_j, V)` of `Q_N`.
pub fn translation_matrix(mu: &MuParam, y: f64, n: usize) -> Result<DMatrix<Complex64>> {
    let m = mu.ensure_numeric()?;
    let q = operator_matrix(mu, OperatorTag::Q, n)?;
    let off: Vec<f64> = (1..n).map(|k| q.matrix()[(k - 1, k)].re).collect();
    let (vals, vecs) = symmetric_tridiagonal_eigen(&vec![0.0; n], &off, true)?;
    let v = DMatrix::from_row_slice(n, n, &vecs.expect("vectors requested")).map(|r| Complex64::new(r, 0.0));
    let opts = EvalOptions::default();
    let diag: Vec<Complex64> =
        vals.iter().map(|&l| e_mu_in(m, Complex64::new(0.0, y * l), &opts)).collect::<Result<_>>()?;
    let d = DMatrix::from_diagonal(&DVector::from_vec(diag));
    let f = operator_matrix(mu, OperatorTag::F, n)?.into_matrix();
    Ok(f.adjoint() * &v * d * v.transpose() * f)
}

/// `(e_μ(iyP) f)(x)` at each `x`, by expansion in `basis` functions.
pub fn translate_spectral<F: Fn(f64) -> f64>(mu: &MuParam, f: F, y: f64, xs: &[f64], basis: usize) -> Result<Vec<f64>> {
    let e = expand(mu, |x| Complex64::new(f(x), 0.0), basis, basis + 64)?;
    let t = translation_matrix(mu, y, basis)?;
    let w = t * DVector::from_column_slice(e.vector.coeffs());
    let v = SpectralVector::new(mu.clone(), w.iter().copied().collect());
    Ok(xs.iter().map(|&x| v.evaluate(x).re).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efun::e_mu_real;
    use crate::scalar::Rational;

    fn mu(v: f64) -> MuParam {
        MuParam::new(v).unwrap()
    }

    #[test]
    fn poly_examples() {
        let m = mu(0.5);
        let x = DensePoly::x();
        assert_eq!(translate_poly(&m, &x, &2.5).unwrap().coeffs(), &[2.5, 1.0]);
        assert_eq!(translate_poly(&m, &DensePoly::one(), &2.5).unwrap(), DensePoly::one());
        let x2 = DensePoly::monomial(2, 1.0);
        assert_eq!(translate_poly(&m, &x2, &1.0).unwrap().coeffs(), &[1.0, 1.0, 1.0]);
        let r = MuParam::from_ratio(1, 2).unwrap();
        let one = Rational::from_i64(1);
        let p = translate_poly(&r, &DensePoly::monomial(2, one.clone()), &one).unwrap();
        assert_eq!(p, DensePoly::from_coeffs(vec![one.clone(), one.clone(), one]));
    }

    #[test]
    fn heron() {
        assert!((heron_delta(3.0, 4.0, 5.0) - 6.0).abs() < 1e-14);
        assert_eq!(heron_delta(1.0, 1.0, 3.0), 0.0);
        assert!((heron_delta(-3.0, 4.0, 5.0) - 6.0).abs() < 1e-14);
        let g = HeronGeometry::new(3.0, -4.0, -5.0);
        assert!(g.in_xi && (g.delta - 6.0).abs() < 1e-14);
    }

    #[test]
    fn alpha_form_on_gaussians() {
        let m = mu(0.75);
        let lam = 0.6;
        for &(x, y) in &[(1.2, 0.5), (-0.7, 1.1), (0.3, -2.0)] {
            let e = e_mu_real(&m, -2.0 * lam * x * y).unwrap();
            let base = (-lam * (x * x + y * y)).exp() * e;
            let got = translate_alpha(&m, |t| (-lam * t * t).exp(), x, y).unwrap();
            assert!((got - base).abs() < 1e-12, "x={x} y={y}");
            let got = translate_alpha(&m, |t| t * (-lam * t * t).exp(), x, y).unwrap();
            assert!((got - (x + y) * base).abs() < 1e-12);
        }
        let f = |t: f64| (t - 0.3).sin() * (-t * t).exp();
        assert!((translate_alpha(&m, f, 0.8, 0.0).unwrap() - f(0.8)).abs() < 1e-14);
    }

    #[test]
    fn xi_matches_alpha() {
        let f = |t: f64| (-t * t).exp() * (1.0 + 0.3 * t);
        for mv in [0.3, 0.75, 2.0] {
            let m = mu(mv);
            for &(x, y) in &[(1.2, 0.5), (-0.8, 0.3), (0.4, -1.7), (-1.1, -0.6)] {
                let a = translate_alpha(&m, f, x, y).unwrap();
                let b = translate_xi(&m, f, x, y).unwrap();
                assert!((a - b).abs() < 1e-9, "mu={mv} x={x} y={y}: {a} vs {b}");
            }
        }
        assert!(translate_xi(&mu(0.5), f, 0.0, 1.0).is_err());
    }

    #[test]
    fn job_routes() {
        let m = mu(0.5);
        let job = TranslationJob::new(m.clone(), 1.0, TranslationMethod::PolySeries, Integrand::Polynomial(DensePoly::monomial(2, 1.0))).unwrap();
        assert_eq!(job.evaluate(2.0).unwrap(), 7.0);
        let g: Arc<dyn Fn(f64) -> f64 + Send + Sync> = Arc::new(|t: f64| (-t * t).exp());
        let xi = TranslationJob::new(m.clone(), 0.7, TranslationMethod::XiIntegral, Integrand::Function(g.clone())).unwrap();
        let al = TranslationJob::new(m, 0.7, TranslationMethod::AlphaIntegral, Integrand::Function(g.clone())).unwrap();
        for x in [0.0, 0.7, -1.3] {
            assert!((xi.evaluate(x).unwrap() - al.evaluate(x).unwrap()).abs() < 1e-9);
        }
        assert!(TranslationJob::new(mu(0.0), 0.7, TranslationMethod::AlphaIntegral, Integrand::Function(g)).is_err());
    }

    #[test]
    fn spectral_agrees_on_gaussian() {
        let m = mu(0.5);
        let f = |t: f64| (-0.5 * t * t).exp();
        let xs = [-1.5, -0.4, 0.3, 1.1, 2.0];
        let spec = translate_spectral(&m, f, 0.7, &xs, 96).unwrap();
        for (x, s) in xs.iter().zip(spec) {
            let a = translate_alpha(&m, f, *x, 0.7).unwrap();
            assert!((a - s).abs() < 1e-8, "x={x}: {a} vs {s}");
        }
    }

    #[test]
    fn positivity_fails() {
        let m = mu(2.0);
        let f = |t: f64| (t - 1.0).powi(2) * (-0.01 * t * t).exp();
        assert!(translate_alpha(&m, f, 1.0, 1.0).unwrap() < 0.0);
    }
}
