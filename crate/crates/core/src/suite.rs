//! Numeric and exact verification suites with flat per-identity records.
//!
//! Each suite returns [`SuiteRecord`]s. Exact records carry a defect of 0 or
//! 1; numeric records carry the worst relative defect over their samples.
//! Inequality and existence records carry the size of the violation (0 when
//! satisfied).

use std::thread;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::efun::{e_mu, e_mu_real, mehler_rhs};
use crate::error::{Error, Result};
use crate::exact::{verify_identity, IdentityTag};
use crate::heat::{heat_apply_kernel, heat_apply_spectral, heat_gaussian, heat_pde_residual, HeatFamily, DEFAULT_SPECTRAL_BASIS};
use crate::mu::{alpha_mu_moment, gamma_fn, gamma_mu_in, MuParam};
use crate::oscillator::{run_all, OscillatorRep};
use crate::poly::{binomial_poly_in, hermite_coeffs, hermite_eval, hermite_eval_all_in, DensePoly};
use crate::quadrature::{gauss_alpha_mu, gauss_hermite_mu};
use crate::scalar::{parse_rational, Rational, Scalar};
use crate::transform::{expand, fourier_spectral, minus_i_pow, phi_all_in, FourierQuadrature, DEFAULT_TRANSFORM_NODES};
use crate::translate::{translate_alpha, translate_poly, translate_spectral, translate_xi};

/// One verified identity.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteRecord {
    pub suite: String,
    pub identity: String,
    pub mu: String,
    pub n_max: usize,
    pub max_defect: f64,
    pub pass: bool,
}

/// Suites known to [`run_suite`].
pub const SUITES: [&str; 9] =
    ["exact", "quadrature", "transform", "mehler", "heat", "translate", "oscillator", "reduction", "generating"];

/// μ values exercised by `verify` when none is given.
pub const FULL_MATRIX_MU: [&str; 11] = ["0", "1/3", "1/2", "5/2", "-1/4", "7/2", "0.3", "0.6", "0.75", "1.5", "2"];

struct Sink<'a> {
    suite: &'a str,
    mu: String,
    out: Vec<SuiteRecord>,
}

impl<'a> Sink<'a> {
    fn new(suite: &'a str, mu: &MuParam) -> Self {
        Self { suite, mu: mu.to_string(), out: Vec::new() }
    }

    fn push(&mut self, identity: impl Into<String>, n_max: usize, defect: f64, tol: f64) {
        self.out.push(SuiteRecord {
            suite: self.suite.to_string(),
            identity: identity.into(),
            mu: self.mu.clone(),
            n_max,
            max_defect: defect,
            pass: defect.is_finite() && defect <= tol,
        });
    }
}

fn rel_norm(got: &[Complex64], want: &[Complex64]) -> f64 {
    let scale = want.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    got.iter().zip(want).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale
}

fn grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * (i as f64 + 0.5) / n as f64).collect()
}

/// The exact rational μ behind `mu`, reading a decimal value exactly.
pub fn exact_mu(mu: &MuParam) -> Result<MuParam> {
    match mu.as_rational() {
        Some(_) => Ok(mu.clone()),
        None => MuParam::rational(parse_rational(&mu.value().to_string())?),
    }
}

/// All identity tags at `n_max` (capped by each tag's default).
pub fn exact_suite(mu: &MuParam, n_max: usize) -> Result<Vec<SuiteRecord>> {
    let em = exact_mu(mu)?;
    let mut sink = Sink::new("exact", &em);
    for tag in IdentityTag::ALL {
        let n = n_max.min(tag.default_n_max());
        let r = verify_identity(tag, &em, n)?;
        sink.push(tag.as_str(), n, if r.pass { 0.0 } else { 1.0 }, 0.0);
    }
    Ok(sink.out)
}

/// Gauss rules: Hermite-type exactness, α_μ moments, orthonormality.
pub fn quadrature_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("quadrature", mu);
    let rule = gauss_hermite_mu(mu, 32)?;
    let mut worst: f64 = 0.0;
    for d in 0..=63usize {
        let got = rule.integrate(|t| t.powi(d as i32));
        let even = gamma_fn(m + (d as f64 + 1.0) / 2.0);
        let err = if d % 2 == 0 {
            (got - even).abs() / even
        } else {
            got.abs() / gamma_fn(m + d as f64 / 2.0 + 1.0)
        };
        worst = worst.max(err);
    }
    sink.push("hermite rule moments t^d, N = 32", 63, worst, 1e-12);

    if m > 0.0 {
        let rule = gauss_alpha_mu(mu, 32)?;
        let mut worst: f64 = 0.0;
        for n in 0..=25usize {
            let want = alpha_mu_moment(mu, n)?;
            worst = worst.max((rule.integrate(|t| t.powi(n as i32)) - want).abs() / want.abs().max(1e-300));
        }
        sink.push("alpha_mu moments n!/gamma(n)", 25, worst, 1e-11);
    }

    let rule = gauss_hermite_mu(mu, 64)?;
    let mw = rule.modified_weights();
    let mut gram = vec![vec![0.0; 21]; 21];
    for (&x, &w) in rule.nodes().iter().zip(&mw) {
        let phi = phi_all_in(m, 20, x);
        for i in 0..=20 {
            for j in 0..=20 {
                gram[i][j] += w * phi[i] * phi[j];
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            worst = worst.max((v - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    sink.push("orthonormality of phi_n", 20, worst, 1e-10);
    Ok(sink.out)
}

/// Fourier transform: eigenfunctions, closed-form integrals, inverse, and
/// agreement of the spectral and quadrature routes.
pub fn transform_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("transform", mu);
    let pre = 2f64.powf(m + 0.5) * gamma_fn(m + 0.5);
    let g0 = gamma_fn(m + 0.5);
    let xs = grid(-4.0, 4.0, 20);
    let i = Complex64::new(0.0, 1.0);

    let fq = FourierQuadrature::new(mu, 0.5, DEFAULT_TRANSFORM_NODES)?;
    let mut worst: f64 = 0.0;
    for n in 0..=10 {
        let g = |t: f64| Complex64::new(hermite_eval(mu, n, t).unwrap_or(f64::NAN), 0.0);
        let mut got = Vec::new();
        let mut want = Vec::new();
        for &x in &xs {
            got.push(fq.forward(&g, x)?);
            want.push(minus_i_pow(n) * (-0.5 * x * x).exp() * hermite_eval(mu, n, x)?);
        }
        worst = worst.max(rel_norm(&got, &want));
    }
    sink.push("F[e^(-t^2/2) Hn] = (-i)^n e^(-x^2/2) Hn", 10, worst, 1e-8);

    let xs = grid(-3.0, 3.0, 9);
    let mut worst: f64 = 0.0;
    for lam in [0.7, 1.5] {
        let fq = FourierQuadrature::new(mu, lam, DEFAULT_TRANSFORM_NODES)?;
        let got: Vec<_> = xs.iter().map(|&x| fq.forward(&|_| Complex64::new(1.0, 0.0), x).map(|v| v * pre)).collect::<Result<_>>()?;
        let want: Vec<_> =
            xs.iter().map(|&x| Complex64::new(g0 * lam.powf(-m - 0.5) * (-x * x / (4.0 * lam)).exp(), 0.0)).collect();
        worst = worst.max(rel_norm(&got, &want));
    }
    sink.push("transform of a Gaussian", 0, worst, 1e-9);

    let mut worst: f64 = 0.0;
    for lam in [0.7, 1.5] {
        let fq = FourierQuadrature::new(mu, lam, DEFAULT_TRANSFORM_NODES)?;
        for n in 0..=6usize {
            let got: Vec<_> = xs
                .iter()
                .map(|&x| fq.forward(&|t: f64| Complex64::new(t.powi(n as i32), 0.0), x).map(|v| v * pre))
                .collect::<Result<_>>()?;
            let fact: f64 = (1..=n).map(|k| k as f64).product();
            let c = (-0.5 * i).powu(n as u32) * g0 / lam.powf(0.5 * n as f64 + 0.5 + m) * gamma_mu_in(&m, n) / fact;
            let want: Vec<_> = xs
                .iter()
                .map(|&x| Ok(c * (-x * x / (4.0 * lam)).exp() * hermite_eval(mu, n, x / (2.0 * lam.sqrt()))?))
                .collect::<Result<_>>()?;
            worst = worst.max(rel_norm(&got, &want));
        }
    }
    sink.push("transform of t^n e^(-lambda t^2)", 6, worst, 1e-9);

    let mut worst: f64 = 0.0;
    for (lam, y) in [(0.7, 0.5), (1.5, -1.2)] {
        let fq = FourierQuadrature::new(mu, lam, DEFAULT_TRANSFORM_NODES)?;
        let g = |t: f64| e_mu(mu, Complex64::new(0.0, y * t)).unwrap_or(Complex64::new(f64::NAN, 0.0));
        let got: Vec<_> = xs.iter().map(|&x| fq.forward(&g, x).map(|v| v * pre)).collect::<Result<_>>()?;
        let want: Vec<_> = xs
            .iter()
            .map(|&x| {
                Ok(Complex64::new(
                    g0 * lam.powf(-m - 0.5) * (-(x * x + y * y) / (4.0 * lam)).exp() * e_mu_real(mu, x * y / (2.0 * lam))?,
                    0.0,
                ))
            })
            .collect::<Result<_>>()?;
        worst = worst.max(rel_norm(&got, &want));
    }
    sink.push("transform of e(iyt) e^(-lambda t^2)", 0, worst, 1e-9);

    let mut worst: f64 = 0.0;
    for (beta, lam) in [(1.0, std::f64::consts::FRAC_1_SQRT_2), (1.5, 0.8)] {
        let fq = FourierQuadrature::new(mu, lam * lam, DEFAULT_TRANSFORM_NODES)?;
        for n in 0..=6usize {
            let g = |t: f64| Complex64::new(hermite_eval(mu, n, beta * t).unwrap_or(f64::NAN), 0.0);
            let got: Vec<_> = xs.iter().map(|&x| fq.forward(&g, x).map(|v| v * pre)).collect::<Result<_>>()?;
            let r = ((beta / lam).powi(2) - 1.0).powf(n as f64 / 2.0);
            let arg = beta / (2.0 * lam * (beta * beta - lam * lam).sqrt());
            let want: Vec<_> = xs
                .iter()
                .map(|&x| {
                    Ok(minus_i_pow(n) * g0 * lam.powf(-2.0 * m - 1.0) * r * (-x * x / (4.0 * lam * lam)).exp()
                        * hermite_eval(mu, n, arg * x)?)
                })
                .collect::<Result<_>>()?;
            worst = worst.max(rel_norm(&got, &want));
        }
    }
    sink.push("transform of Hn(beta t) e^(-lambda^2 t^2)", 6, worst, 1e-9);

    // Inverse of the Gaussian's transform, itself a Gaussian with σ = 1/4λ.
    let mut worst: f64 = 0.0;
    for lam in [0.7, 1.5] {
        let fq = FourierQuadrature::new(mu, 1.0 / (4.0 * lam), DEFAULT_TRANSFORM_NODES)?;
        let amp = (2.0 * lam).powf(-m - 0.5);
        let got: Vec<_> =
            xs.iter().map(|&x| fq.inverse(&|_| Complex64::new(amp, 0.0), x)).collect::<Result<_>>()?;
        let want: Vec<_> = xs.iter().map(|&x| Complex64::new((-lam * x * x).exp(), 0.0)).collect();
        worst = worst.max(rel_norm(&got, &want));
    }
    sink.push("inverse transform recovers a Gaussian", 0, worst, 1e-8);

    let f = |x: f64| Complex64::new(x * (-x * x).exp() + 0.3 * (-0.5 * (x - 0.4).powi(2)).exp(), 0.0);
    let basis = 64;
    let e = expand(mu, f, basis, basis + 64)?;
    let spec = fourier_spectral(&e.vector);
    let mut got = Vec::new();
    let mut want = Vec::new();
    let fq = FourierQuadrature::new(mu, 0.5, DEFAULT_TRANSFORM_NODES)?;
    let g = |t: f64| f(t) * (0.5 * t * t).exp();
    for &x in &xs {
        got.push(spec.evaluate(x));
        want.push(fq.forward(&g, x)?);
    }
    sink.push("spectral transform = quadrature transform", basis, rel_norm(&got, &want), 1e-8);
    Ok(sink.out)
}

/// Terms of the Mehler series used by [`mehler_suite`]. Near the origin the
/// tail decays only like `n^{μ−½} zⁿ`, so 40 terms are not enough at z = 0.6.
pub const MEHLER_TERMS: usize = 80;

/// Mehler formula: partial sums of `Σ φ_n(x)φ_n(y)zⁿ` against the closed
/// form, errors relative to `max(1, |closed form|)`.
pub fn mehler_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("mehler", mu);
    let mut rng = ChaCha8Rng::seed_from_u64(0x3e11e5);
    let pts: Vec<(f64, f64)> = (0..25).map(|_| (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
    const TERMS: usize = MEHLER_TERMS;
    for z in [0.2f64, 0.4, 0.6] {
        let mut worst: f64 = 0.0;
        for &(x, y) in &pts {
            let (px, py) = (phi_all_in(m, TERMS - 1, x), phi_all_in(m, TERMS - 1, y));
            let series: f64 = (0..TERMS).map(|n| px[n] * py[n] * z.powi(n as i32)).sum();
            let rhs = mehler_rhs(mu, x, y, Complex64::new(z, 0.0))?;
            worst = worst.max((series - rhs.re).abs() / rhs.norm().max(1.0));
        }
        sink.push(format!("Mehler series, z = {z}"), TERMS, worst, 1e-9);
    }
    Ok(sink.out)
}

/// Heat semigroup: three routes, composition, PDE residuals.
pub fn heat_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("heat", mu);
    let xs = [-2.0, -1.3, -0.5, 0.2, 0.9, 1.7];
    let f = |x: f64| (-x * x).exp();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let (mut kc, mut sc) = (0.0f64, 0.0f64);
    for t in [0.1, 0.5, 2.0] {
        let spec = heat_apply_spectral(mu, f, t, &xs, DEFAULT_SPECTRAL_BASIS)?;
        for (&x, s) in xs.iter().zip(spec) {
            let closed = heat_gaussian(mu, one, zero, t, x)?.re;
            kc = kc.max((heat_apply_kernel(mu, f, t, x)? - closed).abs());
            sc = sc.max((s - closed).abs());
        }
    }
    sink.push("kernel quadrature = Gaussian closed form", 0, kc, 1e-6);
    sink.push("spectral exp(-tP^2) = Gaussian closed form", DEFAULT_SPECTRAL_BASIS, sc, 1e-6);

    let mut worst: f64 = 0.0;
    for (alpha, s, u) in [(1.0f64, 0.3, 0.4), (0.5, 1.0, 0.25), (2.0, 0.05, 1.5)] {
        let a = Complex64::new(alpha, 0.0);
        let s1 = 1.0 + 4.0 * alpha * s;
        let a1 = a / s1;
        for &x in &xs {
            let two_step = heat_gaussian(mu, a1, zero, u, x)? * s1.powf(-m - 0.5);
            let direct = heat_gaussian(mu, a, zero, s + u, x)?;
            worst = worst.max((two_step - direct).norm() / direct.norm().max(1e-300));
        }
    }
    sink.push("T(s)T(u) = T(s+u) on Gaussians", 0, worst, 1e-10);

    for (label, fam) in [
        ("even Gaussian PDE residual", HeatFamily::EvenGaussian { alpha: 1.0 }),
        ("odd Gaussian PDE residual", HeatFamily::OddGaussian { alpha: 0.7 }),
    ] {
        let mut worst: f64 = 0.0;
        for t in [0.3, 0.7, 1.5] {
            for x in [-1.6, -0.4, 0.3, 1.3, 2.1] {
                worst = worst.max(heat_pde_residual(mu, fam, t, x, 1e-4)?);
            }
        }
        sink.push(label, 0, worst, 1e-6);
    }
    Ok(sink.out)
}

/// Sample pairs for translation checks: both signs of `xy`, away from the
/// degenerate set `x = 0`, `y = 0`, `|x| = |y|`.
pub fn translation_pairs(count: usize, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x: f64 = rng.gen_range(-2.0..2.0);
        let y: f64 = rng.gen_range(-2.0..2.0);
        if x.abs() < 0.1 || y.abs() < 0.1 || (x.abs() - y.abs()).abs() < 0.1 {
            continue;
        }
        let want_neg = out.len() % 2 == 1;
        out.push(if (x * y < 0.0) == want_neg { (x, y) } else { (x, -y) });
    }
    out
}

/// Generalized translation.
pub fn translate_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("translate", mu);

    // Polynomial series against μ-binomial polynomials.
    let mut worst: f64 = 0.0;
    for n in 0..=12usize {
        for y in [0.5, -1.25] {
            let got = translate_poly(mu, &DensePoly::monomial(n, 1.0), &y)?;
            let want = binomial_poly_in(&m, n).at_y(&y);
            let d = (0..=n).map(|k| (got.coeff(k) - want.coeff(k)).abs()).fold(0.0, f64::max);
            let s = (0..=n).map(|k| want.coeff(k).abs()).fold(1.0, f64::max);
            worst = worst.max(d / s);
        }
    }
    sink.push("translate_poly(x^n) = binomial polynomial", 12, worst, 1e-12);

    if m <= 0.0 {
        return Ok(sink.out);
    }
    let pairs = translation_pairs(20, 0x7a11);
    let gauss = |t: f64| (-t * t).exp();
    let mut worst: f64 = 0.0;
    for &(x, y) in &pairs {
        let a = translate_alpha(mu, gauss, x, y)?;
        worst = worst.max((a - translate_xi(mu, gauss, x, y)?).abs() / a.abs().max(1e-300));
    }
    sink.push("alpha form = Heron form on e^(-t^2)", 20, worst, 1e-9);

    let (mut even, mut odd) = (0.0f64, 0.0f64);
    for lam in [0.5, 1.3] {
        for &(x, y) in &pairs {
            let base = (-lam * (x * x + y * y)).exp() * e_mu_real(mu, -2.0 * lam * x * y)?;
            let g = translate_alpha(mu, |t| (-lam * t * t).exp(), x, y)?;
            even = even.max((g - base).abs() / base.abs().max(1e-300));
            let o = translate_alpha(mu, |t| t * (-lam * t * t).exp(), x, y)?;
            let ob = (x + y) * base;
            odd = odd.max((o - ob).abs() / ob.abs().max(1e-300));
        }
    }
    sink.push("translation of e^(-lambda t^2)", 20, even, 1e-9);
    sink.push("translation of t e^(-lambda t^2)", 20, odd, 1e-9);

    let skew = |t: f64| (-(t - 0.4) * (t - 0.4)).exp();
    let mut worst: f64 = 0.0;
    for &(x, y) in &pairs {
        let a = translate_xi(mu, skew, x, y)?;
        let b = translate_xi(mu, skew, y, x)?;
        worst = worst.max((a - b).abs() / a.abs().max(b.abs()).max(1e-300));
    }
    sink.push("symmetry T_y f(x) = T_x f(y)", 20, worst, 1e-9);

    let mut worst: f64 = 0.0;
    for s in [0.7, 2.0] {
        for &(x, y) in pairs.iter().take(8) {
            let re = translate_alpha(mu, |t| e_mu(mu, Complex64::new(0.0, s * t)).map(|z| z.re).unwrap_or(f64::NAN), x, y)?;
            let im = translate_alpha(mu, |t| e_mu(mu, Complex64::new(0.0, s * t)).map(|z| z.im).unwrap_or(f64::NAN), x, y)?;
            let want = e_mu(mu, Complex64::new(0.0, s * y))? * e_mu(mu, Complex64::new(0.0, s * x))?;
            worst = worst.max((Complex64::new(re, im) - want).norm() / want.norm().max(1e-300));
        }
    }
    sink.push("multiplicativity on e(ist)", 8, worst, 1e-9);

    let even_fn = |t: f64| 1.0 / (1.0 + t * t);
    let mut worst: f64 = 0.0;
    for &(x, y) in &pairs {
        let l = translate_alpha(mu, |t| t * even_fn(t), x, y)?;
        let r = (x + y) * translate_alpha(mu, even_fn, x, y)?;
        worst = worst.max((l - r).abs() / r.abs().max(1e-300));
    }
    sink.push("T(x phi) = (x + y) T(phi) for even phi", 20, worst, 1e-9);

    let rule = gauss_hermite_mu(mu, 96)?;
    let mw = rule.modified_weights();
    let mut worst: f64 = 0.0;
    for lam in [0.5f64, 1.0] {
        let norm_sq = gamma_fn(m + 0.5) * (2.0 * lam).powf(-m - 0.5);
        for y in [0.1, 1.0, 3.0] {
            let mut acc = 0.0;
            for (&x, &w) in rule.nodes().iter().zip(&mw) {
                let v = translate_alpha(mu, |t| (-lam * t * t).exp(), x, y)?;
                acc += w * v * v;
            }
            worst = worst.max((acc / norm_sq).sqrt() - 1.0);
        }
    }
    sink.push("contraction ||T_y phi|| <= ||phi||", 0, worst.max(0.0), 1e-12);

    if m > 0.5 {
        let bump = |t: f64| (t - 1.0).powi(2) * (-0.01 * t * t).exp();
        let mut lowest = f64::INFINITY;
        for &x in &grid(0.25, 2.0, 8) {
            for &y in &grid(0.25, 2.0, 8) {
                lowest = lowest.min(translate_alpha(mu, bump, x, y)?);
            }
        }
        sink.push("positivity fails for some phi >= 0", 0, lowest.max(0.0), 0.0);
    }

    let f = |t: f64| (-0.5 * t * t).exp();
    let xs = grid(-2.0, 2.0, 8);
    let mut worst: f64 = 0.0;
    for y in [0.5, 1.3] {
        let spec = translate_spectral(mu, f, y, &xs, 128)?;
        for (&x, s) in xs.iter().zip(spec) {
            worst = worst.max((s - translate_alpha(mu, f, x, y)?).abs());
        }
    }
    sink.push("spectral e(iyP) = translation on a Gaussian", 128, worst, 1e-8);
    Ok(sink.out)
}

/// Generating identity for the μ-binomial polynomials.
pub fn generating_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let m = mu.ensure_numeric()?;
    let mut sink = Sink::new("generating", mu);
    const TERMS: usize = 40;
    let polys: Vec<_> = (0..TERMS).map(|n| binomial_poly_in(&m, n)).collect();
    let mut worst: f64 = 0.0;
    for (lam, x, y) in [(1.0, 0.7, -0.9), (-0.6, 1.0, 1.0), (0.9, -1.0, 0.3), (0.3, 0.2, 0.8)] {
        let mut sum = 0.0;
        let mut lp = 1.0;
        for (n, p) in polys.iter().enumerate() {
            sum += p.eval(&x, &y) * lp / gamma_mu_in(&m, n);
            lp *= lam;
        }
        let want = e_mu_real(mu, lam * x)? * e_mu_real(mu, lam * y)?;
        worst = worst.max((sum - want).abs() / want.abs());
    }
    sink.push("sum p_n(x,y) lambda^n/gamma(n) = e(lambda x) e(lambda y)", TERMS, worst, 1e-8);
    Ok(sink.out)
}

/// Truncated oscillator identities at `N = 32`.
pub fn oscillator_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    mu.ensure_numeric()?;
    let mut sink = Sink::new("oscillator", mu);
    let rep = OscillatorRep::build(mu, 32)?;
    for report in run_all(&rep, 8)? {
        let tol = if report.check == "representation" { 1e-8 } else { 1e-10 };
        for d in &report.identities {
            sink.push(format!("{}: {}", report.check, d.identity), d.word_length, d.max_defect, tol);
        }
    }
    Ok(sink.out)
}

/// Classical reductions at μ = 0. Other μ give no records.
pub fn reduction_suite(mu: &MuParam) -> Result<Vec<SuiteRecord>> {
    let mut sink = Sink::new("reduction", mu);
    if mu.value() != 0.0 {
        return Ok(sink.out);
    }
    // Physicists' Hermite polynomials by H_{n+1} = 2xH_n − 2nH_{n−1}.
    let two_x = DensePoly::monomial(1, Rational::from_i64(2));
    let mut prev = DensePoly::<Rational>::zero();
    let mut cur = DensePoly::<Rational>::one();
    let mut mismatch = 0.0;
    let zero = MuParam::from_ratio(0, 1)?;
    for n in 0..=20usize {
        if hermite_coeffs::<Rational>(&zero, n)? != cur {
            mismatch = 1.0;
        }
        let next = &(&two_x * &cur) - &prev.scale(&Rational::from_i64(2 * n as i64));
        prev = cur;
        cur = next;
    }
    sink.push("H_n^0 = classical Hermite", 20, mismatch, 0.0);

    let rep = OscillatorRep::build(mu, 32)?;
    let mut worst: f64 = 0.0;
    for k in 0..32 {
        worst = worst.max((rep.h[(k, k)].re - (k as f64 + 0.5)).abs());
    }
    sink.push("spectrum n + 1/2", 31, worst, 1e-14);
    let cr = (&rep.p * &rep.q - &rep.q * &rep.p) * Complex64::new(0.0, 1.0);
    let mut worst: f64 = 0.0;
    for col in 0..30 {
        for row in 0..32 {
            let want = if row == col { 1.0 } else { 0.0 };
            worst = worst.max((cr[(row, col)] - want).norm());
        }
    }
    sink.push("canonical commutator i[P,Q] = I", 29, worst, 1e-12);

    let xs = grid(-3.0, 3.0, 9);
    let got: Vec<_> = xs
        .iter()
        .map(|&x| FourierQuadrature::new(mu, 1.0, 64)?.forward(&|_| Complex64::new(1.0, 0.0), x))
        .collect::<Result<_>>()?;
    let want: Vec<_> = xs.iter().map(|&x| Complex64::new((-x * x / 4.0).exp() / 2f64.sqrt(), 0.0)).collect();
    sink.push("unitary Fourier transform of e^(-t^2)", 0, rel_norm(&got, &want), 1e-12);

    let mut worst: f64 = 0.0;
    for (x, y, t) in [(0.3, -0.8, 0.5), (1.2, 1.1, 0.1), (-2.0, 0.5, 2.0)] {
        let k = crate::efun::heat_kernel(mu, x, y, t)?;
        let classical = (-(x - y) * (x - y) / (4.0 * t)).exp() / (4.0 * std::f64::consts::PI * t).sqrt();
        worst = worst.max((k - classical).abs() / classical);
    }
    sink.push("Gauss-Weierstrass heat kernel", 0, worst, 1e-13);

    let mut worst: f64 = 0.0;
    for x in [-1.5, 0.2, 2.5] {
        let hs = hermite_eval_all_in(0.0, 10, x);
        for n in 0..=10usize {
            let c = hermite_coeffs::<Rational>(&zero, n)?.to_f64();
            worst = worst.max((hs[n] - c.eval(&x)).abs() / hs[n].abs().max(1.0));
        }
    }
    sink.push("classical Hermite recursion values", 10, worst, 1e-12);
    Ok(sink.out)
}

/// One suite by name.
pub fn run_suite(name: &str, mu: &MuParam, n_max: usize) -> Result<Vec<SuiteRecord>> {
    match name {
        "exact" => exact_suite(mu, n_max),
        "quadrature" => quadrature_suite(mu),
        "transform" => transform_suite(mu),
        "mehler" => mehler_suite(mu),
        "heat" => heat_suite(mu),
        "translate" => translate_suite(mu),
        "generating" => generating_suite(mu),
        "oscillator" => oscillator_suite(mu),
        "reduction" => reduction_suite(mu),
        other => Err(Error::InvalidArgument(format!("unknown suite `{other}`"))),
    }
}

/// Every suite at one μ, run concurrently; records come back in suite order.
pub fn run_all_suites(mu: &MuParam, n_max: usize) -> Result<Vec<SuiteRecord>> {
    let results: Vec<Result<Vec<SuiteRecord>>> = thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|name| s.spawn(move || run_suite(name, mu, n_max))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
