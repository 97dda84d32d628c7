//! The generalized exponential `e_μ(z) = Σ z^m/γ_μ(m)`, its cosine and sine
//! parts, the Mehler kernel and the heat kernel.
//!
//! The power series is used wherever it does not cancel. Otherwise:
//!
//! * real `x < 0`: `e_μ(x) = e^x ₁F₁(μ; 2μ+1; −2x)`, a series whose terms
//!   past the first share one sign;
//! * complex `z` with `|z| − Re z` large and `μ > 0`: the average
//!   `e_μ(z) = ∫ e^{zt} dα_μ(t)` on a Gauss–Jacobi rule;
//! * the same regime with `μ < 0`: the shift
//!   `e_μ = (1 + z/(2μ+1)) E_{μ+1} + z O_{μ+1}/(2μ+1)`, where `E` and `O` are
//!   the even and odd parts of `e_{μ+1}`.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mu::{gamma_fn, gamma_step_in, MuParam};
use crate::quadrature::{gauss_alpha_mu, QuadratureRule};

/// Series controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self { rel_tol: 1e-14, max_terms: 500 }
    }
}

impl EvalOptions {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive (got {rel_tol})")));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

/// Above this value of `|z| − Re z` the plain series loses more than about
/// three digits.
const CANCELLATION_LIMIT: f64 = 8.0;

const RULE_SIZES: [usize; 7] = [48, 64, 96, 128, 192, 256, 384];

static ALPHA_RULES: LazyLock<Mutex<HashMap<(u64, usize), Arc<QuadratureRule>>>> = LazyLock::new(|| Mutex::new(HashMap::new()));

fn alpha_rule(mu: f64, modulus: f64) -> Result<Arc<QuadratureRule>> {
    let need = (0.75 * modulus + 30.0).ceil() as usize;
    let size = RULE_SIZES
        .iter()
        .copied()
        .find(|&s| s >= need)
        .ok_or(Error::NonConvergence { terms: need, modulus })?;
    let key = (mu.to_bits(), size);
    if let Some(r) = ALPHA_RULES.lock().unwrap().get(&key) {
        return Ok(r.clone());
    }
    let rule = Arc::new(gauss_alpha_mu(&MuParam::new(mu)?, size)?);
    ALPHA_RULES.lock().unwrap().insert(key, rule.clone());
    Ok(rule)
}

/// `e_μ(z)` with default options.
pub fn e_mu(mu: &MuParam, z: Complex64) -> Result<Complex64> {
    e_mu_with(mu, z, &EvalOptions::default())
}

pub fn e_mu_with(mu: &MuParam, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let m = mu.ensure_numeric()?;
    e_mu_in(m, z, opts)
}

pub(crate) fn e_mu_in(m: f64, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    if z == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if m == 0.0 {
        return Ok(z.exp());
    }
    if z.im == 0.0 {
        return Ok(Complex64::new(e_mu_real_in(m, z.re, opts)?, 0.0));
    }
    if z.norm() - z.re <= CANCELLATION_LIMIT {
        return series(m, z, opts);
    }
    if m > 0.0 {
        let rule = alpha_rule(m, z.norm())?;
        Ok(rule
            .nodes()
            .iter()
            .zip(rule.weights())
            .map(|(&t, &w)| (z * t).exp() * w)
            .sum())
    } else {
        let up = e_mu_in(m + 1.0, z, opts)?;
        let down = e_mu_in(m + 1.0, -z, opts)?;
        let even = (up + down) * 0.5;
        let odd = (up - down) * 0.5;
        let c = 2.0 * m + 1.0;
        Ok(even * (1.0 + z / c) + z * odd / c)
    }
}

fn series(m: f64, z: Complex64, opts: &EvalOptions) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let modulus = z.norm();
    for k in 1..=opts.max_terms {
        term = term * z / gamma_step_in(&m, k);
        sum += term;
        if k as f64 > modulus && term.norm() <= opts.rel_tol * sum.norm() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { terms: opts.max_terms, modulus })
}

/// `e_μ(x)` for real `x`.
pub fn e_mu_real(mu: &MuParam, x: f64) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    e_mu_real_in(m, x, &EvalOptions::default())
}

fn e_mu_real_in(m: f64, x: f64, opts: &EvalOptions) -> Result<f64> {
    Ok(e_mu_real_scaled_in(m, x, opts)? * x.abs().exp())
}

/// `e^{−|x|} e_μ(x)`, finite for every real `x`.
pub fn e_mu_real_scaled(mu: &MuParam, x: f64) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    e_mu_real_scaled_in(m, x, &EvalOptions::default())
}

pub(crate) fn e_mu_real_scaled_in(m: f64, x: f64, opts: &EvalOptions) -> Result<f64> {
    if m == 0.0 {
        return Ok((x - x.abs()).exp());
    }
    let a = x.abs();
    if a == 0.0 {
        return Ok(1.0);
    }
    let mut term = if x > 0.0 { (-a).exp() } else { (-2.0 * a).exp() };
    let mut sum = term;
    if x > 0.0 {
        for k in 1..=opts.max_terms {
            term *= a / gamma_step_in(&m, k);
            sum += term;
            if k as f64 > a && term.abs() <= opts.rel_tol * sum.abs() {
                return Ok(sum);
            }
        }
    } else {
        // e^{-|x|} e_μ(x) = e^{-2|x|} ₁F₁(μ; 2μ+1; 2|x|).
        let stop = 2.0 * a;
        for k in 0..opts.max_terms {
            let kf = k as f64;
            term *= (m + kf) * 2.0 * a / ((2.0 * m + 1.0 + kf) * (kf + 1.0));
            sum += term;
            if kf + 1.0 > stop && term.abs() <= opts.rel_tol * sum.abs() {
                return Ok(sum);
            }
        }
    }
    Err(Error::NonConvergence { terms: opts.max_terms, modulus: a })
}

/// `(c_μ(x), s_μ(x))` with `e_μ(−ix) = c_μ(x) − i s_μ(x)`.
pub fn c_s_mu(mu: &MuParam, x: f64) -> Result<(f64, f64)> {
    let e = e_mu(mu, Complex64::new(0.0, -x))?;
    Ok((e.re, -e.im))
}

/// Closed-form side of the weighted Mehler formula,
/// `Σ φ_n(x) φ_n(y) zⁿ` for `|z| < 1`.
pub fn mehler_rhs(mu: &MuParam, x: f64, y: f64, z: Complex64) -> Result<Complex64> {
    let m = mu.ensure_numeric()?;
    if z.norm() >= 1.0 {
        return Err(Error::InvalidArgument(format!("Mehler kernel needs |z| < 1 (got {})", z.norm())));
    }
    let one = Complex64::new(1.0, 0.0);
    let q = one - z * z;
    let pre = q.powf(-(m + 0.5)) / gamma_fn(m + 0.5);
    let gauss = (-0.5 * (x * x + y * y) * (one + z * z) / q).exp();
    let e = e_mu_in(m, 2.0 * x * y * z / q, &EvalOptions::default())?;
    Ok(pre * gauss * e)
}

/// The heat kernel `(4t)^{−μ−½}/Γ(μ+½) · e^{−(x²+y²)/4t} · e_μ(xy/2t)`.
pub fn heat_kernel(mu: &MuParam, x: f64, y: f64, t: f64) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("heat kernel needs t > 0 (got {t})")));
    }
    heat_kernel_in(m, x, y, t)
}

pub(crate) fn heat_kernel_in(m: f64, x: f64, y: f64, t: f64) -> Result<f64> {
    let s = x * y / (2.0 * t);
    let scaled = e_mu_real_scaled_in(m, s, &EvalOptions::default())?;
    let d = x.abs() - y.abs();
    let gauss = (-(d * d) / (4.0 * t)).exp();
    Ok((4.0 * t).powf(-(m + 0.5)) / gamma_fn(m + 0.5) * gauss * scaled)
}

/// Smallest `C` with `|e_μ(−ix)| ≤ C(|x|^{|μ|} + 1)` over `samples` evenly
/// spaced points of `[0, x_max]`.
pub fn fit_growth_constant(mu: &MuParam, x_max: f64, samples: usize) -> Result<f64> {
    let m = mu.ensure_numeric()?;
    let mut c: f64 = 0.0;
    for i in 0..=samples {
        let x = x_max * i as f64 / samples.max(1) as f64;
        let e = e_mu(mu, Complex64::new(0.0, -x))?;
        c = c.max(e.norm() / (x.powf(m.abs()) + 1.0));
    }
    Ok(c)
}
