//! Generalized Hermite functions, expansions in that basis, the generalized
//! Fourier transform (diagonal and by quadrature) and the truncated
//! ladder, position and momentum matrices.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::efun::{e_mu_in, EvalOptions};
use crate::error::{Error, Result};
use crate::mu::{gamma_fn, theta, MuParam};
use crate::quadrature::{gauss_hermite_mu, QuadratureRule};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `(−i)ⁿ`.
pub fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// `b_k = (k + 2μθ(k))/2`.
fn b(m: f64, k: usize) -> f64 {
    (k as f64 + 2.0 * m * theta(k) as f64) / 2.0
}

/// `φ_0^μ(x), …, φ_n^μ(x)` by the normalized recurrence
/// `x φ_k = √b_{k+1} φ_{k+1} + √b_k φ_{k−1}`.
pub fn phi_all(mu: &MuParam, n: usize, x: f64) -> Result<Vec<f64>> {
    Ok(phi_all_in(mu.ensure_numeric()?, n, x))
}

pub(crate) fn phi_all_in(m: f64, n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push((-0.5 * x * x).exp() / gamma_fn(m + 0.5).sqrt());
    for k in 0..n {
        let prev = if k == 0 { 0.0 } else { b(m, k).sqrt() * out[k - 1] };
        out.push((x * out[k] - prev) / b(m, k + 1).sqrt());
    }
    out
}

/// `φ_n^μ(x)`.
pub fn phi_eval(mu: &MuParam, n: usize, x: f64) -> Result<f64> {
    Ok(phi_all(mu, n, x)?[n])
}

/// Coefficients in the orthonormal basis `φ_0, …, φ_{N−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralVector {
    mu: MuParam,
    coeffs: Vec<Complex64>,
}

impl SpectralVector {
    pub fn new(mu: MuParam, coeffs: Vec<Complex64>) -> Self {
        Self { mu, coeffs }
    }

    /// The basis vector `e_k` of length `n`.
    pub fn unit(mu: MuParam, n: usize, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Self { mu, coeffs }
    }

    pub fn mu(&self) -> &MuParam {
        &self.mu
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ c_n φ_n(x)`.
    pub fn evaluate(&self, x: f64) -> Complex64 {
        let phi = phi_all_in(self.mu.value(), self.coeffs.len().saturating_sub(1), x);
        self.coeffs.iter().zip(phi).map(|(c, p)| c * p).sum()
    }

    /// Applies a truncated operator.
    pub fn apply(&self, op: &OperatorMatrix) -> Result<SpectralVector> {
        if op.dim() != self.len() {
            return Err(Error::InvalidArgument(format!(
                "operator of size {} applied to vector of length {}",
                op.dim(),
                self.len()
            )));
        }
        let v = nalgebra::DVector::from_column_slice(&self.coeffs);
        let w = op.matrix() * v;
        Ok(Self { mu: self.mu.clone(), coeffs: w.iter().copied().collect() })
    }
}

impl Serialize for SpectralVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectralVector", 3)?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("n", &self.coeffs.len())?;
        let pairs: Vec<[f64; 2]> = self.coeffs.iter().map(|c| [c.re, c.im]).collect();
        st.serialize_field("coeffs", &pairs)?;
        st.end()
    }
}

/// Result of [`expand`].
#[derive(Debug, Clone)]
pub struct Expansion {
    pub vector: SpectralVector,
    /// `‖f‖²_μ` by the same quadrature.
    pub norm_sq: f64,
    /// `‖f‖²_μ − Σ|c_n|²`.
    pub parseval_defect: f64,
}

/// Extra nodes beyond the basis size required by [`expand`].
pub const EXPAND_MARGIN: usize = 16;

/// `c_n = ⟨f, φ_n⟩_μ`, `n < basis`, by a Hermite-type rule with `nodes`
/// nodes. `f` should decay at least like `e^{−x²/2}`.
pub fn expand<F>(mu: &MuParam, f: F, basis: usize, nodes: usize) -> Result<Expansion>
where
    F: Fn(f64) -> Complex64,
{
    let m = mu.ensure_numeric()?;
    if nodes < basis + EXPAND_MARGIN {
        return Err(Error::QuadratureTooSmall { have: nodes, need: basis + EXPAND_MARGIN });
    }
    let rule = gauss_hermite_mu(mu, nodes)?;
    let mw = rule.modified_weights();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); basis];
    let mut norm_sq = 0.0;
    for (&x, &w) in rule.nodes().iter().zip(&mw) {
        let fx = f(x);
        norm_sq += w * fx.norm_sqr();
        if basis == 0 {
            continue;
        }
        let phi = phi_all_in(m, basis - 1, x);
        for (c, p) in coeffs.iter_mut().zip(phi) {
            *c += fx * (w * p);
        }
    }
    let vector = SpectralVector::new(mu.clone(), coeffs);
    let parseval_defect = norm_sq - vector.norm_sq();
    Ok(Expansion { vector, norm_sq, parseval_defect })
}

/// ℱ_μ in the φ basis: `c_n ↦ (−i)ⁿ c_n`.
pub fn fourier_spectral(v: &SpectralVector) -> SpectralVector {
    SpectralVector {
        mu: v.mu.clone(),
        coeffs: v.coeffs.iter().enumerate().map(|(n, c)| c * minus_i_pow(n)).collect(),
    }
}

/// ℱ_μ by quadrature for inputs `f(t) = g(t) e^{−σt²}`.
///
/// With `t = u/√σ`,
/// `ℱf(x) = (2^{μ+½}Γ(μ+½))^{−1} σ^{−μ−½} Σ_j w_j e_μ(−ixu_j/√σ) g(u_j/√σ)`.
#[derive(Debug, Clone)]
pub struct FourierQuadrature {
    mu: f64,
    sigma: f64,
    rule: QuadratureRule,
    scale: f64,
}

pub const DEFAULT_TRANSFORM_NODES: usize = 128;

impl FourierQuadrature {
    pub fn new(mu: &MuParam, sigma: f64, nodes: usize) -> Result<Self> {
        let m = mu.ensure_numeric()?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "quadrature transform needs a Gaussian envelope exp(-sigma t^2) with sigma > 0 (got {sigma})"
            )));
        }
        let rule = gauss_hermite_mu(mu, nodes)?;
        let scale = 1.0 / (2f64.powf(m + 0.5) * gamma_fn(m + 0.5)) * sigma.powf(-(m + 0.5));
        Ok(Self { mu: m, sigma, rule, scale })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    fn apply<G: Fn(f64) -> Complex64>(&self, g: &G, x: f64, sign: f64) -> Result<Complex64> {
        let rs = self.sigma.sqrt();
        let opts = EvalOptions::default();
        let mut acc = Complex64::new(0.0, 0.0);
        for (&u, &w) in self.rule.nodes().iter().zip(self.rule.weights()) {
            let t = u / rs;
            let k = e_mu_in(self.mu, Complex64::new(0.0, sign * x * t), &opts)?;
            acc += k * g(t) * w;
        }
        Ok(acc * self.scale)
    }

    /// `ℱ_μ[g e^{−σt²}](x)`.
    pub fn forward<G: Fn(f64) -> Complex64>(&self, g: &G, x: f64) -> Result<Complex64> {
        self.apply(g, x, -1.0)
    }

    /// The inverse transform, kernel `e_μ(ixt)`.
    pub fn inverse<G: Fn(f64) -> Complex64>(&self, g: &G, x: f64) -> Result<Complex64> {
        self.apply(g, x, 1.0)
    }
}

/// One-shot `ℱ_μ[g e^{−σt²}](x)` with the default node count.
pub fn fourier_quadrature<G: Fn(f64) -> Complex64>(mu: &MuParam, sigma: f64, g: G, x: f64) -> Result<Complex64> {
    FourierQuadrature::new(mu, sigma, DEFAULT_TRANSFORM_NODES)?.forward(&g, x)
}

/// Operators available as truncated matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorTag {
    A,
    Adag,
    Q,
    P,
    H,
    J,
    F,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 7] =
        [OperatorTag::A, OperatorTag::Adag, OperatorTag::Q, OperatorTag::P, OperatorTag::H, OperatorTag::J, OperatorTag::F];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorTag::A => "A",
            OperatorTag::Adag => "Adag",
            OperatorTag::Q => "Q",
            OperatorTag::P => "P",
            OperatorTag::H => "H",
            OperatorTag::J => "J",
            OperatorTag::F => "F",
        }
    }

    /// `(lower, upper)` bandwidth.
    pub fn bandwidth(self) -> (usize, usize) {
        match self {
            OperatorTag::A => (0, 1),
            OperatorTag::Adag => (1, 0),
            OperatorTag::Q | OperatorTag::P => (1, 1),
            OperatorTag::H | OperatorTag::J | OperatorTag::F => (0, 0),
        }
    }
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OperatorTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorTag::ALL
            .iter()
            .copied()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown operator `{s}` (expected A, Adag, Q, P, H, J or F)")))
    }
}

/// A truncated operator on `span{φ_0, …, φ_{N−1}}`; entry `(m, n)` is
/// `⟨X φ_n, φ_m⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    tag: OperatorTag,
    mu: MuParam,
    matrix: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn tag(&self) -> OperatorTag {
        self.tag
    }

    pub fn mu(&self) -> &MuParam {
        &self.mu
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn bandwidth(&self) -> (usize, usize) {
        self.tag.bandwidth()
    }
}

impl Serialize for OperatorMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let rows: Vec<Vec<[f64; 2]>> =
            (0..n).map(|i| (0..n).map(|j| [self.matrix[(i, j)].re, self.matrix[(i, j)].im]).collect()).collect();
        let mut st = s.serialize_struct("OperatorMatrix", 5)?;
        st.serialize_field("tag", self.tag.as_str())?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("n", &n)?;
        st.serialize_field("bandwidth", &self.bandwidth())?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

/// The `N×N` truncation of an oscillator operator.
///
/// `A φ_n = √(n + 2μθ(n)) φ_{n−1}`, `Q = (A + A*)/√2`,
/// `P = (A − A*)/(i√2)`, `H φ_n = (n + μ + ½) φ_n`, `J φ_n = (−1)ⁿ φ_n`,
/// `F φ_n = (−i)ⁿ φ_n`.
pub fn operator_matrix(mu: &MuParam, tag: OperatorTag, n: usize) -> Result<OperatorMatrix> {
    let m = mu.ensure_numeric()?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!("operator truncation needs N >= 2 (got {n})")));
    }
    let a = DMatrix::from_fn(n, n, |r, c| {
        if c >= 1 && r + 1 == c {
            Complex64::new((2.0 * b(m, c)).sqrt(), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let s2 = std::f64::consts::SQRT_2;
    let matrix = match tag {
        OperatorTag::A => a,
        OperatorTag::Adag => a.adjoint(),
        OperatorTag::Q => (&a + a.adjoint()).map(|z| z / s2),
        OperatorTag::P => (&a - a.adjoint()).map(|z| z / (I * s2)),
        OperatorTag::H => DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(r as f64 + m + 0.5, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        OperatorTag::J => DMatrix::from_fn(n, n, |r, c| {
            if r == c {
                Complex64::new(if r % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }),
        OperatorTag::F => DMatrix::from_fn(n, n, |r, c| if r == c { minus_i_pow(r) } else { Complex64::new(0.0, 0.0) }),
    };
    Ok(OperatorMatrix { tag, mu: mu.clone(), matrix })
}
