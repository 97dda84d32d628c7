//! The Bose-like oscillator on a truncated basis.
//!
//! `A`, `A*`, `Q`, `P`, `H`, `J` and `ℱ` act on `e_0, …, e_{N−1}`. An operator
//! word of length `k` applied to `e_n` is exact as long as `n + k ≤ N − 1`,
//! so matrix identities are compared on those columns only. Vector
//! identities applied to `e_0` are exact up to degree `N − 1`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mu::{gamma_mu_in, ln_gamma_fn, log_gamma_mu, theta, MuParam};
use crate::poly::{dunkl_apply_in, hermite_coeffs_in, hermite_eval_all_in, hermite_scaled_in, DensePoly};
use crate::quadrature::gauss_hermite_mu;
use crate::transform::{fourier_spectral, operator_matrix, phi_all_in, OperatorTag, SpectralVector};

type CMat = DMatrix<Complex64>;
type CVec = DVector<Complex64>;

const I: Complex64 = Complex64::new(0.0, 1.0);

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn i_pow(n: usize) -> Complex64 {
    [c(1.0), I, c(-1.0), -I][n % 4]
}

/// Default longest operator word checked on a truncation.
pub const DEFAULT_MAX_WORD: usize = 9;

/// Truncated matrices of the oscillator.
#[derive(Debug, Clone)]
pub struct OscillatorRep {
    mu: MuParam,
    n: usize,
    max_word: usize,
    pub a: CMat,
    pub adag: CMat,
    pub p: CMat,
    pub q: CMat,
    pub h: CMat,
    pub j: CMat,
    pub f: CMat,
}

impl OscillatorRep {
    pub fn build(mu: &MuParam, n: usize) -> Result<Self> {
        mu.ensure_numeric()?;
        if n < 4 {
            return Err(Error::InvalidArgument(format!("oscillator truncation needs N >= 4 (got {n})")));
        }
        let get = |t| operator_matrix(mu, t, n).map(|m| m.into_matrix());
        Ok(Self {
            mu: mu.clone(),
            n,
            max_word: DEFAULT_MAX_WORD.min(n - 1),
            a: get(OperatorTag::A)?,
            adag: get(OperatorTag::Adag)?,
            p: get(OperatorTag::P)?,
            q: get(OperatorTag::Q)?,
            h: get(OperatorTag::H)?,
            j: get(OperatorTag::J)?,
            f: get(OperatorTag::F)?,
        })
    }

    /// Sets the longest word length the interior policy admits.
    pub fn with_max_word(mut self, k: usize) -> Result<Self> {
        if k == 0 || k >= self.n {
            return Err(Error::InvalidArgument(format!("max word length must lie in 1..{} (got {k})", self.n)));
        }
        self.max_word = k;
        Ok(self)
    }

    pub fn mu(&self) -> &MuParam {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn max_word(&self) -> usize {
        self.max_word
    }

    /// Largest column index on which words of length `k` are exact.
    pub fn interior_bound(&self, k: usize) -> Option<usize> {
        (self.n - 1).checked_sub(k)
    }

    fn m(&self) -> f64 {
        self.mu.value()
    }

    fn identity(&self) -> CMat {
        CMat::identity(self.n, self.n)
    }

    fn e0(&self) -> CVec {
        let mut v = CVec::zeros(self.n);
        v[0] = c(1.0);
        v
    }

    fn check_word(&self, k: usize) -> Result<usize> {
        if k > self.max_word {
            return Err(Error::InvalidArgument(format!(
                "word length {k} exceeds the interior policy ({}) for N = {}",
                self.max_word, self.n
            )));
        }
        Ok(self.n - 1 - k)
    }

    /// `exp(iλ(H − (μ+½)))`, diagonal.
    fn rotation(&self, lambda: f64) -> CMat {
        CMat::from_fn(self.n, self.n, |r, col| if r == col { (I * lambda * r as f64).exp() } else { c(0.0) })
    }
}

/// Defect of one identity; `per_index` is per column for matrix identities
/// and per instance for vector identities.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityDefect {
    pub identity: String,
    pub word_length: usize,
    pub max_defect: f64,
    pub per_index: Vec<f64>,
}

fn rel(diff: f64, l: f64, r: f64) -> f64 {
    diff / 1f64.max(l).max(r)
}

fn max_abs<'a>(it: impl Iterator<Item = &'a Complex64>) -> f64 {
    it.map(|z| z.norm()).fold(0.0, f64::max)
}

fn matrix_defect(identity: impl Into<String>, k: usize, last: usize, l: &CMat, r: &CMat) -> IdentityDefect {
    let per_index: Vec<f64> = (0..=last)
        .map(|col| {
            let (lc, rc) = (l.column(col), r.column(col));
            rel(max_abs((lc - rc).iter()), max_abs(lc.iter()), max_abs(rc.iter()))
        })
        .collect();
    IdentityDefect { identity: identity.into(), word_length: k, max_defect: per_index.iter().copied().fold(0.0, f64::max), per_index }
}

/// As [`matrix_defect`], with the column scale also bounded below by the
/// operand products of a commutator, whose rounding error they set.
fn commutator_defect(identity: impl Into<String>, k: usize, last: usize, (x, y): (&CMat, &CMat), r: &CMat) -> IdentityDefect {
    let (xy, yx) = (x * y, y * x);
    let l = &xy - &yx;
    let per_index: Vec<f64> = (0..=last)
        .map(|col| {
            let (lc, rc) = (l.column(col), r.column(col));
            let ops = max_abs(xy.column(col).iter()).max(max_abs(yx.column(col).iter()));
            rel(max_abs((lc - rc).iter()), max_abs(lc.iter()).max(ops), max_abs(rc.iter()))
        })
        .collect();
    IdentityDefect { identity: identity.into(), word_length: k, max_defect: per_index.iter().copied().fold(0.0, f64::max), per_index }
}

fn vector_defect(identity: impl Into<String>, k: usize, pairs: &[(CVec, CVec)]) -> IdentityDefect {
    let per_index: Vec<f64> =
        pairs.iter().map(|(l, r)| rel(max_abs((l - r).iter()), max_abs(l.iter()), max_abs(r.iter()))).collect();
    IdentityDefect { identity: identity.into(), word_length: k, max_defect: per_index.iter().copied().fold(0.0, f64::max), per_index }
}

/// Result of one family of checks.
#[derive(Debug, Clone, Serialize)]
pub struct OscillatorReport {
    pub check: String,
    pub mu: f64,
    pub n: usize,
    pub identities: Vec<IdentityDefect>,
}

impl OscillatorReport {
    fn new(check: &str, rep: &OscillatorRep) -> Self {
        Self { check: check.to_string(), mu: rep.m(), n: rep.n, identities: Vec::new() }
    }

    pub fn max_defect(&self) -> f64 {
        self.identities.iter().map(|d| d.max_defect).fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.identities.iter().all(|d| d.max_defect < tol)
    }

    /// The identity with the largest defect.
    pub fn worst(&self) -> Option<&IdentityDefect> {
        self.identities.iter().max_by(|a, b| a.max_defect.total_cmp(&b.max_defect))
    }
}

fn comm(x: &CMat, y: &CMat) -> CMat {
    x * y - y * x
}

fn pow(x: &CMat, k: usize) -> CMat {
    let mut out = CMat::identity(x.nrows(), x.ncols());
    for _ in 0..k {
        out = &out * x;
    }
    out
}

/// `p(M) v` by Horner's rule.
fn poly_apply(p: &DensePoly<f64>, m: &CMat, v: &CVec) -> CVec {
    let mut acc = CVec::zeros(v.len());
    for &coef in p.coeffs().iter().rev() {
        acc = m * acc + v * c(coef);
    }
    acc
}

/// Equations of motion and their ladder forms.
pub fn check_equations_of_motion(rep: &OscillatorRep) -> Result<OscillatorReport> {
    let mut out = OscillatorReport::new("equations-of-motion", rep);
    rep.check_word(3)?;
    let (p, q, h, a, ad) = (&rep.p, &rep.q, &rep.h, &rep.a, &rep.adag);
    let mut push = |label: &str, k: usize, l: CMat, r: CMat| {
        let last = rep.n - 1 - k;
        out.identities.push(matrix_defect(label, k, last, &l, &r));
    };
    push("i[P,H] = Q", 2, comm(p, h) * I, q.clone());
    push("i[Q,H] = -P", 2, comm(q, h) * I, -p);
    push("[A,H] = A", 2, comm(a, h), a.clone());
    push("[Adag,H] = -Adag", 2, comm(ad, h), -ad);
    push("H = (P^2 + Q^2)/2", 2, h.clone(), (p * p + q * q) * c(0.5));
    push("H = (A Adag + Adag A)/2", 2, h.clone(), (a * ad + ad * a) * c(0.5));
    push("i[P,Q^2] = 2Q", 3, comm(p, &(q * q)) * I, q * c(2.0));
    push("i[P^2,Q] = 2P", 3, comm(&(p * p), q) * I, p * c(2.0));
    push("[A,Adag^2] = 2Adag", 3, comm(a, &(ad * ad)), ad * c(2.0));
    push("[Adag,A^2] = -2A", 3, comm(ad, &(a * a)), a * c(-2.0));
    Ok(out)
}

/// The deformed commutator, parity anticommutation, and what `[A,Adag]`
/// commutes with.
pub fn check_commutation(rep: &OscillatorRep) -> Result<OscillatorReport> {
    let mut out = OscillatorReport::new("commutation", rep);
    let (p, q, h, a, ad, j) = (&rep.p, &rep.q, &rep.h, &rep.a, &rep.adag, &rep.j);
    let m = rep.m();
    let id = rep.identity();
    let last2 = rep.check_word(2)?;
    let cr = comm(p, q) * I;
    out.identities.push(matrix_defect("i[P,Q] = I + 2mu J", 2, last2, &cr, &(&id + j * c(2.0 * m))));
    out.identities.push(matrix_defect("i[P,Q] - I = 2mu J", 2, last2, &(&cr - &id), &(j * c(2.0 * m))));
    out.identities.push(matrix_defect("[A,Adag] = i[P,Q]", 2, last2, &comm(a, ad), &cr));
    out.identities.push(matrix_defect("JP = -PJ", 2, last2, &(j * p), &-(p * j)));
    out.identities.push(matrix_defect("JQ = -QJ", 2, last2, &(j * q), &-(q * j)));
    let last4 = rep.check_word(4)?;
    let k = comm(a, ad);
    for (label, x) in [
        ("[A,Adag] commutes with A^2", a * a),
        ("[A,Adag] commutes with Adag^2", ad * ad),
        ("[A,Adag] commutes with P^2", p * p),
        ("[A,Adag] commutes with Q^2", q * q),
        ("[A,Adag] commutes with H", h.clone()),
    ] {
        out.identities.push(matrix_defect(label, 4, last4, &(&k * &x), &(&x * &k)));
    }
    Ok(out)
}

/// Powers of the ladder operators, the ground-state lemma, and the
/// polynomial commutator theorem with `𝔇_μ p` from the polynomial module.
pub fn check_ladder_powers(rep: &OscillatorRep, n_max: usize) -> Result<OscillatorReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be positive".into()));
    }
    rep.check_word(2 * n_max + 2)?;
    let mut out = OscillatorReport::new("ladder-powers", rep);
    let (p, q, a, ad) = (&rep.p, &rep.q, &rep.a, &rep.adag);
    let m = rep.m();
    let kaa = comm(a, ad);
    let cr = comm(p, q) * I;
    for n in 1..=n_max {
        let (e, o) = (2 * n, 2 * n + 1);
        let nn = c(2.0 * n as f64);
        let shift = |x: &CMat| x + &(rep.identity() * nn);
        let mut push = |label: String, k: usize, ops: (&CMat, &CMat), r: CMat, phase: Complex64| {
            let (x, y) = (ops.0 * phase, ops.1.clone());
            out.identities.push(commutator_defect(label, k, rep.n - 1 - k, (&x, &y), &r));
        };
        let one = c(1.0);
        let (ade, ado, qe, qo, pe, po) = (pow(ad, e), pow(ad, o), pow(q, e), pow(q, o), pow(p, e), pow(p, o));
        push(format!("[A,Adag^{e}] = {e} Adag^{}", e - 1), e + 1, (a, &ade), pow(ad, e - 1) * nn, one);
        push(format!("[A,Adag^{o}] = Adag^{e}({e} + [A,Adag])"), o + 1, (a, &ado), &ade * shift(&kaa), one);
        push(format!("i[P,Q^{e}] = {e} Q^{}", e - 1), e + 1, (p, &qe), pow(q, e - 1) * nn, I);
        push(format!("i[P,Q^{o}] = Q^{e}({e} + i[P,Q])"), o + 1, (p, &qo), &qe * shift(&cr), I);
        push(format!("i[P^{e},Q] = {e} P^{}", e - 1), e + 1, (&pe, q), pow(p, e - 1) * nn, I);
        push(format!("i[P^{o},Q] = P^{e}({e} + i[P,Q])"), o + 1, (&po, q), &pe * shift(&cr), I);
    }

    let e0 = rep.e0();
    let s2 = std::f64::consts::SQRT_2;
    out.identities.push(vector_defect(
        "Adag e0/sqrt2 = Q e0 = -iP e0",
        1,
        &[(ad * &e0 * c(1.0 / s2), q * &e0), (q * &e0, p * &e0 * (-I))],
    ));
    out.identities.push(vector_defect("i[P,Q] e0 = (1 + 2mu) e0", 2, &[(&cr * &e0, &e0 * c(1.0 + 2.0 * m))]));
    let deg = 2 * n_max + 1;
    let ratio = |n: usize| c(gamma_mu_in(&m, n) / gamma_mu_in(&m, n - 1));
    let mut pq = Vec::new();
    let mut pp = Vec::new();
    let mut aa = Vec::new();
    for n in 1..=deg {
        pq.push((comm(p, &pow(q, n)) * &e0 * I, pow(q, n - 1) * &e0 * ratio(n)));
        pp.push((comm(&pow(p, n), q) * &e0 * I, pow(p, n - 1) * &e0 * ratio(n)));
        aa.push((comm(a, &pow(ad, n)) * &e0, pow(ad, n - 1) * &e0 * ratio(n)));
    }
    out.identities.push(vector_defect("i[P,Q^n] e0 = (gamma(n)/gamma(n-1)) Q^(n-1) e0", deg + 1, &pq));
    out.identities.push(vector_defect("i[P^n,Q] e0 = (gamma(n)/gamma(n-1)) P^(n-1) e0", deg + 1, &pp));
    out.identities.push(vector_defect("[A,Adag^n] e0 = (gamma(n)/gamma(n-1)) Adag^(n-1) e0", deg + 1, &aa));

    let mut polys: Vec<DensePoly<f64>> = vec![
        DensePoly::monomial(3, 1.0),
        DensePoly::from_coeffs(vec![1.0, -2.0, 0.5, 0.0, 0.0, 3.0]),
    ];
    for n in 1..=deg {
        polys.push(hermite_coeffs_in(&m, n));
        polys.push(hermite_scaled_in(&m, n, &0.7));
    }
    let mut qside = Vec::new();
    let mut pside = Vec::new();
    let mut aside = Vec::new();
    for poly in &polys {
        let dp = dunkl_apply_in(&m, poly);
        qside.push(((p * poly_apply(poly, q, &e0) - poly_apply(poly, q, &(p * &e0))) * I, poly_apply(&dp, q, &e0)));
        pside.push(((poly_apply(poly, p, &(q * &e0)) - q * poly_apply(poly, p, &e0)) * I, poly_apply(&dp, p, &e0)));
        aside.push((a * poly_apply(poly, ad, &e0) - poly_apply(poly, ad, &(a * &e0)), poly_apply(&dp, ad, &e0)));
    }
    out.identities.push(vector_defect("i[P,p(Q)] e0 = (Dp)(Q) e0", deg + 1, &qside));
    out.identities.push(vector_defect("i[p(P),Q] e0 = (Dp)(P) e0", deg + 1, &pside));
    out.identities.push(vector_defect("[A,p(Adag)] e0 = (Dp)(Adag) e0", deg + 1, &aside));
    let h3 = hermite_coeffs_in(&m, 3);
    let h2 = hermite_coeffs_in(&m, 2);
    out.identities.push(vector_defect(
        "i[P,H3(Q)] e0 = 6 H2(Q) e0",
        4,
        &[((p * poly_apply(&h3, q, &e0) - poly_apply(&h3, q, &(p * &e0))) * I, poly_apply(&h2, q, &e0) * c(6.0))],
    ));
    Ok(out)
}

/// Rodrigues and dual Rodrigues formulas and the reconstruction of `e_n`.
pub fn check_rodrigues_operator(rep: &OscillatorRep, n_max: usize) -> Result<OscillatorReport> {
    if n_max + 1 > rep.n - 1 {
        return Err(Error::InvalidArgument(format!("n_max + 1 must not exceed N - 1 = {}", rep.n - 1)));
    }
    let mut out = OscillatorReport::new("rodrigues", rep);
    let m = rep.m();
    let (p, q, ad) = (&rep.p, &rep.q, &rep.adag);
    let e0 = rep.e0();
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let (q2, p2, ad2, iad2) = (q * c(r2), p * c(r2), ad * c(r2), ad * (I * r2));
    let mut rows: [Vec<(CVec, CVec)>; 8] = Default::default();
    let mut pn = e0.clone();
    let mut qn = e0.clone();
    let mut adn = e0.clone();
    let mut fact = 1.0;
    for n in 0..=n_max {
        if n > 0 {
            pn = p * pn;
            qn = q * qn;
            adn = ad * adn;
            fact *= n as f64;
        }
        let g = gamma_mu_in(&m, n);
        let hn = hermite_coeffs_in(&m, n);
        let half = 2f64.powf(n as f64 / 2.0) * fact;
        let full = 2f64.powi(n as i32) * fact;
        let mi = i_pow(n).conj();
        rows[0].push((pn.clone(), poly_apply(&hn, &q2, &e0) * (i_pow(n) * (g / half))));
        rows[1].push((pn.clone(), poly_apply(&hn, &ad2, &e0) * (i_pow(n) * (g / full))));
        rows[2].push((qn.clone(), poly_apply(&hn, &p2, &e0) * (mi * (g / half))));
        rows[3].push((qn.clone(), poly_apply(&hn, &iad2, &e0) * (mi * (g / full))));
        rows[4].push((adn.clone(), poly_apply(&hn, q, &e0) * c(g / half)));
        let mut en = CVec::zeros(rep.n);
        en[n] = c(1.0);
        rows[5].push((en.clone(), poly_apply(&hn, q, &e0) * c(g.sqrt() / half)));
        rows[6].push((en.clone(), poly_apply(&hn, p, &e0) * (mi * (g.sqrt() / half))));
        rows[7].push((en, adn.clone() * c(1.0 / g.sqrt())));
    }
    let labels = [
        "P^n e0 = i^n gamma(n)/(2^(n/2) n!) Hn(Q/sqrt2) e0",
        "P^n e0 = i^n gamma(n)/(2^n n!) Hn(Adag/sqrt2) e0",
        "Q^n e0 = (-i)^n gamma(n)/(2^(n/2) n!) Hn(P/sqrt2) e0",
        "Q^n e0 = (-i)^n gamma(n)/(2^n n!) Hn(i Adag/sqrt2) e0",
        "Adag^n e0 = gamma(n)/(2^(n/2) n!) Hn(Q) e0",
        "e_n = sqrt(gamma(n))/(2^(n/2) n!) Hn(Q) e0",
        "e_n = (-i)^n sqrt(gamma(n))/(2^(n/2) n!) Hn(P) e0",
        "e_n = gamma(n)^(-1/2) Adag^n e0",
    ];
    for (label, pairs) in labels.iter().zip(rows.iter()) {
        out.identities.push(vector_defect(*label, n_max, pairs));
    }
    Ok(out)
}

/// Spectrum, ground state, parity and the Fourier operator.
pub fn check_structure(rep: &OscillatorRep) -> Result<OscillatorReport> {
    let mut out = OscillatorReport::new("structure", rep);
    let m = rep.m();
    let n = rep.n;
    let (a, ad, h, j, f) = (&rep.a, &rep.adag, &rep.h, &rep.j, &rep.f);
    let id = rep.identity();
    let diag = |g: &dyn Fn(usize) -> Complex64| CMat::from_fn(n, n, |r, col| if r == col { g(r) } else { c(0.0) });
    let full = n - 1;
    let last2 = rep.check_word(2)?;

    let eig_h = diag(&|k| c(k as f64 + m + 0.5));
    out.identities.push(matrix_defect("H e_n = (n + mu + 1/2) e_n", 1, full, h, &eig_h));
    let ada = diag(&|k| c(k as f64 + 2.0 * m * theta(k) as f64));
    out.identities.push(matrix_defect("Adag A e_n = (n + 2mu theta(n)) e_n", 2, last2, &(ad * a), &ada));
    let aad = diag(&|k| c((k + 1) as f64 + 2.0 * m * theta(k + 1) as f64));
    out.identities.push(matrix_defect("A Adag e_n = (n + 1 + 2mu theta(n+1)) e_n", 2, last2, &(a * ad), &aad));
    out.identities.push(matrix_defect("J e_n = (-1)^n e_n", 1, full, j, &diag(&|k| c(if k % 2 == 0 { 1.0 } else { -1.0 }))));
    out.identities.push(matrix_defect("J = J* = J^-1", 2, full, &(j * j), &id));
    out.identities.push(matrix_defect("J = J*", 1, full, j, &j.adjoint()));
    let shifted = |s: f64| diag(&|k| (I * (s * std::f64::consts::PI * k as f64)).exp());
    out.identities.push(matrix_defect("J = exp(-pi i (H - mu - 1/2))", 1, full, j, &shifted(-1.0)));
    out.identities.push(matrix_defect("exp(-2 pi i (H - mu - 1/2)) = I", 1, full, &shifted(-2.0), &id));
    out.identities.push(matrix_defect("F = exp(-pi i (H - mu - 1/2)/2)", 1, full, f, &shifted(-0.5)));
    out.identities.push(matrix_defect("F^2 = J", 2, full, &(f * f), j));
    out.identities.push(matrix_defect("F* = J F", 2, full, &f.adjoint(), &(j * f)));
    out.identities.push(matrix_defect("F* = F J", 2, full, &f.adjoint(), &(f * j)));
    let last1 = rep.check_word(1)?;
    out.identities.push(matrix_defect("P = F* Q F", 1, last1, &rep.p, &(f.adjoint() * &rep.q * f)));
    out.identities.push(matrix_defect("F e_n = (-i)^n e_n", 1, full, f, &diag(&|k| i_pow(k).conj())));

    let e0 = rep.e0();
    let mut pairs = Vec::new();
    let mut ladder = Vec::new();
    let mut adn = vec![e0.clone()];
    for k in 1..n {
        adn.push(ad * &adn[k - 1]);
    }
    for nn in 0..n {
        for mm in 0..=nn {
            let mut l = adn[nn].clone();
            for _ in 0..mm {
                l = a * l;
            }
            let r = &adn[nn - mm] * c(gamma_mu_in(&m, nn) / gamma_mu_in(&m, nn - mm));
            pairs.push((l, r));
        }
        if nn + 1 < n {
            let mut l = adn[nn].clone();
            for _ in 0..=nn {
                l = a * l;
            }
            ladder.push((l, CVec::zeros(n)));
        }
    }
    out.identities.push(vector_defect("A^m Adag^n e0 = gamma(n)/gamma(n-m) Adag^(n-m) e0", n - 1, &pairs));
    out.identities.push(vector_defect("A^m Adag^n e0 = 0 for m > n", n - 1, &ladder));
    let ae0 = a * &e0;
    out.identities.push(vector_defect("A e0 = 0", 1, &[(ae0, CVec::zeros(n))]));
    Ok(out)
}

/// Conjugation by `exp(iλH)`, which rotates `(Q, P)` and multiplies `A`
/// by a phase. The rotation is diagonal, so no margin beyond the word
/// length is needed.
pub fn check_unitary_group(rep: &OscillatorRep, lambdas: &[f64]) -> Result<OscillatorReport> {
    let mut out = OscillatorReport::new("unitary-group", rep);
    let last = rep.check_word(1)?;
    for &lam in lambdas {
        let u = rep.rotation(lam);
        let ui = u.adjoint();
        let (cs, sn) = (c(lam.cos()), c(lam.sin()));
        out.identities.push(matrix_defect(
            format!("exp(i{lam}H) Q exp(-i{lam}H) = Q cos + P sin"),
            1,
            last,
            &(&u * &rep.q * &ui),
            &(&rep.q * cs + &rep.p * sn),
        ));
        out.identities.push(matrix_defect(
            format!("exp(i{lam}H) P exp(-i{lam}H) = -Q sin + P cos"),
            1,
            last,
            &(&u * &rep.p * &ui),
            &(-&rep.q * sn + &rep.p * cs),
        ));
        out.identities.push(matrix_defect(
            format!("exp(i{lam}H) A exp(-i{lam}H) = exp(-i{lam}) A"),
            1,
            last,
            &(&u * &rep.a * &ui),
            &(&rep.a * (-I * lam).exp()),
        ));
    }
    Ok(out)
}

/// `φ_n^μ` and `𝔇_μ φ_n^μ` at `x`, for `n < count`. The derivative comes
/// from differentiating the Hermite recursion, with `𝔇φ_n = φ_n' + 2μθ(n)φ_n/x`.
fn phi_and_dunkl(m: f64, count: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let hs = hermite_eval_all_in(m, count, x);
    let mut dh = vec![0.0; count + 1];
    for k in 0..count {
        let kp1 = (k + 1) as f64;
        let lower = if k == 0 { 0.0 } else { dh[k - 1] };
        dh[k + 1] = kp1 / (kp1 + 2.0 * m * theta(k + 1) as f64) * (2.0 * hs[k] + 2.0 * x * dh[k] - 2.0 * k as f64 * lower);
    }
    let ln0 = -0.5 * ln_gamma_fn(m + 0.5) - 0.5 * x * x;
    let mut phi = Vec::with_capacity(count);
    let mut dphi = Vec::with_capacity(count);
    let mu = MuParam::new(m).expect("validated");
    for k in 0..count {
        let lnfact: f64 = (1..=k).map(|i| (i as f64).ln()).sum();
        let lc = 0.5 * log_gamma_mu(&mu, k).expect("validated") - 0.5 * k as f64 * std::f64::consts::LN_2 - lnfact + ln0;
        let scale = lc.exp();
        let v = scale * hs[k];
        phi.push(v);
        dphi.push(scale * (dh[k] - x * hs[k]) + 2.0 * m * theta(k) as f64 * v / x);
    }
    (phi, dphi)
}

/// Matrix entries of `Q`, `P`, `H` and `J` against inner products of the
/// functions `φ_n^μ` computed by quadrature, and `ℱ` against the diagonal
/// transform.
pub fn check_representation(rep: &OscillatorRep) -> Result<OscillatorReport> {
    let mut out = OscillatorReport::new("representation", rep);
    let m = rep.m();
    let n = rep.n;
    let nodes = 2 * ((n + 17) / 2);
    let rule = gauss_hermite_mu(&rep.mu, nodes)?;
    let mw = rule.modified_weights();
    let mut gq = CMat::zeros(n, n);
    let mut gp = CMat::zeros(n, n);
    let mut gh = CMat::zeros(n, n);
    let mut gj = CMat::zeros(n, n);
    let mut gram = CMat::zeros(n, n);
    for (&x, &w) in rule.nodes().iter().zip(&mw) {
        let (phi, dphi) = phi_and_dunkl(m, n, x);
        let reflected = phi_all_in(m, n - 1, -x);
        for r in 0..n {
            for col in 0..n {
                gram[(r, col)] += c(w * phi[r] * phi[col]);
                gq[(r, col)] += c(w * x * phi[col] * phi[r]);
                gp[(r, col)] += -I * (w * dphi[col] * phi[r]);
                gh[(r, col)] += c(0.5 * w * (dphi[col] * dphi[r] + x * x * phi[col] * phi[r]));
                gj[(r, col)] += c(w * reflected[col] * phi[r]);
            }
        }
    }
    let last = rep.check_word(1)?;
    let id = rep.identity();
    out.identities.push(matrix_defect("<phi_n, phi_m> = delta", 0, last, &gram, &id));
    out.identities.push(matrix_defect("<Q phi_n, phi_m> = Q[m,n]", 1, last, &gq, &rep.q));
    out.identities.push(matrix_defect("<P phi_n, phi_m> = P[m,n]", 1, last, &gp, &rep.p));
    out.identities.push(matrix_defect("<H phi_n, phi_m> = H[m,n]", 1, last, &gh, &rep.h));
    out.identities.push(matrix_defect("<J phi_n, phi_m> = J[m,n]", 1, last, &gj, &rep.j));
    let mut fcols = CMat::zeros(n, n);
    for k in 0..n {
        let v = fourier_spectral(&SpectralVector::unit(rep.mu.clone(), n, k));
        for (r, z) in v.coeffs().iter().enumerate() {
            fcols[(r, k)] = *z;
        }
    }
    out.identities.push(matrix_defect("F phi_n = fourier(phi_n)", 1, n - 1, &fcols, &rep.f));
    Ok(out)
}

/// Every check at the given truncation.
pub fn run_all(rep: &OscillatorRep, n_max: usize) -> Result<Vec<OscillatorReport>> {
    let ladder_n = ((rep.max_word().saturating_sub(2)) / 2).clamp(1, n_max.max(1));
    Ok(vec![
        check_equations_of_motion(rep)?,
        check_commutation(rep)?,
        check_ladder_powers(rep, ladder_n)?,
        check_rodrigues_operator(rep, n_max.min(rep.dim() - 2))?,
        check_structure(rep)?,
        check_unitary_group(rep, &[0.3, 1.0, std::f64::consts::FRAC_PI_2, 2.5])?,
        check_representation(rep)?,
    ])
}
