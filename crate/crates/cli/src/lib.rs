//! Command-line front end for `muherm`.
//!
//! Every subcommand writes CSV (17 significant digits) or JSON to standard
//! output or to `--out`. Exit codes: 0 success, 1 computation or
//! verification failure, 2 bad arguments.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use muherm::efun::e_mu;
use muherm::mu::{gamma_mu, gamma_mu_exact, log_gamma_mu, mu_binomial, mu_binomial_in};
use muherm::oscillator::{run_all, OscillatorRep};
use muherm::poly::{heat_poly, hermite_coeffs, hermite_eval};
use muherm::quadrature::{gauss_alpha_mu, gauss_hermite_mu, gauss_jacobi, QuadratureRule};
use muherm::scalar::{format_rational, parse_rational};
use muherm::suite::{run_all_suites, run_suite, SuiteRecord, FULL_MATRIX_MU, SUITES};
use muherm::transform::{operator_matrix, phi_eval, FourierQuadrature, OperatorTag, DEFAULT_TRANSFORM_NODES};
use muherm::translate::{translate_spectral, Integrand, TranslationJob, TranslationMethod};
use muherm::heat::{heat_apply_kernel, heat_apply_spectral, heat_gaussian, DEFAULT_SPECTRAL_BASIS};
use muherm::{DensePoly, Error, MuParam, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "muherm", version, about = "Generalized Hermite calculus: special functions, transforms, heat flow, translation and the Bose-like oscillator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format; `verify` and `oscillator` default to JSON, the rest to CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one special function at a point.
    Eval(EvalArgs),
    /// The generalized factorial γ_μ(n).
    Gamma(GammaArgs),
    /// Coefficient and value tables.
    Table(TableArgs),
    /// Gauss rules as (node, weight) pairs.
    Quad(QuadArgs),
    /// The generalized Fourier transform on a grid (columns x, re, im).
    Transform(TransformArgs),
    /// Heat flow on a grid (columns x, t, psi).
    Heat(HeatArgs),
    /// Generalized translation on a grid (columns x, value).
    Translate(TranslateArgs),
    /// Oscillator identities on a truncated basis, or one operator matrix.
    Oscillator(OscillatorArgs),
    /// Run the exact kernel and every numeric suite; exit 0 iff all pass.
    Verify(VerifyArgs),
}

fn mu_arg(s: &str) -> std::result::Result<MuParam, String> {
    MuParam::parse(s).map_err(|e| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    /// H_n^μ(x).
    Hermite,
    /// The normalized function φ_n^μ(x).
    Phi,
    /// e_μ(x + i·im).
    Emu,
    /// The heat polynomial of degree n at (x, t).
    HeatPoly,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub func: EvalFn,
    /// Decimal or `p/q`; `p/q` evaluates exactly where possible.
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    #[arg(long, default_value_t = 0)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    /// Imaginary part of the argument for `emu`.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub im: f64,
    /// Time for `heat-poly`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
}

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    #[arg(long)]
    pub n: usize,
    /// Print ln γ_μ(n) instead.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFn {
    /// Columns n, k, coefficient of x^k in H_n^μ.
    Hermite,
    /// Columns n, gamma.
    Gamma,
    /// Columns n, j, μ-binomial coefficient.
    Binomial,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long = "fn", value_enum)]
    pub func: TableFn,
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    #[arg(long, default_value_t = 10)]
    pub nmax: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rule {
    /// Weight |t|^{2μ} e^{−t²} on the line.
    Hermite,
    /// The probability measure α_μ on (−1, 1).
    Alpha,
    /// Weight (1−x)^a (1+x)^b on (−1, 1).
    Jacobi,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long, value_enum, default_value_t = Rule::Hermite)]
    pub rule: Rule,
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true, required_unless_present = "a")]
    pub mu: Option<MuParam>,
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_hyphen_values = true, requires = "b")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
}

#[derive(Debug, Args, Clone)]
pub struct GridArgs {
    #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub x_max: f64,
    #[arg(long, default_value_t = 61)]
    pub points: usize,
}

impl GridArgs {
    fn xs(&self) -> Result<Vec<f64>, Error> {
        if self.points == 0 || !(self.x_min <= self.x_max) {
            return Err(Error::InvalidArgument("grid needs points >= 1 and x-min <= x-max".into()));
        }
        if self.points == 1 {
            return Ok(vec![self.x_min]);
        }
        let h = (self.x_max - self.x_min) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.x_min + h * i as f64).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Input {
    /// e^{−a x²}.
    Gaussian,
    /// H_n^μ(x) e^{−x²/2}.
    Hermite,
    /// The bare polynomial H_n^μ(x) (translation only).
    Poly,
}

#[derive(Debug, Args, Clone)]
pub struct InputArgs {
    #[arg(long, value_enum, default_value_t = Input::Gaussian)]
    pub input: Input,
    /// Gaussian exponent.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    /// Hermite degree.
    #[arg(long, default_value_t = 0)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_TRANSFORM_NODES)]
    pub nodes: usize,
    /// Apply the inverse transform.
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HeatMethod {
    /// Closed form on Gaussians.
    Closed,
    /// Gauss quadrature against the heat kernel.
    Kernel,
    /// Matrix exponential on the φ basis.
    Spectral,
}

#[derive(Debug, Args)]
pub struct HeatArgs {
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    /// Times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.5,2")]
    pub t: Vec<f64>,
    #[arg(long, value_enum, default_value_t = HeatMethod::Kernel)]
    pub method: HeatMethod,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = DEFAULT_SPECTRAL_BASIS)]
    pub basis: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TranslateMethod {
    /// Series in the Dunkl derivative; polynomial input only.
    Poly,
    /// Integral against α_μ.
    Alpha,
    /// Integral over the Heron-triangle variable.
    Xi,
    /// Truncated operator e_μ(iyP).
    Spectral,
}

#[derive(Debug, Args)]
pub struct TranslateArgs {
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
    #[arg(long, value_enum, default_value_t = TranslateMethod::Alpha)]
    pub method: TranslateMethod,
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    #[arg(long, default_value_t = 96)]
    pub basis: usize,
}

#[derive(Debug, Args)]
pub struct OscillatorArgs {
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true)]
    pub mu: MuParam,
    /// Truncation size.
    #[arg(long = "dim", short = 'N', default_value_t = 32)]
    pub dim: usize,
    /// Largest index in the ladder and Rodrigues checks.
    #[arg(long, default_value_t = 6)]
    pub nmax: usize,
    /// Tolerance for the algebraic identities.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Tolerance for the comparison against quadrature inner products.
    #[arg(long, default_value_t = 1e-8)]
    pub bridge_tol: f64,
    /// Dump this operator matrix instead (A, Adag, Q, P, H, J or F).
    #[arg(long)]
    pub matrix: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// μ values; the full acceptance matrix when omitted.
    #[arg(long, value_parser = mu_arg, allow_hyphen_values = true, value_delimiter = ',')]
    pub mu: Vec<MuParam>,
    /// Index bound for the exact identities.
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    /// Restrict to these suites.
    #[arg(long, value_delimiter = ',', value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
    pub suite: Vec<String>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Domain(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::UnknownTag(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Failure { code, message: e.to_string() }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Text to emit and the exit code to return after emitting it.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: EXIT_OK }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn exact_point(mu: &MuParam, args: &[&str]) -> Option<Vec<Rational>> {
    mu.as_rational()?;
    args.iter().map(|s| parse_rational(s).ok()).collect()
}

fn float_arg(name: &str, s: &str) -> CliResult<f64> {
    s.trim()
        .parse()
        .map_err(|_| Failure { code: EXIT_USAGE, message: format!("cannot parse --{name} `{s}` as a number") })
}

fn scalar_output(format: Format, fields: Value, value: String) -> String {
    match format {
        Format::Csv => format!("{value}\n"),
        Format::Json => {
            let mut obj = fields;
            obj["value"] = Value::String(value);
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
        }
    }
}

fn eval(a: &EvalArgs, format: Format) -> CliResult<Output> {
    let fields = json!({ "fn": format!("{:?}", a.func).to_lowercase(), "mu": a.mu.to_string(), "n": a.n, "x": a.x });
    let value = match a.func {
        EvalFn::Hermite => match exact_point(&a.mu, &[&a.x]) {
            Some(p) => format_rational(&hermite_coeffs::<Rational>(&a.mu, a.n)?.eval(&p[0])),
            None => hermite_eval(&a.mu, a.n, float_arg("x", &a.x)?)?.to_string(),
        },
        EvalFn::Phi => phi_eval(&a.mu, a.n, float_arg("x", &a.x)?)?.to_string(),
        EvalFn::Emu => {
            let z = e_mu(&a.mu, Complex64::new(float_arg("x", &a.x)?, a.im))?;
            if a.im == 0.0 {
                z.re.to_string()
            } else {
                format!("{},{}", z.re, z.im)
            }
        }
        EvalFn::HeatPoly => {
            let t = a.t.as_deref().ok_or_else(|| Failure { code: EXIT_USAGE, message: "heat-poly needs --t".into() })?;
            match exact_point(&a.mu, &[&a.x, t]) {
                Some(p) => format_rational(&heat_poly::<Rational>(&a.mu, a.n, &p[1])?.eval(&p[0])),
                None => heat_poly::<f64>(&a.mu, a.n, &float_arg("t", t)?)?.eval(&float_arg("x", &a.x)?).to_string(),
            }
        }
    };
    Ok(Output::ok(scalar_output(format, fields, value)))
}

fn gamma(a: &GammaArgs, format: Format) -> CliResult<Output> {
    let fields = json!({ "mu": a.mu.to_string(), "n": a.n, "log": a.log });
    let value = if a.log {
        log_gamma_mu(&a.mu, a.n)?.to_string()
    } else if a.mu.is_exact() {
        format_rational(&gamma_mu_exact(&a.mu, a.n)?)
    } else {
        gamma_mu(&a.mu, a.n)?.to_string()
    };
    Ok(Output::ok(scalar_output(format, fields, value)))
}

/// Rows of a table as strings; exact μ gives rationals.
fn table(a: &TableArgs, format: Format) -> CliResult<Output> {
    let exact = a.mu.is_exact();
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match a.func {
        TableFn::Hermite => {
            let mut rows = Vec::new();
            for n in 0..=a.nmax {
                if exact {
                    let p = hermite_coeffs::<Rational>(&a.mu, n)?;
                    for (k, c) in p.coeffs().iter().enumerate() {
                        rows.push(vec![n.to_string(), k.to_string(), format_rational(c)]);
                    }
                } else {
                    let p: DensePoly<f64> = hermite_coeffs(&a.mu, n)?;
                    a.mu.ensure_numeric()?;
                    for (k, c) in p.coeffs().iter().enumerate() {
                        rows.push(vec![n.to_string(), k.to_string(), num(*c)]);
                    }
                }
            }
            (vec!["n", "k", "coeff"], rows)
        }
        TableFn::Gamma => {
            let mut rows = Vec::new();
            for n in 0..=a.nmax {
                let v = if exact { format_rational(&gamma_mu_exact(&a.mu, n)?) } else { num(gamma_mu(&a.mu, n)?) };
                rows.push(vec![n.to_string(), v]);
            }
            (vec!["n", "gamma"], rows)
        }
        TableFn::Binomial => {
            let mut rows = Vec::new();
            for n in 0..=a.nmax {
                for j in 0..=n {
                    let v = match a.mu.as_rational() {
                        Some(r) => format_rational(&mu_binomial_in(r, n, j)),
                        None => num(mu_binomial(&a.mu, n, j)?),
                    };
                    rows.push(vec![n.to_string(), j.to_string(), v]);
                }
            }
            (vec!["n", "j", "value"], rows)
        }
    };
    let text = match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                s += &r.join(",");
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let objs: Vec<Value> = rows
                .into_iter()
                .map(|r| Value::Object(header.iter().map(|h| h.to_string()).zip(r.into_iter().map(Value::String)).collect()))
                .collect();
            format!("{}\n", serde_json::to_string_pretty(&json!({ "mu": a.mu.to_string(), "rows": objs })).expect("json"))
        }
    };
    Ok(Output::ok(text))
}

fn quad(a: &QuadArgs, format: Format) -> CliResult<Output> {
    let need_mu = || a.mu.clone().ok_or_else(|| Failure { code: EXIT_USAGE, message: "this rule needs --mu".into() });
    let rule: QuadratureRule = match a.rule {
        Rule::Hermite => gauss_hermite_mu(&need_mu()?, a.n)?,
        Rule::Alpha => gauss_alpha_mu(&need_mu()?, a.n)?,
        Rule::Jacobi => match (a.a, a.b) {
            (Some(x), Some(y)) => gauss_jacobi(x, y, a.n)?,
            _ => return Err(Failure { code: EXIT_USAGE, message: "the jacobi rule needs --a and --b".into() }),
        },
    };
    let text = match format {
        Format::Csv => rule.to_csv(),
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "rule": format!("{:?}", a.rule).to_lowercase(),
                "mu": a.mu.as_ref().map(|m| m.to_string()),
                "n": rule.len(),
                "exactness_degree": rule.exactness_degree(),
                "nodes": rule.nodes(),
                "weights": rule.weights(),
            }))
            .expect("json")
        ),
    };
    Ok(Output::ok(text))
}

fn input_fn(mu: &MuParam, input: &InputArgs) -> CliResult<Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
    match input.input {
        Input::Gaussian => {
            if !(input.a > 0.0) {
                return Err(Failure { code: EXIT_USAGE, message: format!("--a must be positive (got {})", input.a) });
            }
            let a = input.a;
            Ok(Arc::new(move |x: f64| (-a * x * x).exp()))
        }
        Input::Hermite => {
            let (mu, n) = (mu.clone(), input.n);
            mu.ensure_numeric()?;
            Ok(Arc::new(move |x: f64| hermite_eval(&mu, n, x).expect("checked mu") * (-0.5 * x * x).exp()))
        }
        Input::Poly => Err(Failure { code: EXIT_USAGE, message: "polynomial input is only accepted by `translate`".into() }),
    }
}

fn table_text(format: Format, header: &[&str], rows: &[Vec<f64>], meta: Value) -> String {
    match format {
        Format::Csv => {
            let mut s = header.join(",") + "\n";
            for r in rows {
                let cells: Vec<String> = r.iter().map(|v| num(*v)).collect();
                s += &cells.join(",");
                s.push('\n');
            }
            s
        }
        Format::Json => {
            let mut obj = meta;
            obj["columns"] = json!(header);
            obj["rows"] = json!(rows);
            format!("{}\n", serde_json::to_string_pretty(&obj).expect("json"))
        }
    }
}

fn transform(a: &TransformArgs, format: Format) -> CliResult<Output> {
    let xs = a.grid.xs()?;
    // the envelope exp(−σt²) is absorbed by the quadrature rule
    let (sigma, g): (f64, Box<dyn Fn(f64) -> Complex64>) = match a.input.input {
        Input::Gaussian => {
            input_fn(&a.mu, &a.input)?;
            (a.input.a, Box::new(|_| Complex64::new(1.0, 0.0)))
        }
        Input::Hermite => {
            let (mu, n) = (a.mu.clone(), a.input.n);
            mu.ensure_numeric()?;
            (0.5, Box::new(move |t| Complex64::new(hermite_eval(&mu, n, t).expect("checked mu"), 0.0)))
        }
        Input::Poly => return Err(input_fn(&a.mu, &a.input).err().expect("poly is rejected")),
    };
    let fq = FourierQuadrature::new(&a.mu, sigma, a.nodes)?;
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let v = if a.inverse { fq.inverse(&g, x)? } else { fq.forward(&g, x)? };
        rows.push(vec![x, v.re, v.im]);
    }
    let meta = json!({ "mu": a.mu.to_string(), "inverse": a.inverse });
    Ok(Output::ok(table_text(format, &["x", "re", "im"], &rows, meta)))
}

fn heat(a: &HeatArgs, format: Format) -> CliResult<Output> {
    let xs = a.grid.xs()?;
    if a.t.iter().any(|&t| !(t >= 0.0)) {
        return Err(Failure { code: EXIT_USAGE, message: "heat times must be nonnegative".into() });
    }
    let f = input_fn(&a.mu, &a.input)?;
    let mut rows = Vec::new();
    for &t in &a.t {
        let psi: Vec<f64> = match a.method {
            HeatMethod::Closed => {
                if a.input.input != Input::Gaussian {
                    return Err(Failure { code: EXIT_USAGE, message: "the closed form needs --input gaussian".into() });
                }
                let alpha = Complex64::new(a.input.a, 0.0);
                xs.iter().map(|&x| heat_gaussian(&a.mu, alpha, Complex64::new(0.0, 0.0), t, x).map(|v| v.re)).collect::<Result<_, _>>()?
            }
            HeatMethod::Kernel => xs.iter().map(|&x| heat_apply_kernel(&a.mu, |s| f(s), t, x)).collect::<Result<_, _>>()?,
            HeatMethod::Spectral => heat_apply_spectral(&a.mu, |s| f(s), t, &xs, a.basis)?,
        };
        rows.extend(xs.iter().zip(psi).map(|(&x, p)| vec![x, t, p]));
    }
    let meta = json!({ "mu": a.mu.to_string(), "method": format!("{:?}", a.method).to_lowercase() });
    Ok(Output::ok(table_text(format, &["x", "t", "psi"], &rows, meta)))
}

fn translate(a: &TranslateArgs, format: Format) -> CliResult<Output> {
    let xs = a.grid.xs()?;
    let integrand = match a.input.input {
        Input::Poly => Integrand::Polynomial(hermite_coeffs::<f64>(&a.mu, a.input.n)?),
        _ => Integrand::Function(input_fn(&a.mu, &a.input)?),
    };
    let values: Vec<f64> = match a.method {
        TranslateMethod::Spectral => {
            let f = integrand.clone();
            translate_spectral(&a.mu, move |x| f.eval(x), a.y, &xs, a.basis)?
        }
        m => {
            let method = match m {
                TranslateMethod::Poly => TranslationMethod::PolySeries,
                TranslateMethod::Alpha => TranslationMethod::AlphaIntegral,
                _ => TranslationMethod::XiIntegral,
            };
            let job = TranslationJob::new(a.mu.clone(), a.y, method, integrand)?;
            xs.iter().map(|&x| job.evaluate(x)).collect::<Result<_, _>>()?
        }
    };
    let rows: Vec<Vec<f64>> = xs.iter().zip(values).map(|(&x, v)| vec![x, v]).collect();
    let meta = json!({ "mu": a.mu.to_string(), "y": a.y, "method": format!("{:?}", a.method).to_lowercase() });
    Ok(Output::ok(table_text(format, &["x", "value"], &rows, meta)))
}

fn oscillator(a: &OscillatorArgs, format: Format) -> CliResult<Output> {
    if let Some(name) = &a.matrix {
        let tag: OperatorTag = name.parse()?;
        let m = operator_matrix(&a.mu, tag, a.dim)?;
        let text = match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&m).expect("json")),
            Format::Csv => {
                let mut s = String::from("row,col,re,im\n");
                for i in 0..m.dim() {
                    for j in 0..m.dim() {
                        let z = m.matrix()[(i, j)];
                        let _ = writeln!(s, "{i},{j},{},{}", num(z.re), num(z.im));
                    }
                }
                s
            }
        };
        return Ok(Output::ok(text));
    }
    let rep = OscillatorRep::build(&a.mu, a.dim)?;
    let reports = run_all(&rep, a.nmax)?;
    let tol_for = |check: &str| if check == "representation" { a.bridge_tol } else { a.tol };
    let pass = reports.iter().all(|r| r.passes(tol_for(&r.check)));
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&reports).expect("json")),
        Format::Csv => {
            let mut s = String::from("check,identity,word_length,max_defect,pass\n");
            for r in &reports {
                for d in &r.identities {
                    let _ = writeln!(
                        s,
                        "{},\"{}\",{},{},{}",
                        r.check,
                        d.identity.replace('"', "\"\""),
                        d.word_length,
                        num(d.max_defect),
                        d.max_defect < tol_for(&r.check)
                    );
                }
            }
            s
        }
    };
    Ok(Output { text, code: if pass { EXIT_OK } else { EXIT_FAILURE } })
}

fn verify(a: &VerifyArgs, format: Format) -> CliResult<Output> {
    let mus: Vec<MuParam> = if a.mu.is_empty() {
        FULL_MATRIX_MU.iter().map(|s| MuParam::parse(s)).collect::<Result<_, _>>()?
    } else {
        a.mu.clone()
    };
    let mut records: Vec<SuiteRecord> = Vec::new();
    for mu in &mus {
        if a.suite.is_empty() {
            records.extend(run_all_suites(mu, a.nmax)?);
        } else {
            for name in &a.suite {
                records.extend(run_suite(name, mu, a.nmax)?);
            }
        }
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    let text = match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&records).expect("json")),
        Format::Csv => {
            let mut s = String::from("suite,identity,mu,n_max,max_defect,pass\n");
            for r in &records {
                let _ = writeln!(
                    s,
                    "{},\"{}\",{},{},{},{}",
                    r.suite,
                    r.identity.replace('"', "\"\""),
                    r.mu,
                    r.n_max,
                    num(r.max_defect),
                    r.pass
                );
            }
            s
        }
    };
    eprintln!("{} of {} identities pass", records.len() - failed, records.len());
    Ok(Output { text, code: if failed == 0 { EXIT_OK } else { EXIT_FAILURE } })
}

fn dispatch(cli: &Cli) -> CliResult<Output> {
    let f = cli.format.unwrap_or(match cli.command {
        Command::Verify(_) | Command::Oscillator(_) => Format::Json,
        _ => Format::Csv,
    });
    match &cli.command {
        Command::Eval(a) => eval(a, f),
        Command::Gamma(a) => gamma(a, f),
        Command::Table(a) => table(a, f),
        Command::Quad(a) => quad(a, f),
        Command::Transform(a) => transform(a, f),
        Command::Heat(a) => heat(a, f),
        Command::Translate(a) => translate(a, f),
        Command::Oscillator(a) => oscillator(a, f),
        Command::Verify(a) => verify(a, f),
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = match dispatch(&cli) {
        Ok(o) => o,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return f.code;
        }
    };
    let written = match &cli.out {
        Some(path) => fs::write(path, &out.text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return EXIT_FAILURE;
    }
    out.code
}
