use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use muherm::efun::e_mu_real;
use muherm::poly::binomial_poly_in;
use muherm::translate::{
    heron_delta, heron_psi, translate_alpha, translate_poly, translate_spectral, translate_xi, translate_xi_with,
    xi_intervals, HeronGeometry, Integrand, TranslationJob, TranslationMethod,
};
use muherm::{DensePoly, MuParam, Rational};

fn mu(v: f64) -> MuParam {
    MuParam::new(v).unwrap()
}

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[test]
fn polynomial_examples() {
    for v in [0.0, 0.5, 2.0] {
        let m = mu(v);
        assert_eq!(translate_poly(&m, &DensePoly::x(), &1.5).unwrap().coeffs(), &[1.5, 1.0]);
        let got = translate_poly(&m, &DensePoly::monomial(2, 1.0), &0.5).unwrap();
        let want = [0.25, 1.0 / (1.0 + 2.0 * v), 1.0];
        assert!(got.coeffs().iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15));
    }
}

#[test]
fn monomials_translate_to_binomial_polynomials() {
    let y = r(-3, 5);
    for (p, q) in [(0, 1), (1, 3), (7, 4)] {
        let m = MuParam::parse(&format!("{p}/{q}")).unwrap();
        for n in 0..=9 {
            let got = translate_poly(&m, &DensePoly::monomial(n, r(1, 1)), &y).unwrap();
            assert_eq!(got, binomial_poly_in(&r(p, q), n).at_y(&y), "mu {p}/{q} n {n}");
        }
    }
}

#[test]
fn product_formula_for_the_exponential() {
    for v in [0.4, 0.75, 2.0] {
        let m = mu(v);
        let lambda = 0.9;
        let f = |t: f64| e_mu_real(&m, lambda * t).unwrap();
        for (x, y) in [(1.2, 0.5), (-0.8, 1.1), (0.6, -0.6), (0.0, 1.3)] {
            let want = e_mu_real(&m, lambda * x).unwrap() * e_mu_real(&m, lambda * y).unwrap();
            let a = translate_alpha(&m, f, x, y).unwrap();
            assert!((a - want).abs() < 1e-12 * want, "mu {v} ({x},{y}): {a} vs {want}");
            if x != 0.0 && x.abs() != y.abs() {
                let b = translate_xi(&m, f, x, y).unwrap();
                assert!((b - want).abs() < 1e-10 * want, "mu {v} ({x},{y}) xi: {b} vs {want}");
            }
        }
    }
}

#[test]
fn integral_forms_agree() {
    let m = mu(0.75);
    let g = |t: f64| (-(t - 0.3) * (t - 0.3)).exp() + 0.2 * t.sin();
    let (x, y) = (1.2, 0.5);
    let a = translate_alpha(&m, g, x, y).unwrap();
    assert!((a - translate_xi(&m, g, x, y).unwrap()).abs() < 1e-10);
    assert!((a - translate_xi_with(&m, g, x, y, 64).unwrap()).abs() < 1e-10);
    // y = 0 is the identity, and the translation is symmetric in x and y
    assert!((translate_alpha(&m, g, x, 0.0).unwrap() - g(x)).abs() < 1e-14);
    assert!((a - translate_alpha(&m, g, y, x).unwrap()).abs() < 1e-13);
    // xy < 0
    let b = translate_alpha(&m, g, -0.9, 0.4).unwrap();
    assert!((b - translate_xi(&m, g, -0.9, 0.4).unwrap()).abs() < 1e-10);
    assert!(translate_xi(&m, g, 0.0, 0.4).is_err());
    assert!(translate_alpha(&mu(0.0), g, 1.0, 0.4).is_err());
}

#[test]
fn spectral_form_matches_integral_form() {
    let m = mu(0.6);
    let g = |t: f64| (-t * t).exp();
    let xs = [-1.1, 0.0, 0.35, 1.4];
    let spec = translate_spectral(&m, g, 0.7, &xs, 96).unwrap();
    for (x, s) in xs.iter().zip(spec) {
        let a = translate_alpha(&m, g, *x, 0.7).unwrap();
        assert!((a - s).abs() < 1e-9, "x {x}: {a} vs {s}");
    }
}

#[test]
fn heron_geometry() {
    assert_eq!(heron_delta(3.0, 4.0, 5.0), 6.0);
    assert_eq!(heron_delta(1.0, 1.0, 3.0), 0.0);
    assert_eq!(heron_delta(-3.0, 4.0, 5.0), 6.0);
    assert!(heron_psi(1.0, 1.0, 3.0) < 0.0);
    let g = HeronGeometry::new(3.0, 4.0, -5.0);
    assert!(g.in_xi && g.delta == 6.0);
    assert_eq!(xi_intervals(3.0, 1.0), [(-4.0, -2.0), (2.0, 4.0)]);
    assert_eq!(xi_intervals(-3.0, 1.0), [(-4.0, -2.0), (2.0, 4.0)]);
}

#[test]
fn jobs_dispatch() {
    let m = mu(0.5);
    let p = DensePoly::from_coeffs(vec![1.0, 0.0, -2.0, 1.0]);
    let series = TranslationJob::new(m.clone(), 0.4, TranslationMethod::PolySeries, Integrand::Polynomial(p.clone())).unwrap();
    let alpha = TranslationJob::new(m.clone(), 0.4, TranslationMethod::AlphaIntegral, Integrand::Polynomial(p.clone())).unwrap();
    let xi = TranslationJob::new(m.clone(), 0.4, TranslationMethod::XiIntegral, Integrand::Function(Arc::new(move |t| p.eval(&t))))
        .unwrap();
    for x in [-1.0, 0.0, 0.4, 1.3] {
        let want = series.evaluate(x).unwrap();
        assert!((alpha.evaluate(x).unwrap() - want).abs() < 1e-12);
        assert!((xi.evaluate(x).unwrap() - want).abs() < 1e-10);
    }
    assert!(TranslationJob::new(m, 0.4, TranslationMethod::PolySeries, Integrand::Function(Arc::new(|t| t))).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_translation_is_symmetric(v in -0.45f64..3.0, c in prop::collection::vec(-3.0f64..3.0, 1..8),
                                           x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let m = mu(v);
        let p = DensePoly::from_coeffs(c);
        let a = translate_poly(&m, &p, &y).unwrap().eval(&x);
        let b = translate_poly(&m, &p, &x).unwrap().eval(&y);
        prop_assert!((a - b).abs() < 1e-11 * a.abs().max(1.0));
    }
}
