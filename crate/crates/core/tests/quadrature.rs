use proptest::prelude::*;
use statrs::function::gamma::gamma;

use muherm::efun::e_mu_real;
use muherm::mu::alpha_mu_moment;
use muherm::poly::hermite_eval;
use muherm::quadrature::{gauss_alpha_mu, gauss_hermite_mu, gauss_jacobi, symmetric_tridiagonal_eigen, Measure};
use muherm::MuParam;

fn mu(v: f64) -> MuParam {
    MuParam::new(v).unwrap()
}

#[test]
fn single_node_rule() {
    for v in [-0.3, 0.0, 0.5, 2.0] {
        let rule = gauss_hermite_mu(&mu(v), 1).unwrap();
        assert_eq!(rule.nodes(), &[0.0]);
        assert!((rule.weights()[0] - gamma(v + 0.5)).abs() < 1e-14 * gamma(v + 0.5));
    }
}

#[test]
fn hermite_rule_moments() {
    for v in [-0.4, 0.0, 0.6, 1.5, 3.25] {
        let rule = gauss_hermite_mu(&mu(v), 20).unwrap();
        assert_eq!(rule.measure(), Measure::HermiteMu { mu: v });
        assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        for (x, y) in rule.nodes().iter().zip(rule.nodes().iter().rev()) {
            assert_eq!(*x, -*y);
        }
        assert!((rule.total_mass() - gamma(v + 0.5)).abs() < 1e-13 * gamma(v + 0.5));
        for k in 0..20 {
            let want = gamma(k as f64 + v + 0.5);
            let got = rule.integrate(|t| t.powi(2 * k as i32));
            assert!((got - want).abs() < 1e-12 * want, "mu {v} k {k}: {got} vs {want}");
            assert!(rule.integrate(|t| t.powi(2 * k as i32 + 1)).abs() < 1e-12 * want);
        }
    }
}

#[test]
fn hermite_polynomials_are_orthogonal() {
    for v in [0.0, 0.4, 2.0] {
        let m = mu(v);
        let rule = gauss_hermite_mu(&m, 32).unwrap();
        let inner = |a: usize, b: usize| rule.integrate(|t| hermite_eval(&m, a, t).unwrap() * hermite_eval(&m, b, t).unwrap());
        for a in 0..=15 {
            for b in 0..a {
                let scale = (inner(a, a) * inner(b, b)).sqrt();
                assert!(inner(a, b).abs() < 1e-12 * scale, "mu {v}: <H_{a}, H_{b}>");
            }
        }
    }
}

#[test]
fn alpha_rule_moments_and_exponential() {
    for v in [0.2, 0.75, 1.0, 4.0] {
        let rule = gauss_alpha_mu(&mu(v), 20).unwrap();
        assert!((rule.total_mass() - 1.0).abs() < 1e-14);
        assert!(rule.nodes().iter().all(|t| t.abs() < 1.0));
        for n in 0..40 {
            let want = alpha_mu_moment(&mu(v), n).unwrap();
            assert!((rule.integrate(|t| t.powi(n as i32)) - want).abs() < 1e-13, "mu {v} n {n}");
        }
        for x in [-3.0, 0.5, 2.0] {
            let want = e_mu_real(&mu(v), x).unwrap();
            assert!((rule.integrate(|t| (x * t).exp()) - want).abs() < 1e-13 * want);
        }
    }
    assert!(gauss_alpha_mu(&mu(0.0), 4).is_err());
}

#[test]
fn legendre_and_jacobi() {
    let rule = gauss_jacobi(0.0, 0.0, 2).unwrap();
    let r = 1.0 / 3f64.sqrt();
    assert!((rule.nodes()[0] + r).abs() < 1e-15 && (rule.nodes()[1] - r).abs() < 1e-15);
    assert!(rule.weights().iter().all(|w| (w - 1.0).abs() < 1e-15));
    // ∫(1−t)^a(1+t)^b dt = 2^{a+b+1} B(a+1, b+1)
    let (a, b) = (-0.5, 1.5);
    let rule = gauss_jacobi(a, b, 12).unwrap();
    let mass = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    assert!((rule.total_mass() - mass).abs() < 1e-14 * mass);
    // t(1+t)^{b}: shift b by one
    let shifted = 2f64.powf(a + b + 2.0) * gamma(a + 1.0) * gamma(b + 2.0) / gamma(a + b + 3.0);
    assert!((rule.integrate(|t| 1.0 + t) - shifted).abs() < 1e-14 * shifted);
    assert!(gauss_jacobi(-1.0, 0.0, 3).is_err());
}

#[test]
fn tridiagonal_eigenvalues() {
    // path graph: 2cos(kπ/(n+1))
    let n = 7;
    let (vals, _) = symmetric_tridiagonal_eigen(&vec![0.0; n], &vec![1.0; n - 1], false).unwrap();
    for (k, v) in vals.iter().enumerate() {
        let want = -2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
        assert!((v - want).abs() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn exact_on_polynomials_up_to_degree(v in -0.45f64..4.0, n in 2usize..30, seed in 0u64..1000) {
        let rule = gauss_hermite_mu(&mu(v), n).unwrap();
        prop_assert_eq!(rule.exactness_degree(), 2 * n - 1);
        let d = (seed as usize) % (2 * n);
        let want = if d % 2 == 1 { 0.0 } else { gamma((d / 2) as f64 + v + 0.5) };
        let got = rule.integrate(|t| t.powi(d as i32));
        // odd moments cancel, so compare against the absolute moment
        let scale = gamma(d as f64 / 2.0 + v + 0.5);
        prop_assert!((got - want).abs() < 1e-12 * scale.max(1.0));
    }
}
