use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use statrs::function::beta::beta;

use muherm::mu::{
    alpha_mu_moment, gamma_mu, gamma_mu_exact, gamma_mu_in, log_gamma_mu, mu_binomial, mu_binomial_in, theta,
    GammaMuTable, NUMERIC_GUARD,
};
use muherm::{Error, MuParam, Rational};

fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

fn exact(p: i64, q: i64) -> MuParam {
    MuParam::rational(r(p, q)).unwrap()
}

/// `∫ tⁿ dα_μ` by expanding `t = 2u − 1` into beta integrals.
fn alpha_moment_by_beta(m: f64, n: usize) -> f64 {
    let mut acc = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        if k > 0 {
            binom *= (n - k + 1) as f64 / k as f64;
        }
        let sign = if (n - k) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * 2f64.powi(k as i32) * beta(k as f64 + m + 1.0, m);
    }
    acc * 4f64.powf(m) / beta(0.5, m)
}

#[test]
fn parity_symbol() {
    assert_eq!(theta(0), 0);
    assert_eq!(theta(1), 1);
    assert_eq!(theta(8), 0);
}

#[test]
fn gamma_examples() {
    for (p, q) in [(0, 1), (1, 3), (-1, 4), (7, 2)] {
        let m = exact(p, q);
        assert_eq!(gamma_mu_exact(&m, 1).unwrap(), Rational::one() + r(2 * p, q));
    }
    let mut fact = Rational::one();
    for n in 0..=20 {
        if n > 0 {
            fact *= r(n, 1);
        }
        assert_eq!(gamma_mu_exact(&exact(0, 1), n as usize).unwrap(), fact);
    }
    assert_eq!(gamma_mu_exact(&exact(1, 2), 3).unwrap(), r(16, 1));
    assert_eq!(gamma_mu(&MuParam::new(0.5).unwrap(), 3).unwrap(), 16.0);
}

#[test]
fn gamma_overflow_and_log_scale() {
    let m = MuParam::new(1.5).unwrap();
    assert!(matches!(gamma_mu(&m, 400), Err(Error::Overflow(_))));
    let by_steps: f64 = (1..=400).map(|k| (k as f64 + if k % 2 == 1 { 3.0 } else { 0.0 }).ln()).sum();
    let l = log_gamma_mu(&m, 400).unwrap();
    assert!((l - by_steps).abs() / by_steps < 1e-13);
    let table = GammaMuTable::new(&m, 30).unwrap();
    for n in 0..=30 {
        assert!((table.value(n) - gamma_mu(&m, n).unwrap()).abs() <= 1e-14 * table.value(n));
    }
}

#[test]
fn binomial_examples() {
    for (p, q) in [(0, 1), (1, 3), (5, 2)] {
        let m = r(p, q);
        for n in 0..6 {
            assert_eq!(mu_binomial_in(&m, n, 0), Rational::one());
        }
        assert_eq!(mu_binomial_in(&m, 2, 1), r(2, 1) / (Rational::one() + r(2 * p, q)));
    }
    assert_eq!(mu_binomial_in(&Rational::zero(), 4, 2), r(6, 1));
    assert!(mu_binomial(&MuParam::new(0.3).unwrap(), 3, 4).is_err());
}

#[test]
fn alpha_moment_examples() {
    for v in [0.3, 0.75, 2.0] {
        let m = MuParam::new(v).unwrap();
        assert_eq!(alpha_mu_moment(&m, 0).unwrap(), 1.0);
        assert!((alpha_mu_moment(&m, 1).unwrap() - 1.0 / (1.0 + 2.0 * v)).abs() < 1e-15);
    }
    let half = MuParam::new(0.5).unwrap();
    assert!((alpha_mu_moment(&half, 2).unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn alpha_moments_match_beta_integrals() {
    for v in [0.3, 0.5, 0.75, 2.0] {
        let m = MuParam::new(v).unwrap();
        for n in 0..=8 {
            let want = alpha_moment_by_beta(v, n);
            let got = alpha_mu_moment(&m, n).unwrap();
            // the alternating oracle sum cancels a few digits
            assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "mu {v} n {n}: {got} vs {want}");
        }
    }
}

#[test]
fn domain_guards() {
    let e = MuParam::new(-0.5).unwrap_err();
    assert!(e.to_string().contains(NUMERIC_GUARD));
    assert!(MuParam::parse("-1/2").is_err());
    assert!(MuParam::parse("-5/2").is_err());
    let m = MuParam::parse("-3/4").unwrap();
    assert!(m.ensure_numeric().unwrap_err().to_string().contains(NUMERIC_GUARD));
    assert_eq!(gamma_mu_exact(&m, 1).unwrap(), r(-1, 2));
    assert!(gamma_mu_exact(&MuParam::new(0.25).unwrap(), 2).is_err());
}

proptest! {
    #[test]
    fn gamma_step_recursion(v in -0.49f64..6.0, n in 0usize..60) {
        let m = MuParam::new(v).unwrap();
        let ratio = gamma_mu(&m, n + 1).unwrap() / gamma_mu(&m, n).unwrap();
        let want = (n + 1) as f64 + 2.0 * v * theta(n + 1) as f64;
        prop_assert!((ratio - want).abs() <= 1e-12 * want.abs().max(1.0));
    }

    #[test]
    fn binomial_symmetry_and_gamma_quotient(p in -7i64..40, q in 1i64..9, n in 0usize..16, j in 0usize..16) {
        prop_assume!(j <= n);
        let twice = r(2 * p, q);
        // skip the poles −1/2, −3/2, …
        prop_assume!(!(twice.is_integer() && twice.to_integer() < BigInt::zero() && twice.to_integer().to_i64().unwrap() % 2 != 0));
        let m = r(p, q);
        let b = mu_binomial_in(&m, n, j);
        prop_assert_eq!(b.clone(), mu_binomial_in(&m, n, n - j));
        let g = |k| gamma_mu_in(&m, k);
        prop_assume!(!g(j).is_zero() && !g(n - j).is_zero());
        prop_assert_eq!(b * g(j) * g(n - j), g(n));
    }

    #[test]
    fn alpha_moment_ratio(v in 0.01f64..5.0, n in 1usize..40) {
        let m = MuParam::new(v).unwrap();
        let ratio = alpha_mu_moment(&m, n).unwrap() / alpha_mu_moment(&m, n - 1).unwrap();
        let want = n as f64 / (n as f64 + 2.0 * v * theta(n) as f64);
        prop_assert!((ratio - want).abs() < 1e-12);
    }
}
