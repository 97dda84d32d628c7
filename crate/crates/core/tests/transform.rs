use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use statrs::function::gamma::gamma;

use muherm::transform::{
    expand, fourier_quadrature, FourierQuadrature, fourier_spectral, minus_i_pow, operator_matrix, phi_all, phi_eval, OperatorTag,
    SpectralVector,
};
use muherm::MuParam;

fn mu(v: f64) -> MuParam {
    MuParam::new(v).unwrap()
}

fn cx(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn op(v: f64, tag: OperatorTag, n: usize) -> DMatrix<Complex64> {
    operator_matrix(&mu(v), tag, n).unwrap().into_matrix()
}

/// Classical Hermite functions by their own normalized recursion.
fn hermite_function(n: usize, x: f64) -> f64 {
    let mut a = (-x * x / 2.0).exp() / PI.powf(0.25);
    if n == 0 {
        return a;
    }
    let mut b = 2f64.sqrt() * x * a;
    for k in 1..n {
        let c = (2.0 / (k + 1) as f64).sqrt() * x * b - (k as f64 / (k + 1) as f64).sqrt() * a;
        a = b;
        b = c;
    }
    b
}

#[test]
fn ground_state_and_classical_case() {
    for v in [-0.25, 0.0, 1.3] {
        for x in [-1.5, 0.0, 0.8] {
            let want = (-x * x / 2.0f64).exp() / gamma(v + 0.5).sqrt();
            assert!((phi_eval(&mu(v), 0, x).unwrap() - want).abs() < 1e-15);
        }
    }
    for x in [-3.2, -0.4, 0.0, 1.1, 4.5] {
        let phi = phi_all(&mu(0.0), 30, x).unwrap();
        for (n, p) in phi.iter().enumerate() {
            assert!((p - hermite_function(n, x)).abs() < 1e-13, "n {n} x {x}");
        }
    }
}

#[test]
fn expansion_recovers_basis_elements() {
    let m = mu(0.7);
    let e = expand(&m, |x| cx(phi_eval(&m, 3, x).unwrap()), 10, 40).unwrap();
    for (n, c) in e.vector.coeffs().iter().enumerate() {
        let want = if n == 3 { 1.0 } else { 0.0 };
        assert!((c - cx(want)).norm() < 1e-13, "n {n}: {c}");
    }
    assert!(e.parseval_defect.abs() < 1e-13);
    assert!(expand(&m, |_| cx(0.0), 10, 20).is_err());
}

#[test]
fn gaussian_has_only_even_coefficients() {
    for v in [0.0, 0.5, 2.0] {
        let e = expand(&mu(v), |x| cx((-0.8 * x * x).exp()), 24, 64).unwrap();
        for (n, c) in e.vector.coeffs().iter().enumerate() {
            if n % 2 == 1 {
                assert!(c.norm() < 1e-15);
            }
        }
    }
}

#[test]
fn spectral_transform_on_basis() {
    let v = SpectralVector::unit(mu(0.4), 6, 2);
    let f = fourier_spectral(&v);
    assert_eq!(f.coeffs()[2], cx(-1.0));
    assert_eq!(minus_i_pow(7), Complex64::new(0.0, 1.0));
}

#[test]
fn quadrature_transform_matches_eigenfunctions_and_gaussian() {
    for v in [0.0, 0.6, 1.5] {
        let m = mu(v);
        for n in [0usize, 1, 4, 7] {
            for x in [-1.7, 0.3, 2.2] {
                let g = |t: f64| cx(phi_eval(&m, n, t).unwrap() * (t * t / 2.0).exp());
                let got = fourier_quadrature(&m, 0.5, g, x).unwrap();
                let want = minus_i_pow(n) * phi_eval(&m, n, x).unwrap();
                assert!((got - want).norm() < 1e-12, "mu {v} n {n} x {x}");
            }
        }
        // e^{−at²} ↦ (2a)^{−μ−½} e^{−x²/4a}
        let a = 1.3f64;
        for x in [0.0, 0.9, -2.4] {
            let got = fourier_quadrature(&m, a, |_| cx(1.0), x).unwrap();
            let want = (2.0 * a).powf(-v - 0.5) * (-x * x / (4.0 * a)).exp();
            assert!((got - cx(want)).norm() < 1e-13);
        }
    }
    assert!(fourier_quadrature(&mu(0.5), 0.0, |_| cx(1.0), 0.0).is_err());
}

#[test]
fn adjoint_is_reflected_transform() {
    // ℱ*ψ(t) = ℱψ(−t), checked on a function with both parities
    for v in [0.0, 0.6, 1.5] {
        let fq = FourierQuadrature::new(&mu(v), 0.7, 96).unwrap();
        let g = |t: f64| Complex64::new(1.0 + 0.8 * t - 0.3 * t * t * t, 0.2 * t);
        for x in [-1.9, -0.2, 0.5, 2.4] {
            let adj = fq.inverse(&g, x).unwrap();
            let refl = fq.forward(&g, -x).unwrap();
            assert!((adj - refl).norm() < 1e-13 * refl.norm().max(1.0), "mu {v} x {x}");
        }
    }
}

#[test]
fn operator_relations() {
    let n = 24;
    for v in [0.0, 0.35, 1.75] {
        let (a, ad, q, p, j, f) = (
            op(v, OperatorTag::A, n),
            op(v, OperatorTag::Adag, n),
            op(v, OperatorTag::Q, n),
            op(v, OperatorTag::P, n),
            op(v, OperatorTag::J, n),
            op(v, OperatorTag::F, n),
        );
        // A e_0 = 0
        assert!(a.column(0).iter().all(|z| z.norm() == 0.0));
        // [A, A†] = 1 + 2μJ away from the truncation edge
        let comm = &a * &ad - &ad * &a;
        for k in 0..n - 1 {
            let want = 1.0 + 2.0 * v * if k % 2 == 0 { 1.0 } else { -1.0 };
            assert!((comm[(k, k)] - cx(want)).norm() < 1e-12, "mu {v} k {k}");
            assert!((j[(k, k)] - cx(if k % 2 == 0 { 1.0 } else { -1.0 })).norm() == 0.0);
        }
        // ℱ⁻¹Qℱ = P; ℱ is diagonal so this holds on the whole truncation
        let conj = f.adjoint() * &q * &f;
        assert!((conj - &p).iter().all(|z| z.norm() < 1e-14), "mu {v}");
        assert_eq!(operator_matrix(&mu(v), OperatorTag::Q, n).unwrap().bandwidth(), (1, 1));
    }
}

#[test]
fn parseval_defect_shrinks_with_basis() {
    let m = mu(0.9);
    let g = |x: f64| cx(1.0 / (1.0 + x * x) * (-x * x / 4.0).exp());
    let mut last = f64::INFINITY;
    for basis in [4, 8, 16, 32, 48] {
        let e = expand(&m, g, basis, 160).unwrap();
        assert!(e.parseval_defect > -1e-14 && e.parseval_defect <= last + 1e-15, "basis {basis}");
        last = e.parseval_defect;
    }
    assert!(last < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fourth_power_is_identity(v in -0.45f64..4.0, re in prop::collection::vec(-5.0f64..5.0, 1..20), im in -3.0f64..3.0) {
        let coeffs: Vec<Complex64> = re.iter().map(|&r| Complex64::new(r, im)).collect();
        let x = SpectralVector::new(mu(v), coeffs);
        let y = fourier_spectral(&fourier_spectral(&fourier_spectral(&fourier_spectral(&x))));
        prop_assert_eq!(x, y);
    }
}
