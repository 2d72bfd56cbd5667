use ceheis::boson::*;
use ceheis::fock::*;
use ceheis::splitting::*;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn qp(l: f64, m: Complex64, n: Complex64) -> QuadraticExponentParams {
    QuadraticExponentParams::new(l, m, n).unwrap()
}

/// Integrates the three ODEs from w(0) = 0 with classical RK4.
fn rk4(p: QuadraticExponentParams, s_end: f64, steps: usize) -> [Complex64; 3] {
    let QuadraticExponentParams { l, m, n } = p;
    let f = |w: [Complex64; 3]| {
        [
            4.0 * l * w[0] * w[0] - 4.0 * l * w[0] + l,
            (4.0 * l * w[0] - 2.0 * l) * w[1] + 2.0 * m * w[0] + n,
            2.0 * l * w[0] + l * w[1] * w[1] - l + m * w[1],
        ]
    };
    let add = |a: [Complex64; 3], b: [Complex64; 3], t: f64| [a[0] + b[0] * t, a[1] + b[1] * t, a[2] + b[2] * t];
    let h = s_end / steps as f64;
    let mut w = [c(0.0, 0.0); 3];
    for _ in 0..steps {
        let k1 = f(w);
        let k2 = f(add(w, k1, h / 2.0));
        let k3 = f(add(w, k2, h / 2.0));
        let k4 = f(add(w, k3, h));
        for i in 0..3 {
            w[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
    }
    w
}

#[test]
fn closed_forms_match_integrated_odes() {
    for (l, m, n) in [(1.0, c(1.0, 0.0), c(0.0, 1.0)), (-0.5, c(0.5, 0.5), c(0.5, -0.5)), (0.0, c(2.0, 0.0), c(-1.0, 1.0))] {
        let p = qp(l, m, n);
        for s in [-0.3, 0.2, 0.45] {
            if 2.0 * l * s + 1.0 <= 0.2 {
                continue;
            }
            let w = closed_form_w(p, s).unwrap();
            let r = rk4(p, s, 2000);
            assert!((w.w1 - r[0]).norm() < 1e-11, "w1 L={l} s={s}");
            assert!((w.w2 - r[1]).norm() < 1e-11, "w2 L={l} s={s}");
            assert!((w.w3 - r[2]).norm() < 1e-11, "w3 L={l} s={s}");
        }
    }
}

#[test]
fn ode_residual_examples() {
    assert!(ode_residuals(qp(1.0, c(1.0, 0.0), c(0.0, 1.0)), 0.3, 1e-5).unwrap().max() <= 1e-8);
    assert!(ode_residuals(qp(0.0, c(1.5, -1.0), c(0.2, 0.7)), 0.3, 1e-5).unwrap().max() <= 1e-10);
    assert!(ode_residuals(qp(0.8, c(1.0, 0.0), c(1.0, -1.0)), 0.0, 1e-5).unwrap().max() <= 1e-8);
    assert!(ode_residuals(qp(1.0, c(0.0, 0.0), c(0.0, 0.0)), -0.5, 1e-5).is_err());
}

#[test]
fn riccati_canonical_form() {
    // V = w₁/L solves V′ = 1 + 2αV + βV² with α = −2L, β = 4L², so δ² = α² − β = 0
    for l in [-0.5, 0.3, 1.0, 2.0] {
        let (alpha, beta) = (-2.0 * l, 4.0 * l * l);
        assert_eq!(alpha * alpha - beta, 0.0);
        let p = qp(l, c(0.0, 0.0), c(0.0, 0.0));
        for k in 0..10 {
            let s = -0.15 + 0.04 * k as f64;
            let v = |s: f64| closed_form_w(p, s).unwrap().w1.re / l;
            let h = 1e-4;
            let dv = (v(s - 2.0 * h) - 8.0 * v(s - h) + 8.0 * v(s + h) - v(s + 2.0 * h)) / (12.0 * h);
            let vs = v(s);
            let rhs = 1.0 + 2.0 * alpha * vs + beta * vs * vs;
            assert!((dv - rhs).abs() < 1e-8 * rhs.abs().max(1.0), "L={l} s={s}: {dv} vs {rhs}");
        }
    }
}

#[test]
fn generator_equals_a_plus_a_dag_plus_h() {
    let s = FockSpace::new(30).unwrap();
    let p = interior_projection(s, 2).unwrap();
    for (z, rho, r) in [(c(2.0, 4.0), 0.0, 2.0), (c(0.0, 4.0), 0.0, 1.0), (c(-1.0, 1.0), 0.7, 0.5), (c(0.0, -3.0), 0.4, 2.0)] {
        let params = RepresentationParams::with_inferred_branch(z, rho, r).unwrap();
        let rep = build_representation(params, s).unwrap();
        let x = &(rep.a() + rep.a_dag()) + rep.h();
        let g = quadratic_generator(mgf_params(params), s);
        assert!((&(&x - &g) * &p).max_abs() < 1e-12, "z={z}");
    }
}

#[test]
fn splitting_examples() {
    let s48 = FockSpace::new(48).unwrap();
    assert_eq!(verify_splitting(qp(0.5, c(1.0, 0.0), c(1.0, -1.0)), 0.0, s48).unwrap(), 0.0);
    assert!(verify_splitting(qp(0.5, c(1.0, 0.0), c(1.0, -1.0)), 0.2, s48).unwrap() <= 1e-8);
    assert!(verify_splitting(qp(-0.5, c(0.5, 0.0), c(0.5, 0.0)), -0.2, s48).unwrap() <= 1e-8);
}

#[test]
fn splitting_tail_needs_larger_dimension_for_negative_ls() {
    // w₁ = −1/3 at L = 1, s = −0.2: the state's coordinates decay like (2/3)^{n/2}
    let p = qp(1.0, c(0.0, 0.0), c(1.0, 0.0));
    let at48 = verify_splitting(p, -0.2, FockSpace::new(48).unwrap()).unwrap();
    let at128 = verify_splitting(p, -0.2, FockSpace::new(128).unwrap()).unwrap();
    assert!(at48 > 1e-8);
    assert!(at128 <= 1e-8);
}

#[test]
fn mgf_examples() {
    let p = qp(0.7, c(1.0, 1.0), c(1.0, -1.0));
    assert_eq!(mgf_closed_form(p, 0.0).unwrap(), c(1.0, 0.0));
    let g = qp(0.0, c(1.5, 0.5), c(1.5, -0.5));
    for s in [-0.5, -0.1, 0.3, 0.5] {
        let want = (g.m * g.n * s * s / 2.0).exp();
        assert!((mgf_closed_form(g, s).unwrap() - want).norm() < 1e-14);
    }
    let rep = RepresentationParams::new(c(2.0, 4.0), 0.5, 8f64.sqrt(), Branch::ReNonzero).unwrap();
    let s = FockSpace::new(48).unwrap();
    let oracle = mgf_oracle(rep, 0.2, s).unwrap();
    assert!((oracle.value - 0.2f64.exp()).abs() < 1e-6);
    assert!(oracle.imag.abs() < 1e-10);
    assert_eq!(mgf_oracle(rep, 0.0, s).unwrap().value, 1.0);
}

#[test]
fn moments_from_oracle() {
    let s = FockSpace::new(40).unwrap();
    for (z, rho, r) in [(c(2.0, 4.0), 0.1, 1.0), (c(0.0, 3.0), 0.3, 1.0), (c(-1.0, 1.0), 0.0, 0.5)] {
        let params = RepresentationParams::with_inferred_branch(z, rho, r).unwrap();
        let q = mgf_params(params);
        let (m1, m2) = moments_closed_form(q);
        let f = |t: f64| mgf_oracle(params, t, s).map(|v| v.value);
        let h = 1e-3;
        let d1 = (f(h).unwrap() - f(-h).unwrap()) / (2.0 * h);
        assert!((d1 - m1.re).abs() < 1e-4, "first moment z={z}");
        let d2 = second_derivative_at_zero(f, 2e-2).unwrap();
        assert!((d2 - m2.re).abs() < 1e-4, "second moment z={z}: {d2} vs {}", m2.re);
        assert!(m2.im.abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn ode_residuals_small(
        l in prop::sample::select(vec![-0.5, 0.0, 0.5, 1.0]),
        m in (-1.0f64..1.0, -1.0f64..1.0),
        n in (-1.0f64..1.0, -1.0f64..1.0),
        s in -0.3f64..0.5,
    ) {
        prop_assume!(2.0 * l * s + 1.0 >= 0.5);
        let p = qp(l, c(m.0, m.1), c(n.0, n.1));
        prop_assert!(ode_residuals(p, s, 1e-5).unwrap().max() <= 1e-8);
    }

    #[test]
    fn mgf_real_for_conjugate_pair(l in -1.0f64..1.0, m in (-2.0f64..2.0, -2.0f64..2.0), s in -0.3f64..0.3) {
        prop_assume!(2.0 * l * s + 1.0 > 0.1);
        let m = c(m.0, m.1);
        let v = mgf_closed_form(qp(l, m, m.conj()), s).unwrap();
        prop_assert!(v.im.abs() <= 1e-12 * v.norm().max(1.0));
    }

    #[test]
    fn gamma_factor_identity(l in -1.0f64..1.0, m in (-2.0f64..2.0, -2.0f64..2.0), s in -0.3f64..0.3) {
        prop_assume!(2.0 * l * s + 1.0 > 0.1);
        let p = qp(l, c(m.0, m.1), c(m.0, -m.1));
        let stripped = mgf_closed_form(p, s).unwrap() * (-rational_exponent(p, s).unwrap()).exp();
        let want = (2.0 * l * s + 1.0).powf(-0.5);
        prop_assert!((stripped - want).norm() <= 1e-12 * want);
        prop_assert_eq!(gamma_factor(p, s).unwrap(), want);
    }

    #[test]
    fn gaussian_log_quadratic(im in prop::sample::select(vec![1.0f64, 2.25, 4.0]), re in prop::sample::select(vec![0.5f64, 2.0, -3.0]), s in -0.5f64..0.5) {
        // case (i) with r² = 4ρ Im z
        let rho: f64 = 1.0;
        let r = (4.0 * rho * im).sqrt();
        let z = c(re, im);
        let q = mgf_params(RepresentationParams::new(z, rho, r, Branch::ReNonzero).unwrap());
        prop_assert_eq!(q.l, 0.0);
        let log = mgf_closed_form(q, s).unwrap().ln();
        prop_assert!((log - q.m * q.n * s * s / 2.0).norm() <= 1e-10);
    }
}
