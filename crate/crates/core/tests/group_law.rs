use ceheis::boson::{build_representation, RepresentationParams};
use ceheis::fock::{exp_matrix, vacuum, FockOperator, FockSpace};
use ceheis::group::*;
use ceheis::lie::{ceheis_structure, AlgebraElement};
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn el(u: Complex64, v: Complex64, w: Complex64, y: Complex64) -> GroupElement {
    GroupElement::new(u, v, w, y)
}

fn coord() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(a, b)| c(a, b))
}

fn element() -> impl Strategy<Value = GroupElement> {
    (coord(), coord(), coord(), coord()).prop_map(|(u, v, w, y)| el(u, v, w, y))
}

fn real_element() -> impl Strategy<Value = GroupElement> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, coord()).prop_map(|(u, v, w, y)| GroupElement::real(u, v, w, y))
}

fn z_value() -> impl Strategy<Value = Complex64> {
    prop::sample::select(vec![c(1.0, 1.0), c(0.7, 0.2), c(0.0, 2.0), c(-3.0, 0.0), c(0.5, -1.5)])
}

/// Heisenberg product read off 3×3 unipotent matrices:
/// a ↦ E₁₂, a† ↦ E₂₃, h ↦ E₁₃, so `g(u, v, w)` has entries (w, v, u).
fn heisenberg_oracle(g1: &GroupElement, g2: &GroupElement) -> [Complex64; 3] {
    let m = |g: &GroupElement| [[1.0.into(), g.w, g.v], [0.0.into(), 1.0.into(), g.u], [0.0.into(), 0.0.into(), 1.0.into()]];
    let (x, y): ([[Complex64; 3]; 3], [[Complex64; 3]; 3]) = (m(g1), m(g2));
    let mut p = [[c(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                p[i][j] += x[i][k] * y[k][j];
            }
        }
    }
    [p[1][2], p[0][2], p[0][1]]
}

#[test]
fn compose_examples() {
    let (o, one) = (c(0.0, 0.0), c(1.0, 0.0));
    let g = compose(&el(o, o, one, o), &el(one, o, o, o), c(0.0, 1.0));
    assert_eq!(g.coords(), [one, one, one, o]);
    let g = compose(&el(o, one, o, o), &el(one, o, o, o), one);
    assert_eq!(g.coords(), [one, one, o, one]);
    let g = el(c(0.3, 0.1), c(-0.2, 0.0), c(0.5, 0.5), c(1.0, -1.0));
    assert_eq!(compose(&g, &GroupElement::identity(), c(2.0, 1.0)).coords(), g.coords());
    assert_eq!(compose(&GroupElement::identity(), &g, c(2.0, 1.0)).coords(), g.coords());
}

#[test]
fn inverse_examples() {
    let z = c(0.7, 0.2);
    let g = inverse(&el(c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)), z);
    assert_eq!(g.coords(), [c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let id = inverse(&GroupElement::identity(), z);
    assert_eq!(id.distance(&GroupElement::identity()), 0.0);
}

#[test]
fn real_flag_validation() {
    let mut g = GroupElement::real(0.1, 0.2, 0.3, c(0.0, 5.0));
    assert!(g.validate().is_ok());
    g.v = c(0.2, 1e-3);
    assert!(g.validate().is_err());
    assert!(el(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)).validate().is_ok());
}

#[test]
fn reorder_examples() {
    let z = c(0.0, 1.0);
    let w = reorder_a_adag(c(0.0, 0.0), c(0.8, 0.1), z);
    assert_eq!(w.exponents(), [c(0.8, 0.1), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let w = reorder_a_adag(c(1.0, 0.0), c(1.0, 0.0), z);
    assert_eq!(w.exponents(), [c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
    assert_eq!(reorder_weyl(c(2.0, 0.0), c(3.0, 0.0), c(1.0, -1.0), WeylCase::AH), c(6.0, 6.0));
    assert_eq!(reorder_weyl(c(2.0, 0.0), c(3.0, 0.0), c(1.0, -1.0), WeylCase::HAdag), c(6.0, -6.0));
    assert_eq!(reorder_weyl(c(0.0, 0.0), c(3.0, 0.0), c(1.0, -1.0), WeylCase::AH), c(0.0, 0.0));
}

#[test]
fn zassenhaus_examples() {
    let z = c(0.6, -1.3);
    let sc = ceheis_structure(z).unwrap();
    let x = AlgebraElement::basis(4, 1).scale(c(0.3, 0.0));
    let corr = zassenhaus_special(&x, &x, &sc).unwrap();
    assert!(corr.second.is_zero(0.0) && corr.third.is_zero(0.0));

    let (mu, lambda) = (c(0.4, 0.1), c(-0.2, 0.3));
    let corr = zassenhaus_special(&AlgebraElement::basis(4, 1).scale(mu), &AlgebraElement::basis(4, 0).scale(lambda), &sc).unwrap();
    let want2 = AlgebraElement::basis(4, 2).scale(mu * lambda / 2.0);
    let want3 = AlgebraElement::basis(4, 3).scale((-2.0 * lambda * lambda * mu * z.conj() + mu * mu * lambda * z) / 6.0);
    assert!(corr.second.distance(&want2) < 1e-15);
    assert!(corr.third.distance(&want3) < 1e-15);
}

#[test]
fn operator_checks() {
    let space = FockSpace::new(40).unwrap();
    let z = c(1.0, 1.0);
    let params = RepresentationParams::oracle_friendly(z).unwrap();
    let id = GroupElement::identity();
    assert_eq!(group_oracle_check(&id, &id, z, params, space).unwrap(), 0.0);
    let (o, one) = (c(0.0, 0.0), c(0.5, 0.0));
    let pairs = [
        (el(o, o, one, o), el(one, o, o, o)),
        (el(o, one, o, o), el(one, o, o, o)),
        (GroupElement::real(0.4, -0.3, 0.2, c(0.1, 0.1)), GroupElement::real(-0.5, 0.25, 0.45, c(0.0, -0.2))),
    ];
    for (g1, g2) in pairs {
        assert!(group_oracle_check(&g1, &g2, z, params, space).unwrap() <= 1e-7);
    }
    let (lambda, mu) = (c(0.4, -0.2), c(-0.3, 0.35));
    assert!(reorder_a_adag_check(lambda, mu, params, space).unwrap() <= 1e-7);
    assert!(reorder_weyl_check(lambda, mu, WeylCase::AH, params, space).unwrap() <= 1e-7);
    assert!(reorder_weyl_check(lambda, mu, WeylCase::HAdag, params, space).unwrap() <= 1e-7);
    for d in derivative_forms_check(lambda, mu, params, space).unwrap() {
        assert!(d <= 1e-7);
    }
    let sc = ceheis_structure(z).unwrap();
    let x = AlgebraElement::new(vec![c(0.2, 0.1), c(-0.3, 0.0), c(0.1, 0.2), c(0.4, 0.0)]);
    let y = AlgebraElement::new(vec![c(-0.1, 0.3), c(0.25, -0.2), c(0.0, -0.3), c(0.0, 0.1)]);
    assert!(zassenhaus_check(&x, &y, &sc, params, space).unwrap() <= 1e-7);
    let wrong = RepresentationParams::oracle_friendly(c(2.0, 0.0)).unwrap();
    assert!(group_oracle_check(&id, &id, z, wrong, space).is_err());
}

#[test]
fn ladder_word_derivative_in_lambda() {
    // d/dλ of e^{λa}e^{μa†} at λ = 0 is a e^{μa†} = e^{μa†}(a + μh + μ²z/2)
    let space = FockSpace::new(40).unwrap();
    let z = c(0.5, -1.5);
    let params = RepresentationParams::oracle_friendly(z).unwrap();
    let rep = build_representation(params, space).unwrap();
    let mu = c(0.3, 0.2);
    let h = 1e-4;
    let word = |l: f64| reorder_a_adag(c(l, 0.0), mu, z).operator(&rep).unwrap();
    let numeric = (&word(h) - &word(-h)) * (1.0 / (2.0 * h));
    let e_mu = exp_matrix(&rep.a_dag().scale(mu)).unwrap();
    let inner = &(rep.a() + &rep.h().scale(mu)) + &FockOperator::identity(40).scale(mu * mu * z / 2.0);
    let want = &e_mu * &inner;
    let phi = vacuum(space);
    let d = &numeric.apply(&phi) - &want.apply(&phi);
    assert!(d.max_abs_head(ORACLE_LEVELS) <= 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn associativity(g1 in element(), g2 in element(), g3 in element(), z in z_value()) {
        let left = compose(&compose(&g1, &g2, z), &g3, z);
        let right = compose(&g1, &compose(&g2, &g3, z), z);
        prop_assert!(left.distance(&right) <= 1e-10);
    }

    #[test]
    fn two_sided_identity_and_inverse(g in element(), z in z_value()) {
        let id = GroupElement::identity();
        prop_assert!(compose(&g, &id, z).distance(&g) <= 1e-12);
        prop_assert!(compose(&id, &g, z).distance(&g) <= 1e-12);
        let inv = inverse(&g, z);
        prop_assert!(compose(&g, &inv, z).distance(&id) <= 1e-12);
        prop_assert!(compose(&inv, &g, z).distance(&id) <= 1e-12);
    }

    #[test]
    fn real_subgroup_closed(g1 in real_element(), g2 in real_element(), z in z_value()) {
        let g = compose(&g1, &g2, z);
        prop_assert!(g.real_subgroup);
        prop_assert!(g.validate().is_ok());
        let inv = inverse(&g1, z);
        prop_assert!(inv.real_subgroup && inv.validate().is_ok());
    }

    #[test]
    fn heisenberg_reduction(g1 in element(), g2 in element()) {
        let g = compose(&g1, &g2, c(0.0, 0.0));
        let [u, v, w] = heisenberg_oracle(&g1, &g2);
        prop_assert!((g.u - u).norm() <= 1e-14);
        prop_assert!((g.v - v).norm() <= 1e-14);
        prop_assert!((g.w - w).norm() <= 1e-14);
        prop_assert!((g.y - (g1.y + g2.y)).norm() <= 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn operator_oracle_real_pairs(
        a in prop::array::uniform3(-0.5f64..0.5),
        b in prop::array::uniform3(-0.5f64..0.5),
        y in (-0.5f64..0.5, -0.5f64..0.5),
    ) {
        let z = c(1.0, 1.0);
        let params = RepresentationParams::oracle_friendly(z).unwrap();
        let g1 = GroupElement::real(a[0], a[1], a[2], c(y.0, y.1));
        let g2 = GroupElement::real(b[0], b[1], b[2], c(y.1, -y.0));
        prop_assert!(group_oracle_check(&g1, &g2, z, params, FockSpace::new(40).unwrap()).unwrap() <= 1e-7);
    }
}
