use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::commands::{group_fuzz, random_real_element};
use super::{check_dim, complex_arg, pair, CliResult, Format, UsageError, VerifyArgs, EXIT_FAIL, EXIT_PASS};
use crate::boson::{
    build_representation, exp_vector_action, structure_constant_defect, verify_ceccr, Branch, Generator,
    RepresentationParams,
};
use crate::error::Result;
use crate::fock::{exponential_vector, interior_projection, FockSpace};
use crate::group::{derivative_forms_check, group_oracle_check, reorder_a_adag_check, reorder_weyl_check,
                   zassenhaus_check, WeylCase};
use crate::lie::{adjoint, basis, bracket, ceheis_structure, derived_series, jacobi_defect, AlgebraElement,
                 StructureConstants};
use crate::real_form::eta4_defect;
use crate::splitting::{mgf_closed_form, mgf_oracle, mgf_params, ode_residuals, verify_splitting,
                       QuadraticExponentParams};
use crate::two_mode::{build_ccr_representation, build_quadratures, TwoModeSpace};

const RHOS: [f64; 3] = [-1.0, 0.0, 0.7];
const RS: [f64; 3] = [0.5, 1.0, 2.0];

struct Check {
    name: &'static str,
    worst: f64,
    tolerance: f64,
}

impl Check {
    fn pass(&self) -> bool {
        self.worst <= self.tolerance
    }
}

fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> AlgebraElement {
    AlgebraElement::new(
        (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
            .collect(),
    )
}

fn algebra_checks(sc: &StructureConstants, trials: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let n = sc.dim();
    let mut basis_jacobi: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let d = jacobi_defect(&sc.basis(i), &sc.basis(j), &sc.basis(k), sc)?;
                basis_jacobi = basis_jacobi.max(d.max_abs());
            }
        }
    }
    let (mut random_jacobi, mut antisym, mut star): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..trials {
        let (x, y, w) = (random_element(rng, n), random_element(rng, n), random_element(rng, n));
        random_jacobi = random_jacobi.max(jacobi_defect(&x, &y, &w, sc)?.max_abs());
        let xy = bracket(&x, &y, sc)?;
        antisym = antisym.max((&xy + &bracket(&y, &x, sc)?).max_abs());
        let lhs = adjoint(&xy, sc)?;
        let rhs = bracket(&adjoint(&y, sc)?, &adjoint(&x, sc)?, sc)?;
        star = star.max(lhs.distance(&rhs));
    }
    let dims: Vec<usize> = derived_series(sc).iter().map(Vec::len).collect();
    Ok(vec![
        Check { name: "jacobi-basis-triples", worst: basis_jacobi, tolerance: 1e-12 },
        Check { name: "jacobi-random-triples", worst: random_jacobi, tolerance: 1e-12 },
        Check { name: "antisymmetry", worst: antisym, tolerance: 1e-12 },
        Check { name: "star-compatibility", worst: star, tolerance: 1e-12 },
        Check {
            name: "derived-series-4-2-0",
            worst: if dims == [4, 2, 0] { 0.0 } else { 1.0 },
            tolerance: 0.0,
        },
    ])
}

fn boson_checks(z: Complex64, sc: &StructureConstants, dim: usize, margin: usize) -> Result<Vec<Check>> {
    let space = FockSpace::new(dim)?;
    let projector = interior_projection(space, margin)?;
    let (mut ceccr, mut table, mut duality, mut action): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let lambdas = [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, -1.0),
        Complex64::from_polar(0.8, 2.2),
    ];
    let levels = dim.saturating_sub(margin.max(4));
    for rho in RHOS {
        for r in RS {
            let params = RepresentationParams::new(z, rho, r, Branch::of(z))?;
            let rep = build_representation(params, space)?;
            ceccr = ceccr.max(verify_ceccr(&rep, z, margin)?.max());
            table = table.max(structure_constant_defect(&rep, sc, &projector)?);
            let (da, dh) = rep.duality_defect();
            duality = duality.max(da).max(dh);
            for &lambda in &lambdas {
                let y = exponential_vector(lambda, space);
                for g in Generator::ALL {
                    let got = exp_vector_action(g, params, lambda, space);
                    let want = rep.generator(g).apply(&y);
                    action = action.max((&got - &want).max_abs_head(levels));
                }
            }
        }
    }
    Ok(vec![
        Check { name: "boson-ceccr", worst: ceccr, tolerance: 1e-10 },
        Check { name: "boson-structure-constants", worst: table, tolerance: 1e-10 },
        Check { name: "boson-duality", worst: duality, tolerance: 0.0 },
        Check { name: "exp-vector-actions", worst: action, tolerance: 1e-8 },
    ])
}

fn splitting_checks(split_dim: usize) -> Result<Vec<Check>> {
    let space = FockSpace::new(split_dim)?;
    let mn = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(1.0, -1.0)];
    let (mut split, mut ode): (f64, f64) = (0.0, 0.0);
    for l in [-0.5, 0.0, 0.5, 1.0] {
        for m in mn {
            for n in mn {
                let q = QuadraticExponentParams::new(l, m, n)?;
                for s in [-0.2, 0.1, 0.2, 0.4] {
                    if 2.0 * l * s + 1.0 >= 0.5 {
                        split = split.max(verify_splitting(q, s, space)?);
                    }
                }
                for k in 0..20 {
                    let s = -0.2 + 0.03 * k as f64;
                    if 2.0 * l * s + 1.0 >= 0.5 {
                        ode = ode.max(ode_residuals(q, s, 1e-5)?.max());
                    }
                }
            }
        }
    }
    Ok(vec![
        Check { name: "splitting-formula", worst: split, tolerance: 1e-8 },
        Check { name: "splitting-odes", worst: ode, tolerance: 1e-8 },
    ])
}

fn mgf_checks(z: Complex64, dim: usize) -> Result<Vec<Check>> {
    let space = FockSpace::new(dim)?;
    let (mut rel, mut at_zero): (f64, f64) = (0.0, 0.0);
    for rho in RHOS {
        for r in RS {
            let params = RepresentationParams::new(z, rho, r, Branch::of(z))?;
            let q = mgf_params(params);
            let rep = build_representation(params, space)?;
            let x_norm = (&(rep.a() + rep.a_dag()) + rep.h()).frobenius_norm();
            at_zero = at_zero.max((mgf_oracle(params, 0.0, space)?.value - 1.0).abs());
            for k in 0..25 {
                let s = -0.3 + 0.025 * k as f64;
                if 2.0 * q.l * s + 1.0 < 0.5 || (s * x_norm).abs() > 50.0 {
                    continue;
                }
                let closed = mgf_closed_form(q, s)?.re;
                let oracle = mgf_oracle(params, s, space)?.value;
                rel = rel.max((closed - oracle).abs() / oracle.abs());
            }
        }
    }
    Ok(vec![
        Check { name: "mgf-closed-form-vs-oracle", worst: rel, tolerance: 1e-6 },
        Check { name: "mgf-at-zero", worst: at_zero, tolerance: 0.0 },
    ])
}

fn two_mode_checks(z: Complex64, dim: usize) -> Result<Vec<Check>> {
    let space = TwoModeSpace::new(dim)?;
    let p = space.interior_projection(4)?;
    let q = build_quadratures(space);
    let id = crate::fock::FockOperator::identity(space.total_dim());
    let half_i = id.scale(Complex64::new(0.0, 0.5));
    let mut quad: f64 = 0.0;
    let ops = [(&q.q1, &q.p1, true), (&q.q2, &q.p2, true), (&q.q1, &q.p2, false), (&q.q2, &q.p1, false)];
    for (x, y, same) in ops {
        let c = crate::fock::commutator(x, y);
        let d = if same { &c - &half_i } else { c };
        quad = quad.max((&d * &p).frobenius_norm());
    }
    let mut ccr: f64 = 0.0;
    for k in 0..5 {
        let r = -1.0 + 0.5 * k as f64;
        let c = Complex64::from_polar(0.5 * k as f64, 0.9 * k as f64);
        let rep = build_ccr_representation(z, r, c, space)?;
        ccr = ccr.max(crate::boson::verify_ceccr_projected(&rep, z, &p)?.max());
        let (da, dh) = rep.duality_defect();
        ccr = ccr.max(da).max(dh);
    }
    Ok(vec![
        Check { name: "two-mode-quadratures", worst: quad, tolerance: 1e-10 },
        Check { name: "two-mode-ceccr", worst: ccr, tolerance: 1e-9 },
    ])
}

fn group_checks(z: Complex64, sc: &StructureConstants, dim: usize, trials: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>> {
    let (assoc, ident, inv) = group_fuzz(z, trials, rng);
    let params = RepresentationParams::oracle_friendly(z)?;
    let space = FockSpace::new(dim)?;
    let mut oracle: f64 = 0.0;
    for _ in 0..10 {
        let (g1, g2) = (random_real_element(rng, 0.5), random_real_element(rng, 0.5));
        oracle = oracle.max(group_oracle_check(&g1, &g2, z, params, space)?);
    }
    let mut reorder: f64 = 0.0;
    for _ in 0..5 {
        let lam = Complex64::new(rng.gen_range(-0.5..=0.5), 0.0);
        let mu = Complex64::new(rng.gen_range(-0.5..=0.5), 0.0);
        reorder = reorder.max(reorder_a_adag_check(lam, mu, params, space)?);
        reorder = reorder.max(reorder_weyl_check(lam, mu, WeylCase::AH, params, space)?);
        reorder = reorder.max(reorder_weyl_check(lam, mu, WeylCase::HAdag, params, space)?);
        let x = sc.basis(basis::A_DAG).scale(mu);
        let y = &sc.basis(basis::A).scale(lam) + &sc.basis(basis::H).scale(mu * 0.5);
        reorder = reorder.max(zassenhaus_check(&x, &y, sc, params, space)?);
        for d in derivative_forms_check(lam, mu, params, space)? {
            reorder = reorder.max(d);
        }
    }
    Ok(vec![
        Check { name: "group-associativity", worst: assoc, tolerance: 1e-10 },
        Check { name: "group-identity", worst: ident, tolerance: 1e-12 },
        Check { name: "group-inverse", worst: inv, tolerance: 1e-12 },
        Check { name: "group-operator-oracle", worst: oracle, tolerance: 1e-7 },
        Check { name: "reordering-identities", worst: reorder, tolerance: 1e-7 },
    ])
}

pub(super) fn run(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    check_dim(args.dim, "--dim")?;
    check_dim(args.split_dim, "--split-dim")?;
    let z = complex_arg(&args.z);
    let mut sc = ceheis_structure(z)?;
    if let Some(m) = &args.mutate {
        sc = sc.with_perturbation(m[0], m[1], m[2], 1e-3)?;
    }
    if args.margin < 4 || args.margin >= args.dim {
        return Err(UsageError(format!("--margin must be in 4..{}, got {}", args.dim, args.margin)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);

    let mut checks = algebra_checks(&sc, args.trials, &mut rng)?;
    checks.push(Check { name: "eta4-identification", worst: eta4_defect(z)?, tolerance: 1e-12 });
    checks.extend(boson_checks(z, &sc, args.dim, args.margin)?);
    checks.extend(splitting_checks(args.split_dim)?);
    checks.extend(mgf_checks(z, args.dim)?);
    checks.extend(two_mode_checks(z, args.two_mode_dim)?);
    checks.extend(group_checks(z, &sc, args.dim, args.trials, &mut rng)?);

    let all_pass = checks.iter().all(Check::pass);
    match args.format {
        Format::Text => {
            for c in &checks {
                let tag = if c.pass() { "PASS" } else { "FAIL" };
                writeln!(out, "{tag}  {:<28} worst {:.3e}  tol {:.0e}", c.name, c.worst, c.tolerance)?;
            }
            let passed = checks.iter().filter(|c| c.pass()).count();
            writeln!(out, "{passed}/{} checks passed (z = {} {:+}i, seed {})", checks.len(), z.re, z.im, args.seed)?;
        }
        Format::Json => {
            let list: Vec<_> = checks
                .iter()
                .map(|c| json!({ "name": c.name, "worst": c.worst, "tolerance": c.tolerance, "pass": c.pass() }))
                .collect();
            let text = serde_json::to_string(&json!({
                "z": pair(z),
                "seed": args.seed,
                "checks": list,
                "pass": all_pass,
            }))
            .map_err(|e| UsageError(e.to_string()))?;
            writeln!(out, "{text}")?;
        }
    }
    Ok(if all_pass { EXIT_PASS } else { EXIT_FAIL })
}
