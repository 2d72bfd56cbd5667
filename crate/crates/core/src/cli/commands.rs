use std::fs::File;
use std::io::{Read, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{check_dim, complex_arg, pair, rep_params, ClassifyArgs, CliResult, FuzzArgs, GroupArgs, GroupInput,
            GroupOp, MgfArgs, RepArgs, UsageError, EXIT_FAIL, EXIT_PASS};
use crate::boson::{build_representation, verify_ceccr, verify_ceccr_projected, CeccrDefect, RepresentationParams,
                   RepresentedAlgebra};
use crate::fock::{FockOperator, FockSpace};
use crate::group::{compose, group_oracle_check, inverse, GroupElement};
use crate::real_form::{eta4_defect, eta4_isomorphism, to_real_form, Eta4Case, RealFormParams, ETA4_NAMES};
use crate::splitting::{mgf_closed_form, mgf_oracle, mgf_params};
use crate::two_mode::{build_ccr_representation, CcrCase, TwoModeSpace};

fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), UsageError> {
    let text = serde_json::to_string(value).map_err(|e| UsageError(e.to_string()))?;
    writeln!(out, "{text}")?;
    Ok(())
}

/// Evenly spaced points from `min` to `max` inclusive.
fn s_grid(min: f64, max: f64, step: f64) -> Result<Vec<f64>, UsageError> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(UsageError(format!("--s-step must be positive, got {step}")));
    }
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(UsageError(format!("empty s range [{min}, {max}]")));
    }
    let ratio = (max - min) / step;
    let n = (ratio + 1e-9).floor() as usize;
    if (ratio - n as f64).abs() <= 1e-9 && n > 0 {
        // the step divides the range: interpolate so both ends and 0 are hit exactly
        return Ok((0..=n).map(|k| (min * (n - k) as f64 + max * k as f64) / n as f64).collect());
    }
    Ok((0..=n).map(|k| min + k as f64 * step).collect())
}

pub(super) fn mgf(args: &MgfArgs, out: &mut dyn Write) -> CliResult {
    check_dim(args.dim, "--dim")?;
    let params = rep_params(&args.rep)?;
    let q = mgf_params(params);
    let space = FockSpace::new(args.dim)?;
    let grid = s_grid(args.s_min.unwrap_or(-args.s_max), args.s_max, args.s_step)?;

    let mut rows = Vec::with_capacity(grid.len());
    let mut worst: f64 = 0.0;
    for &s in &grid {
        let closed = mgf_closed_form(q, s)?.re;
        let oracle = mgf_oracle(params, s, space)?.value;
        let abs = (closed - oracle).abs();
        let rel = abs / oracle.abs();
        worst = worst.max(rel);
        rows.push([sci(s), sci(closed), sci(oracle), sci(abs), sci(rel)]);
    }

    let mut writer = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| UsageError(e.to_string());
    writer
        .write_record(["s", "closed_form", "oracle", "abs_error", "rel_error"])
        .map_err(csv_err)?;
    for row in &rows {
        writer.write_record(row).map_err(csv_err)?;
    }
    let bytes = writer.into_inner().map_err(|e| UsageError(e.to_string()))?;
    match &args.output {
        Some(path) => File::create(path)?.write_all(&bytes)?,
        None => out.write_all(&bytes)?,
    }
    Ok(if worst <= args.tol { EXIT_PASS } else { EXIT_FAIL })
}

fn matrix_json(op: &FockOperator) -> Value {
    let rows: Vec<Value> = op
        .matrix()
        .rows()
        .into_iter()
        .map(|row| Value::Array(row.iter().map(|c| json!(pair(*c))).collect()))
        .collect();
    Value::Array(rows)
}

fn defect_json(d: &CeccrDefect) -> Value {
    json!({
        "a_adag_minus_h": d.a_adag,
        "h_adag_minus_z": d.h_adag,
        "a_h_minus_zbar": d.a_h,
    })
}

fn rep_report(rep: &RepresentedAlgebra, defect: &CeccrDefect, tol: f64, dump: bool, mut head: Value) -> (Value, bool) {
    let (a_dual, h_dual) = rep.duality_defect();
    let pass = defect.max() <= tol && a_dual == 0.0 && h_dual == 0.0;
    let obj = head.as_object_mut().expect("object");
    obj.insert("residuals".into(), defect_json(defect));
    obj.insert("duality".into(), json!({ "a_dag_minus_adjoint_a": a_dual, "h_minus_adjoint_h": h_dual }));
    obj.insert("tolerance".into(), json!(tol));
    obj.insert("pass".into(), json!(pass));
    if dump {
        obj.insert(
            "matrices".into(),
            json!({
                "a": matrix_json(rep.a()),
                "a_dag": matrix_json(rep.a_dag()),
                "h": matrix_json(rep.h()),
                "E": matrix_json(rep.e()),
            }),
        );
    }
    (head, pass)
}

pub(super) fn rep(args: &RepArgs, out: &mut dyn Write) -> CliResult {
    let z = complex_arg(&args.rep.z);
    let (report, pass) = if args.two_mode {
        let space = TwoModeSpace::new(args.dim_per_mode)?;
        let case = CcrCase::of(z)?;
        let c = complex_arg(&args.c);
        let rep = build_ccr_representation(z, args.rep.r, c, space)?;
        let p = space.interior_projection(args.margin)?;
        let defect = verify_ceccr_projected(&rep, z, &p)?;
        let head = json!({
            "kind": "two-mode",
            "z": pair(z),
            "case": case.name(),
            "r": args.rep.r,
            "c": pair(c),
            "dim_per_mode": args.dim_per_mode,
            "margin": args.margin,
        });
        rep_report(&rep, &defect, args.tol.unwrap_or(1e-9), args.dump, head)
    } else {
        check_dim(args.dim, "--dim")?;
        let params = rep_params(&args.rep)?;
        let rep = build_representation(params, FockSpace::new(args.dim)?)?;
        let defect = verify_ceccr(&rep, z, args.margin)?;
        let head = json!({
            "kind": "boson",
            "z": pair(z),
            "branch": params.branch().name(),
            "rho": params.rho(),
            "r": params.r(),
            "dim": args.dim,
            "margin": args.margin,
        });
        rep_report(&rep, &defect, args.tol.unwrap_or(1e-10), args.dump, head)
    };
    emit_json(out, &report)?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

type Coords = [[f64; 2]; 4];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposeInput {
    z: [f64; 2],
    g1: Coords,
    g2: Coords,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InverseInput {
    z: [f64; 2],
    g: Coords,
}

fn element(c: &Coords) -> GroupElement {
    let [u, v, w, y] = c.map(|p| Complex64::new(p[0], p[1]));
    let mut g = GroupElement::new(u, v, w, y);
    g.real_subgroup = [u, v, w].iter().all(|x| x.im == 0.0);
    g
}

fn element_json(g: &GroupElement) -> Value {
    json!(g.coords().map(pair))
}

fn read_input(input: &GroupInput) -> Result<String, UsageError> {
    if let Some(text) = &input.json {
        return Ok(text.clone());
    }
    let mut text = String::new();
    if input.input == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        File::open(&input.input)?.read_to_string(&mut text)?;
    }
    Ok(text)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, UsageError> {
    serde_json::from_str(text).map_err(|e| UsageError(format!("invalid input JSON: {e}")))
}

pub(super) fn group(args: &GroupArgs, out: &mut dyn Write) -> CliResult {
    match &args.op {
        GroupOp::Compose(input) => {
            let inp: ComposeInput = parse(&read_input(input)?)?;
            let z = Complex64::new(inp.z[0], inp.z[1]);
            let g = compose(&element(&inp.g1), &element(&inp.g2), z);
            emit_json(
                out,
                &json!({ "z": pair(z), "result": element_json(&g), "real_subgroup": g.real_subgroup }),
            )?;
            Ok(EXIT_PASS)
        }
        GroupOp::Inverse(input) => {
            let inp: InverseInput = parse(&read_input(input)?)?;
            let z = Complex64::new(inp.z[0], inp.z[1]);
            let g = inverse(&element(&inp.g), z);
            emit_json(
                out,
                &json!({ "z": pair(z), "result": element_json(&g), "real_subgroup": g.real_subgroup }),
            )?;
            Ok(EXIT_PASS)
        }
        GroupOp::Fuzz(f) => fuzz(f, out),
    }
}

pub(crate) fn random_element(rng: &mut ChaCha8Rng, radius: f64) -> GroupElement {
    let mut c = || Complex64::new(rng.gen_range(-radius..=radius), rng.gen_range(-radius..=radius));
    GroupElement::new(c(), c(), c(), c())
}

pub(crate) fn random_real_element(rng: &mut ChaCha8Rng, radius: f64) -> GroupElement {
    let mut x = || rng.gen_range(-radius..=radius);
    let (u, v, w) = (x(), x(), x());
    let y = Complex64::new(x(), x());
    GroupElement::real(u, v, w, y)
}

/// Worst associativity, identity and inverse residuals over `trials`
/// random elements with coordinates in [−1, 1].
pub(crate) fn group_fuzz(z: Complex64, trials: usize, rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let id = GroupElement::identity();
    let (mut assoc, mut ident, mut inv): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..trials {
        let (g1, g2, g3) = (random_element(rng, 1.0), random_element(rng, 1.0), random_element(rng, 1.0));
        let left = compose(&compose(&g1, &g2, z), &g3, z);
        let right = compose(&g1, &compose(&g2, &g3, z), z);
        assoc = assoc.max(left.distance(&right));
        ident = ident
            .max(compose(&g1, &id, z).distance(&g1))
            .max(compose(&id, &g1, z).distance(&g1));
        let gi = inverse(&g1, z);
        inv = inv
            .max(compose(&g1, &gi, z).distance(&id))
            .max(compose(&gi, &g1, z).distance(&id));
    }
    (assoc, ident, inv)
}

fn fuzz(args: &FuzzArgs, out: &mut dyn Write) -> CliResult {
    check_dim(args.dim, "--dim")?;
    let z = complex_arg(&args.z);
    let params = RepresentationParams::oracle_friendly(z)?;
    let space = FockSpace::new(args.dim)?;
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (assoc, ident, inv) = group_fuzz(z, args.trials, &mut rng);
    let mut oracle: f64 = 0.0;
    for _ in 0..args.oracle_samples {
        let (g1, g2) = (random_real_element(&mut rng, 0.5), random_real_element(&mut rng, 0.5));
        oracle = oracle.max(group_oracle_check(&g1, &g2, z, params, space)?);
    }
    let pass = assoc <= 1e-10 && ident <= 1e-12 && inv <= 1e-12 && oracle <= 1e-7;
    emit_json(
        out,
        &json!({
            "z": pair(z),
            "seed": args.seed,
            "trials": args.trials,
            "oracle_samples": args.oracle_samples,
            "associativity": assoc,
            "identity": ident,
            "inverse": inv,
            "operator_oracle": oracle,
            "pass": pass,
        }),
    )?;
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

pub(super) fn classify(args: &ClassifyArgs, out: &mut dyn Write) -> CliResult {
    let z = complex_arg(&args.z);
    let params = RealFormParams::from_z(z)?;
    let change = eta4_isomorphism(params.c, params.b)?;
    let real = to_real_form(z)?;
    let case = Eta4Case::of(params);
    let defect = eta4_defect(z)?;
    let named: Vec<(&str, String)> = ETA4_NAMES
        .iter()
        .zip(change.rows())
        .map(|(name, row)| (*name, real.describe(row)))
        .collect();
    let pass = defect <= 1e-12;
    match args.format {
        super::Format::Text => {
            writeln!(out, "z = {} {:+}i", z.re, z.im)?;
            writeln!(out, "c = {}, b = {}", params.c, params.b)?;
            writeln!(out, "case: {}", case.name())?;
            // e4 first: it is the generator acting on the chain e1 -> e2 -> e3
            for idx in [3, 0, 1, 2] {
                writeln!(out, "{} = {}", named[idx].0, named[idx].1)?;
            }
            writeln!(out, "[e4,e1] = e2, [e4,e2] = e3; defect {}", sci(defect))?;
        }
        super::Format::Json => {
            let basis: serde_json::Map<String, Value> =
                named.iter().map(|(n, s)| (n.to_string(), json!(s))).collect();
            let rows: Vec<Value> = change
                .rows()
                .iter()
                .map(|r| json!(r.coeffs().iter().map(|c| pair(*c)).collect::<Vec<_>>()))
                .collect();
            emit_json(
                out,
                &json!({
                    "z": pair(z),
                    "c": params.c,
                    "b": params.b,
                    "case": case.name(),
                    "basis": basis,
                    "rows": rows,
                    "defect": defect,
                    "pass": pass,
                }),
            )?;
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}
