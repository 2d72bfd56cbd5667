//! Matrix exponential by scaling and squaring with diagonal Padé
//! approximants of degree 3, 5, 7, 9 or 13 (Higham's 2005 selection).

use ndarray::Array2;
use num_complex::Complex64;

use super::matmul;
use crate::error::{Error, Result};

const THETA: [(usize, f64); 4] = [
    (3, 1.495_585_217_958_292e-2),
    (5, 2.539_398_330_063_23e-1),
    (7, 9.504_178_996_162_932e-1),
    (9, 2.097_847_961_257_068),
];
const THETA_13: f64 = 5.371_920_351_148_152;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

fn one_norm(a: &Array2<Complex64>) -> f64 {
    a.columns()
        .into_iter()
        .map(|col| col.iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn identity(n: usize) -> Array2<Complex64> {
    Array2::from_diag_elem(n, Complex64::new(1.0, 0.0))
}

fn axpy(acc: &mut Array2<Complex64>, alpha: f64, x: &Array2<Complex64>) {
    acc.scaled_add(Complex64::new(alpha, 0.0), x);
}

/// exp(a). Fails on non-finite input or a singular Padé denominator.
pub fn expm(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if a.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite);
    }
    if n == 0 {
        return Ok(Array2::zeros((0, 0)));
    }
    let norm = one_norm(a);
    let eye = identity(n);

    for &(m, theta) in &THETA {
        if norm <= theta {
            let (u, v) = pade_low(a, &eye, m);
            return solve(&v - &u, &v + &u);
        }
    }

    let squarings = if norm > THETA_13 {
        (norm / THETA_13).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * Complex64::new(2f64.powi(-squarings), 0.0);
    let (u, v) = pade13(&scaled, &eye);
    let mut r = solve(&v - &u, &v + &u)?;
    for _ in 0..squarings {
        r = matmul(&r, &r);
    }
    if r.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::NonFinite);
    }
    Ok(r)
}

/// Odd part `u` and even part `v` of the degree-m approximant for m ≤ 9.
fn pade_low(a: &Array2<Complex64>, eye: &Array2<Complex64>, m: usize) -> (Array2<Complex64>, Array2<Complex64>) {
    let b: &[f64] = match m {
        3 => &B3,
        5 => &B5,
        7 => &B7,
        9 => &B9,
        _ => unreachable!("unsupported Padé degree {m}"),
    };
    let a2 = matmul(a, a);
    // even powers I, A², A⁴, …
    let mut powers = vec![eye.clone(), a2.clone()];
    while powers.len() < m.div_ceil(2) {
        let next = matmul(powers.last().expect("non-empty"), &a2);
        powers.push(next);
    }
    let n = a.nrows();
    let mut odd = Array2::<Complex64>::zeros((n, n));
    let mut v = Array2::<Complex64>::zeros((n, n));
    for (k, p) in powers.iter().enumerate() {
        axpy(&mut v, b[2 * k], p);
        if 2 * k + 1 < b.len() {
            axpy(&mut odd, b[2 * k + 1], p);
        }
    }
    (matmul(a, &odd), v)
}

fn pade13(a: &Array2<Complex64>, eye: &Array2<Complex64>) -> (Array2<Complex64>, Array2<Complex64>) {
    let b = &B13;
    let a2 = matmul(a, a);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a2, &a4);
    let n = a.nrows();

    let mut inner_u = Array2::<Complex64>::zeros((n, n));
    axpy(&mut inner_u, b[13], &a6);
    axpy(&mut inner_u, b[11], &a4);
    axpy(&mut inner_u, b[9], &a2);
    let mut odd = matmul(&a6, &inner_u);
    axpy(&mut odd, b[7], &a6);
    axpy(&mut odd, b[5], &a4);
    axpy(&mut odd, b[3], &a2);
    axpy(&mut odd, b[1], eye);
    let u = matmul(a, &odd);

    let mut inner_v = Array2::<Complex64>::zeros((n, n));
    axpy(&mut inner_v, b[12], &a6);
    axpy(&mut inner_v, b[10], &a4);
    axpy(&mut inner_v, b[8], &a2);
    let mut v = matmul(&a6, &inner_v);
    axpy(&mut v, b[6], &a6);
    axpy(&mut v, b[4], &a4);
    axpy(&mut v, b[2], &a2);
    axpy(&mut v, b[0], eye);
    (u, v)
}

/// Solves `lhs · x = rhs` by LU with partial pivoting.
fn solve(mut lhs: Array2<Complex64>, mut rhs: Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = lhs.nrows();
    let m = rhs.ncols();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| lhs[[x, col]].norm().total_cmp(&lhs[[y, col]].norm()))
            .expect("non-empty range");
        let p = lhs[[pivot, col]];
        if p.norm() == 0.0 || !p.norm().is_finite() {
            return Err(Error::Singular);
        }
        if pivot != col {
            for k in 0..n {
                lhs.swap([pivot, k], [col, k]);
            }
            for k in 0..m {
                rhs.swap([pivot, k], [col, k]);
            }
        }
        for r in col + 1..n {
            let f = lhs[[r, col]] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = lhs[[col, k]];
                lhs[[r, k]] -= f * v;
            }
            for k in 0..m {
                let v = rhs[[col, k]];
                rhs[[r, k]] -= f * v;
            }
        }
    }
    for col in (0..n).rev() {
        let p = lhs[[col, col]];
        for k in 0..m {
            let mut acc = rhs[[col, k]];
            for j in col + 1..n {
                acc -= lhs[[col, j]] * rhs[[j, k]];
            }
            rhs[[col, k]] = acc / p;
        }
    }
    Ok(rhs)
}
