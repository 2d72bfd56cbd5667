//! Truncated one-mode Fock space: ladder matrices, exponential vectors and a
//! dense matrix exponential.
//!
//! The truncation is a hard cutoff at level `D − 1`: `b†` sends `e_{D−1}` to
//! zero. Polynomial identities in `b, b†` therefore hold exactly only on low
//! levels, which is what [`interior_projection`] selects.

mod expm;

use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{Array1, Array2};
use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Levels e₀ … e_{D−1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    dim: usize,
}

impl FockSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidParameter(format!("Fock space needs at least 2 levels, got {dim}")));
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Dense complex square matrix on a truncated Fock space (or on a tensor
/// product of them).
#[derive(Clone, Debug, PartialEq)]
pub struct FockOperator {
    matrix: Array2<Complex64>,
}

/// Row-oriented product that skips zero entries of the left factor. Ladder
/// polynomials are banded, so this stays cheap on tensor-product spaces.
pub(crate) fn matmul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let mut out = Array2::<Complex64>::zeros((a.nrows(), b.ncols()));
    for (a_row, mut out_row) in a.rows().into_iter().zip(out.rows_mut()) {
        for (k, &aik) in a_row.iter().enumerate() {
            if aik == ZERO {
                continue;
            }
            out_row.scaled_add(aik, &b.row(k));
        }
    }
    out
}

impl FockOperator {
    pub fn from_matrix(matrix: Array2<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.nrows(),
                actual: matrix.ncols(),
            });
        }
        Ok(Self { matrix })
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            matrix: Array2::zeros((dim, dim)),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            matrix: Array2::from_diag_elem(dim, ONE),
        }
    }

    pub fn diagonal(entries: &[Complex64]) -> Self {
        Self {
            matrix: Array2::from_diag(&Array1::from(entries.to_vec())),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[[row, col]]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self {
            matrix: self.matrix.t().mapv(|v| v.conj()),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            matrix: &self.matrix * factor,
        }
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        assert_eq!(self.dim(), v.dim(), "dimension mismatch");
        FockVector {
            coords: self.matrix.dot(&v.coords),
        }
    }

    pub fn powi(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.dim()), |acc, _| &acc * self)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.matrix.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry modulus within the leading `levels × levels` block.
    pub fn max_abs_block(&self, levels: usize) -> f64 {
        let n = levels.min(self.dim());
        self.matrix
            .slice(ndarray::s![..n, ..n])
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    /// `self ⊗ other` in the ordering where `other` is the fast index.
    pub fn kron(&self, other: &FockOperator) -> FockOperator {
        let (n, m) = (self.dim(), other.dim());
        let mut out = Array2::<Complex64>::zeros((n * m, n * m));
        for ((i, j), &a) in self.matrix.indexed_iter() {
            if a == ZERO {
                continue;
            }
            let mut block = out.slice_mut(ndarray::s![i * m..(i + 1) * m, j * m..(j + 1) * m]);
            block.scaled_add(a, &other.matrix);
        }
        FockOperator { matrix: out }
    }
}

impl Add<&FockOperator> for &FockOperator {
    type Output = FockOperator;
    fn add(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub<&FockOperator> for &FockOperator {
    type Output = FockOperator;
    fn sub(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul<&FockOperator> for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: &FockOperator) -> FockOperator {
        FockOperator {
            matrix: matmul(&self.matrix, &rhs.matrix),
        }
    }
}

impl Mul<Complex64> for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: Complex64) -> FockOperator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: f64) -> FockOperator {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

impl Neg for &FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        FockOperator { matrix: -&self.matrix }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $f:ident),*) => {$(
        impl $tr<FockOperator> for FockOperator {
            type Output = FockOperator;
            fn $f(self, rhs: FockOperator) -> FockOperator { (&self).$f(&rhs) }
        }
        impl $tr<&FockOperator> for FockOperator {
            type Output = FockOperator;
            fn $f(self, rhs: &FockOperator) -> FockOperator { (&self).$f(rhs) }
        }
        impl $tr<FockOperator> for &FockOperator {
            type Output = FockOperator;
            fn $f(self, rhs: FockOperator) -> FockOperator { self.$f(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Mul<Complex64> for FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: Complex64) -> FockOperator {
        self.scale(rhs)
    }
}

impl Mul<f64> for FockOperator {
    type Output = FockOperator;
    fn mul(self, rhs: f64) -> FockOperator {
        &self * rhs
    }
}

impl Neg for FockOperator {
    type Output = FockOperator;
    fn neg(self) -> FockOperator {
        -&self
    }
}

/// Coordinates in the orthonormal number basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    coords: Array1<Complex64>,
}

impl FockVector {
    pub fn new(coords: Vec<Complex64>) -> Self {
        Self {
            coords: Array1::from(coords),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            coords: Array1::zeros(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Array1<Complex64> {
        &self.coords
    }

    pub fn coord(&self, level: usize) -> Complex64 {
        self.coords[level]
    }

    /// ⟨self, other⟩, conjugate-linear in `self`.
    pub fn inner(&self, other: &FockVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coords.iter().zip(&other.coords).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coords: &self.coords * factor,
        }
    }

    /// Largest coordinate modulus on levels `0..levels`.
    pub fn max_abs_head(&self, levels: usize) -> f64 {
        self.coords.iter().take(levels).map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Euclidean norm of levels `0..levels`.
    pub fn norm_head(&self, levels: usize) -> f64 {
        self.coords.iter().take(levels).map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl Add<&FockVector> for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        FockVector {
            coords: &self.coords + &rhs.coords,
        }
    }
}

impl Sub<&FockVector> for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        FockVector {
            coords: &self.coords - &rhs.coords,
        }
    }
}

/// `b` with `b e_n = √n e_{n−1}`.
pub fn annihilator(space: FockSpace) -> FockOperator {
    let n = space.dim();
    let mut m = Array2::<Complex64>::zeros((n, n));
    for level in 1..n {
        m[[level - 1, level]] = Complex64::new((level as f64).sqrt(), 0.0);
    }
    FockOperator { matrix: m }
}

/// `b†`, the adjoint of [`annihilator`].
pub fn creator(space: FockSpace) -> FockOperator {
    annihilator(space).adjoint()
}

/// `b†b = diag(0, 1, …, D−1)`.
pub fn number(space: FockSpace) -> FockOperator {
    let entries: Vec<Complex64> = (0..space.dim()).map(|n| Complex64::new(n as f64, 0.0)).collect();
    FockOperator::diagonal(&entries)
}

pub fn commutator(x: &FockOperator, y: &FockOperator) -> FockOperator {
    &(x * y) - &(y * x)
}

/// Orthogonal projector onto span{e₀ … e_{D−1−margin}}.
pub fn interior_projection(space: FockSpace, margin: usize) -> Result<FockOperator> {
    if margin >= space.dim() {
        return Err(Error::InvalidParameter(format!(
            "margin {margin} leaves no interior in dimension {}",
            space.dim()
        )));
    }
    let keep = space.dim() - margin;
    let entries: Vec<Complex64> = (0..space.dim()).map(|n| if n < keep { ONE } else { ZERO }).collect();
    Ok(FockOperator::diagonal(&entries))
}

/// Φ = e₀.
pub fn vacuum(space: FockSpace) -> FockVector {
    let mut v = FockVector::zeros(space.dim());
    v.coords[0] = ONE;
    v
}

/// y(λ) with coordinates λⁿ/√(n!), so that `b y(λ) = λ y(λ)` and
/// `⟨y(λ), y(μ)⟩ = exp(λ̄μ)` in the untruncated space.
pub fn exponential_vector(lambda: Complex64, space: FockSpace) -> FockVector {
    derivative_vector(lambda, 0, space)
}

/// k-th λ-derivative of y(λ): coordinates n!/(n−k)! · λ^{n−k}/√(n!).
/// Equals `b†ᵏ y(λ)` in the untruncated space.
pub fn derivative_vector(lambda: Complex64, order: u32, space: FockSpace) -> FockVector {
    let k = order as usize;
    let mut coords = vec![ZERO; space.dim()];
    // λ^{n−k}/√(n!) built incrementally from n = k.
    let mut power_over_sqrt_fact = ONE;
    for n in 1..=k.min(space.dim()) {
        power_over_sqrt_fact /= (n as f64).sqrt();
    }
    for (n, slot) in coords.iter_mut().enumerate().skip(k) {
        if n > k {
            power_over_sqrt_fact *= lambda / (n as f64).sqrt();
        }
        let falling: f64 = ((n - k + 1)..=n).map(|j| j as f64).product();
        *slot = power_over_sqrt_fact * falling;
    }
    FockVector::new(coords)
}

/// Matrix exponential (scaling and squaring, Padé kernel).
pub fn exp_matrix(op: &FockOperator) -> Result<FockOperator> {
    Ok(FockOperator {
        matrix: expm::expm(&op.matrix)?,
    })
}
