//! Finite-dimensional *-Lie algebras given by structure constants.
//!
//! An algebra is a bracket table over an ordered basis together with a star
//! map sending each basis vector to a phase times another basis vector. The
//! centrally extended Heisenberg algebra is built by [`ceheis_structure`] over
//! the fixed basis order (a, a†, h, E).

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivot threshold for rank-revealing elimination.
pub const PIVOT_TOL: f64 = 1e-12;

/// Basis indices of the centrally extended Heisenberg algebra.
pub mod basis {
    pub const A: usize = 0;
    pub const A_DAG: usize = 1;
    pub const H: usize = 2;
    pub const E: usize = 3;
    pub const NAMES: [&str; 4] = ["a", "a_dag", "h", "E"];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisLabel {
    pub index: usize,
    pub name: String,
}

/// Coefficient vector over the basis of some algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    coeffs: Vec<Complex64>,
}

impl AlgebraElement {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        Self { coeffs }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); dim])
    }

    /// The `index`-th basis vector.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[index] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> Complex64 {
        self.coeffs[index]
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect())
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest coefficientwise distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }

    fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                actual: self.dim(),
            })
        }
    }
}

impl Add<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        AlgebraElement::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect())
    }
}

impl Sub<&AlgebraElement> for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.dim(), rhs.dim(), "dimension mismatch");
        AlgebraElement::new(self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect())
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl Mul<Complex64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Complex64) -> AlgebraElement {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: Complex64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Image of a basis vector under the star map: `l_i* = phase · l_target`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StarImage {
    pub target: usize,
    pub phase: Complex64,
}

impl StarImage {
    pub fn fixed(index: usize) -> Self {
        Self {
            target: index,
            phase: Complex64::new(1.0, 0.0),
        }
    }
}

/// Bracket table `table[i][j] = [l_i, l_j]` plus the star map on basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    labels: Vec<BasisLabel>,
    table: Vec<Vec<AlgebraElement>>,
    star: Vec<StarImage>,
}

impl StructureConstants {
    /// Validates exact antisymmetry of the table and that the star map is an
    /// involution.
    pub fn new(names: &[&str], table: Vec<Vec<AlgebraElement>>, star: Vec<StarImage>) -> Result<Self> {
        let dim = names.len();
        if dim == 0 {
            return Err(Error::InvalidStructure("empty basis".into()));
        }
        if table.len() != dim || table.iter().any(|row| row.len() != dim) {
            return Err(Error::InvalidStructure("bracket table is not dim x dim".into()));
        }
        if star.len() != dim {
            return Err(Error::InvalidStructure("star map has wrong length".into()));
        }
        for (i, row) in table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                entry.check_dim(dim)?;
                if *entry != -&table[j][i] {
                    return Err(Error::InvalidStructure(format!("table not antisymmetric at ({i}, {j})")));
                }
            }
        }
        for (i, img) in star.iter().enumerate() {
            if img.target >= dim {
                return Err(Error::InvalidStructure(format!("star target out of range at {i}")));
            }
            let back = star[img.target];
            // (l_i*)* = conj(phase_i) phase_target l_i
            if back.target != i || (img.phase.conj() * back.phase - 1.0).norm() > PIVOT_TOL {
                return Err(Error::InvalidStructure(format!("star map is not an involution at {i}")));
            }
        }
        let labels = names
            .iter()
            .enumerate()
            .map(|(index, name)| BasisLabel {
                index,
                name: (*name).to_string(),
            })
            .collect();
        Ok(Self { labels, table, star })
    }

    /// All brackets zero, star fixing every basis vector.
    pub fn abelian(names: &[&str]) -> Result<Self> {
        let dim = names.len();
        let table = vec![vec![AlgebraElement::zero(dim); dim]; dim];
        Self::new(names, table, (0..dim).map(StarImage::fixed).collect())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<AlgebraElement>] {
        &self.table
    }

    pub fn entry(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.table[i][j]
    }

    pub fn star(&self) -> &[StarImage] {
        &self.star
    }

    pub fn basis(&self, index: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), index)
    }

    /// Copy with the structure constant c_{ij}^k shifted by `delta` (and
    /// c_{ji}^k by `-delta`, so the table stays antisymmetric).
    pub fn with_perturbation(&self, i: usize, j: usize, k: usize, delta: f64) -> Result<Self> {
        let dim = self.dim();
        if i >= dim || j >= dim || k >= dim {
            return Err(Error::InvalidParameter(format!("index out of range for dimension {dim}")));
        }
        if i == j {
            return Err(Error::InvalidParameter("a diagonal bracket cannot be perturbed antisymmetrically".into()));
        }
        let mut table = self.table.clone();
        table[i][j].coeffs[k] += delta;
        table[j][i].coeffs[k] -= delta;
        let names: Vec<&str> = self.labels.iter().map(|l| l.name.as_str()).collect();
        Self::new(&names, table, self.star.clone())
    }

    /// Largest coefficientwise difference between two bracket tables of the
    /// same shape.
    pub fn table_distance(&self, other: &[Vec<AlgebraElement>]) -> f64 {
        assert_eq!(other.len(), self.dim(), "dimension mismatch");
        self.table
            .iter()
            .zip(other)
            .flat_map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| a.distance(b)))
            .fold(0.0, f64::max)
    }

    /// Human-readable linear combination, e.g. `h + (1+2i) E`.
    pub fn describe(&self, x: &AlgebraElement) -> String {
        let mut out = String::new();
        for (c, label) in x.coeffs().iter().zip(&self.labels) {
            if c.norm() == 0.0 {
                continue;
            }
            let term = format_coefficient(*c);
            if out.is_empty() {
                match term.as_str() {
                    "" => {}
                    "-" => out.push('-'),
                    t => {
                        let _ = write!(out, "{t} ");
                    }
                }
            } else if let Some(rest) = term.strip_prefix('-') {
                if rest.is_empty() {
                    out.push_str(" - ");
                } else {
                    let _ = write!(out, " - {rest} ");
                }
            } else if term.is_empty() {
                out.push_str(" + ");
            } else {
                let _ = write!(out, " + {term} ");
            }
            out.push_str(&label.name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn format_coefficient(c: Complex64) -> String {
    if c.im == 0.0 {
        if c.re == 1.0 {
            String::new()
        } else if c.re == -1.0 {
            "-".into()
        } else {
            format!("{}", c.re)
        }
    } else if c.re == 0.0 {
        format!("{}i", c.im)
    } else {
        format!("({}{:+}i)", c.re, c.im)
    }
}

/// Structure constants of CEHeis over (a, a†, h, E):
/// `[a,a†] = h`, `[h,a†] = zE`, `[a,h] = z̄E`, E central; star swaps a and a†
/// and fixes h and E.
pub fn ceheis_structure(z: Complex64) -> Result<StructureConstants> {
    use basis::*;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidParameter("z must be finite".into()));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::TrivialExtension);
    }
    let zero = AlgebraElement::zero(4);
    let mut table = vec![vec![zero; 4]; 4];
    let mut set = |i: usize, j: usize, value: AlgebraElement| {
        table[j][i] = -&value;
        table[i][j] = value;
    };
    set(A, A_DAG, AlgebraElement::basis(4, H));
    set(H, A_DAG, AlgebraElement::basis(4, E).scale(z));
    set(A, H, AlgebraElement::basis(4, E).scale(z.conj()));

    let star = vec![
        StarImage::fixed(A_DAG),
        StarImage::fixed(A),
        StarImage::fixed(H),
        StarImage::fixed(E),
    ];
    StructureConstants::new(&NAMES, table, star)
}

/// Bilinear extension of the bracket table.
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement, sc: &StructureConstants) -> Result<AlgebraElement> {
    let dim = sc.dim();
    x.check_dim(dim)?;
    y.check_dim(dim)?;
    let mut out = vec![Complex64::new(0.0, 0.0); dim];
    for (i, &xi) in x.coeffs().iter().enumerate() {
        if xi.norm() == 0.0 {
            continue;
        }
        for (j, &yj) in y.coeffs().iter().enumerate() {
            let w = xi * yj;
            if w.norm() == 0.0 {
                continue;
            }
            for (o, &c) in out.iter_mut().zip(sc.entry(i, j).coeffs()) {
                *o += w * c;
            }
        }
    }
    Ok(AlgebraElement::new(out))
}

/// `[x,[y,w]] + [y,[w,x]] + [w,[x,y]]`.
pub fn jacobi_defect(
    x: &AlgebraElement,
    y: &AlgebraElement,
    w: &AlgebraElement,
    sc: &StructureConstants,
) -> Result<AlgebraElement> {
    let t1 = bracket(x, &bracket(y, w, sc)?, sc)?;
    let t2 = bracket(y, &bracket(w, x, sc)?, sc)?;
    let t3 = bracket(w, &bracket(x, y, sc)?, sc)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// Conjugate-linear extension of the star map.
pub fn adjoint(x: &AlgebraElement, sc: &StructureConstants) -> Result<AlgebraElement> {
    x.check_dim(sc.dim())?;
    let mut out = AlgebraElement::zero(sc.dim());
    for (c, img) in x.coeffs().iter().zip(sc.star()) {
        out.coeffs[img.target] += c.conj() * img.phase;
    }
    Ok(out)
}

/// Reduced row echelon basis of the span of `vectors`; zero rows dropped.
pub fn row_echelon(vectors: &[AlgebraElement], tol: f64) -> Vec<AlgebraElement> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let cols = first.dim();
    let mut rows: Vec<Vec<Complex64>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        let (best, best_abs) = (pivot_row..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .fold((pivot_row, -1.0), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best_abs <= tol {
            for row in rows.iter_mut().skip(pivot_row) {
                row[col] = Complex64::new(0.0, 0.0);
            }
            continue;
        }
        rows.swap(pivot_row, best);
        let inv = rows[pivot_row][col].inv();
        for v in rows[pivot_row].iter_mut() {
            *v *= inv;
        }
        rows[pivot_row][col] = Complex64::new(1.0, 0.0);
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row {
                continue;
            }
            let f = row[col];
            if f.norm() == 0.0 {
                continue;
            }
            for (v, p) in row.iter_mut().zip(&pivot) {
                *v -= f * p;
            }
            row[col] = Complex64::new(0.0, 0.0);
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows.into_iter().map(AlgebraElement::new).collect()
}

pub fn rank(vectors: &[AlgebraElement]) -> usize {
    row_echelon(vectors, PIVOT_TOL).len()
}

pub fn is_linearly_independent(vectors: &[AlgebraElement]) -> bool {
    rank(vectors) == vectors.len()
}

/// Bases of g ⊇ [g,g] ⊇ … until the series reaches {0} (an empty basis) or
/// stops shrinking.
pub fn derived_series(sc: &StructureConstants) -> Vec<Vec<AlgebraElement>> {
    let dim = sc.dim();
    let mut series = vec![(0..dim).map(|i| sc.basis(i)).collect::<Vec<_>>()];
    loop {
        let current = series.last().expect("series is never empty");
        if current.is_empty() {
            break;
        }
        let mut brackets = Vec::new();
        for (i, x) in current.iter().enumerate() {
            for y in &current[i + 1..] {
                brackets.push(bracket(x, y, sc).expect("basis vectors share the algebra dimension"));
            }
        }
        let next = row_echelon(&brackets, PIVOT_TOL);
        if next.len() == current.len() {
            break;
        }
        series.push(next);
    }
    series
}
