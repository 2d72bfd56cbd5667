//! The real form (p, q, H, E) of CEHeis and its identification with the
//! classified solvable algebra η₄.
//!
//! With `a† = p + iq`, `a = p − iq`, `H = −ih/2` the brackets become
//! `[p,q] = H`, `[q,H] = cE`, `[H,p] = bE` where `c = Re z / 2`, `b = Im z / 2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lie::{self, AlgebraElement, StarImage, StructureConstants, PIVOT_TOL};

pub mod real_basis {
    pub const P: usize = 0;
    pub const Q: usize = 1;
    pub const H: usize = 2;
    pub const E: usize = 3;
    pub const NAMES: [&str; 4] = ["p", "q", "H", "E"];
}

pub const ETA4_NAMES: [&str; 4] = ["e1", "e2", "e3", "e4"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RealFormParams {
    pub c: f64,
    pub b: f64,
}

impl RealFormParams {
    pub fn new(c: f64, b: f64) -> Result<Self> {
        if !(c.is_finite() && b.is_finite()) {
            return Err(Error::InvalidParameter("c and b must be finite".into()));
        }
        if c == 0.0 && b == 0.0 {
            return Err(Error::TrivialExtension);
        }
        Ok(Self { c, b })
    }

    pub fn from_z(z: Complex64) -> Result<Self> {
        Self::new(z.re / 2.0, z.im / 2.0)
    }

    pub fn z(&self) -> Complex64 {
        c(2.0 * self.c, 2.0 * self.b)
    }
}

/// Real structure constants over (p, q, H, E). The star fixes p, q, E and
/// negates H.
pub fn to_real_form(z: Complex64) -> Result<StructureConstants> {
    use real_basis::*;
    let params = RealFormParams::from_z(z)?;
    let mut table = vec![vec![AlgebraElement::zero(4); 4]; 4];
    let mut set = |i: usize, j: usize, v: AlgebraElement| {
        table[j][i] = -&v;
        table[i][j] = v;
    };
    set(P, Q, AlgebraElement::basis(4, H));
    set(Q, H, AlgebraElement::basis(4, E).scale(c(params.c, 0.0)));
    set(H, P, AlgebraElement::basis(4, E).scale(c(params.b, 0.0)));
    let star = vec![
        StarImage::fixed(P),
        StarImage::fixed(Q),
        StarImage {
            target: H,
            phase: c(-1.0, 0.0),
        },
        StarImage::fixed(E),
    ];
    StructureConstants::new(&NAMES, table, star)
}

/// Inverse of `z ↦ (Re z / 2, Im z / 2)`.
pub fn from_real_form(c_real: f64, b_real: f64) -> Result<Complex64> {
    Ok(RealFormParams::new(c_real, b_real)?.z())
}

/// a, a†, h, E written in the (p, q, H, E) basis.
pub fn ceheis_generators_in_real_basis() -> [AlgebraElement; 4] {
    [
        AlgebraElement::new(vec![c(1.0, 0.0), c(0.0, -1.0), c(0.0, 0.0), c(0.0, 0.0)]),
        AlgebraElement::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0)]),
        AlgebraElement::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 2.0), c(0.0, 0.0)]),
        AlgebraElement::basis(4, real_basis::E),
    ]
}

/// p, q, H, E written in the (a, a†, h, E) basis, as a basis change from
/// CEHeis to its real form.
pub fn real_basis_in_ceheis() -> BasisChange {
    BasisChange::new(vec![
        AlgebraElement::new(vec![c(0.5, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
        AlgebraElement::new(vec![c(0.0, 0.5), c(0.0, -0.5), c(0.0, 0.0), c(0.0, 0.0)]),
        AlgebraElement::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, -0.5), c(0.0, 0.0)]),
        AlgebraElement::basis(4, 3),
    ])
    .expect("fixed invertible change")
}

/// A change of basis. Row `k` holds the old-basis coefficients of the k-th
/// new basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisChange {
    rows: Vec<AlgebraElement>,
}

impl BasisChange {
    pub fn new(rows: Vec<AlgebraElement>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.dim() != n) {
            return Err(Error::InvalidParameter("basis change must be square".into()));
        }
        let change = Self { rows };
        if change.determinant().norm() <= PIVOT_TOL {
            return Err(Error::Singular);
        }
        Ok(change)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[AlgebraElement] {
        &self.rows
    }

    pub fn new_basis_vector(&self, k: usize) -> &AlgebraElement {
        &self.rows[k]
    }

    fn matrix(&self) -> Vec<Vec<Complex64>> {
        self.rows.iter().map(|r| r.coeffs().to_vec()).collect()
    }

    pub fn determinant(&self) -> Complex64 {
        let mut m = self.matrix();
        let n = m.len();
        let mut det = c(1.0, 0.0);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
                .expect("non-empty range");
            if m[pivot][col].norm() == 0.0 {
                return c(0.0, 0.0);
            }
            if pivot != col {
                m.swap(pivot, col);
                det = -det;
            }
            det *= m[col][col];
            let pivot_row = m[col].clone();
            for row in m.iter_mut().skip(col + 1) {
                let f = row[col] / pivot_row[col];
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *x -= f * p;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<BasisChange> {
        let n = self.dim();
        let mut m = self.matrix();
        let mut inv: Vec<Vec<Complex64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
                .expect("non-empty range");
            if m[pivot][col].norm() <= PIVOT_TOL {
                return Err(Error::Singular);
            }
            m.swap(pivot, col);
            inv.swap(pivot, col);
            let p = m[col][col].inv();
            for k in 0..n {
                m[col][k] *= p;
                inv[col][k] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = m[r][col];
                for k in 0..n {
                    let (mv, iv) = (m[col][k], inv[col][k]);
                    m[r][k] -= f * mv;
                    inv[r][k] -= f * iv;
                }
            }
        }
        Ok(Self {
            rows: inv.into_iter().map(AlgebraElement::new).collect(),
        })
    }

    /// New-basis coordinates of a vector given in old-basis coordinates.
    pub fn to_new_coordinates(&self, old: &AlgebraElement) -> Result<AlgebraElement> {
        let inv = self.inverse()?;
        let n = self.dim();
        let out = (0..n)
            .map(|k| (0..n).map(|j| old.coeff(j) * inv.rows[j].coeff(k)).sum())
            .collect();
        Ok(AlgebraElement::new(out))
    }
}

/// Bracket table of `sc` rewritten in the basis described by `change`.
pub fn pushforward_brackets(sc: &StructureConstants, change: &BasisChange) -> Result<Vec<Vec<AlgebraElement>>> {
    if change.dim() != sc.dim() {
        return Err(Error::DimensionMismatch {
            expected: sc.dim(),
            actual: change.dim(),
        });
    }
    let inv = change.inverse()?;
    let n = sc.dim();
    let mut table = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let old = lie::bracket(&change.rows[i], &change.rows[j], sc)?;
            let coords = (0..n)
                .map(|k| (0..n).map(|l| old.coeff(l) * inv.rows[l].coeff(k)).sum())
                .collect();
            row.push(AlgebraElement::new(coords));
        }
        table.push(row);
    }
    Ok(table)
}

/// η₄: `[e4,e1] = e2`, `[e4,e2] = e3`, all other brackets zero. The star
/// negates e2 (it is the image of the skew-adjoint H) and fixes the rest.
pub fn eta4_structure() -> StructureConstants {
    let mut table = vec![vec![AlgebraElement::zero(4); 4]; 4];
    let mut set = |i: usize, j: usize, v: AlgebraElement| {
        table[j][i] = -&v;
        table[i][j] = v;
    };
    set(3, 0, AlgebraElement::basis(4, 1));
    set(3, 1, AlgebraElement::basis(4, 2));
    let star = vec![
        StarImage::fixed(0),
        StarImage {
            target: 1,
            phase: c(-1.0, 0.0),
        },
        StarImage::fixed(2),
        StarImage::fixed(3),
    ];
    StructureConstants::new(&ETA4_NAMES, table, star).expect("fixed valid table")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Eta4Case {
    /// b = 0, c ≠ 0
    RealZ,
    /// c = 0, b ≠ 0
    ImaginaryZ,
    /// b ≠ 0 and c ≠ 0
    Generic,
}

impl Eta4Case {
    pub fn of(params: RealFormParams) -> Self {
        if params.b == 0.0 {
            Eta4Case::RealZ
        } else if params.c == 0.0 {
            Eta4Case::ImaginaryZ
        } else {
            Eta4Case::Generic
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Eta4Case::RealZ => "b=0",
            Eta4Case::ImaginaryZ => "c=0",
            Eta4Case::Generic => "b,c nonzero",
        }
    }
}

/// Basis change from (p, q, H, E) to (e1, e2, e3, e4) identifying the real
/// form with η₄.
///
/// In the generic case the rotated generator is `q̂ = αp + βq` with the fixed
/// choice `α = c`, `β = b` (so `βc − αb = 0`), `p̂ = p/β` and `d = b/β`.
pub fn eta4_isomorphism(c_real: f64, b_real: f64) -> Result<BasisChange> {
    use real_basis::*;
    let params = RealFormParams::new(c_real, b_real)?;
    let v = |entries: &[(usize, f64)]| {
        let mut x = AlgebraElement::zero(4);
        for &(i, coeff) in entries {
            x = &x + &AlgebraElement::basis(4, i).scale(c(coeff, 0.0));
        }
        x
    };
    let (e1, e2, e3, e4) = match Eta4Case::of(params) {
        Eta4Case::RealZ => (v(&[(P, 1.0)]), v(&[(H, -1.0)]), v(&[(E, -params.c)]), v(&[(Q, 1.0)])),
        Eta4Case::ImaginaryZ => (v(&[(Q, 1.0)]), v(&[(H, 1.0)]), v(&[(E, -params.b)]), v(&[(P, 1.0)])),
        Eta4Case::Generic => {
            let (alpha, beta) = (params.c, params.b);
            let d = params.b / beta;
            (
                v(&[(P, alpha), (Q, beta)]),
                v(&[(H, 1.0)]),
                v(&[(E, -d)]),
                v(&[(P, 1.0 / beta)]),
            )
        }
    };
    BasisChange::new(vec![e1, e2, e3, e4])
}

/// Largest coefficient of (pushed-forward real form − η₄ table).
pub fn eta4_defect(z: Complex64) -> Result<f64> {
    let params = RealFormParams::from_z(z)?;
    let change = eta4_isomorphism(params.c, params.b)?;
    let pushed = pushforward_brackets(&to_real_form(z)?, &change)?;
    Ok(eta4_structure().table_distance(&pushed))
}

#[cfg(test)]
mod tests {
    use super::real_basis::*;
    use super::*;
    use crate::lie::{adjoint, ceheis_structure};

    fn e(i: usize) -> AlgebraElement {
        AlgebraElement::basis(4, i)
    }

    #[test]
    fn params_from_z() {
        assert_eq!(RealFormParams::from_z(c(2.0, 4.0)).unwrap(), RealFormParams { c: 1.0, b: 2.0 });
        assert_eq!(RealFormParams::from_z(c(2.0, 0.0)).unwrap(), RealFormParams { c: 1.0, b: 0.0 });
        assert_eq!(RealFormParams::from_z(c(0.0, 0.0)), Err(Error::TrivialExtension));
    }

    #[test]
    fn real_form_table() {
        let sc = to_real_form(c(2.0, 4.0)).unwrap();
        assert_eq!(*sc.entry(P, Q), e(H));
        assert_eq!(*sc.entry(Q, H), e(E));
        assert_eq!(*sc.entry(H, P), e(E).scale(c(2.0, 0.0)));
        assert!(sc.entry(P, E).is_zero(0.0));
    }

    #[test]
    fn inverse_map_examples() {
        assert_eq!(from_real_form(1.0, 2.0).unwrap(), c(2.0, 4.0));
        assert_eq!(from_real_form(1.0, 0.0).unwrap(), c(2.0, 0.0));
        assert_eq!(from_real_form(0.0, 3.0).unwrap(), c(0.0, 6.0));
        assert_eq!(from_real_form(0.0, 0.0), Err(Error::TrivialExtension));
    }

    #[test]
    fn skew_adjoint_h() {
        let sc = to_real_form(c(1.0, -0.5)).unwrap();
        assert_eq!(adjoint(&e(P), &sc).unwrap(), e(P));
        assert_eq!(adjoint(&e(Q), &sc).unwrap(), e(Q));
        assert_eq!(adjoint(&e(H), &sc).unwrap(), -e(H));
        assert_eq!(adjoint(&e(E), &sc).unwrap(), e(E));
    }

    #[test]
    fn real_case_mapping() {
        let m = eta4_isomorphism(1.0, 0.0).unwrap();
        assert_eq!(*m.new_basis_vector(3), e(Q));
        assert_eq!(*m.new_basis_vector(0), e(P));
        assert_eq!(*m.new_basis_vector(1), -e(H));
        assert_eq!(*m.new_basis_vector(2), -e(E));
    }

    #[test]
    fn imaginary_case_mapping() {
        let m = eta4_isomorphism(0.0, 1.0).unwrap();
        assert_eq!(*m.new_basis_vector(3), e(P));
        assert_eq!(*m.new_basis_vector(0), e(Q));
        assert_eq!(*m.new_basis_vector(1), e(H));
        assert_eq!(*m.new_basis_vector(2), -e(E));
    }

    #[test]
    fn generic_case_brackets() {
        let m = eta4_isomorphism(1.0, 1.0).unwrap();
        assert_eq!(*m.new_basis_vector(0), &e(P) + &e(Q));
        assert_eq!(*m.new_basis_vector(3), e(P));
        let sc = to_real_form(c(2.0, 2.0)).unwrap();
        let [e1, e2, e3, e4] = [0, 1, 2, 3].map(|k| m.new_basis_vector(k).clone());
        assert!(lie::bracket(&e4, &e1, &sc).unwrap().distance(&e2) < 1e-15);
        assert!(lie::bracket(&e4, &e2, &sc).unwrap().distance(&e3) < 1e-15);
        assert!(lie::bracket(&e1, &e2, &sc).unwrap().is_zero(1e-15));
    }

    #[test]
    fn ceheis_pushes_to_real_form() {
        let z = c(0.7, -1.3);
        let pushed = pushforward_brackets(&ceheis_structure(z).unwrap(), &real_basis_in_ceheis()).unwrap();
        assert!(to_real_form(z).unwrap().table_distance(&pushed) < 1e-15);
    }

    #[test]
    fn singular_change_rejected() {
        let rows = vec![e(0), e(0), e(2), e(3)];
        assert_eq!(BasisChange::new(rows), Err(Error::Singular));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = eta4_isomorphism(0.3, -2.0).unwrap();
        let x = AlgebraElement::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0), c(0.25, 0.0)]);
        let new = m.to_new_coordinates(&x).unwrap();
        let mut back = AlgebraElement::zero(4);
        for k in 0..4 {
            back = &back + &m.new_basis_vector(k).scale(new.coeff(k));
        }
        assert!(back.distance(&x) < 1e-14);
    }
}
