//! CEHeis from two independent CCR pairs on a tensor product of two
//! truncated Fock spaces.
//!
//! Quadratures are `q_j = (b_j + b_j†)/2`, `p_j = i(b_j† − b_j)/2` with
//! `b₁ = b ⊗ I` and `b₂ = I ⊗ b`, so `[q_j, p_k] = (i/2)δ_{jk}`.

use num_complex::Complex64;

use crate::boson::RepresentedAlgebra;
use crate::error::{Error, Result};
use crate::fock::{annihilator, creator, interior_projection, FockOperator, FockSpace};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoModeSpace {
    mode: FockSpace,
}

impl TwoModeSpace {
    pub fn new(dim_per_mode: usize) -> Result<Self> {
        if dim_per_mode < 6 {
            return Err(Error::InvalidParameter(format!(
                "two-mode space needs at least 6 levels per mode, got {dim_per_mode}"
            )));
        }
        Ok(Self {
            mode: FockSpace::new(dim_per_mode)?,
        })
    }

    pub fn dim_per_mode(&self) -> usize {
        self.mode.dim()
    }

    pub fn total_dim(&self) -> usize {
        self.mode.dim() * self.mode.dim()
    }

    /// `P(margin) ⊗ P(margin)`.
    pub fn interior_projection(&self, margin: usize) -> Result<FockOperator> {
        let p = interior_projection(self.mode, margin)?;
        Ok(p.kron(&p))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CcrQuadrature {
    pub q1: FockOperator,
    pub p1: FockOperator,
    pub q2: FockOperator,
    pub p2: FockOperator,
}

pub fn build_quadratures(space: TwoModeSpace) -> CcrQuadrature {
    let b = annihilator(space.mode);
    let bd = creator(space.mode);
    let id = FockOperator::identity(space.dim_per_mode());
    let q = (&b + &bd) * 0.5;
    let p = (&bd - &b).scale(I * 0.5);
    CcrQuadrature {
        q1: q.kron(&id),
        p1: p.kron(&id),
        q2: id.kron(&q),
        p2: id.kron(&p),
    }
}

/// Which of Re z, Im z vanish, by exact comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CcrCase {
    /// Re z ≠ 0 and Im z ≠ 0.
    Generic,
    /// Re z = 0.
    ReZero,
    /// Im z = 0.
    ImZero,
}

impl CcrCase {
    pub fn of(z: Complex64) -> Result<Self> {
        match (z.re == 0.0, z.im == 0.0) {
            (true, true) => Err(Error::TrivialExtension),
            (true, false) => Ok(CcrCase::ReZero),
            (false, true) => Ok(CcrCase::ImZero),
            (false, false) => Ok(CcrCase::Generic),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CcrCase::Generic => "generic",
            CcrCase::ReZero => "re-zero",
            CcrCase::ImZero => "im-zero",
        }
    }
}

/// a, a†, h, E built from the quadratures:
///
/// * generic: `a = i Re z q₁ + p₁²/Re z − Im z p₂ − (i/Im z) q₂²`, `h = −2(p₁ + q₂)`
/// * Re z = 0: `a = c p₁² − Im z p₂ + (r − i/Im z) q₂²`, `h = −2q₂`
/// * Im z = 0: `a = i Re z q₁ + (1/Re z + ir) p₁² + c q₂²`, `h = −2p₁`
///
/// `r` and `c` are free and ignored in the generic case. `a†` is the
/// conjugate transpose of `a`.
pub fn build_ccr_representation(z: Complex64, r: f64, c: Complex64, space: TwoModeSpace) -> Result<RepresentedAlgebra> {
    let case = CcrCase::of(z)?;
    let CcrQuadrature { q1, p1, q2, p2 } = build_quadratures(space);
    let p1sq = &p1 * &p1;
    let q2sq = &q2 * &q2;
    let (a, h) = match case {
        CcrCase::Generic => {
            let a = &(&(&q1.scale(I * z.re) + &(&p1sq * (1.0 / z.re))) - &(&p2 * z.im)) - &q2sq.scale(I / z.im);
            (a, (&p1 + &q2) * -2.0)
        }
        CcrCase::ReZero => {
            let a = &(&p1sq.scale(c) - &(&p2 * z.im)) + &q2sq.scale(Complex64::new(r, -1.0 / z.im));
            (a, &q2 * -2.0)
        }
        CcrCase::ImZero => {
            let a = &(&q1.scale(I * z.re) + &p1sq.scale(Complex64::new(1.0 / z.re, r))) + &q2sq.scale(c);
            (a, &p1 * -2.0)
        }
    };
    let a_dag = a.adjoint();
    RepresentedAlgebra::from_operators(a, a_dag, h, FockOperator::identity(space.total_dim()))
}
