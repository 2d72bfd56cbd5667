//! Boson representation of CEHeis on a truncated Fock space, and the closed
//! form of its action on exponential vectors.
//!
//! With `S = (b − b†)²` and `X = b + b†` every representation here has the
//! shape `a = c·S + σ·X`, `a† = c̄·S + σ̄·X`, `h = η·(b† − b)`, `E = 1`:
//!
//! | branch      | c                                   | σ           | η              |
//! |-------------|-------------------------------------|-------------|----------------|
//! | `ReNonzero` | (4ρ Im z − r²)/(4 Re z) + iρ        | −i z̄/(2r)   | i r            |
//! | `ReZero`    | ρ + i Im z/(16 r²)                  | r           | −i Im z/(2r)   |

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fock::{
    annihilator, commutator, creator, derivative_vector, exponential_vector, interior_projection, FockOperator,
    FockSpace, FockVector,
};
use crate::lie::{AlgebraElement, StructureConstants};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Smallest Fock dimension accepted by [`build_representation`].
pub const MIN_REP_DIM: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    ReNonzero,
    ReZero,
}

impl Branch {
    /// Exact test on the given real part.
    pub fn of(z: Complex64) -> Self {
        if z.re == 0.0 {
            Branch::ReZero
        } else {
            Branch::ReNonzero
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Branch::ReNonzero => "re-nonzero",
            Branch::ReZero => "re-zero",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepresentationParams {
    z: Complex64,
    rho: f64,
    r: f64,
    branch: Branch,
}

impl RepresentationParams {
    pub fn new(z: Complex64, rho: f64, r: f64, branch: Branch) -> Result<Self> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(Error::TrivialExtension);
        }
        if !(z.re.is_finite() && z.im.is_finite() && rho.is_finite() && r.is_finite()) {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if r == 0.0 {
            return Err(Error::InvalidParameter("r must be nonzero".into()));
        }
        if Branch::of(z) != branch {
            return Err(Error::InvalidParameter(format!(
                "branch {} does not match Re z = {}",
                branch.name(),
                z.re
            )));
        }
        Ok(Self { z, rho, r, branch })
    }

    /// Branch taken from an exact zero test on `Re z`.
    pub fn with_inferred_branch(z: Complex64, rho: f64, r: f64) -> Result<Self> {
        Self::new(z, rho, r, Branch::of(z))
    }

    /// A choice of (ρ, r) that keeps exponentials of the represented
    /// generators accurate on a D ≈ 40 truncation.
    ///
    /// For Re z ≠ 0, ρ = r²/(4 Im z) makes c purely imaginary (a real part
    /// of c makes e^{tS} grow), and r balances |σ|/2 against 10|c|, which
    /// gives r³ = |z|·m/10 with m = |Im z|, or |Re z| when Im z = 0.
    pub fn oracle_friendly(z: Complex64) -> Result<Self> {
        if z.re != 0.0 {
            let m = if z.im != 0.0 { z.im.abs() } else { z.re.abs() };
            let r = (z.norm() * m / 10.0).cbrt();
            let rho = if z.im != 0.0 { r * r / (4.0 * z.im) } else { 0.0 };
            Self::new(z, rho, r, Branch::ReNonzero)
        } else {
            Self::new(z, 0.0, z.im.abs().sqrt().max(1.0), Branch::ReZero)
        }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// Coefficients (c, σ, η) of the table in the module docs.
    pub fn coefficients(&self) -> (Complex64, Complex64, Complex64) {
        let (z, rho, r) = (self.z, self.rho, self.r);
        match self.branch {
            Branch::ReNonzero => {
                let c = Complex64::new((4.0 * rho * z.im - r * r) / (4.0 * z.re), rho);
                let sigma = -I * z.conj() / (2.0 * r);
                (c, sigma, I * r)
            }
            Branch::ReZero => {
                let c = Complex64::new(rho, z.im / (16.0 * r * r));
                let eta = Complex64::new(0.0, -z.im / (2.0 * r));
                (c, Complex64::new(r, 0.0), eta)
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    A,
    ADag,
    H,
    E,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::A, Generator::ADag, Generator::H, Generator::E];

    /// Position in the (a, a†, h, E) basis.
    pub fn index(self) -> usize {
        self as usize
    }
}

/// Images of a, a†, h, E as operators on one Hilbert space.
#[derive(Clone, Debug, PartialEq)]
pub struct RepresentedAlgebra {
    a: FockOperator,
    a_dag: FockOperator,
    h: FockOperator,
    e: FockOperator,
}

impl RepresentedAlgebra {
    pub fn from_operators(a: FockOperator, a_dag: FockOperator, h: FockOperator, e: FockOperator) -> Result<Self> {
        let d = a.dim();
        for op in [&a_dag, &h, &e] {
            if op.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: op.dim(),
                });
            }
        }
        Ok(Self { a, a_dag, h, e })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn a(&self) -> &FockOperator {
        &self.a
    }

    pub fn a_dag(&self) -> &FockOperator {
        &self.a_dag
    }

    pub fn h(&self) -> &FockOperator {
        &self.h
    }

    pub fn e(&self) -> &FockOperator {
        &self.e
    }

    pub fn generator(&self, g: Generator) -> &FockOperator {
        match g {
            Generator::A => &self.a,
            Generator::ADag => &self.a_dag,
            Generator::H => &self.h,
            Generator::E => &self.e,
        }
    }

    /// Image of α a + β a† + γ h + δ E.
    pub fn represent(&self, x: &AlgebraElement) -> Result<FockOperator> {
        if x.dim() != 4 {
            return Err(Error::DimensionMismatch {
                expected: 4,
                actual: x.dim(),
            });
        }
        let mut out = FockOperator::zeros(self.dim());
        for g in Generator::ALL {
            let coeff = x.coeff(g.index());
            if coeff != Complex64::new(0.0, 0.0) {
                out = &out + &self.generator(g).scale(coeff);
            }
        }
        Ok(out)
    }

    /// Largest entry of `a† − a*` and `h − h*`.
    pub fn duality_defect(&self) -> (f64, f64) {
        (
            (&self.a_dag - &self.a.adjoint()).max_abs(),
            (&self.h - &self.h.adjoint()).max_abs(),
        )
    }
}

/// Builds a, a†, h, E from the table in the module docs.
pub fn build_representation(params: RepresentationParams, space: FockSpace) -> Result<RepresentedAlgebra> {
    if space.dim() < MIN_REP_DIM {
        return Err(Error::InvalidParameter(format!(
            "representation needs dimension at least {MIN_REP_DIM}, got {}",
            space.dim()
        )));
    }
    let b = annihilator(space);
    let bd = creator(space);
    let diff = &b - &bd;
    let s = &diff * &diff;
    let x = &b + &bd;
    let (c, sigma, eta) = params.coefficients();
    let a = &s.scale(c) + &x.scale(sigma);
    let a_dag = &s.scale(c.conj()) + &x.scale(sigma.conj());
    let h = (&bd - &b).scale(eta);
    RepresentedAlgebra::from_operators(a, a_dag, h, FockOperator::identity(space.dim()))
}

/// Frobenius norms of the three relation defects, right-multiplied by an
/// interior projector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CeccrDefect {
    /// ‖([a,a†] − h)P‖
    pub a_adag: f64,
    /// ‖([h,a†] − z)P‖
    pub h_adag: f64,
    /// ‖([a,h] − z̄)P‖
    pub a_h: f64,
}

impl CeccrDefect {
    pub fn max(&self) -> f64 {
        self.a_adag.max(self.h_adag).max(self.a_h)
    }
}

/// Relation defects with `P = interior_projection(margin)`.
pub fn verify_ceccr(rep: &RepresentedAlgebra, z: Complex64, margin: usize) -> Result<CeccrDefect> {
    if margin < 4 {
        return Err(Error::InvalidParameter(format!("margin must be at least 4, got {margin}")));
    }
    let space = FockSpace::new(rep.dim())?;
    verify_ceccr_projected(rep, z, &interior_projection(space, margin)?)
}

/// Relation defects against an arbitrary projector.
pub fn verify_ceccr_projected(rep: &RepresentedAlgebra, z: Complex64, projector: &FockOperator) -> Result<CeccrDefect> {
    if projector.dim() != rep.dim() {
        return Err(Error::DimensionMismatch {
            expected: rep.dim(),
            actual: projector.dim(),
        });
    }
    let id = FockOperator::identity(rep.dim());
    let defect = |x: FockOperator| (&x * projector).frobenius_norm();
    Ok(CeccrDefect {
        a_adag: defect(&commutator(&rep.a, &rep.a_dag) - &rep.h),
        h_adag: defect(&commutator(&rep.h, &rep.a_dag) - &id.scale(z)),
        a_h: defect(&commutator(&rep.a, &rep.h) - &id.scale(z.conj())),
    })
}

/// Largest `‖([ρ(lᵢ), ρ(lⱼ)] − ρ(table[i][j]))P‖` over basis pairs i < j.
pub fn structure_constant_defect(
    rep: &RepresentedAlgebra,
    sc: &StructureConstants,
    projector: &FockOperator,
) -> Result<f64> {
    if sc.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: sc.dim(),
        });
    }
    let mut worst: f64 = 0.0;
    for i in Generator::ALL {
        for j in Generator::ALL {
            if j.index() <= i.index() {
                continue;
            }
            let lhs = commutator(rep.generator(i), rep.generator(j));
            let rhs = rep.represent(sc.entry(i.index(), j.index()))?;
            worst = worst.max((&(&lhs - &rhs) * projector).frobenius_norm());
        }
    }
    Ok(worst)
}

/// Closed-form action of a generator on y(λ), written with the λ-derivative
/// vectors D₁ = ∂y and D₂ = ∂²y:
///
/// * `a y = (c(λ²−1) + σλ) y + c D₂ + (σ − 2cλ) D₁`
/// * `a† y` likewise with c̄, σ̄
/// * `h y = η (D₁ − λ y)`
/// * `E y = y`
pub fn exp_vector_action(
    generator: Generator,
    params: RepresentationParams,
    lambda: Complex64,
    space: FockSpace,
) -> FockVector {
    let y = exponential_vector(lambda, space);
    let (c, sigma, eta) = params.coefficients();
    let quadratic = |c: Complex64, sigma: Complex64| {
        let d1 = derivative_vector(lambda, 1, space);
        let d2 = derivative_vector(lambda, 2, space);
        let lam2 = lambda * lambda;
        let y_part = y.scale(c * (lam2 - 1.0) + sigma * lambda);
        &(&y_part + &d2.scale(c)) + &d1.scale(sigma - c * lambda * 2.0)
    };
    match generator {
        Generator::A => quadratic(c, sigma),
        Generator::ADag => quadratic(c.conj(), sigma.conj()),
        Generator::H => (&derivative_vector(lambda, 1, space) - &y.scale(lambda)).scale(eta),
        Generator::E => y,
    }
}
