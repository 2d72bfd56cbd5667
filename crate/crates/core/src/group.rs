//! Group of operators `g(u, v, w, y) = e^{u a†} e^{v h} e^{w a} e^{y E}`.
//!
//! Composition in coordinates, with `g₁ = (α, β, γ, δ)` and `g₂ = (A, B, C, D)`:
//!
//! ```text
//! g₁·g₂ = (α + A, β + B + γA, γ + C, (γA²/2 + βA) z + (γ²A/2 + γB) z̄ + δ + D)
//! ```

use num_complex::Complex64;

use crate::boson::{build_representation, RepresentationParams, RepresentedAlgebra};
use crate::error::{Error, Result};
use crate::fock::{exp_matrix, FockOperator, FockSpace, FockVector};
use crate::lie::{bracket, AlgebraElement, StructureConstants};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Levels compared by the operator oracles.
pub const ORACLE_LEVELS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    /// a†-coordinate.
    pub u: Complex64,
    /// h-coordinate.
    pub v: Complex64,
    /// a-coordinate.
    pub w: Complex64,
    /// E-coordinate.
    pub y: Complex64,
    /// u, v, w are real.
    pub real_subgroup: bool,
}

impl GroupElement {
    pub fn new(u: Complex64, v: Complex64, w: Complex64, y: Complex64) -> Self {
        Self {
            u,
            v,
            w,
            y,
            real_subgroup: false,
        }
    }

    pub fn real(u: f64, v: f64, w: f64, y: Complex64) -> Self {
        Self {
            u: Complex64::new(u, 0.0),
            v: Complex64::new(v, 0.0),
            w: Complex64::new(w, 0.0),
            y,
            real_subgroup: true,
        }
    }

    pub fn identity() -> Self {
        Self::real(0.0, 0.0, 0.0, ZERO)
    }

    pub fn coords(&self) -> [Complex64; 4] {
        [self.u, self.v, self.w, self.y]
    }

    /// Largest coordinate difference.
    pub fn distance(&self, other: &GroupElement) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Rejects a flagged element with non-real u, v or w.
    pub fn validate(&self) -> Result<()> {
        if self.real_subgroup && [self.u, self.v, self.w].iter().any(|c| c.im != 0.0) {
            return Err(Error::InvalidParameter("real-subgroup element has complex u, v or w".into()));
        }
        Ok(())
    }
}

pub fn compose(g1: &GroupElement, g2: &GroupElement, z: Complex64) -> GroupElement {
    let (alpha, beta, gamma, delta) = (g1.u, g1.v, g1.w, g1.y);
    let (a, b, c, d) = (g2.u, g2.v, g2.w, g2.y);
    let y = (gamma * a * a / 2.0 + beta * a) * z + (gamma * gamma * a / 2.0 + gamma * b) * z.conj() + delta + d;
    GroupElement {
        u: alpha + a,
        v: beta + b + gamma * a,
        w: gamma + c,
        y,
        real_subgroup: g1.real_subgroup && g2.real_subgroup,
    }
}

/// Two-sided inverse, solved from `compose(g, g⁻¹) = identity`.
pub fn inverse(g: &GroupElement, z: Complex64) -> GroupElement {
    let (alpha, beta, gamma, delta) = (g.u, g.v, g.w, g.y);
    let a = -alpha;
    let c = -gamma;
    let b = -beta + gamma * alpha;
    let d = -delta - (gamma * a * a / 2.0 + beta * a) * z - (gamma * gamma * a / 2.0 + gamma * b) * z.conj();
    GroupElement {
        u: a,
        v: b,
        w: c,
        y: d,
        real_subgroup: g.real_subgroup,
    }
}

/// Exponents of `e^{λa} e^{μa†}` rewritten as `e^{μa†} e^{λa} e^{λμh} e^{c}`.
///
/// The word is ordered a†, a, h, E: placing `h` before `a` would change the
/// central exponent by `λ²μz̄`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LadderWord {
    /// μ
    pub adag: Complex64,
    /// λμ
    pub h: Complex64,
    /// λ
    pub a: Complex64,
    /// λμ(μz − λz̄)/2
    pub e: Complex64,
}

impl LadderWord {
    /// `(μ, λμ, λ, λμ(μz − λz̄)/2)`.
    pub fn exponents(&self) -> [Complex64; 4] {
        [self.adag, self.h, self.a, self.e]
    }

    /// `e^{μa†} e^{λa} e^{λμh} e^{c}` in a representation.
    pub fn operator(&self, rep: &RepresentedAlgebra) -> Result<FockOperator> {
        let word = &(&exp_scaled(rep.a_dag(), self.adag)? * &exp_scaled(rep.a(), self.a)?) * &exp_scaled(rep.h(), self.h)?;
        Ok(word.scale(self.e.exp()))
    }
}

pub fn reorder_a_adag(lambda: Complex64, mu: Complex64, z: Complex64) -> LadderWord {
    LadderWord {
        adag: mu,
        h: lambda * mu,
        a: lambda,
        e: lambda * mu * (mu * z - lambda * z.conj()) / 2.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeylCase {
    /// `e^{λa} e^{μh} = e^{μh} e^{λa} e^{λμz̄}`
    AH,
    /// `e^{μh} e^{λa†} = e^{λa†} e^{μh} e^{λμz}`
    HAdag,
}

/// Central exponent produced by the swap.
pub fn reorder_weyl(lambda: Complex64, mu: Complex64, z: Complex64, which: WeylCase) -> Complex64 {
    match which {
        WeylCase::AH => lambda * mu * z.conj(),
        WeylCase::HAdag => lambda * mu * z,
    }
}

/// Corrections in `e^{X+Y} = e^X e^Y e^{C₂} e^{C₃}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ZassenhausCorrections {
    /// −½[X, Y]
    pub second: AlgebraElement,
    /// (1/6)(2[Y,[X,Y]] + [X,[X,Y]]), central.
    pub third: AlgebraElement,
}

pub fn zassenhaus_special(x: &AlgebraElement, y: &AlgebraElement, sc: &StructureConstants) -> Result<ZassenhausCorrections> {
    let xy = bracket(x, y, sc)?;
    let y_xy = bracket(y, &xy, sc)?;
    let x_xy = bracket(x, &xy, sc)?;
    Ok(ZassenhausCorrections {
        second: xy.scale(Complex64::new(-0.5, 0.0)),
        third: (&y_xy.scale(Complex64::new(2.0, 0.0)) + &x_xy).scale(Complex64::new(1.0 / 6.0, 0.0)),
    })
}

fn exp_scaled(op: &FockOperator, t: Complex64) -> Result<FockOperator> {
    if t == ZERO {
        return Ok(FockOperator::identity(op.dim()));
    }
    exp_matrix(&op.scale(t))
}

/// `e^{u a†} e^{v h} e^{w a} e^{y}` in a representation.
pub fn group_operator(g: &GroupElement, rep: &RepresentedAlgebra) -> Result<FockOperator> {
    let word = &(&exp_scaled(rep.a_dag(), g.u)? * &exp_scaled(rep.h(), g.v)?) * &exp_scaled(rep.a(), g.w)?;
    Ok(word.scale(g.y.exp()))
}

/// Largest entry of `x − y` in the leading `levels × levels` block.
pub fn block_discrepancy(x: &FockOperator, y: &FockOperator, levels: usize) -> f64 {
    (x - y).max_abs_block(levels)
}

fn vector_discrepancy(x: &FockVector, y: &FockVector, levels: usize) -> f64 {
    (x - y).max_abs_head(levels)
}

fn oracle_rep(z: Complex64, params: RepresentationParams, space: FockSpace) -> Result<RepresentedAlgebra> {
    if params.z() != z {
        return Err(Error::InvalidParameter(format!(
            "representation built for z = {}, group law evaluated at z = {z}",
            params.z()
        )));
    }
    build_representation(params, space)
}

/// Operator check of [`compose`]: max entry of `ρ(g₁)ρ(g₂) − ρ(g₁·g₂)` on
/// the first [`ORACLE_LEVELS`] levels.
pub fn group_oracle_check(
    g1: &GroupElement,
    g2: &GroupElement,
    z: Complex64,
    params: RepresentationParams,
    space: FockSpace,
) -> Result<f64> {
    let rep = oracle_rep(z, params, space)?;
    let product = &group_operator(g1, &rep)? * &group_operator(g2, &rep)?;
    let composed = group_operator(&compose(g1, g2, z), &rep)?;
    Ok(block_discrepancy(&product, &composed, ORACLE_LEVELS))
}

/// Operator check of [`reorder_a_adag`] on Φ.
pub fn reorder_a_adag_check(
    lambda: Complex64,
    mu: Complex64,
    params: RepresentationParams,
    space: FockSpace,
) -> Result<f64> {
    let rep = build_representation(params, space)?;
    let lhs = &exp_scaled(rep.a(), lambda)? * &exp_scaled(rep.a_dag(), mu)?;
    let rhs = reorder_a_adag(lambda, mu, params.z()).operator(&rep)?;
    let phi = crate::fock::vacuum(space);
    Ok(vector_discrepancy(&lhs.apply(&phi), &rhs.apply(&phi), ORACLE_LEVELS))
}

/// Operator check of [`reorder_weyl`] on Φ and e₁.
pub fn reorder_weyl_check(
    lambda: Complex64,
    mu: Complex64,
    which: WeylCase,
    params: RepresentationParams,
    space: FockSpace,
) -> Result<f64> {
    let rep = build_representation(params, space)?;
    let phase = reorder_weyl(lambda, mu, params.z(), which).exp();
    let (lhs, rhs) = match which {
        WeylCase::AH => {
            let (ea, eh) = (exp_scaled(rep.a(), lambda)?, exp_scaled(rep.h(), mu)?);
            (&ea * &eh, (&eh * &ea).scale(phase))
        }
        WeylCase::HAdag => {
            let (eh, ead) = (exp_scaled(rep.h(), mu)?, exp_scaled(rep.a_dag(), lambda)?);
            (&eh * &ead, (&ead * &eh).scale(phase))
        }
    };
    let worst = (0..2)
        .flat_map(|col| (0..ORACLE_LEVELS).map(move |row| (row, col)))
        .map(|(row, col)| (lhs.entry(row, col) - rhs.entry(row, col)).norm())
        .fold(0.0, f64::max);
    Ok(worst)
}

/// Operator check of [`zassenhaus_special`] on Φ:
/// `e^{X+Y}Φ` against `e^X e^Y e^{C₂} e^{C₃}Φ`.
pub fn zassenhaus_check(
    x: &AlgebraElement,
    y: &AlgebraElement,
    sc: &StructureConstants,
    params: RepresentationParams,
    space: FockSpace,
) -> Result<f64> {
    let rep = build_representation(params, space)?;
    let corr = zassenhaus_special(x, y, sc)?;
    let one = Complex64::new(1.0, 0.0);
    let lhs = exp_scaled(&rep.represent(&(x + y))?, one)?;
    let rhs = &(&(&exp_scaled(&rep.represent(x)?, one)? * &exp_scaled(&rep.represent(y)?, one)?)
        * &exp_scaled(&rep.represent(&corr.second)?, one)?)
        * &exp_scaled(&rep.represent(&corr.third)?, one)?;
    let phi = crate::fock::vacuum(space);
    Ok(vector_discrepancy(&lhs.apply(&phi), &rhs.apply(&phi), ORACLE_LEVELS))
}

/// Operator checks of the first-order forms
/// `a e^{μa†} = e^{μa†}(a + μh + μ²z/2)`, `a e^{μh} = e^{μh}(a + μz̄)` and
/// `h e^{λa†} = e^{λa†}(h + λz)`, on the leading block. Returns the three
/// discrepancies in that order.
pub fn derivative_forms_check(
    lambda: Complex64,
    mu: Complex64,
    params: RepresentationParams,
    space: FockSpace,
) -> Result<[f64; 3]> {
    let rep = build_representation(params, space)?;
    let z = params.z();
    let id = FockOperator::identity(space.dim());
    let e_mu_adag = exp_scaled(rep.a_dag(), mu)?;
    let e_mu_h = exp_scaled(rep.h(), mu)?;
    let e_lam_adag = exp_scaled(rep.a_dag(), lambda)?;

    let first = {
        let rhs = &(rep.a() + &rep.h().scale(mu)) + &id.scale(mu * mu * z / 2.0);
        block_discrepancy(&(rep.a() * &e_mu_adag), &(&e_mu_adag * &rhs), ORACLE_LEVELS)
    };
    let second = {
        let rhs = rep.a() + &id.scale(mu * z.conj());
        block_discrepancy(&(rep.a() * &e_mu_h), &(&e_mu_h * &rhs), ORACLE_LEVELS)
    };
    let third = {
        let rhs = rep.h() + &id.scale(lambda * z);
        block_discrepancy(&(rep.h() * &e_lam_adag), &(&e_lam_adag * &rhs), ORACLE_LEVELS)
    };
    Ok([first, second, third])
}
