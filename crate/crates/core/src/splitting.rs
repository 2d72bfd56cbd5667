//! Splitting of `exp(s·G)Φ` for the quadratic generator
//! `G = L b² + L b†² − 2L b†b − L + M b + N b†`, and the vacuum moment
//! generating function of `a + a† + h`.
//!
//! The closed forms, valid while `2Ls + 1 > 0`, are
//!
//! ```text
//! w₁(s) = Ls / (2Ls + 1)
//! w₂(s) = (L(M+N)s² + Ns) / (2Ls + 1)
//! w₃(s) = ((M+N)²(L²s⁴ + 2Ls³) + 3MNs²) / (6(2Ls + 1)) − ½ ln(2Ls + 1)
//! ```
//!
//! and `exp(sG)Φ = exp(w₁ b†²) exp(w₂ b†) exp(w₃) Φ`.

use num_complex::Complex64;

use crate::boson::{build_representation, Branch, RepresentationParams};
use crate::error::{Error, Result};
use crate::fock::{annihilator, creator, exp_matrix, number, vacuum, FockOperator, FockSpace};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticExponentParams {
    pub l: f64,
    pub m: Complex64,
    pub n: Complex64,
}

impl QuadraticExponentParams {
    pub fn new(l: f64, m: Complex64, n: Complex64) -> Result<Self> {
        let finite = l.is_finite() && [m, n].iter().all(|v| v.re.is_finite() && v.im.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("L, M, N must be finite".into()));
        }
        Ok(Self { l, m, n })
    }

    /// 2Ls + 1, checked to be positive.
    fn domain(&self, s: f64) -> Result<f64> {
        let d = 2.0 * self.l * s + 1.0;
        if d > 0.0 && s.is_finite() {
            Ok(d)
        } else {
            Err(Error::Domain { l: self.l, s })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplittingCoefficients {
    pub w1: Complex64,
    pub w2: Complex64,
    pub w3: Complex64,
    pub s: f64,
}

pub fn closed_form_w(params: QuadraticExponentParams, s: f64) -> Result<SplittingCoefficients> {
    let d = params.domain(s)?;
    let QuadraticExponentParams { l, m, n } = params;
    let w1 = Complex64::new(l * s / d, 0.0);
    let w2 = (l * (m + n) * s * s + n * s) / d;
    Ok(SplittingCoefficients {
        w1,
        w2,
        w3: rational_exponent(params, s)? - 0.5 * d.ln(),
        s,
    })
}

/// `((M+N)²(L²s⁴ + 2Ls³) + 3MNs²) / (6(2Ls + 1))`, the part of w₃ that is
/// not a logarithm.
pub fn rational_exponent(params: QuadraticExponentParams, s: f64) -> Result<Complex64> {
    let d = params.domain(s)?;
    let QuadraticExponentParams { l, m, n } = params;
    let sum = m + n;
    let num = sum * sum * (l * l * s.powi(4) + 2.0 * l * s.powi(3)) + 3.0 * m * n * s * s;
    Ok(num / (6.0 * d))
}

/// `(2Ls + 1)^{−1/2}`.
pub fn gamma_factor(params: QuadraticExponentParams, s: f64) -> Result<f64> {
    Ok(params.domain(s)?.powf(-0.5))
}

/// Magnitudes of the three ODE defects, with derivatives by central
/// differences of width `step`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeResiduals {
    /// w₁′ = 4Lw₁² − 4Lw₁ + L
    pub riccati: f64,
    /// w₂′ = (4Lw₁ − 2L)w₂ + 2Mw₁ + N
    pub linear: f64,
    /// w₃′ = 2Lw₁ + Lw₂² − L + Mw₂
    pub quadrature: f64,
}

impl OdeResiduals {
    pub fn max(&self) -> f64 {
        self.riccati.max(self.linear).max(self.quadrature)
    }
}

pub fn ode_residuals(params: QuadraticExponentParams, s: f64, step: f64) -> Result<OdeResiduals> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidParameter(format!("step must be positive, got {step}")));
    }
    let QuadraticExponentParams { l, m, n } = params;
    let w = closed_form_w(params, s)?;
    let plus = closed_form_w(params, s + step)?;
    let minus = closed_form_w(params, s - step)?;
    let diff = |f: fn(&SplittingCoefficients) -> Complex64| (f(&plus) - f(&minus)) / (2.0 * step);
    let dw1 = diff(|c| c.w1);
    let dw2 = diff(|c| c.w2);
    let dw3 = diff(|c| c.w3);
    Ok(OdeResiduals {
        riccati: (dw1 - (4.0 * l * w.w1 * w.w1 - 4.0 * l * w.w1 + l)).norm(),
        linear: (dw2 - ((4.0 * l * w.w1 - 2.0 * l) * w.w2 + 2.0 * m * w.w1 + n)).norm(),
        quadrature: (dw3 - (2.0 * l * w.w1 + l * w.w2 * w.w2 - l + m * w.w2)).norm(),
    })
}

/// `L b² + L b†² − 2L b†b − L + M b + N b†` as a matrix.
pub fn quadratic_generator(params: QuadraticExponentParams, space: FockSpace) -> FockOperator {
    let QuadraticExponentParams { l, m, n } = params;
    let b = annihilator(space);
    let bd = creator(space);
    let id = FockOperator::identity(space.dim());
    let quad = &(&(&(&b * &b) + &(&bd * &bd)) - &(number(space) * 2.0)) - &id;
    &(&(quad * l) + &b.scale(m)) + &bd.scale(n)
}

/// `‖exp(sG)Φ − exp(w₁b†²)exp(w₂b†)exp(w₃)Φ‖ / ‖exp(sG)Φ‖`.
pub fn verify_splitting(params: QuadraticExponentParams, s: f64, space: FockSpace) -> Result<f64> {
    let w = closed_form_w(params, s)?;
    let phi = vacuum(space);
    let lhs = exp_matrix(&(quadratic_generator(params, space) * s))?.apply(&phi);
    let bd = creator(space);
    let first = exp_matrix(&bd.scale(w.w2))?.apply(&phi).scale(w.w3.exp());
    let rhs = exp_matrix(&(&bd * &bd).scale(w.w1))?.apply(&first);
    let norm = lhs.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok((&lhs - &rhs).norm() / norm)
}

/// L, M, N with `a + a† + h = L b² + L b†² − 2L b†b − L + M b + N b†`.
pub fn mgf_params(rep: RepresentationParams) -> QuadraticExponentParams {
    let (z, rho, r) = (rep.z(), rep.rho(), rep.r());
    match rep.branch() {
        Branch::ReNonzero => QuadraticExponentParams {
            l: (4.0 * rho * z.im - r * r) / (2.0 * z.re),
            m: -Complex64::new(z.im / r, r),
            n: -Complex64::new(z.im / r, -r),
        },
        Branch::ReZero => QuadraticExponentParams {
            l: 2.0 * rho,
            m: Complex64::new(2.0 * r, z.im / (2.0 * r)),
            n: Complex64::new(2.0 * r, -z.im / (2.0 * r)),
        },
    }
}

/// `⟨Φ, exp(sG)Φ⟩ = (2Ls + 1)^{−1/2} exp(rational_exponent)`, i.e. exp(w₃).
pub fn mgf_closed_form(params: QuadraticExponentParams, s: f64) -> Result<Complex64> {
    Ok(rational_exponent(params, s)?.exp() * gamma_factor(params, s)?)
}

/// First two derivatives of the MGF at s = 0: `−L` and `MN + 3L²`.
pub fn moments_closed_form(params: QuadraticExponentParams) -> (Complex64, Complex64) {
    let QuadraticExponentParams { l, m, n } = params;
    (Complex64::new(-l, 0.0), m * n + 3.0 * l * l)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MgfOracleValue {
    pub value: f64,
    /// Imaginary part of ⟨Φ, exp(sX)Φ⟩, zero for an exact self-adjoint X.
    pub imag: f64,
}

/// `⟨Φ, exp(s(a + a† + h))Φ⟩` from the Boson representation matrices.
pub fn mgf_oracle(rep: RepresentationParams, s: f64, space: FockSpace) -> Result<MgfOracleValue> {
    let alg = build_representation(rep, space)?;
    let x = &(alg.a() + alg.a_dag()) + alg.h();
    let phi = vacuum(space);
    let v = phi.inner(&exp_matrix(&(x * s))?.apply(&phi));
    Ok(MgfOracleValue {
        value: v.re,
        imag: v.im,
    })
}

/// Second derivative at 0 by central differences with one Richardson step:
/// `(4D(h/2) − D(h)) / 3`.
pub fn second_derivative_at_zero(f: impl Fn(f64) -> Result<f64>, step: f64) -> Result<f64> {
    let f0 = f(0.0)?;
    let central = |h: f64| -> Result<f64> { Ok((f(h)? - 2.0 * f0 + f(-h)?) / (h * h)) };
    Ok((4.0 * central(step / 2.0)? - central(step)?) / 3.0)
}
