//! Regular semisimple elements of sl₂ and its dual, their tori, and the
//! Waldspurger sign.
//!
//! An element of the Lie algebra is written Y = s√θ', meaning the matrix
//! [[0, s], [sθ', 0]]; a dual element is X* = β√θ, identified through the
//! trace pairing. Depths are returned doubled so they stay integral.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::characters::{AdditiveCharacter, C64};
use crate::error::{Error, Result};
use crate::exp_sums::gauss_sum;
use crate::local_field::{Field, PAdic, SquareClass};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusType {
    Split,
    Unramified,
    Ramified,
}

impl TorusType {
    /// [k_θ : k] for the splitting field, as used in the Close-regime constant.
    pub fn degree(self) -> u32 {
        match self {
            TorusType::Split => 1,
            _ => 2,
        }
    }
}

pub fn classify_torus(field: &Field, theta: &PAdic) -> Result<TorusType> {
    Ok(match field.square_class(theta)? {
        SquareClass::One => TorusType::Split,
        SquareClass::Eps => TorusType::Unramified,
        _ => TorusType::Ramified,
    })
}

/// X* = β√θ in the dual Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DualElement {
    beta: PAdic,
    theta: PAdic,
}

impl DualElement {
    pub fn new(beta: PAdic, theta: PAdic) -> Result<Self> {
        if beta.is_zero() || theta.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(DualElement { beta, theta })
    }

    pub fn beta(&self) -> PAdic {
        self.beta
    }

    pub fn theta(&self) -> PAdic {
        self.theta
    }

    pub fn torus_type(&self, field: &Field) -> TorusType {
        classify_torus(field, &self.theta).expect("theta is nonzero")
    }

    /// d = depth(Φ) − ord(β), the depth of Φ̇ = Φ_β.
    pub fn d(&self, phi: &AdditiveCharacter) -> i32 {
        phi.depth() - self.beta.valuation().expect("beta is nonzero")
    }

    /// 2r = 2d − ord(θ); the depth of X* is −r.
    pub fn r2(&self, phi: &AdditiveCharacter) -> i32 {
        2 * self.d(phi) - self.theta.valuation().expect("theta is nonzero")
    }

    pub fn depth2(&self, phi: &AdditiveCharacter) -> i32 {
        -self.r2(phi)
    }

    /// Φ̇ = Φ_β.
    pub fn phi_dot(&self, phi: &AdditiveCharacter) -> AdditiveCharacter {
        phi.twist(&self.beta).expect("beta is nonzero")
    }
}

/// Y = s√θ' in the Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraElement {
    s: PAdic,
    thetap: PAdic,
}

impl AlgebraElement {
    pub fn new(s: PAdic, thetap: PAdic) -> Result<Self> {
        if s.is_zero() || thetap.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(AlgebraElement { s, thetap })
    }

    pub fn s(&self) -> PAdic {
        self.s
    }

    pub fn thetap(&self) -> PAdic {
        self.thetap
    }

    /// Twice the depth: 2 ord(s) + ord(θ').
    pub fn depth2(&self) -> i32 {
        2 * self.s.valuation().expect("s is nonzero") + self.thetap.valuation().expect("nonzero")
    }

    /// D(Y) = 4s²θ'.
    pub fn discriminant(&self, field: &Field) -> PAdic {
        field.int(4) * self.s * self.s * self.thetap
    }

    /// |D(Y)|^{-1/2}.
    pub fn abs_disc_inv_sqrt(&self, field: &Field) -> f64 {
        field.q().powf(self.depth2() as f64 / 2.0)
    }
}

/// |W(G, T_θ)|: 2 when −1 is a norm from k(√θ), else 1.
pub fn weyl_order(field: &Field, theta: &PAdic) -> Result<u32> {
    let tau = field.square_class(theta)?;
    Ok(if field.sgn(tau, &field.int(-1))? == 1 { 2 } else { 1 })
}

/// Stable conjugacy of tori: θ and θ' in the same square class.
pub fn stably_conjugate(field: &Field, theta: &PAdic, thetap: &PAdic) -> Result<bool> {
    Ok(field.square_class(theta)? == field.square_class(thetap)?)
}

/// The multiplier x with sgn_θ(x) = 1 and θ' = x²θ, when the tori T_θ and
/// T_θ' are conjugate under SL₂(k); then s√θ' is conjugate to (sx)√θ.
pub fn torus_transport(field: &Field, theta: &PAdic, thetap: &PAdic) -> Result<Option<PAdic>> {
    let Some(x) = field.sqrt(&thetap.div(theta)?)? else {
        return Ok(None);
    };
    let tau = field.square_class(theta)?;
    if field.sgn(tau, &x)? == 1 {
        Ok(Some(x))
    } else if field.sgn(tau, &-x)? == 1 {
        Ok(Some(-x))
    } else {
        Ok(None)
    }
}

pub fn rationally_conjugate(field: &Field, theta: &PAdic, thetap: &PAdic) -> Result<bool> {
    Ok(torus_transport(field, theta, thetap)?.is_some())
}

/// γ_un(s) = (−1)^{d+1} sgn_ε(s).
pub fn gamma_un(field: &Field, d: i32, s: &PAdic) -> Result<f64> {
    let sign = if (d + 1).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Ok(sign * field.sgn(SquareClass::Eps, s)? as f64)
}

/// γ_ram(s) = sgn_ϖ(−s) G_ϖ(Φ̇).
pub fn gamma_ram(field: &Field, phi_dot: &AdditiveCharacter, s: &PAdic) -> Result<C64> {
    let g = gauss_sum(field, &field.varpi(), phi_dot)?;
    Ok(g * field.sgn(field.varpi_class(), &-*s)? as f64)
}

/// The Waldspurger sign γ(X*, Y), indexed by the square classes of θ and θ'.
pub fn gamma_wald(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<C64> {
    let ct = field.square_class(&x.theta)?;
    let ctp = field.square_class(&y.thetap)?;
    if ct != ctp {
        let elliptic_vs_split = ct != SquareClass::One && ctp == SquareClass::One;
        return Ok(C64::new(if elliptic_vs_split { 1.0 } else { 0.0 }, 0.0));
    }
    let d = x.d(phi);
    let s = y.s;
    Ok(match ct {
        SquareClass::One => C64::new(1.0, 0.0),
        SquareClass::Eps => C64::new(gamma_un(field, d, &s)?, 0.0),
        c if c == field.varpi_class() => gamma_ram(field, &x.phi_dot(phi), &s)?,
        _ => -gamma_ram(field, &x.phi_dot(phi), &s)? * gamma_un(field, d, &s)?,
    })
}

/// The constant term of μ̂ in the Close regime.
///
/// Split: 0. The value −2/q that one might read off by analogy is not what
/// the Bessel expansion gives; the brute-force oracle agrees with 0.
pub fn c0(field: &Field, torus: TorusType) -> Ratio<i64> {
    let q = field.p() as i64;
    match torus {
        TorusType::Split => Ratio::from_integer(0),
        TorusType::Unramified => Ratio::new(-1, q),
        TorusType::Ramified => Ratio::new(-(q + 1), 2 * q * q),
    }
}

/// (u, v, m) with u = ϖ^{−(d+1)}sθ', v = ϖ^{−(d+1)}sθ, m = −ord(uv).
pub fn uv_m(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
) -> Result<(PAdic, PAdic, i32)> {
    let w = field.varpi_pow(-(x.d(phi) + 1));
    let u = w * y.s * y.thetap;
    let v = w * y.s * x.theta;
    let m = -(u * v).ord()?;
    Ok((u, v, m))
}

/// True when θ is literally 1, ε or ϖ.
pub fn is_reduced(field: &Field, theta: &PAdic) -> bool {
    [field.one(), field.eps_elem(), field.varpi()]
        .iter()
        .any(|r| r == theta)
}

/// Conjugates X* = β√θ by diag(b⁻¹, 1) ∈ GL₂(k), chosen so that b²θ is one
/// of 1, ε, ϖ. Returns the transported element and b. The conjugation scales
/// the off-diagonal entries by b⁻¹ and b, so β√θ becomes (βb⁻¹)√(b²θ).
///
/// The class εϖ has no such representative for the configured ϖ; use the
/// uniformiser εϖ instead.
pub fn gl2_reduce(field: &Field, x: &DualElement) -> Result<(DualElement, PAdic)> {
    let class = field.square_class(&x.theta)?;
    let rep = match class {
        SquareClass::One => field.one(),
        SquareClass::Eps => field.eps_elem(),
        c if c == field.varpi_class() => field.varpi(),
        _ => {
            return Err(Error::Unsupported(
                "theta in the class eps*varpi; choose the uniformiser eps*varpi".into(),
            ))
        }
    };
    let eps = field.eps_elem();
    let varpi = field.varpi();
    // The two shapes that occur in practice get the obvious b; otherwise a
    // square root of rep/θ.
    let b = if x.theta == varpi * varpi * eps {
        varpi.inv()?
    } else if x.theta == eps * eps * varpi {
        eps.inv()?
    } else {
        field
            .sqrt(&rep.div(&x.theta)?)?
            .ok_or_else(|| Error::MissingSqrt("rep/theta".into()))?
    };
    let reduced = DualElement::new(x.beta * b.inv()?, rep)?;
    Ok((reduced, b))
}

/// The same conjugation applied to Y: s√θ' becomes (sb⁻¹)√(b²θ').
pub fn transport_algebra(y: &AlgebraElement, b: &PAdic) -> Result<AlgebraElement> {
    AlgebraElement::new(y.s * b.inv()?, *b * *b * y.thetap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_classes() {
        let f = Field::new(5).unwrap();
        assert_eq!(classify_torus(&f, &f.int(1)).unwrap(), TorusType::Split);
        assert_eq!(classify_torus(&f, &f.int(2)).unwrap(), TorusType::Unramified);
        assert_eq!(classify_torus(&f, &f.int(5)).unwrap(), TorusType::Ramified);
        assert_eq!(classify_torus(&f, &f.int(10)).unwrap(), TorusType::Ramified);
        assert_eq!(classify_torus(&f, &f.int(4)).unwrap(), TorusType::Split);
        assert_eq!(classify_torus(&f, &f.int(50)).unwrap(), TorusType::Unramified);
    }

    #[test]
    fn weyl_orders() {
        let f5 = Field::new(5).unwrap();
        let f7 = Field::new(7).unwrap();
        assert_eq!(weyl_order(&f5, &f5.int(1)).unwrap(), 2);
        assert_eq!(weyl_order(&f5, &f5.int(2)).unwrap(), 2);
        // −1 is a norm from Q_p(√p) iff −1 is a square mod p.
        assert_eq!(weyl_order(&f5, &f5.int(5)).unwrap(), 2);
        assert_eq!(weyl_order(&f7, &f7.int(7)).unwrap(), 1);
    }

    #[test]
    fn rational_conjugacy_examples() {
        let f5 = Field::new(5).unwrap();
        assert!(stably_conjugate(&f5, &f5.int(2), &f5.int(50)).unwrap());
        assert!(!rationally_conjugate(&f5, &f5.int(2), &f5.int(50)).unwrap());
        // ϖ and ε²ϖ merge exactly when −1 is not a square mod p.
        assert!(!rationally_conjugate(&f5, &f5.int(5), &f5.int(20)).unwrap());
        let f7 = Field::new(7).unwrap();
        assert!(rationally_conjugate(&f7, &f7.int(7), &f7.int(63)).unwrap());
        assert!(!rationally_conjugate(&f5, &f5.int(5), &f5.int(10)).unwrap());
        assert!(rationally_conjugate(&f5, &f5.int(1), &f5.int(4)).unwrap());
    }

    #[test]
    fn constants() {
        let f = Field::new(5).unwrap();
        assert_eq!(c0(&f, TorusType::Unramified), Ratio::new(-1, 5));
        assert_eq!(c0(&f, TorusType::Ramified), Ratio::new(-3, 25));
        assert_eq!(c0(&f, TorusType::Split), Ratio::from_integer(0));
    }

    #[test]
    fn wald_sign() {
        let f = Field::new(5).unwrap();
        let phi = AdditiveCharacter::standard(&f);
        // β = p^{-1}·1: d = 0, so γ_un = −sgn_ε(s).
        let x = DualElement::new(f.parts(1, -1), f.int(2)).unwrap();
        let y = AlgebraElement::new(f.one(), f.int(2)).unwrap();
        assert_eq!(gamma_wald(&f, &x, &y, &phi).unwrap(), C64::new(-1.0, 0.0));
        let y = AlgebraElement::new(f.int(5), f.int(2)).unwrap();
        assert_eq!(gamma_wald(&f, &x, &y, &phi).unwrap(), C64::new(1.0, 0.0));
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        assert_eq!(gamma_wald(&f, &x, &y, &phi).unwrap(), C64::new(1.0, 0.0));
        let y = AlgebraElement::new(f.one(), f.int(5)).unwrap();
        assert_eq!(gamma_wald(&f, &x, &y, &phi).unwrap(), C64::new(0.0, 0.0));
        let split = DualElement::new(f.one(), f.one()).unwrap();
        let y = AlgebraElement::new(f.one(), f.int(2)).unwrap();
        assert_eq!(gamma_wald(&f, &split, &y, &phi).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn reduction_examples() {
        let f = Field::new(5).unwrap();
        let beta = f.parts(3, -1);
        let x = DualElement::new(beta, f.int(50)).unwrap();
        let (r, b) = gl2_reduce(&f, &x).unwrap();
        assert_eq!(r.theta(), f.int(2));
        assert_eq!(r.beta(), beta * f.int(5));
        assert_eq!(b, f.parts(1, -1));
        let x = DualElement::new(beta, f.int(20)).unwrap();
        let (r, _) = gl2_reduce(&f, &x).unwrap();
        assert_eq!(r.theta(), f.int(5));
        assert_eq!(r.beta(), beta * f.int(2));
        let x = DualElement::new(beta, f.int(10)).unwrap();
        assert!(gl2_reduce(&f, &x).is_err());
        let x = DualElement::new(beta, f.int(9)).unwrap();
        let (r, b) = gl2_reduce(&f, &x).unwrap();
        assert_eq!(r.theta(), f.one());
        assert_eq!(b * b * f.int(9), f.one());
    }

    #[test]
    fn uv_example() {
        let f = Field::new(5).unwrap();
        let phi = AdditiveCharacter::standard(&f);
        let x = DualElement::new(f.parts(1, -1), f.one()).unwrap();
        let y = AlgebraElement::new(f.int(5), f.int(2)).unwrap();
        let (u, v, m) = uv_m(&f, &x, &y, &phi).unwrap();
        assert_eq!(u, f.int(2));
        assert_eq!(v, f.one());
        assert_eq!(m, 0);
    }
}
