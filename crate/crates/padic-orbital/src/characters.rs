//! Additive characters Φ_b of Q_p and the multiplicative characters
//! ν^α·sgn_τ.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local_field::{legendre, pow_u128, Field, PAdic, SquareClass};

pub type C64 = Complex64;

/// Default absolute tolerance for comparing complex values.
pub const DEFAULT_TOL: f64 = 1e-9;

/// e^{2πi·num/den}.
pub fn cis_frac(num: u128, den: u128) -> C64 {
    let r = (num % den) as f64 / den as f64;
    let (s, c) = (std::f64::consts::TAU * r).sin_cos();
    C64::new(c, s)
}

pub fn approx_eq(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol
}

/// A complex number in serialized output.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for ComplexValue {
    fn from(z: C64) -> Self {
        ComplexValue { re: z.re, im: z.im }
    }
}

impl From<ComplexValue> for C64 {
    fn from(z: ComplexValue) -> Self {
        C64::new(z.re, z.im)
    }
}

/// A phase num/p^exp taken modulo 1, kept exact until conversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RationalPhase {
    p: u32,
    num: u128,
    exp: u32,
}

impl RationalPhase {
    pub fn new(p: u32, num: u128, exp: u32) -> Self {
        RationalPhase {
            p,
            num: num % pow_u128(p, exp),
            exp,
        }
    }

    pub fn zero(p: u32) -> Self {
        RationalPhase { p, num: 0, exp: 0 }
    }

    pub fn numerator(&self) -> u128 {
        self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn add(&self, other: &RationalPhase) -> RationalPhase {
        let e = self.exp.max(other.exp);
        let lift = |r: &RationalPhase| r.num * pow_u128(r.p, e - r.exp);
        RationalPhase::new(self.p, lift(self) + lift(other), e)
    }

    pub fn to_complex(&self) -> C64 {
        cis_frac(self.num, pow_u128(self.p, self.exp))
    }
}

/// Φ⁰_b : x ↦ Φ⁰(bx), where Φ⁰(x) = e^{2πi·frac_p(x)} has depth −1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdditiveCharacter {
    scale: PAdic,
}

impl AdditiveCharacter {
    pub fn standard(field: &Field) -> Self {
        AdditiveCharacter { scale: field.one() }
    }

    pub fn scaled(scale: PAdic) -> Result<Self> {
        if scale.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(AdditiveCharacter { scale })
    }

    /// The character Φ⁰_{p^{-1-depth}} of the given depth.
    pub fn with_depth(field: &Field, depth: i32) -> Self {
        AdditiveCharacter {
            scale: field.parts(1, -1 - depth),
        }
    }

    pub fn scale(&self) -> PAdic {
        self.scale
    }

    /// depth(Φ⁰_b) = −1 − ord(b).
    pub fn depth(&self) -> i32 {
        -1 - self.scale.valuation().expect("scale is nonzero")
    }

    /// Φ_b : x ↦ Φ(bx).
    pub fn twist(&self, b: &PAdic) -> Result<Self> {
        Self::scaled(self.scale * *b)
    }

    pub fn phase(&self, x: &PAdic) -> Result<RationalPhase> {
        let (num, exp) = (self.scale * *x).frac()?;
        Ok(RationalPhase::new(x.p(), num, exp))
    }

    pub fn eval(&self, x: &PAdic) -> Result<C64> {
        Ok(self.phase(x)?.to_complex())
    }

    /// The character of the residue field obtained by restricting the depth-0
    /// character Φ_{ϖ^{depth}} to O.
    pub fn residue_character(&self, field: &Field) -> ResidueAdditive {
        let t = self.scale * field.varpi_pow(self.depth());
        debug_assert_eq!(t.valuation(), Some(-1));
        ResidueAdditive::new(field.p(), t.residue().expect("nonzero"))
    }
}

/// x̄ ↦ e^{2πi·c·x/p} on the residue field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResidueAdditive {
    p: u32,
    c: u32,
}

impl ResidueAdditive {
    pub fn new(p: u32, c: u32) -> Self {
        assert!(c % p != 0, "residue character must be nontrivial");
        ResidueAdditive { p, c: c % p }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn constant(&self) -> u32 {
        self.c
    }

    pub fn eval(&self, x: i64) -> C64 {
        let x = x.rem_euclid(self.p as i64) as u128;
        cis_frac(self.c as u128 * x, self.p as u128)
    }
}

/// Characters of the residue field's multiplicative group that occur here.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueMultiplicative {
    Trivial,
    Quadratic,
}

impl ResidueMultiplicative {
    pub fn eval(&self, p: u32, x: i64) -> f64 {
        match self {
            Self::Trivial => 1.0,
            Self::Quadratic => legendre(p, x.rem_euclid(p as i64) as u64) as f64,
        }
    }
}

/// χ = ν^α·sgn_τ, with ν^α(x) = |x|^α.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MultiplicativeCharacter {
    alpha: C64,
    tau: SquareClass,
}

impl MultiplicativeCharacter {
    pub fn new(alpha: C64, tau: SquareClass) -> Self {
        MultiplicativeCharacter { alpha, tau }
    }

    pub fn real(alpha: f64, tau: SquareClass) -> Self {
        Self::new(C64::new(alpha, 0.0), tau)
    }

    pub fn nu_half(tau: SquareClass) -> Self {
        Self::real(0.5, tau)
    }

    pub fn trivial() -> Self {
        Self::real(0.0, SquareClass::One)
    }

    pub fn alpha(&self) -> C64 {
        self.alpha
    }

    pub fn tau(&self) -> SquareClass {
        self.tau
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.alpha, self.tau)
    }

    /// χ·sgn_σ.
    pub fn twist(&self, sigma: SquareClass) -> Self {
        Self::new(self.alpha, self.tau.times(sigma))
    }

    pub fn is_unramified(&self) -> bool {
        !self.tau.is_ramified()
    }

    /// χ(p^n) as a complex number: q^{−αn}·sgn_τ(p)^n.
    pub fn at_p_power(&self, field: &Field, n: i32) -> C64 {
        let q = field.q();
        let mag = (-self.alpha * q.ln() * n as f64).exp();
        let s = field.sgn(self.tau, &field.parts(1, n)).expect("nonzero");
        mag * s as f64
    }

    /// The value on a unit u: sgn_τ(u).
    pub fn on_unit(&self, p: u32, u: u64) -> f64 {
        if self.tau.is_ramified() {
            legendre(p, u) as f64
        } else {
            1.0
        }
    }

    /// The restriction to O^x, as a character of the residue field.
    pub fn residue_character(&self) -> ResidueMultiplicative {
        if self.tau.is_ramified() {
            ResidueMultiplicative::Quadratic
        } else {
            ResidueMultiplicative::Trivial
        }
    }

    /// True when χ is identically 1 (including ν^{πi/ln q}·sgn_ε).
    pub fn is_trivial(&self, field: &Field) -> bool {
        self.is_unramified() && (self.at_p_power(field, 1) - 1.0).norm() < 1e-12
    }

    pub fn eval(&self, field: &Field, x: &PAdic) -> Result<C64> {
        let n = x.ord()?;
        Ok(self.at_p_power(field, n) * self.on_unit(field.p(), x.residue()? as u64))
    }
}
