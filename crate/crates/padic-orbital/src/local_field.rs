//! Arithmetic in Q_p at fixed relative precision, square classes and the
//! Cayley map.
//!
//! A nonzero [`PAdic`] is `p^val * unit` with the unit known modulo
//! `p^prec`. Only zero is exact. Operations that cannot certify at least one
//! digit return [`Error::InsufficientPrecision`] rather than guessing.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_PRECISION: u32 = 24;

/// Largest modulus we allow for mantissas; keeps `addmod` overflow-free.
const MODULUS_LIMIT: u128 = 1 << 125;

pub(crate) fn addmod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub(crate) fn mulmod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b, mut r) = (a % m, b % m, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            r = addmod(r, a, m);
        }
        a = addmod(a, a, m);
        b >>= 1;
    }
    r
}

pub(crate) fn powmod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            r = mulmod(r, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    r
}

/// Inverse of a unit modulo `p^k` by Newton iteration from the inverse mod p.
pub(crate) fn inv_mod_pk(a: u128, p: u32, k: u32) -> u128 {
    let m = pow_u128(p, k);
    let pp = p as u128;
    let mut x = powmod(a % pp, pp - 2, pp);
    let mut known = 1;
    while known < k {
        known = (2 * known).min(k);
        let mk = pow_u128(p, known);
        // x <- x (2 - a x)
        let ax = mulmod(a % mk, x, mk);
        let two_minus = addmod(2 % mk, mk - ax, mk);
        x = mulmod(x, two_minus, mk);
    }
    x % m
}

pub(crate) fn pow_u128(p: u32, k: u32) -> u128 {
    (p as u128).pow(k)
}

pub(crate) fn pow_u64(p: u32, k: u32) -> u64 {
    (p as u64).pow(k)
}

/// Quadratic residue symbol of `u` modulo the odd prime `p`.
pub fn legendre(p: u32, u: u64) -> i32 {
    let u = u % p as u64;
    if u == 0 {
        return 0;
    }
    if powmod(u as u128, ((p - 1) / 2) as u128, p as u128) == 1 {
        1
    } else {
        -1
    }
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of the residue field O/p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueElement {
    p: u32,
    value: u32,
}

impl ResidueElement {
    pub fn new(p: u32, value: i64) -> Self {
        let value = value.rem_euclid(p as i64) as u32;
        ResidueElement { p, value }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn legendre(self) -> i32 {
        legendre(self.p, self.value as u64)
    }
}

/// Classes of k^x / (k^x)^2, named by the standard representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquareClass {
    One,
    Eps,
    Pi,
    EpsPi,
}

impl SquareClass {
    pub const ALL: [SquareClass; 4] = [Self::One, Self::Eps, Self::Pi, Self::EpsPi];

    fn bits(self) -> (bool, bool) {
        match self {
            Self::One => (false, false),
            Self::Eps => (false, true),
            Self::Pi => (true, false),
            Self::EpsPi => (true, true),
        }
    }

    fn from_bits(odd_valuation: bool, nonsquare_unit: bool) -> Self {
        match (odd_valuation, nonsquare_unit) {
            (false, false) => Self::One,
            (false, true) => Self::Eps,
            (true, false) => Self::Pi,
            (true, true) => Self::EpsPi,
        }
    }

    /// Product in the Klein four-group.
    pub fn times(self, other: SquareClass) -> SquareClass {
        let (a, b) = self.bits();
        let (c, d) = other.bits();
        Self::from_bits(a ^ c, b ^ d)
    }

    pub fn is_ramified(self) -> bool {
        self.bits().0
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::One => "1",
            Self::Eps => "eps",
            Self::Pi => "pi",
            Self::EpsPi => "eps-pi",
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A truncated p-adic number. `unit == 0` encodes exact zero.
#[derive(Clone, Copy, Debug)]
pub struct PAdic {
    p: u32,
    prec: u32,
    val: i32,
    unit: u128,
}

impl PAdic {
    pub fn zero(p: u32, prec: u32) -> Self {
        PAdic {
            p,
            prec,
            val: 0,
            unit: 0,
        }
    }

    pub fn from_int(p: u32, prec: u32, n: i128) -> Self {
        if n == 0 {
            return Self::zero(p, prec);
        }
        let mut n = n;
        let mut val = 0;
        while n % p as i128 == 0 {
            n /= p as i128;
            val += 1;
        }
        let m = pow_u128(p, prec);
        let unit = n.rem_euclid(m as i128) as u128;
        PAdic { p, prec, val, unit }
    }

    /// `unit * p^exp`; `unit` may itself contain factors of p.
    pub fn from_parts(p: u32, prec: u32, unit: i128, exp: i32) -> Self {
        let mut x = Self::from_int(p, prec, unit);
        if !x.is_zero() {
            x.val += exp;
        }
        x
    }

    pub fn from_ratio(p: u32, prec: u32, num: i128, den: i128) -> Result<Self> {
        let d = Self::from_int(p, prec, den);
        Ok(Self::from_int(p, prec, num) * d.inv()?)
    }

    pub fn is_zero(&self) -> bool {
        self.unit == 0
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// ord(x), with `None` standing for +infinity at exact zero.
    pub fn valuation(&self) -> Option<i32> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn ord(&self) -> Result<i32> {
        self.valuation().ok_or(Error::ZeroInput)
    }

    /// The unit part, known modulo `p^precision`.
    pub fn unit(&self) -> u128 {
        self.unit
    }

    pub fn unit_mod(&self, k: u32) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        if k > self.prec {
            return Err(Error::InsufficientPrecision(format!(
                "{k} unit digits requested, {} known",
                self.prec
            )));
        }
        Ok(self.unit % pow_u128(self.p, k))
    }

    /// Leading digit of the unit part.
    pub fn residue(&self) -> Result<u32> {
        Ok(self.unit_mod(1)? as u32)
    }

    /// The unit part as a p-adic unit.
    pub fn unit_part(&self) -> Result<PAdic> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(PAdic { val: 0, ..*self })
    }

    fn modulus(&self) -> u128 {
        pow_u128(self.p, self.prec)
    }

    pub fn shift(&self, k: i32) -> PAdic {
        if self.is_zero() {
            *self
        } else {
            PAdic {
                val: self.val + k,
                ..*self
            }
        }
    }

    pub fn inv(&self) -> Result<PAdic> {
        if self.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(PAdic {
            val: -self.val,
            unit: inv_mod_pk(self.unit, self.p, self.prec),
            ..*self
        })
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        Ok(*self * other.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<PAdic> {
        let base = if n < 0 { self.inv()? } else { *self };
        let mut r = PAdic::from_int(self.p, self.prec, 1);
        for _ in 0..n.unsigned_abs() {
            r = r * base;
        }
        Ok(r)
    }

    /// Sum with precision tracking. Fails when cancellation leaves no
    /// certified digit.
    pub fn add(&self, other: &PAdic) -> Result<PAdic> {
        assert_eq!(self.p, other.p, "mixing p-adic numbers of different primes");
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        let v = self.val.min(other.val);
        let abs = (self.val + self.prec as i32).min(other.val + other.prec as i32);
        let width = (abs - v) as u32;
        let m = pow_u128(self.p, width);
        let lift = |x: &PAdic| {
            let gap = (x.val - v) as u32;
            if gap >= width {
                0
            } else {
                mulmod(x.unit % m, pow_u128(x.p, gap), m)
            }
        };
        let mut sum = addmod(lift(self), lift(other), m);
        if sum == 0 {
            return Err(Error::InsufficientPrecision(format!(
                "sum cancels to all {width} known digits"
            )));
        }
        let mut k = 0;
        while sum % self.p as u128 == 0 {
            sum /= self.p as u128;
            k += 1;
        }
        Ok(PAdic {
            p: self.p,
            prec: width - k,
            val: v + k as i32,
            unit: sum,
        })
    }

    pub fn sub(&self, other: &PAdic) -> Result<PAdic> {
        self.add(&-*other)
    }

    /// Numerator `k` with frac_p(x) = k / p^l; needs ord(x) >= -l.
    pub fn frac_numerator(&self, l: u32) -> Result<u128> {
        if self.is_zero() || self.val >= 0 {
            return Ok(0);
        }
        let depth = (-self.val) as u32;
        if depth > l {
            return Err(Error::InsufficientPrecision(format!(
                "fractional part has {depth} digits, denominator p^{l}"
            )));
        }
        let k = self.unit_mod(depth)?;
        Ok(k * pow_u128(self.p, l - depth))
    }

    /// frac_p(x) as (numerator, exponent of the denominator p^e).
    pub fn frac(&self) -> Result<(u128, u32)> {
        if self.is_zero() || self.val >= 0 {
            return Ok((0, 0));
        }
        let e = (-self.val) as u32;
        Ok((self.frac_numerator(e)?, e))
    }

    /// Residue modulo p of an element of O.
    pub fn reduce(&self) -> Result<u32> {
        if self.is_zero() || self.val > 0 {
            return Ok(0);
        }
        if self.val < 0 {
            return Err(Error::Unsupported("element is not integral".into()));
        }
        self.residue()
    }
}

impl PartialEq for PAdic {
    fn eq(&self, other: &PAdic) -> bool {
        if self.p != other.p || self.is_zero() != other.is_zero() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let k = self.prec.min(other.prec);
        self.val == other.val && self.unit % pow_u128(self.p, k) == other.unit % pow_u128(self.p, k)
    }
}

impl std::ops::Mul for PAdic {
    type Output = PAdic;

    fn mul(self, other: PAdic) -> PAdic {
        assert_eq!(self.p, other.p, "mixing p-adic numbers of different primes");
        if self.is_zero() || other.is_zero() {
            return PAdic::zero(self.p, self.prec.max(other.prec));
        }
        let prec = self.prec.min(other.prec);
        let m = pow_u128(self.p, prec);
        PAdic {
            p: self.p,
            prec,
            val: self.val + other.val,
            unit: mulmod(self.unit, other.unit, m),
        }
    }
}

impl std::ops::Neg for PAdic {
    type Output = PAdic;

    fn neg(self) -> PAdic {
        if self.is_zero() {
            return self;
        }
        let m = self.modulus();
        PAdic {
            unit: (m - self.unit % m) % m,
            ..self
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}*{}^{} (mod p^{})", self.unit, self.p, self.val, self.prec)
    }
}

/// The base field Q_p together with the choices of ε and ϖ.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    prec: u32,
    eps: u32,
    varpi: PAdic,
    perturb: bool,
}

impl Field {
    pub fn new(p: u32) -> Result<Field> {
        Self::with_precision(p, DEFAULT_PRECISION)
    }

    pub fn with_precision(p: u32, prec: u32) -> Result<Field> {
        if !is_odd_prime(p as u64) {
            return Err(Error::InvalidPrime(p as u64));
        }
        if prec == 0 || (p as u128).checked_pow(prec).map_or(true, |m| m > MODULUS_LIMIT) {
            return Err(Error::InvalidPrecision { p, prec });
        }
        let eps = (2..p)
            .find(|&a| legendre(p, a as u64) == -1)
            .expect("odd prime has a non-residue");
        Ok(Field {
            p,
            prec,
            eps,
            varpi: PAdic::from_parts(p, prec, 1, 1),
            perturb: false,
        })
    }

    /// Replace the default ε (smallest non-residue) by another non-residue.
    pub fn with_epsilon(mut self, eps: u32) -> Result<Field> {
        if legendre(self.p, eps as u64) != -1 {
            return Err(Error::NotNonResidue(eps));
        }
        self.eps = eps;
        Ok(self)
    }

    /// Replace ϖ = p by another uniformiser.
    pub fn with_uniformiser(mut self, varpi: PAdic) -> Result<Field> {
        match varpi.valuation() {
            Some(1) => {
                self.varpi = varpi;
                Ok(self)
            }
            Some(v) => Err(Error::NotUniformiser(v)),
            None => Err(Error::ZeroInput),
        }
    }

    /// Harness canary: flips the sign of every Gauss sum in the closed forms.
    pub fn with_perturbation(mut self, on: bool) -> Field {
        self.perturb = on;
        self
    }

    pub fn perturbed(&self) -> bool {
        self.perturb
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.p as f64
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn eps(&self) -> u32 {
        self.eps
    }

    pub fn varpi(&self) -> PAdic {
        self.varpi
    }

    pub fn varpi_class(&self) -> SquareClass {
        self.square_class(&self.varpi).expect("uniformiser is nonzero")
    }

    pub fn int(&self, n: i128) -> PAdic {
        PAdic::from_int(self.p, self.prec, n)
    }

    pub fn parts(&self, unit: i128, exp: i32) -> PAdic {
        PAdic::from_parts(self.p, self.prec, unit, exp)
    }

    pub fn ratio(&self, num: i128, den: i128) -> Result<PAdic> {
        PAdic::from_ratio(self.p, self.prec, num, den)
    }

    pub fn one(&self) -> PAdic {
        self.int(1)
    }

    pub fn eps_elem(&self) -> PAdic {
        self.int(self.eps as i128)
    }

    /// ϖ^n for the configured uniformiser.
    pub fn varpi_pow(&self, n: i32) -> PAdic {
        self.varpi.pow(n).expect("uniformiser is invertible")
    }

    pub fn legendre(&self, u: u64) -> i32 {
        legendre(self.p, u)
    }

    pub fn residue(&self, value: i64) -> ResidueElement {
        ResidueElement::new(self.p, value)
    }

    pub fn square_class(&self, x: &PAdic) -> Result<SquareClass> {
        let v = x.ord()?;
        let nonsquare = legendre(self.p, x.residue()? as u64) == -1;
        Ok(SquareClass::from_bits(v.rem_euclid(2) == 1, nonsquare))
    }

    /// The quadratic character sgn_τ, whose kernel is the norm group of k(√τ).
    pub fn sgn(&self, tau: SquareClass, x: &PAdic) -> Result<i32> {
        let v = x.ord()?;
        let odd = v.rem_euclid(2) == 1;
        let sgn_eps = if odd { -1 } else { 1 };
        let sgn_pi = {
            let minus_one = legendre(self.p, self.p as u64 - 1);
            let leg = legendre(self.p, x.residue()? as u64);
            if odd {
                minus_one * leg
            } else {
                leg
            }
        };
        Ok(match tau {
            SquareClass::One => 1,
            SquareClass::Eps => sgn_eps,
            SquareClass::Pi => sgn_pi,
            SquareClass::EpsPi => sgn_eps * sgn_pi,
        })
    }

    /// The representative of `tau` among 1, ε, ϖ, εϖ.
    pub fn class_rep(&self, tau: SquareClass) -> PAdic {
        let vc = self.varpi_class();
        match tau {
            SquareClass::One => self.one(),
            SquareClass::Eps => self.eps_elem(),
            t if t == vc => self.varpi,
            _ => self.eps_elem() * self.varpi,
        }
    }

    /// A square root of `x` when `x` is a square. Of the two roots, the one
    /// whose lowest unit digit is smaller is returned.
    pub fn sqrt(&self, x: &PAdic) -> Result<Option<PAdic>> {
        if self.square_class(x)? != SquareClass::One {
            return Ok(None);
        }
        let p = self.p as u128;
        let prec = x.precision();
        let u = x.unit();
        let r0 = (1..p).find(|r| r * r % p == u % p).expect("residue is a square");
        let r0 = r0.min(p - r0);
        // Newton: r <- r - (r^2 - u) / (2r)
        let mut r = r0;
        let mut known = 1;
        while known < prec {
            known = (2 * known).min(prec);
            let m = pow_u128(self.p, known);
            let um = u % m;
            let f = addmod(mulmod(r, r, m), m - um, m);
            let inv2r = inv_mod_pk(mulmod(2, r, m), self.p, known);
            r = addmod(r, m - mulmod(f, inv2r, m), m);
        }
        let v = x.ord()? / 2;
        Ok(Some(PAdic {
            p: self.p,
            prec,
            val: v,
            unit: r,
        }))
    }

    /// c(X) = (1 + X)(1 - X)^{-1}.
    pub fn cayley(&self, x: &PAdic) -> Result<PAdic> {
        let one = self.one();
        let den = one.sub(x).map_err(|_| Error::Pole)?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(one.add(x)? * den.inv()?)
    }

    /// c^{-1}(x) = (x - 1)(x + 1)^{-1}.
    pub fn cayley_inv(&self, x: &PAdic) -> Result<PAdic> {
        let one = self.one();
        let den = x.add(&one).map_err(|_| Error::Pole)?;
        if den.is_zero() {
            return Err(Error::Pole);
        }
        Ok(x.sub(&one)? * den.inv()?)
    }
}
