//! The certification grid: enumeration, per-point evaluation, and a runner
//! that is data-parallel under the `parallel` feature.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::characters::{AdditiveCharacter, ComplexValue};
use crate::error::{Error, Result};
use crate::local_field::{Field, PAdic};
use crate::orbits::{gl2_reduce, transport_algebra, AlgebraElement, DualElement};
use crate::transform::{mock_mu_oracle, mu_hat_closed_detail, sigma2, Regime, Structure};

/// A p-adic literal u·p^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub unit: i64,
    pub exp: i32,
}

impl Literal {
    pub fn new(unit: i64, exp: i32) -> Self {
        Literal { unit, exp }
    }

    pub fn to_padic(self, field: &Field) -> Result<PAdic> {
        if self.unit == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(field.parts(self.unit as i128, self.exp))
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*p^{}", self.unit, self.exp)
    }
}

impl FromStr for Literal {
    type Err = Error;

    /// Accepts `u*p^k`, `p^k` and plain integers.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Unsupported(format!("cannot parse literal {s:?}; expected u*p^k"));
        let s = s.trim();
        let (unit, exp) = match s.split_once("p^") {
            Some((head, exp)) => {
                let head = head.trim_end_matches('*');
                let unit = if head.is_empty() {
                    1
                } else {
                    head.parse().map_err(|_| bad())?
                };
                (unit, exp.parse().map_err(|_| bad())?)
            }
            None => (s.parse().map_err(|_| bad())?, 0),
        };
        if unit == 0 {
            return Err(Error::ZeroInput);
        }
        Ok(Literal { unit, exp })
    }
}

impl Serialize for Literal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// θ or θ', named by a representative built from ε and ϖ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ThetaRep {
    One,
    Eps,
    Pi,
    EpsPi,
    Pi2Eps,
    Eps2Pi,
    Eps3Pi,
    Literal(Literal),
}

impl ThetaRep {
    pub const NAMED: [ThetaRep; 7] = [
        ThetaRep::One,
        ThetaRep::Eps,
        ThetaRep::Pi,
        ThetaRep::EpsPi,
        ThetaRep::Pi2Eps,
        ThetaRep::Eps2Pi,
        ThetaRep::Eps3Pi,
    ];

    /// The θ used for X* in the grid.
    pub const GRID_THETA: [ThetaRep; 5] = [
        ThetaRep::One,
        ThetaRep::Eps,
        ThetaRep::Pi,
        ThetaRep::Eps2Pi,
        ThetaRep::Pi2Eps,
    ];

    pub fn name(&self) -> String {
        match self {
            ThetaRep::One => "1".into(),
            ThetaRep::Eps => "eps".into(),
            ThetaRep::Pi => "pi".into(),
            ThetaRep::EpsPi => "eps-pi".into(),
            ThetaRep::Pi2Eps => "pi2-eps".into(),
            ThetaRep::Eps2Pi => "eps2-pi".into(),
            ThetaRep::Eps3Pi => "eps3-pi".into(),
            ThetaRep::Literal(l) => l.to_string(),
        }
    }

    pub fn to_padic(&self, field: &Field) -> Result<PAdic> {
        let e = field.eps_elem();
        let w = field.varpi();
        Ok(match self {
            ThetaRep::One => field.one(),
            ThetaRep::Eps => e,
            ThetaRep::Pi => w,
            ThetaRep::EpsPi => e * w,
            ThetaRep::Pi2Eps => w * w * e,
            ThetaRep::Eps2Pi => e * e * w,
            ThetaRep::Eps3Pi => e * e * e * w,
            ThetaRep::Literal(l) => l.to_padic(field)?,
        })
    }
}

impl fmt::Display for ThetaRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for ThetaRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(t) = ThetaRep::NAMED.iter().find(|t| t.name() == s) {
            return Ok(*t);
        }
        Ok(ThetaRep::Literal(s.parse()?))
    }
}

impl Serialize for ThetaRep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ThetaRep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One input (X*, Y, Φ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridPoint {
    pub p: u32,
    pub phi_depth: i32,
    pub beta: Literal,
    pub theta: ThetaRep,
    pub s: Literal,
    pub thetap: ThetaRep,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvalOptions {
    pub precision: u32,
    pub tol: f64,
    pub epsilon: Option<u32>,
    pub perturb: bool,
    pub with_oracle: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            precision: crate::local_field::DEFAULT_PRECISION,
            tol: 1e-8,
            epsilon: None,
            perturb: false,
            with_oracle: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub p: u32,
    pub phi_depth: i32,
    pub beta: Literal,
    pub theta: ThetaRep,
    pub s: Literal,
    pub thetap: ThetaRep,
    pub sigma2: i32,
    pub regime: Regime,
    pub gamma: ComplexValue,
    pub structure: Structure,
    pub closed_value: ComplexValue,
    pub oracle_value: Option<ComplexValue>,
    pub abs_error: Option<f64>,
    pub pass: bool,
}

impl GridPoint {
    pub fn field(&self, opts: &EvalOptions) -> Result<Field> {
        let mut field = Field::with_precision(self.p, opts.precision)?.with_perturbation(opts.perturb);
        if let Some(e) = opts.epsilon {
            field = field.with_epsilon(e)?;
        }
        Ok(field)
    }

    /// The pair (X*, Y) with θ reduced to 1, ε or ϖ and Y transported along.
    pub fn elements(&self, field: &Field) -> Result<(DualElement, AlgebraElement)> {
        let x = DualElement::new(self.beta.to_padic(field)?, self.theta.to_padic(field)?)?;
        let y = AlgebraElement::new(self.s.to_padic(field)?, self.thetap.to_padic(field)?)?;
        let (xr, b) = gl2_reduce(field, &x)?;
        Ok((xr, transport_algebra(&y, &b)?))
    }

    pub fn evaluate(&self, opts: &EvalOptions) -> Result<EvalReport> {
        let field = self.field(opts)?;
        let phi = AdditiveCharacter::with_depth(&field, self.phi_depth);
        let (x, y) = self.elements(&field)?;
        let closed = mu_hat_closed_detail(&field, &x, &y, &phi)?;
        let oracle = if opts.with_oracle {
            Some(mock_mu_oracle(&field, &x, &y, &phi)?)
        } else {
            None
        };
        let abs_error = oracle.map(|o| (o - closed.value).norm());
        Ok(EvalReport {
            p: self.p,
            phi_depth: self.phi_depth,
            beta: self.beta,
            theta: self.theta,
            s: self.s,
            thetap: self.thetap,
            sigma2: sigma2(&x, &y, &phi),
            regime: closed.regime,
            gamma: closed.gamma.into(),
            structure: closed.structure,
            closed_value: closed.value.into(),
            oracle_value: oracle.map(Into::into),
            abs_error,
            pass: abs_error.map_or(true, |e| e <= opts.tol),
        })
    }

    /// The regime, without evaluating anything.
    pub fn regime(&self) -> Result<Regime> {
        let field = self.field(&EvalOptions::default())?;
        let phi = AdditiveCharacter::with_depth(&field, self.phi_depth);
        let (x, y) = self.elements(&field)?;
        crate::transform::regime(&field, &x, &y, &phi)
    }
}

/// |2Σ| ≤ this many units around each regime boundary.
pub const SIGMA_SWEEP: i32 = 4;

/// The grid for one prime: θ ∈ {1, ε, ϖ, ε²ϖ, ϖ²ε}, β = p^{−1−d} for
/// d ∈ {−2, …, 1} with Φ of depth −1, θ' over seven representatives
/// covering each square class (and both rational classes where they differ),
/// s ∈ {1, ε}·p^k for every k with |2Σ| ≤ 4.
pub fn certification_grid(p: u32) -> Result<Vec<GridPoint>> {
    let eps = Field::new(p)?.eps() as i64;
    grid_with(p, SIGMA_SWEEP, &[1, eps])
}

/// A thinner grid: unit part of s fixed to 1 and |2Σ| ≤ 2.
pub fn quick_grid(p: u32) -> Result<Vec<GridPoint>> {
    grid_with(p, 2, &[1])
}

fn grid_with(p: u32, sweep: i32, units: &[i64]) -> Result<Vec<GridPoint>> {
    let field = Field::new(p)?;
    let mut out = Vec::new();
    for theta in ThetaRep::GRID_THETA {
        let ot = theta.to_padic(&field)?.ord()?;
        for d in -2..=1 {
            for thetap in ThetaRep::NAMED {
                let otp = thetap.to_padic(&field)?.ord()?;
                for os in -6..=6 {
                    if (-2 * d + ot + 2 * os + otp).abs() > sweep {
                        continue;
                    }
                    for &su in units {
                        out.push(GridPoint {
                            p,
                            phi_depth: -1,
                            beta: Literal::new(1, -1 - d),
                            theta,
                            s: Literal::new(su, os),
                            thetap,
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

pub fn run_sequential(points: &[GridPoint], opts: &EvalOptions) -> Vec<Result<EvalReport>> {
    points.iter().map(|g| g.evaluate(opts)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_parallel(points: &[GridPoint], opts: &EvalOptions) -> Vec<Result<EvalReport>> {
    use rayon::prelude::*;
    points.par_iter().map(|g| g.evaluate(opts)).collect()
}

/// Evaluates every point; results are in input order either way.
pub fn run(points: &[GridPoint], opts: &EvalOptions) -> Vec<Result<EvalReport>> {
    #[cfg(feature = "parallel")]
    {
        run_parallel(points, opts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_sequential(points, opts)
    }
}
