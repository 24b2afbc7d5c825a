//! The Fourier transform μ̂_{X*}(Y) of a regular semisimple orbital integral:
//! closed forms by regime, and the brute-force principal-value oracle they
//! are certified against.
//!
//! Throughout, d = depth(Φ) − ord β is the depth of Φ̇ = Φ_β, and
//! 2Σ = 2·depth(X*) + 2·depth(Y) decides the regime.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_closed;
use crate::bessel::bessel_oracle_many;
use crate::characters::{AdditiveCharacter, MultiplicativeCharacter, C64};
use crate::error::{Error, Result};
use crate::exp_sums::quadratic_integral_raw;
use crate::local_field::{Field, PAdic, SquareClass};
use crate::orbits::{
    c0, gamma_ram, gamma_un, gamma_wald, is_reduced, torus_transport, uv_m, weyl_order, AlgebraElement, DualElement,
    TorusType,
};
use crate::pv::{roots, window, Shell, BOUNDARY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Close,
    FarSameTorus,
    FarVanishing,
    BadShellSame,
    BadShellOther,
}

impl Regime {
    pub const ALL: [Regime; 5] = [
        Regime::Close,
        Regime::FarSameTorus,
        Regime::FarVanishing,
        Regime::BadShellSame,
        Regime::BadShellOther,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Regime::Close => "close",
            Regime::FarSameTorus => "far-same-torus",
            Regime::FarVanishing => "far-vanishing",
            Regime::BadShellSame => "bad-shell-same",
            Regime::BadShellOther => "bad-shell-other",
        }
    }

    pub fn is_bad_shell(self) -> bool {
        matches!(self, Regime::BadShellSame | Regime::BadShellOther)
    }

    pub fn is_far(self) -> bool {
        matches!(self, Regime::FarSameTorus | Regime::FarVanishing)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown regime {s:?}")))
    }
}

/// How a closed-form value is put together, for regression diffs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Structure {
    /// c₀ + coefficient·|D(Y)|^{-1/2}.
    Germ {
        c0: f64,
        coefficient: f64,
    },
    /// scale·γ·(Weyl sum), scale = q^{-(d+1)}|D(Y)|^{-1/2}.
    WeylSum {
        scale: f64,
        terms: usize,
    },
    Vanishing,
    /// A sum over the bad shell with the given number of terms.
    ShellSum {
        scale: f64,
        terms: usize,
    },
}

/// A closed-form value together with the data that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub value: C64,
    pub regime: Regime,
    pub gamma: C64,
    pub structure: Structure,
}

/// ⟨X*, Y⟩_{α,t} = βs(Nθ' + N⁻¹θ − N⁻¹t²), where N is the norm of α.
pub fn pairing_at(x: &DualElement, y: &AlgebraElement, norm: &PAdic, t: &PAdic) -> Result<PAdic> {
    let ninv = norm.inv()?;
    let inner = (*norm * y.thetap()).add(&(ninv * x.theta()))?;
    let inner = if t.is_zero() {
        inner
    } else {
        inner.sub(&(ninv * *t * *t))?
    };
    Ok(x.beta() * y.s() * inner)
}

/// 2Σ = 2 depth(X*) + 2 depth(Y).
pub fn sigma2(x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> i32 {
    x.depth2(phi) + y.depth2()
}

pub fn regime(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<Regime> {
    let s2 = sigma2(x, y, phi);
    let torus = x.torus_type(field);
    if s2 > 0 {
        return Ok(Regime::Close);
    }
    if s2 == 0 && torus == TorusType::Ramified {
        let same = field.square_class(&x.theta())? == field.square_class(&y.thetap())?;
        return Ok(if same {
            Regime::BadShellSame
        } else {
            Regime::BadShellOther
        });
    }
    Ok(if torus_transport(field, &x.theta(), &y.thetap())?.is_some() {
        Regime::FarSameTorus
    } else {
        Regime::FarVanishing
    })
}

/// Brute-force M_{X*}(Y): the double principal-value integral over x ∈ k^x
/// (restricted to norms from k_θ) and t ∈ k of Φ(⟨X*, Y⟩_{x,t}), with dt
/// giving O measure 1 and d^x x giving O^x measure 1.
///
/// The pairing splits as Φ(Ax)·Φ(B/x)·Φ(−cβs t²/x) with A = cβsθ',
/// B = cβsθ and Φ = Φ⁰_c. The t-integral depends on x only through its
/// valuation and unit digits mod p³, and x-shells outside the window are
/// checked to vanish. No closed form enters.
pub fn mock_mu_oracle(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<C64> {
    const GUARD: i32 = 1;
    let p = field.p();
    let cb = phi.scale() * x.beta() * y.s();
    let a_coef = cb * y.thetap();
    let b_coef = cb * x.theta();
    let tau = field.square_class(&x.theta())?;
    let leg: Vec<i32> = (0..p as u64).map(|w| field.legendre(w)).collect();
    let cb_ord = cb.ord()?;
    let m3 = (p as u64).pow(3);
    let neg_cb = (m3 - (cb.unit_mod(3)? as u64 % m3)) % m3;
    let (lo, hi) = window(a_coef.ord()?, b_coef.ord()?);
    let mut total = C64::new(0.0, 0.0);
    for n in lo - GUARD..=hi + GUARD {
        let shell = Shell::new(&a_coef, &b_coef, n)?;
        let table = roots(p, shell.l);
        // The t-integral for b = −cβs/x, memoised on the unit of b mod p³.
        let e = cb_ord - n;
        let mut memo: Vec<Option<C64>> = vec![None; m3 as usize];
        let sgn_pn = field.sgn(tau, &field.parts(1, n))?;
        let mut err = None;
        let mut acc = C64::new(0.0, 0.0);
        shell.for_each(3, |w, winv, ph| {
            let sgn = if tau.is_ramified() {
                sgn_pn * leg[(w % p as u64) as usize]
            } else {
                sgn_pn
            };
            if sgn != 1 || err.is_some() {
                return;
            }
            let key = (neg_cb as u128 * (winv % m3) as u128 % m3 as u128) as usize;
            let t_int = match memo[key] {
                Some(v) => v,
                None => match quadratic_integral_raw(p, e, key as u64) {
                    Ok(v) => {
                        memo[key] = Some(v);
                        v
                    }
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                },
            };
            acc += table[ph] * t_int;
        });
        if let Some(e) = err {
            return Err(e);
        }
        let val = acc * shell.measure();
        if n < lo || n > hi {
            if val.norm() > BOUNDARY_TOL {
                return Err(Error::BoundaryShell {
                    shell: n,
                    magnitude: val.norm(),
                });
            }
            continue;
        }
        total += val;
    }
    Ok(total)
}

fn require_reduced(field: &Field, x: &DualElement) -> Result<()> {
    if is_reduced(field, &x.theta()) {
        Ok(())
    } else {
        Err(Error::UnreducedTheta)
    }
}

/// The four-Bessel expression for M: with J^θ_χ = ½(J_χ + J_{χ sgn_θ}),
///
/// ½|s|^{-1/2} q^{-(d+1)/2} [(J^θ_{ν½} + γ_un J^θ_{ν½ sgn_ε})
///     + γ_ram (J^θ_{ν½ sgn_ϖ} − γ_un J^θ_{ν½ sgn_εϖ})],
///
/// the Bessel functions taken at (u, v) for the depth −1 character
/// Φ_{βϖ^{d+1}}. `bessel` evaluates J_χ for a list of characters.
fn second_orbital_with(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
    bessel: impl Fn(&[MultiplicativeCharacter], &PAdic, &PAdic, &AdditiveCharacter) -> Result<Vec<C64>>,
) -> Result<C64> {
    require_reduced(field, x)?;
    let q = field.q();
    let d = x.d(phi);
    let (u, v, _) = uv_m(field, x, y, phi)?;
    let phi_b = phi.twist(&(x.beta() * field.varpi_pow(d + 1)))?;
    let ct = field.square_class(&x.theta())?;
    let vc = field.varpi_class();
    let twists = [SquareClass::One, SquareClass::Eps, vc, vc.times(SquareClass::Eps)];
    let mut chis = Vec::with_capacity(8);
    for tau in twists {
        chis.push(MultiplicativeCharacter::nu_half(tau));
        chis.push(MultiplicativeCharacter::nu_half(tau.times(ct)));
    }
    let j = bessel(&chis, &u, &v, &phi_b)?;
    let jt = |i: usize| (j[2 * i] + j[2 * i + 1]) * 0.5;
    let g_un = gamma_un(field, d, &y.s())?;
    let g_ram = gamma_ram(field, &x.phi_dot(phi), &y.s())?;
    let bracket = (jt(0) + jt(1) * g_un) + g_ram * (jt(2) - jt(3) * g_un);
    let abs_s = q.powi(-y.s().ord()?);
    Ok(bracket * 0.5 * abs_s.powf(-0.5) * q.powf(-(d + 1) as f64 / 2.0))
}

/// The four-Bessel expression, with each J_χ from the closed forms.
pub fn second_orbital_form(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<C64> {
    second_orbital_with(field, x, y, phi, |chis, u, v, ph| {
        chis.iter().map(|c| bessel_closed(field, c, u, v, ph)).collect()
    })
}

/// The four-Bessel expression, with each J_χ from the Bessel oracle.
pub fn second_orbital_oracle(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
) -> Result<C64> {
    second_orbital_with(field, x, y, phi, |chis, u, v, ph| {
        bessel_oracle_many(field, chis, u, v, ph)
    })
}

/// Σ_{σ ∈ W(G,T)} Φ(⟨Ad*(σ)X*, Y⟩) for Y in the torus of X*. Y is first
/// moved to s̃√θ; the pairing is then 2βs̃θ and the nontrivial Weyl element
/// negates it. Returns the sum and its number of terms.
pub fn weyl_sum(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<(C64, usize)> {
    let Some(mult) = torus_transport(field, &x.theta(), &y.thetap())? else {
        return Err(Error::WrongRegime("tori are not conjugate".into()));
    };
    let yt = AlgebraElement::new(y.s() * mult, x.theta())?;
    let one = field.one();
    let pairing = pairing_at(x, &yt, &one, &field.int(0))?;
    let mut sum = phi.eval(&pairing)?;
    let terms = weyl_order(field, &x.theta())? as usize;
    if terms == 2 {
        sum += phi.eval(&-pairing)?;
    }
    Ok((sum, terms))
}

/// Σ_Z Φ(⟨X*, Z⟩) sgn_ϖ(Y² − Z²) over Z = c√ϖ, c running over
/// ϖ^{h−1}·{0, …, q−1}, with ⟨X*, Z⟩ = 2βϖc and Y² = s²θ'. When `exclude`
/// is given, c ≡ ±exclude mod p^h is skipped. Returns the sum and the
/// number of terms.
pub fn bad_shell_sum(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
    exclude: Option<&PAdic>,
) -> Result<(C64, usize)> {
    require_reduced(field, x)?;
    if x.torus_type(field) != TorusType::Ramified || sigma2(x, y, phi) != 0 {
        return Err(Error::WrongRegime("bad shell needs ramified X* and Σ = 0".into()));
    }
    let h = x.d(phi);
    let varpi = field.varpi();
    let vc = field.varpi_class();
    let y2 = y.s() * y.s() * y.thetap();
    let skip_digit = match exclude {
        Some(e) => {
            if e.ord()? != h - 1 {
                return Err(Error::WrongRegime("excluded point is not on the shell".into()));
            }
            Some((e.div(&field.varpi_pow(h - 1))?).residue()?)
        }
        None => None,
    };
    let p = field.p();
    let mut sum = C64::new(0.0, 0.0);
    let mut terms = 0;
    for j in 0..p {
        if let Some(k) = skip_digit {
            if j == k || j == p - k {
                continue;
            }
        }
        terms += 1;
        if j == 0 {
            sum += field.sgn(vc, &y2)? as f64;
            continue;
        }
        let c = field.parts(j as i128, 0) * field.varpi_pow(h - 1);
        let z = AlgebraElement::new(c, varpi)?;
        let pairing = pairing_at(x, &z, &field.one(), &field.int(0))?;
        let diff = y2.sub(&(c * c * varpi))?;
        sum += phi.eval(&pairing)? * field.sgn(vc, &diff)? as f64;
    }
    Ok((sum, terms))
}

/// μ̂_{X*}(Y) from the closed forms, dispatched by regime. θ must be 1, ε
/// or ϖ; see [`crate::orbits::gl2_reduce`].
pub fn mu_hat_closed(field: &Field, x: &DualElement, y: &AlgebraElement, phi: &AdditiveCharacter) -> Result<C64> {
    Ok(mu_hat_closed_detail(field, x, y, phi)?.value)
}

pub fn mu_hat_closed_detail(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
) -> Result<ClosedForm> {
    require_reduced(field, x)?;
    let q = field.q();
    let d = x.d(phi);
    let torus = x.torus_type(field);
    let gamma = gamma_wald(field, x, y, phi)?;
    let disc = y.abs_disc_inv_sqrt(field);
    let scale = q.powi(-(d + 1)) * disc;
    let regime = regime(field, x, y, phi)?;
    let (value, structure) = match regime {
        Regime::Close => {
            let c = ratio_f64(c0(field, torus));
            let n = torus.degree() as f64;
            let coefficient = 2.0 / n * q.powi(-(d + 1));
            (
                C64::new(c, 0.0) + gamma * coefficient * disc,
                Structure::Germ { c0: c, coefficient },
            )
        }
        Regime::FarVanishing => (C64::new(0.0, 0.0), Structure::Vanishing),
        Regime::FarSameTorus => {
            let (w, terms) = weyl_sum(field, x, y, phi)?;
            (gamma * w * scale, Structure::WeylSum { scale, terms })
        }
        Regime::BadShellOther => {
            let (sum, terms) = bad_shell_sum(field, x, y, phi, None)?;
            let scale = 0.5 * q.powi(-(d + 1)) * q.powf(-0.5) * disc;
            (sum * scale, Structure::ShellSum { scale, terms })
        }
        Regime::BadShellSame => {
            let xx = field
                .sqrt(&y.thetap().div(&field.varpi())?)?
                .ok_or_else(|| Error::MissingSqrt("theta'/varpi".into()))?;
            let yt = xx * y.s();
            let two_b_varpi = field.int(2) * x.beta() * field.varpi();
            let weyl = phi.eval(&(two_b_varpi * yt))? + phi.eval(&-(two_b_varpi * yt))?;
            let (sum, terms) = bad_shell_sum(field, x, y, phi, Some(&yt))?;
            let scale = 0.5 * q.powi(-(d + 1)) * disc;
            (
                (gamma * weyl + sum * q.powf(-0.5)) * scale,
                Structure::ShellSum { scale, terms },
            )
        }
    };
    Ok(ClosedForm {
        value,
        regime,
        gamma,
        structure,
    })
}

/// The single uniform expression, where it applies: for Σ > 0,
/// c₀ + (2/n)q^{-(d+1)}|D(Y)|^{-1/2}γ; otherwise (Σ < 0, or Σ = 0 for
/// unramified tori) q^{-(d+1)}|D(Y)|^{-1/2}γ·Σ_σ Φ(⟨Ad*(σ)X*, Y⟩), the sum
/// being empty unless X* and Y lie in G-conjugate tori. None at the bad shell.
///
/// Evaluated term by term, without the regime dispatcher.
pub fn mu_hat_uniform(
    field: &Field,
    x: &DualElement,
    y: &AlgebraElement,
    phi: &AdditiveCharacter,
) -> Result<Option<C64>> {
    require_reduced(field, x)?;
    let q = field.q();
    let d = x.d(phi);
    let torus = x.torus_type(field);
    let s2 = sigma2(x, y, phi);
    if s2 == 0 && torus == TorusType::Ramified {
        return Ok(None);
    }
    let gamma = gamma_wald(field, x, y, phi)?;
    let germ = q.powi(-(d + 1)) * y.abs_disc_inv_sqrt(field);
    if s2 > 0 {
        let n = torus.degree() as f64;
        return Ok(Some(ratio_f64(c0(field, torus)) + gamma * germ * (2.0 / n)));
    }
    let mut sum = C64::new(0.0, 0.0);
    if let Some(mult) = torus_transport(field, &x.theta(), &y.thetap())? {
        let yt = AlgebraElement::new(y.s() * mult, x.theta())?;
        let pairing = pairing_at(x, &yt, &field.one(), &field.int(0))?;
        sum += phi.eval(&pairing)?;
        if weyl_order(field, &x.theta())? == 2 {
            sum += phi.eval(&-pairing)?;
        }
    }
    Ok(Some(gamma * germ * sum))
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// The tabulated meas(K̇) ∈ {q⁻¹(q+1), q⁻¹(q−1), ½q⁻²(q²−1)}.
pub fn measure_table(p: u32, torus: TorusType) -> Ratio<i64> {
    let q = p as i64;
    match torus {
        TorusType::Split => Ratio::new(q + 1, q),
        TorusType::Unramified => Ratio::new(q - 1, q),
        TorusType::Ramified => Ratio::new(q * q - 1, 2 * q * q),
    }
}

/// meas(K̇) = q^{-2}·[SL₂(F_p) : T̄], both orders found by counting: matrices
/// of determinant 1, and solutions of a² − θ̄b² = 1 for the reduction θ̄ of
/// θ ∈ {1, ε, ϖ}.
pub fn verify_measure_normalization(p: u32, torus: TorusType) -> Result<Ratio<i64>> {
    let field = Field::new(p)?;
    let pp = p as i64;
    let theta_bar = match torus {
        TorusType::Split => 1,
        TorusType::Unramified => field.eps() as i64,
        TorusType::Ramified => 0,
    };
    let mut sl2 = 0i64;
    for a in 0..pp {
        for b in 0..pp {
            for c in 0..pp {
                for d in 0..pp {
                    if (a * d - b * c - 1).rem_euclid(pp) == 0 {
                        sl2 += 1;
                    }
                }
            }
        }
    }
    let mut torus_order = 0i64;
    for a in 0..pp {
        for b in 0..pp {
            if (a * a - theta_bar * b * b - 1).rem_euclid(pp) == 0 {
                torus_order += 1;
            }
        }
    }
    Ok(Ratio::new(sl2, torus_order * pp * pp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::approx_eq;

    fn setup(p: u32) -> (Field, AdditiveCharacter) {
        let f = Field::new(p).unwrap();
        let phi = AdditiveCharacter::standard(&f);
        (f, phi)
    }

    #[test]
    fn pairing_examples() {
        let (f, _) = setup(5);
        let x = DualElement::new(f.one(), f.one()).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        assert_eq!(pairing_at(&x, &y, &f.one(), &f.int(0)).unwrap(), f.int(2));
        let x = DualElement::new(f.int(3), f.int(2)).unwrap();
        let y = AlgebraElement::new(f.int(7), f.parts(2, 1)).unwrap();
        let n = f.parts(3, 2);
        let a = pairing_at(&x, &y, &n, &f.int(4)).unwrap();
        let b = pairing_at(&x, &y, &n, &f.int(-4)).unwrap();
        assert_eq!(a, b);
        assert_eq!(pairing_at(&x, &y, &f.one(), &f.int(0)).unwrap(), f.int(3 * 7 * 12));
    }

    #[test]
    fn regimes() {
        let (f, phi) = setup(5);
        let split = DualElement::new(f.one(), f.one()).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        assert_eq!(regime(&f, &split, &y, &phi).unwrap(), Regime::Close);
        let unr = DualElement::new(f.parts(1, -1), f.int(2)).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        assert_eq!(sigma2(&unr, &y, &phi), 0);
        assert_eq!(regime(&f, &unr, &y, &phi).unwrap(), Regime::FarVanishing);
        // ramified: d = 1 gives 2r = 1; Y = 1·√ϖ has depth ½.
        let ram = DualElement::new(f.parts(1, -2), f.int(5)).unwrap();
        let y = AlgebraElement::new(f.one(), f.int(5)).unwrap();
        assert_eq!(regime(&f, &ram, &y, &phi).unwrap(), Regime::BadShellSame);
        let y = AlgebraElement::new(f.one(), f.int(10)).unwrap();
        assert_eq!(regime(&f, &ram, &y, &phi).unwrap(), Regime::BadShellOther);
    }

    #[test]
    fn close_split_example_matches_oracle() {
        let (f, phi) = setup(5);
        let x = DualElement::new(f.one(), f.one()).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        let c = mu_hat_closed(&f, &x, &y, &phi).unwrap();
        assert!(approx_eq(c, C64::new(2.0, 0.0), 1e-12));
        let o = mock_mu_oracle(&f, &x, &y, &phi).unwrap();
        assert!(approx_eq(o, c, 1e-8), "{o} vs {c}");
    }

    #[test]
    fn unramified_against_split_vanishes() {
        let (f, phi) = setup(5);
        let x = DualElement::new(f.parts(1, -1), f.int(2)).unwrap();
        for os in [-1, 0] {
            let y = AlgebraElement::new(f.parts(1, os), f.one()).unwrap();
            assert!(sigma2(&x, &y, &phi) <= 0);
            assert_eq!(mu_hat_closed(&f, &x, &y, &phi).unwrap(), C64::new(0.0, 0.0));
            assert!(mock_mu_oracle(&f, &x, &y, &phi).unwrap().norm() < 1e-8);
        }
    }

    #[test]
    fn bad_shell_term_counts() {
        let (f, phi) = setup(3);
        let ram = DualElement::new(f.parts(1, -2), f.int(3)).unwrap();
        let y = AlgebraElement::new(f.one(), f.int(3)).unwrap();
        let (_, n) = bad_shell_sum(&f, &ram, &y, &phi, Some(&f.one())).unwrap();
        assert_eq!(n, 1);
        let y = AlgebraElement::new(f.one(), f.int(6)).unwrap();
        let (_, n) = bad_shell_sum(&f, &ram, &y, &phi, None).unwrap();
        assert_eq!(n, 3);
        let c = mu_hat_closed(&f, &ram, &y, &phi).unwrap();
        let o = mock_mu_oracle(&f, &ram, &y, &phi).unwrap();
        assert!(approx_eq(o, c, 1e-8), "{o} vs {c}");
    }

    #[test]
    fn unreduced_theta_is_rejected() {
        let (f, phi) = setup(5);
        let x = DualElement::new(f.one(), f.int(50)).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        assert_eq!(mu_hat_closed(&f, &x, &y, &phi), Err(Error::UnreducedTheta));
    }

    #[test]
    fn measure_counts() {
        for torus in [TorusType::Split, TorusType::Unramified, TorusType::Ramified] {
            assert_eq!(verify_measure_normalization(5, torus).unwrap(), measure_table(5, torus));
        }
        assert_eq!(measure_table(5, TorusType::Split), Ratio::new(6, 5));
        assert_eq!(measure_table(5, TorusType::Unramified), Ratio::new(4, 5));
        assert_eq!(measure_table(5, TorusType::Ramified), Ratio::new(12, 25));
    }

    #[test]
    fn weyl_sum_examples() {
        let (f, phi) = setup(7);
        // T_ϖ for p = 7 has Weyl order 1.
        let x = DualElement::new(f.parts(1, -1), f.int(7)).unwrap();
        let y = AlgebraElement::new(f.parts(1, -3), f.int(7)).unwrap();
        let (w, n) = weyl_sum(&f, &x, &y, &phi).unwrap();
        assert_eq!(n, 1);
        let expect = phi.eval(&(f.int(2) * x.beta() * y.s() * f.int(7))).unwrap();
        assert!(approx_eq(w, expect, 1e-12));
        let x = DualElement::new(f.one(), f.one()).unwrap();
        let y = AlgebraElement::new(f.one(), f.one()).unwrap();
        let (w, n) = weyl_sum(&f, &x, &y, &phi).unwrap();
        assert_eq!((w, n), (C64::new(2.0, 0.0), 2));
    }
}
