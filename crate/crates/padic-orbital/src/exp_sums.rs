//! Gauss sums, twisted Kloosterman sums, Γ-factors and Shalika's H.

use crate::characters::{AdditiveCharacter, MultiplicativeCharacter, ResidueAdditive, ResidueMultiplicative, C64};
use crate::error::{Error, Result};
use crate::local_field::{legendre, pow_u64, Field, PAdic};
use crate::pv::{quadratic_unit_sum, BOUNDARY_TOL};

/// G_ϖ(Φ) = q^{-1/2} Σ_{X ∈ O/p} Φ_{(−ϖ)^{depth Φ}}(X²).
pub fn gauss_sum(field: &Field, varpi: &PAdic, phi: &AdditiveCharacter) -> Result<C64> {
    match varpi.valuation() {
        Some(1) => {}
        Some(v) => return Err(Error::NotUniformiser(v)),
        None => return Err(Error::ZeroInput),
    }
    let d = phi.depth();
    let t = phi.scale() * (-*varpi).pow(d)?;
    let c = t.residue()? as u64;
    let p = field.p() as u64;
    let s: C64 = (0..p)
        .map(|x| crate::characters::cis_frac((c * x * x % p) as u128, p as u128))
        .sum();
    let g = s / field.q().sqrt();
    Ok(if field.perturbed() { -g } else { g })
}

/// Σ_{X ∈ k̄^x} Φ̄(X) sgn(X).
pub fn finite_gauss_sum(phibar: &ResidueAdditive) -> C64 {
    let p = phibar.p();
    (1..p as i64)
        .map(|x| phibar.eval(x) * legendre(p, x as u64) as f64)
        .sum()
}

/// K(χ̄, Φ̄; ξ) = Σ_{x ∈ k̄^x} Φ̄(x + ξ/x) χ̄(x).
pub fn kloosterman(chibar: ResidueMultiplicative, phibar: &ResidueAdditive, xi: u32) -> Result<C64> {
    let p = phibar.p();
    if xi % p == 0 {
        return Err(Error::ZeroInput);
    }
    let pp = p as u64;
    Ok((1..pp)
        .map(|x| {
            let xinv = crate::pv::inv_mod(x, pp);
            phibar.eval(((x + xi as u64 * xinv) % pp) as i64) * chibar.eval(p, x as i64)
        })
        .sum())
}

/// The same sum through the finite-field identities: for trivial χ̄,
/// Σ_{c² ≠ ξ} Φ̄(2c) sgn(c² − ξ); for quadratic χ̄ (Salié),
/// sgn(ξ) G(sgn, Φ̄) Σ_{c² = ξ} Φ̄(2c).
pub fn kloosterman_via_salie(chibar: ResidueMultiplicative, phibar: &ResidueAdditive, xi: u32) -> Result<C64> {
    let p = phibar.p() as i64;
    let xi = xi as i64 % p;
    if xi == 0 {
        return Err(Error::ZeroInput);
    }
    Ok(match chibar {
        ResidueMultiplicative::Trivial => (0..p)
            .filter(|c| (c * c - xi).rem_euclid(p) != 0)
            .map(|c| phibar.eval(2 * c) * legendre(p as u32, (c * c - xi).rem_euclid(p) as u64) as f64)
            .sum(),
        ResidueMultiplicative::Quadratic => {
            let roots: C64 = (0..p)
                .filter(|c| (c * c - xi).rem_euclid(p) == 0)
                .map(|c| phibar.eval(2 * c))
                .sum();
            finite_gauss_sum(phibar) * legendre(p as u32, xi as u64) as f64 * roots
        }
    })
}

/// Γ(χ) = PV ∫ Φ(x) χ(x) d^x x, as an exact shell sum.
///
/// Shells ord(x) > depth(Φ) see Φ trivially; their sum is a geometric series,
/// summed in closed form, which vanishes identically for ramified χ. The
/// shell ord(x) = depth(Φ) is summed directly; deeper shells vanish and two
/// of them are checked.
pub fn gamma_factor(field: &Field, chi: &MultiplicativeCharacter, phi: &AdditiveCharacter) -> Result<C64> {
    let d = phi.depth();
    let q = field.q();
    let tail = if chi.is_unramified() {
        if chi.is_trivial(field) {
            return Err(Error::TrivialCharacter);
        }
        let r = chi.at_p_power(field, 1);
        (1.0 - 1.0 / q) * r.powi(d + 1) / (1.0 - r)
    } else {
        C64::new(0.0, 0.0)
    };
    let mut total = tail;
    for n in (d - 2..=d).rev() {
        let k = (d - n + 1) as u32;
        let m = pow_u64(field.p(), k);
        let mut s = C64::new(0.0, 0.0);
        for w in (1..m).filter(|w| w % field.p() as u64 != 0) {
            let x = field.parts(w as i128, n);
            s += phi.eval(&x)? * chi.on_unit(field.p(), w % field.p() as u64);
        }
        // The vanishing check is on the unit sum, before χ(p^n) scales it.
        let units = s * q.powi(-(k as i32));
        if n < d {
            if units.norm() > BOUNDARY_TOL {
                return Err(Error::BoundaryShell {
                    shell: n,
                    magnitude: units.norm(),
                });
            }
            continue;
        }
        total += units * chi.at_p_power(field, n);
    }
    Ok(total)
}

/// PV ∫_k Φ⁰(b t²) dt with dt giving O measure 1, from the exponent and unit
/// digits (mod p³) of b.
///
/// For ord(bt²) ≥ 0 the integrand is 1 and those shells sum to q^{-n₀}.
/// Below that, the shell with p^L in the denominator is a quadratic sum over
/// (Z/p^L)^x; only L = 1 survives, and L ≤ 3 is checked.
pub(crate) fn quadratic_integral_raw(p: u32, e: i32, unit_mod_p3: u64) -> Result<C64> {
    let q = p as f64;
    let n0 = (-e).div_euclid(2) + (-e).rem_euclid(2);
    let mut total = C64::new(q.powi(-n0), 0.0);
    let mut n = n0 - 1;
    loop {
        let l = -e - 2 * n;
        if l > 3 {
            break;
        }
        let s = quadratic_unit_sum(p, l as u32, unit_mod_p3) * q.powi(-n - l);
        if l >= 2 && s.norm() > BOUNDARY_TOL {
            return Err(Error::BoundaryShell {
                shell: n,
                magnitude: s.norm(),
            });
        }
        total += s;
        n -= 1;
    }
    Ok(total)
}

/// PV ∫_k Φ(b t²) dt.
pub fn quadratic_integral(phi: &AdditiveCharacter, b: &PAdic) -> Result<C64> {
    let bb = phi.scale() * *b;
    quadratic_integral_raw(b.p(), bb.ord()?, bb.unit_mod(3)? as u64)
}

/// Shalika's H(Φ̇, b) = |b|^{-1/2}·(sgn_ϖ(b) G_ϖ(Φ̇) or 1 by the parity of
/// depth(Φ̇) − ord(b)).
pub fn shalika_h(field: &Field, phi_dot: &AdditiveCharacter, b: &PAdic) -> Result<C64> {
    let ob = b.ord()?;
    let abs_b = field.q().powi(-ob);
    let body = if (phi_dot.depth() - ob).rem_euclid(2) == 0 {
        gauss_sum(field, &field.varpi(), phi_dot)? * field.sgn(field.varpi_class(), b)? as f64
    } else {
        C64::new(1.0, 0.0)
    };
    Ok(body / abs_b.sqrt())
}

/// H(Φ̇, b) as ∫ Φ̇(b t²) d_Φ̇ t, where the self-dual measure is
/// q^{(depth+1)/2} dt.
pub fn shalika_h_oracle(field: &Field, phi_dot: &AdditiveCharacter, b: &PAdic) -> Result<C64> {
    let norm = field.q().powf((phi_dot.depth() + 1) as f64 / 2.0);
    Ok(quadratic_integral(phi_dot, b)? * norm)
}
