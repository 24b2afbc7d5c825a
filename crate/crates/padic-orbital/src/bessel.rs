//! p-adic Bessel functions J_χ(u, v) = PV ∫ Φ(ux + v/x) χ(x) d^x x, for a
//! depth −1 character Φ.

use crate::characters::{AdditiveCharacter, MultiplicativeCharacter, C64};
use crate::error::{Error, Result};
use crate::exp_sums::{gamma_factor, gauss_sum, kloosterman};
use crate::local_field::{Field, PAdic, SquareClass};
use crate::pv::{roots, window, Shell, BOUNDARY_TOL};

const GUARD: i32 = 2;

fn check_depth(phi: &AdditiveCharacter) -> Result<()> {
    match phi.depth() {
        -1 => Ok(()),
        d => Err(Error::WrongDepth(d)),
    }
}

/// Brute-force J_χ(u, v) by direct shell summation; no closed form is used.
pub fn bessel_oracle(
    field: &Field,
    chi: &MultiplicativeCharacter,
    u: &PAdic,
    v: &PAdic,
    phi: &AdditiveCharacter,
) -> Result<C64> {
    Ok(bessel_oracle_many(field, std::slice::from_ref(chi), u, v, phi)?[0])
}

/// J_χ(u, v) for several χ at once. Every χ here is trivial on 1 + p, so a
/// shell only needs the two partial sums over w with sgn(w) = ±1.
pub fn bessel_oracle_many(
    field: &Field,
    chis: &[MultiplicativeCharacter],
    u: &PAdic,
    v: &PAdic,
    phi: &AdditiveCharacter,
) -> Result<Vec<C64>> {
    check_depth(phi)?;
    let p = field.p();
    let uu = phi.scale() * *u;
    let vv = phi.scale() * *v;
    let (lo, hi) = window(uu.ord()?, vv.ord()?);
    let leg: Vec<i32> = (0..p as u64).map(|x| field.legendre(x)).collect();
    let mut out = vec![C64::new(0.0, 0.0); chis.len()];
    for n in lo - GUARD..=hi + GUARD {
        let shell = Shell::new(&uu, &vv, n)?;
        let table = roots(p, shell.l);
        let (mut plus, mut minus) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        shell.for_each(0, |w, _, ph| {
            if leg[(w % p as u64) as usize] == 1 {
                plus += table[ph];
            } else {
                minus += table[ph];
            }
        });
        plus *= shell.measure();
        minus *= shell.measure();
        if n < lo || n > hi {
            let mag = plus.norm().max(minus.norm());
            if mag > BOUNDARY_TOL {
                return Err(Error::BoundaryShell {
                    shell: n,
                    magnitude: mag,
                });
            }
            continue;
        }
        for (acc, chi) in out.iter_mut().zip(chis) {
            let units = if chi.is_unramified() {
                plus + minus
            } else {
                plus - minus
            };
            *acc += chi.at_p_power(field, n) * units;
        }
    }
    Ok(out)
}

/// J_χ(u, v) from the closed forms: Γ-factors for m ≤ 1, a Kloosterman sum
/// for m = 2, vanishing for odd m > 2, and the two-point formula for even
/// m ≥ 4. Valid for χ trivial on 1 + p.
pub fn bessel_closed(
    field: &Field,
    chi: &MultiplicativeCharacter,
    u: &PAdic,
    v: &PAdic,
    phi: &AdditiveCharacter,
) -> Result<C64> {
    check_depth(phi)?;
    let std_phi = AdditiveCharacter::standard(field);
    // Φ⁰_c(ux + v/x) = Φ⁰(cux + cv/x).
    let uu = phi.scale() * *u;
    let vv = phi.scale() * *v;
    let m = -(uu.ord()? + vv.ord()?);
    let q = field.q();
    if m <= 1 {
        if chi.is_trivial(field) {
            // The Γ-factors have poles here; the shells add up to this instead.
            return Ok(C64::new((1.0 - 1.0 / q) * (1 - m) as f64 - 2.0 / q, 0.0));
        }
        let g_inv = gamma_factor(field, &chi.inverse(), &std_phi)?;
        let g = gamma_factor(field, chi, &std_phi)?;
        return Ok(chi.eval(field, &vv)? * g_inv + g / chi.eval(field, &uu)?);
    }
    if m == 2 {
        let varpi = field.varpi();
        let xi = (varpi * varpi * uu * vv).residue()?;
        let phibar = std_phi.residue_character(field);
        let k = kloosterman(chi.residue_character(), &phibar, xi)?;
        return Ok(k / (q * chi.eval(field, &(uu * varpi))?));
    }
    if m % 2 == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    let uv = uu * vv;
    let Some(w) = field.sqrt(&uv)? else {
        return Ok(C64::new(0.0, 0.0));
    };
    let minus_one = field.int(-1);
    let two_w = field.int(2) * w;
    let plus_term = std_phi.eval(&two_w)?;
    let minus_term = std_phi.eval(&-two_w)?;
    let chi_m1 = chi.eval(field, &minus_one)?;
    let front = q.powf(-(m as f64) / 4.0) * chi.eval(field, &(uu.inv()? * w))?;
    if m % 4 == 0 {
        Ok(front * (plus_term + chi_m1 * minus_term))
    } else {
        let vc = field.varpi_class();
        let sgn_w = field.sgn(vc, &w)? as f64;
        let sgn_m1 = field.sgn(vc, &minus_one)? as f64;
        let g = gauss_sum(field, &field.varpi(), &std_phi)?;
        Ok(front * g * sgn_w * (plus_term + chi_m1 * sgn_m1 * minus_term))
    }
}

/// F_χ(m/2, uv) = ∫_{ord x = −m/2} Φ(x + uv/x) χ(x) d^x x, summed directly.
pub fn f_chi(field: &Field, chi: &MultiplicativeCharacter, m: i32, uv: &PAdic, phi: &AdditiveCharacter) -> Result<C64> {
    check_depth(phi)?;
    if m % 2 != 0 || m < 2 {
        return Err(Error::Unsupported(format!("F_chi needs even m >= 2, got {m}")));
    }
    let n = -m / 2;
    let uu = phi.scale();
    let vv = phi.scale() * *uv;
    let shell = Shell::new(&uu, &vv, n)?;
    let table = roots(field.p(), shell.l);
    let mut s = C64::new(0.0, 0.0);
    shell.for_each(0, |w, _, ph| {
        s += table[ph] * chi.on_unit(field.p(), w % field.p() as u64)
    });
    Ok(s * shell.measure() * chi.at_p_power(field, n))
}

/// J^τ_χ = ½(J_χ + J_{χ·sgn_τ}), from the closed forms.
pub fn bessel_theta(
    field: &Field,
    chi: &MultiplicativeCharacter,
    tau: SquareClass,
    u: &PAdic,
    v: &PAdic,
    phi: &AdditiveCharacter,
) -> Result<C64> {
    let a = bessel_closed(field, chi, u, v, phi)?;
    let b = bessel_closed(field, &chi.twist(tau), u, v, phi)?;
    Ok((a + b) * 0.5)
}

/// The eight characters ν^α·sgn_τ with α ∈ {0, 1/2}.
pub fn standard_twists() -> Vec<MultiplicativeCharacter> {
    let mut out = Vec::with_capacity(8);
    for alpha in [0.0, 0.5] {
        for tau in SquareClass::ALL {
            out.push(MultiplicativeCharacter::real(alpha, tau));
        }
    }
    out
}
