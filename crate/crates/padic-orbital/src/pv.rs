//! Shell machinery for principal-value integrals over k^x.
//!
//! A shell `ord(x) = n` is cut into cosets `p^n w (1 + p^K)` with `w` running
//! over `(Z/p^K)^x`; each coset has multiplicative measure `p^{-K}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::characters::C64;
use crate::error::{Error, Result};
use crate::local_field::{pow_u64, PAdic};

/// Largest coset modulus a single shell may enumerate.
const MAX_COSETS: u64 = 1 << 31;

/// Tolerance for shells that the vanishing argument says are zero.
pub const BOUNDARY_TOL: f64 = 1e-12;

type RootKey = (u32, u32);

fn root_cache() -> &'static RwLock<HashMap<RootKey, Arc<Vec<C64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<RootKey, Arc<Vec<C64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The table j ↦ e^{2πi j/p^l}.
pub(crate) fn roots(p: u32, l: u32) -> Arc<Vec<C64>> {
    if let Some(t) = root_cache().read().unwrap().get(&(p, l)) {
        return t.clone();
    }
    let m = pow_u64(p, l);
    let table: Vec<C64> = (0..m)
        .map(|j| {
            let (s, c) = (std::f64::consts::TAU * j as f64 / m as f64).sin_cos();
            C64::new(c, s)
        })
        .collect();
    let table = Arc::new(table);
    root_cache().write().unwrap().entry((p, l)).or_insert(table).clone()
}

type QuadCache = RwLock<HashMap<(u32, u32, u64), C64>>;

fn quad_cache() -> &'static QuadCache {
    static CACHE: OnceLock<QuadCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Σ_{w ∈ (Z/p^l)^x} e^{2πi key·w²/p^l}.
pub(crate) fn quadratic_unit_sum(p: u32, l: u32, key: u64) -> C64 {
    let m = pow_u64(p, l);
    let key = key % m;
    if let Some(v) = quad_cache().read().unwrap().get(&(p, l, key)) {
        return *v;
    }
    let table = roots(p, l);
    let mut s = C64::new(0.0, 0.0);
    for w in 1..m {
        if w % p as u64 != 0 {
            s += table[((key as u128 * ((w * w) % m) as u128) % m as u128) as usize];
        }
    }
    quad_cache().write().unwrap().insert((p, l, key), s);
    s
}

pub(crate) fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

/// Shells of ∫ Φ⁰(Ux + V/x) f(x) d^x x that can be nonzero when f is
/// invariant under 1 + p: outside this range one of the two terms
/// oscillates on cosets of 1 + p while the other is constant there.
pub(crate) fn window(a: i32, b: i32) -> (i32, i32) {
    let lo = (-1 - a).min((b - a).div_euclid(2) + (b - a).rem_euclid(2));
    let hi = (b + 1).max((b - a).div_euclid(2));
    (lo, hi)
}

/// One shell ord(x) = n of a two-term oscillatory integral.
pub(crate) struct Shell {
    pub p: u32,
    /// Coset level: w runs over (Z/p^k)^x.
    pub k: u32,
    /// Phases are returned as numerators over p^l.
    pub l: u32,
    la: u32,
    lb: u32,
    ua: u64,
    vb: u64,
}

impl Shell {
    pub fn new(u: &PAdic, v: &PAdic, n: i32) -> Result<Shell> {
        let p = u.p();
        let a = u.ord()?;
        let b = v.ord()?;
        let la = (-(a + n)).max(0) as u32;
        let lb = (-(b - n)).max(0) as u32;
        let l = la.max(lb);
        let k = l.max(1);
        if pow_u64(p, k) > MAX_COSETS {
            return Err(Error::Unsupported(format!("shell {n} needs p^{k} cosets")));
        }
        Ok(Shell {
            p,
            k,
            l,
            la,
            lb,
            ua: u.unit_mod(la)? as u64,
            vb: v.unit_mod(lb)? as u64,
        })
    }

    pub fn measure(&self) -> f64 {
        (self.p as f64).powi(-(self.k as i32))
    }

    /// Calls `f(w, w^{-1}, phase)` for each unit w mod p^k, where the inverse
    /// is taken mod p^{max(k, inv_digits)} and `phase` is the numerator over
    /// p^l of frac(U p^n w) + frac(V p^{-n} w^{-1}).
    pub fn for_each(&self, inv_digits: u32, mut f: impl FnMut(u64, u64, usize)) {
        let p = self.p as u64;
        let m = pow_u64(self.p, self.k);
        let minv = pow_u64(self.p, self.k.max(inv_digits));
        let ma = pow_u64(self.p, self.la);
        let mb = pow_u64(self.p, self.lb);
        let sa = pow_u64(self.p, self.l - self.la);
        let sb = pow_u64(self.p, self.l - self.lb);
        let ml = pow_u64(self.p, self.l);
        for w in 1..m {
            if w % p == 0 {
                continue;
            }
            let winv = inv_mod(w, minv);
            let ta = (self.ua as u128 * (w % ma) as u128 % ma as u128) as u64 * sa;
            let tb = (self.vb as u128 * (winv % mb) as u128 % mb as u128) as u64 * sb;
            f(w, winv, ((ta + tb) % ml) as usize);
        }
    }
}
