use padic_orbital::characters::{
    approx_eq, AdditiveCharacter, MultiplicativeCharacter, ResidueAdditive, ResidueMultiplicative, C64,
};
use padic_orbital::exp_sums::{
    finite_gauss_sum, gamma_factor, gauss_sum, kloosterman, kloosterman_via_salie, shalika_h, shalika_h_oracle,
};
use padic_orbital::local_field::legendre;
use padic_orbital::{Field, SquareClass};
use proptest::prelude::*;

const PRIMES: [u32; 6] = [3, 5, 7, 11, 13, 17];

#[test]
fn finite_gauss_sum_squares_to_plus_minus_p() {
    for p in PRIMES {
        for c in 1..p {
            let g = finite_gauss_sum(&ResidueAdditive::new(p, c));
            let expect = legendre(p, p as u64 - 1) as f64 * p as f64;
            assert!(approx_eq(g * g, C64::new(expect, 0.0), 1e-9), "p = {p}, c = {c}");
        }
    }
}

#[test]
fn normalised_gauss_sum_is_a_fourth_root_of_unity() {
    for p in PRIMES {
        let f = Field::new(p).unwrap();
        for d in -3..3 {
            let g = gauss_sum(&f, &f.varpi(), &AdditiveCharacter::with_depth(&f, d)).unwrap();
            let g4 = g.powi(4);
            assert!(approx_eq(g4, C64::new(1.0, 0.0), 1e-9), "p = {p}, depth {d}: {g}");
        }
    }
}

#[test]
fn kloosterman_identities_for_every_xi() {
    for p in PRIMES {
        for c in [1, p - 1] {
            let phibar = ResidueAdditive::new(p, c);
            for xi in 1..p {
                for chibar in [ResidueMultiplicative::Trivial, ResidueMultiplicative::Quadratic] {
                    let a = kloosterman(chibar, &phibar, xi).unwrap();
                    let b = kloosterman_via_salie(chibar, &phibar, xi).unwrap();
                    assert!(approx_eq(a, b, 1e-9), "p = {p}, xi = {xi}, {chibar:?}: {a} vs {b}");
                }
                let k = kloosterman(ResidueMultiplicative::Trivial, &phibar, xi).unwrap();
                assert!(k.im.abs() < 1e-9);
                // Weil: |K| ≤ 2√p.
                assert!(k.norm() <= 2.0 * (p as f64).sqrt() + 1e-9);
            }
            assert!(kloosterman(ResidueMultiplicative::Trivial, &phibar, 0).is_err());
        }
    }
}

proptest! {
    /// Γ(ν^α·sgn) for unramified χ against depth −1 Φ: the shells ord ≥ 0
    /// give a geometric series, the shell ord = −1 gives −χ(p^{-1})/q.
    #[test]
    fn unramified_gamma_factor(alpha in 0.05f64..3.0, twist in any::<bool>(), p in prop::sample::select(PRIMES.to_vec())) {
        let f = Field::new(p).unwrap();
        let tau = if twist { SquareClass::Eps } else { SquareClass::One };
        let chi = MultiplicativeCharacter::real(alpha, tau);
        let q = f.q();
        let r = q.powf(-alpha) * if twist { -1.0 } else { 1.0 };
        let expect = (1.0 - 1.0 / q) / (1.0 - r) - 1.0 / (q * r);
        let got = gamma_factor(&f, &chi, &AdditiveCharacter::standard(&f)).unwrap();
        prop_assert!(approx_eq(got, C64::new(expect, 0.0), 1e-9), "{} vs {}", got, expect);
    }

    #[test]
    fn shalika_h_matches_its_integral(p in prop::sample::select(vec![3u32, 5, 7]), u in 1i128..500, e in -5i32..4, d in -3i32..2) {
        let f = Field::new(p).unwrap();
        let u = if u % p as i128 == 0 { u + 1 } else { u };
        let b = f.parts(u, e);
        let phi = AdditiveCharacter::with_depth(&f, d);
        let a = shalika_h(&f, &phi, &b).unwrap();
        let o = shalika_h_oracle(&f, &phi, &b).unwrap();
        prop_assert!(approx_eq(a, o, 1e-9), "{} vs {}", a, o);
    }
}

#[test]
fn gamma_factor_rejects_the_trivial_character() {
    let f = Field::new(5).unwrap();
    let phi = AdditiveCharacter::standard(&f);
    assert!(gamma_factor(&f, &MultiplicativeCharacter::trivial(), &phi).is_err());
}

/// Only the shell ord x = −1 survives, so |Γ| = q^{-1}·|finite Gauss sum|·|χ(p^{-1})|.
#[test]
fn ramified_gamma_factor_modulus() {
    for p in [3, 5, 7, 11] {
        let f = Field::new(p).unwrap();
        let phi = AdditiveCharacter::standard(&f);
        for tau in [SquareClass::Pi, SquareClass::EpsPi] {
            for (sigma, t) in [(0.0, 0.0), (0.5, 0.3), (-1.0, 1.7), (2.5, 0.0)] {
                let chi = MultiplicativeCharacter::new(C64::new(sigma, t), tau);
                let g = gamma_factor(&f, &chi, &phi).unwrap();
                let expect = f.q().powf(sigma - 0.5);
                assert!(
                    (g.norm() - expect).abs() < 1e-9 * expect,
                    "p = {p}, {tau}: |Γ| = {}",
                    g.norm()
                );
            }
        }
    }
}
