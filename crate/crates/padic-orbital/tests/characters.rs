use padic_orbital::characters::{approx_eq, AdditiveCharacter, MultiplicativeCharacter, C64};
use padic_orbital::{Field, PAdic, SquareClass};
use proptest::prelude::*;

fn element(f: &Field) -> impl Strategy<Value = PAdic> {
    let p = f.p() as i128;
    let f = f.clone();
    (1i128..100_000, -4i32..4).prop_map(move |(u, e)| f.parts(if u % p == 0 { u + 1 } else { u }, e))
}

fn setup() -> impl Strategy<Value = (Field, PAdic, PAdic, i32)> {
    prop::sample::select(vec![3u32, 5, 7]).prop_flat_map(|p| {
        let f = Field::new(p).unwrap();
        (Just(f.clone()), element(&f), element(&f), -3i32..3)
    })
}

proptest! {
    #[test]
    fn additive_character_is_a_homomorphism((f, x, y, d) in setup()) {
        let phi = AdditiveCharacter::with_depth(&f, d);
        let s = x.add(&y).unwrap();
        let lhs = if s.is_zero() { C64::new(1.0, 0.0) } else { phi.eval(&s).unwrap() };
        prop_assert!(approx_eq(lhs, phi.eval(&x).unwrap() * phi.eval(&y).unwrap(), 1e-12));
        prop_assert!(approx_eq(phi.eval(&-x).unwrap(), phi.eval(&x).unwrap().conj(), 1e-12));
    }

    #[test]
    fn depth_is_where_the_character_turns_on((f, x, _y, d) in setup()) {
        let phi = AdditiveCharacter::with_depth(&f, d);
        prop_assert_eq!(phi.depth(), d);
        let z = x * f.varpi_pow(d + 1 - x.ord().unwrap());
        prop_assert!(approx_eq(phi.eval(&z).unwrap(), C64::new(1.0, 0.0), 1e-12));
        let w = f.varpi_pow(d);
        prop_assert!((phi.eval(&w).unwrap() - 1.0).norm() > 1e-3);
    }

    #[test]
    fn multiplicative_characters_are_homomorphisms((f, x, y, _d) in setup(), alpha in -1.0f64..1.0) {
        for tau in SquareClass::ALL {
            let chi = MultiplicativeCharacter::real(alpha, tau);
            let lhs = chi.eval(&f, &(x * y)).unwrap();
            prop_assert!(approx_eq(lhs, chi.eval(&f, &x).unwrap() * chi.eval(&f, &y).unwrap(), 1e-9 * lhs.norm().max(1.0)));
            let inv = chi.inverse().eval(&f, &x).unwrap() * chi.eval(&f, &x).unwrap();
            prop_assert!(approx_eq(inv, C64::new(1.0, 0.0), 1e-9));
            let tw = chi.twist(tau).eval(&f, &x).unwrap();
            prop_assert!(approx_eq(tw, MultiplicativeCharacter::real(alpha, SquareClass::One).eval(&f, &x).unwrap(), 1e-9 * tw.norm().max(1.0)));
        }
    }
}

#[test]
fn sign_characters_agree_with_the_field() {
    let f = Field::new(7).unwrap();
    for e in -2..3 {
        for u in 1..7 {
            let x = f.parts(u, e);
            for tau in SquareClass::ALL {
                let chi = MultiplicativeCharacter::trivial().twist(tau);
                let v = chi.eval(&f, &x).unwrap();
                assert!(approx_eq(v, C64::new(f.sgn(tau, &x).unwrap() as f64, 0.0), 1e-12));
            }
        }
    }
}

#[test]
fn imaginary_unramified_twist_is_sgn_eps() {
    let f = Field::new(5).unwrap();
    let alpha = C64::new(0.0, std::f64::consts::PI / f.q().ln());
    let chi = MultiplicativeCharacter::new(alpha, SquareClass::One);
    assert!(!chi.is_trivial(&f));
    assert!(MultiplicativeCharacter::new(alpha, SquareClass::Eps).is_trivial(&f));
}

#[test]
fn residue_character_of_the_standard_character() {
    let f = Field::new(5).unwrap();
    let phi = AdditiveCharacter::standard(&f);
    let res = phi.residue_character(&f);
    for x in 0..5 {
        let direct = phi.eval(&f.parts(x, -1)).unwrap_or(C64::new(1.0, 0.0));
        assert!(approx_eq(res.eval(x as i64), direct, 1e-12));
    }
}
