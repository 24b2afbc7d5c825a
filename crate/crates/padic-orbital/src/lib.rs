//! Fourier transforms of regular semisimple orbital integrals on sl₂(Q_p),
//! p odd, from closed forms, with a brute-force principal-value oracle to
//! certify them.
//!
//! The pieces, bottom up: [`local_field`] (truncated p-adic arithmetic),
//! [`characters`], [`exp_sums`] (Gauss and Kloosterman sums, Γ-factors),
//! [`bessel`], [`orbits`] (tori, conjugacy, the Waldspurger sign), and
//! [`transform`], which holds both the closed forms for μ̂ and the oracle.
//! [`grid`] enumerates the certification grid and evaluates it, in parallel
//! when the `parallel` feature is on.

pub mod bessel;
pub mod characters;
pub mod error;
pub mod exp_sums;
pub mod grid;
pub mod local_field;
pub mod orbits;
mod pv;
pub mod transform;

pub use characters::{AdditiveCharacter, ComplexValue, MultiplicativeCharacter, C64};
pub use error::{Error, Result};
pub use local_field::{Field, PAdic, SquareClass};
pub use orbits::{AlgebraElement, DualElement, TorusType};
pub use transform::Regime;
