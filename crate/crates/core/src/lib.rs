//! Distinguishing curves over small finite fields through L-polynomials of
//! the curves and of explicit unramified covers.
//!
//! The crate provides exact small-field arithmetic ([`ffield`]), exhaustive
//! point and place counting for hyperelliptic and plane-quartic models
//! ([`curve`]), L-polynomial construction and derived invariants ([`zeta`]),
//! Kummer double covers and Artin-Schreier covers with Prym trace extraction
//! ([`cover`]), a comparison pipeline that emits and verifies succinct
//! non-isomorphism certificates plus a genus-2 census over F_2 and F_3
//! ([`distinguish`]), and one-parameter family collision scans with the
//! accompanying probability heuristics ([`scan`]). The `zetacover` binary
//! fronts all of it; see [`cli`].

pub mod cli;
pub mod cover;
pub mod curve;
pub mod distinguish;
pub mod error;
pub mod ffield;
pub mod scan;
pub mod zeta;

pub use error::{Error, Result};
