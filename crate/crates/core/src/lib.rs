//! Finite left braces.
//!
//! A [`FiniteBrace`] is a pair of operation tables on `0..n` with a common
//! identity `0`, an abelian addition and a group multiplication related by
//! `a(b + c) = ab + ac - a`. Around it the crate provides the star product
//! `a ∗ b = ab - a - b`, ideals and annihilators, the socle, central and
//! fix series, the Dedekind test, extraspecial braces built from bilinear
//! forms over prime fields, enumeration of all braces on small abelian
//! groups, and the associated Yang–Baxter solutions.

pub mod algebra;
pub mod brace;
pub mod document;
pub mod enumeration;
pub mod error;
pub mod extraspecial;
pub mod group;
pub mod iso;
pub mod mask;
pub mod series;
pub mod substructures;
pub mod verify;
pub mod ybe;

pub use brace::{ElementTupleCodec, FiniteBrace, DEFAULT_MAX_ORDER};
pub use error::{AlgebraError, Error, Result, ValidationError};
pub use mask::SubsetMask;
