//! Exact certificates of 1-solvability for algebraically slice knots.
//!
//! The crate works from block Seifert matrices `[[0, A], [B, C]]` whose first
//! `g` basis curves form a derivative, together with Milnor-invariant profiles
//! of that derivative. Everything is exact: integers are arbitrary precision
//! and the mod-2 algebra is bit-packed GF(2).

pub mod error;
pub mod exterior;
pub mod gate;
pub mod int_serde;
pub mod infection;
pub mod linalg;
pub mod milnor;
pub mod seifert;

pub use error::{Error, Result};
