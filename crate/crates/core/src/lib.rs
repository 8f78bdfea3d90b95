//! Exact engine for Tanaka prolongations of graded nilpotent Lie algebras,
//! exterior differential systems and CR structures of higher codimension.

pub mod eds;
pub mod error;
pub mod exact;
pub mod nilpotent;
pub mod rootsys;
pub mod tanaka;

pub use error::{Error, Result};
pub use exact::{ComplexRational, Rational};

pub mod catalog;
pub mod cohomology;
pub mod cr;

/// Size limit for expensive searches, overridable with `TANAKA_COST_GUARD`.
pub fn cost_guard(default: usize) -> usize {
    std::env::var("TANAKA_COST_GUARD").ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}
