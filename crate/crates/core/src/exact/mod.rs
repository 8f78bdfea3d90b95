//! Exact scalars, polynomials and sparse linear algebra.

pub mod dense;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod sparse;

pub use dense::{Mat, RatMat};
pub use linalg::{kernel_basis, modular_rank, rank, rref, solve, Echelon, Rref, SpanSolver};
pub use poly::{Monomial, Poly, RatPoly};
pub use scalar::{imag_unit, int, parse_rational, rat, ComplexRational, Field, Fp, Rational};
pub use sparse::{RatMatrix, RatVector, SparseMatrix, SparseVec};

use crate::error::{Error, Result};

/// Partial derivative of `p` with respect to the variable named `var` in `names`.
pub fn poly_partial(p: &RatPoly, names: &[String], var: &str) -> Result<RatPoly> {
    let i = names.iter().position(|n| n == var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
    p.partial(i)
}
