//! Exact rational scalars and sparse polynomials in `x, y, z`.
//!
//! All coefficients live in ℚ. The invariants computed downstream (ranks,
//! resultant degrees, root counts over ℂ) are all decidable over ℚ, so no
//! algebraic extension is ever formed.

mod binary;
mod gcd;
mod linear;
mod parse;
mod poly;
mod resultant;

use thiserror::Error;

pub use binary::{distinct_root_count, rational_roots, root_multiplicities, squarefree_part, BinaryRoot};
pub use gcd::{poly_gcd, poly_gcd_many};
pub use linear::{apply_linear_change, det3, identity3, int_matrix, inverse3, mat_mul3, mat_vec3, Matrix3};
pub use parse::{parse_poly, ParseError, ParseErrorKind};
pub use poly::{q, Monomial, TriPoly, Var};
pub use resultant::{bareiss_det, resultant_wrt, sylvester_matrix};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("polynomial has degree zero in {0}")]
    NotPositiveDegree(Var),
    #[error("input polynomial is zero")]
    ZeroInput,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not a binary form")]
    NotBinary,
    #[error("linear change of coordinates is singular")]
    SingularMatrix,
}
