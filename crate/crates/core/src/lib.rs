//! Exact invariants of reduced plane curves.
//!
//! Given a reduced curve `C : f = 0` in ℙ² with rational coefficients, this
//! crate computes the total Tjurina number from the Hilbert function of the
//! Milnor algebra, the minimal degree of Jacobian relations, the Poincaré and
//! Betti polynomials, and freeness via the du Plessis–Wall criterion. For
//! line and conic arrangements it also classifies singular points and counts
//! intersection points, and for line arrangements it builds the intersection
//! lattice.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every rank is computed by fraction-free elimination.

pub mod arrgeo;
pub mod cli;
pub mod exactla;
pub mod generate;
pub mod invariants;
pub mod lattice;
pub mod milnor;
pub mod qpoly;
