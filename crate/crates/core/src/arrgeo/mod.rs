//! Curves presented by their components, intersection counting, and the
//! combinatorial classification of singular points of line/conic arrangements.
//!
//! Two independent routes lead to the number `r` of distinct points of
//! `C₁ ∩ C₂`:
//!
//! * the resultant route projects from a random point and counts distinct
//!   roots of `Res_z(F, G)`; it works for any pair of curves;
//! * the combinatorial route intersects components pairwise with exact
//!   rational coordinates and groups coincident points; it needs lines and
//!   smooth conics whose intersection points are all rational.

mod classify;
mod intersect;

use thiserror::Error;

use crate::milnor::{check_reduced, MilnorError};
use crate::qpoly::{poly_gcd, PolyError, TriPoly};

pub use classify::{
    classify_singularities, ordinary_counts, point_strings, singular_points, total_milnor_by_branches,
    total_milnor_combinatorial, total_tjurina_combinatorial, PointKind, SingularPoint,
};
pub use intersect::{
    combinatorial_intersection, component_intersections, intersection_count_resultant, IntersectionMethod,
    IntersectionReport, PointOnPair,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrError {
    #[error("curve has no components")]
    Empty,
    #[error("component {0} is not homogeneous")]
    NotHomogeneous(usize),
    #[error("component {0} is constant")]
    ConstantComponent(usize),
    #[error("component {0} is not squarefree")]
    NotSquarefree(usize),
    #[error("components {0} and {1} share a common factor")]
    SharedFactor(usize, usize),
    #[error("curves share a common component")]
    CommonComponent,
    #[error("component {0} has degree {1}; only lines and conics are supported here")]
    DegreeTooHigh(usize, u32),
    #[error("component {0} is a singular conic")]
    SingularConic(usize),
    #[error("components {0} and {1} meet in a point with irrational coordinates")]
    IrrationalPoint(usize, usize),
    #[error("unsupported singularity at {point}: {reason}")]
    Unsupported { point: String, reason: String },
    #[error("no projection center found for components {0} and {1}")]
    NoProjection(usize, usize),
    #[error("distinct-root counts {counts:?} never repeat their maximum; genericity not confirmed")]
    GenericityFailure { counts: Vec<usize> },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A reduced curve given as a list of components.
///
/// Components are stored primitive-normalized; each is squarefree and
/// pairwise coprime to the others, which makes their product squarefree.
/// Irreducibility over ℂ of every component is the caller's assertion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    components: Vec<TriPoly>,
    degree_d: u32,
    defining_poly: TriPoly,
}

impl Curve {
    pub fn new(components: Vec<TriPoly>) -> Result<Curve, ArrError> {
        if components.is_empty() {
            return Err(ArrError::Empty);
        }
        let mut comps = Vec::with_capacity(components.len());
        for (i, c) in components.iter().enumerate() {
            if !c.is_homogeneous() {
                return Err(ArrError::NotHomogeneous(i));
            }
            match c.total_degree() {
                Some(d) if d >= 1 => {}
                _ => return Err(ArrError::ConstantComponent(i)),
            }
            if c.total_degree() != Some(1) {
                match check_reduced(c) {
                    Ok(()) => {}
                    Err(MilnorError::NotReduced(_)) => return Err(ArrError::NotSquarefree(i)),
                    Err(_) => return Err(ArrError::NotHomogeneous(i)),
                }
            }
            comps.push(c.primitive_normalized());
        }
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                if !poly_gcd(&comps[i], &comps[j])?.is_constant() {
                    return Err(ArrError::SharedFactor(i, j));
                }
            }
        }
        let defining_poly = comps.iter().fold(TriPoly::one(), |acc, c| &acc * c);
        let degree_d = defining_poly.total_degree().unwrap_or(0);
        Ok(Curve {
            components: comps,
            degree_d,
            defining_poly,
        })
    }

    /// A curve given by one polynomial, checked reduced as a whole.
    pub fn from_poly(f: &TriPoly) -> Result<Curve, ArrError> {
        Curve::new(vec![f.clone()])
    }

    pub fn components(&self) -> &[TriPoly] {
        &self.components
    }

    pub fn degree_d(&self) -> u32 {
        self.degree_d
    }

    pub fn num_components_e(&self) -> usize {
        self.components.len()
    }

    pub fn defining_poly(&self) -> &TriPoly {
        &self.defining_poly
    }

    pub fn is_line_arrangement(&self) -> bool {
        self.components.iter().all(|c| c.total_degree() == Some(1))
    }

    /// `C₁ ∪ C₂`, components of `self` first.
    pub fn union(&self, other: &Curve) -> Result<Curve, ArrError> {
        if !check_no_common_component(self, other) {
            return Err(ArrError::CommonComponent);
        }
        let comps = self.components.iter().chain(other.components.iter()).cloned().collect();
        Curve::new(comps)
    }
}

/// True iff the defining polynomials are coprime.
///
/// An irreducible common factor of two products divides a factor of each,
/// so pairwise gcds of components decide this.
pub fn check_no_common_component(c1: &Curve, c2: &Curve) -> bool {
    c1.components.iter().all(|a| {
        c2.components
            .iter()
            .all(|b| poly_gcd(a, b).map(|g| g.is_constant()).unwrap_or(false))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_poly(s).unwrap()).collect()).unwrap()
    }

    fn c1() -> Curve {
        curve(&["x-z", "x+z", "y-z", "y+z", "y-x", "y+x"])
    }

    #[test]
    fn curve_metadata() {
        let c = c1();
        assert_eq!(c.degree_d(), 6);
        assert_eq!(c.num_components_e(), 6);
        assert!(c.is_line_arrangement());
        let u = c.union(&curve(&["x^2+y^2-2*z^2"])).unwrap();
        assert_eq!((u.degree_d(), u.num_components_e()), (8, 7));
        assert!(!u.is_line_arrangement());
    }

    #[test]
    fn rejects_bad_components() {
        let p = |s: &str| parse_poly(s).unwrap();
        assert_eq!(Curve::new(vec![]), Err(ArrError::Empty));
        assert_eq!(Curve::new(vec![p("x"), p("2*x")]), Err(ArrError::SharedFactor(0, 1)));
        assert_eq!(Curve::new(vec![p("x^2")]), Err(ArrError::NotSquarefree(0)));
        assert_eq!(Curve::new(vec![p("x+1")]), Err(ArrError::NotHomogeneous(0)));
        assert_eq!(Curve::new(vec![p("3")]), Err(ArrError::ConstantComponent(0)));
        assert_eq!(
            Curve::new(vec![p("x-y"), p("x^2-y^2")]),
            Err(ArrError::SharedFactor(0, 1))
        );
    }

    #[test]
    fn common_components() {
        let conic = curve(&["x^2+y^2-2*z^2"]);
        assert!(check_no_common_component(&c1(), &conic));
        assert!(!check_no_common_component(&curve(&["x-z"]), &curve(&["(x-z)*(y-z)"])));
        assert!(!check_no_common_component(&c1(), &c1()));
        assert_eq!(c1().union(&c1()), Err(ArrError::CommonComponent));
    }
}
