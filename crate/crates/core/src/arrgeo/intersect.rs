use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_no_common_component, ArrError, Curve};
use crate::qpoly::{
    apply_linear_change, det3, distinct_root_count, mat_vec3, poly_gcd, rational_roots, resultant_wrt,
    root_multiplicities, Matrix3, Rational, TriPoly, Var,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IntersectionMethod {
    Resultant,
    Combinatorial,
}

/// Distinct points of `C₁ ∩ C₂` and their intersection indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub r_distinct_points: usize,
    /// Sorted descending; sums to `c₁ c₂`.
    pub per_point_multiplicities: Vec<usize>,
    pub method: IntersectionMethod,
    /// Distinct-root count of every projection tried (resultant route only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trial_counts: Vec<usize>,
}

/// A point where components `components.0 < components.1` meet with the given index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointOnPair {
    pub point: [Rational; 3],
    pub components: (usize, usize),
    pub index: usize,
}

/// Scales a nonzero point so that its last nonzero coordinate is 1.
pub(crate) fn normalize_point(p: [Rational; 3]) -> [Rational; 3] {
    let s = p
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .expect("projective point is nonzero")
        .clone();
    p.map(|c| c / &s)
}

fn line_coeffs(l: &TriPoly) -> [Rational; 3] {
    [Var::X, Var::Y, Var::Z].map(|v| l.differentiate(v).constant_term())
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Lines and smooth conics only.
pub(crate) fn check_supported_components(curve: &Curve) -> Result<(), ArrError> {
    for (i, c) in curve.components().iter().enumerate() {
        match c.total_degree().unwrap_or(0) {
            1 => {}
            2 => {
                let grad = c.gradient();
                let hess: Matrix3 = std::array::from_fn(|r| {
                    std::array::from_fn(|s| grad[r].differentiate(Var::ALL[s]).constant_term())
                });
                if det3(&hess).is_zero() {
                    return Err(ArrError::SingularConic(i));
                }
            }
            d => return Err(ArrError::DegreeTooHigh(i, d)),
        }
    }
    Ok(())
}

/// Meets the line `l` with `other` by restricting `other` to a parametrization of `l`.
fn line_meets(l: &TriPoly, other: &TriPoly, ids: (usize, usize)) -> Result<Vec<PointOnPair>, ArrError> {
    let [a, b, c] = line_coeffs(l);
    let zero = Rational::zero;
    let (p, q) = if !a.is_zero() {
        ([-b.clone(), a.clone(), zero()], [-c.clone(), zero(), a.clone()])
    } else if !b.is_zero() {
        ([Rational::one(), zero(), zero()], [zero(), -c.clone(), b.clone()])
    } else {
        ([Rational::one(), zero(), zero()], [zero(), Rational::one(), zero()])
    };
    let normal = [a, b, c];
    // columns p, q, normal: the normal is off the line, so the matrix is invertible
    let m: Matrix3 = std::array::from_fn(|i| [p[i].clone(), q[i].clone(), normal[i].clone()]);
    let restricted = apply_linear_change(other, &m)?.substitute(Var::Z, &TriPoly::zero());
    if restricted.is_zero() {
        return Err(ArrError::SharedFactor(ids.0, ids.1));
    }
    let (roots, missing) = rational_roots(&restricted, Var::X, Var::Y)?;
    if missing > 0 {
        return Err(ArrError::IrrationalPoint(ids.0, ids.1));
    }
    Ok(roots
        .into_iter()
        .map(|r| {
            let [s, t] = &r.point;
            let pt: [Rational; 3] = std::array::from_fn(|i| s * &p[i] + t * &q[i]);
            PointOnPair {
                point: normalize_point(pt),
                components: ids,
                index: r.multiplicity,
            }
        })
        .collect())
}

/// Projection centers `[a : b : 1]` in order of increasing `|a| + |b|`.
fn centers() -> impl Iterator<Item = (i64, i64)> {
    (0i64..8).flat_map(|n| {
        (-n..=n).flat_map(move |a| {
            let b = n - a.abs();
            if b == 0 {
                vec![(a, 0)]
            } else {
                vec![(a, b), (a, -b)]
            }
        })
    })
}

/// Meets two conics by projecting from a rational point on neither of them.
///
/// After moving the center to `[0:0:1]`, every root of `Res_z` is a line through
/// the center; the center is accepted once each such line carries exactly one
/// common point, so the root multiplicity is that point's index.
fn conics_meet(f: &TriPoly, g: &TriPoly, ids: (usize, usize)) -> Result<Vec<PointOnPair>, ArrError> {
    'center: for (a, b) in centers() {
        let c = [
            Rational::from_integer(a.into()),
            Rational::from_integer(b.into()),
            Rational::one(),
        ];
        if f.eval(&c).is_zero() || g.eval(&c).is_zero() {
            continue;
        }
        let m: Matrix3 = std::array::from_fn(|i| {
            let mut row = [Rational::zero(), Rational::zero(), c[i].clone()];
            if i < 2 {
                row[i] = Rational::one();
            }
            row
        });
        let (fm, gm) = (apply_linear_change(f, &m)?, apply_linear_change(g, &m)?);
        let res = resultant_wrt(&fm, &gm, Var::Z)?;
        if res.is_zero() {
            return Err(ArrError::SharedFactor(ids.0, ids.1));
        }
        let (roots, missing) = rational_roots(&res, Var::X, Var::Y)?;
        if missing > 0 {
            return Err(ArrError::IrrationalPoint(ids.0, ids.1));
        }
        let mut out = Vec::new();
        for r in roots {
            let at = |h: &TriPoly| {
                h.substitute(Var::X, &TriPoly::constant(r.point[0].clone()))
                    .substitute(Var::Y, &TriPoly::constant(r.point[1].clone()))
            };
            let common = poly_gcd(&at(&fm), &at(&gm))?;
            if common.degree_in(Var::Z) != Some(1) {
                continue 'center;
            }
            let w = -common.constant_term() / common.differentiate(Var::Z).constant_term();
            let local = [r.point[0].clone(), r.point[1].clone(), w];
            out.push(PointOnPair {
                point: normalize_point(mat_vec3(&m, &local)),
                components: ids,
                index: r.multiplicity,
            });
        }
        return Ok(out);
    }
    Err(ArrError::NoProjection(ids.0, ids.1))
}

fn pair_points(f: &TriPoly, g: &TriPoly, ids: (usize, usize)) -> Result<Vec<PointOnPair>, ArrError> {
    match (f.total_degree(), g.total_degree()) {
        (Some(1), Some(1)) => {
            let p = cross(&line_coeffs(f), &line_coeffs(g));
            Ok(vec![PointOnPair {
                point: normalize_point(p),
                components: ids,
                index: 1,
            }])
        }
        (Some(1), _) => line_meets(f, g, ids),
        (_, Some(1)) => line_meets(g, f, ids),
        _ => conics_meet(f, g, ids),
    }
}

/// All pairwise intersection points of the components, exactly.
pub fn component_intersections(curve: &Curve) -> Result<Vec<PointOnPair>, ArrError> {
    check_supported_components(curve)?;
    let comps = curve.components();
    let mut out = Vec::new();
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            out.extend(pair_points(&comps[i], &comps[j], (i, j))?);
        }
    }
    Ok(out)
}

/// `C₁ ∩ C₂` from pairwise component intersections grouped by coordinates.
pub fn combinatorial_intersection(c1: &Curve, c2: &Curve) -> Result<IntersectionReport, ArrError> {
    check_supported_components(c1)?;
    check_supported_components(c2)?;
    if !check_no_common_component(c1, c2) {
        return Err(ArrError::CommonComponent);
    }
    let n1 = c1.num_components_e();
    let mut at: BTreeMap<[Rational; 3], usize> = BTreeMap::new();
    for (i, f) in c1.components().iter().enumerate() {
        for (j, g) in c2.components().iter().enumerate() {
            for p in pair_points(f, g, (i, n1 + j))? {
                *at.entry(p.point).or_default() += p.index;
            }
        }
    }
    let mut mults: Vec<usize> = at.into_values().collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    Ok(IntersectionReport {
        r_distinct_points: mults.len(),
        per_point_multiplicities: mults,
        method: IntersectionMethod::Combinatorial,
        trial_counts: Vec::new(),
    })
}

fn random_change(rng: &mut ChaCha8Rng, f: &TriPoly, g: &TriPoly) -> Matrix3 {
    loop {
        let m: Matrix3 =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::from_integer(rng.gen_range(-9i64..=9).into())));
        if det3(&m).is_zero() {
            continue;
        }
        let center = [0, 1, 2].map(|i| m[i][2].clone());
        if !f.eval(&center).is_zero() && !g.eval(&center).is_zero() {
            return m;
        }
    }
}

/// Distinct intersection points via resultants after `trials` random changes
/// of coordinates drawn from `seed`.
///
/// A degenerate projection can only merge points, so the maximum count over
/// the trials is taken, and it must be attained at least twice (once when a
/// single trial is requested).
pub fn intersection_count_resultant(
    c1: &Curve,
    c2: &Curve,
    seed: u64,
    trials: usize,
) -> Result<IntersectionReport, ArrError> {
    let trials = trials.max(1);
    let (f, g) = (c1.defining_poly(), c2.defining_poly());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = Vec::with_capacity(trials);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for _ in 0..trials {
        let m = random_change(&mut rng, f, g);
        let res = resultant_wrt(&apply_linear_change(f, &m)?, &apply_linear_change(g, &m)?, Var::Z)?;
        if res.is_zero() {
            return Err(ArrError::CommonComponent);
        }
        let r = distinct_root_count(&res)?;
        counts.push(r);
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, root_multiplicities(&res)?));
        }
    }
    let (r, mults) = best.expect("at least one trial");
    let hits = counts.iter().filter(|&&c| c == r).count();
    if hits < trials.min(2) {
        return Err(ArrError::GenericityFailure { counts });
    }
    Ok(IntersectionReport {
        r_distinct_points: r,
        per_point_multiplicities: mults,
        method: IntersectionMethod::Resultant,
        trial_counts: counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{parse_poly, q};

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_poly(s).unwrap()).collect()).unwrap()
    }

    fn c1() -> Curve {
        curve(&["x-z", "x+z", "y-z", "y+z", "y-x", "y+x"])
    }

    fn q2() -> Curve {
        curve(&["x^2+y^2-2*z^2"])
    }

    #[test]
    fn six_lines_and_conic_resultant() {
        let rep = intersection_count_resultant(&c1(), &q2(), 0, 5).unwrap();
        assert_eq!(rep.r_distinct_points, 4);
        assert_eq!(rep.per_point_multiplicities, vec![3, 3, 3, 3]);
    }

    #[test]
    fn six_lines_and_conic_combinatorial() {
        let rep = combinatorial_intersection(&c1(), &q2()).unwrap();
        assert_eq!(rep.r_distinct_points, 4);
        assert_eq!(rep.per_point_multiplicities, vec![3, 3, 3, 3]);
    }

    #[test]
    fn two_lines() {
        let (a, b) = (curve(&["x-z"]), curve(&["y-z"]));
        for rep in [
            intersection_count_resultant(&a, &b, 7, 5).unwrap(),
            combinatorial_intersection(&a, &b).unwrap(),
        ] {
            assert_eq!((rep.r_distinct_points, rep.per_point_multiplicities), (1, vec![1]));
        }
    }

    #[test]
    fn tangent_line() {
        let (l, c) = (curve(&["z"]), curve(&["y^2-x*z"]));
        for rep in [
            intersection_count_resultant(&l, &c, 3, 5).unwrap(),
            combinatorial_intersection(&l, &c).unwrap(),
        ] {
            assert_eq!((rep.r_distinct_points, rep.per_point_multiplicities), (1, vec![2]));
        }
    }

    #[test]
    fn conic_pairs() {
        // two circles through [1:±1:1] and the circular points; the latter are irrational
        let a = curve(&["x^2+y^2-2*z^2"]);
        let b = curve(&["x^2+y^2-2*x*z"]);
        assert_eq!(combinatorial_intersection(&a, &b), Err(ArrError::IrrationalPoint(0, 1)));
        assert_eq!(intersection_count_resultant(&a, &b, 0, 5).unwrap().r_distinct_points, 4);

        // four rational points [±1 : ±1 : 1]
        let e = curve(&["x^2-4*y^2+3*z^2"]);
        let f = curve(&["x^2+y^2-2*z^2"]);
        let rep = combinatorial_intersection(&e, &f).unwrap();
        assert_eq!(
            (rep.r_distinct_points, rep.per_point_multiplicities),
            (4, vec![1, 1, 1, 1])
        );

        // bitangent pair: they differ by 3y², touching at [±1 : 0 : 1]
        let g = curve(&["x^2+y^2-z^2"]);
        let h = curve(&["x^2+4*y^2-z^2"]);
        let rep = combinatorial_intersection(&g, &h).unwrap();
        assert_eq!((rep.r_distinct_points, rep.per_point_multiplicities), (2, vec![2, 2]));
        let rep = intersection_count_resultant(&g, &h, 1, 5).unwrap();
        assert_eq!((rep.r_distinct_points, rep.per_point_multiplicities), (2, vec![2, 2]));
    }

    #[test]
    fn pairwise_points_are_on_both_components() {
        let u = c1().union(&q2()).unwrap();
        let pts = component_intersections(&u).unwrap();
        for p in &pts {
            let (i, j) = p.components;
            assert!(u.components()[i].eval(&p.point).is_zero());
            assert!(u.components()[j].eval(&p.point).is_zero());
        }
        // 15 line pairs plus 6 lines meeting the conic in 2 points each
        assert_eq!(pts.len(), 15 + 12);
        assert!(pts.iter().any(|p| p.point == [q(1), q(1), q(1)]));
    }

    #[test]
    fn unsupported_components() {
        let cubic = curve(&["x^3+y^3+z^3"]);
        assert_eq!(component_intersections(&cubic), Err(ArrError::DegreeTooHigh(0, 3)));
        let pair = curve(&["x*y"]);
        assert_eq!(component_intersections(&pair), Err(ArrError::SingularConic(0)));
    }

    #[test]
    fn single_trial_needs_no_repeat() {
        let rep = intersection_count_resultant(&c1(), &q2(), 11, 1).unwrap();
        assert_eq!(rep.trial_counts.len(), 1);
    }
}
