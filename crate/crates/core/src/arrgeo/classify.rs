use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::intersect::{component_intersections, normalize_point, PointOnPair};
use super::{ArrError, Curve};
use crate::qpoly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PointKind {
    #[serde(rename = "ordinary")]
    Ordinary,
    #[serde(rename = "tacnode_A3")]
    TacnodeA3,
    #[serde(rename = "unsupported")]
    Unsupported,
}

/// A singular point of a line/conic arrangement. Every branch is a smooth
/// component, so branch multiplicities are 1 and `mult_m` counts branches.
///
/// `local_milnor` comes from Milnor's formula `μ = 2δ - r + 1`, where `r` is
/// the number of branches and `δ` is the sum of pairwise intersection indices
/// (valid for smooth branches), and is known for every point. `local_tjurina`
/// is known only for the quasi-homogeneous kinds, where `τ = μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    #[serde(serialize_with = "ser_point")]
    pub coords: [Rational; 3],
    pub branches: Vec<usize>,
    pub branch_degrees: Vec<u32>,
    pub mult_m: usize,
    #[serde(serialize_with = "ser_indices")]
    pub pairwise_intersection_indices: BTreeMap<(usize, usize), usize>,
    pub local_milnor: u64,
    pub local_tjurina: Option<u64>,
    pub kind: PointKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unsupported_reason: Option<String>,
}

pub fn point_strings(p: &[Rational; 3]) -> [String; 3] {
    p.clone().map(|c| c.to_string())
}

fn ser_point<S: Serializer>(p: &[Rational; 3], s: S) -> Result<S::Ok, S::Error> {
    point_strings(p).serialize(s)
}

fn ser_indices<S: Serializer>(m: &BTreeMap<(usize, usize), usize>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Entry {
        pair: (usize, usize),
        index: usize,
    }
    s.collect_seq(m.iter().map(|(&pair, &index)| Entry { pair, index }))
}

impl SingularPoint {
    /// `μ` at this point of the sub-arrangement formed by the branches that
    /// satisfy `keep`; zero when at most one of them passes through.
    pub fn milnor_of(&self, keep: impl Fn(usize) -> bool) -> u64 {
        let kept = self.branches.iter().filter(|&&b| keep(b)).count();
        if kept < 2 {
            return 0;
        }
        let delta: usize = self
            .pairwise_intersection_indices
            .iter()
            .filter(|((a, b), _)| keep(*a) && keep(*b))
            .map(|(_, &i)| i)
            .sum();
        milnor_formula(kept, delta)
    }

    pub fn is_supported(&self) -> bool {
        self.kind != PointKind::Unsupported
    }

    /// Intersection index at this point of the branches in `a` with those in `b`.
    pub fn index_between(&self, in_a: impl Fn(usize) -> bool, in_b: impl Fn(usize) -> bool) -> usize {
        self.pairwise_intersection_indices
            .iter()
            .filter(|((i, j), _)| (in_a(*i) && in_b(*j)) || (in_a(*j) && in_b(*i)))
            .map(|(_, &n)| n)
            .sum()
    }
}

fn milnor_formula(branches: usize, delta: usize) -> u64 {
    (2 * delta + 1 - branches) as u64
}

/// Kind and `τ` of a point from its branch data.
///
/// Ordinary points of multiplicity `m ≤ 4` and any ordinary point made of
/// lines are quasi-homogeneous with `τ = (m-1)²`; from multiplicity 5 on,
/// higher-order terms of a conic branch can make `τ < μ`, so `τ` is left
/// unknown there.
fn local_type(m: usize, indices: &[usize], has_conic: bool) -> (PointKind, Option<u64>, Option<String>) {
    if indices.iter().all(|&i| i == 1) {
        if m >= 5 && has_conic {
            return (
                PointKind::Unsupported,
                None,
                Some(format!("ordinary {m}-fold point with a conic branch")),
            );
        }
        return (PointKind::Ordinary, Some(((m - 1) * (m - 1)) as u64), None);
    }
    if m == 2 && indices == [2] {
        return (PointKind::TacnodeA3, Some(3), None);
    }
    (
        PointKind::Unsupported,
        None,
        Some(format!("{m} branches with intersection indices {indices:?}")),
    )
}

/// Projective tangent line of a smooth component at a point on it.
fn tangent(f: &crate::qpoly::TriPoly, p: &[Rational; 3]) -> [Rational; 3] {
    let g = f.gradient().map(|d| d.eval(p));
    normalize_point(g)
}

/// Singular points with exact coordinates, sorted by coordinates; points
/// outside the supported vocabulary are returned with kind `Unsupported`.
///
/// Lines and smooth conics are smooth, so every singular point is a point
/// where at least two components meet.
pub fn singular_points(curve: &Curve) -> Result<Vec<SingularPoint>, ArrError> {
    let comps = curve.components();
    let mut groups: BTreeMap<[Rational; 3], Vec<PointOnPair>> = BTreeMap::new();
    for p in component_intersections(curve)? {
        groups.entry(p.point.clone()).or_default().push(p);
    }
    let mut out = Vec::with_capacity(groups.len());
    for (coords, hits) in groups {
        let indices: BTreeMap<(usize, usize), usize> = hits.iter().map(|h| (h.components, h.index)).collect();
        let mut branches: Vec<usize> = hits.iter().flat_map(|h| [h.components.0, h.components.1]).collect();
        branches.sort_unstable();
        branches.dedup();
        let m = branches.len();
        debug_assert_eq!(indices.len(), m * (m - 1) / 2);
        let tangents: Vec<[Rational; 3]> = branches.iter().map(|&b| tangent(&comps[b], &coords)).collect();
        for (&(i, j), &n) in &indices {
            let (ti, tj) = (branch_pos(&branches, i), branch_pos(&branches, j));
            let same = tangents[ti] == tangents[tj];
            if same != (n > 1) {
                return Err(ArrError::Unsupported {
                    point: format!("[{}]", point_strings(&coords).join(" : ")),
                    reason: format!("tangency of components {i} and {j} disagrees with index {n}"),
                });
            }
        }
        let branch_degrees: Vec<u32> = branches.iter().map(|&b| comps[b].total_degree().unwrap_or(0)).collect();
        let idx: Vec<usize> = indices.values().copied().collect();
        let (kind, tau, unsupported_reason) = local_type(m, &idx, branch_degrees.contains(&2));
        out.push(SingularPoint {
            local_milnor: milnor_formula(m, idx.iter().sum()),
            coords,
            branches,
            branch_degrees,
            mult_m: m,
            pairwise_intersection_indices: indices,
            local_tjurina: tau,
            kind,
            unsupported_reason,
        });
    }
    Ok(out)
}

/// Like [`singular_points`], but fails on the first unsupported point.
pub fn classify_singularities(curve: &Curve) -> Result<Vec<SingularPoint>, ArrError> {
    let pts = singular_points(curve)?;
    if let Some(p) = pts.iter().find(|p| !p.is_supported()) {
        return Err(ArrError::Unsupported {
            point: format!("[{}]", point_strings(&p.coords).join(" : ")),
            reason: p.unsupported_reason.clone().unwrap_or_default(),
        });
    }
    Ok(pts)
}

fn branch_pos(branches: &[usize], c: usize) -> usize {
    branches
        .iter()
        .position(|&b| b == c)
        .expect("component meets at this point")
}

/// `Σ μ_p` over the classified singular points.
pub fn total_milnor_combinatorial(curve: &Curve) -> Result<u64, ArrError> {
    Ok(classify_singularities(curve)?.iter().map(|p| p.local_milnor).sum())
}

/// `Σ μ_p` by Milnor's formula, including points outside the supported vocabulary.
pub fn total_milnor_by_branches(curve: &Curve) -> Result<u64, ArrError> {
    Ok(singular_points(curve)?.iter().map(|p| p.local_milnor).sum())
}

/// `Σ τ_p` when every point is supported.
pub fn total_tjurina_combinatorial(curve: &Curve) -> Result<u64, ArrError> {
    Ok(classify_singularities(curve)?
        .iter()
        .filter_map(|p| p.local_tjurina)
        .sum())
}

/// Number of ordinary points of each multiplicity, `nₘ`.
pub fn ordinary_counts(points: &[SingularPoint]) -> BTreeMap<usize, usize> {
    let mut n = BTreeMap::new();
    for p in points.iter().filter(|p| p.kind == PointKind::Ordinary) {
        *n.entry(p.mult_m).or_default() += 1;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{parse_poly, q};

    fn curve(parts: &[&str]) -> Curve {
        Curve::new(parts.iter().map(|s| parse_poly(s).unwrap()).collect()).unwrap()
    }

    const C1: [&str; 6] = ["x-z", "x+z", "y-z", "y+z", "y-x", "y+x"];

    #[test]
    fn six_lines() {
        let pts = classify_singularities(&curve(&C1)).unwrap();
        assert_eq!(ordinary_counts(&pts), BTreeMap::from([(2, 3), (3, 4)]));
        assert_eq!(pts.iter().map(|p| p.local_tjurina.unwrap()).sum::<u64>(), 19);
        assert_eq!(total_tjurina_combinatorial(&curve(&C1)).unwrap(), 19);
        assert_eq!(total_milnor_combinatorial(&curve(&C1)).unwrap(), 19);
    }

    #[test]
    fn six_lines_and_conic() {
        let mut parts = C1.to_vec();
        parts.push("x^2+y^2-2*z^2");
        let c = curve(&parts);
        let pts = classify_singularities(&c).unwrap();
        assert_eq!(ordinary_counts(&pts), BTreeMap::from([(2, 3), (4, 4)]));
        assert_eq!(total_milnor_combinatorial(&c).unwrap(), 39);
        let p = pts.iter().find(|p| p.coords == [q(1), q(1), q(1)]).unwrap();
        assert_eq!(p.mult_m, 4);
        // per-point union formula at [1:1:1] with the conic as the second curve
        let in_lines = |b: usize| b < 6;
        let in_conic = |b: usize| b == 6;
        let i_p = p.index_between(in_lines, in_conic);
        assert_eq!(i_p, 3);
        assert_eq!(p.milnor_of(in_lines), 4);
        assert_eq!(p.milnor_of(in_conic), 0);
        assert_eq!(p.local_milnor, 4 + 2 * i_p as u64 - 1);
    }

    #[test]
    fn node_and_tacnode() {
        let pts = classify_singularities(&curve(&["x-z", "y-z"])).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].coords, [q(1), q(1), q(1)]);
        assert_eq!((pts[0].kind, pts[0].local_milnor), (PointKind::Ordinary, 1));

        let pts = classify_singularities(&curve(&["z", "y^2-x*z"])).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(
            (pts[0].kind, pts[0].local_milnor, pts[0].local_tjurina),
            (PointKind::TacnodeA3, 3, Some(3))
        );
    }

    #[test]
    fn milnor_formula_matches_table() {
        for m in 2..9usize {
            assert_eq!(milnor_formula(m, m * (m - 1) / 2), ((m - 1) * (m - 1)) as u64);
        }
        assert_eq!(milnor_formula(2, 2), 3);
        // A_{2k-1}: two smooth branches with index k
        assert_eq!(milnor_formula(2, 3), 5);
    }

    #[test]
    fn smooth_conic_has_no_singular_points() {
        assert!(classify_singularities(&curve(&["x^2+y^2-2*z^2"])).unwrap().is_empty());
        assert_eq!(total_milnor_combinatorial(&curve(&["x^2+y^2-2*z^2"])).unwrap(), 0);
    }

    #[test]
    fn refuses_unsupported_points() {
        // tangent line through a further crossing: three branches, one pair with index 2
        let c = curve(&["z", "y^2-x*z", "y"]);
        assert!(matches!(classify_singularities(&c), Err(ArrError::Unsupported { .. })));
        // μ is still known: δ = 2 + 1 + 1, three branches
        let pts = singular_points(&c).unwrap();
        let p = pts.iter().find(|p| p.mult_m == 3).unwrap();
        assert_eq!(
            (p.kind, p.local_milnor, p.local_tjurina),
            (PointKind::Unsupported, 6, None)
        );
        // bitangent conics touch with index 2 at two points: both A3
        let c = curve(&["x^2+y^2-z^2", "x^2+4*y^2-z^2"]);
        let pts = classify_singularities(&c).unwrap();
        assert!(pts.iter().all(|p| p.kind == PointKind::TacnodeA3));
        // osculating conics (index 3) are refused
        let c = curve(&["y*z-x^2", "y*z-x^2+x*y"]);
        assert!(matches!(classify_singularities(&c), Err(ArrError::Unsupported { .. })));
    }

    #[test]
    fn five_fold_with_conic_refused() {
        // four lines through [1:1:1] plus the conic through it
        let c = curve(&["x-z", "y-z", "x-y", "x-2*y+z", "x^2+y^2-2*z^2"]);
        assert!(matches!(classify_singularities(&c), Err(ArrError::Unsupported { .. })));
        let p = singular_points(&c)
            .unwrap()
            .into_iter()
            .find(|p| p.mult_m == 5)
            .unwrap();
        assert_eq!((p.local_milnor, p.local_tjurina), (16, None));
        let lines = curve(&["x-z", "y-z", "x-y", "x+y-2*z", "x-2*y+z"]);
        let pts = classify_singularities(&lines).unwrap();
        assert_eq!(pts.iter().map(|p| p.mult_m).max(), Some(5));
    }
}
