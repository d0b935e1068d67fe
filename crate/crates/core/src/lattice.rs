//! Intersection lattices of central arrangements of rank at most 3, given as
//! lines in ℙ², with Möbius function, Poincaré polynomial `π(𝒜; t)` and the
//! deletion–restriction triple.
//!
//! Rank-2 flats are found by concurrency (three lines meet iff the
//! determinant of their coefficient triples vanishes), so no coordinates are
//! needed to build the lattice; intersection points are attached for display.

use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arrgeo::{point_strings, Curve};
use crate::exactla::{rank, QMatrix};
use crate::invariants::QuadraticPoly;
use crate::qpoly::{det3, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("arrangement has no lines")]
    Empty,
    #[error("line {0} has all coefficients zero")]
    ZeroLine(usize),
    #[error("lines {0} and {1} coincide")]
    Repeated(usize, usize),
    #[error("component {0} is not a line")]
    NotALine(usize),
    #[error("line index {0} out of range")]
    NoSuchLine(usize),
    #[error("deletion needs at least two lines")]
    TooFewLines,
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

fn span_rank(vs: &[Vec<Rational>]) -> usize {
    if vs.is_empty() {
        return 0;
    }
    rank(&QMatrix::from_rows(vs.to_vec()))
}

/// A central arrangement in ℂ³, one coefficient triple per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineArrangement {
    lines: Vec<[Rational; 3]>,
}

impl LineArrangement {
    pub fn new(lines: Vec<[Rational; 3]>) -> Result<Self, LatticeError> {
        if lines.is_empty() {
            return Err(LatticeError::Empty);
        }
        for (i, l) in lines.iter().enumerate() {
            if l.iter().all(|c| c.is_zero()) {
                return Err(LatticeError::ZeroLine(i));
            }
            for (j, m) in lines.iter().enumerate().take(i) {
                if proportional(l, m) {
                    return Err(LatticeError::Repeated(j, i));
                }
            }
        }
        Ok(LineArrangement { lines })
    }

    pub fn from_i64(lines: &[[i64; 3]]) -> Result<Self, LatticeError> {
        LineArrangement::new(
            lines
                .iter()
                .map(|l| l.map(|c| Rational::from_integer(c.into())))
                .collect(),
        )
    }

    /// The lines of a curve whose components all have degree 1.
    pub fn from_curve(curve: &Curve) -> Result<Self, LatticeError> {
        let mut lines = Vec::with_capacity(curve.num_components_e());
        for (i, c) in curve.components().iter().enumerate() {
            if c.total_degree() != Some(1) {
                return Err(LatticeError::NotALine(i));
            }
            lines.push([Var::X, Var::Y, Var::Z].map(|v| c.differentiate(v).constant_term()));
        }
        LineArrangement::new(lines)
    }

    pub fn lines(&self) -> &[[Rational; 3]] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    fn normals(&self) -> Vec<Vec<Rational>> {
        self.lines.iter().map(|l| l.to_vec()).collect()
    }

    /// The arrangement without line `h0`; `None` if nothing would be left.
    pub fn deletion(&self, h0: usize) -> Option<LineArrangement> {
        let rest: Vec<[Rational; 3]> = self
            .lines
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != h0)
            .map(|(_, l)| l.clone())
            .collect();
        (!rest.is_empty()).then_some(LineArrangement { lines: rest })
    }

    /// The arrangement induced on the plane `H₀ ⊂ ℂ³`.
    ///
    /// Each other line restricts to a linear form on a basis of `H₀`;
    /// lines meeting `H₀` in the same point give proportional forms and are
    /// merged, so `𝒜''` is a set.
    pub fn restriction(&self, h0: usize) -> Result<Restriction, LatticeError> {
        let l0 = self.lines.get(h0).ok_or(LatticeError::NoSuchLine(h0))?;
        let [p, q] = plane_basis(l0);
        let dot = |a: &[Rational; 3], b: &[Rational; 3]| (0..3).map(|i| &a[i] * &b[i]).sum::<Rational>();
        let mut forms: Vec<[Rational; 2]> = Vec::new();
        for (i, l) in self.lines.iter().enumerate() {
            if i == h0 {
                continue;
            }
            let f = [dot(l, &p), dot(l, &q)];
            if !forms.iter().any(|g| proportional(g, &f)) {
                forms.push(f);
            }
        }
        Ok(Restriction { h0, forms })
    }
}

/// Two vectors spanning the plane `l · v = 0`.
fn plane_basis(l: &[Rational; 3]) -> [[Rational; 3]; 2] {
    let z = Rational::zero;
    let one = || Rational::from_integer(1.into());
    let [a, b, c] = l.clone();
    if !a.is_zero() {
        [[-b, a.clone(), z()], [-c, z(), a]]
    } else if !b.is_zero() {
        [[one(), z(), z()], [z(), -c, b]]
    } else {
        [[one(), z(), z()], [z(), one(), z()]]
    }
}

/// `𝒜''`: distinct lines through the origin of `H₀ ≅ ℂ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    pub h0: usize,
    pub forms: Vec<[Rational; 2]>,
}

impl Restriction {
    fn normals(&self) -> Vec<Vec<Rational>> {
        self.forms.iter().map(|f| f.to_vec()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub rank: usize,
    pub members: Vec<usize>,
    #[serde(serialize_with = "ser_opt_point")]
    pub point: Option<[Rational; 3]>,
    pub mobius: i64,
}

fn ser_opt_point<S: Serializer>(p: &Option<[Rational; 3]>, s: S) -> Result<S::Ok, S::Error> {
    p.as_ref().map(point_strings).serialize(s)
}

/// Flats of a central arrangement in `ℂ^ambient` (`ambient ≤ 3`), listed by
/// rank, with the Möbius function from `μ(V) = 1`, `Σ_{Y ≤ X} μ(Y) = 0`.
fn lattice_of(normals: &[Vec<Rational>], ambient: usize) -> Vec<Flat> {
    let n = normals.len();
    let mut flats = vec![Flat {
        rank: 0,
        members: vec![],
        point: None,
        mobius: 1,
    }];
    flats.extend((0..n).map(|i| Flat {
        rank: 1,
        members: vec![i],
        point: None,
        mobius: 0,
    }));
    let total = span_rank(normals);
    match ambient {
        3 => {
            let as3 = |v: &Vec<Rational>| -> [Rational; 3] { [v[0].clone(), v[1].clone(), v[2].clone()] };
            let mut covered = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    if covered[i][j] {
                        continue;
                    }
                    let (a, b) = (as3(&normals[i]), as3(&normals[j]));
                    let members: Vec<usize> = (0..n)
                        .filter(|&k| k == i || k == j || det3(&[a.clone(), b.clone(), as3(&normals[k])]).is_zero())
                        .collect();
                    for &u in &members {
                        for &v in &members {
                            covered[u][v] = true;
                        }
                    }
                    let p = cross(&a, &b);
                    flats.push(Flat {
                        rank: 2,
                        members,
                        point: Some(normalize(p)),
                        mobius: 0,
                    });
                }
            }
            if total == 3 {
                flats.push(Flat {
                    rank: 3,
                    members: (0..n).collect(),
                    point: None,
                    mobius: 0,
                });
            }
        }
        _ => {
            if total == 2 && ambient == 2 {
                flats.push(Flat {
                    rank: 2,
                    members: (0..n).collect(),
                    point: None,
                    mobius: 0,
                });
            }
        }
    }
    for x in 1..flats.len() {
        let s: i64 = (0..x)
            .filter(|&y| flats[y].rank < flats[x].rank && flats[y].members.iter().all(|m| flats[x].members.contains(m)))
            .map(|y| flats[y].mobius)
            .sum();
        flats[x].mobius = -s;
    }
    flats
}

fn cross(a: &[Rational; 3], b: &[Rational; 3]) -> [Rational; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn normalize(p: [Rational; 3]) -> [Rational; 3] {
    let s = p
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .expect("distinct lines meet in a point")
        .clone();
    p.map(|c| c / &s)
}

fn pi_of(flats: &[Flat]) -> QuadraticPoly {
    let mut c = [0i64; 4];
    for f in flats {
        let sign = if f.rank % 2 == 0 { 1 } else { -1 };
        c[f.rank] += sign * f.mobius;
    }
    QuadraticPoly::new(&c)
}

pub fn build_lattice(a: &LineArrangement) -> Vec<Flat> {
    lattice_of(&a.normals(), 3)
}

pub fn restriction_lattice(r: &Restriction) -> Vec<Flat> {
    lattice_of(&r.normals(), 2)
}

/// `π(𝒜; t) = Σ_X μ(X) (-t)^{r(X)}`.
pub fn pi_poly(a: &LineArrangement) -> QuadraticPoly {
    pi_of(&build_lattice(a))
}

pub fn pi_restriction(r: &Restriction) -> QuadraticPoly {
    pi_of(&restriction_lattice(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeletionRestriction {
    pub h0: usize,
    pub pi: QuadraticPoly,
    pub pi_deletion: QuadraticPoly,
    pub pi_restriction: QuadraticPoly,
    /// `π(𝒜') + t π(𝒜'')`.
    pub rhs: QuadraticPoly,
    pub holds: bool,
}

/// `π(𝒜; t) = π(𝒜'; t) + t π(𝒜''; t)` for the triple at `H₀ = lines[h0]`.
pub fn deletion_restriction_check(a: &LineArrangement, h0: usize) -> Result<DeletionRestriction, LatticeError> {
    if a.len() < 2 {
        return Err(LatticeError::TooFewLines);
    }
    let res = a.restriction(h0)?;
    let del = a.deletion(h0).expect("at least one line remains");
    let pi = pi_poly(a);
    let pi_deletion = pi_poly(&del);
    let pi_restriction = pi_restriction(&res);
    let rhs = &pi_deletion + &(&QuadraticPoly::new(&[0, 1]) * &pi_restriction);
    Ok(DeletionRestriction {
        h0,
        holds: pi == rhs,
        pi,
        pi_deletion,
        pi_restriction,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(c: &[i64]) -> QuadraticPoly {
        QuadraticPoly::new(c)
    }

    const C1: [[i64; 3]; 6] = [[1, 0, -1], [1, 0, 1], [0, 1, -1], [0, 1, 1], [-1, 1, 0], [1, 1, 0]];

    #[test]
    fn generic_triangle() {
        let a = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [0, 0, 1]]).unwrap();
        let flats = build_lattice(&a);
        let by_rank = |k| {
            flats
                .iter()
                .filter(|f| f.rank == k)
                .map(|f| f.mobius)
                .collect::<Vec<_>>()
        };
        assert_eq!(by_rank(0), vec![1]);
        assert_eq!(by_rank(1), vec![-1, -1, -1]);
        assert_eq!(by_rank(2), vec![1, 1, 1]);
        assert_eq!(by_rank(3), vec![-1]);
        assert_eq!(pi_poly(&a), qp(&[1, 3, 3, 1]));
        for h in 0..3 {
            let dr = deletion_restriction_check(&a, h).unwrap();
            assert!(dr.holds);
            assert_eq!(dr.pi_deletion, qp(&[1, 2, 1]));
            assert_eq!(dr.pi_restriction, qp(&[1, 2, 1]));
        }
    }

    #[test]
    fn pencil() {
        for n in 2..6i64 {
            let lines: Vec<[i64; 3]> = (0..n).map(|k| [1, k, 0]).collect();
            let a = LineArrangement::from_i64(&lines).unwrap();
            let flats = build_lattice(&a);
            let twos: Vec<&Flat> = flats.iter().filter(|f| f.rank == 2).collect();
            assert_eq!(twos.len(), 1);
            assert_eq!(twos[0].mobius, n - 1);
            assert!(flats.iter().all(|f| f.rank < 3));
            assert_eq!(pi_poly(&a), qp(&[1, n, n - 1]));
        }
    }

    #[test]
    fn six_lines() {
        let a = LineArrangement::from_i64(&C1).unwrap();
        let flats = build_lattice(&a);
        let mut mob: Vec<i64> = flats.iter().filter(|f| f.rank == 2).map(|f| f.mobius).collect();
        mob.sort();
        assert_eq!(mob, vec![1, 1, 1, 2, 2, 2, 2]);
        let pi = pi_poly(&a);
        assert_eq!(pi, qp(&[1, 6, 11, 6]));
        assert_eq!(pi, &(&qp(&[1, 1]) * &qp(&[1, 2])) * &qp(&[1, 3]));
        for h in 0..6 {
            assert!(deletion_restriction_check(&a, h).unwrap().holds, "H0 = {h}");
        }
    }

    #[test]
    fn mobius_sums_vanish() {
        let a = LineArrangement::from_i64(&C1).unwrap();
        let flats = build_lattice(&a);
        for x in flats.iter().filter(|f| f.rank > 0) {
            let s: i64 = flats
                .iter()
                .filter(|y| y.rank <= x.rank && y.members.iter().all(|m| x.members.contains(m)))
                .map(|y| y.mobius)
                .sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn two_lines_and_one() {
        let a = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0]]).unwrap();
        assert_eq!(pi_poly(&a), qp(&[1, 2, 1]));
        for h in 0..2 {
            let dr = deletion_restriction_check(&a, h).unwrap();
            assert_eq!(
                (dr.pi_deletion.clone(), dr.pi_restriction.clone()),
                (qp(&[1, 1]), qp(&[1, 1]))
            );
            assert!(dr.holds);
        }
        let one = LineArrangement::from_i64(&[[1, 2, 3]]).unwrap();
        assert_eq!(pi_poly(&one), qp(&[1, 1]));
        assert_eq!(deletion_restriction_check(&one, 0), Err(LatticeError::TooFewLines));
    }

    #[test]
    fn restriction_merges_points() {
        // lines 1..3 all meet line 0 = {x = 0} at [0:0:1]
        let a = LineArrangement::from_i64(&[[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, 2, 0], [0, 0, 1]]).unwrap();
        let r = a.restriction(0).unwrap();
        assert_eq!(r.forms.len(), 2);
        assert_eq!(pi_restriction(&r), qp(&[1, 2, 1]));
        assert!(deletion_restriction_check(&a, 0).unwrap().holds);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(LineArrangement::new(vec![]), Err(LatticeError::Empty));
        assert_eq!(LineArrangement::from_i64(&[[0, 0, 0]]), Err(LatticeError::ZeroLine(0)));
        assert_eq!(
            LineArrangement::from_i64(&[[1, 2, 3], [2, 4, 6]]),
            Err(LatticeError::Repeated(0, 1))
        );
    }
}
