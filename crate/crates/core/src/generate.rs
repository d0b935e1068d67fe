//! Seeded generators of small line and conic-line arrangements with rational
//! singular points, used as property-test corpora.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arrgeo::{classify_singularities, singular_points, Curve};
use crate::qpoly::{det3, parse_poly, Rational, TriPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    GenericLines,
    ConcurrentRichLines,
    LinesPlusConic,
}

impl FromStr for GenKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "generic-lines" => Ok(GenKind::GenericLines),
            "concurrent-rich-lines" => Ok(GenKind::ConcurrentRichLines),
            "lines-plus-conic" => Ok(GenKind::LinesPlusConic),
            _ => Err(format!(
                "unknown kind {s:?}; expected generic-lines, concurrent-rich-lines or lines-plus-conic"
            )),
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::GenericLines => "generic-lines",
            GenKind::ConcurrentRichLines => "concurrent-rich-lines",
            GenKind::LinesPlusConic => "lines-plus-conic",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("no acceptable {kind} arrangement after {attempts} attempts; try another seed")]
    BudgetExhausted { kind: GenKind, attempts: usize },
    #[error("{kind} needs {min} to {max} lines, got {got}")]
    BadLineCount {
        kind: GenKind,
        min: usize,
        max: usize,
        got: usize,
    },
}

/// A named list of components, ready for a curve file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub name: String,
    pub components: Vec<TriPoly>,
}

impl Generated {
    pub fn curve(&self) -> Curve {
        Curve::new(self.components.clone()).expect("generated components form a reduced curve")
    }
}

const ATTEMPTS: usize = 2000;
const MAX_LINES: usize = 12;

type Pt = [i64; 3];

fn cross(a: Pt, b: Pt) -> Pt {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn primitive(v: Pt) -> Option<Pt> {
    let g = v.iter().fold(0i64, |g, &c| num_integer::gcd(g, c));
    if g == 0 {
        return None;
    }
    let lead = *v.iter().find(|&&c| c != 0).unwrap();
    let s = if lead < 0 { -g } else { g };
    Some(v.map(|c| c / s))
}

fn line_poly(l: Pt) -> TriPoly {
    TriPoly::linear(&l.map(|c| Rational::from_integer(c.into())))
}

fn concurrent(a: Pt, b: Pt, c: Pt) -> bool {
    let m = [a, b, c].map(|r| r.map(|x| Rational::from_integer(x.into())));
    num_traits::Zero::is_zero(&det3(&m))
}

fn push_line(lines: &mut Vec<Pt>, l: Pt) -> bool {
    match primitive(l) {
        Some(p) if !lines.contains(&p) => {
            lines.push(p);
            true
        }
        _ => false,
    }
}

fn generic_lines(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Pt>> {
    let mut lines: Vec<Pt> = Vec::new();
    for _ in 0..50 * n {
        if lines.len() == n {
            break;
        }
        let l: Pt = std::array::from_fn(|_| rng.gen_range(-3..=3));
        let fresh = primitive(l).is_some_and(|p| !lines.contains(&p));
        let general = (0..lines.len()).all(|i| (i + 1..lines.len()).all(|j| !concurrent(lines[i], lines[j], l)));
        if fresh && general {
            push_line(&mut lines, l);
        }
    }
    (lines.len() == n).then_some(lines)
}

fn rich_lines(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Pt>> {
    let mut grid: Vec<Pt> = (-2..=2).flat_map(|a| (-2..=2).map(move |b| [a, b, 1])).collect();
    grid.extend([[1, 0, 0], [0, 1, 0], [1, 1, 0], [1, -1, 0]]);
    let k = rng.gen_range(2..=4);
    let hubs: Vec<Pt> = grid.choose_multiple(rng, k).copied().collect();
    let mut lines: Vec<Pt> = Vec::new();
    for _ in 0..50 * n {
        if lines.len() == n {
            break;
        }
        let h = *hubs.choose(rng).unwrap();
        let other = if rng.gen_bool(0.5) {
            *hubs.choose(rng).unwrap()
        } else {
            *grid.choose(rng).unwrap()
        };
        push_line(&mut lines, cross(h, other));
    }
    (lines.len() == n).then_some(lines)
}

/// Conics with a quadratic parametrization of their rational points.
struct Conic {
    text: &'static str,
    param: fn(i64, i64) -> Pt,
    gradient: fn(Pt) -> Pt,
}

const CONICS: [Conic; 3] = [
    Conic {
        text: "x^2 + y^2 - z^2",
        param: |p, q| [q * q - p * p, 2 * p * q, q * q + p * p],
        gradient: |[x, y, z]| [2 * x, 2 * y, -2 * z],
    },
    Conic {
        text: "x*z - y^2",
        param: |p, q| [p * p, p * q, q * q],
        gradient: |[x, y, z]| [z, -2 * y, x],
    },
    Conic {
        text: "x*y - z^2",
        param: |p, q| [p * p, q * q, p * q],
        gradient: |[x, y, z]| [y, x, -2 * z],
    },
];

fn conic_lines(rng: &mut ChaCha8Rng, conic: &Conic, n: usize) -> Option<Vec<Pt>> {
    let params: Vec<(i64, i64)> = (-2..=2i64)
        .flat_map(|p| (0..=2i64).map(move |q| (p, q)))
        .filter(|&(p, q)| num_integer::gcd(p, q) == 1)
        .collect();
    let mut on: Vec<Pt> = params
        .iter()
        .map(|&(p, q)| (conic.param)(p, q))
        .filter_map(primitive)
        .collect();
    on.dedup();
    let mut lines: Vec<Pt> = Vec::new();
    for _ in 0..50 * n {
        if lines.len() == n {
            break;
        }
        let p = *on.choose(rng).unwrap();
        let l = match rng.gen_range(0..10) {
            0..=5 => cross(p, *on.choose(rng).unwrap()),
            6 | 7 => (conic.gradient)(p),
            _ => cross(p, [rng.gen_range(-2..=2), rng.gen_range(-2..=2), 1]),
        };
        push_line(&mut lines, l);
    }
    (lines.len() == n).then_some(lines)
}

/// One arrangement of the given kind; `strict` additionally demands that
/// every singular point be ordinary or a tacnode.
fn one(rng: &mut ChaCha8Rng, kind: GenKind, n: usize, strict: bool) -> Option<Vec<TriPoly>> {
    let (lines, conic) = match kind {
        GenKind::GenericLines => (generic_lines(rng, n)?, None),
        GenKind::ConcurrentRichLines => (rich_lines(rng, n)?, None),
        GenKind::LinesPlusConic => {
            let c = CONICS.choose(rng).unwrap();
            (
                conic_lines(rng, c, n)?,
                Some(parse_poly(c.text).expect("conic literal parses")),
            )
        }
    };
    let mut comps: Vec<TriPoly> = lines.into_iter().map(line_poly).collect();
    comps.extend(conic);
    let curve = Curve::new(comps.clone()).ok()?;
    let pts = if strict {
        classify_singularities(&curve).ok()?
    } else {
        singular_points(&curve).ok()?
    };
    let ok = match kind {
        GenKind::GenericLines => pts.iter().all(|p| p.mult_m == 2),
        GenKind::ConcurrentRichLines => pts.iter().any(|p| p.mult_m >= 3),
        GenKind::LinesPlusConic => true,
    };
    ok.then_some(comps)
}

fn line_range(kind: GenKind) -> (usize, usize) {
    match kind {
        GenKind::GenericLines | GenKind::ConcurrentRichLines => (3, 7),
        GenKind::LinesPlusConic => (1, 6),
    }
}

/// `count` arrangements of `kind`, each with `lines` lines or a seeded number
/// of lines in the kind's range when `lines` is `None`. All singular points
/// are rational and of a supported kind.
pub fn generate(kind: GenKind, count: usize, seed: u64, lines: Option<usize>) -> Result<Vec<Generated>, GenerateError> {
    let (lo, hi) = line_range(kind);
    if let Some(n) = lines {
        let min = if kind == GenKind::LinesPlusConic { 1 } else { 2 };
        if n < min || n > MAX_LINES {
            return Err(GenerateError::BadLineCount {
                kind,
                min,
                max: MAX_LINES,
                got: n,
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let n = lines.unwrap_or_else(|| rng.gen_range(lo..=hi));
            if let Some(c) = one(&mut rng, kind, n, true) {
                found = Some(c);
                break;
            }
        }
        let components = found.ok_or(GenerateError::BudgetExhausted {
            kind,
            attempts: ATTEMPTS,
        })?;
        out.push(Generated {
            name: format!("{kind}-{seed}-{k}"),
            components,
        });
    }
    Ok(out)
}

/// `count` pairs `(C₁, C₂)` without common components, each of degree at
/// least 3, made by splitting a seeded line or conic-line arrangement of
/// degree 6 to 8. Line arrangements of degree 6 split at the third line;
/// with a conic the degree is at least 7, so the first prefix of degree
/// 3 or 4 leaves at least 3 behind. Unions may contain unsupported (non-quasi-homogeneous)
/// points; every point is rational.
pub fn union_pairs(count: usize, seed: u64) -> Result<Vec<(Generated, Generated)>, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let kind = [
            GenKind::GenericLines,
            GenKind::ConcurrentRichLines,
            GenKind::LinesPlusConic,
        ][k % 3];
        let mut found = None;
        for _ in 0..ATTEMPTS {
            let n = if kind == GenKind::LinesPlusConic {
                rng.gen_range(5..=6)
            } else {
                rng.gen_range(6..=7)
            };
            if let Some(c) = one(&mut rng, kind, n, false) {
                found = Some(c);
                break;
            }
        }
        let mut comps = found.ok_or(GenerateError::BudgetExhausted {
            kind,
            attempts: ATTEMPTS,
        })?;
        comps.shuffle(&mut rng);
        let deg = |cs: &[TriPoly]| cs.iter().map(|c| c.total_degree().unwrap_or(0)).sum::<u32>();
        let split = (1..comps.len())
            .find(|&s| deg(&comps[..s]) >= 3 && deg(&comps[s..]) >= 3)
            .expect("degree at least 6");
        let second = comps.split_off(split);
        out.push((
            Generated {
                name: format!("pair-{seed}-{k}-a"),
                components: comps,
            },
            Generated {
                name: format!("pair-{seed}-{k}-b"),
                components: second,
            },
        ));
    }
    Ok(out)
}
