//! Helpers shared by the integration tests: random inputs and independent
//! oracles written without the library's own algorithms.

#![allow(dead_code)]

use num_traits::{One, Zero};
use plane_curves::qpoly::{q, Matrix3, Monomial, Rational, TriPoly};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Rank by textbook Gaussian elimination over ℚ with full pivot search.
pub fn naive_rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = Rational::one() / &a[rank][c];
        for i in 0..a.len() {
            if i != rank && !a[i][c].is_zero() {
                let factor = &a[i][c] * &inv;
                for j in c..ncols {
                    let v = &factor * &a[rank][j];
                    a[i][j] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `rows × cols` integer matrix of rank at most `inner`, built as a product.
pub fn low_rank_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, inner: usize) -> Vec<Vec<Rational>> {
    let left: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..inner).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    let right: Vec<Vec<i64>> = (0..inner)
        .map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| q((0..inner).map(|k| left[i][k] * right[k][j]).sum()))
                .collect()
        })
        .collect()
}

/// Homogeneous polynomial of degree `d` with up to `terms` random terms.
pub fn random_form(rng: &mut ChaCha8Rng, d: u32, terms: usize) -> TriPoly {
    let monos = Monomial::of_degree(d);
    TriPoly::from_terms((0..terms).map(|_| {
        let m = monos[rng.gen_range(0..monos.len())];
        (
            m,
            Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=4).into()),
        )
    }))
}

/// Random integer matrix with nonzero determinant.
pub fn random_invertible(rng: &mut ChaCha8Rng) -> Matrix3 {
    loop {
        let m: [[i64; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(-3..=3)));
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if det != 0 {
            return plane_curves::qpoly::int_matrix(m);
        }
    }
}

/// Scales a nonzero point so its last nonzero coordinate is 1.
pub fn normalized(p: [Rational; 3]) -> [Rational; 3] {
    let k = p.iter().rev().find(|c| !c.is_zero()).expect("nonzero point").clone();
    p.map(|c| c / &k)
}

/// Coefficients `[a, b, c]` of the linear form `a x + b y + c z`.
pub fn line_coeffs(l: &TriPoly) -> [Rational; 3] {
    [Monomial::new(1, 0, 0), Monomial::new(0, 1, 0), Monomial::new(0, 0, 1)].map(|m| l.coeff(&m))
}

/// Multiplicities of the multiple points of a line arrangement, found by
/// intersecting every pair of lines and counting the lines through each point.
pub fn line_point_multiplicities(lines: &[[Rational; 3]]) -> Vec<usize> {
    let mut points: Vec<[Rational; 3]> = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (&lines[i], &lines[j]);
            let p = normalized([
                &a[1] * &b[2] - &a[2] * &b[1],
                &a[2] * &b[0] - &a[0] * &b[2],
                &a[0] * &b[1] - &a[1] * &b[0],
            ]);
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    points
        .iter()
        .map(|p| {
            lines
                .iter()
                .filter(|l| (0..3).map(|k| &l[k] * &p[k]).sum::<Rational>().is_zero())
                .count()
        })
        .collect()
}

/// Property-test configuration with a fixed seed, so every run sees the same cases.
pub fn fixed_seed(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(20261018),
        failure_persistence: None,
        ..Default::default()
    }
}
