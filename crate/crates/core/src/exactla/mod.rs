//! Exact rank and nullity of dense rational matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::qpoly::Rational;

mod modular;

/// Dense row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Rows scaled by the lcm of their denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter()
                    .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect()
    }
}

/// Matrices with at most this many entries go straight to Bareiss.
const SMALL_ENTRIES: usize = 4096;

/// Exact rank over ℚ.
///
/// Small matrices use [`rank_bareiss`]. Larger ones use the certified
/// multi-modular route in [`modular`], falling back to Bareiss if no
/// certificate is found within the prime budget.
pub fn rank(m: &QMatrix) -> usize {
    if m.rows * m.cols <= SMALL_ENTRIES {
        return rank_bareiss(m);
    }
    // fewer columns means a smaller echelon block to reconstruct
    let oriented = if m.cols > m.rows { m.transpose() } else { m.clone() };
    let rows: Vec<Vec<(usize, BigInt)>> = oriented
        .integer_rows()
        .into_iter()
        .map(|r| r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect())
        .collect();
    modular::certified_rank(&rows, oriented.cols).unwrap_or_else(|| rank_bareiss(m))
}

/// Exact rank over ℚ by Bareiss fraction-free elimination.
///
/// Rows are first cleared of denominators; every division is exact. The
/// pivot in each column is the first remaining row with a nonzero entry.
pub fn rank_bareiss(m: &QMatrix) -> usize {
    let mut a = m.integer_rows();
    let nrows = m.rows;
    let ncols = m.cols;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (top, bottom) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let piv = &pivot_row[c];
        for row in bottom.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let mut v = piv * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                if !v.is_zero() {
                    v /= &prev;
                }
                row[j] = v;
            }
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// `cols - rank`.
pub fn kernel_dim(m: &QMatrix) -> usize {
    m.cols - rank(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(4, 6)), 0);
        assert_eq!(rank(&QMatrix::from_i64(&[&[1, 2], &[2, 4], &[3, 6]])), 1);
        assert_eq!(rank(&QMatrix::zeros(0, 0)), 0);
        assert_eq!(rank(&QMatrix::zeros(0, 5)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_dim(&QMatrix::identity(3)), 0);
        assert_eq!(kernel_dim(&QMatrix::zeros(4, 6)), 6);
        assert_eq!(kernel_dim(&QMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]])), 1);
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let m = QMatrix::from_rows(vec![
            vec![half.clone(), third.clone()],
            vec![Rational::one(), &third * Rational::from_integer(2.into())],
        ]);
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn skipped_columns_keep_divisions_exact() {
        let m = QMatrix::from_i64(&[&[0, 2, 4, 1, 7], &[0, 3, 6, 5, 1], &[0, 1, 2, 9, 3], &[0, 5, 10, 2, 2]]);
        assert_eq!(rank(&m), 3);
    }
}
