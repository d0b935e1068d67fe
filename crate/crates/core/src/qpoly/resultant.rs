//! Sylvester resultants via fraction-free (Bareiss) determinant evaluation.

use super::{PolyError, TriPoly, Var};

/// Sylvester matrix of `f` and `g` with respect to `v`.
///
/// Rows of `f` come first; columns run from the highest power of `v` down to
/// the constant term. With `m = deg_v f`, `n = deg_v g` the matrix is
/// `(m + n) × (m + n)` with `n` shifted copies of `f` followed by `m` shifted
/// copies of `g`.
pub fn sylvester_matrix(f: &TriPoly, g: &TriPoly, v: Var) -> Result<Vec<Vec<TriPoly>>, PolyError> {
    let m = positive_degree(f, v)?;
    let n = positive_degree(g, v)?;
    let fc = f.coeffs_in(v);
    let gc = g.coeffs_in(v);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![TriPoly::zero(); size];
        for (i, c) in fc.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![TriPoly::zero(); size];
        for (i, c) in gc.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    Ok(rows)
}

fn positive_degree(p: &TriPoly, v: Var) -> Result<usize, PolyError> {
    match p.degree_in(v) {
        Some(d) if d > 0 => Ok(d as usize),
        _ => Err(PolyError::NotPositiveDegree(v)),
    }
}

/// Resultant of `f` and `g` eliminating `v`.
///
/// The sign follows [`sylvester_matrix`] (rows of `f` first). The result is
/// zero exactly when `f` and `g` share a factor of positive degree in `v`.
pub fn resultant_wrt(f: &TriPoly, g: &TriPoly, v: Var) -> Result<TriPoly, PolyError> {
    let m = sylvester_matrix(f, g, v)?;
    Ok(bareiss_det(m))
}

/// Determinant over the polynomial ring by Bareiss elimination. Every
/// division performed is exact.
pub fn bareiss_det(mut a: Vec<Vec<TriPoly>>) -> TriPoly {
    let n = a.len();
    if n == 0 {
        return TriPoly::one();
    }
    let mut negate = false;
    let mut prev = TriPoly::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return TriPoly::zero();
            };
            a.swap(k, swap);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let num = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                row[j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            row[k] = TriPoly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}
