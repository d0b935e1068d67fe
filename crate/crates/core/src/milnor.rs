//! Graded pieces of the Jacobian ideal: syzygy dimensions, `mdr`, the Hilbert
//! function of the Milnor algebra `S/J_f`, and the total Tjurina number.
//!
//! All computations reduce to ranks of the degree-`k` map
//!
//! ```text
//! (a, b, c) ∈ S_{k-d+1}³  ↦  a ∂x f + b ∂y f + c ∂z f ∈ S_k
//! ```
//!
//! whose kernel is `AR(f)_{k-d+1}` and whose image is `(J_f)_k`.
//!
//! The Hilbert function of `S/J_f` of a reduced curve is eventually constant
//! and equal to `τ(C)`. Classically it is constant from degree `3d - 5` on
//! (and from `3d - 6` for nodal-type cases); we do not rely on the sharp
//! bound, and instead scan from `max(d - 1, 3d - 6)` until three consecutive
//! values agree.

use serde::Serialize;
use thiserror::Error;

use crate::exactla::{kernel_dim, rank, QMatrix};
use crate::qpoly::{poly_gcd_many, Monomial, TriPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial must have degree at least 1")]
    Constant,
    #[error("degree {k} is below d - 1 = {min}")]
    DegreeBelowRange { k: u32, min: u32 },
    #[error("polynomial is not reduced (gcd with its partials is {0})")]
    NotReduced(String),
    #[error("Hilbert function of the Milnor algebra did not stabilize for k in [{start}, {end}); values {values:?}")]
    NoPlateau { start: u32, end: u32, values: Vec<u64> },
}

/// Syzygy dimensions `dim AR(f)_r` for `0 ≤ r ≤ d - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyProfile {
    pub degree_d: u32,
    pub mdr: u32,
    pub ar_dims: Vec<(u32, u64)>,
    pub exponents: Option<(u32, u32)>,
}

/// Scanned values of `dim (S/J_f)_k` and the plateau they settle on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorAlgebraProfile {
    pub hilbert: Vec<(u32, u64)>,
    pub tau: u64,
    pub stabilization_degree: u32,
}

fn degree_of(f: &TriPoly) -> Result<u32, MilnorError> {
    if !f.is_homogeneous() {
        return Err(MilnorError::NotHomogeneous);
    }
    match f.total_degree() {
        Some(d) if d >= 1 => Ok(d),
        _ => Err(MilnorError::Constant),
    }
}

pub fn monomial_count(k: u32) -> usize {
    ((k + 1) * (k + 2) / 2) as usize
}

/// Matrix of `(a, b, c) ↦ a ∂x f + b ∂y f + c ∂z f` in degree `k`.
///
/// Rows index the degree-`k` monomials and columns the three blocks of
/// degree-`(k - d + 1)` monomials (`a` block, then `b`, then `c`), each in
/// descending graded-lex order.
pub fn jacobian_map_matrix(f: &TriPoly, k: u32) -> Result<QMatrix, MilnorError> {
    let d = degree_of(f)?;
    if k + 1 < d {
        return Err(MilnorError::DegreeBelowRange { k, min: d - 1 });
    }
    let row_basis = Monomial::of_degree(k);
    let index: std::collections::HashMap<Monomial, usize> =
        row_basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let dom = Monomial::of_degree(k + 1 - d);
    let grad = f.gradient();
    let mut m = QMatrix::zeros(row_basis.len(), 3 * dom.len());
    for (block, partial) in grad.iter().enumerate() {
        for (j, mono) in dom.iter().enumerate() {
            let col = block * dom.len() + j;
            for (t, c) in partial.terms() {
                let row = index[&t.mul(mono)];
                m.set(row, col, c.clone());
            }
        }
    }
    Ok(m)
}

/// `dim AR(f)_r`.
pub fn ar_dimension(f: &TriPoly, r: u32) -> Result<u64, MilnorError> {
    let d = degree_of(f)?;
    Ok(kernel_dim(&jacobian_map_matrix(f, r + d - 1)?) as u64)
}

/// Least `r` with `AR(f)_r ≠ 0`. The Koszul relations bound it by `d - 1`.
pub fn mdr(f: &TriPoly) -> Result<u32, MilnorError> {
    let d = degree_of(f)?;
    for r in 0..d {
        if ar_dimension(f, r)? > 0 {
            return Ok(r);
        }
    }
    // only reachable for non-reduced input with vanishing gradient
    Ok(d - 1)
}

/// `dim AR(f)_r` for every `r ≤ d - 1`, plus `mdr`.
pub fn syzygy_profile(f: &TriPoly) -> Result<SyzygyProfile, MilnorError> {
    let d = degree_of(f)?;
    let ar_dims: Vec<(u32, u64)> = (0..d)
        .map(|r| ar_dimension(f, r).map(|v| (r, v)))
        .collect::<Result<_, _>>()?;
    let mdr = ar_dims.iter().find(|(_, v)| *v > 0).map_or(d - 1, |(r, _)| *r);
    Ok(SyzygyProfile {
        degree_d: d,
        mdr,
        ar_dims,
        exponents: None,
    })
}

/// `dim (S/J_f)_k` for `k ≥ d - 1`.
pub fn milnor_algebra_hilbert(f: &TriPoly, k: u32) -> Result<u64, MilnorError> {
    let m = jacobian_map_matrix(f, k)?;
    Ok((m.rows() - rank(&m)) as u64)
}

/// Fails unless `gcd(f, ∂x f, ∂y f, ∂z f)` is constant.
pub fn check_reduced(f: &TriPoly) -> Result<(), MilnorError> {
    degree_of(f)?;
    let g = f.gradient();
    // partials first: they are usually coprime already, which is the cheap case
    let h = poly_gcd_many([&g[0], &g[1], &g[2], f]).expect("f is nonzero");
    if h.is_constant() {
        Ok(())
    } else {
        Err(MilnorError::NotReduced(h.to_string()))
    }
}

/// Total Tjurina number from the Hilbert function plateau of `S/J_f`.
///
/// Does not re-check reducedness; callers are expected to have run
/// [`check_reduced`]. Non-reduced input shows up as [`MilnorError::NoPlateau`].
pub fn total_tjurina(f: &TriPoly) -> Result<MilnorAlgebraProfile, MilnorError> {
    let d = degree_of(f)?;
    let start = (d - 1).max((3 * d).saturating_sub(6));
    let end = start + 3 * d;
    let mut hilbert = Vec::new();
    for k in start..end {
        let h = milnor_algebra_hilbert(f, k)?;
        hilbert.push((k, h));
        let n = hilbert.len();
        if n >= 3 && hilbert[n - 3].1 == h && hilbert[n - 2].1 == h {
            return Ok(MilnorAlgebraProfile {
                tau: h,
                stabilization_degree: hilbert[n - 3].0,
                hilbert,
            });
        }
    }
    Err(MilnorError::NoPlateau {
        start,
        end,
        values: hilbert.into_iter().map(|(_, v)| v).collect(),
    })
}
