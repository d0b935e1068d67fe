//! Poincaré and Betti polynomials of plane curves, freeness by the
//! du Plessis–Wall criterion, and checkers for the addition identities.
//!
//! Everything here is integer arithmetic on numbers produced elsewhere
//! (`d`, `e`, `τ`, `μ`, `mdr`, `r`).

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_integer::Roots;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("degree must be at least 1")]
    DegreeZero,
    #[error("tau = {tau} exceeds (d-1)^2 = {bound} for d = {d}")]
    TauTooLarge { d: u32, tau: u64, bound: u64 },
    #[error("Betti polynomial needs degree d >= 3, got {0}")]
    BettiDegreeTooSmall(u32),
    #[error("component count e = {e} outside 1..={d}")]
    BadComponentCount { d: u32, e: u32 },
}

/// Integer polynomial in `t` of small degree, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadraticPoly(Vec<i64>);

impl QuadraticPoly {
    pub fn new(coeffs: &[i64]) -> Self {
        let mut c = coeffs.to_vec();
        while c.last() == Some(&0) {
            c.pop();
        }
        QuadraticPoly(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// Coefficient of `tᵏ`, zero past the degree.
    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, c| acc * t + c)
    }

    /// `1 + a t`.
    pub fn linear_factor(a: i64) -> Self {
        QuadraticPoly::new(&[1, a])
    }
}

impl fmt::Debug for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadraticPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 && !(k == 0 && self.0.len() == 1) {
                continue;
            }
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if mag != 1 {
                        write!(f, "{mag}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for QuadraticPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Add for &QuadraticPoly {
    type Output = QuadraticPoly;
    fn add(self, rhs: &QuadraticPoly) -> QuadraticPoly {
        let n = self.0.len().max(rhs.0.len());
        QuadraticPoly::new(&(0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect::<Vec<_>>())
    }
}

impl Sub for &QuadraticPoly {
    type Output = QuadraticPoly;
    fn sub(self, rhs: &QuadraticPoly) -> QuadraticPoly {
        let n = self.0.len().max(rhs.0.len());
        QuadraticPoly::new(&(0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect::<Vec<_>>())
    }
}

impl Mul for &QuadraticPoly {
    type Output = QuadraticPoly;
    fn mul(self, rhs: &QuadraticPoly) -> QuadraticPoly {
        if self.0.is_empty() || rhs.0.is_empty() {
            return QuadraticPoly::default();
        }
        let mut c = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        QuadraticPoly::new(&c)
    }
}

/// `𝔓(C; t) = 1 + (d-1) t + ((d-1)² - τ) t²`.
pub fn poincare_poly(d: u32, tau: u64) -> Result<QuadraticPoly, InvariantsError> {
    if d == 0 {
        return Err(InvariantsError::DegreeZero);
    }
    let dm1 = (d - 1) as u64;
    if tau > dm1 * dm1 {
        return Err(InvariantsError::TauTooLarge {
            d,
            tau,
            bound: dm1 * dm1,
        });
    }
    Ok(QuadraticPoly::new(&[1, dm1 as i64, (dm1 * dm1 - tau) as i64]))
}

/// `B_{M(C)}(t) = 1 + (e-1) t + ((d-1)² - μ - d + e) t²`, for `d ≥ 3`.
pub fn betti_poly(d: u32, e: u32, mu: u64) -> Result<QuadraticPoly, InvariantsError> {
    if d < 3 {
        return Err(InvariantsError::BettiDegreeTooSmall(d));
    }
    if e == 0 || e > d {
        return Err(InvariantsError::BadComponentCount { d, e });
    }
    let (d, e, mu) = (d as i64, e as i64, mu as i64);
    Ok(QuadraticPoly::new(&[1, e - 1, (d - 1) * (d - 1) - mu - d + e]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub is_free: bool,
    pub mdr_value: u32,
    pub exponents: Option<(u32, u32)>,
    pub splits_over_q: bool,
    pub split_factors: Option<(i64, i64)>,
}

/// du Plessis–Wall: free iff `mdr ≤ (d-1)/2` and `(d-1)² - mdr (d-1-mdr) = τ`.
pub fn dpw_freeness(d: u32, tau: u64, mdr_value: u32) -> FreenessReport {
    let dm1 = d.saturating_sub(1) as i64;
    let r = mdr_value as i64;
    let is_free = d >= 1 && 2 * r <= dm1 && dm1 * dm1 - r * (dm1 - r) == tau as i64;
    let split_factors = poincare_poly(d.max(1), tau).ok().and_then(|p| split_poincare(&p));
    FreenessReport {
        is_free,
        mdr_value,
        exponents: is_free.then(|| (mdr_value, dm1 as u32 - mdr_value)),
        splits_over_q: split_factors.is_some(),
        split_factors,
    }
}

/// Integers `d₁ ≤ d₂` with `(1 + d₁ t)(1 + d₂ t) = p`, if any.
///
/// With constant term 1, a rational root of the reversed quadratic is
/// integral by the rational root theorem, so integer splitting is the same
/// as splitting over ℚ.
pub fn split_poincare(p: &QuadraticPoly) -> Option<(i64, i64)> {
    if p.coeff(0) != 1 || p.degree().is_none_or(|k| k > 2) {
        return None;
    }
    let (a, b) = (p.coeff(1), p.coeff(2));
    let disc = a * a - 4 * b;
    if disc < 0 {
        return None;
    }
    let s = disc.sqrt();
    if s * s != disc || (a - s) % 2 != 0 {
        return None;
    }
    Some(((a - s) / 2, (a + s) / 2))
}

/// `P₁ + P₂ + (t - 1) + (r - 1) t²`, the common right-hand side of both addition identities.
pub fn addition_rhs(p1: &QuadraticPoly, p2: &QuadraticPoly, r: i64) -> QuadraticPoly {
    &(p1 + p2) + &QuadraticPoly::new(&[-1, 1, r - 1])
}

pub fn check_addition_poincare(p1: &QuadraticPoly, p2: &QuadraticPoly, p_union: &QuadraticPoly, r: i64) -> bool {
    *p_union == addition_rhs(p1, p2, r)
}

pub fn check_addition_betti(b1: &QuadraticPoly, b2: &QuadraticPoly, b_union: &QuadraticPoly, r: i64) -> bool {
    *b_union == addition_rhs(b1, b2, r)
}

/// `e(M(C)) = B(-1)`.
pub fn euler_number(b: &QuadraticPoly) -> i64 {
    b.eval(-1)
}

pub fn euler_rhs(e1: i64, e2: i64, r: i64) -> i64 {
    e1 + e2 + r - 3
}

pub fn check_euler_addition(e1: i64, e2: i64, e_union: i64, r: i64) -> bool {
    e_union == euler_rhs(e1, e2, r)
}

/// `μ(C₁) + μ(C₂) + 2 c₁ c₂ - r`.
pub fn union_milnor_rhs(mu1: u64, mu2: u64, c1: u32, c2: u32, r: u64) -> i64 {
    mu1 as i64 + mu2 as i64 + 2 * c1 as i64 * c2 as i64 - r as i64
}

pub fn check_union_milnor(mu1: u64, mu2: u64, c1: u32, c2: u32, r: u64, mu_union: u64) -> bool {
    mu_union as i64 == union_milnor_rhs(mu1, mu2, c1, c2, r)
}
