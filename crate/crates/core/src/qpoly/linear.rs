//! Linear changes of coordinates on ℙ².

use num_traits::Zero;

use super::{PolyError, Rational, TriPoly, Var};

pub type Matrix3 = [[Rational; 3]; 3];

pub fn identity3() -> Matrix3 {
    let mut m = zero3();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::from_integer(1.into());
    }
    m
}

fn zero3() -> Matrix3 {
    std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()))
}

pub fn det3(m: &Matrix3) -> Rational {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

pub fn inverse3(m: &Matrix3) -> Result<Matrix3, PolyError> {
    let det = det3(m);
    if det.is_zero() {
        return Err(PolyError::SingularMatrix);
    }
    let mut inv = zero3();
    for (i, row) in inv.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            // adjugate: cofactor of (j, i)
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let minor = &m[r[0]][c[0]] * &m[r[1]][c[1]] - &m[r[0]][c[1]] * &m[r[1]][c[0]];
            let sign = if (i + j) % 2 == 0 { minor } else { -minor };
            *e = sign / &det;
        }
    }
    Ok(inv)
}

pub fn mat_mul3(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = zero3();
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| &a[i][k] * &b[k][j]).sum();
        }
    }
    out
}

pub fn mat_vec3(a: &Matrix3, v: &[Rational; 3]) -> [Rational; 3] {
    std::array::from_fn(|i| (0..3).map(|k| &a[i][k] * &v[k]).sum())
}

/// `f ∘ M`: every variable `xᵢ` is replaced by `Σⱼ M[i][j] xⱼ`.
///
/// For `g = apply_linear_change(f, M)` a point `p` lies on `g = 0` iff `M p`
/// lies on `f = 0`. Applying `M` then `N` gives `f ∘ (M N)`.
pub fn apply_linear_change(f: &TriPoly, m: &Matrix3) -> Result<TriPoly, PolyError> {
    if det3(m).is_zero() {
        return Err(PolyError::SingularMatrix);
    }
    let images: [TriPoly; 3] = std::array::from_fn(|i| TriPoly::linear(&m[i]));
    let max_deg: [u32; 3] = std::array::from_fn(|i| f.degree_in(Var::ALL[i]).unwrap_or(0));
    let powers: Vec<Vec<TriPoly>> = (0..3)
        .map(|i| {
            let mut pw = vec![TriPoly::one()];
            for e in 1..=max_deg[i] as usize {
                let next = &pw[e - 1] * &images[i];
                pw.push(next);
            }
            pw
        })
        .collect();
    let mut out = TriPoly::zero();
    for (mono, c) in f.terms() {
        let [a, b, cc] = mono.0;
        let t = &(&powers[0][a as usize] * &powers[1][b as usize]) * &powers[2][cc as usize];
        out = &out + &t.scale(c);
    }
    Ok(out)
}

/// Integer matrix convenience constructor.
pub fn int_matrix(m: [[i64; 3]; 3]) -> Matrix3 {
    std::array::from_fn(|i| std::array::from_fn(|j| Rational::from_integer(m[i][j].into())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn p(s: &str) -> TriPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn identity_is_noop() {
        let f = p("x^3 - 2*x*y*z + z^2*y");
        assert_eq!(apply_linear_change(&f, &identity3()).unwrap(), f);
    }

    #[test]
    fn swap_xy() {
        let swap = int_matrix([[0, 1, 0], [1, 0, 0], [0, 0, 1]]);
        assert_eq!(apply_linear_change(&p("x^2"), &swap).unwrap(), p("y^2"));
    }

    #[test]
    fn shear_round_trip() {
        let fwd = int_matrix([[1, 0, 1], [0, 1, 0], [0, 0, 1]]);
        let back = int_matrix([[1, 0, -1], [0, 1, 0], [0, 0, 1]]);
        let once = apply_linear_change(&p("x"), &fwd).unwrap();
        assert_eq!(once, p("x + z"));
        assert_eq!(apply_linear_change(&once, &back).unwrap(), p("x"));
    }

    #[test]
    fn singular_rejected() {
        let sing = int_matrix([[1, 2, 3], [2, 4, 6], [0, 0, 1]]);
        assert_eq!(apply_linear_change(&p("x"), &sing), Err(PolyError::SingularMatrix));
        assert_eq!(inverse3(&sing), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn inverse_is_inverse() {
        let m = int_matrix([[2, -1, 3], [0, 5, 1], [7, 0, -4]]);
        let inv = inverse3(&m).unwrap();
        assert_eq!(mat_mul3(&m, &inv), identity3());
    }
}
