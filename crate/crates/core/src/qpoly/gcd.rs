//! Multivariate gcd over ℚ by content/primitive-part recursion with
//! subresultant polynomial remainder sequences.

use super::{q, PolyError, TriPoly, Var};

/// Dense univariate view: index `i` holds the coefficient of `v^i`.
type UPoly = Vec<TriPoly>;

/// Greatest common divisor over ℚ, normalized to coprime integer coefficients
/// with positive graded-lex leading coefficient.
pub fn poly_gcd(f: &TriPoly, g: &TriPoly) -> Result<TriPoly, PolyError> {
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    Ok(gcd_unchecked(f, g))
}

/// Gcd of a list of polynomials, not all zero.
pub fn poly_gcd_many<'a, I>(polys: I) -> Result<TriPoly, PolyError>
where
    I: IntoIterator<Item = &'a TriPoly>,
{
    let mut acc = TriPoly::zero();
    for p in polys {
        if acc.is_constant() && !acc.is_zero() {
            break;
        }
        acc = gcd_unchecked(&acc, p);
    }
    if acc.is_zero() {
        return Err(PolyError::GcdOfZeros);
    }
    Ok(acc)
}

fn gcd_unchecked(f: &TriPoly, g: &TriPoly) -> TriPoly {
    if f.is_zero() {
        return g.primitive_normalized();
    }
    if g.is_zero() {
        return f.primitive_normalized();
    }
    if f.is_homogeneous() && g.is_homogeneous() {
        return homogeneous_gcd(f, g);
    }
    gcd_rec(f, g, &Var::ALL).primitive_normalized()
}

/// Homogeneous inputs: strip powers of `z`, dehomogenize at `z = 1`, take a
/// bivariate gcd, and homogenize back.
fn homogeneous_gcd(f: &TriPoly, g: &TriPoly) -> TriPoly {
    let zf = f.order_in(Var::Z).unwrap_or(0);
    let zg = g.order_in(Var::Z).unwrap_or(0);
    let (fa, ga) = (f.dehomogenize(Var::Z), g.dehomogenize(Var::Z));
    let h = if coprime_by_specialization(&fa, &ga) {
        TriPoly::one()
    } else {
        gcd_rec(&fa, &ga, &[Var::X, Var::Y])
    };
    let deg = h.total_degree().unwrap_or(0);
    let zpow = TriPoly::var(Var::Z).pow(zf.min(zg));
    (&h.homogenize(Var::Z, deg) * &zpow).primitive_normalized()
}

/// Sufficient test for coprimality of `f, g ∈ ℚ[x, y]`.
///
/// A common factor `h` of positive degree in `y` specializes at any `x = a`
/// with `lc_y(f)(a) ≠ 0` to a common factor of positive degree; a common
/// factor free of `y` survives every specialization `y = b`. So coprime
/// univariate images in both directions prove `gcd(f, g) = 1`.
fn coprime_by_specialization(f: &TriPoly, g: &TriPoly) -> bool {
    if f.involves(Var::Z) || g.involves(Var::Z) {
        return false;
    }
    let Some(lc_y) = f.coeffs_in(Var::Y).pop() else {
        return false;
    };
    let Some(a) = (0..16i64)
        .map(|i| q((i + 1) / 2 * if i % 2 == 0 { 1 } else { -1 }))
        .find(|a| !lc_y.substitute(Var::X, &TriPoly::constant(a.clone())).is_zero())
    else {
        return false;
    };
    let at_a = |p: &TriPoly| p.substitute(Var::X, &TriPoly::constant(a.clone()));
    if !gcd_rec(&at_a(f), &at_a(g), &[Var::Y]).is_constant() {
        return false;
    }
    (0..4i64).map(q).any(|b| {
        let at_b = |p: &TriPoly| p.substitute(Var::Y, &TriPoly::constant(b.clone()));
        let (fb, gb) = (at_b(f), at_b(g));
        !(fb.is_zero() && gb.is_zero()) && gcd_rec(&fb, &gb, &[Var::X]).is_constant()
    })
}

fn gcd_rec(f: &TriPoly, g: &TriPoly, vars: &[Var]) -> TriPoly {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let Some(pos) = vars.iter().rposition(|v| f.involves(*v) || g.involves(*v)) else {
        return TriPoly::one();
    };
    let main = vars[pos];
    let rest: Vec<Var> = vars.iter().copied().filter(|v| *v != main).collect();

    let fc = f.coeffs_in(main);
    let gc = g.coeffs_in(main);
    let cont_f = content(&fc, &rest);
    let cont_g = content(&gc, &rest);
    let cont = gcd_rec(&cont_f, &cont_g, &rest);

    let mut a: UPoly = fc.iter().map(|c| exact(c, &cont_f)).collect();
    let mut b: UPoly = gc.iter().map(|c| exact(c, &cont_g)).collect();
    trim(&mut a);
    trim(&mut b);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let last = if deg(&b) == 0 {
        vec![TriPoly::one()]
    } else {
        subresultant_last(a, b)
    };
    let prim = if deg(&last) == 0 {
        vec![TriPoly::one()]
    } else {
        let c = content(&last, &rest);
        last.iter().map(|t| exact(t, &c)).collect()
    };
    &TriPoly::from_coeffs_in(main, &prim) * &cont
}

fn content(coeffs: &[TriPoly], rest: &[Var]) -> TriPoly {
    let mut acc = TriPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = gcd_rec(&acc, c, rest);
        if acc.is_constant() {
            return TriPoly::one();
        }
    }
    // content is only defined up to a unit; keep it primitive
    acc.primitive_normalized()
}

fn exact(a: &TriPoly, b: &TriPoly) -> TriPoly {
    a.div_exact(b).expect("exact division in gcd recursion")
}

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(TriPoly::is_zero) {
        p.pop();
    }
}

fn deg(p: &UPoly) -> usize {
    p.len().saturating_sub(1)
}

fn is_zero(p: &UPoly) -> bool {
    p.is_empty()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn prem(a: &[TriPoly], b: &[TriPoly]) -> UPoly {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: UPoly = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let mut e = r.len() - b.len() + 1;
    while !is_zero(&r) && r.len() >= b.len() {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = &*c * lcb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lcr * bc);
        }
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let scale = lcb.pow(e as u32);
        for c in r.iter_mut() {
            *c = &*c * &scale;
        }
    }
    r
}

/// Last nonzero element of the subresultant PRS of `a`, `b` (`deg a >= deg b >= 1`).
fn subresultant_last(mut a: UPoly, mut b: UPoly) -> UPoly {
    let mut g = TriPoly::one();
    let mut h = TriPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = prem(&a, &b);
        if is_zero(&r) {
            return b;
        }
        if deg(&r) == 0 {
            return r;
        }
        let divisor = &g * &h.pow(delta as u32);
        a = b;
        b = r.iter().map(|c| exact(c, &divisor)).collect();
        g = a.last().expect("nonzero").clone();
        h = if delta == 0 {
            h
        } else {
            exact(&g.pow(delta as u32), &h.pow(delta as u32 - 1))
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::parse_poly;

    fn p(s: &str) -> TriPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn shared_factor() {
        assert_eq!(poly_gcd(&p("x^2 - z^2"), &p("x - z")).unwrap(), p("x - z"));
    }

    #[test]
    fn conic_and_line_coprime() {
        assert_eq!(poly_gcd(&p("x^2+y^2-2*z^2"), &p("x-z")).unwrap(), TriPoly::one());
    }

    #[test]
    fn idempotent_normalized() {
        let f = p("-2*x^2*y + 4*y*z^2");
        assert_eq!(poly_gcd(&f, &f).unwrap(), p("x^2*y - 2*y*z^2"));
    }

    #[test]
    fn zero_inputs() {
        assert_eq!(poly_gcd(&TriPoly::zero(), &TriPoly::zero()), Err(PolyError::GcdOfZeros));
        assert_eq!(poly_gcd(&TriPoly::zero(), &p("3*x-3*y")).unwrap(), p("x-y"));
    }

    #[test]
    fn inhomogeneous_inputs() {
        let f = p("(x*y + z + 1)*(x - y^2)");
        let g = p("(x*y + z + 1)*(z^3 - x)");
        assert_eq!(poly_gcd(&f, &g).unwrap(), p("x*y + z + 1"));
        assert_eq!(poly_gcd(&p("x + 1"), &p("x + 2")).unwrap(), TriPoly::one());
    }

    #[test]
    fn powers_of_z_are_kept() {
        let f = p("z^2*(x-y)");
        let g = p("z^3*(x-y)*(x+y)");
        assert_eq!(poly_gcd(&f, &g).unwrap(), p("x*z^2 - y*z^2"));
    }

    #[test]
    fn many() {
        let f = p("x*y*(x-y)");
        let grad = f.gradient();
        let all = [f.clone(), grad[0].clone(), grad[1].clone(), grad[2].clone()];
        assert_eq!(poly_gcd_many(all.iter()).unwrap(), TriPoly::one());
        let sq = p("(x-y)^2*z");
        let grad = sq.gradient();
        let all = [sq.clone(), grad[0].clone(), grad[1].clone(), grad[2].clone()];
        assert_eq!(poly_gcd_many(all.iter()).unwrap(), p("x-y"));
    }
}
