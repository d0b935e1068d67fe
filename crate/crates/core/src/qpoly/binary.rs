//! Binary forms: squarefree parts, root counts in ℙ¹, and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{poly_gcd_many, PolyError, Rational, TriPoly, Var};

/// The (at most two) variables a binary form lives in, plus a check that it
/// really is a nonzero form.
fn binary_vars(f: &TriPoly) -> Result<(Var, Var), PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput);
    }
    if !f.is_homogeneous() {
        return Err(PolyError::NotHomogeneous);
    }
    let present: Vec<Var> = Var::ALL.into_iter().filter(|v| f.involves(*v)).collect();
    match present.as_slice() {
        [] => Ok((Var::X, Var::Y)),
        [a] => Ok(if *a == Var::Z { (Var::X, Var::Z) } else { (*a, Var::Z) }),
        [a, b] => Ok((*a, *b)),
        _ => Err(PolyError::NotBinary),
    }
}

/// `gcd(f, ∂f)` taken over all partials; for a form `∏ lᵢ^kᵢ` this is `∏ lᵢ^(kᵢ-1)`.
fn repeated_part(f: &TriPoly) -> TriPoly {
    let grad = f.gradient();
    poly_gcd_many([f, &grad[0], &grad[1], &grad[2]]).expect("f is nonzero")
}

/// `f / gcd(f, ∂f)`, normalized.
pub fn squarefree_part(f: &TriPoly) -> Result<TriPoly, PolyError> {
    binary_vars(f)?;
    let g = repeated_part(f);
    Ok(f.div_exact(&g).expect("gcd divides f").primitive_normalized())
}

/// Number of distinct roots of a binary form in ℙ¹(ℂ).
pub fn distinct_root_count(f: &TriPoly) -> Result<usize, PolyError> {
    Ok(squarefree_part(f)?.total_degree().unwrap_or(0) as usize)
}

/// Multiplicities of the distinct roots, sorted descending.
///
/// Uses the chain `f₀ = f`, `fₖ = gcd(fₖ₋₁, ∂fₖ₋₁)`: the squarefree part of
/// `fₖ₋₁` has one root for every root of multiplicity `≥ k`.
pub fn root_multiplicities(f: &TriPoly) -> Result<Vec<usize>, PolyError> {
    binary_vars(f)?;
    let mut at_least: Vec<usize> = Vec::new();
    let mut cur = f.clone();
    while cur.total_degree().unwrap_or(0) > 0 {
        let rep = repeated_part(&cur);
        let sf_deg = cur.total_degree().unwrap() - rep.total_degree().unwrap_or(0);
        at_least.push(sf_deg as usize);
        cur = rep;
    }
    // at_least[k-1] = #roots with multiplicity >= k
    let mut mults = Vec::new();
    for k in 1..=at_least.len() {
        let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        mults.extend(std::iter::repeat_n(k, here));
    }
    mults.sort_unstable_by(|a, b| b.cmp(a));
    Ok(mults)
}

/// A root `[a : b]` of a binary form in its two variables `(u, v)`, meaning
/// the form vanishes at `u = a, v = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRoot {
    pub point: [Rational; 2],
    pub multiplicity: usize,
}

/// All roots of `f` in ℙ¹(ℚ) with multiplicities, in variables `(u, v)`.
///
/// Returns the rational roots found plus the number of root-with-multiplicity
/// slots left unaccounted for (positive iff some roots are irrational).
pub fn rational_roots(f: &TriPoly, u: Var, v: Var) -> Result<(Vec<BinaryRoot>, usize), PolyError> {
    binary_vars(f)?;
    if Var::ALL.iter().any(|w| *w != u && *w != v && f.involves(*w)) {
        return Err(PolyError::NotBinary);
    }
    let d = f.total_degree().unwrap_or(0) as usize;
    let mut roots = Vec::new();
    // root at v = 0, i.e. [1 : 0], has multiplicity ord_v f
    let ord_v = f.order_in(v).unwrap_or(0) as usize;
    if ord_v > 0 {
        roots.push(BinaryRoot {
            point: [Rational::one(), Rational::zero()],
            multiplicity: ord_v,
        });
    }
    // remaining roots: dehomogenize v = 1 and search t = u/v
    let coeffs: Vec<Rational> = {
        let g = f.dehomogenize(v);
        let deg_u = g.degree_in(u).unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg_u + 1];
        for (m, a) in g.terms() {
            c[m.exp(u) as usize] = a.clone();
        }
        c
    };
    let mut poly = integer_coeffs(&coeffs);
    for t in rational_root_candidates(&poly) {
        let mut mult = 0;
        while let Some(q) = divide_by_root(&poly, &t) {
            poly = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push(BinaryRoot {
                point: [t, Rational::one()],
                multiplicity: mult,
            });
        }
    }
    let found: usize = roots.iter().map(|r| r.multiplicity).sum();
    Ok((roots, d - found))
}

fn integer_coeffs(c: &[Rational]) -> Vec<Rational> {
    let den = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    c.iter().map(|x| x * Rational::from_integer(den.clone())).collect()
}

/// Candidates `±p/q` with `p | a₀`, `q | aₙ` after removing zero roots;
/// zero itself is included when `a₀ = 0`.
fn rational_root_candidates(c: &[Rational]) -> Vec<Rational> {
    let mut out = Vec::new();
    let Some(lead) = c.iter().rposition(|x| !x.is_zero()) else {
        return out;
    };
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        out.push(Rational::zero());
    }
    if lead == low {
        return out;
    }
    let a0 = c[low].to_integer().abs();
    let an = c[lead].to_integer().abs();
    let ps = divisors(&a0);
    let qs = divisors(&an);
    let mut seen = std::collections::BTreeSet::new();
    for p in &ps {
        for qd in &qs {
            let r = Rational::new(p.clone(), qd.clone());
            if seen.insert(r.clone()) {
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Synthetic division by `(t - root)`; `None` if `root` is not a root.
fn divide_by_root(c: &[Rational], root: &Rational) -> Option<Vec<Rational>> {
    if c.len() < 2 {
        return None;
    }
    let n = c.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..=n).rev() {
        let val = &c[i] + &carry * root;
        if i == 0 {
            return if val.is_zero() { Some(q) } else { None };
        }
        q[i - 1] = val.clone();
        carry = val;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{parse_poly, q};

    fn p(s: &str) -> TriPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let f = p("(x-y)^2*(x+y)");
        assert_eq!(squarefree_part(&f).unwrap(), p("x^2 - y^2"));
        assert_eq!(distinct_root_count(&f).unwrap(), 2);
        assert_eq!(distinct_root_count(&p("x*y*(x-y)")).unwrap(), 3);
        assert_eq!(distinct_root_count(&p("x^4")).unwrap(), 1);
        assert_eq!(distinct_root_count(&TriPoly::zero()), Err(PolyError::ZeroInput));
        assert_eq!(distinct_root_count(&p("x*y*z")), Err(PolyError::NotBinary));
    }

    #[test]
    fn multiplicities() {
        assert_eq!(root_multiplicities(&p("(x-y)^3*(x+2*y)*y^2")).unwrap(), vec![3, 2, 1]);
        assert_eq!(root_multiplicities(&p("x^2+y^2")).unwrap(), vec![1, 1]);
        assert_eq!(root_multiplicities(&p("7")).unwrap(), Vec::<usize>::new());
    }

    #[test]
    fn rational_root_search() {
        let (roots, missing) = rational_roots(&p("(2*x - 3*y)^2*(x^2 - 2*y^2)*y"), Var::X, Var::Y).unwrap();
        assert_eq!(missing, 2);
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&BinaryRoot {
            point: [q(1), q(0)],
            multiplicity: 1
        }));
        assert!(roots.contains(&BinaryRoot {
            point: [Rational::new(3.into(), 2.into()), q(1)],
            multiplicity: 2
        }));
        let (roots, missing) = rational_roots(&p("x*z"), Var::X, Var::Z).unwrap();
        assert_eq!(missing, 0);
        assert_eq!(roots.len(), 2);
    }
}
