//! Sparse polynomials in `x, y, z` with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// One of the three homogeneous coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::Z => 2,
        }
    }

    pub fn name(self) -> char {
        ['x', 'y', 'z'][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Exponent triple `x^a y^b z^c`, ordered graded-lexicographically with `x > y > z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Monomial([a, b, c])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([self.0[0] + other.0[0], self.0[1] + other.0[1], self.0[2] + other.0[2]])
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..3).all(|i| self.0[i] <= other.0[i])
    }

    /// `other / self`, assuming `self` divides `other`.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial([other.0[0] - self.0[0], other.0[1] - self.0[1], other.0[2] - self.0[2]])
    }

    /// All monomials of total degree `k`, in descending graded-lex order.
    pub fn of_degree(k: u32) -> Vec<Monomial> {
        let mut out = Vec::with_capacity(((k + 1) * (k + 2) / 2) as usize);
        for a in (0..=k).rev() {
            for b in (0..=k - a).rev() {
                out.push(Monomial([a, b, k - a - b]));
            }
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over ℚ in `x, y, z`.
///
/// Terms are kept in a map keyed by [`Monomial`]; zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TriPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl TriPoly {
    pub fn zero() -> Self {
        TriPoly::default()
    }

    pub fn one() -> Self {
        TriPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        TriPoly::term(Monomial::ONE, c)
    }

    pub fn from_int(c: i64) -> Self {
        TriPoly::constant(Rational::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Self {
        TriPoly::term(Monomial::var(v), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TriPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(iter: I) -> Self {
        let mut p = TriPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    /// Linear form `a x + b y + c z`.
    pub fn linear(coeffs: &[Rational; 3]) -> Self {
        TriPoly::from_terms(
            Var::ALL
                .iter()
                .zip(coeffs.iter())
                .map(|(v, c)| (Monomial::var(*v), c.clone())),
        )
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff(&Monomial::ONE)
    }

    /// Largest term under graded lex.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Highest power of `v` occurring; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Lowest power of `v` occurring.
    pub fn order_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.degree_in(v).is_some_and(|d| d > 0)
    }

    pub fn scale(&self, c: &Rational) -> TriPoly {
        if c.is_zero() {
            return TriPoly::zero();
        }
        TriPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> TriPoly {
        let mut acc = TriPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative.
    pub fn differentiate(&self, v: Var) -> TriPoly {
        let i = v.index();
        let mut out = TriPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = *m;
            n.0[i] -= 1;
            out.add_term(n, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// The three partials `(∂x f, ∂y f, ∂z f)`.
    pub fn gradient(&self) -> [TriPoly; 3] {
        [
            self.differentiate(Var::X),
            self.differentiate(Var::Y),
            self.differentiate(Var::Z),
        ]
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (e, p) in m.0.iter().zip(point.iter()) {
                if *e > 0 {
                    t *= num_traits::pow(p.clone(), *e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `v := value` (a polynomial).
    pub fn substitute(&self, v: Var, value: &TriPoly) -> TriPoly {
        let coeffs = self.coeffs_in(v);
        // Horner
        let mut acc = TriPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Coefficients with respect to `v`: entry `i` is the `v`-free coefficient of `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<TriPoly> {
        let deg = match self.degree_in(v) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![TriPoly::zero(); deg + 1];
        let i = v.index();
        for (m, c) in &self.terms {
            let e = m.0[i] as usize;
            let mut n = *m;
            n.0[i] = 0;
            out[e].terms.insert(n, c.clone());
        }
        out
    }

    /// Inverse of [`TriPoly::coeffs_in`].
    pub fn from_coeffs_in(v: Var, coeffs: &[TriPoly]) -> TriPoly {
        let mut out = TriPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let mut shift = Monomial::ONE;
            shift.0[v.index()] = e as u32;
            for (m, a) in &c.terms {
                out.add_term(m.mul(&shift), a.clone());
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &TriPoly) -> Option<TriPoly> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        let mut rem = self.clone();
        let mut quot = TriPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c / &lc;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Positive lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Scalar multiple with coprime integer coefficients and positive leading
    /// coefficient. The zero polynomial maps to itself.
    pub fn primitive_normalized(&self) -> TriPoly {
        let Some((_, lc)) = self.leading_term() else {
            return TriPoly::zero();
        };
        let den = self.denominator_lcm();
        let num_gcd = self
            .terms
            .values()
            .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
            .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
        let mut factor = Rational::new(den, num_gcd);
        if lc.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Dehomogenizes at `v = 1`.
    pub fn dehomogenize(&self, v: Var) -> TriPoly {
        let i = v.index();
        TriPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut n = *m;
            n.0[i] = 0;
            (n, c.clone())
        }))
    }

    /// Homogenizes with `v` to total degree `deg`; `v` must not occur in `self`.
    pub fn homogenize(&self, v: Var, deg: u32) -> TriPoly {
        let i = v.index();
        TriPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut n = *m;
            n.0[i] = deg - m.degree();
            (n, c.clone())
        }))
    }

    /// Homogeneous component of total degree `k`.
    pub fn part_of_degree(&self, k: u32) -> TriPoly {
        TriPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }
}

impl From<Rational> for TriPoly {
    fn from(c: Rational) -> Self {
        TriPoly::constant(c)
    }
}

impl From<Var> for TriPoly {
    fn from(v: Var) -> Self {
        TriPoly::var(v)
    }
}

impl<'a> Add<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn add(self, rhs: &'a TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn sub(self, rhs: &'a TriPoly) -> TriPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a TriPoly> for &'a TriPoly {
    type Output = TriPoly;
    fn mul(self, rhs: &'a TriPoly) -> TriPoly {
        let mut out = TriPoly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        TriPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<TriPoly> for TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: TriPoly) -> TriPoly {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a TriPoly> for TriPoly {
            type Output = TriPoly;
            fn $method(self, rhs: &'a TriPoly) -> TriPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for TriPoly {
    type Output = TriPoly;
    fn neg(self) -> TriPoly {
        -&self
    }
}

impl fmt::Display for TriPoly {
    /// Canonical form: graded-lex descending, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || *m == Monomial::ONE {
                factors.push(abs.to_string());
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{}", v.name(), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Integer-coefficient rational helper.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
