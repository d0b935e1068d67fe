//! Certified multi-modular rank.
//!
//! For an integer matrix `A` and any prime `p`, `rank_p(A) ≤ rank_ℚ(A)`,
//! so a modular rank is a lower bound. The upper bound comes from an explicit
//! spanning set: the reduced row echelon form is reconstructed over ℚ from
//! its images modulo several primes (CRT + rational reconstruction), and
//! every row of `A` is then checked, exactly over ℚ, to be the combination of
//! echelon rows prescribed by its pivot entries. When both bounds meet the
//! rank is exact; nothing is ever accepted on probabilistic grounds.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Give up and let the caller fall back to plain elimination after this many primes.
const MAX_PRIMES: usize = 256;

/// Primes just below `2^31`, descending.
struct Primes {
    next: u64,
}

impl Primes {
    fn new() -> Self {
        Primes { next: (1u64 << 31) - 1 }
    }
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 || n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

/// Barrett reduction for `p < 2^31` and inputs below `2^63`.
#[derive(Clone, Copy)]
struct Barrett {
    p: u64,
    m: u64,
}

impl Barrett {
    fn new(p: u64) -> Self {
        Barrett { p, m: (u64::MAX / p) }
    }

    #[inline(always)]
    fn reduce(self, a: u64) -> u64 {
        let q = ((a as u128 * self.m as u128) >> 64) as u64;
        let r = a - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

/// Pivot columns and the non-pivot block of the RREF modulo `p`.
struct ModularEchelon {
    pivots: Vec<usize>,
    /// `block[i][j]` = entry of echelon row `i` at the `j`-th non-pivot column.
    block: Vec<Vec<u64>>,
}

fn rref_mod(rows: &[Vec<(usize, BigInt)>], ncols: usize, p: u64) -> ModularEchelon {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            let mut dense = vec![0u64; ncols];
            for (j, v) in r {
                dense[*j] = reduce(v, p);
            }
            dense
        })
        .collect();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut support: Vec<usize> = Vec::with_capacity(ncols);
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(sel) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, sel);
        let inv = inv_mod(a[r][c], p);
        support.clear();
        for j in c..ncols {
            if a[r][j] != 0 {
                a[r][j] = a[r][j] * inv % p;
                support.push(j);
            }
        }
        let br = Barrett::new(p);
        let (before, rest) = a.split_at_mut(r);
        let (pivot_row, after) = rest.split_first_mut().expect("row r exists");
        for row in before.iter_mut().chain(after.iter_mut()) {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for &j in &support {
                row[j] = br.reduce(row[j] + neg * pivot_row[j]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let nonpivot = nonpivot_columns(&pivots, ncols);
    let block = (0..pivots.len())
        .map(|i| nonpivot.iter().map(|&j| a[i][j]).collect())
        .collect();
    ModularEchelon { pivots, block }
}

fn nonpivot_columns(pivots: &[usize], ncols: usize) -> Vec<usize> {
    let mut is_pivot = vec![false; ncols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    (0..ncols).filter(|&j| !is_pivot[j]).collect()
}

/// Candidate quality: more pivots is better; at equal count the pivot list
/// that is smaller position by position is the one that agrees with ℚ.
fn better(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| b.cmp(a))
}

/// `n/d` with `|n|, d ≤ sqrt(m/2)` and `n ≡ a d (mod m)`, if one exists.
fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    let bound = (m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    if s1.sign() == Sign::Minus {
        Some((-r1, -s1))
    } else {
        Some((r1, s1))
    }
}

struct Accumulator {
    pivots: Vec<usize>,
    modulus: BigInt,
    residues: Vec<Vec<BigInt>>,
    primes_used: usize,
}

impl Accumulator {
    fn start(e: ModularEchelon, p: u64) -> Self {
        Accumulator {
            pivots: e.pivots,
            modulus: BigInt::from(p),
            residues: e
                .block
                .into_iter()
                .map(|row| row.into_iter().map(BigInt::from).collect())
                .collect(),
            primes_used: 1,
        }
    }

    /// Garner step: fold residues modulo `p` into the running CRT images.
    fn absorb(&mut self, e: ModularEchelon, p: u64) {
        let m_mod_p = reduce(&self.modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (acc_row, new_row) in self.residues.iter_mut().zip(e.block) {
            for (x, r) in acc_row.iter_mut().zip(new_row) {
                let cur = reduce(x, p);
                let delta = (r + p - cur) % p * m_inv % p;
                if delta != 0 {
                    *x += &self.modulus * BigInt::from(delta);
                }
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes_used += 1;
    }

    /// Reconstructed non-pivot block, column by column, as integer numerators
    /// over a denominator common to the whole block.
    fn reconstruct(&self) -> Option<Vec<(BigInt, Vec<BigInt>)>> {
        let ncols = self.residues.first().map_or(0, Vec::len);
        let half = &self.modulus >> 1u32;
        // a residue this far below the modulus is taken as a genuine small value
        let small = &self.modulus >> 24u32;
        // echelon entries are ratios of minors and mostly share one
        // denominator, so try the running one before a full reconstruction
        let mut den = BigInt::one();
        let mut fracs: Vec<Vec<(BigInt, BigInt)>> = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut col = Vec::with_capacity(self.residues.len());
            for row in &self.residues {
                let mut scaled = (&row[j] * &den).mod_floor(&self.modulus);
                if scaled > half {
                    scaled -= &self.modulus;
                }
                if scaled.abs() <= small {
                    col.push((scaled, den.clone()));
                    continue;
                }
                let (n, d) = rational_reconstruct(&row[j], &self.modulus)?;
                den = den.lcm(&d);
                col.push((n, d));
            }
            fracs.push(col);
        }
        Some(
            fracs
                .into_iter()
                .map(|col| {
                    let nums = col.into_iter().map(|(n, d)| n * (&den / d)).collect();
                    (den.clone(), nums)
                })
                .collect(),
        )
    }
}

/// Exact check that every row lies in the span of the candidate echelon rows.
fn verify(rows: &[Vec<(usize, BigInt)>], ncols: usize, pivots: &[usize], columns: &[(BigInt, Vec<BigInt>)]) -> bool {
    let mut pivot_index = vec![usize::MAX; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        pivot_index[c] = i;
    }
    let nonpivot = nonpivot_columns(pivots, ncols);
    let mut np_index = vec![usize::MAX; ncols];
    for (j, &c) in nonpivot.iter().enumerate() {
        np_index[c] = j;
    }
    for row in rows {
        let mut at_pivots: Vec<(usize, &BigInt)> = Vec::new();
        let mut at_free: Vec<Option<&BigInt>> = vec![None; nonpivot.len()];
        for (c, v) in row {
            if pivot_index[*c] != usize::MAX {
                at_pivots.push((pivot_index[*c], v));
            } else {
                at_free[np_index[*c]] = Some(v);
            }
        }
        for (j, (den, nums)) in columns.iter().enumerate() {
            let mut combo = BigInt::zero();
            for (i, v) in &at_pivots {
                if !nums[*i].is_zero() {
                    combo += *v * &nums[*i];
                }
            }
            let lhs = at_free[j].map_or_else(BigInt::zero, |v| v * den);
            if lhs != combo {
                return false;
            }
        }
    }
    true
}

/// Exact rank of the integer matrix given as sparse rows, or `None` if the
/// prime budget ran out before a certificate was found.
pub(crate) fn certified_rank(rows: &[Vec<(usize, BigInt)>], ncols: usize) -> Option<usize> {
    if rows.is_empty() || ncols == 0 {
        return Some(0);
    }
    let mut acc: Option<Accumulator> = None;
    for p in Primes::new().take(MAX_PRIMES) {
        let e = rref_mod(rows, ncols, p);
        match &mut acc {
            None => acc = Some(Accumulator::start(e, p)),
            Some(a) => match better(&e.pivots, &a.pivots) {
                std::cmp::Ordering::Greater => {
                    *a = Accumulator::start(e, p);
                }
                std::cmp::Ordering::Equal => a.absorb(e, p),
                std::cmp::Ordering::Less => continue,
            },
        }
        // a failed reconstruction usually stops at the first entry, so
        // attempting after every prime is cheap
        let a = acc.as_ref().expect("set above");
        if a.pivots.len() == ncols {
            // full column rank needs no upper-bound certificate
            return Some(ncols);
        }
        if let Some(cols) = a.reconstruct() {
            if verify(rows, ncols, &a.pivots, &cols) {
                return Some(a.pivots.len());
            }
        }
    }
    None
}
