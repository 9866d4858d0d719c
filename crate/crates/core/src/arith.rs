//! Exact integer and quadratic-integer arithmetic.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
#[allow(unused_imports)] // inherent float methods shadow these when std is linked
use num_traits::Float;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `N = s² · c` with `c` square-free.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SquareFreeSplit {
    pub s: u128,
    pub c: u128,
}

/// Splits `n` into square and square-free parts by trial division.
pub fn square_free_part(n: u128) -> Result<SquareFreeSplit> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut rem = n;
    let (mut s, mut c) = (1u128, 1u128);
    let mut p = 2u128;
    while p.checked_mul(p).is_some_and(|pp| pp <= rem) {
        let mut e = 0u32;
        while rem.is_multiple_of(p) {
            rem /= p;
            e += 1;
        }
        if e > 0 {
            s *= p.pow(e / 2);
            if e % 2 == 1 {
                c *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        c *= rem;
    }
    Ok(SquareFreeSplit { s, c })
}

pub fn is_square_free(n: u128) -> bool {
    n != 0 && square_free_part(n).is_ok_and(|sp| sp.s == 1)
}

/// Integer square root if `n` is a perfect square.
pub fn exact_sqrt(n: u128) -> Option<u128> {
    let sp = square_free_part(n).ok()?;
    (sp.c == 1).then_some(sp.s)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn valuation(mut x: i128, p: i128) -> i32 {
    let mut alpha = 0;
    while x % p == 0 {
        x /= p;
        alpha += 1;
    }
    alpha
}

/// `|m|_p = p^(-α)` where `m = p^α · r/s` with `p ∤ r, s`.
pub fn p_adic_norm(m: Ratio<i128>, p: u64) -> Result<Ratio<i128>> {
    if m.is_zero() {
        return Err(Error::ZeroNorm);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let pi = p as i128;
    let alpha = valuation(*m.numer(), pi) - valuation(*m.denom(), pi);
    let power = pi
        .checked_pow(alpha.unsigned_abs())
        .ok_or(Error::Overflow("p-adic norm"))?;
    Ok(if alpha >= 0 {
        Ratio::new(1, power)
    } else {
        Ratio::from_integer(power)
    })
}

/// 2-adic valuation of a nonzero integer.
pub fn two_adic_valuation(x: i128) -> u32 {
    debug_assert!(x != 0);
    x.trailing_zeros()
}

/// gcd of a list; zeros are neutral.
pub fn gcd_list(values: &[u128]) -> Result<u128> {
    let g = values.iter().fold(0u128, |g, &x| g.gcd(&x));
    if g == 0 {
        Err(Error::AllZero)
    } else {
        Ok(g)
    }
}

/// Rank over ℚ by fraction-free (Bareiss) elimination on big integers.
pub fn exact_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = num / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Exact value `(a + b·√Δ)/2`.
///
/// Rational integers are stored as `(2x, 0, 1)`; a zero `b` always comes
/// with `Δ = 1` and an even `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    a: i64,
    b: i64,
    delta: u64,
}

impl QuadInt {
    pub fn new(a: i64, b: i64, delta: u64) -> Result<Self> {
        if delta == 0 || !is_square_free(delta as u128) {
            return Err(Error::InvalidParameter("Δ must be a positive square-free integer"));
        }
        let (a, b, delta) = if delta == 1 {
            (a.checked_add(b).ok_or(Error::Overflow("QuadInt"))?, 0, 1)
        } else if b == 0 {
            (a, 0, 1)
        } else {
            (a, b, delta)
        };
        if b == 0 && a % 2 != 0 {
            return Err(Error::InvalidParameter("rational QuadInt must be an integer"));
        }
        Ok(Self { a, b, delta })
    }

    pub fn integer(x: i64) -> Self {
        Self {
            a: 2 * x,
            b: 0,
            delta: 1,
        }
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn delta(&self) -> u64 {
        self.delta
    }

    pub fn is_integer(&self) -> bool {
        self.b == 0
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.is_integer().then_some(self.a / 2)
    }

    pub fn conjugate(&self) -> Self {
        Self { b: -self.b, ..*self }
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.b as f64 * (self.delta as f64).sqrt()) / 2.0
    }

    /// `2·self` as an element of `ℤ[√Δ]`.
    pub(crate) fn doubled(&self) -> Surd {
        Surd::new(self.a as i128, self.b as i128, self.delta as i128)
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.b, self.as_integer()) {
            (_, Some(x)) => write!(f, "{x}"),
            (b, None) => {
                let sign = if b < 0 { '-' } else { '+' };
                write!(f, "({} {} {}*sqrt({}))/2", self.a, sign, b.abs(), self.delta)
            }
        }
    }
}

/// `r + s·√Δ` with integer coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Surd {
    pub r: i128,
    pub s: i128,
    pub delta: i128,
}

impl Surd {
    pub fn new(r: i128, s: i128, delta: i128) -> Self {
        Self { r, s, delta }
    }

    pub fn int(r: i128, delta: i128) -> Self {
        Self::new(r, 0, delta)
    }

    pub fn checked_add(self, o: Self) -> Option<Self> {
        debug_assert_eq!(self.delta, o.delta);
        Some(Self::new(
            self.r.checked_add(o.r)?,
            self.s.checked_add(o.s)?,
            self.delta,
        ))
    }

    pub fn checked_mul(self, o: Self) -> Option<Self> {
        debug_assert_eq!(self.delta, o.delta);
        let r = self
            .r
            .checked_mul(o.r)?
            .checked_add(self.s.checked_mul(o.s)?.checked_mul(self.delta)?)?;
        let s = self.r.checked_mul(o.s)?.checked_add(self.s.checked_mul(o.r)?)?;
        Some(Self::new(r, s, self.delta))
    }

    pub fn checked_scale(self, k: i128) -> Option<Self> {
        Some(Self::new(self.r.checked_mul(k)?, self.s.checked_mul(k)?, self.delta))
    }

    pub fn is_zero(&self) -> bool {
        self.r == 0 && self.s == 0
    }

    pub fn with_delta(self, delta: i128) -> Option<Self> {
        (self.s == 0 || self.delta == delta).then_some(Self::new(self.r, self.s, delta))
    }
}

/// Search half-width for [`recognize_quad`]: `4⌈|x|⌉ + 32`.
pub fn recognition_bound(x: f64) -> i64 {
    4 * (x.abs().ceil() as i64) + 32
}

/// Finds `(a + b√Δ)/2` within `tol` of `x`, trying the candidate Δ in order
/// and `b` by increasing `|b|` (positive first).
///
/// The match is numeric only; callers that need certainty must verify it.
pub fn recognize_quad(x: f64, candidates: &[u64], tol: f64) -> Option<QuadInt> {
    if !x.is_finite() {
        return None;
    }
    let bound = recognition_bound(x);
    for &delta in candidates {
        if delta == 0 || !is_square_free(delta as u128) {
            continue;
        }
        let root = (delta as f64).sqrt();
        let b_max = if delta == 1 { 0 } else { bound };
        for mag in 0..=b_max {
            let signs: &[i64] = if mag == 0 { &[0] } else { &[mag, -mag] };
            for &b in signs {
                let a = (2.0 * x - b as f64 * root).round();
                if a.abs() > bound as f64 {
                    continue;
                }
                let a = a as i64;
                let value = (a as f64 + b as f64 * root) / 2.0;
                if (x - value).abs() < tol {
                    if let Ok(q) = QuadInt::new(a, b, delta) {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

/// A value that is either exactly known or only numerically.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Eigenvalue {
    Exact(QuadInt),
    Inexact(f64),
}

impl Eigenvalue {
    pub fn value(&self) -> f64 {
        match self {
            Eigenvalue::Exact(q) => q.to_f64(),
            Eigenvalue::Inexact(x) => *x,
        }
    }

    pub fn exact(&self) -> Option<QuadInt> {
        match self {
            Eigenvalue::Exact(q) => Some(*q),
            Eigenvalue::Inexact(_) => None,
        }
    }
}

impl From<QuadInt> for Eigenvalue {
    fn from(q: QuadInt) -> Self {
        Eigenvalue::Exact(q)
    }
}
