//! Coefficient domains for truncated series.
//!
//! Three rings are supported: exact integers, integers modulo `m` (any
//! `m >= 2`, arbitrary precision) and dyadic rationals `n / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::SeriesError;

/// Moduli up to this bound are stored in machine words.
pub(crate) const WORD_MODULUS_LIMIT: u64 = 1 << 63;

/// Which coefficient ring a series lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingTag {
    Integer,
    Modular(BigUint),
    Dyadic,
}

impl RingTag {
    /// `Z / mZ`; rejects `m < 2`.
    pub fn modular(m: impl Into<BigUint>) -> Result<RingTag, SeriesError> {
        let m = m.into();
        if m < BigUint::from(2u32) {
            return Err(SeriesError::BadModulus(m.to_string()));
        }
        Ok(RingTag::Modular(m))
    }

    pub fn modulus(&self) -> Option<&BigUint> {
        match self {
            RingTag::Modular(m) => Some(m),
            _ => None,
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Integer => write!(f, "ZZ"),
            RingTag::Modular(m) => write!(f, "ZZ/{m}"),
            RingTag::Dyadic => write!(f, "ZZ[1/2]"),
        }
    }
}

/// A dyadic rational `num / 2^exp`, kept normalized: `num` odd, or `(0, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Dyadic {
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            return Dyadic::zero();
        }
        if exp > 0 {
            let tz = num.trailing_zeros().unwrap_or(0);
            let strip = tz.min(exp as u64) as u32;
            num >>= strip;
            exp -= strip;
        }
        Dyadic { num, exp }
    }

    /// Parses `num / den`; the denominator must be a positive power of two.
    pub fn from_ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Dyadic, SeriesError> {
        let num = num.into();
        let den = den.into();
        if !den.is_positive() {
            return Err(SeriesError::NotDyadic(format!("{num}/{den}")));
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (&den >> tz) != BigInt::one() {
            return Err(SeriesError::NotDyadic(format!("{num}/{den}")));
        }
        Ok(Dyadic::new(num, tz as u32))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Dyadic {
        Dyadic::new(n, 0)
    }

    pub fn zero() -> Dyadic {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    /// Power of two in the denominator.
    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    /// `self * 2^k` as an integer, if that is integral.
    pub fn scaled_by_pow2(&self, k: u32) -> Option<BigInt> {
        (k >= self.exp).then(|| &self.num << (k - self.exp))
    }

    pub fn val2(&self) -> Val2 {
        match self.num.trailing_zeros() {
            None => Val2::Infinite,
            Some(tz) => Val2::Finite(tz as i64 - self.exp as i64),
        }
    }

    /// Inverse, defined only for `±2^k`.
    pub fn inverse(&self) -> Option<Dyadic> {
        if self.num.magnitude() != &BigUint::one() {
            return None;
        }
        // (±1 / 2^e)^-1 = ±2^e
        Some(Dyadic::new(&self.num << self.exp, 0))
    }

    fn align(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (&self.num << (e - self.exp), &other.num << (e - other.exp), e)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = self.align(rhs);
        Dyadic::new(a - b, e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// 2-adic valuation; `+inf` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Val2 {
    Finite(i64),
    Infinite,
}

impl Val2 {
    pub fn of_int(n: &BigInt) -> Val2 {
        match n.trailing_zeros() {
            None => Val2::Infinite,
            Some(tz) => Val2::Finite(tz as i64),
        }
    }

    pub fn at_least(self, bound: i64) -> bool {
        match self {
            Val2::Infinite => true,
            Val2::Finite(v) => v >= bound,
        }
    }
}

impl PartialOrd for Val2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Val2 {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Val2::Infinite, Val2::Infinite) => Ordering::Equal,
            (Val2::Infinite, _) => Ordering::Greater,
            (_, Val2::Infinite) => Ordering::Less,
            (Val2::Finite(a), Val2::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Val2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Val2::Finite(v) => write!(f, "{v}"),
            Val2::Infinite => write!(f, "inf"),
        }
    }
}

/// A single coefficient, as handed in and out of [`crate::Series`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    /// Residue in `[0, m)`; the modulus lives on the series.
    Residue(BigUint),
    Dyadic(Dyadic),
}

impl Elem {
    pub fn int(n: impl Into<BigInt>) -> Elem {
        Elem::Int(n.into())
    }

    /// The value as an integer, when it is one.
    pub fn to_bigint(&self) -> Option<BigInt> {
        match self {
            Elem::Int(n) => Some(n.clone()),
            Elem::Residue(r) => Some(BigInt::from(r.clone())),
            Elem::Dyadic(d) => d.to_integer(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_bigint().and_then(|n| n.to_i64())
    }
}

impl From<i64> for Elem {
    fn from(n: i64) -> Elem {
        Elem::Int(BigInt::from(n))
    }
}

impl From<BigInt> for Elem {
    fn from(n: BigInt) -> Elem {
        Elem::Int(n)
    }
}

impl From<Dyadic> for Elem {
    fn from(d: Dyadic) -> Elem {
        Elem::Dyadic(d)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(n) => write!(f, "{n}"),
            Elem::Residue(r) => write!(f, "{r}"),
            Elem::Dyadic(d) => write!(f, "{d}"),
        }
    }
}

/// Arithmetic of one concrete coefficient representation.
pub(crate) trait Arith: Clone + PartialEq {
    type E: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn zero(&self) -> Self::E;
    fn from_i64(&self, n: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn unit_inverse(&self, a: &Self::E) -> Option<Self::E>;
    fn to_elem(&self, a: &Self::E) -> Elem;

    fn one(&self) -> Self::E {
        self.from_i64(1)
    }

    /// `sum_k a[k] * b[k]` over paired slices.
    fn dot(&self, a: &[Self::E], b_rev: impl Iterator<Item = Self::E>) -> Self::E {
        let mut acc = self.zero();
        for (x, y) in a.iter().zip(b_rev) {
            if !self.is_zero(x) && !self.is_zero(&y) {
                acc = self.add(&acc, &self.mul(x, &y));
            }
        }
        acc
    }

    /// Cauchy product truncated to `n` terms.
    fn convolve(&self, a: &[Self::E], b: &[Self::E], n: usize) -> Vec<Self::E> {
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(b.len() - 1);
                let hi = i.min(a.len() - 1);
                if lo > hi {
                    return self.zero();
                }
                self.dot(&a[lo..=hi], (lo..=hi).map(|k| b[i - k].clone()))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntArith;

fn bits(v: &[BigInt]) -> u64 {
    v.iter().map(|x| x.bits()).max().unwrap_or(0)
}

impl Arith for IntArith {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.magnitude() == &BigUint::one()).then(|| a.clone())
    }
    fn to_elem(&self, a: &BigInt) -> Elem {
        Elem::Int(a.clone())
    }

    fn convolve(&self, a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
        let log_len = 64 - (n as u64).leading_zeros() as u64;
        if bits(a) + bits(b) + log_len + 1 < 126 {
            // Every partial sum fits in an i128.
            let a: Vec<i128> = a.iter().map(|x| x.to_i128().unwrap()).collect();
            let b: Vec<i128> = b.iter().map(|x| x.to_i128().unwrap()).collect();
            return (0..n)
                .map(|i| {
                    let lo = i.saturating_sub(b.len() - 1);
                    let hi = i.min(a.len() - 1);
                    let mut acc = 0i128;
                    if lo <= hi {
                        for k in lo..=hi {
                            acc += a[k] * b[i - k];
                        }
                    }
                    BigInt::from(acc)
                })
                .collect();
        }
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(b.len() - 1);
                let hi = i.min(a.len() - 1);
                let mut acc = BigInt::zero();
                if lo <= hi {
                    for k in lo..=hi {
                        if !a[k].is_zero() && !b[i - k].is_zero() {
                            acc += &a[k] * &b[i - k];
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

/// Residues modulo `m <= 2^63` in machine words.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct WordMod {
    pub m: u64,
}

impl WordMod {
    #[inline]
    pub fn reduce_i64(&self, n: i64) -> u64 {
        let r = (n as i128).rem_euclid(self.m as i128);
        r as u64
    }
}

impl Arith for WordMod {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i64(n)
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.m {
            s - self.m
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.m - b)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        let g = (*a as i128).extended_gcd(&(self.m as i128));
        (g.gcd == 1).then(|| g.x.rem_euclid(self.m as i128) as u64)
    }
    fn to_elem(&self, a: &u64) -> Elem {
        Elem::Residue(BigUint::from(*a))
    }

    fn dot(&self, a: &[u64], b_rev: impl Iterator<Item = u64>) -> u64 {
        let m = self.m as u128;
        let mut acc = 0u128;
        if self.m < (1 << 32) {
            // products stay below 2^64, so the sum cannot overflow for any
            // realistic length
            for (x, y) in a.iter().zip(b_rev) {
                acc += *x as u128 * y as u128;
            }
        } else {
            for (x, y) in a.iter().zip(b_rev) {
                acc = (acc + (*x as u128 * y as u128) % m) % m;
            }
        }
        (acc % m) as u64
    }
}

/// Residues modulo an arbitrary-precision `m`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct BigMod {
    pub m: BigUint,
}

impl BigMod {
    pub fn reduce(&self, n: &BigInt) -> BigUint {
        let m = BigInt::from(self.m.clone());
        n.mod_floor(&m).to_biguint().unwrap()
    }
}

impl Arith for BigMod {
    type E = BigUint;

    fn zero(&self) -> BigUint {
        BigUint::zero()
    }
    fn from_i64(&self, n: i64) -> BigUint {
        self.reduce(&BigInt::from(n))
    }
    fn add(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a + b) % &self.m
    }
    fn sub(&self, a: &BigUint, b: &BigUint) -> BigUint {
        if a >= b {
            a - b
        } else {
            &self.m - (b - a)
        }
    }
    fn neg(&self, a: &BigUint) -> BigUint {
        if a.is_zero() {
            BigUint::zero()
        } else {
            &self.m - a
        }
    }
    fn mul(&self, a: &BigUint, b: &BigUint) -> BigUint {
        (a * b) % &self.m
    }
    fn is_zero(&self, a: &BigUint) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &BigUint) -> Option<BigUint> {
        a.modinv(&self.m)
    }
    fn to_elem(&self, a: &BigUint) -> Elem {
        Elem::Residue(a.clone())
    }

    fn dot(&self, a: &[BigUint], b_rev: impl Iterator<Item = BigUint>) -> BigUint {
        let mut acc = BigUint::zero();
        for (x, y) in a.iter().zip(b_rev) {
            acc += x * y;
        }
        acc % &self.m
    }
}

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct DyadicArith;

impl Arith for DyadicArith {
    type E = Dyadic;

    fn zero(&self) -> Dyadic {
        Dyadic::zero()
    }
    fn from_i64(&self, n: i64) -> Dyadic {
        Dyadic::from_int(n)
    }
    fn add(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a + b
    }
    fn sub(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a - b
    }
    fn neg(&self, a: &Dyadic) -> Dyadic {
        -a
    }
    fn mul(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        a * b
    }
    fn is_zero(&self, a: &Dyadic) -> bool {
        a.is_zero()
    }
    fn unit_inverse(&self, a: &Dyadic) -> Option<Dyadic> {
        a.inverse()
    }
    fn to_elem(&self, a: &Dyadic) -> Elem {
        Elem::Dyadic(a.clone())
    }
}

/// Converts an integer to a signed residue representative, for display.
pub fn signed_residue(r: &BigUint, m: &BigUint) -> BigInt {
    let r = BigInt::from(r.clone());
    let m = BigInt::from(m.clone());
    if &r * 2 > m {
        r - m
    } else {
        r
    }
}
