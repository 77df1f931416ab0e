//! Dense truncated power series in `q`.
//!
//! A [`Series`] stores the coefficients of `q^0 .. q^(N-1)`; nothing is
//! known about `q^N` and beyond. Binary operations truncate to the smaller
//! order and never zero-extend.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use crate::error::SeriesError;
use crate::ring::{Arith, BigMod, Dyadic, DyadicArith, Elem, IntArith, RingTag, WordMod, WORD_MODULUS_LIMIT};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Coeffs {
    Int(Vec<BigInt>),
    Word(WordMod, Vec<u64>),
    Big(BigMod, Vec<BigUint>),
    Dyadic(Vec<Dyadic>),
}

/// Applies `$body` to the coefficient vector with its arithmetic, wrapping
/// the resulting vector back into the same ring.
macro_rules! map_coeffs {
    ($coeffs:expr, |$r:ident, $v:ident| $body:expr) => {
        match $coeffs {
            Coeffs::Int($v) => {
                let $r = &IntArith;
                Coeffs::Int($body)
            }
            Coeffs::Word(ring, $v) => {
                let $r = ring;
                Coeffs::Word(ring.clone(), $body)
            }
            Coeffs::Big(ring, $v) => {
                let $r = ring;
                Coeffs::Big(ring.clone(), $body)
            }
            Coeffs::Dyadic($v) => {
                let $r = &DyadicArith;
                Coeffs::Dyadic($body)
            }
        }
    };
}

/// Like `map_coeffs!` but the body yields a value that is not a vector.
macro_rules! with_coeffs {
    ($coeffs:expr, |$r:ident, $v:ident| $body:expr) => {
        match $coeffs {
            Coeffs::Int($v) => {
                let $r = &IntArith;
                $body
            }
            Coeffs::Word(ring, $v) => {
                let $r = ring;
                $body
            }
            Coeffs::Big(ring, $v) => {
                let $r = ring;
                $body
            }
            Coeffs::Dyadic($v) => {
                let $r = &DyadicArith;
                $body
            }
        }
    };
}

/// Pairs up two coefficient vectors over the same ring.
macro_rules! zip_coeffs {
    ($a:expr, $b:expr, |$r:ident, $x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (Coeffs::Int($x), Coeffs::Int($y)) => {
                let $r = &IntArith;
                Some(Coeffs::Int($body))
            }
            (Coeffs::Word(ra, $x), Coeffs::Word(rb, $y)) if ra == rb => {
                let $r = ra;
                Some(Coeffs::Word(ra.clone(), $body))
            }
            (Coeffs::Big(ra, $x), Coeffs::Big(rb, $y)) if ra == rb => {
                let $r = ra;
                Some(Coeffs::Big(ra.clone(), $body))
            }
            (Coeffs::Dyadic($x), Coeffs::Dyadic($y)) => {
                let $r = &DyadicArith;
                Some(Coeffs::Dyadic($body))
            }
            _ => None,
        }
    };
}

/// A truncated formal power series `sum_{n < order} c_n q^n`.
#[derive(Clone, PartialEq)]
pub struct Series {
    coeffs: Coeffs,
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Series[{}; {}]", self.ring(), self)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.elems().into_iter().enumerate() {
            if c.to_bigint().is_some_and(|v| v.is_zero()) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order())
    }
}

pub(crate) fn empty_coeffs(ring: &RingTag) -> Coeffs {
    match ring {
        RingTag::Integer => Coeffs::Int(Vec::new()),
        RingTag::Modular(m) => match m.to_u64() {
            Some(w) if w <= WORD_MODULUS_LIMIT => Coeffs::Word(WordMod { m: w }, Vec::new()),
            _ => Coeffs::Big(BigMod { m: m.clone() }, Vec::new()),
        },
        RingTag::Dyadic => Coeffs::Dyadic(Vec::new()),
    }
}

fn zeros<R: Arith>(r: &R, n: usize) -> Vec<R::E> {
    vec![r.zero(); n]
}

impl Series {
    /// Builds a series from explicit coefficients, normalizing them into `ring`.
    pub fn make(ring: &RingTag, coeffs: Vec<Elem>) -> Result<Series, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        let proto = empty_coeffs(ring);
        let bad = |e: &Elem| SeriesError::NotInRing(e.to_string(), ring.to_string());
        let coeffs = match proto {
            Coeffs::Int(_) => Coeffs::Int(
                coeffs
                    .iter()
                    .map(|e| e.to_bigint().ok_or_else(|| bad(e)))
                    .collect::<Result<_, _>>()?,
            ),
            Coeffs::Word(r, _) => {
                let m = BigInt::from(r.m);
                let v = coeffs
                    .iter()
                    .map(|e| {
                        let n = e.to_bigint().ok_or_else(|| bad(e))?;
                        Ok(num_integer::Integer::mod_floor(&n, &m).to_u64().unwrap())
                    })
                    .collect::<Result<_, SeriesError>>()?;
                Coeffs::Word(r, v)
            }
            Coeffs::Big(r, _) => {
                let v = coeffs
                    .iter()
                    .map(|e| Ok(r.reduce(&e.to_bigint().ok_or_else(|| bad(e))?)))
                    .collect::<Result<_, SeriesError>>()?;
                Coeffs::Big(r, v)
            }
            Coeffs::Dyadic(_) => Coeffs::Dyadic(
                coeffs
                    .into_iter()
                    .map(|e| match e {
                        Elem::Dyadic(d) => d,
                        Elem::Int(n) => Dyadic::from_int(n),
                        Elem::Residue(r) => Dyadic::from_int(BigInt::from(r)),
                    })
                    .collect(),
            ),
        };
        Ok(Series { coeffs })
    }

    /// Integer coefficients mapped into `ring`.
    pub fn from_i64s(ring: &RingTag, coeffs: &[i64]) -> Result<Series, SeriesError> {
        Series::make(ring, coeffs.iter().map(|&c| Elem::from(c)).collect())
    }

    pub fn from_bigints(ring: &RingTag, coeffs: &[BigInt]) -> Result<Series, SeriesError> {
        Series::make(ring, coeffs.iter().cloned().map(Elem::Int).collect())
    }

    pub fn zero(ring: &RingTag, order: usize) -> Series {
        assert!(order >= 1, "series order must be positive");
        let coeffs = map_coeffs!(&empty_coeffs(ring), |r, _v| zeros(r, order));
        Series { coeffs }
    }

    pub fn one(ring: &RingTag, order: usize) -> Series {
        Series::constant(ring, order, 1)
    }

    pub fn constant(ring: &RingTag, order: usize, c: i64) -> Series {
        Series::monomial(ring, order, c, 0)
    }

    /// `c q^k`, which is zero to this order when `k >= order`.
    pub fn monomial(ring: &RingTag, order: usize, c: i64, k: usize) -> Series {
        Series::from_sparse(ring, order, std::iter::once((k, c)))
    }

    /// Sums `c q^k` over the given terms, dropping exponents `>= order`.
    pub fn from_sparse(ring: &RingTag, order: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Series {
        assert!(order >= 1, "series order must be positive");
        let terms: Vec<(usize, i64)> = terms.into_iter().filter(|&(k, _)| k < order).collect();
        let coeffs = map_coeffs!(&empty_coeffs(ring), |r, _v| {
            let mut v = zeros(r, order);
            for &(k, c) in &terms {
                v[k] = r.add(&v[k], &r.from_i64(c));
            }
            v
        });
        Series { coeffs }
    }

    pub(crate) fn from_coeffs(coeffs: Coeffs) -> Series {
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        with_coeffs!(&self.coeffs, |_r, v| v.len())
    }

    pub fn ring(&self) -> RingTag {
        match &self.coeffs {
            Coeffs::Int(_) => RingTag::Integer,
            Coeffs::Word(r, _) => RingTag::Modular(BigUint::from(r.m)),
            Coeffs::Big(r, _) => RingTag::Modular(r.m.clone()),
            Coeffs::Dyadic(_) => RingTag::Dyadic,
        }
    }

    /// Coefficient of `q^n`; an error past the truncation order.
    pub fn coefficient(&self, n: usize) -> Result<Elem, SeriesError> {
        with_coeffs!(&self.coeffs, |r, v| v
            .get(n)
            .map(|c| r.to_elem(c))
            .ok_or(SeriesError::BeyondOrder { index: n, order: v.len() }))
    }

    /// All stored coefficients.
    pub fn elems(&self) -> Vec<Elem> {
        with_coeffs!(&self.coeffs, |r, v| v.iter().map(|c| r.to_elem(c)).collect())
    }

    /// Coefficients as integers (residues for modular series); `None` for a
    /// dyadic series with a non-integral entry.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.elems().iter().map(Elem::to_bigint).collect()
    }

    /// Residues, for a modular series whose modulus fits a machine word.
    pub fn residues(&self) -> Option<&[u64]> {
        match &self.coeffs {
            Coeffs::Word(_, v) => Some(v),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        with_coeffs!(&self.coeffs, |r, v| v.iter().all(|c| r.is_zero(c)))
    }

    /// Exact comparison of the coefficients below `n`.
    pub fn equal_to_order(&self, other: &Series, n: usize) -> Result<bool, SeriesError> {
        Ok(self.first_difference(other, n)?.is_none())
    }

    /// First index below `n` where the series differ, with both coefficients.
    pub fn first_difference(&self, other: &Series, n: usize) -> Result<Option<(usize, Elem, Elem)>, SeriesError> {
        self.same_ring(other)?;
        let limit = self.order().min(other.order());
        if n > limit {
            return Err(SeriesError::BeyondOrder { index: n, order: limit });
        }
        let a = self.elems();
        let b = other.elems();
        Ok((0..n).find(|&i| a[i] != b[i]).map(|i| (i, a[i].clone(), b[i].clone())))
    }

    fn same_ring(&self, other: &Series) -> Result<(), SeriesError> {
        let (ra, rb) = (self.ring(), other.ring());
        if ra != rb {
            return Err(SeriesError::RingMismatch(ra.to_string(), rb.to_string()));
        }
        Ok(())
    }

    fn mismatch(&self, other: &Series) -> SeriesError {
        SeriesError::RingMismatch(self.ring().to_string(), other.ring().to_string())
    }

    pub fn try_add(&self, other: &Series) -> Result<Series, SeriesError> {
        zip_coeffs!(&self.coeffs, &other.coeffs, |r, x, y| x
            .iter()
            .zip(y.iter())
            .map(|(a, b)| r.add(a, b))
            .collect())
        .map(Series::from_coeffs)
        .ok_or_else(|| self.mismatch(other))
    }

    pub fn try_sub(&self, other: &Series) -> Result<Series, SeriesError> {
        zip_coeffs!(&self.coeffs, &other.coeffs, |r, x, y| x
            .iter()
            .zip(y.iter())
            .map(|(a, b)| r.sub(a, b))
            .collect())
        .map(Series::from_coeffs)
        .ok_or_else(|| self.mismatch(other))
    }

    pub fn negate(&self) -> Series {
        let coeffs = map_coeffs!(&self.coeffs, |r, v| v.iter().map(|c| r.neg(c)).collect());
        Series { coeffs }
    }

    /// Cauchy product truncated to the smaller order.
    pub fn try_mul(&self, other: &Series) -> Result<Series, SeriesError> {
        let n = self.order().min(other.order());
        zip_coeffs!(&self.coeffs, &other.coeffs, |r, x, y| r.convolve(&x[..n], &y[..n], n))
            .map(Series::from_coeffs)
            .ok_or_else(|| self.mismatch(other))
    }

    /// Multiplies every coefficient by the integer `c`.
    pub fn scale(&self, c: i64) -> Series {
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let c = r.from_i64(c);
            v.iter().map(|x| r.mul(x, &c)).collect()
        });
        Series { coeffs }
    }

    /// Multiplies every coefficient by an arbitrary ring element.
    pub fn scale_elem(&self, c: &Elem) -> Result<Series, SeriesError> {
        let cs = Series::make(&self.ring(), vec![c.clone()])?;
        Ok(Series::from_coeffs(
            zip_coeffs!(&self.coeffs, &cs.coeffs, |r, v, c| v.iter().map(|x| r.mul(x, &c[0])).collect()).unwrap(),
        ))
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn invert(&self) -> Result<Series, SeriesError> {
        let ring = self.ring();
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let u = r
                .unit_inverse(&v[0])
                .ok_or_else(|| SeriesError::NonUnit(r.to_elem(&v[0]).to_string(), ring.to_string()))?;
            let neg_u = r.neg(&u);
            let n = v.len();
            let mut c = Vec::with_capacity(n);
            c.push(u);
            for i in 1..n {
                let s = r.dot(&v[1..=i], (1..=i).map(|k| c[i - k].clone()));
                c.push(r.mul(&neg_u, &s));
            }
            c
        });
        Ok(Series { coeffs })
    }

    /// `self^k` by binary powering; negative `k` inverts first.
    pub fn pow(&self, k: i64) -> Result<Series, SeriesError> {
        let base = if k < 0 { self.invert()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Series::one(&self.ring(), self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `q -> q^k`, keeping the order.
    pub fn substitute_power(&self, k: usize) -> Series {
        self.dilate(k, self.order())
    }

    /// `q -> q^k` truncated to `order`, which may exceed `self.order()` as
    /// long as `k * self.order() >= order`.
    pub(crate) fn dilate(&self, k: usize, order: usize) -> Series {
        assert!(k >= 1, "substitution power must be positive");
        assert!(k * self.order() >= order, "dilation would claim unknown coefficients");
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let mut out = zeros(r, order);
            for (i, c) in v.iter().enumerate() {
                if i * k >= order {
                    break;
                }
                out[i * k] = c.clone();
            }
            out
        });
        Series { coeffs }
    }

    /// Multiplication by `q^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let n = v.len();
            let mut out = zeros(r, n.min(k));
            out.extend(v.iter().take(n.saturating_sub(k)).cloned());
            out
        });
        Series { coeffs }
    }

    /// Keeps the first `order` coefficients.
    pub fn truncate(&self, order: usize) -> Series {
        assert!(order >= 1 && order <= self.order(), "cannot truncate to order {order}");
        let coeffs = map_coeffs!(&self.coeffs, |_r, v| v[..order].to_vec());
        Series { coeffs }
    }

    /// Coefficientwise reduction into `Z/mZ`. Accepts integer series and
    /// modular series whose modulus is a multiple of `m`.
    pub fn reduce_mod(&self, m: &BigUint) -> Result<Series, SeriesError> {
        let target = RingTag::modular(m.clone())?;
        match &self.coeffs {
            Coeffs::Int(_) | Coeffs::Word(..) | Coeffs::Big(..) => {
                if let Some(src) = self.ring().modulus() {
                    if !(src % m).is_zero() {
                        return Err(SeriesError::BadReduction(self.ring().to_string(), m.to_string()));
                    }
                }
                Series::make(&target, self.elems())
            }
            Coeffs::Dyadic(_) => Err(SeriesError::BadReduction(self.ring().to_string(), m.to_string())),
        }
    }

    /// Re-expresses the coefficients in another ring (integers into any
    /// ring, dyadics into the integers when they are integral).
    pub fn convert(&self, ring: &RingTag) -> Result<Series, SeriesError> {
        if &self.ring() == ring {
            return Ok(self.clone());
        }
        if let (RingTag::Modular(_), RingTag::Modular(m)) = (self.ring(), ring) {
            return self.reduce_mod(m);
        }
        if matches!(self.coeffs, Coeffs::Word(..) | Coeffs::Big(..)) {
            return Err(SeriesError::BadReduction(self.ring().to_string(), ring.to_string()));
        }
        Series::make(ring, self.elems())
    }

    /// `self * (1 + c q^e)` in one pass.
    pub fn mul_binomial(&self, c: i64, e: usize) -> Series {
        assert!(e >= 1);
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let c = r.from_i64(c);
            let mut out = v.clone();
            for i in (e..v.len()).rev() {
                out[i] = r.add(&out[i], &r.mul(&c, &v[i - e]));
            }
            out
        });
        Series { coeffs }
    }

    /// `self / (1 + c q^e)` in one pass.
    pub fn div_binomial(&self, c: i64, e: usize) -> Series {
        assert!(e >= 1);
        let coeffs = map_coeffs!(&self.coeffs, |r, v| {
            let c = r.from_i64(c);
            let mut out = v.clone();
            for i in e..v.len() {
                let t = r.mul(&c, &out[i - e]);
                out[i] = r.sub(&out[i], &t);
            }
            out
        });
        Series { coeffs }
    }

    /// Series whose coefficient `i` is `self[index(i)]`, or zero when
    /// `index` returns `None`.
    pub(crate) fn gather(&self, order: usize, index: impl Fn(usize) -> Option<usize>) -> Series {
        let coeffs = map_coeffs!(&self.coeffs, |r, v| (0..order)
            .map(|i| match index(i) {
                Some(j) => v[j].clone(),
                None => r.zero(),
            })
            .collect());
        Series { coeffs }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl $tr<&Series> for &Series {
            type Output = Series;
            /// Panics on a ring mismatch; use the `try_` form to recover.
            fn $method(self, rhs: &Series) -> Series {
                self.$inner(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Series> for Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Series> for Series {
            type Output = Series;
            fn $method(self, rhs: &Series) -> Series {
                (&self).$method(rhs)
            }
        }
        impl $tr<Series> for &Series {
            type Output = Series;
            fn $method(self, rhs: Series) -> Series {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.negate()
    }
}

impl Neg for Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.negate()
    }
}
