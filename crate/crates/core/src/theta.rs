//! Theta functions, Euler products, q-Pochhammer symbols and the generating
//! function of `v0(n)`.
//!
//! Every special series is available in a sum form; the product forms are
//! kept alongside for cross-checking.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::SeriesError;
use crate::ring::{Arith, Elem, RingTag};
use crate::series::{empty_coeffs, Coeffs, Series};

/// A signed monomial `±q^k` with `k >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    sign: i8,
    exponent: usize,
}

impl Monomial {
    pub fn new(sign: i8, exponent: usize) -> Result<Monomial, SeriesError> {
        if sign != 1 && sign != -1 {
            return Err(SeriesError::InvalidArgument(format!("monomial sign must be +1 or -1, got {sign}")));
        }
        if exponent == 0 {
            return Err(SeriesError::InvalidArgument("monomial exponent must be positive".into()));
        }
        Ok(Monomial { sign, exponent })
    }

    /// `q^k`
    pub fn pos(exponent: usize) -> Monomial {
        Monomial::new(1, exponent).expect("positive exponent")
    }

    /// `-q^k`
    pub fn neg(exponent: usize) -> Monomial {
        Monomial::new(-1, exponent).expect("positive exponent")
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    /// `self^j` as (sign, exponent).
    fn power(&self, j: u64) -> (i64, u64) {
        let s = if self.sign < 0 && j % 2 == 1 { -1 } else { 1 };
        (s, self.exponent as u64 * j)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        if self.exponent == 1 {
            write!(f, "{s}q")
        } else {
            write!(f, "{s}q^{}", self.exponent)
        }
    }
}

/// `f_k = (q^k; q^k)_inf`, from Euler's pentagonal number theorem.
pub fn euler_product(ring: &RingTag, k: usize, order: usize) -> Series {
    assert!(k >= 1);
    let mut terms = vec![(0usize, 1i64)];
    for n in 1usize.. {
        let lo = k * n * (3 * n - 1) / 2;
        if lo >= order {
            break;
        }
        let sign = if n % 2 == 1 { -1 } else { 1 };
        terms.push((lo, sign));
        terms.push((k * n * (3 * n + 1) / 2, sign));
    }
    Series::from_sparse(ring, order, terms)
}

/// `phi(±q^k) = sum_{n in Z} (±1)^n q^(k n^2)`.
pub fn theta_phi(ring: &RingTag, arg: Monomial, order: usize) -> Series {
    let k = arg.exponent;
    let mut terms = vec![(0usize, 1i64)];
    for n in 1usize.. {
        let e = k * n * n;
        if e >= order {
            break;
        }
        let sign = if arg.sign < 0 && n % 2 == 1 { -1 } else { 1 };
        terms.push((e, 2 * sign));
    }
    Series::from_sparse(ring, order, terms)
}

/// `psi(q^k) = sum_{n >= 0} q^(k n(n+1)/2)`.
pub fn theta_psi(ring: &RingTag, k: usize, order: usize) -> Series {
    assert!(k >= 1);
    let terms = (0usize..).map(|n| k * n * (n + 1) / 2).take_while(|&e| e < order).map(|e| (e, 1));
    Series::from_sparse(ring, order, terms)
}

/// Ramanujan's `f(a, b) = sum_{n in Z} a^(n(n+1)/2) b^(n(n-1)/2)`.
pub fn theta_f(ring: &RingTag, a: Monomial, b: Monomial, order: usize) -> Series {
    let term = |n: i64| {
        let ja = (n * (n + 1) / 2) as u64;
        let jb = (n * (n - 1) / 2) as u64;
        let (sa, ea) = a.power(ja);
        let (sb, eb) = b.power(jb);
        (ea + eb, sa * sb)
    };
    let mut terms = Vec::new();
    for n in 0i64.. {
        let (e, s) = term(n);
        if e >= order as u64 {
            break;
        }
        terms.push((e as usize, s));
    }
    for n in 1i64.. {
        let (e, s) = term(-n);
        if e >= order as u64 {
            break;
        }
        terms.push((e as usize, s));
    }
    Series::from_sparse(ring, order, terms)
}

/// Product side of the Jacobi triple product,
/// `(-a; ab)_inf (-b; ab)_inf (ab; ab)_inf`.
pub fn theta_f_product(ring: &RingTag, a: Monomial, b: Monomial, order: usize) -> Series {
    let ab = Monomial::new(a.sign * b.sign, a.exponent + b.exponent).expect("nonzero exponent");
    let minus = |m: Monomial| Monomial::new(-m.sign, m.exponent).unwrap();
    let p1 = pochhammer(ring, minus(a), ab, None, order);
    let p2 = pochhammer(ring, minus(b), ab, None, order);
    let p3 = pochhammer(ring, ab, ab, None, order);
    &(&p1 * &p2) * &p3
}

/// `(a; step)_n = prod_{i < n} (1 - a step^i)`, or the infinite product
/// when `count` is `None`. Factors `1 + O(q^order)` are dropped.
pub fn pochhammer(ring: &RingTag, a: Monomial, step: Monomial, count: Option<usize>, order: usize) -> Series {
    let mut s = Series::one(ring, order);
    for i in 0u64.. {
        if count.is_some_and(|c| i >= c as u64) {
            break;
        }
        let (ss, es) = step.power(i);
        let e = a.exponent as u64 + es;
        if e >= order as u64 {
            // later factors only get larger exponents
            break;
        }
        let c = -(a.sign as i64) * ss;
        s = s.mul_binomial(c, e as usize);
    }
    s
}

/// Shorthand for `(±q^r; q^step)` with a positive step.
pub fn poch(ring: &RingTag, sign: i8, r: usize, step: usize, count: Option<usize>, order: usize) -> Result<Series, SeriesError> {
    Ok(pochhammer(ring, Monomial::new(sign, r)?, Monomial::new(1, step)?, count, order))
}

/// `psi(q) = (q^2; q^2)_inf / (q; q^2)_inf`.
pub fn psi_product(ring: &RingTag, order: usize) -> Series {
    let num = pochhammer(ring, Monomial::pos(2), Monomial::pos(2), None, order);
    let den = pochhammer(ring, Monomial::pos(1), Monomial::pos(2), None, order);
    &num * &den.invert().expect("unit constant")
}

/// `phi(q) = (-q; q^2)_inf^2 (q^2; q^2)_inf`.
pub fn phi_product(ring: &RingTag, order: usize) -> Series {
    let a = pochhammer(ring, Monomial::neg(1), Monomial::pos(2), None, order);
    let b = pochhammer(ring, Monomial::pos(2), Monomial::pos(2), None, order);
    &(&a * &a) * &b
}

/// The coefficients `v0(0 .. order-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct V0Table {
    series: Series,
}

impl V0Table {
    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn value(&self, n: usize) -> Result<Elem, SeriesError> {
        self.series.coefficient(n)
    }

    /// `sum v0(n) q^n` as a series.
    pub fn series(&self) -> &Series {
        &self.series
    }

    pub fn into_series(self) -> Series {
        self.series
    }
}

fn v0_kernel<R: Arith>(r: &R, order: usize) -> Vec<R::E> {
    let mut total = vec![r.zero(); order];
    let mut term = vec![r.zero(); order];
    total[0] = r.one();
    term[0] = r.one();
    let mut k = 1usize;
    while k * k < order {
        let e = 2 * k - 1;
        let start = k * k;
        let prev = (k - 1) * (k - 1);
        // T_k = T_{k-1} * q^e * (1 + q^e) / (1 - q^e); T_k starts at q^(k^2)
        for i in (start..order).rev() {
            term[i] = term[i - e].clone();
        }
        for t in &mut term[prev..start] {
            *t = r.zero();
        }
        for i in (start + e..order).rev() {
            term[i] = r.add(&term[i], &term[i - e]);
        }
        for i in start + e..order {
            term[i] = r.add(&term[i], &term[i - e]);
        }
        for i in start..order {
            total[i] = r.add(&total[i], &term[i]);
        }
        k += 1;
    }
    total
}

/// `sum_{n>=0} q^(n^2) (-q; q^2)_n / (q; q^2)_n` to the given order, over
/// the integers or a modular ring.
pub fn v0_series(ring: &RingTag, order: usize) -> Result<V0Table, SeriesError> {
    if order == 0 {
        return Err(SeriesError::Empty);
    }
    let coeffs = match empty_coeffs(ring) {
        Coeffs::Int(_) => Coeffs::Int(v0_kernel(&crate::ring::IntArith, order)),
        Coeffs::Word(r, _) => {
            let v = v0_kernel(&r, order);
            Coeffs::Word(r, v)
        }
        Coeffs::Big(r, _) => {
            let v = v0_kernel(&r, order);
            Coeffs::Big(r, v)
        }
        Coeffs::Dyadic(_) => Coeffs::Dyadic(
            v0_kernel(&crate::ring::IntArith, order).into_iter().map(crate::ring::Dyadic::from_int).collect(),
        ),
    };
    Ok(V0Table { series: Series::from_coeffs(coeffs) })
}

/// Independent expansion of the `v0` generating function over the integers:
/// each summand is rebuilt from scratch as an explicit numerator polynomial
/// times the expanded reciprocal of its denominator.
pub fn v0_oracle(order: usize) -> V0Table {
    assert!(order >= 1);
    let mut sum = vec![BigInt::zero(); order];
    sum[0] = BigInt::one();
    let mut n = 1usize;
    while n * n < order {
        let len = order - n * n;
        // prod_{i=1}^{n} (1 + q^(2i-1)), small nonnegative coefficients
        let mut num: Vec<u64> = vec![1];
        for i in 1..=n {
            let e = 2 * i - 1;
            let mut next = vec![0u64; (num.len() + e).min(len)];
            for (j, &c) in num.iter().enumerate() {
                if j < next.len() {
                    next[j] += c;
                }
                if j + e < next.len() {
                    next[j + e] += c;
                }
            }
            num = next;
        }
        // 1 / prod (1 - q^(2i-1)): fold in one geometric series at a time
        let mut den = vec![BigInt::zero(); len];
        den[0] = BigInt::one();
        for i in 1..=n {
            let e = 2 * i - 1;
            let mut conv = vec![BigInt::zero(); len];
            for t in 0..len {
                let carried = if t >= e { conv[t - e].clone() } else { BigInt::zero() };
                conv[t] = &den[t] + carried;
            }
            den = conv;
        }
        for (j, &c) in num.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for t in 0..len - j {
                if !den[t].is_zero() {
                    sum[n * n + j + t] += &den[t] * c;
                }
            }
        }
        n += 1;
    }
    V0Table { series: Series::from_bigints(&RingTag::Integer, &sum).expect("nonempty") }
}

/// Checks `2 sum v0(2n) q^(2n) - 1 = (-q^2; q^4)_inf^4 (q^8; q^8)_inf`, the
/// integer form of `V0(q) + V0(-q) = 2 (-q^2;q^4)^4 (q^8;q^8)`.
pub fn even_part_identity_check(order: usize) -> bool {
    let zz = RingTag::Integer;
    let v0 = v0_series(&zz, order).expect("positive order");
    let even = v0.series().gather(order, |i| (i % 2 == 0).then_some(i));
    let lhs = &even.scale(2) - &Series::one(&zz, order);
    let a = pochhammer(&zz, Monomial::neg(2), Monomial::pos(4), None, order);
    let b = pochhammer(&zz, Monomial::pos(8), Monomial::pos(8), None, order);
    let rhs = &a.pow(4).expect("nonnegative power") * &b;
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zz(c: &[i64]) -> Series {
        Series::from_i64s(&RingTag::Integer, c).unwrap()
    }

    const ZZ: RingTag = RingTag::Integer;

    #[test]
    fn pentagonal_series() {
        assert_eq!(euler_product(&ZZ, 1, 8), zz(&[1, -1, -1, 0, 0, 1, 0, 1]));
        assert_eq!(euler_product(&ZZ, 2, 5), zz(&[1, 0, -1, 0, -1]));
    }

    #[test]
    fn euler_product_matches_finite_product() {
        for k in [1, 2, 3, 7] {
            let mut direct = Series::one(&ZZ, 500);
            for i in 1..500 {
                if k * i >= 500 {
                    break;
                }
                direct = &direct * &Series::from_sparse(&ZZ, 500, [(0, 1), (k * i, -1)]);
            }
            assert_eq!(euler_product(&ZZ, k, 500), direct, "k = {k}");
        }
    }

    #[test]
    fn small_thetas() {
        assert_eq!(theta_psi(&ZZ, 1, 8), zz(&[1, 1, 0, 1, 0, 0, 1, 0]));
        assert_eq!(theta_phi(&ZZ, Monomial::pos(1), 5), zz(&[1, 2, 0, 0, 2]));
        assert_eq!(theta_phi(&ZZ, Monomial::neg(1), 5), zz(&[1, -2, 0, 0, 2]));
        assert_eq!(theta_f(&ZZ, Monomial::pos(1), Monomial::pos(2), 8), zz(&[1, 1, 1, 0, 0, 1, 0, 1]));
    }

    #[test]
    fn f_specializes_to_phi_psi_and_euler() {
        let n = 300;
        assert_eq!(theta_f(&ZZ, Monomial::pos(1), Monomial::pos(1), n), theta_phi(&ZZ, Monomial::pos(1), n));
        assert_eq!(theta_f(&ZZ, Monomial::pos(1), Monomial::pos(3), n), theta_psi(&ZZ, 1, n));
        assert_eq!(theta_f(&ZZ, Monomial::neg(1), Monomial::neg(2), n), euler_product(&ZZ, 1, n));
    }

    #[test]
    fn product_forms() {
        assert_eq!(psi_product(&ZZ, 500), theta_psi(&ZZ, 1, 500));
        assert_eq!(phi_product(&ZZ, 500), theta_phi(&ZZ, Monomial::pos(1), 500));
        let q_odd = pochhammer(&ZZ, Monomial::pos(1), Monomial::pos(2), None, 300);
        assert_eq!(&q_odd * &theta_psi(&ZZ, 1, 300), euler_product(&ZZ, 2, 300));
    }

    #[test]
    fn substituted_psi_matches_direct_construction() {
        let direct = theta_psi(&ZZ, 4, 200);
        assert_eq!(theta_psi(&ZZ, 1, 200).substitute_power(4), direct);
    }

    #[test]
    fn finite_pochhammer() {
        let s = poch(&ZZ, -1, 1, 2, Some(2), 6).unwrap();
        assert_eq!(s, zz(&[1, 1, 0, 1, 1, 0]));
        assert_eq!(poch(&ZZ, 1, 1, 1, Some(0), 3).unwrap(), zz(&[1, 0, 0]));
    }

    #[test]
    fn jacobi_triple_product_expansion_oracle() {
        // (-q^2;q^4)^4 (q^8;q^8) expanded term by term
        let a = poch(&ZZ, -1, 2, 4, None, 12).unwrap().pow(4).unwrap();
        let b = poch(&ZZ, 1, 8, 8, None, 12).unwrap();
        let direct = &zz(&[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0]).pow(4).unwrap()
            * &zz(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0]).pow(4).unwrap()
            * zz(&[1, 0, 0, 0, 0, 0, 0, 0, -1, 0, 0, 0])
            * zz(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0]).pow(4).unwrap();
        assert_eq!(&a * &b, direct);
        assert_eq!((&a * &b).coefficient(2).unwrap(), Elem::from(4));
    }

    #[test]
    fn v0_first_values() {
        let t = v0_series(&ZZ, 6).unwrap();
        assert_eq!(t.series(), &zz(&[1, 1, 2, 2, 3, 4]));
        assert_eq!(v0_oracle(6).series(), &zz(&[1, 1, 2, 2, 3, 4]));
        assert_eq!(v0_oracle(1).value(0).unwrap(), Elem::from(1));
    }

    #[test]
    fn v0_oracle_agrees_at_moderate_order() {
        assert_eq!(v0_series(&ZZ, 400).unwrap(), v0_oracle(400));
    }

    #[test]
    fn v0_modular_matches_reduction() {
        let exact = v0_series(&ZZ, 500).unwrap();
        for m in [4u32, 13, 25, 27, 40] {
            let ring = RingTag::modular(m).unwrap();
            let modular = v0_series(&ring, 500).unwrap();
            assert_eq!(modular.series(), &exact.series().reduce_mod(&m.into()).unwrap(), "m = {m}");
        }
    }

    #[test]
    fn sample_residues_mod_forty() {
        let t = v0_series(&RingTag::modular(40u32).unwrap(), 40).unwrap();
        assert_eq!(t.value(13).unwrap().to_i64(), Some(20));
        assert_eq!(t.value(37).unwrap().to_i64(), Some(20));
        let t = v0_series(&RingTag::modular(4u32).unwrap(), 5).unwrap();
        assert_eq!(t.value(4).unwrap().to_i64(), Some(3));
    }

    #[test]
    fn even_part() {
        assert!(even_part_identity_check(1000));
    }
}
