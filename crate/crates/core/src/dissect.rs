//! The Huffing operator, arithmetic-progression extraction, and verifiers
//! for the p-dissections of `psi(q)` and `f(q, q^2)`.

use crate::error::SeriesError;
use crate::numtheory::legendre;
use crate::report::{compare, Witness};
use crate::ring::RingTag;
use crate::series::Series;
use crate::theta::{theta_f, theta_psi, Monomial};

/// The index set `{p n + r : n >= 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Progression {
    modulus: usize,
    residue: usize,
}

impl Progression {
    pub fn new(modulus: usize, residue: usize) -> Result<Progression, SeriesError> {
        if modulus == 0 || residue >= modulus {
            return Err(SeriesError::InvalidArgument(format!(
                "progression {modulus}n + {residue} needs 0 <= residue < modulus"
            )));
        }
        Ok(Progression { modulus, residue })
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn residue(&self) -> usize {
        self.residue
    }
}

impl std::fmt::Display for Progression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}n+{}", self.modulus, self.residue)
    }
}

/// `H(sum a_n q^n) = sum a_{2n} q^{2n}`.
pub fn huffing(s: &Series) -> Series {
    s.gather(s.order(), |i| (i % 2 == 0).then_some(i))
}

/// `sum_n a_{pn+r} q^n`, of order `floor((N - 1 - r) / p) + 1`.
pub fn extract(s: &Series, prog: Progression) -> Result<Series, SeriesError> {
    let (p, r) = (prog.modulus, prog.residue);
    if r >= s.order() {
        return Err(SeriesError::ResidueBeyondOrder { residue: r, order: s.order() });
    }
    let order = (s.order() - 1 - r) / p + 1;
    Ok(s.gather(order, |n| Some(p * n + r)))
}

/// Places `parts[r]` on the exponents `p n + r` and sums; the inverse of
/// extracting every residue class.
pub fn interleave(parts: &[Series], order: usize) -> Result<Series, SeriesError> {
    let p = parts.len();
    let first = parts.first().ok_or(SeriesError::Empty)?;
    let mut acc = Series::zero(&first.ring(), order);
    for (r, part) in parts.iter().enumerate() {
        let needed = order.saturating_sub(r).div_ceil(p);
        if part.order() < needed {
            return Err(SeriesError::BeyondOrder { index: needed - 1, order: part.order() });
        }
        let placed = part.gather(order, |i| (i >= r && (i - r) % p == 0).then(|| (i - r) / p));
        acc = acc.try_add(&placed)?;
    }
    Ok(acc)
}

fn f_pos(a: usize, b: usize, order: usize) -> Series {
    theta_f(&RingTag::Integer, Monomial::pos(a), Monomial::pos(b), order)
}

/// Compares the two sides of the `psi(q)` p-dissection, then the residue
/// disjointness of the leading exponents. `None` means both hold.
pub fn psi_dissection(p: usize, order: usize) -> Option<Witness> {
    assert!(p % 2 == 1 && p >= 3, "p must be an odd prime");
    let zz = RingTag::Integer;
    let lhs = theta_psi(&zz, 1, order);
    let tail_exp = (p * p - 1) / 8;
    let mut rhs = Series::zero(&zz, order);
    if tail_exp < order {
        rhs = &rhs + &theta_psi(&zz, p * p, order).shift(tail_exp);
    }
    for k in 0..=(p - 3) / 2 {
        let lead = (k * k + k) / 2;
        let a = (p * p + (2 * k + 1) * p) / 2;
        let b = (p * p - (2 * k + 1) * p) / 2;
        rhs = &rhs + &f_pos(a, b, order).shift(lead);
    }
    if let Some(w) = compare(&lhs, &rhs, order) {
        return Some(w);
    }
    for k in 0..=(p - 3) / 2 {
        let lead = (k * k + k) / 2 % p;
        if lead == tail_exp % p {
            return Some(Witness::new(k, format!("residue != {}", tail_exp % p), format!("residue {lead}")));
        }
    }
    None
}

pub fn psi_dissection_check(p: usize, order: usize) -> bool {
    psi_dissection(p, order).is_none()
}

/// The indices `k` in `-(p1-1)/2 ..= (p1-1)/2` kept by the `f(q, q^2)`
/// dissection: those with `6k + 1 != ±p1`.
pub fn f12_dissection_indices(p1: i64) -> Vec<i64> {
    let h = (p1 - 1) / 2;
    (-h..=h).filter(|k| 6 * k + 1 != p1 && 6 * k + 1 != -p1).collect()
}

/// Compares the two sides of the `f(q, q^2)` p1-dissection, then checks
/// that no kept leading exponent falls in the class of the tail term.
pub fn f12_dissection(p1: usize, order: usize) -> Option<Witness> {
    assert!(p1 >= 5, "p1 must be a prime >= 5");
    let zz = RingTag::Integer;
    let p = p1 as i64;
    let lhs = f_pos(1, 2, order);
    let tail_exp = ((p * p - 1) / 24) as usize;
    let mut rhs = Series::zero(&zz, order);
    if tail_exp < order {
        rhs = &rhs + &f_pos(p1 * p1, 2 * p1 * p1, order).shift(tail_exp);
    }
    let ks = f12_dissection_indices(p);
    for &k in &ks {
        let lead = ((3 * k * k + k) / 2) as usize;
        let a = ((3 * p * p + (6 * k + 1) * p) / 2) as usize;
        let b = ((3 * p * p - (6 * k + 1) * p) / 2) as usize;
        if lead < order {
            rhs = &rhs + &f_pos(a, b, order).shift(lead);
        }
    }
    if let Some(w) = compare(&lhs, &rhs, order) {
        return Some(w);
    }
    let tail_class = (p * p - 1) / 24 % p;
    for &k in &ks {
        let lead = ((3 * k * k + k) / 2).rem_euclid(p);
        if lead == tail_class {
            return Some(Witness::new(k.unsigned_abs(), format!("residue != {tail_class}"), format!("residue {lead}")));
        }
    }
    None
}

pub fn f12_dissection_check(p1: usize, order: usize) -> bool {
    f12_dissection(p1, order).is_none()
}

/// The three families of statements about `a(n)`, the coefficients of
/// `psi(q)`, for `n < count`:
/// `a(p^{2α} n + (p^{2α} - 1)/8) = a(n)`;
/// `a(p^{2α+2} n + ((8i + p) p^{2α+1} - 1)/8) = 0` for `1 <= i < p`;
/// `a(p^{2α+1} n + ((8j + 1) p^{2α} - 1)/8) = 0` when `(8j + 1 | p) = -1`.
pub fn triangular_coefficient_properties_detail(p: usize, alpha: u32, count: usize) -> Option<Witness> {
    let p2a = p.pow(2 * alpha);
    let order = p2a * p * p * count + p2a * p * p;
    let a = theta_psi(&RingTag::Integer, 1, order);
    let coeff = |n: usize| a.coefficient(n).expect("index within order").to_i64().expect("small coefficient");
    for n in 0..count {
        let idx = p2a * n + (p2a - 1) / 8;
        if coeff(idx) != coeff(n) {
            return Some(Witness::new(idx, coeff(n), coeff(idx)));
        }
    }
    for i in 1..p {
        let off = ((8 * i + p) * p2a * p - 1) / 8;
        for n in 0..count {
            let idx = p2a * p * p * n + off;
            if coeff(idx) != 0 {
                return Some(Witness::new(idx, 0, coeff(idx)));
            }
        }
    }
    for j in 0..p {
        if legendre(8 * j as i64 + 1, p as u64) != -1 {
            continue;
        }
        let off = ((8 * j + 1) * p2a - 1) / 8;
        for n in 0..count {
            let idx = p2a * p * n + off;
            if coeff(idx) != 0 {
                return Some(Witness::new(idx, 0, coeff(idx)));
            }
        }
    }
    None
}

pub fn triangular_coefficient_properties(p: usize, alpha: u32, count: usize) -> bool {
    triangular_coefficient_properties_detail(p, alpha, count).is_none()
}
