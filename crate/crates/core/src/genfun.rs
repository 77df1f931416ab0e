//! Generating-function identities for extracted subsequences of `v0`,
//! checked coefficientwise after clearing denominators.

use num_bigint::BigInt;

use crate::congruence::V0Cache;
use crate::dissect::{extract, Progression};
use crate::error::VerifyError;
use crate::opmatrix::{CoeffVector, Matrices, VectorTower};
use crate::report::{compare, Check, Witness};
use crate::ring::RingTag;
use crate::series::Series;
use crate::theta::{euler_product, theta_f, theta_phi, theta_psi, v0_series, Monomial};

/// Orders used by [`genfun_identity_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenfunOrders {
    /// Order of the extracted series in the exact identities.
    pub exact: usize,
    /// Order of the extracted series in the vector-tower identities.
    pub tower: usize,
    /// Target order of the extracted series in the mod 27 identities; an
    /// identity whose progression would need `v0` past `MOD27_ORDER_LIMIT` is
    /// checked to a smaller order, stated in its name.
    pub mod27: usize,
}

impl Default for GenfunOrders {
    fn default() -> Self {
        GenfunOrders { exact: 400, tower: 100, mod27: 200 }
    }
}

/// One identity `lhs = rhs`, both sides already multiplied by
/// `multiplier` (and any series factor mentioned in the name).
pub struct Identity {
    pub name: String,
    pub multiplier: Option<i64>,
    pub modulus: Option<u64>,
    pub lhs: Series,
    pub rhs: Series,
}

impl Identity {
    pub fn check(&self) -> Check {
        let order = self.lhs.order().min(self.rhs.order());
        let mut check = Check::new(self.name.clone(), order, compare(&self.lhs, &self.rhs, order));
        check.modulus = self.modulus;
        check.cleared_multiplier = self.multiplier;
        check
    }
}

fn zz() -> RingTag {
    RingTag::Integer
}

fn phi(ring: &RingTag, k: usize, n: usize) -> Series {
    theta_phi(ring, Monomial::pos(k), n)
}

fn phim(ring: &RingTag, k: usize, n: usize) -> Series {
    theta_phi(ring, Monomial::neg(k), n)
}

fn psi(ring: &RingTag, k: usize, n: usize) -> Series {
    theta_psi(ring, k, n)
}

fn f(ring: &RingTag, k: usize, n: usize) -> Series {
    euler_product(ring, k, n)
}

fn fab(ring: &RingTag, a: usize, b: usize, n: usize) -> Series {
    theta_f(ring, Monomial::pos(a), Monomial::pos(b), n)
}

fn pw(s: &Series, k: i64) -> Series {
    s.pow(k).expect("unit constant term")
}

/// `prod f_k^e` over the given `(k, e)` pairs.
fn eta(ring: &RingTag, parts: &[(usize, i64)], n: usize) -> Series {
    parts.iter().fold(Series::one(ring, n), |acc, &(k, e)| &acc * &pw(&f(ring, k, n), e))
}

/// `sum_n v0(a n + b) q^n` to the given order.
fn progression(v0: &Series, a: usize, b: usize, order: usize) -> Series {
    extract(v0, Progression::new(a, b).expect("offset below scale")).expect("within order").truncate(order)
}

/// `2 sum_n v0(a n) q^n - 1`, the form `1/2 + sum_{n>=1}` cleared by 2.
fn half_plus(v0: &Series, a: usize, order: usize) -> Series {
    &progression(v0, a, 0, order).scale(2) - &Series::one(&zz(), order)
}

/// The exact `v0` order the suite needs.
pub fn exact_order_needed(o: GenfunOrders) -> usize {
    let tower = 64 * (4 * o.tower + 1) + 1; // v0(2^6 (4n + 1))
    (32 * o.exact + 5).max(8 * o.exact + 7).max(tower)
}

/// Identities with rational right-hand sides checked over the integers.
pub fn exact_identities(v0: &Series, n: usize) -> Vec<Identity> {
    let r = zz();
    let mut out = Vec::new();
    let mut push = |name: String, multiplier: i64, lhs: Series, rhs: Series| {
        out.push(Identity { name, multiplier: Some(multiplier), modulus: None, lhs, rhs });
    };
    let fm1 = phim(&r, 1, n);

    push(
        format!("1/2 + sum_(n>=1) v0(4n) q^n = phi(q)^2/(2 phi(-q)), to order {n}"),
        2,
        half_plus(v0, 4, n),
        &pw(&phi(&r, 1, n), 2) * &pw(&fm1, -1),
    );
    push(
        format!("1/2 + sum_(n>=1) v0(8n) q^n = (-3 phi(q^2) + 4 phi(q^2)^3/phi(-q)^2)/2, to order {n}"),
        2,
        half_plus(v0, 8, n),
        &phi(&r, 2, n).scale(-3) + &(&pw(&phi(&r, 2, n), 3) * &pw(&fm1, -2)).scale(4),
    );
    push(
        format!("1/2 + sum_(n>=1) v0(16n) q^n = (-3 phi(q) + 4 phi(q)^5/phi(-q)^4)/2, to order {n}"),
        2,
        half_plus(v0, 16, n),
        &phi(&r, 1, n).scale(-3) + &(&pw(&phi(&r, 1, n), 5) * &pw(&fm1, -4)).scale(4),
    );
    push(
        format!("sum v0(8n+4) q^n = 3 psi(q^4) + 16q psi(q^4)^3/phi(-q)^2, to order {n}"),
        1,
        progression(v0, 8, 4, n),
        &psi(&r, 4, n).scale(3) + &(&pw(&psi(&r, 4, n), 3) * &pw(&fm1, -2)).scale(16).shift(1),
    );
    push(
        format!("sum v0(16n+4) q^n = 3 psi(q^2) + 64q psi(q^2)^5/phi(-q)^4, to order {n}"),
        1,
        progression(v0, 16, 4, n),
        &psi(&r, 2, n).scale(3) + &(&pw(&psi(&r, 2, n), 5) * &pw(&fm1, -4)).scale(64).shift(1),
    );
    push(
        format!("sum v0(32n+4) q^n = 3 psi(q) + 512q psi(q)^9/phi(-q)^8, to order {n}"),
        1,
        progression(v0, 32, 4, n),
        &psi(&r, 1, n).scale(3) + &(&pw(&psi(&r, 1, n), 9) * &pw(&fm1, -8)).scale(512).shift(1),
    );

    let even = half_plus(v0, 2, n);
    push(
        format!("1/2 + sum_(n>=1) v0(2n) q^n = f2^8/(2 f1^4 f4^3), to order {n}"),
        2,
        even.clone(),
        eta(&r, &[(2, 8), (1, -4), (4, -3)], n),
    );
    push(
        format!("sum v0(8n+2) q^n = 2 f2^4 f4^5/(f1^6 f8^2), to order {n}"),
        1,
        progression(v0, 8, 2, n),
        eta(&r, &[(2, 4), (4, 5), (1, -6), (8, -2)], n).scale(2),
    );
    push(
        format!("sum v0(8n+6) q^n = 4 f2^2 f4^4/f1^5 (original form), to order {n}"),
        1,
        progression(v0, 8, 6, n),
        eta(&r, &[(2, 2), (4, 4), (1, -5)], n).scale(4),
    );
    push(
        format!("sum v0(8n+6) q^n = 4 f2^6 f8^2/(f1^6 f4) (corrected), to order {n}"),
        1,
        progression(v0, 8, 6, n),
        eta(&r, &[(2, 6), (8, 2), (1, -6), (4, -1)], n).scale(4),
    );
    push(
        format!("2 sum v0(2n) q^(2n) - 1 = (-q^2;q^4)^4 (q^8;q^8), to order {}", 2 * n),
        1,
        {
            let v = v0.truncate(2 * n);
            &v.gather(2 * n, |i| (i % 2 == 0).then_some(i)).scale(2) - &Series::one(&r, 2 * n)
        },
        {
            let a = crate::theta::pochhammer(&r, Monomial::neg(2), Monomial::pos(4), None, 2 * n);
            let b = crate::theta::pochhammer(&r, Monomial::pos(8), Monomial::pos(8), None, 2 * n);
            &pw(&a, 4) * &b
        },
    );
    out
}

/// The closed form `1/2 + sum v0(2n) q^n = f2/(2 f1 f4^3)` for the even part
/// is expected to break at `q^1`; the check passes when the first
/// disagreement is exactly there.
pub fn even_part_closed_form_discrepancy(v0: &Series, n: usize) -> Check {
    let lhs = half_plus(v0, 2, n);
    let rhs = eta(&zz(), &[(2, 1), (1, -1), (4, -3)], n);
    let failure = match compare(&lhs, &rhs, n) {
        Some(w) if w.n == 1 => None,
        Some(w) => Some(Witness::new(w.n, "first disagreement at q^1", format!("first disagreement at q^{}", w.n))),
        None => Some(Witness::new(0u64, "a disagreement at q^1", "no disagreement")),
    };
    Check::new(
        format!("closed form 1/2 + sum v0(2n) q^n = f2/(2 f1 f4^3) disagrees first at q^1, to order {n}"),
        n,
        failure,
    )
    .with_multiplier(2)
}

/// `sum_j c_j first ratio^(j-1)` scaled by `2^e` so all coefficients are
/// integers.
fn tower_sum(v: &CoeffVector, e: u32, first: &Series, ratio: &Series) -> Series {
    let mut acc = Series::zero(&zz(), first.order());
    let mut term = first.clone();
    for (j, c) in v.entries().iter().enumerate() {
        if j > 0 {
            term = &term * ratio;
        }
        let c: BigInt = c.scaled_by_pow2(e).expect("exponent covers every entry");
        acc = &acc + &term.scale_elem(&c.into()).expect("integer scalar");
    }
    acc
}

/// The four tower identities for one `α`, each cleared by `2^e` with `e`
/// the largest denominator exponent (at least 1 where a `1/2` appears).
pub fn tower_identities(v0: &Series, alpha: u32, n: usize, tower: &mut VectorTower) -> Vec<Identity> {
    let r = zz();
    let a = alpha as usize;
    let fm1 = phim(&r, 1, n);
    let s = 1usize << (2 * alpha + 2);
    let mut out = Vec::new();

    let x_odd = tower.x(2 * a - 1);
    let e = x_odd.max_exponent().max(1);
    let lhs = &progression(v0, s, 0, n).scale(1 << e) - &Series::constant(&r, n, 1 << (e - 1));
    let first = phi(&r, 1, n);
    let ratio = &pw(&phi(&r, 1, n), 4) * &pw(&fm1, -4);
    out.push(Identity {
        name: format!(
            "1/2 + sum_(n>=1) v0({s}n) q^n = sum_j x[{},j] phi(q)^(4j-3)/phi(-q)^(4j-4), to order {n}",
            2 * a - 1
        ),
        multiplier: Some(1 << e),
        modulus: None,
        lhs,
        rhs: tower_sum(&x_odd, e, &first, &ratio),
    });

    let x_even = tower.x(2 * a);
    let e = x_even.max_exponent().max(1);
    let lhs = &progression(v0, 2 * s, 0, n).scale(1 << e) - &Series::constant(&r, n, 1 << (e - 1));
    let first = phi(&r, 2, n);
    let ratio = &pw(&phi(&r, 2, n), 2) * &pw(&fm1, -2);
    out.push(Identity {
        name: format!(
            "1/2 + sum_(n>=1) v0({}n) q^n = sum_j x[{},j] phi(q^2)^(2j-1)/phi(-q)^(2j-2), to order {n}",
            2 * s,
            2 * a
        ),
        multiplier: Some(1 << e),
        modulus: None,
        lhs,
        rhs: tower_sum(&x_even, e, &first, &ratio),
    });

    let y = tower.y(a);
    let e = y.max_exponent();
    let lhs = progression(v0, 2 * s, s, n).scale(1 << e);
    let first = psi(&r, 4, n);
    let ratio = (&pw(&psi(&r, 4, n), 2) * &pw(&fm1, -2)).shift(1);
    out.push(Identity {
        name: format!(
            "sum v0({s}(2n+1)) q^n = sum_j y[{a},j] q^(j-1) psi(q^4)^(2j-1)/phi(-q)^(2j-2), to order {n}"
        ),
        multiplier: Some(1 << e),
        modulus: None,
        lhs,
        rhs: tower_sum(&y, e, &first, &ratio),
    });

    let z = tower.z(a);
    let e = z.max_exponent();
    let lhs = progression(v0, 4 * s, s, n).scale(1 << e);
    let first = psi(&r, 2, n);
    let ratio = (&pw(&psi(&r, 2, n), 4) * &pw(&fm1, -4)).shift(1);
    out.push(Identity {
        name: format!(
            "sum v0({s}(4n+1)) q^n = sum_j z[{a},j] q^(j-1) psi(q^2)^(4j-3)/phi(-q)^(4j-4), to order {n}"
        ),
        multiplier: Some(1 << e),
        modulus: None,
        lhs,
        rhs: tower_sum(&z, e, &first, &ratio),
    });
    out
}

/// A mod 27 identity `sum v0(a n + b) q^n = rhs`; the right side is built
/// by `rhs` at the order actually used.
struct Mod27 {
    scale: usize,
    offset: usize,
    lhs_text: String,
    rhs_text: &'static str,
    rhs: fn(&RingTag, usize) -> Series,
}

fn mod27_identities() -> Vec<Mod27> {
    let m = |scale: usize, offset: usize, lhs_text: &str, rhs_text: &'static str, rhs: fn(&RingTag, usize) -> Series| Mod27 {
        scale,
        offset,
        lhs_text: lhs_text.to_string(),
        rhs_text,
        rhs,
    };
    vec![
        m(96, 4, "v0(96n+4)", "3 f(q,q^2)", |r, n| fab(r, 1, 2, n).scale(3)),
        m(96, 36, "v0(96n+36)", "3 psi(q^3) - phi(-q^3) f2^9/f1^9", |r, n| {
            &psi(r, 3, n).scale(3) - &(&phim(r, 3, n) * &eta(r, &[(2, 9), (1, -9)], n))
        }),
        m(288, 36, "v0(96(3n)+36)", "2 f2^2/f1 - 9q f2^3 f6^5/(f1^6 f3)", |r, n| {
            &eta(r, &[(2, 2), (1, -1)], n).scale(2) - &eta(r, &[(2, 3), (6, 5), (1, -6), (3, -1)], n).scale(9).shift(1)
        }),
        m(288, 36, "v0(96(3n)+36)", "2 psi(q) - 9q psi(q^9)", |r, n| {
            &psi(r, 1, n).scale(2) - &psi(r, 9, n).scale(9).shift(1)
        }),
        m(864, 36, "v0(9(96n+4))", "2 f(q,q^2) (K=2: p=3, alpha=1)", |r, n| fab(r, 1, 2, n).scale(2)),
        m(864, 324, "v0(9(96n+36))", "-7 psi(q^3)", |r, n| psi(r, 3, n).scale(-7)),
        m(2592, 324, "v0(81(32n+4))", "-7 psi(q)", |r, n| psi(r, 1, n).scale(-7)),
        m(9 * 2592, 9 * 324, "v0(3^2 81(32n+4))", "-7 psi(q) (p=3, alpha=1)", |r, n| psi(r, 1, n).scale(-7)),
        m(25 * 2592, 25 * 324, "v0(5^2 81(32n+4))", "-7 psi(q) (p=5, alpha=1)", |r, n| psi(r, 1, n).scale(-7)),
        m(7776, 324, "v0(81(96n+4))", "-7 f(q,q^2) (alpha=0; also K=-7: p=3, alpha=2)", |r, n| {
            fab(r, 1, 2, n).scale(-7)
        }),
        m(2400, 100, "v0(5^2(96n+4))", "3 f(q,q^2) (K=3: p1=5, alpha=1)", |r, n| fab(r, 1, 2, n).scale(3)),
        m(4704, 196, "v0(7^2(96n+4))", "3 f(q,q^2) (K=3: p1=7, alpha=1)", |r, n| fab(r, 1, 2, n).scale(3)),
        m(480, 100, "v0(5(96n+20))", "3 f(q^5,q^10) (K=3, p1=5)", |r, n| fab(r, 5, 10, n).scale(3)),
        m(672, 196, "v0(7(96n+28))", "3 f(q^7,q^14) (K=3, p1=7)", |r, n| fab(r, 7, 14, n).scale(3)),
        m(4320, 900, "v0(9 5(96n+20))", "2 f(q^5,q^10) (K=2: p=3, alpha=1, p1=5)", |r, n| fab(r, 5, 10, n).scale(2)),
        m(38880, 8100, "v0(81 5(96n+20))", "-7 f(q^5,q^10) (K=-7: p=3, alpha=2, p1=5)", |r, n| {
            fab(r, 5, 10, n).scale(-7)
        }),
    ]
}

/// Longest `v0` table built for the mod 27 identities.
pub const MOD27_ORDER_LIMIT: usize = 1_600_000;

/// The extracted order actually used for a progression: the target, or
/// less when `v0` would be needed past `MOD27_ORDER_LIMIT`.
fn feasible_order(scale: usize, offset: usize, target: usize) -> usize {
    let limit = MOD27_ORDER_LIMIT;
    target.min((limit - offset - 1) / scale + 1)
}

pub fn mod27_checks(target: usize, cache: &V0Cache) -> Result<Vec<Check>, VerifyError> {
    let ids = mod27_identities();
    let requests: Vec<(u64, u64)> = ids
        .iter()
        .map(|id| {
            let n = feasible_order(id.scale, id.offset, target);
            (27, (id.scale * (n - 1) + id.offset + 1) as u64)
        })
        .collect();
    cache.prepare(&requests)?;
    let ring = RingTag::modular(27u32).expect("valid modulus");
    let mut out = Vec::new();
    for id in ids {
        let n = feasible_order(id.scale, id.offset, target);
        let v0 = cache.residues(27, (id.scale * (n - 1) + id.offset + 1) as u64)?;
        let vals: Vec<i64> = (0..n).map(|i| v0.get(id.scale * i + id.offset) as i64).collect();
        let lhs = Series::from_i64s(&ring, &vals)?;
        let ident = Identity {
            name: format!("sum {} q^n = {} (mod 27), to order {n}", id.lhs_text, id.rhs_text),
            multiplier: None,
            modulus: Some(27),
            lhs,
            rhs: (id.rhs)(&ring, n),
        };
        out.push(ident.check());
    }
    Ok(out)
}

/// Every generating-function identity, at the given orders.
pub fn genfun_identity_suite(o: GenfunOrders, cache: &V0Cache) -> Result<Vec<Check>, VerifyError> {
    let v0 = v0_series(&zz(), exact_order_needed(o))?.into_series();
    let mut out: Vec<Check> = exact_identities(&v0, o.exact).iter().map(Identity::check).collect();
    out.push(even_part_closed_form_discrepancy(&v0, o.exact));
    let mut tower = VectorTower::new(Matrices::shared());
    for alpha in 1..=2 {
        out.extend(tower_identities(&v0, alpha, o.tower, &mut tower).iter().map(Identity::check));
    }
    out.extend(mod27_checks(o.mod27, cache)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes_except_the_original_8n_plus_6_form() {
        let o = GenfunOrders { exact: 120, tower: 40, mod27: 10 };
        let checks = genfun_identity_suite(o, &V0Cache::default()).unwrap();
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        assert_eq!(failed.len(), 1, "{failed:?}");
        assert!(failed[0].contains("original form"));
        let original = checks.iter().find(|c| c.name.contains("original form")).unwrap();
        assert_eq!(original.first_failure.as_ref().unwrap().n, 1);
    }

    #[test]
    fn feasible_orders() {
        assert_eq!(feasible_order(96, 4, 200), 200);
        assert_eq!(feasible_order(2592, 324, 200), 200);
        assert_eq!(feasible_order(25 * 2592, 25 * 324, 200), 25);
    }
}
