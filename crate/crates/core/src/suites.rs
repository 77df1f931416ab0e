//! Named verification suites, each producing a [`Report`].

use std::time::Instant;

use num_bigint::BigInt;

use crate::congruence::{check_claims, theorem_suite, V0Cache, DEFAULT_MEM_CAP, THEOREM_SUITES};
use crate::dissect::{f12_dissection, psi_dissection, triangular_coefficient_properties_detail};
use crate::error::VerifyError;
use crate::genfun::{exact_identities, genfun_identity_suite, GenfunOrders, Identity};
use crate::opmatrix::{
    band_checks, displayed_huffing_images, huffing_image, quadratic_relations, valuation_lemma_suite, HuffingFamily,
    MatrixName, Matrices, ValuationRanges, VectorTower, M_FIRST_ROWS,
};
use crate::report::{compare, Check, Report, Witness};
use crate::ring::{Dyadic, RingTag};
use crate::series::Series;
use crate::theta::{
    euler_product, phi_product, psi_product, theta_f, theta_f_product, theta_phi, theta_psi, v0_series, Monomial,
};

/// Default truncation order of the identity and Huffing suites.
pub const DEFAULT_IDENTITY_ORDER: usize = 400;

/// Every suite name accepted by [`run_suite`], `all` first.
pub fn suite_names() -> Vec<&'static str> {
    let mut names = vec!["all", "identities", "huffing", "matrices", "valuations", "dissections", "genfun"];
    names.extend(THEOREM_SUITES);
    names
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Overrides the suite's truncation order where it has one.
    pub order: Option<usize>,
    pub mem_cap: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { order: None, mem_cap: DEFAULT_MEM_CAP }
    }
}

impl SuiteOptions {
    pub fn with_order(order: usize) -> SuiteOptions {
        SuiteOptions { order: Some(order), ..SuiteOptions::default() }
    }
}

fn zz() -> RingTag {
    RingTag::Integer
}

fn pw(s: &Series, k: i64) -> Series {
    s.pow(k).expect("unit constant term")
}

fn eta(ring: &RingTag, parts: &[(usize, i64)], n: usize) -> Series {
    parts.iter().fold(Series::one(ring, n), |acc, &(k, e)| &acc * &pw(&euler_product(ring, k, n), e))
}

fn equal(name: String, order: usize, lhs: &Series, rhs: &Series) -> Check {
    Check::new(name, order, compare(lhs, rhs, order))
}

fn vanishes(name: String, order: usize, s: &Series) -> Check {
    equal(name, order, s, &Series::zero(&s.ring(), order))
}

fn modular(m: u32) -> RingTag {
    RingTag::modular(m).expect("valid modulus")
}

/// Theta identities, the triple product, product forms, 3-dissections,
/// quadratic relations and the congruences behind the mod 13 and mod 25
/// families.
pub fn identity_checks(n: usize) -> Vec<Check> {
    let r = zz();
    let phi = |k| theta_phi(&r, Monomial::pos(k), n);
    let phim = |k| theta_phi(&r, Monomial::neg(k), n);
    let psi = |k| theta_psi(&r, k, n);
    let mut out = Vec::new();

    out.push(equal(format!("phi(q) phi(-q) = phi(-q^2)^2, to order {n}"), n, &(&phi(1) * &phim(1)), &pw(&phim(2), 2)));
    out.push(equal(
        format!("phi(-q) = phi(q^4) - 2q psi(q^8), to order {n}"),
        n,
        &phim(1),
        &(&phi(4) - &psi(8).scale(2).shift(1)),
    ));
    out.push(equal(
        format!("phi(-q)^2 = phi(q^2)^2 - 4q psi(q^4)^2, to order {n}"),
        n,
        &pw(&phim(1), 2),
        &(&pw(&phi(2), 2) - &pw(&psi(4), 2).scale(4).shift(1)),
    ));
    out.push(equal(
        format!("phi(q^4)^2 - 4q^2 psi(q^8)^2 = phi(-q^2)^2, to order {n}"),
        n,
        &(&pw(&phi(4), 2) - &pw(&psi(8), 2).scale(4).shift(2)),
        &pw(&phim(2), 2),
    ));

    let mut jtp = None;
    'grid: for ea in 1..=4 {
        for eb in 1..=4 {
            for (sa, sb) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let a = Monomial::new(sa, ea).expect("exponent >= 1");
                let b = Monomial::new(sb, eb).expect("exponent >= 1");
                if let Some(w) = compare(&theta_f(&r, a, b, n), &theta_f_product(&r, a, b, n), n) {
                    let show = |m: Monomial| format!("{}q^{}", if m.sign() < 0 { "-" } else { "" }, m.exponent());
                    jtp = Some(Witness::new(w.n, format!("f({}, {}) product side {}", show(a), show(b), w.expected), w.actual));
                    break 'grid;
                }
            }
        }
    }
    out.push(Check::new(
        format!("f(a,b) = (-a;ab)(-b;ab)(ab;ab) for a, b in {{q^i, -q^i : 1<=i<=4}}, to order {n}"),
        n,
        jtp,
    ));
    out.push(equal(format!("psi(q) = (q^2;q^2)/(q;q^2), to order {n}"), n, &psi(1), &psi_product(&r, n)));
    out.push(equal(format!("phi(q) = (-q;q^2)^2 (q^2;q^2), to order {n}"), n, &phi(1), &phi_product(&r, n)));

    out.push(equal(
        format!("psi(q) = f(q^3,q^6) + q psi(q^9), to order {n}"),
        n,
        &psi(1),
        &(&theta_f(&r, Monomial::pos(3), Monomial::pos(6), n) + &psi(9).shift(1)),
    ));
    out.push(equal(
        format!("phi(-q) = phi(-q^9) - 2q f(-q^3,-q^15), to order {n}"),
        n,
        &phim(1),
        &(&phim(9) - &theta_f(&r, Monomial::neg(3), Monomial::neg(15), n).scale(2).shift(1)),
    ));
    let lhs = eta(&r, &[(2, 3), (3, 8), (9, 1), (18, 1)], n);
    let rhs = &eta(&r, &[(1, 3)], n)
        * &(&(&eta(&r, &[(6, 1), (3, 7), (9, 1), (18, 1)], n) + &eta(&r, &[(6, 4), (9, 6)], n).scale(3).shift(1))
            + &(&eta(&r, &[(6, 3), (9, 3), (18, 3), (3, 1)], n).scale(6).shift(2)
                + &eta(&r, &[(6, 2), (18, 6), (3, 2)], n).scale(12).shift(3)));
    out.push(equal(
        format!("f2^3/f1^3 = f6/f3 + 3q f6^4 f9^5/(f3^8 f18) + 6q^2 f6^3 f9^2 f18^2/f3^7 + 12q^3 f6^2 f18^5/(f3^6 f9), cleared by f1^3 f3^8 f9 f18, to order {n}"),
        n,
        &lhs,
        &rhs,
    ));

    for (name, s) in quadratic_relations(n) {
        out.push(vanishes(format!("{name}, to order {n}"), n, &s));
    }

    let m13 = modular(13);
    out.push(
        equal(
            format!("f1^13 = f13 (mod 13), to order {n}"),
            n,
            &eta(&m13, &[(1, 13)], n),
            &eta(&m13, &[(13, 1)], n),
        )
        .with_modulus(Some(13)),
    );
    let quotient = &pw(&psi(1), 9) * &pw(&phim(1), -8);
    out.push(equal(
        format!("psi(q)^9/phi(-q)^8 = f2^26/f1^25, to order {n}"),
        n,
        &quotient,
        &eta(&r, &[(2, 26), (1, -25)], n),
    ));
    out.push(
        equal(
            format!("f2^26/f1^25 = f1 f26^2/f13^2 (mod 13), to order {n}"),
            n,
            &eta(&m13, &[(2, 26), (1, -25)], n),
            &eta(&m13, &[(1, 1), (26, 2), (13, -2)], n),
        )
        .with_modulus(Some(13)),
    );
    let m25 = modular(25);
    out.push(
        equal(
            format!("f2^26/f1^25 = f2 f10^5/f5^5 (mod 25), to order {n}"),
            n,
            &eta(&m25, &[(2, 26), (1, -25)], n),
            &eta(&m25, &[(2, 1), (10, 5), (5, -5)], n),
        )
        .with_modulus(Some(25)),
    );
    out
}

/// Huffing images of the four quotient families for powers `1..=8`, the
/// displayed images, and the extracted identities they lead to.
pub fn huffing_checks(n: usize) -> Vec<Check> {
    let mut out = Vec::new();
    for family in HuffingFamily::ALL {
        for i in 1..=8 {
            out.push(Check::new(format!("{}, to order {n}", family.describe(i)), n, huffing_image(family, i, n)));
        }
    }
    for (name, lhs, rhs) in displayed_huffing_images(n) {
        out.push(equal(format!("{name}, to order {n}"), n, &lhs, &rhs));
    }
    let v0 = v0_series(&zz(), 32 * n + 5).expect("positive order").into_series();
    out.extend(exact_identities(&v0, n).iter().filter(|id| id.name.contains("n+4) q^n")).map(Identity::check));
    out
}

fn row_check(name: MatrixName, row: usize, expected: &[i64]) -> Check {
    let mats = Matrices::shared();
    let mut failure = None;
    for (j, &e) in expected.iter().enumerate() {
        let actual = mats.entry(name, row, j + 1);
        if actual != BigInt::from(e) {
            failure = Some(Witness::new(j + 1, e, actual));
            break;
        }
    }
    let shown: Vec<String> = expected.iter().map(i64::to_string).collect();
    Check::new(format!("matrix {name} row {row} = ({})", shown.join(", ")), expected.len(), failure)
}

fn vector_check(tower: &mut VectorTower, alpha: usize, expected: &[(i64, u32)]) -> Check {
    let x = tower.x(alpha);
    let want: Vec<Dyadic> = expected.iter().map(|&(v, e)| Dyadic::new(v, e)).collect();
    let shown: Vec<String> = want.iter().map(Dyadic::to_string).collect();
    let failure = if x.entries() == want.as_slice() {
        None
    } else {
        let k = (0..want.len().max(x.support())).find(|&k| x.entry(k + 1) != *want.get(k).unwrap_or(&Dyadic::zero()));
        let k = k.unwrap_or(0);
        Some(Witness::new(k + 1, want.get(k).cloned().unwrap_or_else(Dyadic::zero), x.entry(k + 1)))
    };
    Check::new(format!("x{alpha} = ({}), support {}", shown.join(", "), want.len()), want.len(), failure)
}

/// Generated matrix entries against the reference rows, structure of the
/// generated matrices, and the first vectors of the tower.
pub fn matrix_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (i, row) in M_FIRST_ROWS.iter().enumerate() {
        out.push(row_check(MatrixName::M, i + 1, row));
    }
    out.push(row_check(MatrixName::N, 1, &[2, 0]));
    out.push(row_check(MatrixName::N, 2, &[1, 8]));
    out.push(row_check(MatrixName::P, 1, &[4, 0]));
    out.push(row_check(MatrixName::P, 2, &[1, 32]));
    out.push(row_check(MatrixName::A, 1, &[1, 0, 0]));
    out.push(row_check(MatrixName::B, 1, &[1, 0, 0]));
    out.push(row_check(MatrixName::B, 2, &[0, 1, 0]));
    out.push(row_check(MatrixName::D, 1, &[1, 0, 0]));
    out.push(row_check(MatrixName::D, 2, &[0, 4, 0]));
    out.extend(band_checks(40));

    let mut tower = VectorTower::new(Matrices::shared());
    out.push(vector_check(&mut tower, 1, &[(-3, 1), (2, 0)]));
    out.push(vector_check(&mut tower, 2, &[(33, 1), (-240, 0), (864, 0), (-1152, 0), (512, 0)]));
    out.push(vector_check(&mut tower, 3, &[(33, 1), (-1104, 0), (5696, 0), (-8704, 0), (4096, 0)]));
    let mut failure = None;
    for alpha in 1..=8 {
        let x = tower.x(alpha);
        if let Some(k) = x.entries().iter().skip(1).position(|d| !d.is_integer()) {
            failure = Some(Witness::new(alpha, format!("integer x{alpha}[{}]", k + 2), x.entry(k + 2)));
            break;
        }
        if !x.entries().iter().any(|d| !d.is_zero()) {
            failure = Some(Witness::new(alpha, "a nonzero vector", "zero vector"));
            break;
        }
    }
    out.push(Check::new("x[a,k] is an integer for k >= 2, 1 <= a <= 8", 8, failure));
    out
}

/// Dissections of `psi` and `f(q,q^2)` and the coefficient properties of
/// `psi` that follow from them.
pub fn dissection_checks(order: Option<usize>) -> Vec<Check> {
    let (psi_n, f12_n) = order.map_or((500, 600), |n| (n, n));
    let mut out = Vec::new();
    for p in [3, 5, 7] {
        out.push(Check::new(
            format!("psi(q) = sum_(0<=k<=(p-3)/2) q^((k^2+k)/2) f(q^((p^2+(2k+1)p)/2), q^((p^2-(2k+1)p)/2)) + q^((p^2-1)/8) psi(q^(p^2)) at p={p}, to order {psi_n}"),
            psi_n,
            psi_dissection(p, psi_n),
        ));
    }
    for p1 in [5, 7] {
        out.push(Check::new(
            format!("f(q,q^2) = sum_(|k|<=(p-1)/2, 6k+1 != +-p) q^((3k^2+k)/2) f(q^((3p^2+(6k+1)p)/2), q^((3p^2-(6k+1)p)/2)) + q^((p^2-1)/24) f(q^(p^2), q^(2p^2)) at p={p1}, to order {f12_n}"),
            f12_n,
            f12_dissection(p1, f12_n),
        ));
    }
    for p in [3, 5] {
        for alpha in 0..=1 {
            out.push(Check::new(
                format!("psi coefficients a(n) at p={p}, alpha={alpha}: a(p^(2a) n + (p^(2a)-1)/8) = a(n) (interpreted with the factor n restored) and the vanishing progressions, for n < 500"),
                500,
                triangular_coefficient_properties_detail(p, alpha, 500),
            ));
        }
    }
    out
}

fn theorem_checks(names: &[&str], cache: &V0Cache) -> Result<Vec<Check>, VerifyError> {
    let mut claims = Vec::new();
    for name in names {
        claims.extend(theorem_suite(name)?);
    }
    check_claims(&claims, cache)
}

fn genfun_orders(order: Option<usize>) -> GenfunOrders {
    let mut o = GenfunOrders::default();
    if let Some(n) = order {
        o.exact = n;
    }
    o
}

fn suite_checks(name: &str, options: SuiteOptions, cache: &V0Cache) -> Result<Vec<Check>, VerifyError> {
    let n = options.order.unwrap_or(DEFAULT_IDENTITY_ORDER);
    if n == 0 {
        return Err(crate::error::SeriesError::Empty.into());
    }
    Ok(match name {
        "identities" => identity_checks(n),
        "huffing" => huffing_checks(n),
        "matrices" => matrix_checks(),
        "valuations" => valuation_lemma_suite(ValuationRanges::default()),
        "dissections" => dissection_checks(options.order),
        "genfun" => genfun_identity_suite(genfun_orders(options.order), cache)?,
        t if THEOREM_SUITES.contains(&t) => theorem_checks(&[t], cache)?,
        other => return Err(VerifyError::UnknownSuite(other.to_string())),
    })
}

/// Runs one named suite, or every suite for `all`.
pub fn run_suite(name: &str, options: SuiteOptions) -> Result<Report, VerifyError> {
    let cache = V0Cache::new(options.mem_cap);
    run_suite_with(name, options, &cache)
}

/// As [`run_suite`], sharing `v0` tables through `cache`.
pub fn run_suite_with(name: &str, options: SuiteOptions, cache: &V0Cache) -> Result<Report, VerifyError> {
    let start = Instant::now();
    if name == "all" {
        let mut reports = Vec::new();
        for sub in suite_names().into_iter().skip(1).filter(|s| !THEOREM_SUITES.contains(s)) {
            reports.push(run_suite_with(sub, options, cache)?);
        }
        let t = Instant::now();
        let checks = theorem_checks(&THEOREM_SUITES, cache)?;
        reports.push(Report::new("theorems", checks, t.elapsed().as_millis() as u64));
        let mut merged = Report::merge("all", reports);
        merged.elapsed_ms = start.elapsed().as_millis() as u64;
        return Ok(merged);
    }
    let checks = suite_checks(name, options, cache)?;
    Ok(Report::new(name, checks, start.elapsed().as_millis() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_pass_at_small_order() {
        let failed: Vec<String> = identity_checks(120).into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn huffing_pass_at_small_order() {
        let failed: Vec<String> = huffing_checks(80).into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn matrices_pass() {
        let failed: Vec<String> = matrix_checks().into_iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert_eq!(run_suite("nope", SuiteOptions::default()).unwrap_err(), VerifyError::UnknownSuite("nope".into()));
    }

    #[test]
    fn every_suite_name_is_known() {
        for name in suite_names() {
            assert!(name == "all" || name == "genfun" || THEOREM_SUITES.contains(&name) || {
                suite_checks(name, SuiteOptions::with_order(30), &V0Cache::default()).is_ok()
            });
        }
    }
}
