//! Congruence claims about `v0` on arithmetic progressions, checked over
//! finite ranges with modular `v0` tables.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::VerifyError;
use crate::numtheory::{
    legendre, pentagonal_indices_below, quadratic_nonresidues, squares_below, triangulars_below,
};
use crate::report::{Check, Witness};
use crate::ring::RingTag;
use crate::theta::v0_series;

/// Default bound on the memory a single `v0` table may use.
pub const DEFAULT_MEM_CAP: u64 = 1 << 30;

/// Largest `v0` order any built-in claim asks for. Instances that would
/// need more are left out of the suites.
pub const DESK_ORDER_LIMIT: u64 = 400_000;

/// What `v0(a n + b) mod m` must be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Zero,
    /// `1` when `n` is a square, else `0`.
    SquareIndicator,
    /// `(-1)^k` when `n = k^2`, else `0`.
    SignedSquareIndicator,
    /// `0` unless `n = k(k+1)/2`, which is left unconstrained.
    ZeroUnlessTriangular,
    /// `0` unless `n = k(3k+1)/2` for an integer `k`, which is left
    /// unconstrained.
    ZeroUnlessPentagonalIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceClaim {
    /// The suite this claim belongs to, shown as a name prefix.
    pub suite: String,
    pub scale: u64,
    pub offset: u64,
    pub modulus: u64,
    pub rule: Rule,
    pub count: u64,
    /// Extra text appended to the generated name.
    pub note: Option<String>,
}

impl CongruenceClaim {
    pub fn new(suite: &str, scale: u64, offset: u64, modulus: u64, rule: Rule, count: u64) -> CongruenceClaim {
        assert!(scale >= 1 && modulus >= 2 && count >= 1);
        CongruenceClaim { suite: suite.to_string(), scale, offset, modulus, rule, count, note: None }
    }

    pub fn zero(suite: &str, scale: u64, offset: u64, modulus: u64, count: u64) -> CongruenceClaim {
        CongruenceClaim::new(suite, scale, offset, modulus, Rule::Zero, count)
    }

    pub fn with_note(mut self, note: &str) -> CongruenceClaim {
        self.note = Some(note.to_string());
        self
    }

    /// The `v0` order the check needs: `a (count - 1) + b + 1`.
    pub fn required_order(&self) -> u64 {
        self.scale * (self.count - 1) + self.offset + 1
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for CongruenceClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.offset == 0 {
            format!("{}n", self.scale)
        } else {
            format!("{}n+{}", self.scale, self.offset)
        };
        let (a, m, c) = (arg, self.modulus, self.count);
        write!(f, "[{}] ", self.suite)?;
        match self.rule {
            Rule::Zero => write!(f, "v0({a}) = 0 (mod {m}) for 0<=n<{c}")?,
            Rule::SquareIndicator => write!(f, "v0({a}) = 1 if n is a square, else 0 (mod {m}) for 0<=n<{c}")?,
            Rule::SignedSquareIndicator => write!(f, "v0({a}) = (-1)^k if n=k^2, else 0 (mod {m}) for 0<=n<{c}")?,
            Rule::ZeroUnlessTriangular => write!(f, "v0({a}) = 0 (mod {m}) unless n is triangular, for 0<=n<{c}")?,
            Rule::ZeroUnlessPentagonalIndex => {
                write!(f, "v0({a}) = 0 (mod {m}) unless n = k(3k+1)/2, for 0<=n<{c}")?
            }
        }
        if let Some(note) = &self.note {
            write!(f, " {note}")?;
        }
        Ok(())
    }
}

/// The residue the rule demands at `n`, or `None` when `n` is exempt.
struct Expectation {
    rule: Rule,
    modulus: u64,
    squares: BTreeSet<u64>,
    exempt: BTreeSet<u64>,
}

impl Expectation {
    fn new(rule: Rule, modulus: u64, count: u64) -> Expectation {
        let exempt = match rule {
            Rule::ZeroUnlessTriangular => triangulars_below(count),
            Rule::ZeroUnlessPentagonalIndex => pentagonal_indices_below(count),
            _ => BTreeSet::new(),
        };
        Expectation { rule, modulus, squares: squares_below(count), exempt }
    }

    fn at(&self, n: u64) -> Option<u64> {
        match self.rule {
            Rule::Zero => Some(0),
            Rule::SquareIndicator => Some(self.squares.contains(&n) as u64 % self.modulus),
            Rule::SignedSquareIndicator => Some(if !self.squares.contains(&n) {
                0
            } else if n.isqrt().is_multiple_of(2) {
                1 % self.modulus
            } else {
                self.modulus - 1
            }),
            Rule::ZeroUnlessTriangular | Rule::ZeroUnlessPentagonalIndex => {
                (!self.exempt.contains(&n)).then_some(0)
            }
        }
    }
}

/// `v0(0..len) mod m`, read from a table kept modulo a multiple of `m`.
#[derive(Clone, Debug)]
pub struct V0Residues {
    values: Arc<Vec<u64>>,
    modulus: u64,
}

impl V0Residues {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn get(&self, n: usize) -> u64 {
        self.values[n] % self.modulus
    }
}

/// Shared `v0` tables. Every power-of-two modulus reads from one table kept
/// modulo `2^63`; other moduli get their own table. A table is regrown
/// when a later request needs a longer prefix.
pub struct V0Cache {
    mem_cap: u64,
    tables: Mutex<HashMap<u64, Arc<Vec<u64>>>>,
}

impl Default for V0Cache {
    fn default() -> Self {
        V0Cache::new(DEFAULT_MEM_CAP)
    }
}

impl V0Cache {
    pub fn new(mem_cap: u64) -> V0Cache {
        V0Cache { mem_cap, tables: Mutex::new(HashMap::new()) }
    }

    pub fn mem_cap(&self) -> u64 {
        self.mem_cap
    }

    pub fn storage_modulus(m: u64) -> u64 {
        if m.is_power_of_two() {
            1 << 63
        } else {
            m
        }
    }

    /// Working memory for a table of the given order: the running term and
    /// the running total.
    pub fn bytes_for(order: u64) -> u64 {
        order.saturating_mul(16)
    }

    fn check_cap(&self, m: u64, order: u64) -> Result<(), VerifyError> {
        let needed = V0Cache::bytes_for(order);
        if needed > self.mem_cap {
            return Err(VerifyError::ResourceCap {
                what: format!("v0 table mod {m} to order {order}"),
                needed,
                cap: self.mem_cap,
            });
        }
        Ok(())
    }

    /// Makes sure every `(modulus, order)` request can be served, building
    /// the missing tables in parallel.
    pub fn prepare(&self, requests: &[(u64, u64)]) -> Result<(), VerifyError> {
        let mut wanted: HashMap<u64, u64> = HashMap::new();
        for &(m, order) in requests {
            self.check_cap(m, order)?;
            let slot = wanted.entry(V0Cache::storage_modulus(m)).or_insert(0);
            *slot = (*slot).max(order);
        }
        let missing: Vec<(u64, u64)> = {
            let tables = self.tables.lock().expect("cache lock");
            wanted
                .into_iter()
                .filter(|(sm, order)| tables.get(sm).is_none_or(|t| (t.len() as u64) < *order))
                .collect()
        };
        let built: Vec<(u64, Arc<Vec<u64>>)> = missing
            .into_par_iter()
            .map(|(sm, order)| {
                let ring = RingTag::modular(sm).expect("modulus >= 2");
                let table = v0_series(&ring, order as usize).expect("positive order");
                let values = table.series().residues().expect("word-sized modulus").to_vec();
                (sm, Arc::new(values))
            })
            .collect();
        let mut tables = self.tables.lock().expect("cache lock");
        for (sm, values) in built {
            let keep = tables.get(&sm).is_some_and(|t| t.len() >= values.len());
            if !keep {
                tables.insert(sm, values);
            }
        }
        Ok(())
    }

    /// `v0 mod m` on `0..order` (or more).
    pub fn residues(&self, m: u64, order: u64) -> Result<V0Residues, VerifyError> {
        assert!(m >= 2, "modulus must be at least 2");
        self.prepare(&[(m, order)])?;
        let tables = self.tables.lock().expect("cache lock");
        let values = tables[&V0Cache::storage_modulus(m)].clone();
        Ok(V0Residues { values, modulus: m })
    }
}

/// Tests the claim pointwise. A failure carries the first offending `n`
/// (the progression index), the demanded residue and the actual one.
pub fn check_claim(claim: &CongruenceClaim, cache: &V0Cache) -> Result<Check, VerifyError> {
    let order = claim.required_order();
    let v0 = cache.residues(claim.modulus, order)?;
    let expect = Expectation::new(claim.rule, claim.modulus, claim.count);
    let mut failure = None;
    for n in 0..claim.count {
        let Some(e) = expect.at(n) else { continue };
        let actual = v0.get((claim.scale * n + claim.offset) as usize);
        if actual != e {
            failure = Some(Witness::new(n, e, actual));
            break;
        }
    }
    Ok(Check::new(claim.name(), order as usize, failure).with_modulus(Some(claim.modulus)))
}

/// Checks a list of claims, preparing all tables first.
pub fn check_claims(claims: &[CongruenceClaim], cache: &V0Cache) -> Result<Vec<Check>, VerifyError> {
    let requests: Vec<(u64, u64)> = claims.iter().map(|c| (c.modulus, c.required_order())).collect();
    cache.prepare(&requests)?;
    claims.par_iter().map(|c| check_claim(c, cache)).collect()
}

pub const THEOREM_SUITES: [&str; 13] =
    ["T2", "C1", "T3", "T4", "C2", "BSS", "Mao", "T6", "T7", "T10", "T8", "T9", "Closing"];

fn pow2(e: u32) -> u64 {
    1u64 << e
}

fn within_desk_scale(c: &CongruenceClaim) -> bool {
    c.required_order() <= DESK_ORDER_LIMIT
}

/// The built-in instantiations of a named theorem family.
pub fn theorem_suite(name: &str) -> Result<Vec<CongruenceClaim>, VerifyError> {
    let z = CongruenceClaim::zero;
    let claims = match name {
        "T2" => vec![
            CongruenceClaim::new(name, 16, 0, 32, Rule::SquareIndicator, 500),
            CongruenceClaim::new(name, 64, 0, 256, Rule::SquareIndicator, 200),
        ],
        "C1" => {
            let mut out = Vec::new();
            for p in [3u64, 5, 7] {
                for r in quadratic_nonresidues(p) {
                    out.push(z(name, 16 * p, 16 * r, 32, 300));
                }
            }
            out
        }
        "T3" => {
            let mut out = Vec::new();
            for alpha in 1..=2u32 {
                // v0(2^{2α+1}(2n+1)) mod 2^{3α}
                out.push(z(name, pow2(2 * alpha + 2), pow2(2 * alpha + 1), pow2(3 * alpha), 300));
            }
            for alpha in 0..=1u32 {
                let s = pow2(2 * alpha + 2);
                out.push(z(name, 4 * s, 3 * s, pow2(3 * alpha + 4), 300));
                out.push(z(name, 8 * s, 7 * s, pow2(3 * alpha + 6), 300));
                out.push(z(name, 8 * s, 5 * s, pow2(3 * alpha + 6), 300));
            }
            out
        }
        "T4" => {
            let mut out = Vec::new();
            for alpha in 0..=1u32 {
                for (p, beta) in [(1u64, 0u32), (3, 1), (5, 1)] {
                    let s = pow2(2 * alpha + 2) * p.pow(2 * beta);
                    out.push(CongruenceClaim::new(
                        name,
                        8 * s,
                        s,
                        pow2(3 * alpha + 9),
                        Rule::ZeroUnlessTriangular,
                        100,
                    ));
                }
            }
            out
        }
        "C2" => {
            let mut out = Vec::new();
            for alpha in 0..=1u32 {
                for p in [3u64, 5] {
                    for beta in 0..=1u32 {
                        let m = pow2(3 * alpha + 9);
                        let s = pow2(2 * alpha + 2) * p.pow(2 * beta);
                        for i in 1..p {
                            out.push(z(name, 8 * s * p * p, s * p * (8 * i + p), m, 100));
                        }
                        for j in 0..p {
                            if legendre(8 * j as i64 + 1, p) == -1 {
                                out.push(z(name, 8 * s * p, s * (8 * j + 1), m, 100));
                            }
                        }
                    }
                }
            }
            out.retain(within_desk_scale);
            out
        }
        "BSS" => {
            let mut out = vec![CongruenceClaim::new(name, 4, 0, 4, Rule::SignedSquareIndicator, 500)];
            for p in [3u64, 5, 7] {
                for r in quadratic_nonresidues(p) {
                    out.push(z(name, 4 * p, 4 * r, 4, 500));
                }
            }
            out.push(z(name, 16, 12, 16, 300));
            out.push(z(name, 32, 28, 64, 300));
            out
        }
        "Mao" => vec![
            z(name, 40, 13, 40, 40),
            z(name, 40, 37, 40, 40),
            z(name, 40, 13, 20, 500).with_note("(the same statement for the coefficients 2v0(n) of V0(q), mod 40)"),
            z(name, 40, 37, 20, 500).with_note("(the same statement for the coefficients 2v0(n) of V0(q), mod 40)"),
            z(name, 40, 17, 40, 500).with_note("(residue found by scanning, not a stated result)"),
            z(name, 40, 33, 40, 500).with_note("(residue found by scanning, not a stated result)"),
        ],
        "T6" => [132, 164, 228, 292, 356, 388].into_iter().map(|r| z(name, 416, r, 13, 40)).collect(),
        "T7" => [68, 132].into_iter().map(|r| z(name, 160, r, 25, 60)).collect(),
        "T10" => vec![z(name, 864, 612, 27, 40), z(name, 2592, 1188, 27, 40), z(name, 2592, 2052, 27, 40)],
        "T8" => {
            // v0(p^{2α} 81 (32n + 4)), p = 3, α = 0 and 1
            let mut out = vec![
                CongruenceClaim::new(name, 2592, 324, 27, Rule::ZeroUnlessTriangular, 40),
                CongruenceClaim::new(name, 9 * 2592, 9 * 324, 27, Rule::ZeroUnlessTriangular, 12),
            ];
            // v0(3 * 81 (96n + 32i + 12)), i = 1, 2
            for i in 1..=2u64 {
                out.push(z(name, 3 * 81 * 96, 3 * 81 * (32 * i + 12), 27, 12));
            }
            // v0(81 (96n + 32j + 4)) with (8j+1 | 3) = -1
            for j in 0..3u64 {
                if legendre(8 * j as i64 + 1, 3) == -1 {
                    out.push(z(name, 81 * 96, 81 * (32 * j + 4), 27, 40));
                }
            }
            out
        }
        "T9" => {
            let pent = Rule::ZeroUnlessPentagonalIndex;
            // v0(p^{2α}(96n + 4))
            let mut out = vec![
                CongruenceClaim::new(name, 96, 4, 27, pent, 300),
                CongruenceClaim::new(name, 9 * 96, 9 * 4, 27, pent, 40),
                CongruenceClaim::new(name, 25 * 96, 25 * 4, 27, pent, 40),
                CongruenceClaim::new(name, 81 * 96, 81 * 4, 27, pent, 40),
            ];
            // v0(p^{2α} p1 (96 p1 n + 96i + 4 p1)), p1 = 5, with p^{2α} = 1 and 9
            for (scale, count) in [(1u64, 40u64), (9, 12)] {
                for i in 1..5u64 {
                    out.push(z(name, scale * 5 * 480, scale * 5 * (96 * i + 20), 27, count));
                }
            }
            // v0(p^{2α}(96(p1 n + j) + 4)) with (24j+1 | p1) = -1
            for (scale, p1) in [(1u64, 5u64), (9, 5), (1, 7)] {
                for j in 0..p1 {
                    if legendre(24 * j as i64 + 1, p1) == -1 {
                        out.push(z(name, scale * 96 * p1, scale * (96 * j + 4), 27, 40));
                    }
                }
            }
            out
        }
        "Closing" => vec![z(name, 56160, 39492, 4492800, 2)
            .with_note("(the argument grows by 56160 per step, so only n=0,1 are feasible)")],
        _ => return Err(VerifyError::UnknownSuite(name.to_string())),
    };
    Ok(claims)
}

/// Every `(a, b)` with `a` in `scales` and `0 <= b < a` such that
/// `v0(a n + b) = 0 (mod m)` for all `n < count`. These are candidates
/// found by search, not proven congruences.
pub fn scan_progressions(
    scales: impl IntoIterator<Item = u64>,
    modulus: u64,
    count: u64,
    cache: &V0Cache,
) -> Result<Vec<(u64, u64)>, VerifyError> {
    let scales: Vec<u64> = scales.into_iter().collect();
    let a_max = scales.iter().copied().max().unwrap_or(1);
    let v0 = cache.residues(modulus, a_max.saturating_mul(count))?;
    let mut out = Vec::new();
    for &a in &scales {
        for b in 0..a {
            if (0..count).all(|n| v0.get((a * n + b) as usize) == 0) {
                out.push((a, b));
            }
        }
    }
    Ok(out)
}

/// Exhaustive scan over `1 <= a <= a_max`.
pub fn scan_discover(a_max: u64, modulus: u64, count: u64, cache: &V0Cache) -> Result<Vec<(u64, u64)>, VerifyError> {
    scan_progressions(1..=a_max, modulus, count, cache)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::v0_oracle;
    use num_bigint::BigInt;

    #[test]
    fn expectation_sets_follow_the_rules() {
        let e = Expectation::new(Rule::SignedSquareIndicator, 4, 20);
        let got: Vec<u64> = (0..10).map(|n| e.at(n).unwrap()).collect();
        assert_eq!(got, vec![1, 3, 0, 0, 1, 0, 0, 0, 0, 3]);
        let e = Expectation::new(Rule::SquareIndicator, 32, 20);
        assert_eq!(e.at(4), Some(1));
        assert_eq!(e.at(5), Some(0));
        let e = Expectation::new(Rule::ZeroUnlessTriangular, 27, 20);
        assert_eq!(e.at(6), None);
        assert_eq!(e.at(7), Some(0));
        let e = Expectation::new(Rule::ZeroUnlessPentagonalIndex, 27, 20);
        assert_eq!(e.at(15), None);
        assert_eq!(e.at(3), Some(0));
    }

    #[test]
    fn shared_tables_agree_with_exact_values() {
        let exact = v0_oracle(2000);
        let cache = V0Cache::default();
        for m in [4u64, 13, 25, 27, 40, 512, 4492800] {
            let r = cache.residues(m, 2000).unwrap();
            for n in 0..2000 {
                let v = exact.value(n).unwrap().to_bigint().unwrap();
                assert_eq!(BigInt::from(r.get(n)), v % m, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn claim_sizes() {
        assert_eq!(theorem_suite("T6").unwrap().len(), 6);
        assert_eq!(theorem_suite("T7").unwrap().len(), 2);
        assert_eq!(theorem_suite("T10").unwrap().len(), 3);
        assert!(matches!(theorem_suite("nope"), Err(VerifyError::UnknownSuite(_))));
        for s in THEOREM_SUITES {
            for c in theorem_suite(s).unwrap() {
                assert!(c.required_order() <= DESK_ORDER_LIMIT, "{c}");
            }
        }
    }

    #[test]
    fn small_claims() {
        let cache = V0Cache::default();
        let c = CongruenceClaim::new("T4", 32, 4, 512, Rule::ZeroUnlessTriangular, 300);
        assert!(check_claim(&c, &cache).unwrap().passed());
        let c = CongruenceClaim::zero("Mao", 40, 13, 40, 40);
        let check = check_claim(&c, &cache).unwrap();
        assert_eq!(check.first_failure, Some(Witness::new(0u64, 0, 20)));
    }

    #[test]
    fn scans() {
        let cache = V0Cache::default();
        assert_eq!(scan_progressions([40], 40, 50, &cache).unwrap(), vec![(40, 17), (40, 33)]);
        assert_eq!(scan_progressions([40], 20, 50, &cache).unwrap(), vec![(40, 13), (40, 17), (40, 33), (40, 37)]);
        let t6: Vec<u64> = scan_progressions([416], 13, 30, &cache).unwrap().into_iter().map(|(_, b)| b).collect();
        assert_eq!(t6, vec![132, 164, 228, 292, 356, 388]);
        assert!(scan_progressions([1], 2, 50, &cache).unwrap().is_empty());
        assert!(scan_progressions([3], 1000003, 20, &cache).unwrap().is_empty());
        let small = V0Cache::new(1000);
        assert!(matches!(scan_discover(40, 40, 50, &small), Err(VerifyError::ResourceCap { .. })));
    }
}
