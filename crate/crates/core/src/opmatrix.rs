//! The recurrence matrices `M`, `N`, `P`, the derived matrices `A`, `B`,
//! `C`, `D`, the coefficient vectors `x`, `y`, `z`, and the identities and
//! 2-adic bounds that tie them to theta quotients.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::dissect::huffing;
use crate::error::SeriesError;
use crate::report::{compare, Check, Witness};
use crate::ring::{Dyadic, RingTag, Val2};
use crate::series::Series;
use crate::theta::{theta_phi, theta_psi, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixName {
    M,
    N,
    P,
    A,
    B,
    C,
    D,
}

impl MatrixName {
    pub const ALL: [MatrixName; 7] =
        [MatrixName::M, MatrixName::N, MatrixName::P, MatrixName::A, MatrixName::B, MatrixName::C, MatrixName::D];
}

impl FromStr for MatrixName {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<MatrixName, SeriesError> {
        Ok(match s {
            "M" => MatrixName::M,
            "N" => MatrixName::N,
            "P" => MatrixName::P,
            "A" => MatrixName::A,
            "B" => MatrixName::B,
            "C" => MatrixName::C,
            "D" => MatrixName::D,
            _ => return Err(SeriesError::InvalidArgument(format!("unknown matrix {s:?}; expected one of M N P A B C D"))),
        })
    }
}

impl fmt::Display for MatrixName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A lower-banded integer matrix given by two seed rows and
/// `t_{i,j} = c1 t_{i-1,j-1} + c2 t_{i-2,j-1}` for `i >= 3`, `j >= 2`,
/// with `t_{i,1} = 0` for `i >= 3`. Rows are generated on demand and kept.
pub struct MatrixTable {
    name: MatrixName,
    c1: i64,
    c2: i64,
    rows: RwLock<Vec<Vec<BigInt>>>,
}

impl MatrixTable {
    fn new(name: MatrixName, row1: i64, row2: [i64; 2], c1: i64, c2: i64) -> MatrixTable {
        let rows = vec![vec![BigInt::from(row1)], row2.iter().map(|&v| BigInt::from(v)).collect()];
        MatrixTable { name, c1, c2, rows: RwLock::new(rows) }
    }

    pub fn m() -> MatrixTable {
        MatrixTable::new(MatrixName::M, 1, [-1, 2], 2, -1)
    }

    pub fn n() -> MatrixTable {
        MatrixTable::new(MatrixName::N, 2, [1, 8], 4, 1)
    }

    pub fn p() -> MatrixTable {
        MatrixTable::new(MatrixName::P, 4, [1, 32], 8, 1)
    }

    pub fn name(&self) -> MatrixName {
        self.name
    }

    fn ensure(&self, i: usize) {
        if self.rows.read().expect("matrix lock").len() >= i {
            return;
        }
        let mut rows = self.rows.write().expect("matrix lock");
        while rows.len() < i {
            let k = rows.len();
            let (prev, prev2) = (&rows[k - 1], &rows[k - 2]);
            let at = |row: &Vec<BigInt>, j: usize| row.get(j).cloned().unwrap_or_default();
            let mut row = vec![BigInt::zero(); k + 1];
            for (j, slot) in row.iter_mut().enumerate().skip(1) {
                *slot = at(prev, j - 1) * self.c1 + at(prev2, j - 1) * self.c2;
            }
            rows.push(row);
        }
    }

    /// Entry `(i, j)`, both 1-based.
    pub fn entry(&self, i: usize, j: usize) -> BigInt {
        assert!(i >= 1 && j >= 1, "matrix indices start at 1");
        self.ensure(i);
        self.rows.read().expect("matrix lock")[i - 1].get(j - 1).cloned().unwrap_or_default()
    }
}

/// The three base tables and everything derived from them.
pub struct Matrices {
    m: MatrixTable,
    n: MatrixTable,
    p: MatrixTable,
}

impl Default for Matrices {
    fn default() -> Self {
        Matrices::new()
    }
}

impl Matrices {
    pub fn new() -> Matrices {
        Matrices { m: MatrixTable::m(), n: MatrixTable::n(), p: MatrixTable::p() }
    }

    /// A process-wide instance, so repeated lookups share generated rows.
    pub fn shared() -> &'static Matrices {
        static SHARED: OnceLock<Matrices> = OnceLock::new();
        SHARED.get_or_init(Matrices::new)
    }

    /// `a_{i,j} = m_{2i-1, j+i-1}`.
    pub fn a_small(&self, i: usize, j: usize) -> BigInt {
        self.m.entry(2 * i - 1, j + i - 1)
    }

    /// `c_{i,j} = n_{2i-1, j+i-1}`.
    pub fn c_small(&self, i: usize, j: usize) -> BigInt {
        self.n.entry(2 * i - 1, j + i - 1)
    }

    /// Entry `(i, j)` of any of the seven matrices.
    pub fn entry(&self, name: MatrixName, i: usize, j: usize) -> BigInt {
        assert!(i >= 1 && j >= 1, "matrix indices start at 1");
        let bordered = |t: &MatrixTable| match (i, j) {
            (1, 1) => BigInt::one(),
            (1, _) | (_, 1) => BigInt::zero(),
            _ => t.entry(i - 1, j - 1),
        };
        match name {
            MatrixName::M => self.m.entry(i, j),
            MatrixName::N => self.n.entry(i, j),
            MatrixName::P => self.p.entry(i, j),
            MatrixName::A => self.a_small(4 * i - 3, j),
            MatrixName::C => self.c_small(4 * i - 3, j),
            MatrixName::B => bordered(&self.m),
            MatrixName::D => bordered(&self.p),
        }
    }

    /// Columns past this index are zero in row `i`.
    pub fn row_width(&self, name: MatrixName, i: usize) -> usize {
        match name {
            MatrixName::M | MatrixName::N | MatrixName::P | MatrixName::B | MatrixName::D => i,
            MatrixName::A | MatrixName::C => 4 * i - 3,
        }
    }

    /// The top-left `rows x cols` block.
    pub fn block(&self, name: MatrixName, rows: usize, cols: usize) -> Vec<Vec<BigInt>> {
        (1..=rows).map(|i| (1..=cols).map(|j| self.entry(name, i, j)).collect()).collect()
    }
}

pub fn matrix_entry(name: MatrixName, i: usize, j: usize) -> BigInt {
    Matrices::shared().entry(name, i, j)
}

pub fn derived_entry(name: MatrixName, i: usize, j: usize) -> BigInt {
    matrix_entry(name, i, j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VectorLabel {
    X,
    Y,
    Z,
}

impl fmt::Display for VectorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VectorLabel::X => "x",
            VectorLabel::Y => "y",
            VectorLabel::Z => "z",
        })
    }
}

/// A finitely supported row vector of dyadic rationals, trailing zeros
/// removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    label: VectorLabel,
    index: usize,
    entries: Vec<Dyadic>,
}

impl CoeffVector {
    pub fn new(label: VectorLabel, index: usize, mut entries: Vec<Dyadic>) -> CoeffVector {
        while entries.last().is_some_and(Dyadic::is_zero) {
            entries.pop();
        }
        CoeffVector { label, index, entries }
    }

    pub fn label(&self) -> VectorLabel {
        self.label
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn entries(&self) -> &[Dyadic] {
        &self.entries
    }

    /// Position of the last nonzero entry, 1-based.
    pub fn support(&self) -> usize {
        self.entries.len()
    }

    /// Entry `k`, 1-based; zero outside the support.
    pub fn entry(&self, k: usize) -> Dyadic {
        assert!(k >= 1, "vector indices start at 1");
        self.entries.get(k - 1).cloned().unwrap_or_else(Dyadic::zero)
    }

    /// Largest denominator exponent among the entries.
    pub fn max_exponent(&self) -> u32 {
        self.entries.iter().map(Dyadic::exponent).max().unwrap_or(0)
    }

    fn times(&self, label: VectorLabel, index: usize, name: MatrixName, mats: &Matrices) -> CoeffVector {
        let width = (1..=self.support())
            .filter(|&i| !self.entry(i).is_zero())
            .map(|i| mats.row_width(name, i))
            .max()
            .unwrap_or(0);
        let mut out = vec![Dyadic::zero(); width];
        for i in 1..=self.support() {
            let v = self.entry(i);
            if v.is_zero() {
                continue;
            }
            for (k, slot) in out.iter_mut().enumerate().take(mats.row_width(name, i)) {
                let e = mats.entry(name, i, k + 1);
                if !e.is_zero() {
                    *slot = &*slot + &(&v * &Dyadic::from_int(e));
                }
            }
        }
        CoeffVector::new(label, index, out)
    }
}

impl fmt::Display for CoeffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(Dyadic::to_string).collect();
        write!(f, "{}_{} = ({})", self.label, self.index, parts.join(", "))
    }
}

/// Generates `x_1 = (-3/2, 2)`, `x_{2α} = x_{2α-1} A`,
/// `x_{2α+1} = x_{2α} B`, `y_α = x_{2α-1} C`, `z_α = y_α D`, remembering
/// what it has computed.
pub struct VectorTower<'a> {
    mats: &'a Matrices,
    xs: Vec<CoeffVector>,
    ys: HashMap<usize, CoeffVector>,
}

impl<'a> VectorTower<'a> {
    pub fn new(mats: &'a Matrices) -> VectorTower<'a> {
        let x1 = CoeffVector::new(VectorLabel::X, 1, vec![Dyadic::new(-3, 1), Dyadic::from_int(2)]);
        VectorTower { mats, xs: vec![x1], ys: HashMap::new() }
    }

    pub fn x(&mut self, alpha: usize) -> CoeffVector {
        assert!(alpha >= 1, "vector index starts at 1");
        while self.xs.len() < alpha {
            let k = self.xs.len() + 1;
            let name = if k.is_multiple_of(2) { MatrixName::A } else { MatrixName::B };
            let next = self.xs[k - 2].times(VectorLabel::X, k, name, self.mats);
            self.xs.push(next);
        }
        self.xs[alpha - 1].clone()
    }

    pub fn y(&mut self, alpha: usize) -> CoeffVector {
        if let Some(y) = self.ys.get(&alpha) {
            return y.clone();
        }
        let y = self.x(2 * alpha - 1).times(VectorLabel::Y, alpha, MatrixName::C, self.mats);
        self.ys.insert(alpha, y.clone());
        y
    }

    pub fn z(&mut self, alpha: usize) -> CoeffVector {
        self.y(alpha).times(VectorLabel::Z, alpha, MatrixName::D, self.mats)
    }

    pub fn vector(&mut self, label: VectorLabel, alpha: usize) -> CoeffVector {
        match label {
            VectorLabel::X => self.x(alpha),
            VectorLabel::Y => self.y(alpha),
            VectorLabel::Z => self.z(alpha),
        }
    }
}

/// Convenience wrapper over a fresh tower on the shared matrices.
pub fn vector(label: VectorLabel, alpha: usize) -> CoeffVector {
    VectorTower::new(Matrices::shared()).vector(label, alpha)
}

pub fn val2(d: &Dyadic) -> Val2 {
    d.val2()
}

/// Ranges for the 2-adic lemma checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationRanges {
    /// `1 <= j, k <=` this for the matrix bounds.
    pub matrix: usize,
    pub x_alpha: usize,
    pub x_k: usize,
    pub y_alpha: usize,
    pub y_k: usize,
    pub z_alpha: usize,
    pub z_k: usize,
}

impl Default for ValuationRanges {
    fn default() -> Self {
        ValuationRanges { matrix: 40, x_alpha: 4, x_k: 10, y_alpha: 3, y_k: 10, z_alpha: 3, z_k: 6 }
    }
}

fn val_text(v: Val2) -> String {
    v.to_string()
}

fn matrix_bound(mats: &Matrices, name: MatrixName, max: usize, bound: impl Fn(i64, i64) -> i64) -> Option<Witness> {
    for j in 1..=max {
        for k in 1..=max {
            let v = Val2::of_int(&mats.entry(name, j, k));
            let b = bound(j as i64, k as i64);
            if !v.at_least(b) {
                return Some(Witness::new(j, format!(">= {b} at k={k}"), val_text(v)));
            }
        }
    }
    None
}

/// For each `α <= alpha_max` and `1 <= k <= k_max` checks
/// `ν2(v_α[k+1]) >= bound(α, k)`, with equality at `k = 1`. The witness
/// `n` is `α`.
fn vector_bound(
    alpha_max: usize,
    k_max: usize,
    mut get: impl FnMut(usize) -> CoeffVector,
    bound: impl Fn(i64, i64) -> i64,
    equality_at_one: bool,
) -> Option<Witness> {
    for alpha in 1..=alpha_max {
        let v = get(alpha);
        for k in 1..=k_max {
            let val = v.entry(k + 1).val2();
            let b = bound(alpha as i64, k as i64);
            let ok = if equality_at_one && k == 1 { val == Val2::Finite(b) } else { val.at_least(b) };
            if !ok {
                let rel = if equality_at_one && k == 1 { "=" } else { ">=" };
                return Some(Witness::new(alpha, format!("{rel} {b} at k={k}"), val_text(val)));
            }
        }
    }
    None
}

/// Every 2-adic bound on the matrices and vectors over the given ranges.
pub fn valuation_lemma_suite(r: ValuationRanges) -> Vec<Check> {
    let mats = Matrices::shared();
    let mut tower = VectorTower::new(mats);
    let n = r.matrix;
    let mut out = vec![
        Check::new(
            format!("nu2: nu2(m[j,k]) >= 2k-j-1 for 1<=j,k<={n}"),
            n,
            matrix_bound(mats, MatrixName::M, n, |j, k| 2 * k - j - 1),
        ),
        Check::new(
            format!("nu2: nu2(n[j,k]) >= 4k-2j-1 for 1<=j,k<={n}"),
            n,
            matrix_bound(mats, MatrixName::N, n, |j, k| 4 * k - 2 * j - 1),
        ),
        Check::new(
            format!("nu2: nu2(p[j,k]) >= 6k-3j-1 for 1<=j,k<={n}"),
            n,
            matrix_bound(mats, MatrixName::P, n, |j, k| 6 * k - 3 * j - 1),
        ),
    ];
    let (xa, xk) = (r.x_alpha, r.x_k);
    let odd = vector_bound(xa, xk, |a| tower.x(2 * a - 1), |a, k| 3 * a + 2 * k - 4, true);
    out.push(Check::new(
        format!("nu2: nu2(x[2a-1,k+1]) >= 3a+2k-4, equality at k=1, for 1<=a<={xa}, 1<=k<={xk}"),
        xk,
        odd,
    ));
    let even = vector_bound(xa, xk, |a| tower.x(2 * a), |a, k| 3 * a + k, true);
    out.push(Check::new(
        format!("nu2: nu2(x[2a,k+1]) >= 3a+k, equality at k=1, for 1<=a<={xa}, 1<=k<={xk}"),
        xk,
        even,
    ));
    let (ya, yk) = (r.y_alpha, r.y_k);
    let y = vector_bound(ya, yk, |a| tower.y(a), |a, k| 3 * a + 3 * k + 1, true);
    out.push(Check::new(
        format!("nu2: nu2(y[a,k+1]) >= 3a+3k+1, nu2(y[a,2]) = 3a+4, for 1<=a<={ya}, 1<=k<={yk}"),
        yk,
        y,
    ));
    let (za, zk) = (r.z_alpha, r.z_k);
    let z = vector_bound(za, zk, |a| tower.z(a), |a, k| 3 * a + 6 * k, false);
    out.push(Check::new(format!("nu2: nu2(z[a,k+1]) >= 3a+6k for 1<=a<={za}, 1<=k<={zk}"), zk, z));
    out
}

/// The first rows of `M` the recurrence must reproduce.
pub const M_FIRST_ROWS: [[i64; 9]; 8] = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [-1, 2, 0, 0, 0, 0, 0, 0, 0],
    [0, -3, 4, 0, 0, 0, 0, 0, 0],
    [0, 1, -8, 8, 0, 0, 0, 0, 0],
    [0, 0, 5, -20, 16, 0, 0, 0, 0],
    [0, 0, -1, 18, -48, 32, 0, 0, 0],
    [0, 0, 0, -7, 56, -112, 64, 0, 0],
    [0, 0, 0, 1, -32, 160, -256, 128, 0],
];

/// Structural facts about the generated matrices for rows up to `max`:
/// the strict band (`t_{i,j} = 0` for `j > i`) for `M`, `N`, `P`, and the
/// odd-row vanishing `t_{2i-1,j} = 0` for `j < i` for `M` and `N`.
pub fn band_checks(max: usize) -> Vec<Check> {
    let mats = Matrices::shared();
    let mut out = Vec::new();
    for name in [MatrixName::M, MatrixName::N, MatrixName::P] {
        let mut fail = None;
        'rows: for i in 1..=max {
            for j in i + 1..=max + 1 {
                let e = mats.entry(name, i, j);
                if !e.is_zero() {
                    fail = Some(Witness::new(i, format!("0 at column {j}"), e));
                    break 'rows;
                }
            }
        }
        let lower = name.to_string().to_lowercase();
        out.push(Check::new(format!("matrix {name}: {lower}[i,j] = 0 for j > i, i <= {max}"), max, fail));
    }
    for name in [MatrixName::M, MatrixName::N] {
        let mut fail = None;
        'odd: for i in 1..=max.div_ceil(2) {
            for j in 1..i {
                let e = mats.entry(name, 2 * i - 1, j);
                if !e.is_zero() {
                    fail = Some(Witness::new(2 * i - 1, format!("0 at column {j}"), e));
                    break 'odd;
                }
            }
        }
        let lower = name.to_string().to_lowercase();
        out.push(Check::new(
            format!("matrix {name}: {lower}[2i-1,j] = 0 for j < i, 2i-1 <= {max}"),
            max,
            fail,
        ));
    }
    out
}

// Shorthands for the theta quotients below, all over the integers.

fn phi(k: usize, n: usize) -> Series {
    theta_phi(&RingTag::Integer, Monomial::pos(k), n)
}

fn phim(k: usize, n: usize) -> Series {
    theta_phi(&RingTag::Integer, Monomial::neg(k), n)
}

fn psi(k: usize, n: usize) -> Series {
    theta_psi(&RingTag::Integer, k, n)
}

fn pw(s: &Series, k: i64) -> Series {
    s.pow(k).expect("theta series have unit constant term")
}

fn big_scale(s: &Series, c: &BigInt) -> Series {
    s.scale_elem(&c.clone().into()).expect("integer scalar")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HuffingFamily {
    Zeta,
    Xi,
    Mu,
    Rho,
}

impl HuffingFamily {
    pub const ALL: [HuffingFamily; 4] = [HuffingFamily::Zeta, HuffingFamily::Xi, HuffingFamily::Mu, HuffingFamily::Rho];

    /// The identity as text, with the clearing factor that is applied to
    /// both sides.
    pub fn describe(self, i: usize) -> String {
        match self {
            HuffingFamily::Zeta => format!(
                "H(phi(q)^{i}/phi(-q)^{}) = sum_j a[{i},j] phi(q^4)^(2j-1)/phi(-q^2)^(2j-2), cleared by phi(-q^2)^{}",
                i - 1,
                2 * (i - 1)
            ),
            HuffingFamily::Xi => format!(
                "H(phi(q^2)^{}/phi(-q)^{}) = sum_j m[{i},j] phi(q^2)^(4j+1)/phi(-q^2)^(4j), cleared by phi(-q^2)^{}",
                2 * i + 1,
                2 * i,
                4 * i
            ),
            HuffingFamily::Mu => format!(
                "H(q phi(q)^{i}/phi(-q)^{}) = sum_j c[{i},j] q^(2j) psi(q^8)^(2j-1)/phi(-q^2)^(2j-2), cleared by phi(-q^2)^{}",
                i - 1,
                2 * (i - 1)
            ),
            HuffingFamily::Rho => format!(
                "H(q^{i} psi(q^4)^{}/phi(-q)^{}) = sum_j p[{i},j] q^(2j) psi(q^4)^(4j+1)/phi(-q^2)^(4j), cleared by phi(-q^2)^{}",
                2 * i + 1,
                2 * i,
                4 * i
            ),
        }
    }
}

impl FromStr for HuffingFamily {
    type Err = SeriesError;
    fn from_str(s: &str) -> Result<Self, SeriesError> {
        Ok(match s {
            "zeta" => HuffingFamily::Zeta,
            "xi" => HuffingFamily::Xi,
            "mu" => HuffingFamily::Mu,
            "rho" => HuffingFamily::Rho,
            _ => return Err(SeriesError::InvalidArgument(format!("unknown family {s:?}"))),
        })
    }
}

/// Compares the image of the `i`-th power under `H` with its finite
/// expansion in the matrix entries. Both sides are multiplied by a power
/// of `phi(-q^2)`, which is even and so passes through `H`.
pub fn huffing_image(family: HuffingFamily, i: usize, n: usize) -> Option<Witness> {
    assert!(i >= 1, "power index starts at 1");
    let mats = Matrices::shared();
    let fm2 = phim(2, n);
    let ii = i as i64;
    let (lhs, rhs) = match family {
        HuffingFamily::Zeta => {
            let inner = &pw(&phi(1, n), ii) * &pw(&phim(1, n), -(ii - 1));
            let lhs = &huffing(&inner) * &pw(&fm2, 2 * (ii - 1));
            let mut rhs = Series::zero(&RingTag::Integer, n);
            for j in 1..=i {
                let jj = j as i64;
                let term = &pw(&phi(4, n), 2 * jj - 1) * &pw(&fm2, 2 * (ii - jj));
                rhs = &rhs + &big_scale(&term, &mats.a_small(i, j));
            }
            (lhs, rhs)
        }
        HuffingFamily::Xi => {
            let inner = &pw(&phi(2, n), 2 * ii + 1) * &pw(&phim(1, n), -2 * ii);
            let lhs = &huffing(&inner) * &pw(&fm2, 4 * ii);
            let mut rhs = Series::zero(&RingTag::Integer, n);
            for j in 1..=i {
                let jj = j as i64;
                let term = &pw(&phi(2, n), 4 * jj + 1) * &pw(&fm2, 4 * (ii - jj));
                rhs = &rhs + &big_scale(&term, &mats.entry(MatrixName::M, i, j));
            }
            (lhs, rhs)
        }
        HuffingFamily::Mu => {
            let inner = (&pw(&phi(1, n), ii) * &pw(&phim(1, n), -(ii - 1))).shift(1);
            let lhs = &huffing(&inner) * &pw(&fm2, 2 * (ii - 1));
            let mut rhs = Series::zero(&RingTag::Integer, n);
            for j in 1..=i {
                let jj = j as i64;
                let term = (&pw(&psi(8, n), 2 * jj - 1) * &pw(&fm2, 2 * (ii - jj))).shift(2 * j);
                rhs = &rhs + &big_scale(&term, &mats.c_small(i, j));
            }
            (lhs, rhs)
        }
        HuffingFamily::Rho => {
            let inner = (&pw(&psi(4, n), 2 * ii + 1) * &pw(&phim(1, n), -2 * ii)).shift(i);
            let lhs = &huffing(&inner) * &pw(&fm2, 4 * ii);
            let mut rhs = Series::zero(&RingTag::Integer, n);
            for j in 1..=i {
                let jj = j as i64;
                let term = (&pw(&psi(4, n), 4 * jj + 1) * &pw(&fm2, 4 * (ii - jj))).shift(2 * j);
                rhs = &rhs + &big_scale(&term, &mats.entry(MatrixName::P, i, j));
            }
            (lhs, rhs)
        }
    };
    compare(&lhs, &rhs, n)
}

pub fn huffing_image_check(family: HuffingFamily, i: usize, n: usize) -> bool {
    huffing_image(family, i, n).is_none()
}

/// The Huffing images that are displayed with explicit coefficients, each
/// as `(description, lhs, rhs)` after clearing.
pub fn displayed_huffing_images(n: usize) -> Vec<(String, Series, Series)> {
    let fm1 = phim(1, n);
    let fm2 = phim(2, n);
    let inv_fm1 = pw(&fm1, -1);
    let mut out = Vec::new();

    let lhs = &huffing(&(&pw(&phi(1, n), 2) * &inv_fm1)) * &pw(&fm2, 2);
    let rhs = &(&phi(4, n) * &pw(&fm2, 2)).scale(-3) + &pw(&phi(4, n), 3).scale(4);
    out.push((
        "H(phi(q)^2/phi(-q)) = -3 phi(q^4) + 4 phi(q^4)^3/phi(-q^2)^2, cleared by phi(-q^2)^2".to_string(),
        lhs,
        rhs,
    ));

    let lhs = &huffing(&(&pw(&phi(1, n), 2) * &inv_fm1).shift(1)) * &pw(&fm2, 2);
    let rhs = &(&psi(8, n) * &pw(&fm2, 2)).scale(6).shift(2) + &pw(&psi(8, n), 3).scale(32).shift(4);
    out.push((
        "H(q phi(q)^2/phi(-q)) = 6 q^2 psi(q^8) + 32 q^4 psi(q^8)^3/phi(-q^2)^2, cleared by phi(-q^2)^2".to_string(),
        lhs,
        rhs,
    ));

    let lhs = &huffing(&(&pw(&psi(4, n), 3) * &pw(&fm1, -2)).shift(1)) * &pw(&fm2, 4);
    let rhs = pw(&psi(4, n), 5).scale(4).shift(2);
    out.push((
        "H(q psi(q^4)^3/phi(-q)^2) = 4 q^2 psi(q^4)^5/phi(-q^2)^4, cleared by phi(-q^2)^4".to_string(),
        lhs,
        rhs,
    ));

    let lhs = &huffing(&(&phi(4, n) * &inv_fm1)) * &pw(&fm2, 2);
    out.push((
        "H(phi(q^4)/phi(-q)) phi(-q^2)^2 = phi(q^4)^2".to_string(),
        lhs,
        pw(&phi(4, n), 2),
    ));

    let zeta = &Series::one(&RingTag::Integer, n) - &(&psi(8, n) * &pw(&phi(4, n), -1)).scale(2).shift(1);
    out.push(("H(1 - 2q psi(q^8)/phi(q^4)) = 1".to_string(), huffing(&zeta), Series::one(&RingTag::Integer, n)));
    out
}

/// The quadratic relations satisfied by the four basic quotients, each
/// multiplied through to a polynomial identity in theta series:
/// `(description, series that must vanish)`.
pub fn quadratic_relations(n: usize) -> Vec<(String, Series)> {
    let fm1 = phim(1, n);
    let fm2 = phim(2, n);
    let zeta = &(&pw(&fm1, 2) - &(&fm1 * &phi(4, n)).scale(2)) + &pw(&fm2, 2);
    let xi = &(&pw(&fm1, 4) - &(&pw(&fm1, 2) * &pw(&phi(2, n), 2)).scale(2)) + &pw(&fm2, 4);
    let mu = &(&pw(&fm1, 2) + &(&psi(8, n) * &fm1).scale(4).shift(1)) - &pw(&fm2, 2);
    let rho = &(&pw(&fm1, 4) + &(&pw(&psi(4, n), 2) * &pw(&fm1, 2)).scale(8).shift(1)) - &pw(&fm2, 4);
    vec![
        ("zeta^2 - 2 zeta + T = 0: phi(-q)^2 - 2 phi(-q) phi(q^4) + phi(-q^2)^2 = 0".to_string(), zeta),
        ("xi^2 - 2 xi + G = 0: phi(-q)^4 - 2 phi(-q)^2 phi(q^2)^2 + phi(-q^2)^4 = 0".to_string(), xi),
        ("mu^2 + 4 mu - S = 0: phi(-q)^2 + 4q psi(q^8) phi(-q) - phi(-q^2)^2 = 0".to_string(), mu),
        ("rho^2 + 8 rho - F = 0: phi(-q)^4 + 8q psi(q^4)^2 phi(-q)^2 - phi(-q^2)^4 = 0".to_string(), rho),
    ]
}

pub fn quadratic_relation_check(n: usize) -> bool {
    quadratic_relations(n).iter().all(|(_, s)| s.is_zero())
}
