//! Small enumeration-based helpers: square, triangular and pentagonal index
//! sets and quadratic residues. Everything is computed by listing values
//! directly so the sets stay independent of any closed-form shortcut.

use std::collections::BTreeSet;

/// `{k^2 : k >= 0} ∩ [0, limit)`
pub fn squares_below(limit: u64) -> BTreeSet<u64> {
    (0u64..).map(|k| k * k).take_while(|&s| s < limit).collect()
}

/// `{k(k+1)/2 : k >= 0} ∩ [0, limit)`
pub fn triangulars_below(limit: u64) -> BTreeSet<u64> {
    (0u64..).map(|k| k * (k + 1) / 2).take_while(|&t| t < limit).collect()
}

/// `{k(3k+1)/2 : k in Z} ∩ [0, limit)`
pub fn pentagonal_indices_below(limit: u64) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for k in 0i64.. {
        let a = (k * (3 * k + 1) / 2) as u64;
        let b = (k * (3 * k - 1) / 2) as u64; // k -> -k
        if a >= limit && b >= limit {
            break;
        }
        out.extend([a, b].into_iter().filter(|&x| x < limit));
    }
    out
}

/// Nonzero squares modulo `p`.
pub fn quadratic_residues(p: u64) -> BTreeSet<u64> {
    (1..p).map(|x| x * x % p).collect()
}

/// Residues `r` in `1..p` that are not squares modulo `p`.
pub fn quadratic_nonresidues(p: u64) -> Vec<u64> {
    let qr = quadratic_residues(p);
    (1..p).filter(|r| !qr.contains(r)).collect()
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        0
    } else if quadratic_residues(p).contains(&r) {
        1
    } else {
        -1
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_sets() {
        assert_eq!(squares_below(17).into_iter().collect::<Vec<_>>(), vec![0, 1, 4, 9, 16]);
        assert_eq!(triangulars_below(11).into_iter().collect::<Vec<_>>(), vec![0, 1, 3, 6, 10]);
        assert_eq!(pentagonal_indices_below(16).into_iter().collect::<Vec<_>>(), vec![0, 1, 2, 5, 7, 12, 15]);
    }

    #[test]
    fn residues() {
        assert_eq!(quadratic_nonresidues(3), vec![2]);
        assert_eq!(quadratic_nonresidues(5), vec![2, 3]);
        assert_eq!(quadratic_nonresidues(7), vec![3, 5, 6]);
        assert_eq!(legendre(17, 3), -1);
        assert_eq!(legendre(9, 3), 0);
        assert_eq!(legendre(-1, 5), 1);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(25));
    }
}
