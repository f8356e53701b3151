//! Ranking and unranking of `k`-subsets in lexicographic order.

use crate::error::{invalid, Result};
use crate::formulas::binom::binom;
use crate::kset::KSet;
use crate::rational::BigCount;
use num_traits::Zero;

/// Position of `s` among the `k`-subsets of `[0, n)`, `k = |s|`.
pub fn rank(n: usize, s: &KSet) -> BigCount {
    let k = s.len();
    let mut r = BigCount::zero();
    let mut prev = 0usize;
    for (i, e) in s.iter().enumerate() {
        for j in prev..e {
            r += binom((n - j - 1) as i64, (k - i - 1) as i64);
        }
        prev = e + 1;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(n: usize, k: usize, rank: &BigCount) -> Result<KSet> {
    if *rank >= binom(n as i64, k as i64) {
        return invalid(format!("rank {rank} out of range for C({n},{k})"));
    }
    let mut rank = rank.clone();
    let mut s = KSet::EMPTY;
    let mut next = 0usize;
    for i in 0..k {
        let mut c = next;
        loop {
            let block = binom((n - c - 1) as i64, (k - i - 1) as i64);
            if block <= rank {
                rank -= block;
                c += 1;
            } else {
                break;
            }
        }
        s.insert(c);
        next = c + 1;
    }
    Ok(s)
}

/// The lexicographic successor of `s` among `k`-subsets of `[0, n)`.
pub fn successor(n: usize, s: &KSet) -> Option<KSet> {
    let elems = s.to_vec();
    let k = elems.len();
    let mut pos = k;
    while pos > 0 && elems[pos - 1] == n - k + pos - 1 {
        pos -= 1;
    }
    if pos == 0 {
        return None;
    }
    let mut out = elems.clone();
    out[pos - 1] += 1;
    for j in pos..k {
        out[j] = out[j - 1] + 1;
    }
    Some(KSet::from_elems(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kset::all_ksets;

    #[test]
    fn rank_matches_enumeration_order() {
        for (n, k) in [(6, 3), (7, 2), (5, 5), (8, 1)] {
            for (i, s) in all_ksets(n, k).iter().enumerate() {
                let r = rank(n, s);
                assert_eq!(r, BigCount::from(i));
                assert_eq!(unrank(n, k, &r).unwrap(), *s);
            }
        }
        assert!(unrank(5, 2, &BigCount::from(10u32)).is_err());
    }

    #[test]
    fn successor_walks_all_sets() {
        let all = all_ksets(7, 3);
        let mut cur = all[0];
        for want in &all[1..] {
            cur = successor(7, &cur).unwrap();
            assert_eq!(cur, *want);
        }
        assert!(successor(7, &cur).is_none());
    }

    #[test]
    fn ranks_at_large_n() {
        let s = KSet::from_elems([1, 250, 255]);
        let r = rank(256, &s);
        assert_eq!(unrank(256, 3, &r).unwrap(), s);
    }
}
