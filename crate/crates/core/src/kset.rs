//! Fixed-width bit vector over a ground set of at most [`MAX_N`] elements.
//!
//! Elements are 0-indexed in memory. The ordering implemented by [`Ord`] is the
//! lexicographic order on sets: `A < B` iff the smallest element of the
//! symmetric difference lies in `A`. Restricted to sets of equal size this is
//! the usual dictionary order on sorted element tuples.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

const WORDS: usize = 4;

/// Largest supported ground set.
pub const MAX_N: usize = 64 * WORDS;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KSet([u64; WORDS]);

impl KSet {
    pub const EMPTY: KSet = KSet([0; WORDS]);

    /// Builds a set from 0-indexed elements. Panics if an element is `>= MAX_N`.
    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> KSet {
        let mut s = KSet::EMPTY;
        for e in elems {
            s.insert(e);
        }
        s
    }

    /// The interval `{lo, .., hi-1}`.
    pub fn range(lo: usize, hi: usize) -> KSet {
        KSet::from_elems(lo..hi)
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        assert!(e < MAX_N, "element {e} exceeds ground-set capacity");
        self.0[e / 64] |= 1u64 << (e % 64);
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        if e < MAX_N {
            self.0[e / 64] &= !(1u64 << (e % 64));
        }
    }

    #[inline]
    pub fn with(mut self, e: usize) -> KSet {
        self.insert(e);
        self
    }

    #[inline]
    pub fn without(mut self, e: usize) -> KSet {
        self.remove(e);
        self
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        e < MAX_N && (self.0[e / 64] >> (e % 64)) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn intersects(&self, other: &KSet) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn intersection_len(&self, other: &KSet) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn is_subset(&self, other: &KSet) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    pub fn min_elem(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn max_elem(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 63 - w.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Elems {
        Elems { words: self.0, word: 0 }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies an element relabeling `map[old] = new`.
    pub fn relabel(&self, map: &[usize]) -> KSet {
        KSet::from_elems(self.iter().map(|e| map[e]))
    }
}

pub struct Elems {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Elems {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let bit = w.trailing_zeros() as usize;
                self.words[self.word] &= w - 1;
                return Some(self.word * 64 + bit);
            }
            self.word += 1;
        }
        None
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let d = a ^ b;
            if d != 0 {
                let low = d & d.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! wordwise {
    ($tr:ident, $f:ident, $op:expr) => {
        impl $tr for KSet {
            type Output = KSet;
            #[inline]
            fn $f(self, rhs: KSet) -> KSet {
                let mut out = [0u64; WORDS];
                for i in 0..WORDS {
                    out[i] = $op(self.0[i], rhs.0[i]);
                }
                KSet(out)
            }
        }
    };
}

wordwise!(BitAnd, bitand, |a, b| a & b);
wordwise!(BitOr, bitor, |a, b| a | b);
wordwise!(BitXor, bitxor, |a, b| a ^ b);
wordwise!(Sub, sub, |a: u64, b: u64| a & !b);

impl FromIterator<usize> for KSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        KSet::from_elems(iter)
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Calls `f` on `base ∪ S` for every `r`-subset `S` of `pool`, in lexicographic
/// order of `S`.
pub fn for_each_extension<F: FnMut(KSet)>(base: KSet, pool: &[usize], r: usize, mut f: F) {
    if r > pool.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        let mut s = base;
        for &i in &idx {
            s.insert(pool[i]);
        }
        f(s);
        let mut pos = r;
        while pos > 0 && idx[pos - 1] == pool.len() - r + pos - 1 {
            pos -= 1;
        }
        if pos == 0 {
            return;
        }
        idx[pos - 1] += 1;
        for j in pos..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All `k`-subsets of `[0, n)` in lexicographic order.
pub fn all_ksets(n: usize, k: usize) -> Vec<KSet> {
    let pool: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    for_each_extension(KSet::EMPTY, &pool, k, |s| out.push(s));
    out
}
