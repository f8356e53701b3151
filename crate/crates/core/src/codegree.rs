//! Pair and triple codegree tables for fast triple scans.

use crate::family::Family;
use std::collections::HashMap;

/// Counts of members through each pair and each triple of elements.
pub struct CodegreeIndex {
    n: usize,
    pair: Vec<u32>,
    triple: HashMap<(u16, u16, u16), u32>,
    size: u64,
}

impl CodegreeIndex {
    pub fn new(f: &Family) -> CodegreeIndex {
        let n = f.n();
        let mut pair = vec![0u32; n * n];
        let mut triple: HashMap<(u16, u16, u16), u32> = HashMap::new();
        for m in f.iter() {
            let e = m.to_vec();
            for a in 0..e.len() {
                for b in a + 1..e.len() {
                    pair[e[a] * n + e[b]] += 1;
                    for c in b + 1..e.len() {
                        *triple.entry((e[a] as u16, e[b] as u16, e[c] as u16)).or_default() += 1;
                    }
                }
            }
        }
        CodegreeIndex { n, pair, triple, size: f.len() as u64 }
    }

    pub fn pair(&self, x: usize, y: usize) -> u64 {
        let (x, y) = if x < y { (x, y) } else { (y, x) };
        self.pair[x * self.n + y] as u64
    }

    /// Members containing all of `t` (sorted ascending).
    pub fn triple(&self, t: [usize; 3]) -> u64 {
        self.triple.get(&(t[0] as u16, t[1] as u16, t[2] as u16)).copied().unwrap_or(0) as u64
    }

    fn pair_sum(&self, t: [usize; 3]) -> u64 {
        self.pair(t[0], t[1]) + self.pair(t[0], t[2]) + self.pair(t[1], t[2])
    }

    /// Members meeting `t` in exactly two points.
    pub fn exactly_two(&self, t: [usize; 3]) -> u64 {
        self.pair_sum(t) - 3 * self.triple(t)
    }

    /// Members meeting `t` in at most one point.
    pub fn at_most_one(&self, t: [usize; 3]) -> u64 {
        self.size - (self.pair_sum(t) - 2 * self.triple(t))
    }
}
