//! k-uniform families and the measurements taken on them.

use crate::error::{invalid, Error, Result};
use crate::kset::{for_each_extension, KSet, MAX_N};
use crate::rational::Rational;
use std::fmt;
use std::sync::OnceLock;

/// A duplicate-free, lexicographically sorted collection of `k`-subsets of `[0, n)`.
///
/// Degrees are derived on first use and cached; the value is otherwise immutable.
#[derive(Clone)]
pub struct Family {
    n: usize,
    k: usize,
    members: Vec<KSet>,
    degrees: OnceLock<Vec<u64>>,
}

/// The pair `(P, Q)` selecting members with `F ∩ Q = P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TraceSpec {
    pub p: KSet,
    pub q: KSet,
}

impl TraceSpec {
    pub fn new(p: KSet, q: KSet) -> Result<TraceSpec> {
        if !p.is_subset(&q) {
            return invalid("trace requires P ⊆ Q");
        }
        Ok(TraceSpec { p, q })
    }

    /// `F(x)`: members through `x`, with `x` removed.
    pub fn link(x: usize) -> TraceSpec {
        let s = KSet::from_elems([x]);
        TraceSpec { p: s, q: s }
    }

    /// `F(x̄)`: members avoiding `x`.
    pub fn avoid(x: usize) -> TraceSpec {
        TraceSpec { p: KSet::EMPTY, q: KSet::from_elems([x]) }
    }

    /// `F(x, ȳ)`: members through `x` and avoiding `y`.
    pub fn with_without(x: usize, y: usize) -> TraceSpec {
        TraceSpec { p: KSet::from_elems([x]), q: KSet::from_elems([x, y]) }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::GroundSetTooLarge(n));
    }
    if n == 0 {
        return invalid("ground set must be nonempty");
    }
    Ok(())
}

impl Family {
    pub fn empty(n: usize, k: usize) -> Result<Family> {
        check_n(n)?;
        Ok(Family::from_sorted_unchecked(n, k, Vec::new()))
    }

    /// Sorts and deduplicates `members`, validating cardinality and range.
    pub fn from_members(n: usize, k: usize, mut members: Vec<KSet>) -> Result<Family> {
        check_n(n)?;
        for m in &members {
            if m.len() != k {
                return Err(Error::WrongCardinality { expected: k, found: m.len() });
            }
            if let Some(e) = m.max_elem() {
                if e >= n {
                    return Err(Error::ElementOutOfRange { elem: e + 1, n });
                }
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(Family::from_sorted_unchecked(n, k, members))
    }

    /// Strict constructor for 1-indexed element lists (the on-disk convention).
    /// Rejects duplicates, unsorted lists, wrong cardinality and out-of-range elements.
    pub fn from_one_based(n: usize, k: usize, sets: &[Vec<usize>]) -> Result<Family> {
        check_n(n)?;
        let mut members = Vec::with_capacity(sets.len());
        for s in sets {
            if s.len() != k {
                return Err(Error::WrongCardinality { expected: k, found: s.len() });
            }
            if s.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotIncreasing(s.clone()));
            }
            for &e in s {
                if e == 0 || e > n {
                    return Err(Error::ElementOutOfRange { elem: e, n });
                }
            }
            members.push(KSet::from_elems(s.iter().map(|e| e - 1)));
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Duplicate(w[0].iter().map(|e| e + 1).collect()));
        }
        Ok(Family::from_sorted_unchecked(n, k, members))
    }

    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.members.iter().map(|m| m.iter().map(|e| e + 1).collect()).collect()
    }

    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, members: Vec<KSet>) -> Family {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Family { n, k, members, degrees: OnceLock::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[KSet] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.members.iter()
    }

    pub fn contains(&self, s: &KSet) -> bool {
        self.members.binary_search(s).is_ok()
    }

    /// Per-element degrees, indexed by 0-based element.
    pub fn degrees(&self) -> &[u64] {
        self.degrees.get_or_init(|| {
            let mut d = vec![0u64; self.n];
            for m in &self.members {
                for e in m.iter() {
                    d[e] += 1;
                }
            }
            d
        })
    }

    pub fn degree(&self, x: usize) -> Result<u64> {
        if x >= self.n {
            return Err(Error::ElementOutOfRange { elem: x + 1, n: self.n });
        }
        Ok(self.degrees()[x])
    }

    /// Maximum degree and the smallest element attaining it.
    pub fn max_degree(&self) -> (u64, usize) {
        let d = self.degrees();
        let mut best = (0, 0);
        for (x, &v) in d.iter().enumerate() {
            if v > best.0 {
                best = (v, x);
            }
        }
        best
    }

    pub fn delta(&self) -> u64 {
        self.max_degree().0
    }

    /// `|F| - Δ(F)`.
    pub fn diversity(&self) -> u64 {
        self.len() as u64 - self.delta()
    }

    /// `|F| - C·Δ(F)`, exact and possibly negative.
    pub fn c_diversity(&self, c: &Rational) -> Rational {
        Rational::from(self.len() as i64) - c * &Rational::from(self.delta() as i64)
    }

    /// `Δ(F)/|F|`.
    pub fn rho(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Rational::new(self.delta() as i64, self.len() as i64)
    }

    /// True iff some element lies in every member (the empty family counts).
    pub fn is_star(&self) -> bool {
        self.delta() as usize == self.len()
    }

    pub fn is_intersecting(&self) -> bool {
        if self.k == 0 {
            return self.is_empty();
        }
        if self.is_star() {
            return true;
        }
        let m = &self.members;
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if !m[i].intersects(&m[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether `s` meets every member.
    pub fn is_compatible(&self, s: &KSet) -> bool {
        self.members.iter().all(|m| m.intersects(s))
    }

    /// `F(P,Q) = { F \ Q : F ∩ Q = P }`, kept on the same labels (elements of
    /// `Q` simply never occur) with uniformity `k - |P|`.
    pub fn trace(&self, spec: &TraceSpec) -> Result<Family> {
        if let Some(e) = spec.q.max_elem() {
            if e >= self.n {
                return Err(Error::ElementOutOfRange { elem: e + 1, n: self.n });
            }
        }
        if !spec.p.is_subset(&spec.q) {
            return invalid("trace requires P ⊆ Q");
        }
        let pk = spec.p.len();
        if pk > self.k {
            return invalid(format!("|P| = {pk} exceeds uniformity {}", self.k));
        }
        let members: Vec<KSet> = self
            .members
            .iter()
            .filter(|m| (**m & spec.q) == spec.p)
            .map(|m| *m - spec.q)
            .collect();
        // all selected members agree on Q, so stripping Q keeps them sorted
        Ok(Family::from_sorted_unchecked(self.n, self.k - pk, members))
    }

    /// `|F(P,Q)|` without materializing the trace.
    pub fn trace_count(&self, p: KSet, q: KSet) -> u64 {
        self.members.iter().filter(|m| (**m & q) == p).count() as u64
    }

    /// The `l`-shadow: all `l`-sets contained in some member.
    pub fn shadow(&self, l: usize) -> Result<Family> {
        if l > self.k {
            return invalid(format!("shadow level {l} exceeds uniformity {}", self.k));
        }
        if l == self.k {
            return Ok(self.clone());
        }
        let mut out = Vec::new();
        for m in &self.members {
            let elems = m.to_vec();
            for_each_extension(KSet::EMPTY, &elems, l, |s| out.push(s));
        }
        out.sort_unstable();
        out.dedup();
        Ok(Family::from_sorted_unchecked(self.n, l, out))
    }

    /// Maximum number of pairwise disjoint members.
    pub fn matching_number(&self) -> usize {
        fn go(cands: &[KSet], used: KSet, size: usize, n: usize, k: usize, best: &mut usize) {
            if size > *best {
                *best = size;
            }
            let avail: Vec<KSet> = cands.iter().copied().filter(|c| !c.intersects(&used)).collect();
            if avail.is_empty() || k == 0 {
                return;
            }
            let free = n - used.len();
            if size + (free / k).min(avail.len()) <= *best {
                return;
            }
            // branch on the smallest element still coverable: either some
            // member through it is taken, or none is
            let pivot = avail.iter().filter_map(|c| c.min_elem()).min().unwrap();
            let (through, rest): (Vec<KSet>, Vec<KSet>) =
                avail.iter().partition(|c| c.contains(pivot));
            for c in &through {
                go(&rest, used | *c, size + 1, n, k, best);
            }
            go(&rest, used.with(pivot), size, n, k, best);
        }
        if self.k == 0 {
            return 0;
        }
        let mut best = 0;
        go(&self.members, KSet::EMPTY, 0, self.n, self.k, &mut best);
        best
    }

    /// A `k`-set outside `F` meeting every member, if one exists.
    pub fn find_addable(&self) -> Option<KSet> {
        fn go(f: &Family, s: KSet) -> Option<KSet> {
            match f.members.iter().find(|m| !m.intersects(&s)) {
                None => {
                    let pool: Vec<usize> = (0..f.n).filter(|e| !s.contains(*e)).collect();
                    let mut found = None;
                    let need = f.k - s.len();
                    // at most |F| + 1 extensions are inspected before one is missing
                    let mut checked = 0usize;
                    let limit = f.len() + 1;
                    for_each_extension(s, &pool, need, |g| {
                        if found.is_none() && checked < limit {
                            checked += 1;
                            if !f.contains(&g) {
                                found = Some(g);
                            }
                        }
                    });
                    found
                }
                Some(_) if s.len() == f.k => None,
                Some(m) => m.iter().find_map(|e| go(f, s.with(e))),
            }
        }
        if self.k == 0 || self.k > self.n {
            return None;
        }
        go(self, KSet::EMPTY)
    }

    pub fn is_saturated(&self) -> Result<bool> {
        if !self.is_intersecting() {
            return Err(Error::NotIntersecting);
        }
        Ok(self.find_addable().is_none())
    }

    /// Adds addable `k`-sets in lexicographic order until none is left.
    ///
    /// One pass suffices: a set rejected earlier stays rejected once more
    /// members are present.
    pub fn saturate(&self) -> Result<Family> {
        if !self.is_intersecting() {
            return Err(Error::NotIntersecting);
        }
        let mut members = self.members.clone();
        let pool: Vec<usize> = (0..self.n).collect();
        for_each_extension(KSet::EMPTY, &pool, self.k, |g| {
            if members.iter().all(|m| m.intersects(&g)) && members.binary_search(&g).is_err() {
                let pos = members.binary_search(&g).unwrap_err();
                members.insert(pos, g);
            }
        });
        Ok(Family::from_sorted_unchecked(self.n, self.k, members))
    }

    /// Applies `map[old] = new` to every member.
    pub fn relabel(&self, map: &[usize]) -> Family {
        let mut members: Vec<KSet> = self.members.iter().map(|m| m.relabel(map)).collect();
        members.sort_unstable();
        Family::from_sorted_unchecked(self.n, self.k, members)
    }

    pub fn union(&self, other: &Family) -> Result<Family> {
        if self.n != other.n || self.k != other.k {
            return Err(Error::MismatchedGroundSets(self.n, other.n));
        }
        let mut m = self.members.clone();
        m.extend_from_slice(&other.members);
        m.sort_unstable();
        m.dedup();
        Ok(Family::from_sorted_unchecked(self.n, self.k, m))
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &Family) -> Vec<KSet> {
        self.members.iter().copied().filter(|m| !other.contains(m)).collect()
    }

    pub fn is_subfamily_of(&self, other: &Family) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }
}

/// Whether every `A`-member meets every `B`-member in at least `t` elements.
pub fn cross_intersecting(a: &Family, b: &Family, t: usize) -> Result<bool> {
    if a.n != b.n {
        return Err(Error::MismatchedGroundSets(a.n, b.n));
    }
    Ok(a.members.iter().all(|x| b.members.iter().all(|y| x.intersection_len(y) >= t)))
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.members == other.members
    }
}

impl Eq for Family {}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(n={}, k={}, {:?})", self.n, self.k, self.to_one_based())
    }
}
