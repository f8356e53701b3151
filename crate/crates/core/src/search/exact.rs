//! Exhaustive branch-and-bound over intersecting families with a degree cap.
//!
//! The candidate sets are all of `C([n], k)` (at most 128 of them), so a
//! partial family and its remaining candidates are `u128` masks. Each node
//! bounds the achievable size by a greedy colouring of the candidates into
//! pairwise-disjoint classes and by the free degree capacity, and branches on
//! the lowest candidate (take it, or discard it).
//!
//! Every family of size at least three contains a three-member subfamily, so
//! the search is rooted at one representative per isomorphism class of
//! intersecting three-member families. Roots run in parallel and share the
//! incumbent size; the reported witness comes from a second, sequential pass
//! at the optimal size so that it does not depend on scheduling.

use super::{SearchOptions, SearchResult, GUARD_SETS};
use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::family::Family;
use crate::formulas::binom::binom_u64;
use crate::kset::{all_ksets, KSet};
use crate::rational::Rational;
use rayon::prelude::*;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

const MAX_SETS: u64 = 128;
const FLUSH: u64 = 4096;

/// Largest intersecting family with maximum degree at most `cap`.
#[derive(Clone, Debug)]
pub struct CapResult {
    pub size: usize,
    pub witness: Family,
    /// False when the node budget ran out before the search finished.
    pub exact: bool,
    pub nodes: u64,
}

struct Space {
    n: usize,
    k: usize,
    sets: Vec<KSet>,
    /// `adj[i]`: candidates meeting set `i`, excluding `i`.
    adj: Vec<u128>,
    /// `through[x]`: candidates containing element `x`.
    through: Vec<u128>,
}

impl Space {
    fn new(n: usize, k: usize, opts: &SearchOptions) -> Result<Space> {
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
        }
        let total = binom_u64(n as i64, k as i64).unwrap_or(u64::MAX);
        let limit = if opts.override_guard { MAX_SETS } else { GUARD_SETS };
        if total > limit {
            return Err(Error::GuardExceeded(format!("C({n},{k}) = {total} candidate sets, limit {limit}")));
        }
        let sets = all_ksets(n, k);
        let mut adj = vec![0u128; sets.len()];
        let mut through = vec![0u128; n];
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if i != j && a.intersects(b) {
                    adj[i] |= 1 << j;
                }
            }
            for x in a.iter() {
                through[x] |= 1 << i;
            }
        }
        Ok(Space { n, k, sets, adj, through })
    }

    fn index(&self, s: &KSet) -> usize {
        self.sets.binary_search(s).expect("k-set of the space")
    }

    fn family(&self, chosen: &[usize]) -> Family {
        Family::from_members(self.n, self.k, chosen.iter().map(|&i| self.sets[i]).collect()).expect("valid members")
    }

    /// Representatives of the isomorphism classes of intersecting families
    /// with `size` members (`size <= 3`), as index lists.
    fn roots(&self, size: usize) -> Vec<Vec<usize>> {
        let (n, k) = (self.n, self.k);
        let first = KSet::range(0, k);
        if size == 1 {
            return vec![vec![self.index(&first)]];
        }
        let mut pairs = Vec::new();
        for t in 1..k {
            if 2 * k - t <= n {
                let second = KSet::range(k - t, 2 * k - t);
                pairs.push([self.index(&first), self.index(&second)]);
            }
        }
        if size == 2 {
            return pairs.into_iter().map(|p| p.to_vec()).collect();
        }
        let mut seen: BTreeSet<Vec<KSet>> = BTreeSet::new();
        for [a, b] in pairs {
            let both = self.adj[a] & self.adj[b];
            for c in (0..self.sets.len()).filter(|&c| both >> c & 1 == 1) {
                let f = self.family(&[a, b, c]);
                seen.insert(canonical_form(&f).members().to_vec());
            }
        }
        seen.into_iter().map(|m| m.iter().map(|s| self.index(s)).collect()).collect()
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    /// Find anything larger than the shared incumbent.
    Improve,
    /// Stop at the first family of exactly this size.
    Find(usize),
    /// Record every family of exactly this size.
    Collect(usize),
}

struct Shared<'a> {
    sp: &'a Space,
    cap: u32,
    goal: Goal,
    best: &'a AtomicUsize,
    nodes: &'a AtomicU64,
    budget: u64,
    aborted: &'a AtomicBool,
}

#[derive(Default)]
struct Local {
    nodes: u64,
    best: Vec<usize>,
    found: Vec<Vec<usize>>,
    done: bool,
}

impl Shared<'_> {
    fn run_root(&self, root: &[usize]) -> Local {
        let mut local = Local::default();
        if self.nodes.load(Ordering::Relaxed) > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
        }
        if self.aborted.load(Ordering::Relaxed) {
            return local;
        }
        let mut deg = vec![0u32; self.sp.n];
        let mut cand = u128::MAX >> (128 - self.sp.sets.len());
        for &i in root {
            for x in self.sp.sets[i].iter() {
                deg[x] += 1;
                if deg[x] > self.cap {
                    return local;
                }
            }
            cand &= self.sp.adj[i] & !(1u128 << i);
        }
        for x in 0..self.sp.n {
            if deg[x] >= self.cap {
                cand &= !self.sp.through[x];
            }
        }
        let mut chosen = root.to_vec();
        self.expand(&mut chosen, &mut deg, cand, &mut local);
        self.nodes.fetch_add(local.nodes % FLUSH, Ordering::Relaxed);
        local
    }

    fn bound(&self, deg: &[u32], cand: u128) -> usize {
        let mut slots = 0usize;
        for (x, &d) in deg.iter().enumerate() {
            let avail = (cand & self.sp.through[x]).count_ones() as usize;
            slots += avail.min((self.cap - d) as usize);
        }
        let cap_bound = slots / self.sp.k;
        let mut colours = 0usize;
        let mut rest = cand;
        while rest != 0 && colours < cap_bound {
            colours += 1;
            let mut class = rest;
            while class != 0 {
                let v = class.trailing_zeros() as usize;
                rest &= !(1u128 << v);
                class &= !self.sp.adj[v] & !(1u128 << v);
            }
        }
        colours.min(cap_bound)
    }

    fn expand(&self, chosen: &mut Vec<usize>, deg: &mut [u32], cand: u128, local: &mut Local) {
        if local.done {
            return;
        }
        local.nodes += 1;
        if local.nodes.is_multiple_of(FLUSH) {
            let total = self.nodes.fetch_add(FLUSH, Ordering::Relaxed) + FLUSH;
            if total > self.budget {
                self.aborted.store(true, Ordering::Relaxed);
            }
        }
        if self.aborted.load(Ordering::Relaxed) {
            local.done = true;
            return;
        }
        let size = chosen.len();
        match self.goal {
            Goal::Improve => {
                if size > local.best.len() {
                    local.best = chosen.clone();
                    self.best.fetch_max(size, Ordering::Relaxed);
                }
            }
            Goal::Find(t) if size == t => {
                local.best = chosen.clone();
                local.done = true;
                return;
            }
            Goal::Collect(t) if size == t => {
                local.found.push(chosen.clone());
                return;
            }
            _ => {}
        }
        if cand == 0 {
            return;
        }
        let ub = size + self.bound(deg, cand);
        let prune = match self.goal {
            Goal::Improve => ub <= self.best.load(Ordering::Relaxed),
            Goal::Find(t) | Goal::Collect(t) => ub < t,
        };
        if prune {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        let rest = cand & !(1u128 << v);
        // take v
        let mut next = rest & self.sp.adj[v];
        for x in self.sp.sets[v].iter() {
            deg[x] += 1;
            if deg[x] == self.cap {
                next &= !self.sp.through[x];
            }
        }
        chosen.push(v);
        self.expand(chosen, deg, next, local);
        chosen.pop();
        for x in self.sp.sets[v].iter() {
            deg[x] -= 1;
        }
        // discard v
        self.expand(chosen, deg, rest, local);
    }
}

fn cap_u32(cap: u64) -> u32 {
    cap.min(u32::MAX as u64) as u32
}

fn search_cap(sp: &Space, cap: u64, budget: u64, opts: &SearchOptions) -> CapResult {
    let cap = cap_u32(cap);
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let best = AtomicUsize::new(0);
    let base = |goal| Shared { sp, cap, goal, best: &best, nodes: &nodes, budget, aborted: &aborted };

    // small optima first: no intersecting triple under the cap
    let mut small: Vec<usize> = Vec::new();
    if cap >= 1 && !sp.sets.is_empty() {
        small = sp.roots(1).remove(0);
        for pair in sp.roots(2) {
            let ok = pair.iter().fold(vec![0u32; sp.n], |mut d, &i| {
                sp.sets[i].iter().for_each(|x| d[x] += 1);
                d
            });
            if ok.iter().all(|&d| d <= cap) {
                small = pair;
                break;
            }
        }
    }
    let roots: Vec<Vec<usize>> = if small.len() == 2 { sp.roots(3) } else { Vec::new() };
    let shared = base(Goal::Improve);
    best.store(small.len(), Ordering::Relaxed);
    let locals: Vec<Local> = opts.install(|| roots.par_iter().map(|r| shared.run_root(r)).collect());
    let size = best.load(Ordering::Relaxed);
    let exact = !aborted.load(Ordering::Relaxed);

    let witness = if size <= small.len() {
        small
    } else if exact {
        let (fnodes, fabort) = (AtomicU64::new(0), AtomicBool::new(false));
        let finder = Shared { budget: u64::MAX, nodes: &fnodes, aborted: &fabort, ..base(Goal::Find(size)) };
        roots
            .iter()
            .map(|r| finder.run_root(r))
            .find(|l| l.best.len() == size)
            .map(|l| l.best)
            .expect("optimum is reachable from some root")
    } else {
        locals.into_iter().max_by_key(|l| l.best.len()).map(|l| l.best).unwrap_or_default()
    };
    CapResult {
        size: witness.len(),
        witness: sp.family(&witness),
        exact,
        nodes: nodes.load(Ordering::Relaxed),
    }
}

/// Exact maximum `|F|` over intersecting `F ⊆ C([n], k)` with `Δ(F) <= cap`.
/// The result is flagged inexact if the node budget runs out.
pub fn max_size_with_degree_cap(n: usize, k: usize, cap: u64, opts: &SearchOptions) -> Result<CapResult> {
    let sp = Space::new(n, k, opts)?;
    Ok(search_cap(&sp, cap, opts.budget, opts))
}

fn largest_cap(n: usize, k: usize) -> u64 {
    binom_u64(n as i64 - 1, k as i64 - 1).unwrap_or(u64::MAX)
}

/// Exact maximum of `γ_C` by iterating the degree cap. Fails with
/// [`Error::BudgetExceeded`] rather than returning an unproven value.
pub fn max_c_diversity_exact(n: usize, k: usize, c: &Rational, opts: &SearchOptions) -> Result<SearchResult> {
    Ok(scan_caps(n, k, c, opts)?.0)
}

/// Returns the optimum together with `(cap, s(cap))` for every cap.
fn scan_caps(n: usize, k: usize, c: &Rational, opts: &SearchOptions) -> Result<(SearchResult, Vec<(u64, usize)>)> {
    let sp = Space::new(n, k, opts)?;
    let mut nodes = 0u64;
    let mut best: Option<(Rational, Family, u64)> = None;
    let mut sizes = Vec::new();
    for cap in 0..=largest_cap(n, k) {
        let r = search_cap(&sp, cap, opts.budget.saturating_sub(nodes), opts);
        nodes += r.nodes;
        if !r.exact {
            return Err(Error::BudgetExceeded(opts.budget));
        }
        sizes.push((cap, r.size));
        let value = r.witness.c_diversity(c);
        if best.as_ref().is_none_or(|(v, _, _)| value > *v) {
            best = Some((value, r.witness, cap));
        }
    }
    let (best_value, best_family, cap) = best.expect("cap 0 always runs");
    let result = SearchResult {
        best_family,
        best_value,
        exact: true,
        nodes_explored: nodes,
        degree_cap_used: Some(cap),
        seed: None,
    };
    Ok((result, sizes))
}

/// The optimum of `γ_C` together with one canonical representative of every
/// isomorphism class attaining it.
pub fn extremal_families(n: usize, k: usize, c: &Rational, opts: &SearchOptions) -> Result<(SearchResult, Vec<Family>)> {
    let (result, sizes) = scan_caps(n, k, c, opts)?;
    let sp = Space::new(n, k, opts)?;
    let mut forms: BTreeSet<Vec<KSet>> = BTreeSet::new();
    for (cap, size) in sizes {
        let value = Rational::from(size as i64) - c.clone() * Rational::from(cap as i64);
        if value != result.best_value {
            continue;
        }
        for f in collect_cap(&sp, cap, size, opts)? {
            if f.delta() == cap {
                forms.insert(canonical_form(&f).members().to_vec());
            }
        }
    }
    let families = forms.into_iter().map(|m| Family::from_members(n, k, m).expect("valid members")).collect();
    Ok((result, families))
}

fn collect_cap(sp: &Space, cap: u64, size: usize, opts: &SearchOptions) -> Result<Vec<Family>> {
    if size == 0 {
        return Ok(vec![sp.family(&[])]);
    }
    if size < 3 {
        let fams = sp.roots(size).into_iter().map(|r| sp.family(&r));
        return Ok(fams.filter(|f| f.delta() <= cap).collect());
    }
    let nodes = AtomicU64::new(0);
    let aborted = AtomicBool::new(false);
    let best = AtomicUsize::new(0);
    let shared = Shared {
        sp,
        cap: cap_u32(cap),
        goal: Goal::Collect(size),
        best: &best,
        nodes: &nodes,
        budget: opts.budget,
        aborted: &aborted,
    };
    let roots = sp.roots(3);
    let found: Vec<Vec<usize>> =
        opts.install(|| roots.par_iter().flat_map_iter(|r| shared.run_root(r).found).collect());
    if aborted.load(Ordering::Relaxed) {
        return Err(Error::BudgetExceeded(opts.budget));
    }
    Ok(found.iter().map(|f| sp.family(f)).collect())
}
