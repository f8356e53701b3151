//! Seeded local search for large `γ_C`.
//!
//! The state is an intersecting family with per-element degrees and a table
//! counting, for every nonempty subset `S` of a member, how many members
//! contain `S`. By inclusion-exclusion over the subsets of a candidate `X`
//! this gives the number of members disjoint from `X` in `2^k` lookups, which
//! decides add and swap moves without scanning the family.
//!
//! Moves are proposed around existing members (one element replaced) or
//! uniformly at random, and accepted when `q|F| - pΔ(F)` (for `C = p/q`) does
//! not decrease. Restarts are independent and seeded from `(seed, restart)`.

use super::{SearchOptions, SearchResult};
use crate::constructions::{family_fi, family_triangle, fano_families, full_star};
use crate::error::{invalid, Result};
use crate::family::Family;
use crate::kset::{for_each_extension, KSet, MAX_N};
use crate::rational::Rational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;

/// Largest uniformity the subset-count table supports.
pub const MAX_K: usize = 10;

#[derive(Clone, Debug)]
pub struct HeuristicConfig {
    /// Total proposed moves, split evenly over restarts.
    pub moves: u64,
    pub seed: u64,
    /// Restarts beyond the canonical starting families, each from an empty family.
    pub random_restarts: usize,
    /// Extra starting families (must be intersecting).
    pub extra_starts: Vec<Family>,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig { moves: 100_000, seed: 0, random_restarts: 2, extra_starts: Vec::new() }
    }
}

/// Full star, `F_3`, the triangle family, and the Fano families where they exist.
pub fn canonical_starts(n: usize, k: usize) -> Vec<(String, Family)> {
    let mut out = Vec::new();
    if let Ok(f) = full_star(n, k, 0) {
        out.push(("star".to_string(), f));
    }
    if k >= 2 && n > 2 {
        if let Ok(f) = family_fi(n, k, 3) {
            out.push(("f3".to_string(), f));
        }
        if let Ok(f) = family_triangle(n, k) {
            out.push(("triangle".to_string(), f));
        }
    }
    if n >= 7 && k >= 3 {
        if let Ok((fl, flp)) = fano_families(n, k) {
            out.push(("fano-l".to_string(), fl));
            if k >= 4 {
                out.push(("fano-lplus".to_string(), flp));
            }
        }
    }
    out
}

struct State {
    n: usize,
    k: usize,
    members: Vec<KSet>,
    pos: HashMap<KSet, usize>,
    deg: Vec<u32>,
    /// `hist[d]`: elements of degree `d`.
    hist: Vec<u32>,
    max_deg: usize,
    sub: HashMap<KSet, u32>,
}

fn subsets(s: &KSet, mut f: impl FnMut(KSet, usize)) {
    let elems = s.to_vec();
    for r in 1..=elems.len() {
        for_each_extension(KSet::EMPTY, &elems, r, |t| f(t, r));
    }
}

impl State {
    fn new(n: usize, k: usize) -> State {
        let mut hist = vec![0u32; 1];
        hist[0] = n as u32;
        State { n, k, members: Vec::new(), pos: HashMap::new(), deg: vec![0; n], hist, max_deg: 0, sub: HashMap::new() }
    }

    fn from_family(f: &Family) -> State {
        let mut s = State::new(f.n(), f.k());
        for m in f.iter() {
            s.add(*m);
        }
        s
    }

    fn bump(&mut self, x: usize, up: bool) {
        let d = self.deg[x] as usize;
        self.hist[d] -= 1;
        let nd = if up { d + 1 } else { d - 1 };
        if nd >= self.hist.len() {
            self.hist.resize(nd + 1, 0);
        }
        self.hist[nd] += 1;
        self.deg[x] = nd as u32;
        if nd > self.max_deg {
            self.max_deg = nd;
        }
        while self.max_deg > 0 && self.hist[self.max_deg] == 0 {
            self.max_deg -= 1;
        }
    }

    fn add(&mut self, s: KSet) {
        self.pos.insert(s, self.members.len());
        self.members.push(s);
        for x in s.iter() {
            self.bump(x, true);
        }
        let sub = &mut self.sub;
        subsets(&s, |t, _| *sub.entry(t).or_default() += 1);
    }

    fn remove(&mut self, s: KSet) {
        let i = self.pos.remove(&s).expect("member");
        self.members.swap_remove(i);
        if i < self.members.len() {
            self.pos.insert(self.members[i], i);
        }
        for x in s.iter() {
            self.bump(x, false);
        }
        let sub = &mut self.sub;
        subsets(&s, |t, _| {
            let c = sub.get_mut(&t).expect("counted subset");
            *c -= 1;
            if *c == 0 {
                sub.remove(&t);
            }
        });
    }

    /// Number of members disjoint from `x`.
    fn disjoint_count(&self, x: &KSet) -> i64 {
        let mut meet = 0i64;
        subsets(x, |t, r| {
            let c = self.sub.get(&t).copied().unwrap_or(0) as i64;
            meet += if r % 2 == 1 { c } else { -c };
        });
        self.members.len() as i64 - meet
    }

    /// Maximum degree after adding `add` and removing `drop`.
    fn delta_after(&self, add: Option<&KSet>, drop: Option<&KSet>) -> usize {
        let mut touched: Vec<(usize, i64)> = Vec::with_capacity(2 * self.k);
        let mut note = |x: usize, d: i64| match touched.iter_mut().find(|(y, _)| *y == x) {
            Some(e) => e.1 += d,
            None => touched.push((x, d)),
        };
        if let Some(a) = add {
            a.iter().for_each(|x| note(x, 1));
        }
        if let Some(r) = drop {
            r.iter().for_each(|x| note(x, -1));
        }
        let mut best = 0usize;
        for &(x, d) in &touched {
            best = best.max((self.deg[x] as i64 + d) as usize);
        }
        // highest level still occupied by an element we did not touch
        let mut lvl = self.max_deg;
        while lvl > 0 {
            let moved = touched.iter().filter(|(x, _)| self.deg[*x] as usize == lvl).count() as u32;
            if self.hist[lvl] > moved {
                break;
            }
            lvl -= 1;
        }
        best.max(lvl)
    }

    #[cfg(test)]
    fn family(&self) -> Family {
        Family::from_members(self.n, self.k, self.members.clone()).expect("valid members")
    }
}

struct Objective {
    p: i64,
    q: i64,
}

impl Objective {
    fn new(c: &Rational) -> Result<Objective> {
        let (Some(p), Some(q)) = (c.numer().to_i64(), c.denom().to_i64()) else {
            return invalid(format!("C = {c} too large for local search"));
        };
        Ok(Objective { p, q })
    }

    fn value(&self, size: usize, delta: usize) -> i128 {
        self.q as i128 * size as i128 - self.p as i128 * delta as i128
    }
}

fn random_kset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> KSet {
    let pool: Vec<usize> = (0..n).collect();
    KSet::from_elems(pool.choose_multiple(rng, k).copied())
}

fn mutate(rng: &mut ChaCha8Rng, n: usize, m: &KSet) -> KSet {
    let elems = m.to_vec();
    let out = elems[rng.gen_range(0..elems.len())];
    loop {
        let inn = rng.gen_range(0..n);
        if !m.contains(inn) {
            return m.without(out).with(inn);
        }
    }
}

fn run_one(st: &mut State, obj: &Objective, moves: u64, rng: &mut ChaCha8Rng) -> (i128, Vec<KSet>) {
    let (n, k) = (st.n, st.k);
    let mut cur = obj.value(st.members.len(), st.max_deg);
    let mut best = (cur, st.members.clone());
    for _ in 0..moves {
        let kind = rng.gen_range(0..10);
        if kind == 0 && !st.members.is_empty() {
            // removal
            let y = st.members[rng.gen_range(0..st.members.len())];
            let v = obj.value(st.members.len() - 1, st.delta_after(None, Some(&y)));
            if v >= cur {
                st.remove(y);
                cur = v;
            }
            continue;
        }
        let x = if st.members.is_empty() || kind == 1 {
            random_kset(rng, n, k)
        } else {
            let m = st.members[rng.gen_range(0..st.members.len())];
            mutate(rng, n, &m)
        };
        if st.pos.contains_key(&x) {
            continue;
        }
        match st.disjoint_count(&x) {
            0 => {
                let v = obj.value(st.members.len() + 1, st.delta_after(Some(&x), None));
                if v >= cur {
                    st.add(x);
                    cur = v;
                }
            }
            1 => {
                let y = *st.members.iter().find(|m| !m.intersects(&x)).expect("one disjoint member");
                let v = obj.value(st.members.len(), st.delta_after(Some(&x), Some(&y)));
                if v >= cur {
                    st.remove(y);
                    st.add(x);
                    cur = v;
                }
            }
            _ => {}
        }
        if cur > best.0 {
            best = (cur, st.members.clone());
        }
    }
    best
}

/// Local search from every canonical start plus `random_restarts` empty starts.
/// Deterministic for a fixed configuration regardless of the worker count.
pub fn local_search(n: usize, k: usize, c: &Rational, cfg: &HeuristicConfig, opts: &SearchOptions) -> Result<SearchResult> {
    if n > MAX_N || k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n <= {MAX_N}, got n={n}, k={k}"));
    }
    if k > MAX_K {
        return invalid(format!("local search supports k <= {MAX_K}"));
    }
    let obj = Objective::new(c)?;
    let mut starts: Vec<Family> = canonical_starts(n, k).into_iter().map(|(_, f)| f).collect();
    for f in &cfg.extra_starts {
        if f.n() != n || f.k() != k || !f.is_intersecting() {
            return invalid("extra start must be an intersecting family on the same (n, k)");
        }
        starts.push(f.clone());
    }
    let empty = Family::empty(n, k)?;
    starts.extend(std::iter::repeat_n(empty, cfg.random_restarts));
    let total = starts.len() as u64;
    let per = cfg.moves / total;
    let runs: Vec<(i128, Vec<KSet>)> = opts.install(|| {
        starts
            .par_iter()
            .enumerate()
            .map(|(r, f)| {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
                rng.set_stream(r as u64);
                let mut st = State::from_family(f);
                run_one(&mut st, &obj, per, &mut rng)
            })
            .collect()
    });
    let (_, members) = runs.into_iter().reduce(|a, b| if b.0 > a.0 { b } else { a }).expect("at least one start");
    let best_family = Family::from_members(n, k, members)?;
    debug_assert!(best_family.is_intersecting());
    Ok(SearchResult {
        best_value: best_family.c_diversity(c),
        best_family,
        exact: false,
        nodes_explored: per * total,
        degree_cap_used: None,
        seed: Some(cfg.seed),
    })
}
