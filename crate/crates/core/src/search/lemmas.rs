//! Brute-force oracles for the cross-intersecting lemmas.

use crate::constructions::{lex_family, shift};
use crate::error::{invalid, Error, Result};
use crate::family::{cross_intersecting, Family, TraceSpec};
use crate::formulas::binom::{binom, binom_u64};
use crate::kset::{all_ksets, KSet};
use crate::rational::BigCount;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Largest universe (number of `ℓ`-sets) the exhaustive oracles accept.
pub const EXHAUSTIVE_SETS: u64 = 24;

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub holds: bool,
    pub pairs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(Family, Family)>,
}

fn masks_to_family(n: usize, k: usize, sets: &[KSet], mask: u64) -> Family {
    let members = (0..sets.len()).filter(|&i| mask >> i & 1 == 1).map(|i| sets[i]).collect();
    Family::from_members(n, k, members).expect("valid members")
}

/// Enumerates every `A ⊆ C([m], ℓ)` with at least `min` members whose
/// compatible set (the `ℓ`-sets meeting all of `A`) still has at least
/// `min` members, calling `f(A, compatible)` as masks.
fn for_each_large_a(sets: &[KSet], min: u32, mut f: impl FnMut(u64, u64) -> bool) {
    let total = sets.len();
    let meets: Vec<u64> = sets
        .iter()
        .map(|a| (0..total).filter(|&j| sets[j].intersects(a)).fold(0u64, |m, j| m | 1 << j))
        .collect();
    let full = if total == 64 { u64::MAX } else { (1u64 << total) - 1 };
    // stack of (next index, chosen mask, compatible mask)
    let mut stack = vec![(0usize, 0u64, full)];
    while let Some((next, chosen, comp)) = stack.pop() {
        if chosen.count_ones() >= min && !f(chosen, comp) {
            return;
        }
        for i in (next..total).rev() {
            let comp2 = comp & meets[i];
            if comp2.count_ones() < min {
                continue;
            }
            if chosen.count_ones() + ((total - i) as u32) < min {
                continue;
            }
            stack.push((i + 1, chosen | 1 << i, comp2));
        }
    }
}

/// For cross-intersecting `A, B ⊆ C([m], ℓ)` with `|A|, |B| >= 5·C(m-2, ℓ-2)`,
/// checks that some `j` has `|A(j̄)|, |B(j̄)| <= C(m-2, ℓ-2)`.
///
/// Every `A` above the threshold is enumerated (pruned once its compatible
/// sets drop below the threshold); for each, every `B` inside the compatible
/// sets is enumerated.
pub fn verify_lemma_fk(m: usize, l: usize, override_guard: bool) -> Result<LemmaReport> {
    if l < 2 || m < 2 * l {
        return invalid(format!("need l >= 2 and m >= 2l, got m={m}, l={l}"));
    }
    let total = binom_u64(m as i64, l as i64).unwrap_or(u64::MAX);
    if total > 64 || (total > EXHAUSTIVE_SETS && !override_guard) {
        return Err(Error::GuardExceeded(format!("C({m},{l}) = {total} sets")));
    }
    let bound = binom_u64(m as i64 - 2, l as i64 - 2).expect("small") as u32;
    let min = 5 * bound;
    let sets = all_ksets(m, l);
    let avoid: Vec<u64> = (0..m)
        .map(|j| (0..sets.len()).filter(|&i| !sets[i].contains(j)).fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    let mut report = LemmaReport { holds: true, pairs_checked: 0, counterexample: None };
    for_each_large_a(&sets, min, |a, comp| {
        let good_j: Vec<u64> =
            (0..m).filter(|&j| (a & avoid[j]).count_ones() <= bound).map(|j| avoid[j]).collect();
        let slots: Vec<usize> = (0..sets.len()).filter(|&i| comp >> i & 1 == 1).collect();
        for sub in 0u64..(1u64 << slots.len()) {
            if sub.count_ones() < min {
                continue;
            }
            let b = slots.iter().enumerate().filter(|(t, _)| sub >> t & 1 == 1).fold(0u64, |acc, (_, &i)| acc | 1 << i);
            report.pairs_checked += 1;
            if !good_j.iter().any(|&av| (b & av).count_ones() <= bound) {
                report.holds = false;
                report.counterexample = Some((masks_to_family(m, l, &sets, a), masks_to_family(m, l, &sets, b)));
                return false;
            }
        }
        true
    });
    Ok(report)
}

#[derive(Clone, Copy, Debug)]
pub enum HiltonMode {
    /// Every cross-intersecting pair (requires a small universe).
    Exhaustive,
    /// Random pairs from a fixed seed.
    Trials { trials: u64, seed: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct HiltonReport {
    pub holds: bool,
    pub pairs_checked: u64,
    pub shift_pairs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(Family, Family)>,
}

/// `ok[s][t]`: whether `L(n,a,s)` and `L(n,b,t)` are cross-intersecting.
/// Monotone in both sizes, so each row stores the largest good `t`.
fn lex_table(n: usize, a: usize, b: usize) -> Vec<usize> {
    let la = all_ksets(n, a);
    let lb = all_ksets(n, b);
    let mut limit = Vec::with_capacity(la.len() + 1);
    let mut t = lb.len();
    limit.push(t);
    for s in 1..=la.len() {
        let new = la[s - 1];
        while t > 0 && !(0..t).all(|j| lb[j].intersects(&new)) {
            t -= 1;
        }
        limit.push(t);
    }
    limit
}

/// Shifts `(A, B)` with the same `(i, j)` until both are stable, checking
/// cross-intersection after every step. Returns false on the first failure.
pub fn shift_route_preserves(a: &Family, b: &Family) -> bool {
    let (mut a, mut b) = (a.clone(), b.clone());
    let n = a.n();
    loop {
        let mut moved = false;
        for j in 1..n {
            for i in 0..j {
                let na = shift(&a, i, j).expect("valid shift");
                let nb = shift(&b, i, j).expect("valid shift");
                if na != a || nb != b {
                    moved = true;
                    if !cross_intersecting(&na, &nb, 1).expect("same ground set") {
                        return false;
                    }
                    a = na;
                    b = nb;
                }
            }
        }
        if !moved {
            return true;
        }
    }
}

/// Checks that cross-intersecting `A ⊆ C([n], a)`, `B ⊆ C([n], b)` can be
/// replaced by lexicographic prefixes of the same sizes, and that shifting
/// keeps them cross-intersecting.
///
/// In exhaustive mode the lex check covers every pair: for fixed `A` the
/// outcome depends only on `|B|`, and every size up to the number of sets
/// meeting all of `A` occurs. The shift route is checked on `A` against that
/// full compatible family.
pub fn verify_hilton(n: usize, a: usize, b: usize, mode: HiltonMode) -> Result<HiltonReport> {
    if a == 0 || b == 0 || n < a + b {
        return invalid(format!("need 1 <= a, b and n >= a + b, got n={n}, a={a}, b={b}"));
    }
    let sa = all_ksets(n, a);
    let sb = all_ksets(n, b);
    let limit = lex_table(n, a, b);
    let mut report = HiltonReport { holds: true, pairs_checked: 0, shift_pairs_checked: 0, counterexample: None };
    let compatible = |fa: &[KSet]| -> Vec<KSet> { sb.iter().copied().filter(|y| fa.iter().all(|x| x.intersects(y))).collect() };
    let lex_pair = |s: usize, t: usize| (lex_family(n, a, s as u64).unwrap(), lex_family(n, b, t as u64).unwrap());
    match mode {
        HiltonMode::Exhaustive => {
            if sa.len() as u64 > EXHAUSTIVE_SETS {
                return Err(Error::GuardExceeded(format!("C({n},{a}) = {} sets", sa.len())));
            }
            for mask in 0u64..(1u64 << sa.len()) {
                let fa: Vec<KSet> = (0..sa.len()).filter(|&i| mask >> i & 1 == 1).map(|i| sa[i]).collect();
                let comp = compatible(&fa);
                let size_a = fa.len();
                for t in 0..=comp.len() {
                    report.pairs_checked += binom_u64(comp.len() as i64, t as i64).unwrap_or(u64::MAX);
                }
                if limit[size_a] < comp.len() {
                    report.holds = false;
                    let (la, lb) = lex_pair(size_a, comp.len());
                    report.counterexample = Some((la, lb));
                    return Ok(report);
                }
                let fam_a = Family::from_members(n, a, fa)?;
                let fam_b = Family::from_members(n, b, comp)?;
                report.shift_pairs_checked += 1;
                if !shift_route_preserves(&fam_a, &fam_b) {
                    report.holds = false;
                    report.counterexample = Some((fam_a, fam_b));
                    return Ok(report);
                }
            }
        }
        HiltonMode::Trials { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let density: f64 = rng.gen_range(0.0..0.5);
                let fa: Vec<KSet> = sa.iter().copied().filter(|_| rng.gen_bool(density)).collect();
                let keep: f64 = rng.gen_range(0.0..=1.0);
                let fb: Vec<KSet> = compatible(&fa).into_iter().filter(|_| rng.gen_bool(keep)).collect();
                report.pairs_checked += 1;
                report.shift_pairs_checked += 1;
                let (size_a, size_b) = (fa.len(), fb.len());
                let fam_a = Family::from_members(n, a, fa)?;
                let fam_b = Family::from_members(n, b, fb)?;
                if limit[size_a] < size_b || !shift_route_preserves(&fam_a, &fam_b) {
                    report.holds = false;
                    report.counterexample = Some((fam_a, fam_b));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Number of `b`-sets meeting every member of `L(n, a, size_a)`.
pub fn cross_max_compatible(n: usize, a: usize, b: usize, size_a: u64) -> Result<BigCount> {
    if a == 0 || b == 0 || n < a + b {
        return invalid(format!("need 1 <= a, b and n >= a + b, got n={n}, a={a}, b={b}"));
    }
    let total = binom_u64(n as i64, b as i64).unwrap_or(u64::MAX);
    if total > 5_000_000 {
        return Err(Error::GuardExceeded(format!("C({n},{b}) = {total} sets")));
    }
    let la = lex_family(n, a, size_a)?;
    let count = all_ksets(n, b).iter().filter(|y| la.is_compatible(y)).count();
    Ok(BigCount::from(count))
}

#[derive(Clone, Debug, Serialize)]
pub struct Key2Report {
    pub hypothesis_holds: bool,
    /// `|F(ū, v)|`.
    pub hypothesis_lhs: u64,
    /// `5·C(n-4, k-3)`.
    #[serde(with = "crate::rational::count_str")]
    pub hypothesis_rhs: BigCount,
    /// Smallest `w` (0-indexed) satisfying every conclusion, if any.
    pub witness: Option<usize>,
    #[serde(with = "crate::rational::count_str")]
    pub empty_bound: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub single_bound: BigCount,
    /// `[|F(∅,T)|, |F({u},T)|, |F({v},T)|, |F({w},T)|]` at the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_traces: Option<[u64; 4]>,
}

impl Key2Report {
    /// A genuine failure: the hypothesis holds and no `w` works.
    pub fn is_violation(&self) -> bool {
        self.hypothesis_holds && self.witness.is_none()
    }
}

/// Checks the conclusion for a maximum-degree `u` and another point `v`:
/// if `|F(ū, v)| >= 5·C(n-4,k-3)`, some `w` has `|F(∅, uvw)| <= C(n-7,k-4)`
/// and `|F({x}, uvw)| <= C(n-4,k-3)` for `x = u, v, w`.
pub fn verify_lemma_key2(f: &Family, u: usize, v: usize) -> Result<Key2Report> {
    if !f.is_intersecting() {
        return Err(Error::NotIntersecting);
    }
    let (n, k) = (f.n(), f.k());
    if u >= n || v >= n || u == v {
        return invalid("u and v must be distinct elements of the ground set");
    }
    if f.degree(u)? != f.delta() {
        return invalid(format!("element {} is not of maximum degree", u + 1));
    }
    let (ni, ki) = (n as i64, k as i64);
    let lhs = f.trace(&TraceSpec::with_without(v, u))?.len() as u64;
    let rhs = BigCount::from(5u8) * binom(ni - 4, ki - 3);
    let empty_bound = binom(ni - 7, ki - 4);
    let single_bound = binom(ni - 4, ki - 3);
    let mut report = Key2Report {
        hypothesis_holds: BigCount::from(lhs) >= rhs,
        hypothesis_lhs: lhs,
        hypothesis_rhs: rhs,
        witness: None,
        empty_bound,
        single_bound,
        witness_traces: None,
    };
    if !report.hypothesis_holds {
        return Ok(report);
    }
    for w in (0..n).filter(|&w| w != u && w != v) {
        let t = KSet::from_elems([u, v, w]);
        let traces = [
            f.trace_count(KSet::EMPTY, t),
            f.trace_count(KSet::from_elems([u]), t),
            f.trace_count(KSet::from_elems([v]), t),
            f.trace_count(KSet::from_elems([w]), t),
        ];
        let ok = BigCount::from(traces[0]) <= report.empty_bound
            && traces[1..].iter().all(|&c| BigCount::from(c) <= report.single_bound);
        if ok {
            report.witness = Some(w);
            report.witness_traces = Some(traces);
            break;
        }
    }
    Ok(report)
}
