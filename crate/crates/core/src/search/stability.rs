//! Triangle decompositions and the stability triple finder.

use crate::codegree::CodegreeIndex;
use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::formulas::binom::binom;
use crate::formulas::bounds::{stability_bounds, stability_hypotheses};
use crate::kset::KSet;
use crate::rational::{BigCount, Rational};
use serde::Serialize;

fn check_triple(n: usize, t: [usize; 3]) -> Result<[usize; 3]> {
    let mut s = t;
    s.sort_unstable();
    if s[0] == s[1] || s[1] == s[2] {
        return invalid(format!("triple {t:?} has repeated elements"));
    }
    if s[2] >= n {
        return Err(Error::ElementOutOfRange { elem: s[2] + 1, n });
    }
    Ok(s)
}

/// Trace counts of a family against a triple `T = {u, v, w}`.
///
/// `f_xy = C(n-3,k-2) - |F({x,y},T)|`, `g_x = |F({x},T)|`, `h = |F(∅,T)|`,
/// `m = |F(T,T)|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TriangleDecomposition {
    pub triple: [usize; 3],
    #[serde(with = "crate::rational::count_str")]
    pub f_uv: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub f_uw: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub f_vw: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub g_u: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub g_v: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub g_w: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub h: BigCount,
    #[serde(with = "crate::rational::count_str")]
    pub m: BigCount,
}

pub fn triangle_decomposition(f: &Family, t: [usize; 3]) -> Result<TriangleDecomposition> {
    let [u, v, w] = check_triple(f.n(), t)?;
    let tt = KSet::from_elems([u, v, w]);
    let full = binom(f.n() as i64 - 3, f.k() as i64 - 2);
    let count = |p: &[usize]| BigCount::from(f.trace_count(KSet::from_elems(p.iter().copied()), tt));
    Ok(TriangleDecomposition {
        triple: [u, v, w],
        f_uv: &full - count(&[u, v]),
        f_uw: &full - count(&[u, w]),
        f_vw: &full - count(&[v, w]),
        g_u: count(&[u]),
        g_v: count(&[v]),
        g_w: count(&[w]),
        h: count(&[]),
        m: count(&[u, v, w]),
    })
}

impl TriangleDecomposition {
    /// Checks the size identity and the three degree identities against `f`.
    pub fn identities_hold(&self, f: &Family) -> bool {
        let full = binom(f.n() as i64 - 3, f.k() as i64 - 2);
        let two = BigCount::from(2u8);
        let size = BigCount::from(3u8) * &full + &self.g_u + &self.g_v + &self.g_w + &self.m + &self.h;
        let size_ok = size == BigCount::from(f.len()) + &self.f_uv + &self.f_uw + &self.f_vw;
        let [u, v, w] = self.triple;
        let deg_ok = |x: usize, fa: &BigCount, fb: &BigCount, g: &BigCount| {
            &two * &full + g + &self.m == BigCount::from(f.degrees()[x]) + fa + fb
        };
        size_ok
            && deg_ok(u, &self.f_uv, &self.f_uw, &self.g_u)
            && deg_ok(v, &self.f_uv, &self.f_vw, &self.g_v)
            && deg_ok(w, &self.f_uw, &self.f_vw, &self.g_w)
    }
}

/// Which triples the finder examines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "size")]
pub enum ScanPolicy {
    /// Exhaustive up to [`EXHAUSTIVE_N`] points, otherwise the default shortlist.
    Auto,
    Exhaustive,
    /// Only triples among the given number of highest-degree points.
    Shortlist(usize),
}

pub const EXHAUSTIVE_N: usize = 300;
pub const SHORTLIST: usize = 30;

/// Per-triple conditions `|F(∅,T)| <= C(n-7,k-4)` and `|F({x},T)| <= C(n-4,k-3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripleConditions {
    pub empty_trace: u64,
    #[serde(with = "crate::rational::count_str")]
    pub empty_bound: BigCount,
    pub single_traces: [u64; 3],
    #[serde(with = "crate::rational::count_str")]
    pub single_bound: BigCount,
    pub hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub alpha: Rational,
    pub d: i64,
    /// 0-indexed.
    pub triple: [usize; 3],
    /// `|F \ F*_T|`.
    #[serde(with = "crate::rational::count_str")]
    pub outside: BigCount,
    /// `|F_T \ F|`.
    #[serde(with = "crate::rational::count_str")]
    pub missing: BigCount,
    pub bound_outside: Rational,
    pub bound_missing: Rational,
    pub pass_14: bool,
    pub pass_15: bool,
    pub hypotheses_hold: bool,
    pub scan: ScanPolicy,
    pub conditions: TripleConditions,
}

impl StabilityReport {
    /// A genuine failure: hypotheses hold but a bound does not.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_hold && !(self.pass_14 && self.pass_15)
    }
}

/// The `size` highest-degree points (ties to the smaller index), ascending.
fn shortlist(f: &Family, size: usize) -> Vec<usize> {
    let deg = f.degrees();
    let mut idx: Vec<usize> = (0..f.n()).collect();
    idx.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    idx.truncate(size);
    idx.sort_unstable();
    idx
}

/// Finds the triple minimizing `(outside, missing)` and evaluates the stability
/// bounds for `d` against it.
pub fn find_stability_triple(f: &Family, d: i64) -> Result<StabilityReport> {
    find_stability_triple_with(f, d, ScanPolicy::Auto)
}

pub fn find_stability_triple_with(f: &Family, d: i64, policy: ScanPolicy) -> Result<StabilityReport> {
    if f.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let (n, k) = (f.n(), f.k());
    if n < 3 || k < 2 {
        return invalid("stability needs n >= 3 and k >= 2");
    }
    let (ni, ki) = (n as i64, k as i64);
    let base = binom(ni - 3, ki - 2);
    let alpha = Rational::one() - Rational::from(f.diversity() as i64) / Rational::from_count(&base);
    let policy = match policy {
        ScanPolicy::Auto if n <= EXHAUSTIVE_N => ScanPolicy::Exhaustive,
        ScanPolicy::Auto => ScanPolicy::Shortlist(SHORTLIST),
        p => p,
    };
    let points: Vec<usize> = match policy {
        ScanPolicy::Shortlist(s) => shortlist(f, s.max(3)),
        _ => (0..n).collect(),
    };
    let idx = CodegreeIndex::new(f);
    let full3 = u64::try_from(BigCount::from(3u8) * &base).unwrap_or(u64::MAX);
    let mut best: Option<((u64, u64), [usize; 3])> = None;
    for (ai, &a) in points.iter().enumerate() {
        for (bi, &b) in points.iter().enumerate().skip(ai + 1) {
            for &c in &points[bi + 1..] {
                let t = [a, b, c];
                let key = (idx.at_most_one(t), full3.saturating_sub(idx.exactly_two(t)));
                if best.is_none_or(|(k0, _)| key < k0) {
                    best = Some((key, t));
                }
            }
        }
    }
    let ((outside, _), triple) = best.expect("at least three points");
    let missing = BigCount::from(3u8) * &base - BigCount::from(idx.exactly_two(triple));
    let (bound_outside, bound_missing) = stability_bounds(ni, ki, d, &alpha);
    let outside = BigCount::from(outside);
    let pass_14 = Rational::from_count(&outside) <= bound_outside;
    let pass_15 = Rational::from_count(&missing) <= bound_missing;
    let conditions = triple_conditions(f, triple);
    Ok(StabilityReport {
        hypotheses_hold: stability_hypotheses(ni, ki, d, &alpha),
        alpha,
        d,
        triple,
        outside,
        missing,
        bound_outside,
        bound_missing,
        pass_14,
        pass_15,
        scan: policy,
        conditions,
    })
}

pub fn triple_conditions(f: &Family, t: [usize; 3]) -> TripleConditions {
    let (n, k) = (f.n() as i64, f.k() as i64);
    let tt = KSet::from_elems(t);
    let empty_trace = f.trace_count(KSet::EMPTY, tt);
    let single_traces = t.map(|x| f.trace_count(KSet::from_elems([x]), tt));
    let empty_bound = binom(n - 7, k - 4);
    let single_bound = binom(n - 4, k - 3);
    let hold = BigCount::from(empty_trace) <= empty_bound && single_traces.iter().all(|&s| BigCount::from(s) <= single_bound);
    TripleConditions { empty_trace, empty_bound, single_traces, single_bound, hold }
}

/// A triple `T` with `F_T ⊆ F ⊆ F*_T`, if one exists (0-indexed, smallest first).
pub fn triangle_sandwich(f: &Family) -> Option<[usize; 3]> {
    let (n, k) = (f.n(), f.k());
    if n < 3 || k < 2 {
        return None;
    }
    let base = binom(n as i64 - 3, k as i64 - 2);
    let full3 = u64::try_from(BigCount::from(3u8) * &base).ok()?;
    if (f.len() as u64) < full3 {
        return None;
    }
    // every point of T lies in 2·C(n-3,k-2) members of F_T
    let need = u64::try_from(BigCount::from(2u8) * &base).ok()?;
    let cands: Vec<usize> = (0..n).filter(|&x| f.degrees()[x] >= need).collect();
    let idx = CodegreeIndex::new(f);
    for (ai, &a) in cands.iter().enumerate() {
        for (bi, &b) in cands.iter().enumerate().skip(ai + 1) {
            for &c in &cands[bi + 1..] {
                let t = [a, b, c];
                if idx.at_most_one(t) == 0 && idx.exactly_two(t) == full3 {
                    return Some(t);
                }
            }
        }
    }
    None
}
