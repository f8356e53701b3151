//! The named intersecting families and the operators acting on families.
//!
//! Every constructor generates its members block by block (a fixed trace on a
//! small core, extended by all subsets of the remaining points), so the cost
//! is proportional to the output size rather than to `C(n, k)`.

use crate::error::{invalid, Error, Result};
use crate::family::Family;
use crate::formulas::binom::binom;
use crate::kset::{all_ksets, for_each_extension, KSet, MAX_N};
use crate::lex;
use num_traits::ToPrimitive;

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n > MAX_N {
        return Err(Error::GroundSetTooLarge(n));
    }
    if k == 0 || k > n {
        return invalid(format!("need 1 <= k <= n, got n={n}, k={k}"));
    }
    Ok(())
}

fn complement_pool(n: usize, core: &KSet) -> Vec<usize> {
    (0..n).filter(|e| !core.contains(*e)).collect()
}

/// Collects `base ∪ S` for all `S ⊆ pool` of size `k - |base|`.
fn extend_into(out: &mut Vec<KSet>, base: KSet, pool: &[usize], k: usize) {
    if base.len() <= k {
        for_each_extension(base, pool, k - base.len(), |s| out.push(s));
    }
}

/// All `k`-sets through `x`.
pub fn full_star(n: usize, k: usize, x: usize) -> Result<Family> {
    check_nk(n, k)?;
    if x >= n {
        return Err(Error::ElementOutOfRange { elem: x + 1, n });
    }
    let core = KSet::from_elems([x]);
    let mut out = Vec::new();
    extend_into(&mut out, core, &complement_pool(n, &core), k);
    Family::from_members(n, k, out)
}

/// `F_i`: sets through the first point meeting the next `i-1` points, plus all
/// sets containing those `i-1` points. `3 <= i <= k+1`.
pub fn family_fi(n: usize, k: usize, i: usize) -> Result<Family> {
    check_nk(n, k)?;
    if i < 3 || i > k + 1 {
        return invalid(format!("F_i needs 3 <= i <= k+1, got i={i}, k={k}"));
    }
    if i > n {
        return invalid(format!("F_i needs i <= n, got i={i}, n={n}"));
    }
    let block = KSet::range(1, i);
    let core = KSet::range(0, i);
    let pool = complement_pool(n, &core);
    let block_elems = block.to_vec();
    let mut out = Vec::new();
    for size in 1..=block_elems.len().min(k - 1) {
        for_each_extension(KSet::EMPTY, &block_elems, size, |s| {
            extend_into(&mut out, s.with(0), &pool, k);
        });
    }
    extend_into(&mut out, block, &pool, k);
    Family::from_members(n, k, out)
}

fn triple(n: usize, t: [usize; 3]) -> Result<KSet> {
    let s = KSet::from_elems(t.iter().copied().filter(|&e| e < MAX_N));
    if s.len() != 3 {
        return invalid(format!("T must have three distinct elements, got {t:?}"));
    }
    if let Some(e) = s.max_elem() {
        if e >= n {
            return Err(Error::ElementOutOfRange { elem: e + 1, n });
        }
    }
    Ok(s)
}

/// `F_uvw`: all `k`-sets meeting `T` in exactly two points.
pub fn family_uvw(n: usize, k: usize, t: [usize; 3]) -> Result<Family> {
    uvw_blocks(n, k, t, false)
}

/// `F*_uvw`: all `k`-sets meeting `T` in at least two points.
pub fn family_uvw_star(n: usize, k: usize, t: [usize; 3]) -> Result<Family> {
    uvw_blocks(n, k, t, true)
}

/// The pure triangle family on `{0, 1, 2}`.
pub fn family_triangle(n: usize, k: usize) -> Result<Family> {
    family_uvw(n, k, [0, 1, 2])
}

fn uvw_blocks(n: usize, k: usize, t: [usize; 3], with_full: bool) -> Result<Family> {
    check_nk(n, k)?;
    if k < 2 {
        return invalid("triangle families need k >= 2");
    }
    let ts = triple(n, t)?;
    let pool = complement_pool(n, &ts);
    let elems = ts.to_vec();
    let mut out = Vec::new();
    for drop in &elems {
        extend_into(&mut out, ts.without(*drop), &pool, k);
    }
    if with_full {
        extend_into(&mut out, ts, &pool, k);
    }
    Family::from_members(n, k, out)
}

/// `L(n, k, m)`: the first `m` sets of `C([n], k)` in lexicographic order.
pub fn lex_family(n: usize, k: usize, m: u64) -> Result<Family> {
    check_nk(n, k)?;
    let total = binom(n as i64, k as i64);
    if total.to_u64().is_some_and(|t| m > t) {
        return invalid(format!("m = {m} exceeds C({n},{k}) = {total}"));
    }
    let mut out = Vec::with_capacity(m as usize);
    let mut cur = KSet::range(0, k);
    for idx in 0..m {
        out.push(cur);
        if idx + 1 < m {
            cur = lex::successor(n, &cur).expect("m <= C(n,k)");
        }
    }
    Ok(Family::from_sorted_unchecked(n, k, out))
}

/// The `i <- j` shift: replace `j` by `i` in every member where the image is new.
pub fn shift(f: &Family, i: usize, j: usize) -> Result<Family> {
    if i >= j {
        return invalid(format!("shift needs i < j, got i={}, j={}", i + 1, j + 1));
    }
    if j >= f.n() {
        return Err(Error::ElementOutOfRange { elem: j + 1, n: f.n() });
    }
    let out: Vec<KSet> = f
        .iter()
        .map(|&m| {
            if m.contains(j) && !m.contains(i) {
                let image = m.without(j).with(i);
                if !f.contains(&image) {
                    return image;
                }
            }
            m
        })
        .collect();
    Family::from_members(f.n(), f.k(), out)
}

/// Applies all shifts `S_ij` (`i < j`) until nothing moves. Returns the shifted
/// family and the number of effective shifts performed.
pub fn compress(f: &Family) -> (Family, usize) {
    let mut cur = f.clone();
    let mut steps = 0;
    loop {
        let mut moved = false;
        for j in 1..cur.n() {
            for i in 0..j {
                let next = shift(&cur, i, j).expect("valid shift indices");
                if next != cur {
                    cur = next;
                    moved = true;
                    steps += 1;
                }
            }
        }
        if !moved {
            return (cur, steps);
        }
    }
}

/// The seven lines of the Fano plane on `{0..6}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanoLines {
    lines: [KSet; 7],
}

impl Default for FanoLines {
    /// Lines 123, 145, 167, 246, 257, 347, 356 (1-indexed).
    fn default() -> Self {
        let l = |a: usize, b: usize, c: usize| KSet::from_elems([a - 1, b - 1, c - 1]);
        FanoLines {
            lines: [l(1, 2, 3), l(1, 4, 5), l(1, 6, 7), l(2, 4, 6), l(2, 5, 7), l(3, 4, 7), l(3, 5, 6)],
        }
    }
}

impl FanoLines {
    pub fn lines(&self) -> &[KSet; 7] {
        &self.lines
    }

    /// Every two lines meet in exactly one point and every point is on three lines.
    pub fn is_valid(&self) -> bool {
        let pairs = (0..7).all(|a| (0..7).all(|b| a == b || self.lines[a].intersection_len(&self.lines[b]) == 1));
        let points = (0..7).all(|p| self.lines.iter().filter(|l| l.contains(p)).count() == 3);
        pairs && points
    }

    /// `L^c`: complements of the lines inside `{0..6}`.
    pub fn complements(&self) -> Vec<KSet> {
        let all = KSet::range(0, 7);
        self.lines.iter().map(|l| all - *l).collect()
    }

    /// `C([7], 4) \ L^c`: the 28 four-sets of `{0..6}` that are not line complements.
    pub fn plus_quads(&self) -> Vec<KSet> {
        let comps = self.complements();
        all_ksets(7, 4).into_iter().filter(|q| !comps.contains(q)).collect()
    }
}

/// `(F_L, F_L+)`: sets whose trace on `{0..6}` is a line, respectively a line or
/// one of the 28 four-sets outside `L^c`.
pub fn fano_families(n: usize, k: usize) -> Result<(Family, Family)> {
    check_nk(n, k)?;
    if n < 7 {
        return invalid(format!("Fano families need n >= 7, got {n}"));
    }
    if k < 3 {
        return invalid(format!("Fano families need k >= 3, got {k}"));
    }
    let fano = FanoLines::default();
    let pool: Vec<usize> = (7..n).collect();
    let mut lines = Vec::new();
    for l in fano.lines() {
        extend_into(&mut lines, *l, &pool, k);
    }
    let mut plus = lines.clone();
    for q in fano.plus_quads() {
        extend_into(&mut plus, q, &pool, k);
    }
    Ok((Family::from_members(n, k, lines)?, Family::from_members(n, k, plus)?))
}

/// The sets `A_1, A_2, A_3 ⊆ [3, n)` (0-indexed) of the kernel construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelTriple {
    sets: [KSet; 3],
}

impl KernelTriple {
    pub fn new(sets: [KSet; 3]) -> Result<KernelTriple> {
        for a in &sets {
            if a.len() < 2 {
                return invalid(format!("kernel {a:?} has fewer than two elements"));
            }
            if a.min_elem().is_none_or(|e| e < 3) {
                return invalid(format!("kernel {a:?} must avoid the first three points"));
            }
        }
        for x in 0..3 {
            for y in x + 1..3 {
                if !sets[x].intersects(&sets[y]) {
                    return invalid("kernels must pairwise intersect");
                }
            }
        }
        Ok(KernelTriple { sets })
    }

    /// Three copies of the same kernel.
    pub fn uniform(a: KSet) -> Result<KernelTriple> {
        KernelTriple::new([a, a, a])
    }

    pub fn sets(&self) -> &[KSet; 3] {
        &self.sets
    }

    /// Common size `ℓ` when all three kernels have equal size.
    pub fn common_size(&self) -> Option<usize> {
        let l = self.sets[0].len();
        self.sets.iter().all(|a| a.len() == l).then_some(l)
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().map(|a| a.len()).max().unwrap_or(0)
    }
}

/// `T_1 ∪ T_2 ∪ T_3` where `T_i` holds the sets meeting `{0,1,2}` exactly in
/// the pair avoiding `i` and meeting `A_i`, plus the sets meeting `{0,1,2}`
/// exactly in `i` and containing `A_i`.
pub fn example_t(n: usize, k: usize, kernels: &KernelTriple) -> Result<Family> {
    check_nk(n, k)?;
    if k <= kernels.max_size() {
        return invalid(format!("need k > max |A_i| = {}", kernels.max_size()));
    }
    for a in kernels.sets() {
        if let Some(e) = a.max_elem() {
            if e >= n {
                return Err(Error::ElementOutOfRange { elem: e + 1, n });
            }
        }
    }
    let core = KSet::range(0, 3);
    let mut out = Vec::new();
    for (i, a) in kernels.sets().iter().enumerate() {
        let pair = core.without(i);
        let pool = complement_pool(n, &(core | *a));
        let a_elems = a.to_vec();
        for size in 1..=a_elems.len() {
            for_each_extension(KSet::EMPTY, &a_elems, size, |s| {
                extend_into(&mut out, pair | s, &pool, k);
            });
        }
        extend_into(&mut out, KSet::from_elems([i]) | *a, &pool, k);
    }
    Family::from_members(n, k, out)
}
