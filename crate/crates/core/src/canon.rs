//! Canonical relabeling of families.
//!
//! Individualization-refinement: vertices are partitioned into ordered cells by
//! iterated incidence signatures, then the first non-singleton cell is split by
//! individualizing each of its vertices in turn. Every discrete partition is a
//! candidate labeling; the canonical form is the lexicographically smallest
//! relabeled member list over all of them.
//!
//! Two vertices are twins when transposing them fixes the family. Twins lying in
//! the same cell give isomorphic subtrees, so only one vertex per twin class is
//! individualized. Families from this crate are dominated by twin classes (all
//! points outside a star center or a triangle), which keeps the search small.
//!
//! Only equality of canonical forms is meaningful; the particular representative
//! carries no further information.

use crate::family::Family;
use crate::kset::KSet;
use std::collections::BTreeMap;

/// Relabels `f` into its canonical representative.
pub fn canonical_form(f: &Family) -> Family {
    let map = canonical_labeling(f);
    f.relabel(&map)
}

pub fn is_isomorphic(a: &Family, b: &Family) -> bool {
    a.n() == b.n() && a.k() == b.k() && a.len() == b.len() && canonical_form(a) == canonical_form(b)
}

/// Returns `map` with `map[old] = new` realizing the canonical form.
pub fn canonical_labeling(f: &Family) -> Vec<usize> {
    let n = f.n();
    let mut incid: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, m) in f.iter().enumerate() {
        for e in m.iter() {
            incid[e].push(i);
        }
    }
    let ctx = Ctx { f, incid };
    let root = ctx.refine(vec![(0..n).collect()]);
    let twin_class = ctx.twin_classes(&root);
    let mut best: Option<(Vec<KSet>, Vec<usize>)> = None;
    ctx.search(root, &twin_class, &mut best);
    best.map(|(_, map)| map).unwrap_or_else(|| (0..n).collect())
}

struct Ctx<'a> {
    f: &'a Family,
    incid: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

impl Ctx<'_> {
    /// Splits cells by the multiset of cell-profiles of incident members until stable.
    fn refine(&self, mut part: Partition) -> Partition {
        let n = self.f.n();
        let members = self.f.members();
        loop {
            let mut cell_of = vec![0u32; n];
            for (ci, cell) in part.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = ci as u32;
                }
            }
            let profile: Vec<Vec<u32>> = members
                .iter()
                .map(|m| {
                    let mut p: Vec<u32> = m.iter().map(|e| cell_of[e]).collect();
                    p.sort_unstable();
                    p
                })
                .collect();
            let mut next: Partition = Vec::with_capacity(part.len());
            let mut split = false;
            for cell in &part {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut groups: BTreeMap<Vec<&Vec<u32>>, Vec<usize>> = BTreeMap::new();
                for &v in cell {
                    let mut sig: Vec<&Vec<u32>> = self.incid[v].iter().map(|&i| &profile[i]).collect();
                    sig.sort_unstable();
                    groups.entry(sig).or_default().push(v);
                }
                if groups.len() > 1 {
                    split = true;
                }
                next.extend(groups.into_values());
            }
            part = next;
            if !split {
                return part;
            }
        }
    }

    /// Union-find over vertices whose transposition is an automorphism.
    fn twin_classes(&self, root: &Partition) -> Vec<usize> {
        let n = self.f.n();
        let mut class: Vec<usize> = (0..n).collect();
        for cell in root {
            let mut reps: Vec<usize> = Vec::new();
            for &v in cell {
                match reps.iter().find(|&&r| self.are_twins(r, v)) {
                    Some(&r) => class[v] = r,
                    None => reps.push(v),
                }
            }
        }
        class
    }

    fn are_twins(&self, x: usize, y: usize) -> bool {
        if self.incid[x].len() != self.incid[y].len() {
            return false;
        }
        let members = self.f.members();
        self.incid[x].iter().all(|&i| {
            let m = members[i];
            m.contains(y) || self.f.contains(&m.without(x).with(y))
        })
    }

    fn search(&self, part: Partition, twin: &[usize], best: &mut Option<(Vec<KSet>, Vec<usize>)>) {
        let Some(target) = part.iter().position(|c| c.len() > 1) else {
            let mut map = vec![0; self.f.n()];
            for (pos, cell) in part.iter().enumerate() {
                map[cell[0]] = pos;
            }
            let mut image: Vec<KSet> = self.f.iter().map(|m| m.relabel(&map)).collect();
            image.sort_unstable();
            if best.as_ref().is_none_or(|(b, _)| image < *b) {
                *best = Some((image, map));
            }
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &v in &part[target] {
            if tried.contains(&twin[v]) {
                continue;
            }
            tried.push(twin[v]);
            let mut child = Vec::with_capacity(part.len() + 1);
            child.extend_from_slice(&part[..target]);
            child.push(vec![v]);
            child.push(part[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&part[target + 1..]);
            self.search(self.refine(child), twin, best);
        }
    }
}
