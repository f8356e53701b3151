#![allow(dead_code)]

use divlab::constructions::{family_fi, family_triangle, full_star};
use divlab::{Family, KSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All k-subsets of {0..n} in lex order, built without the library.
pub fn ksets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for e in start..n {
            if n - e < k - cur.len() {
                break;
            }
            cur.push(e);
            go(e + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

pub fn choose(n: i64, k: i64) -> u128 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

pub fn members(f: &Family) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = f.iter().map(|s| s.to_vec()).collect();
    v.sort();
    v
}

pub fn meets(a: &[usize], b: &[usize]) -> bool {
    a.iter().any(|x| b.contains(x))
}

pub fn max_degree(n: usize, sets: &[Vec<usize>]) -> u64 {
    let mut deg = vec![0u64; n];
    for s in sets {
        for &x in s {
            deg[x] += 1;
        }
    }
    deg.into_iter().max().unwrap_or(0)
}

pub fn build(n: usize, k: usize, sets: &[Vec<usize>]) -> Family {
    Family::from_members(n, k, sets.iter().map(|s| KSet::from_elems(s.iter().copied())).collect()).unwrap()
}

/// A random family on `[n]`: either arbitrary, or intersecting built greedily
/// from a shuffled order or by thinning a named family.
pub fn random_family(rng: &mut ChaCha8Rng, n: usize, k: usize, intersecting: bool) -> Family {
    let all = ksets(n, k);
    if !intersecting {
        let p = rng.gen_range(0.05..0.6);
        let chosen: Vec<Vec<usize>> = all.into_iter().filter(|_| rng.gen_bool(p)).collect();
        return build(n, k, &chosen);
    }
    let base = match rng.gen_range(0..4) {
        0 => full_star(n, k, rng.gen_range(0..n)).unwrap(),
        1 if n >= 3 && k >= 2 => family_triangle(n, k).unwrap(),
        2 if k >= 2 && n >= 3 => family_fi(n, k, rng.gen_range(3..=(k + 1).min(n))).unwrap(),
        _ => {
            let mut order = all;
            order.shuffle(rng);
            let mut chosen: Vec<Vec<usize>> = Vec::new();
            for s in order {
                if chosen.iter().all(|c| meets(c, &s)) && rng.gen_bool(0.8) {
                    chosen.push(s);
                }
            }
            return build(n, k, &chosen);
        }
    };
    let keep = rng.gen_range(0.3..=1.0);
    let kept: Vec<Vec<usize>> = members(&base).into_iter().filter(|_| rng.gen_bool(keep)).collect();
    build(n, k, &kept)
}

/// `(A, B)` cross-intersecting: a random `A`, then random `B` among the sets meeting all of `A`.
pub fn random_cross_pair(rng: &mut ChaCha8Rng, n: usize, a: usize, b: usize) -> (Family, Family) {
    let mut fa: Vec<Vec<usize>> = Vec::new();
    let p = rng.gen_range(0.05..0.5);
    for s in ksets(n, a) {
        if rng.gen_bool(p) {
            fa.push(s);
        }
    }
    let q = rng.gen_range(0.2..=1.0);
    let fb: Vec<Vec<usize>> =
        ksets(n, b).into_iter().filter(|s| fa.iter().all(|x| meets(x, s))).filter(|_| rng.gen_bool(q)).collect();
    (build(n, a, &fa), build(n, b, &fb))
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
