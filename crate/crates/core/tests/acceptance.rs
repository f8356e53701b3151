//! Acceptance suite. Runs every criterion in order and prints one PASS/FAIL
//! line each; exits nonzero if any criterion fails.

mod common;

use common::*;
use divlab::constructions::{
    example_t, family_fi, family_triangle, family_uvw, family_uvw_star, fano_families, full_star, FanoLines,
    KernelTriple,
};
use divlab::formulas::bounds::{mpw_bound, sperner, matching_bound};
use divlab::formulas::{binom::binom, check_theorem, closed, Theorem};
use divlab::search::exact::extremal_families;
use divlab::search::heuristic::{canonical_starts, local_search, HeuristicConfig};
use divlab::search::lemmas::{cross_max_compatible, verify_hilton, verify_lemma_fk, HiltonMode};
use divlab::search::stability::{find_stability_triple, triangle_decomposition};
use divlab::sweep::{run_sweep, sample_kernels, Check, SweepConfig};
use divlab::{canonical_form, cross_intersecting, BigCount, Family, KSet, Rational, SearchOptions, TraceSpec};
use divlab::rational::ratio;
use divlab::constructions::shift;
use proptest::test_runner::{Config, RngSeed, TestRunner};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn big(v: u128) -> BigCount {
    BigCount::from(v)
}

fn kset(elems: &[usize]) -> KSet {
    KSet::from_elems(elems.iter().copied())
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "formula-enumeration matrix", 30, criterion_1),
        (2, "size chain", 10, criterion_2),
        (3, "tightness witnesses", 60, criterion_3),
        (4, "exhaustive k=2 maximum", 300, criterion_4),
        (5, "cross-intersecting lemma brute force", 1800, criterion_5),
        (6, "lex and cross-intersecting oracles", 300, criterion_6),
        (7, "stability triple", 600, criterion_7),
        (8, "heuristic search never exceeds bounds", 1800, criterion_8),
        (9, "invariant suite", 300, criterion_9),
    ];
    let mut passed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        let result = match result {
            Ok(d) if took > Duration::from_secs(limit) => Err(format!("{d}; exceeded {limit} s limit")),
            r => r,
        };
        match result {
            Ok(detail) => {
                passed += 1;
                println!("criterion {id} ({name}): PASS [{:.2} s] {detail}", took.as_secs_f64());
            }
            Err(detail) => println!("criterion {id} ({name}): FAIL [{:.2} s] {detail}", took.as_secs_f64()),
        }
    }
    println!("acceptance: {passed}/{} criteria passed", criteria.len());
    if passed != criteria.len() {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------------------
// 1. Every constructor against a definitional oracle and the closed forms.

struct Tally {
    families: usize,
    values: usize,
    displayed_differs: usize,
}

impl Tally {
    /// `measured` must equal `exact`; `displayed` may differ only when `general`
    /// (the assumption behind the displayed form) fails, in which case it is counted.
    fn delta(&mut self, what: &str, measured: u64, exact: &BigCount, displayed: &BigCount) -> Result<(), String> {
        self.values += 1;
        ensure!(&BigCount::from(measured) == exact, "{what}: measured Δ {measured} != exact form {exact}");
        if &BigCount::from(measured) != displayed {
            self.displayed_differs += 1;
        }
        Ok(())
    }

    fn eq(&mut self, what: &str, measured: u64, formula: &BigCount) -> Result<(), String> {
        self.values += 1;
        ensure!(&BigCount::from(measured) == formula, "{what}: measured {measured} != formula {formula}");
        Ok(())
    }
}

fn check_members(what: &str, f: &Family, n: usize, k: usize, pred: impl Fn(&[usize]) -> bool) -> Result<(), String> {
    let want: Vec<Vec<usize>> = ksets(n, k).into_iter().filter(|s| pred(s)).collect();
    ensure!(members(f) == want, "{what}: members differ from the definition ({} vs {})", f.len(), want.len());
    ensure!(f.is_intersecting(), "{what}: not intersecting");
    Ok(())
}

fn count_in(s: &[usize], set: &[usize]) -> usize {
    s.iter().filter(|x| set.contains(x)).count()
}

fn criterion_1() -> Outcome {
    let mut t = Tally { families: 0, values: 0, displayed_differs: 0 };
    let lines: Vec<Vec<usize>> = FanoLines::default().lines().iter().map(|l| l.to_vec()).collect();
    let comps: Vec<Vec<usize>> = lines.iter().map(|l| (0..7).filter(|x| !l.contains(x)).collect()).collect();
    for k in 1..=5usize {
        for n in k..=14usize {
            let (ni, ki) = (n as i64, k as i64);
            let tag = |s: &str| format!("{s}(n={n},k={k})");

            let f = full_star(n, k, 0).map_err(|e| e.to_string())?;
            check_members(&tag("star"), &f, n, k, |s| s.contains(&0))?;
            t.eq(&tag("star size"), f.len() as u64, &closed::star_size(ni, ki))?;
            t.eq(&tag("star gamma"), f.diversity(), &BigCount::default())?;
            t.families += 1;

            for i in 3..=(k + 1).min(n) {
                let f = family_fi(n, k, i).map_err(|e| e.to_string())?;
                let block: Vec<usize> = (1..i).collect();
                check_members(&tag(&format!("F_{i}")), &f, n, k, |s| {
                    (s.contains(&0) && meets(s, &block)) || block.iter().all(|b| s.contains(b))
                })?;
                t.eq(&tag("F_i size"), f.len() as u64, &closed::fi_size(ni, ki, i as i64))?;
                t.delta(&tag("F_i"), f.delta(), &closed::fi_delta_exact(ni, ki, i as i64), &closed::fi_delta(ni, ki, i as i64))?;
                t.families += 1;
            }

            if k >= 2 && n >= 3 {
                let tri: Vec<usize> = vec![0, 1, 2];
                let f = family_triangle(n, k).map_err(|e| e.to_string())?;
                check_members(&tag("triangle"), &f, n, k, |s| count_in(s, &tri) == 2)?;
                t.eq(&tag("triangle size"), f.len() as u64, &closed::triangle_size(ni, ki))?;
                t.delta(&tag("triangle"), f.delta(), &closed::triangle_delta_exact(ni, ki), &closed::triangle_delta(ni, ki))?;
                let f = family_uvw_star(n, k, [0, 1, 2]).map_err(|e| e.to_string())?;
                check_members(&tag("uvw-star"), &f, n, k, |s| count_in(s, &tri) >= 2)?;
                t.eq(&tag("uvw-star size"), f.len() as u64, &closed::uvw_star_size(ni, ki))?;
                t.delta(&tag("uvw-star"), f.delta(), &closed::uvw_star_delta_exact(ni, ki), &closed::uvw_star_delta(ni, ki))?;
                t.families += 2;
                if n >= 7 {
                    let other = [1usize, 4, 6];
                    let f = family_uvw(n, k, other).map_err(|e| e.to_string())?;
                    check_members(&tag("uvw{2,5,7}"), &f, n, k, |s| count_in(s, &other) == 2)?;
                    t.eq(&tag("uvw size"), f.len() as u64, &closed::triangle_size(ni, ki))?;
                    t.families += 1;
                }
            }

            if n >= 7 && k >= 3 {
                let (fl, flp) = fano_families(n, k).map_err(|e| e.to_string())?;
                let trace = |s: &[usize]| s.iter().copied().filter(|&x| x < 7).collect::<Vec<usize>>();
                check_members(&tag("F_L"), &fl, n, k, |s| lines.contains(&trace(s)))?;
                check_members(&tag("F_L+"), &flp, n, k, |s| {
                    let tr = trace(s);
                    lines.contains(&tr) || (tr.len() == 4 && !comps.contains(&tr))
                })?;
                t.eq(&tag("F_L size"), fl.len() as u64, &closed::fano_l_size(ni, ki))?;
                t.delta(&tag("F_L"), fl.delta(), &closed::fano_l_delta_exact(ni, ki), &closed::fano_l_delta(ni, ki))?;
                t.eq(&tag("F_L+ size"), flp.len() as u64, &closed::fano_lplus_size(ni, ki))?;
                t.delta(&tag("F_L+"), flp.delta(), &closed::fano_lplus_delta_exact(ni, ki), &closed::fano_lplus_delta(ni, ki))?;
                if closed::fano_l_core_dominates(ni, ki) {
                    t.eq(&tag("F_L displayed delta"), fl.delta(), &closed::fano_l_delta(ni, ki))?;
                }
                t.families += 2;
            }

            for kern in sample_kernels(ni, ki) {
                let Ok(f) = example_t(n, k, &kern) else { continue };
                let sets: Vec<Vec<usize>> = kern.sets().iter().map(|a| a.to_vec()).collect();
                check_members(&tag("T"), &f, n, k, |s| {
                    (0..3).any(|i| {
                        let pair: Vec<usize> = (0..3).filter(|&x| x != i).collect();
                        let on_core: Vec<usize> = s.iter().copied().filter(|&x| x < 3).collect();
                        (on_core == pair && meets(s, &sets[i]))
                            || (on_core == vec![i] && sets[i].iter().all(|a| s.contains(a)))
                    })
                })?;
                let ls = [sets[0].len() as i64, sets[1].len() as i64, sets[2].len() as i64];
                t.eq(&tag("T size"), f.len() as u64, &closed::kernel_size(ni, ki, ls))?;
                let outside = f.len() as u64 - f.trace_count(KSet::EMPTY, kset(&[0, 1, 2]))
                    - (0..3).map(|x| f.trace_count(kset(&[x]), kset(&[0, 1, 2]))).sum::<u64>();
                let on_two: u64 = [[0usize, 1], [0, 2], [1, 2]].iter().map(|p| f.trace_count(kset(p), kset(&[0, 1, 2]))).sum();
                let missing = 3 * choose(ni - 3, ki - 2) as u64 - on_two;
                let below_two = (0..3).map(|x| f.trace_count(kset(&[x]), kset(&[0, 1, 2]))).sum::<u64>()
                    + f.trace_count(KSet::EMPTY, kset(&[0, 1, 2]));
                ensure!(outside + below_two == f.len() as u64 || outside == 0, "bookkeeping");
                t.eq(&tag("T outside"), below_two, &closed::kernel_outside(ni, ki, ls))?;
                t.eq(&tag("T missing"), missing, &closed::kernel_missing(ni, ki, ls))?;
                if let Some(l) = kern.common_size() {
                    let l = l as i64;
                    if closed::kernel_core_dominates(ni, ki, l) {
                        t.eq(&tag("T gamma"), f.diversity(), &closed::kernel_gamma(ni, ki, l))?;
                    } else {
                        t.displayed_differs += usize::from(BigCount::from(f.diversity()) != closed::kernel_gamma(ni, ki, l));
                    }
                }
                t.families += 1;
            }
        }
    }

    let report = run_sweep(&SweepConfig {
        checks: vec![
            Check::FormulaMatrix { n_max: 14, k_max: 5 },
            Check::ExampleTGamma { n_max: 14, k_max: 5, ells: vec![2, 3], enumerate_n_max: 14 },
        ],
    })
    .map_err(|e| e.to_string())?;
    ensure!(!report.has_failures(), "sweep reported {} failing rows", report.summary.fail);
    Ok(format!(
        "{} families, {} values exact; displayed max-degree form differs from the general one in {} small-n cases \
         (sweep: {} pass, {} formula-hypothesis-violated, 0 fail)",
        t.families, t.values, t.displayed_differs, report.summary.pass, report.summary.formula_hypothesis_violated
    ))
}

// ---------------------------------------------------------------------------
// 2. |F_3| = |F_4| < ... < |F_{k+1}| < C(n-1,k-1) for n > 2k.

fn fi_size_oracle(n: i64, k: i64, i: i64) -> u128 {
    choose(n - 1, k - 1) - choose(n - i, k - 1) + choose(n - i, k - i + 1)
}

fn criterion_2() -> Outcome {
    let mut formula_checks = 0;
    for k in 2..=8i64 {
        for n in 2 * k + 1..=40 {
            let sizes: Vec<u128> = (3..=k + 1).map(|i| fi_size_oracle(n, k, i)).collect();
            for (i, s) in (3..=k + 1).zip(&sizes) {
                ensure!(closed::fi_size(n, k, i) == big(*s), "formula mismatch at n={n},k={k},i={i}");
            }
            if k >= 3 {
                ensure!(sizes[0] == sizes[1], "|F_3| != |F_4| at n={n},k={k}");
            }
            for w in sizes.windows(2).skip(1) {
                ensure!(w[0] < w[1], "chain not increasing at n={n},k={k}");
            }
            ensure!(*sizes.last().unwrap() < choose(n - 1, k - 1), "top of chain not below the star at n={n},k={k}");
            formula_checks += 1;
        }
    }
    let report = run_sweep(&SweepConfig { checks: vec![Check::Chain { n_max: 40, k_max: 8, enumerate_n_max: 14 }] })
        .map_err(|e| e.to_string())?;
    ensure!(!report.has_failures(), "chain sweep has {} failing rows", report.summary.fail);
    let enumerated = report.rows.iter().filter(|r| r.quantity == "enumerated").count();
    Ok(format!("{formula_checks} (n,k) pairs by formula; {enumerated} confirmed by enumeration"))
}

// ---------------------------------------------------------------------------
// 3. Families attaining bounds exactly.

fn criterion_3() -> Outcome {
    let mut stars = 0;
    for k in 1..=5usize {
        for n in 2 * k..=12 {
            let f = full_star(n, k, 0).map_err(|e| e.to_string())?;
            let v = check_theorem(&f, &Theorem::Ekr).map_err(|e| e.to_string())?;
            ensure!(v.hypotheses_hold && v.satisfied && v.tight, "EKR not tight on star n={n},k={k}");
            stars += 1;
        }
    }

    let hm = family_fi(10, 3, 4).map_err(|e| e.to_string())?;
    let v = check_theorem(&hm, &Theorem::HiltonMilner).map_err(|e| e.to_string())?;
    let hm_oracle = choose(9, 2) - choose(6, 2) + 1;
    ensure!(hm.len() as u128 == hm_oracle && hm_oracle == 22, "HM family size {}", hm.len());
    ensure!(v.hypotheses_hold && v.tight && v.rhs == Rational::from(22), "HM bound not tight: {v:?}");

    let tri = family_triangle(252, 3).map_err(|e| e.to_string())?;
    ensure!(tri.len() == 3 * 249 && tri.delta() == 2 * 249, "triangle(252,3) has |F|={}, Δ={}", tri.len(), tri.delta());
    let c = ratio(5, 4);
    let gamma_c = tri.c_diversity(&c);
    ensure!(gamma_c == ratio(249, 2), "γ_C(triangle) = {gamma_c}");
    let v = check_theorem(&tri, &Theorem::Main(c)).map_err(|e| e.to_string())?;
    ensure!(v.hypotheses_hold && v.tight && v.rhs == ratio(249, 2), "main bound not attained: {v:?}");
    ensure!(v.equality_case.as_ref().is_some_and(|e| e.matches), "equality case not classified as triangle");

    // (7-3C)·C(n-7,k-3) + (28-16C)·C(n-7,k-4) evaluated by hand
    let (_, flp) = fano_families(11, 4).map_err(|e| e.to_string())?;
    let c = ratio(8, 5);
    let want = ratio(11, 5) * Rational::from(4) + ratio(12, 5);
    ensure!(want == ratio(56, 5), "hand value");
    ensure!(flp.c_diversity(&c) == want, "γ_C(F_L+) = {}", flp.c_diversity(&c));
    ensure!(mpw_bound(&c, 11, 4).map_err(|e| e.to_string())? == want, "mpw bound at 8/5");

    let (fl, _) = fano_families(12, 4).map_err(|e| e.to_string())?;
    let c = ratio(9, 4);
    let want = ratio(1, 4) * Rational::from(5);
    ensure!(fl.c_diversity(&c) == want, "γ_C(F_L) = {}", fl.c_diversity(&c));
    ensure!(mpw_bound(&c, 12, 4).map_err(|e| e.to_string())? == want, "mpw bound at 9/4");

    Ok(format!(
        "EKR tight on {stars} stars; HM = 22; γ_5/4(F_△(252,3)) = 249/2; γ_8/5(F_L+(11,4)) = 56/5; γ_9/4(F_L(12,4)) = 5/4"
    ))
}

// ---------------------------------------------------------------------------
// 4. All intersecting graphs on n <= 7: max γ_C = 3-2C, attained only by triangles.

/// Every intersecting family of edges on [n], by DFS over edges.
fn all_intersecting_graphs(n: usize, mut visit: impl FnMut(&[Vec<usize>])) -> usize {
    fn go(edges: &[Vec<usize>], from: usize, cur: &mut Vec<Vec<usize>>, visit: &mut dyn FnMut(&[Vec<usize>]), count: &mut usize) {
        *count += 1;
        visit(cur);
        for i in from..edges.len() {
            if cur.iter().all(|e| meets(e, &edges[i])) {
                cur.push(edges[i].clone());
                go(edges, i + 1, cur, visit, count);
                cur.pop();
            }
        }
    }
    let edges = ksets(n, 2);
    let mut count = 0;
    go(&edges, 0, &mut Vec::new(), &mut visit, &mut count);
    count
}

fn criterion_4() -> Outcome {
    let cs = [(11i128, 10i128), (5, 4), (7, 5)];
    let mut graphs = 0;
    for n in 3..=7usize {
        for &(p, q) in &cs {
            // q·γ_C = q|F| - pΔ in integers
            let mut best = i128::MIN;
            let mut winners: Vec<Vec<Vec<usize>>> = Vec::new();
            graphs += all_intersecting_graphs(n, |f| {
                let val = q * f.len() as i128 - p * max_degree(n, f) as i128;
                if val > best {
                    best = val;
                    winners.clear();
                }
                if val == best {
                    winners.push(f.to_vec());
                }
            });
            ensure!(best == 3 * q - 2 * p, "oracle max at n={n}, C={p}/{q} is {best}/{q}");
            for w in &winners {
                let mut pts: Vec<usize> = w.iter().flatten().copied().collect();
                pts.sort();
                pts.dedup();
                ensure!(w.len() == 3 && pts.len() == 3, "oracle maximizer {w:?} is not a triangle");
            }
            let c = ratio(p as i64, q as i64);
            let (res, fams) = extremal_families(n, 2, &c, &SearchOptions::default()).map_err(|e| e.to_string())?;
            ensure!(res.exact && res.best_value == ratio((3 * q - 2 * p) as i64, q as i64), "search max {}", res.best_value);
            let tri = canonical_form(&family_triangle(n, 2).map_err(|e| e.to_string())?);
            ensure!(fams.len() == 1 && canonical_form(&fams[0]) == tri, "extremal classes at n={n}: {}", fams.len());
        }
    }
    Ok(format!("{graphs} intersecting graphs enumerated over n=3..7 and C ∈ {{11/10, 5/4, 7/5}}; only triangles extremal"))
}

// ---------------------------------------------------------------------------
// 5. Cross-intersecting ℓ-uniform pairs above 5·C(m-2,ℓ-2).

/// Brute force: returns (qualifying pairs, pairs violating the conclusion).
fn fk_oracle(m: usize, l: usize) -> (u64, u64) {
    let sets = ksets(m, l);
    let total = sets.len();
    let t = choose(m as i64 - 2, l as i64 - 2) as u32;
    let min = 5 * t;
    let avoid: Vec<u64> =
        (0..m).map(|j| (0..total).filter(|&i| !sets[i].contains(&j)).fold(0, |acc, i| acc | 1u64 << i)).collect();
    let (mut pairs, mut bad) = (0u64, 0u64);
    for a in 0u64..1 << total {
        if a.count_ones() < min {
            continue;
        }
        let comp: Vec<usize> =
            (0..total).filter(|&y| (0..total).all(|x| a >> x & 1 == 0 || meets(&sets[x], &sets[y]))).collect();
        if (comp.len() as u32) < min {
            continue;
        }
        for sub in 0u64..1 << comp.len() {
            if sub.count_ones() < min {
                continue;
            }
            let b = comp.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).fold(0u64, |acc, (_, &y)| acc | 1 << y);
            pairs += 1;
            let ok = (0..m).any(|j| (a & avoid[j]).count_ones() <= t && (b & avoid[j]).count_ones() <= t);
            bad += u64::from(!ok);
        }
    }
    (pairs, bad)
}

fn criterion_5() -> Outcome {
    let mut parts = Vec::new();
    for (m, l) in [(4usize, 2usize), (5, 2), (6, 2), (7, 2)] {
        let rep = verify_lemma_fk(m, l, false).map_err(|e| e.to_string())?;
        let (pairs, bad) = fk_oracle(m, l);
        ensure!(rep.holds && rep.counterexample.is_none(), "counterexample at ({m},{l})");
        ensure!(bad == 0, "oracle found {bad} violations at ({m},{l})");
        ensure!(rep.pairs_checked == pairs, "({m},{l}): checked {} pairs, oracle {pairs}", rep.pairs_checked);
        parts.push(format!("({m},{l}): {pairs} pairs"));
    }
    Ok(format!("{}; zero counterexamples", parts.join(", ")))
}

// ---------------------------------------------------------------------------
// 6. Lex families are optimal among cross-intersecting pairs.

fn criterion_6() -> Outcome {
    let mut parts = Vec::new();
    for (n, a, b) in [(5usize, 2usize, 2usize), (6, 2, 2)] {
        let rep = verify_hilton(n, a, b, HiltonMode::Exhaustive).map_err(|e| e.to_string())?;
        ensure!(rep.holds, "Hilton fails at ({n},{a},{b})");
        ensure!(rep.pairs_checked > 0 && rep.shift_pairs_checked > 0, "nothing checked at ({n},{a},{b})");
        parts.push(format!("({n},{a},{b}): {} pairs", rep.pairs_checked));
    }

    let all = ksets(8, 3);
    let prefix = &all[..36];
    ensure!(prefix.iter().all(|s| meets(s, &[0, 1])), "first 36 lex 3-sets do not all meet [2]");
    ensure!(all.iter().filter(|s| meets(s, &[0, 1])).count() == 36, "36 != number meeting [2]");
    let oracle = all.iter().filter(|y| prefix.iter().all(|x| meets(x, y))).count();
    let got = cross_max_compatible(8, 3, 3, 36).map_err(|e| e.to_string())?;
    ensure!(oracle == 6 && got == big(6) && choose(6, 1) == 6, "cross max {got}, oracle {oracle}");

    let mut tight = 0;
    for n in 2..=10usize {
        for a in 1..=4usize {
            for b in 1..=4usize {
                if a + b > n {
                    continue;
                }
                for d in 1..b {
                    let size_a: u128 = (1..=d as i64).map(|j| choose(n as i64 - j, a as i64 - 1)).sum();
                    let got = cross_max_compatible(n, a, b, size_a as u64).map_err(|e| e.to_string())?;
                    let want = choose((n - d) as i64, (b - d) as i64);
                    ensure!(got == big(want), "cross max at n={n},a={a},b={b},d={d}: {got} vs {want}");
                    tight += 1;
                }
            }
        }
    }
    Ok(format!("{}; (8,3,3,36) -> 6; {tight} tight configurations agree", parts.join(", ")))
}

// ---------------------------------------------------------------------------
// 7. Stability triple on kernel families and near-triangle families.

fn outside_missing_oracle(f: &Family, t: [usize; 3]) -> (u128, u128) {
    let sets = members(f);
    let outside = sets.iter().filter(|s| count_in(s, &t) < 2).count() as u128;
    let present = sets.iter().filter(|s| count_in(s, &t) == 2).count() as u128;
    (outside, 3 * choose(f.n() as i64 - 3, f.k() as i64 - 2) - present)
}

fn criterion_7() -> Outcome {
    let kernels: Vec<(usize, Vec<[Vec<usize>; 3]>)> = vec![
        (2, vec![[vec![3, 4], vec![3, 5], vec![4, 5]], [vec![3, 4], vec![3, 5], vec![3, 6]]]),
        (3, vec![[vec![3, 4, 5], vec![3, 4, 5], vec![3, 4, 5]], [vec![3, 4, 5], vec![3, 6, 7], vec![4, 6, 8]]]),
    ];
    let mut cases = 0;
    let mut brute = 0;
    for (l, triples) in &kernels {
        let li = *l as i64;
        for sets in triples {
            let kern = KernelTriple::new([kset(&sets[0]), kset(&sets[1]), kset(&sets[2])]).map_err(|e| e.to_string())?;
            for k in l + 1..=6 {
                let ki = k as i64;
                let mut ns = vec![(2 * k + 3).max(12), 4 * k, 6 * k];
                ns.retain(|&n| n <= 40);
                ns.dedup();
                for n in ns {
                    let ni = n as i64;
                    let f = example_t(n, k, &kern).map_err(|e| e.to_string())?;
                    let rep = find_stability_triple(&f, 36).map_err(|e| e.to_string())?;
                    let gamma_full = choose(ni - 3, ki - 2);
                    let one_minus_alpha = ratio(f.diversity() as i64, gamma_full as i64);
                    ensure!(rep.alpha == Rational::one() - one_minus_alpha.clone(), "α mismatch");
                    if !rep.alpha.is_negative() {
                        ensure!(
                            Rational::from(ni) * one_minus_alpha <= Rational::from(10 * ki),
                            "n={n} beyond 10k/(1-α)"
                        );
                    }
                    ensure!(rep.triple == [0, 1, 2], "ℓ={l} k={k} n={n} kernels {sets:?}: triple {:?}", rep.triple);
                    let want_out = 3 * choose(ni - 3 - li, ki - li - 1);
                    let want_miss = 3 * choose(ni - 3 - li, ki - 2);
                    ensure!(rep.outside == big(want_out), "outside {} vs {want_out}", rep.outside);
                    ensure!(rep.missing == big(want_miss), "missing {} vs {want_miss}", rep.missing);
                    ensure!(outside_missing_oracle(&f, [0, 1, 2]) == (want_out, want_miss), "oracle disagrees");
                    ensure!(!rep.is_violation(), "bound violated under hypotheses");
                    if n <= 16 {
                        let best = ksets(n, 3)
                            .into_iter()
                            .map(|t| outside_missing_oracle(&f, [t[0], t[1], t[2]]))
                            .min()
                            .unwrap();
                        ensure!(best == (want_out, want_miss), "a triple beats [3]: {best:?}");
                        brute += 1;
                    }
                    cases += 1;
                }
            }
        }
    }

    // identical 2-element kernels: {1,4,5} is strictly closer than [3]
    for (k, n) in [(3usize, 12usize), (4, 16), (5, 20)] {
        let kern = KernelTriple::uniform(kset(&[3, 4])).map_err(|e| e.to_string())?;
        let f = example_t(n, k, &kern).map_err(|e| e.to_string())?;
        let rep = find_stability_triple(&f, 36).map_err(|e| e.to_string())?;
        let (o123, _) = outside_missing_oracle(&f, [0, 1, 2]);
        ensure!(rep.outside < big(o123), "identical kernels: finder outside {} not below {o123}", rep.outside);
        ensure!(outside_missing_oracle(&f, rep.triple) == (rep.outside.clone().try_into().unwrap(), rep.missing.clone().try_into().unwrap()), "oracle");
    }

    // hypotheses hold: triangle, triangle plus [3], triangle minus sets avoiding 1
    let mut hyp_cases = 0;
    for (n, k) in [(150usize, 3usize), (200, 3)] {
        let tri = family_triangle(n, k).map_err(|e| e.to_string())?;
        let mut variants = vec![tri.clone(), tri.union(&Family::from_members(n, k, vec![kset(&[0, 1, 2])]).unwrap()).unwrap()];
        for drop in [1usize, 3, 8] {
            let kept: Vec<KSet> = tri
                .iter()
                .copied()
                .filter(|s| !(s.contains(1) && s.contains(2) && s.max_elem().unwrap() < 3 + drop))
                .collect();
            variants.push(Family::from_members(n, k, kept).unwrap());
        }
        for f in variants {
            let rep = find_stability_triple(&f, 36).map_err(|e| e.to_string())?;
            ensure!(rep.hypotheses_hold, "hypotheses fail on near-triangle n={n}, |F|={}", f.len());
            ensure!(rep.pass_14 && rep.pass_15, "bounds fail on near-triangle n={n}: {rep:?}");
            ensure!(rep.triple == [0, 1, 2], "near-triangle triple {:?}", rep.triple);
            hyp_cases += 1;
        }
    }
    Ok(format!(
        "{cases} kernel families recover [3] with displayed counts ({brute} confirmed minimal over all triples); \
         {hyp_cases} families with hypotheses holding pass both bounds; \
         NOTE identical 2-element kernels admit a strictly closer triple, which the finder returns in all 3 cases"
    ))
}

// ---------------------------------------------------------------------------
// 8. Local search at scale stays under the proven bounds.

fn criterion_8() -> Outcome {
    let mut parts = Vec::new();
    for (n, k, c) in [(252usize, 3usize, ratio(5, 4)), (130, 3, Rational::one())] {
        let starts: Vec<String> = canonical_starts(n, k).into_iter().map(|(name, _)| name).collect();
        for need in ["star", "f3", "triangle", "fano-l"] {
            ensure!(starts.iter().any(|s| s == need), "start {need} missing at ({n},{k}): {starts:?}");
        }
        let theorem = Theorem::governing(n as i64, k as i64, &c).ok_or("no governing bound")?;
        for seed in [1u64, 2, 3] {
            let cfg = HeuristicConfig { moves: 1_000_000, seed, ..HeuristicConfig::default() };
            let res = local_search(n, k, &c, &cfg, &SearchOptions::default()).map_err(|e| e.to_string())?;
            ensure!(res.nodes_explored >= 100_000, "only {} moves", res.nodes_explored);
            ensure!(res.best_family.is_intersecting(), "search returned a non-intersecting family");
            ensure!(res.best_family.c_diversity(&c) == res.best_value, "reported value is not the family's");
            let v = check_theorem(&res.best_family, &theorem).map_err(|e| e.to_string())?;
            ensure!(v.hypotheses_hold, "{theorem} hypotheses fail at ({n},{k})");
            ensure!(v.satisfied, "({n},{k},C={c}) seed {seed}: {} exceeds {}", v.lhs, v.rhs);
            if seed == 1 {
                parts.push(format!("({n},{k},C={c}): best {} <= {} over {} moves", res.best_value, v.rhs, res.nodes_explored));
            }
        }
    }
    Ok(parts.join("; "))
}

// ---------------------------------------------------------------------------
// 9. Randomized invariants with fixed seeds.

fn runner(seed: u64) -> TestRunner {
    TestRunner::new(Config { cases: 200, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() })
}

fn family_strategy() -> impl proptest::strategy::Strategy<Value = (u64, usize, usize, bool)> {
    use proptest::prelude::*;
    (any::<u64>(), 4usize..=9, 1usize..=4, any::<bool>()).prop_filter("k <= n", |(_, n, k, _)| *k <= *n)
}

fn property(name: &str, seed: u64, check: impl Fn(&Family, &mut ChaCha8Rng) -> Result<(), String>) -> Result<(), String> {
    runner(seed)
        .run(&family_strategy(), |(s, n, k, inter)| {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let f = random_family(&mut rng, n, k, inter);
            check(&f, &mut rng).map_err(proptest::test_runner::TestCaseError::fail)
        })
        .map_err(|e| format!("{name}: {e}"))
}

fn criterion_9() -> Outcome {
    use rand::Rng;
    let fano = FanoLines::default();
    ensure!(fano.is_valid(), "Fano lines invalid");

    property("trace identity", 1, |f, _| {
        for x in 0..f.n() {
            let with = f.trace(&TraceSpec::link(x)).unwrap().len();
            let without = f.trace(&TraceSpec::avoid(x)).unwrap().len();
            ensure!(with + without == f.len(), "x={x}: {with}+{without} != {}", f.len());
            ensure!(with as u64 == f.degree(x).unwrap(), "degree");
        }
        Ok(())
    })?;
    property("degree comparison", 2, |f, _| {
        for u in 0..f.n() {
            for v in 0..f.n() {
                if u != v && f.degree(u).unwrap() >= f.degree(v).unwrap() {
                    let uv = f.trace_count(kset(&[u]), kset(&[u, v]));
                    let vu = f.trace_count(kset(&[v]), kset(&[u, v]));
                    ensure!(uv >= vu, "u={u}, v={v}: {uv} < {vu}");
                }
            }
        }
        Ok(())
    })?;
    property("shadow bound", 3, |f, _| {
        let (n, k) = (f.n(), f.k());
        for l in 1..k {
            let mut shadow: Vec<Vec<usize>> =
                members(f).iter().flat_map(|s| ksets(k, l).into_iter().map(move |ix| ix.iter().map(|&i| s[i]).collect())).collect();
            shadow.sort();
            shadow.dedup();
            let v = sperner(f, l).unwrap();
            ensure!(v.satisfied, "library verdict fails at l={l}");
            let lhs = shadow.len() as u128 * choose(n as i64, k as i64);
            let rhs = f.len() as u128 * choose(n as i64, l as i64);
            ensure!(lhs >= rhs, "l={l}: {lhs} < {rhs}");
            ensure!(f.shadow(l).unwrap().len() == shadow.len(), "shadow size");
        }
        Ok(())
    })?;
    property("matching bound", 4, |f, _| {
        let sets = members(f);
        // brute-force matching number on the first 14 members
        let head = &sets[..sets.len().min(14)];
        let mut nu_head = 0;
        for mask in 0u32..1 << head.len() {
            let pick: Vec<&Vec<usize>> = (0..head.len()).filter(|i| mask >> i & 1 == 1).map(|i| &head[i]).collect();
            if pick.iter().enumerate().all(|(i, a)| pick[i + 1..].iter().all(|b| !meets(a, b))) {
                nu_head = nu_head.max(pick.len());
            }
        }
        let sub = build(f.n(), f.k(), head);
        ensure!(sub.matching_number() == nu_head, "matching number {} vs {nu_head}", sub.matching_number());
        let nu = f.matching_number();
        let v = matching_bound(f);
        let room = f.n() >= (nu + 1) * f.k();
        ensure!(v.hypotheses_hold == room, "hypothesis flag {} with n={}, k={}, ν={nu}", v.hypotheses_hold, f.n(), f.k());
        if room {
            ensure!(v.satisfied, "matching bound fails");
            ensure!(f.len() as u128 <= nu as u128 * choose(f.n() as i64 - 1, f.k() as i64 - 1), "|F| > ν·C(n-1,k-1)");
        }
        Ok(())
    })?;
    property("shift preservation", 5, |f, rng| {
        let n = f.n();
        let j = rng.gen_range(1..n);
        let i = rng.gen_range(0..j);
        let g = shift(f, i, j).unwrap();
        ensure!(g.len() == f.len() && g.k() == f.k(), "size or uniformity changed");
        ensure!(!f.is_intersecting() || g.is_intersecting(), "intersecting property lost");
        let b = (rng.gen_range(1..=f.k().max(1))).min(n - f.k().min(n - 1));
        let (pa, pb) = random_cross_pair(rng, n, f.k(), b.max(1));
        ensure!(cross_intersecting(&pa, &pb, 1).unwrap(), "generator");
        let (sa, sb) = (shift(&pa, i, j).unwrap(), shift(&pb, i, j).unwrap());
        ensure!(cross_intersecting(&sa, &sb, 1).unwrap(), "cross-intersection lost under S_{i}{j}");
        Ok(())
    })?;
    property("canonical form", 6, |f, rng| {
        let p = random_permutation(rng, f.n());
        let cf = canonical_form(f);
        ensure!(canonical_form(&f.relabel(&p)) == cf, "not permutation invariant");
        ensure!(canonical_form(&cf) == cf, "not idempotent");
        Ok(())
    })?;
    property("triangle decomposition", 7, |f, rng| {
        if f.n() < 3 || f.k() < 2 {
            return Ok(());
        }
        let t = ksets(f.n(), 3);
        let t = &t[rng.gen_range(0..t.len())];
        let d = triangle_decomposition(f, [t[0], t[1], t[2]]).unwrap();
        ensure!(d.identities_hold(f), "identities fail for T={t:?}");
        let full = binom(f.n() as i64 - 3, f.k() as i64 - 2);
        ensure!(&d.f_uv + &BigCount::from(f.trace_count(kset(&[t[0], t[1]]), kset(t))) == full, "f_uv");
        Ok(())
    })?;
    Ok("7 properties × 200 cases (trace identity, degree comparison, shadow, matching, shift, canonical form, decomposition)".into())
}
