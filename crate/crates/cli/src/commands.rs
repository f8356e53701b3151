use crate::args::*;
use crate::report::{Report, Verdict};
use anyhow::{anyhow, bail, Context, Result};
use divlab::constructions::{
    example_t, family_fi, family_triangle, family_uvw, family_uvw_star, fano_families, full_star, lex_family,
    KernelTriple,
};
use divlab::formulas::bounds::cross_lemma_bounds;
use divlab::io::{family_to_json, read_family};
use divlab::search::heuristic::HeuristicConfig;
use divlab::search::lemmas::{cross_max_compatible, verify_hilton, verify_lemma_fk, verify_lemma_key2, HiltonMode};
use divlab::search::stability::{find_stability_triple_with, ScanPolicy};
use divlab::search::{max_c_diversity, Mode, DEFAULT_BUDGET};
use divlab::sweep::{run_sweep, SweepConfig};
use divlab::formulas::check_theorem;
use divlab::{BigCount, Family, KSet, SearchOptions, Theorem};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

pub const BUDGET_ENV: &str = "DIVLAB_BUDGET";

/// What a command touched, for the manifest.
#[derive(Debug, Default)]
pub struct RunContext {
    pub inputs: Vec<PathBuf>,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    /// Replaces the report on stdout (CSV sweeps).
    pub raw_output: Option<String>,
}

impl RunContext {
    fn read_family(&mut self, path: &Path) -> Result<Family> {
        self.inputs.push(path.to_path_buf());
        read_family(path).with_context(|| format!("reading family {}", path.display()))
    }
}

fn env_budget() -> Result<Option<u64>> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| anyhow!("{BUDGET_ENV}={v:?} is not a nonnegative integer")),
        Err(_) => Ok(None),
    }
}

fn one_based(t: [usize; 3]) -> [usize; 3] {
    [t[0] + 1, t[1] + 1, t[2] + 1]
}

fn parse_triple(s: &str, n: usize) -> Result<[usize; 3]> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| anyhow!("bad triple element {p:?}")))
        .collect::<Result<_>>()?;
    let [u, v, w] = parts[..] else { bail!("--t needs exactly three elements, got {s:?}") };
    for e in [u, v, w] {
        if e == 0 || e > n {
            bail!("triple element {e} outside [1, {n}]");
        }
    }
    if u == v || v == w || u == w {
        bail!("triple elements must be distinct");
    }
    Ok([u - 1, v - 1, w - 1])
}

fn parse_kernels(spec: &str, ctx: &mut RunContext) -> Result<KernelTriple> {
    let text = if spec.trim_start().starts_with('[') {
        spec.to_string()
    } else {
        let p = PathBuf::from(spec);
        ctx.inputs.push(p.clone());
        std::fs::read_to_string(&p).with_context(|| format!("reading kernels {spec}"))?
    };
    let raw: Vec<Vec<usize>> = serde_json::from_str(&text).context("kernels must be a JSON list of three lists")?;
    if raw.len() != 3 {
        bail!("expected three kernels, got {}", raw.len());
    }
    let mut sets = [KSet::default(); 3];
    for (slot, a) in sets.iter_mut().zip(&raw) {
        if a.contains(&0) {
            bail!("kernel elements are 1-indexed");
        }
        *slot = KSet::from_elems(a.iter().map(|e| e - 1));
    }
    Ok(KernelTriple::new(sets)?)
}

pub fn construct(a: &ConstructArgs, ctx: &mut RunContext) -> Result<Report> {
    let (n, k) = (a.n, a.k);
    let need = |flag: &str| anyhow!("--family {:?} needs --{flag}", a.family);
    let f = match a.family {
        FamilyKind::Star => full_star(n, k, 0)?,
        FamilyKind::Fi => family_fi(n, k, a.i.ok_or_else(|| need("i"))?)?,
        FamilyKind::Triangle => family_triangle(n, k)?,
        FamilyKind::Uvw => family_uvw(n, k, parse_triple(a.t.as_deref().ok_or_else(|| need("t"))?, n)?)?,
        FamilyKind::UvwStar => family_uvw_star(n, k, parse_triple(a.t.as_deref().ok_or_else(|| need("t"))?, n)?)?,
        FamilyKind::Lex => lex_family(n, k, a.m.ok_or_else(|| need("m"))?)?,
        FamilyKind::FanoL => fano_families(n, k)?.0,
        FamilyKind::FanoLplus => fano_families(n, k)?.1,
        FamilyKind::ExampleT => example_t(n, k, &parse_kernels(a.kernels.as_deref().ok_or_else(|| need("kernels"))?, ctx)?)?,
    };
    std::fs::write(&a.out, family_to_json(&f)).with_context(|| format!("writing {}", a.out.display()))?;
    let values = json!({
        "n": n,
        "k": k,
        "size": f.len(),
        "delta": f.delta(),
        "gamma": f.diversity(),
        "intersecting": f.is_intersecting(),
        "out": a.out.display().to_string(),
    });
    Ok(Report::new(Verdict::Ok, true, values))
}

pub fn measure(a: &MeasureArgs, ctx: &mut RunContext) -> Result<Report> {
    let f = ctx.read_family(&a.file)?;
    let mut values = json!({
        "n": f.n(),
        "k": f.k(),
        "size": f.len(),
        "delta": f.delta(),
        "gamma": f.diversity(),
        "intersecting": f.is_intersecting(),
        "star": f.is_star(),
    });
    if !f.is_empty() {
        values["max_degree_element"] = json!(f.max_degree().1 + 1);
        values["rho"] = json!(f.rho()?);
    }
    if let Some(c) = &a.c {
        values["c"] = json!(c);
        values["gamma_c"] = json!(f.c_diversity(c));
    }
    Ok(Report::new(Verdict::Ok, true, values))
}

pub fn verify(a: &VerifyArgs, ctx: &mut RunContext) -> Result<Report> {
    let f = ctx.read_family(&a.family)?;
    let theorem = Theorem::parse(&a.theorem, a.i, a.c.clone())?;
    let v = check_theorem(&f, &theorem)?;
    let verdict = Verdict::of_bound(v.hypotheses_hold, v.satisfied);
    let mut r = Report::new(verdict, v.hypotheses_hold, serde_json::to_value(&v)?);
    if verdict == Verdict::Violation {
        r.witness_family = Some(f);
    }
    Ok(r)
}

pub fn search(cmd: &SearchCommand, ctx: &mut RunContext) -> Result<Report> {
    let SearchCommand::MaxCdiv(a) = cmd;
    let budget = match a.budget {
        Some(b) => Some(b),
        None => env_budget()?,
    };
    let opts = SearchOptions {
        budget: if a.heuristic { DEFAULT_BUDGET } else { budget.unwrap_or(DEFAULT_BUDGET) },
        workers: a.workers.unwrap_or(0),
        override_guard: a.override_guard,
    };
    let mode = if a.heuristic {
        let mut cfg = HeuristicConfig { seed: a.seed.unwrap_or(0), ..HeuristicConfig::default() };
        if let Some(b) = budget {
            cfg.moves = b;
        }
        if let Some(r) = a.restarts {
            cfg.random_restarts = r;
        }
        Mode::Heuristic(cfg)
    } else {
        Mode::Exact
    };
    ctx.workers = a.workers;
    let res = max_c_diversity(a.n, a.k, &a.c, &mode, &opts)?;
    ctx.seed = res.seed;

    let bound = match Theorem::governing(a.n as i64, a.k as i64, &a.c) {
        Some(t) => Some(check_theorem(&res.best_family, &t)?),
        None => None,
    };
    let (verdict, hyp) = match &bound {
        Some(v) => (Verdict::of_bound(v.hypotheses_hold, v.satisfied), v.hypotheses_hold),
        None => (Verdict::Ok, true),
    };
    let values = json!({
        "n": a.n,
        "k": a.k,
        "c": a.c,
        "mode": if a.heuristic { "heuristic" } else { "exact" },
        "best_value": res.best_value,
        "best_size": res.best_family.len(),
        "best_delta": res.best_family.delta(),
        "exact": res.exact,
        "degree_cap_used": res.degree_cap_used,
        "seed": res.seed,
        "bound": bound,
    });
    let mut r = Report::new(verdict, hyp, values);
    r.witness_family = Some(res.best_family);
    r.nodes = res.nodes_explored;
    Ok(r)
}

pub fn stability(a: &StabilityArgs, ctx: &mut RunContext) -> Result<Report> {
    let f = ctx.read_family(&a.file)?;
    let policy = match a.scan {
        ScanKind::Auto => ScanPolicy::Auto,
        ScanKind::Exhaustive => ScanPolicy::Exhaustive,
        ScanKind::Shortlist => ScanPolicy::Shortlist(a.shortlist),
    };
    let rep = find_stability_triple_with(&f, a.d, policy)?;
    let verdict = Verdict::of_bound(rep.hypotheses_hold, rep.pass_14 && rep.pass_15);
    let mut values = serde_json::to_value(&rep)?;
    values["triple"] = json!(one_based(rep.triple));
    let mut r = Report::new(verdict, rep.hypotheses_hold, values);
    if verdict == Verdict::Violation {
        r.witness_family = Some(f);
    }
    Ok(r)
}

fn counterexample_values(pair: &Option<(Family, Family)>) -> Value {
    match pair {
        Some((a, b)) => json!({ "a": a, "b": b }),
        None => Value::Null,
    }
}

pub fn lemma(cmd: &LemmaCommand, ctx: &mut RunContext) -> Result<Report> {
    match cmd {
        LemmaCommand::Fk(a) => {
            let rep = verify_lemma_fk(a.m, a.l, a.override_guard)?;
            let verdict = if rep.holds { Verdict::Satisfied } else { Verdict::Violation };
            let values = json!({
                "m": a.m,
                "l": a.l,
                "holds": rep.holds,
                "pairs_checked": rep.pairs_checked,
                "counterexample": counterexample_values(&rep.counterexample),
            });
            let mut r = Report::new(verdict, true, values);
            r.nodes = rep.pairs_checked;
            Ok(r)
        }
        LemmaCommand::Hilton(a) => {
            let mode = match (a.exhaustive, a.trials) {
                (_, Some(trials)) => HiltonMode::Trials { trials, seed: a.seed },
                _ => HiltonMode::Exhaustive,
            };
            if let HiltonMode::Trials { seed, .. } = mode {
                ctx.seed = Some(seed);
            }
            let rep = verify_hilton(a.n, a.a, a.b, mode)?;
            let verdict = if rep.holds { Verdict::Satisfied } else { Verdict::Violation };
            let values = json!({
                "n": a.n,
                "a": a.a,
                "b": a.b,
                "mode": if matches!(mode, HiltonMode::Exhaustive) { "exhaustive" } else { "trials" },
                "holds": rep.holds,
                "pairs_checked": rep.pairs_checked,
                "shift_pairs_checked": rep.shift_pairs_checked,
                "counterexample": counterexample_values(&rep.counterexample),
            });
            let mut r = Report::new(verdict, true, values);
            r.nodes = rep.pairs_checked;
            Ok(r)
        }
        LemmaCommand::CrossMax(a) => {
            let best = cross_max_compatible(a.n, a.a, a.b, a.size_a)?;
            let mut values = json!({
                "n": a.n,
                "a": a.a,
                "b": a.b,
                "size_a": a.size_a,
                "max_size_b": best.to_string(),
            });
            let mut verdict = Verdict::Ok;
            let mut hyp = true;
            if let Some(d) = a.d {
                let (key0, _, _) = cross_lemma_bounds(
                    a.n as i64,
                    a.a as i64,
                    a.b as i64,
                    d as i64,
                    &BigCount::from(a.size_a),
                    &best,
                )?;
                verdict = Verdict::of_bound(key0.hypotheses_hold, key0.satisfied);
                hyp = key0.hypotheses_hold;
                values["bound"] = serde_json::to_value(&key0)?;
            }
            Ok(Report::new(verdict, hyp, values))
        }
        LemmaCommand::Key2(a) => {
            let f = ctx.read_family(&a.file)?;
            if a.u == 0 || a.v == 0 {
                bail!("--u and --v are 1-indexed");
            }
            let rep = verify_lemma_key2(&f, a.u - 1, a.v - 1)?;
            let verdict = if rep.is_violation() {
                Verdict::Violation
            } else if rep.hypothesis_holds {
                Verdict::Satisfied
            } else {
                Verdict::HypothesesFail
            };
            let mut values = serde_json::to_value(&rep)?;
            values["witness"] = json!(rep.witness.map(|w| w + 1));
            let mut r = Report::new(verdict, rep.hypothesis_holds, values);
            if verdict == Verdict::Violation {
                r.witness_family = Some(f);
            }
            Ok(r)
        }
    }
}

pub fn sweep(a: &SweepArgs, ctx: &mut RunContext) -> Result<Report> {
    ctx.inputs.push(a.config.clone());
    let text = std::fs::read_to_string(&a.config).with_context(|| format!("reading {}", a.config.display()))?;
    let cfg: SweepConfig = serde_json::from_str(&text).with_context(|| format!("parsing sweep config {}", a.config.display()))?;
    let rep = run_sweep(&cfg)?;
    let verdict = if rep.has_failures() { Verdict::Violation } else { Verdict::Satisfied };
    if a.csv {
        let mut w = csv::Writer::from_writer(Vec::new());
        for row in &rep.rows {
            w.serialize(row)?;
        }
        ctx.raw_output = Some(String::from_utf8(w.into_inner().map_err(|e| anyhow!("{e}"))?)?);
    }
    Ok(Report::new(verdict, true, serde_json::to_value(&rep)?))
}
