//! Exact and heuristic maximization of `γ_C`, plus brute-force oracles for the
//! cross-intersecting lemmas and the stability triple finder.

pub mod exact;
pub mod heuristic;
pub mod lemmas;
pub mod stability;

use crate::family::Family;
use crate::rational::Rational;
use serde::Serialize;

/// Default node budget for exact search.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

/// Exact search refuses instances with more candidate sets than this unless
/// the guard is overridden.
pub const GUARD_SETS: u64 = 40;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// Worker threads; `0` uses the global pool.
    pub workers: usize,
    pub override_guard: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, workers: 0, override_guard: false }
    }
}

impl SearchOptions {
    pub(crate) fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        if self.workers == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub best_family: Family,
    pub best_value: Rational,
    pub exact: bool,
    pub nodes_explored: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap_used: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub enum Mode {
    Exact,
    Heuristic(heuristic::HeuristicConfig),
}

/// Maximizes `|F| - C·Δ(F)` over intersecting `F ⊆ C([n], k)`.
pub fn max_c_diversity(
    n: usize,
    k: usize,
    c: &Rational,
    mode: &Mode,
    opts: &SearchOptions,
) -> crate::Result<SearchResult> {
    match mode {
        Mode::Exact => exact::max_c_diversity_exact(n, k, c, opts),
        Mode::Heuristic(cfg) => heuristic::local_search(n, k, c, cfg, opts),
    }
}
