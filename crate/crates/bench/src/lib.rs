//! Criterion benchmarks for the search and construction paths; see `benches/`.
