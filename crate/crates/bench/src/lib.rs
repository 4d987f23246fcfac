//! Criterion benchmarks for the sculpting pipeline; see `benches/`.
