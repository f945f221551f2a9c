//! Criterion benchmarks for `stiefel-core`; see `benches/`.
