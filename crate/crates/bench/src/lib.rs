//! Criterion benchmarks for the revmahler pipeline; see `benches/pipeline.rs`.
