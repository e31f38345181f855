//! Criterion benchmarks for taureg-core; see `benches/ranks.rs`.
