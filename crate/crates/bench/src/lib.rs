//! Criterion benchmarks for normnet; see `benches/`.
