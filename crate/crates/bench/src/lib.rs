//! Benchmarks for `crg-core`; see `benches/`.
