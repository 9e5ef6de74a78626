//! Criterion benchmarks for the orbitobs core; see `benches/`.
