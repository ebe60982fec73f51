//! Criterion benchmarks for canonical bases and factorization; see `benches/`.
