//! Criterion benchmarks for the qlogistic kernels; see `benches/`.
