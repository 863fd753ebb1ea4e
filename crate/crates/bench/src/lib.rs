//! Benchmark-only crate; the measured kernels live in `nullseries-core`.
