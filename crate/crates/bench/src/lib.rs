//! Benchmark-only package; see `benches/throughput.rs`.
//!
//! Shared corpus builders live in `sce_core::corpus` so benchmark inputs
//! are identical to the ones the test suites measure.
