//! Benchmark-only crate; see `benches/pipelines.rs`.
