//! Benchmark-only crate; see `benches/templates.rs`.
//!
//! Run with `cargo bench -p renorm-bench`.

pub use renorm_core as core;
