//! Benchmark support crate; benches live under benches/.
