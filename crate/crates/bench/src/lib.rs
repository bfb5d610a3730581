//! Benchmark-only crate; the measurements live in `benches/kernel.rs`.
