//! Benchmarks for the symbolic and mesh engines; see `benches/engines.rs`.
