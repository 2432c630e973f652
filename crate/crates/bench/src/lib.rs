//! Criterion benchmarks for `symlie-core`; see `benches/core.rs` and run
//! them with `cargo bench -p symlie-bench`.
