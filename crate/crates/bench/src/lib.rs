//! Benchmarks for `covrel` live in `benches/`; run them with
//! `cargo bench -p covrel-bench`.
