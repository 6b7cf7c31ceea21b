//! Shared fixtures for the criterion benchmarks.

pub use bwc_core;
