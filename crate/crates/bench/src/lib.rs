//! Shared fixtures for the benchmarks.

use symcay_core::{CayleyGraph, TopologySpec};

/// Builds the graph for a spec string, panicking on bad input.
pub fn graph(spec: &str) -> CayleyGraph {
    spec.parse::<TopologySpec>()
        .and_then(|s| s.build())
        .unwrap_or_else(|e| panic!("bench fixture `{spec}`: {e}"))
}
