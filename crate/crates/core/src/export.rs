//! Text exports: DOT with permutation labels, graph6 for small graphs, and a
//! sparse edge list with a one-line header.

use std::fmt::Write;
use std::str::FromStr;

use crate::cayley::CayleyGraph;
use crate::cuts::{CutWitness, FaultSet};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order graph6 is written for (single-byte size field).
pub const GRAPH6_LIMIT: usize = 62;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Graph6,
    EdgeList,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Self::Dot),
            "graph6" => Ok(Self::Graph6),
            "edgelist" => Ok(Self::EdgeList),
            _ => Err(Error::Format(format!(
                "`{s}` is not a graph format; expected dot, graph6 or edgelist"
            ))),
        }
    }
}

pub fn export(g: &CayleyGraph, format: ExportFormat, name: &str) -> Result<String> {
    match format {
        ExportFormat::Dot => Ok(to_dot(g, name)),
        ExportFormat::Graph6 => to_graph6(g.graph()),
        ExportFormat::EdgeList => Ok(to_edge_list(g)),
    }
}

pub fn to_dot(g: &CayleyGraph, name: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
    for v in 0..g.order() as u32 {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", g.label(v));
    }
    for (u, v) in g.graph().edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

/// Standard graph6 encoding (no `>>graph6<<` header), with a trailing newline.
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.order();
    if n > GRAPH6_LIMIT {
        return Err(Error::Format(format!(
            "graph6 is only written for graphs of order <= {GRAPH6_LIMIT}, this one has {n}"
        )));
    }
    let mut bits = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n as u32 {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    let mut out = String::with_capacity(2 + bits.len() / 6);
    out.push((n as u8 + 63) as char);
    for chunk in bits.chunks(6) {
        let v = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, &b)| acc | (b as u8) << (5 - i));
        out.push((v + 63) as char);
    }
    out.push('\n');
    Ok(out)
}

/// Header `n=<n> order=<n!> degree=<d>` followed by one `u v` line per edge.
pub fn to_edge_list(g: &CayleyGraph) -> String {
    let graph = g.graph();
    let degree = graph.regular_degree().unwrap_or_else(|| graph.min_degree());
    let mut out = format!("n={} order={} degree={}\n", g.n(), g.order(), degree);
    for (u, v) in graph.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Witness file: `kind=`, `size=` and `graph=` header lines, then one
/// permutation per fault vertex in rank order.
pub fn witness_file(g: &CayleyGraph, spec: &str, w: &CutWitness) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "kind={}", w.kind);
    let _ = writeln!(out, "size={}", w.size());
    let _ = writeln!(out, "graph={spec}");
    for &v in w.fault_set.members() {
        let _ = writeln!(out, "{}", g.label(v));
    }
    out
}

/// Reads the fault set back from a witness file written for `g`.
pub fn read_witness_file(g: &CayleyGraph, text: &str) -> Result<FaultSet> {
    let mut size = None;
    let mut members = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(v) = line.strip_prefix("size=") {
            size = Some(v.parse::<usize>().map_err(|_| Error::Parse {
                token: line.to_string(),
                reason: "size is not an integer".into(),
            })?);
        } else if line.starts_with("kind=") || line.starts_with("graph=") {
            continue;
        } else {
            members.push(g.vertex(line)?);
        }
    }
    if size.is_some_and(|s| s != members.len()) {
        return Err(Error::Format(format!(
            "witness lists {} vertices but declares size={}",
            members.len(),
            size.unwrap_or_default()
        )));
    }
    FaultSet::new(members, g.order())
}
