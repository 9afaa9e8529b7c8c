//! Deliberately corrupted graphs for negative controls.
//!
//! Each corruption is a single degree-preserving double edge swap: remove
//! `a-b` and `c-d`, add `a-d` and `c-b`. Permutation labels and blocks are
//! kept, so block-based checks run unchanged on the result.

use std::fmt;
use std::str::FromStr;

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruption {
    /// Two vertices of one block end up sharing an out-neighbor.
    SharedOutNeighbor,
    /// Some pair of vertices ends up with three common neighbors.
    CommonNeighbors,
}

impl Corruption {
    pub const ALL: [Corruption; 2] = [Corruption::SharedOutNeighbor, Corruption::CommonNeighbors];

    pub fn as_str(self) -> &'static str {
        match self {
            Corruption::SharedOutNeighbor => "shared-out-neighbor",
            Corruption::CommonNeighbors => "common-neighbors",
        }
    }

    pub fn apply(self, g: &CayleyGraph) -> Result<CayleyGraph> {
        match self {
            Corruption::SharedOutNeighbor => shared_out_neighbor(g),
            Corruption::CommonNeighbors => excess_common_neighbors(g),
        }
    }
}

impl fmt::Display for Corruption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Corruption {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Corruption::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Parse {
                token: s.to_string(),
                reason: "unknown corruption; expected shared-out-neighbor or common-neighbors"
                    .into(),
            })
    }
}

/// Remove `a-b`, `c-d`; add `a-d`, `c-b`. `None` if the swap would create a
/// loop or a repeated edge.
fn swap(g: &Graph, (a, b): (Vertex, Vertex), (c, d): (Vertex, Vertex)) -> Option<Graph> {
    let distinct = a != c && a != d && b != c && b != d;
    if !distinct || g.has_edge(a, d) || g.has_edge(c, b) {
        return None;
    }
    g.rewired(&[(a, b), (c, d)], &[(a, d), (c, b)]).ok()
}

/// First `u < v` in one block and a rewiring that gives `u` the out-neighbor
/// `b` of `v`.
pub fn shared_out_neighbor(g: &CayleyGraph) -> Result<CayleyGraph> {
    let graph = g.graph();
    for u in 0..g.order() as Vertex {
        for v in u + 1..g.order() as Vertex {
            if g.block_of(u) != g.block_of(v) {
                continue;
            }
            for &b in &g.out_neighbors(v) {
                for &a in &g.out_neighbors(u) {
                    for &c in graph.neighbors(b) {
                        if c == v || c == u {
                            continue;
                        }
                        // u loses a and gains b; c loses b and gains a
                        if let Some(h) = swap(graph, (u, a), (c, b)) {
                            return g.with_graph(h);
                        }
                    }
                }
            }
        }
    }
    Err(Error::invalid(
        "no rewiring gives two block-mates a shared out-neighbor",
    ))
}

/// First pair `u < w` with two common neighbors, plus a rewiring that makes
/// a third neighbor `z` of `w` adjacent to `u`.
pub fn excess_common_neighbors(g: &CayleyGraph) -> Result<CayleyGraph> {
    let graph = g.graph();
    let n = g.order() as Vertex;
    for u in 0..n {
        for w in u + 1..n {
            if graph.cn_unchecked(u, w) != 2 {
                continue;
            }
            for &z in graph.neighbors(w) {
                if graph.has_edge(u, z) || z == u {
                    continue;
                }
                for &y in graph.neighbors(u) {
                    if graph.has_edge(w, y) {
                        continue;
                    }
                    for &t in graph.neighbors(z) {
                        if t == w {
                            continue;
                        }
                        // u loses y and gains z; t loses z and gains y
                        if let Some(h) = swap(graph, (u, y), (t, z)) {
                            if h.cn_unchecked(u, w) == 3 {
                                return g.with_graph(h);
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::invalid(
        "no rewiring raises a common-neighbor count to three",
    ))
}
