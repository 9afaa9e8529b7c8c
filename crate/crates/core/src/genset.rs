//! Transposition generating graphs `G(T)` on positions `[n]`.
//!
//! An edge `{k, l}` stands for the transposition `(k l)` acting on positions.
//! The graph is validated and classified on construction; the class decides
//! how the Cayley graph is split into blocks (see [`GeneratingGraph::choose_peel`]).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::MAX_RANK_ARITY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenClass {
    Star,
    Path,
    OtherTree,
    Cycle,
    UnicyclicTriangleFree,
    Other,
}

impl GenClass {
    pub fn as_str(self) -> &'static str {
        match self {
            GenClass::Star => "star",
            GenClass::Path => "path",
            GenClass::OtherTree => "other-tree",
            GenClass::Cycle => "cycle",
            GenClass::UnicyclicTriangleFree => "unicyclic-triangle-free",
            GenClass::Other => "other",
        }
    }

    pub fn is_tree(self) -> bool {
        matches!(self, GenClass::Star | GenClass::Path | GenClass::OtherTree)
    }

    /// The Cayley graph is a `UG_n` (including `MB_n`).
    pub fn is_unicyclic(self) -> bool {
        matches!(self, GenClass::Cycle | GenClass::UnicyclicTriangleFree)
    }
}

impl fmt::Display for GenClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The position removed by the hierarchical decomposition and the positions
/// adjacent to it in `G(T)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeelChoice {
    pub position: u8,
    pub anchors: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingGraph {
    n: usize,
    /// Sorted, each pair `(k, l)` with `k < l`, 1-based.
    edges: Vec<(u8, u8)>,
    /// `adj[k - 1]` has bit `l - 1` set iff `{k, l}` is an edge.
    adj: Vec<u32>,
    class: GenClass,
}

/// Validated construction from an explicit edge list.
///
/// Triangles are rejected when the graph is unicyclic; graphs with more than
/// one cycle are accepted and classified [`GenClass::Other`].
pub fn build_generating_graph(n: usize, pairs: &[(u8, u8)]) -> Result<GeneratingGraph> {
    GeneratingGraph::build(n, pairs, false)
}

impl GeneratingGraph {
    fn build(n: usize, pairs: &[(u8, u8)], allow_triangle: bool) -> Result<Self> {
        if n == 0 {
            return Err(Error::validation("need at least one position"));
        }
        if n > MAX_RANK_ARITY {
            return Err(Error::Capacity {
                what: "generating graph arity",
                requested: n,
                limit: MAX_RANK_ARITY,
            });
        }
        let mut adj = vec![0u32; n];
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a as usize > n || b as usize > n {
                return Err(Error::validation(format!(
                    "pair {a}-{b} outside positions 1..={n}"
                )));
            }
            if a == b {
                return Err(Error::validation(format!("loop {a}-{b}")));
            }
            let (k, l) = if a < b { (a, b) } else { (b, a) };
            if adj[k as usize - 1] & (1 << (l - 1)) != 0 {
                return Err(Error::validation(format!("duplicate pair {k}-{l}")));
            }
            adj[k as usize - 1] |= 1 << (l - 1);
            adj[l as usize - 1] |= 1 << (k - 1);
            edges.push((k, l));
        }
        edges.sort_unstable();

        if !positions_connected(&adj) {
            return Err(Error::validation(
                "generating graph is disconnected, so its transpositions do not generate Sym(n)",
            ));
        }

        let has_triangle = edges
            .iter()
            .any(|&(k, l)| adj[k as usize - 1] & adj[l as usize - 1] != 0);
        if has_triangle && edges.len() == n && !allow_triangle {
            let (k, l) = *edges
                .iter()
                .find(|&&(k, l)| adj[k as usize - 1] & adj[l as usize - 1] != 0)
                .unwrap();
            let m = (adj[k as usize - 1] & adj[l as usize - 1]).trailing_zeros() + 1;
            return Err(Error::validation(format!(
                "unicyclic generating graph contains the triangle {k}-{l}-{m}"
            )));
        }

        let class = classify_raw(n, &edges, &adj, has_triangle);
        Ok(Self {
            n,
            edges,
            adj,
            class,
        })
    }

    /// Cycle `1-2-...-n-1`, the generator of the modified bubble-sort graph.
    ///
    /// For `n = 3` the cycle is a triangle; it is accepted here and
    /// classified [`GenClass::Other`].
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::validation(format!(
                "a cycle needs at least 3 positions, got {n}"
            )));
        }
        let mut pairs: Vec<(u8, u8)> = (1..n as u8).map(|k| (k, k + 1)).collect();
        pairs.push((1, n as u8));
        Self::build(n, &pairs, true)
    }

    /// Path `1-2-...-n`, the bubble-sort generator.
    pub fn path(n: usize) -> Result<Self> {
        let pairs: Vec<(u8, u8)> = (1..n as u8).map(|k| (k, k + 1)).collect();
        Self::build(n, &pairs, false)
    }

    /// Star centred at position 1.
    pub fn star(n: usize) -> Result<Self> {
        let pairs: Vec<(u8, u8)> = (2..=n as u8).map(|k| (1, k)).collect();
        Self::build(n, &pairs, false)
    }

    /// Cycle on positions `1..=c` followed by a path `c, c+1, ..., n`.
    pub fn cycle_with_tail(n: usize, c: usize) -> Result<Self> {
        if c < 4 {
            return Err(Error::validation(format!(
                "cycle length {c} is below 4, the shortest triangle-free cycle"
            )));
        }
        if c > n {
            return Err(Error::validation(format!(
                "cycle length {c} exceeds n = {n}"
            )));
        }
        let mut pairs: Vec<(u8, u8)> = (1..c as u8).map(|k| (k, k + 1)).collect();
        pairs.push((1, c as u8));
        pairs.extend((c as u8..n as u8).map(|k| (k, k + 1)));
        Self::build(n, &pairs, false)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(u8, u8)] {
        &self.edges
    }

    pub fn class(&self) -> GenClass {
        self.class
    }

    /// Every position has degree 2 (the graph is connected, so it is one
    /// cycle). Unlike [`GenClass::Cycle`] this includes the triangle.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.adj.iter().all(|a| a.count_ones() == 2)
    }

    pub fn degree(&self, position: u8) -> usize {
        self.adj[position as usize - 1].count_ones() as usize
    }

    pub fn neighbors(&self, position: u8) -> Vec<u8> {
        bits(self.adj[position as usize - 1])
    }

    pub fn has_edge(&self, k: u8, l: u8) -> bool {
        k != l && self.adj[k as usize - 1] & (1 << (l - 1)) != 0
    }

    /// Position peeled by the hierarchical decomposition.
    ///
    /// Cycles peel position `n` (two anchors). Every other class peels its
    /// largest-numbered leaf; a graph without leaves falls back to `n`.
    pub fn choose_peel(&self) -> PeelChoice {
        let n = self.n as u8;
        let position = if self.class == GenClass::Cycle {
            n
        } else {
            (1..=n).rev().find(|&p| self.degree(p) == 1).unwrap_or(n)
        };
        PeelChoice {
            position,
            anchors: self.neighbors(position),
        }
    }

    /// Relabels positions so the peel position becomes `n`.
    ///
    /// Returns the relabeled graph and `mapping`, where `mapping[k - 1]` is the
    /// new label of old position `k`.
    pub fn relabel_to_canonical(&self) -> (GeneratingGraph, Vec<u8>) {
        let n = self.n as u8;
        let peel = self.choose_peel().position;
        let mapping: Vec<u8> = (1..=n)
            .map(|k| {
                if k == peel {
                    n
                } else if k == n {
                    peel
                } else {
                    k
                }
            })
            .collect();
        (self.relabel(&mapping), mapping)
    }

    /// Applies a position bijection; `mapping[k - 1]` is the image of `k`.
    pub fn relabel(&self, mapping: &[u8]) -> GeneratingGraph {
        assert_eq!(mapping.len(), self.n);
        let pairs: Vec<(u8, u8)> = self
            .edges
            .iter()
            .map(|&(k, l)| (mapping[k as usize - 1], mapping[l as usize - 1]))
            .collect();
        // Relabeling preserves every property checked in `build`.
        Self::build(self.n, &pairs, true).expect("relabeling preserves validity")
    }

    /// `G(T) - peel`, compacted onto positions `1..n-1` (positions above the
    /// peel shift down by one).
    pub fn peeled(&self) -> Result<GeneratingGraph> {
        if self.n < 2 {
            return Err(Error::invalid("cannot peel a single position"));
        }
        let peel = self.choose_peel().position;
        let squeeze = |p: u8| if p > peel { p - 1 } else { p };
        let pairs: Vec<(u8, u8)> = self
            .edges
            .iter()
            .filter(|&&(k, l)| k != peel && l != peel)
            .map(|&(k, l)| (squeeze(k), squeeze(l)))
            .collect();
        Self::build(self.n - 1, &pairs, true)
    }
}

/// Recomputes the class of a validated graph.
pub fn classify(g: &GeneratingGraph) -> GenClass {
    let has_triangle = g
        .edges
        .iter()
        .any(|&(k, l)| g.adj[k as usize - 1] & g.adj[l as usize - 1] != 0);
    classify_raw(g.n, &g.edges, &g.adj, has_triangle)
}

fn classify_raw(n: usize, edges: &[(u8, u8)], adj: &[u32], has_triangle: bool) -> GenClass {
    let m = edges.len();
    let degrees: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    if m + 1 == n {
        let leaves = degrees.iter().filter(|&&d| d == 1).count();
        if n <= 2 || leaves == 2 {
            GenClass::Path
        } else if degrees.iter().any(|&d| d as usize == n - 1) {
            GenClass::Star
        } else {
            GenClass::OtherTree
        }
    } else if m == n && !has_triangle {
        if degrees.iter().all(|&d| d == 2) {
            GenClass::Cycle
        } else {
            GenClass::UnicyclicTriangleFree
        }
    } else {
        GenClass::Other
    }
}

fn positions_connected(adj: &[u32]) -> bool {
    let n = adj.len();
    let all = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for p in bits_iter(frontier) {
            next |= adj[p];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == all
}

fn bits_iter(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

fn bits(mask: u32) -> Vec<u8> {
    bits_iter(mask).map(|b| b as u8 + 1).collect()
}
