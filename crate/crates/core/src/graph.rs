//! Plain undirected simple graphs with `u32` vertex ids.
//!
//! Adjacency is stored as one flat neighbor table with row offsets; for a
//! regular graph every row has the same length, so the table is effectively
//! `order x degree`. Graphs with at most 128 vertices also carry one `u128`
//! neighbor mask per vertex, which the exhaustive searches run on.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = u32;

/// Graphs up to this order get per-vertex `u128` neighbor masks.
pub const MASK_LIMIT: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
    masks: Option<Vec<u128>>,
}

impl Graph {
    /// Builds a graph from neighbor lists, checking that they describe a
    /// simple undirected graph.
    pub fn from_adjacency(mut lists: Vec<Vec<Vertex>>) -> Result<Self> {
        let order = lists.len();
        for (v, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!(
                    "vertex {v} has a repeated neighbor"
                )));
            }
            if list.binary_search(&(v as Vertex)).is_ok() {
                return Err(Error::invalid(format!("vertex {v} has a loop")));
            }
            if let Some(&w) = list.iter().find(|&&w| w as usize >= order) {
                return Err(Error::invalid(format!(
                    "vertex {v} lists out-of-range neighbor {w}"
                )));
            }
        }
        for (v, list) in lists.iter().enumerate() {
            for &w in list {
                if lists[w as usize].binary_search(&(v as Vertex)).is_err() {
                    return Err(Error::invalid(format!("edge {v}->{w} has no reverse")));
                }
            }
        }
        let mut offsets = Vec::with_capacity(order + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        offsets.push(0);
        for list in lists {
            targets.extend_from_slice(&list);
            offsets.push(targets.len());
        }
        let mut g = Self {
            offsets,
            targets,
            masks: None,
        };
        if order <= MASK_LIMIT {
            g.masks = Some(
                (0..order)
                    .map(|v| {
                        g.neighbors(v as Vertex)
                            .iter()
                            .fold(0u128, |m, &w| m | 1u128 << w)
                    })
                    .collect(),
            );
        }
        Ok(g)
    }

    pub fn from_edges(order: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut lists = vec![Vec::new(); order];
        for &(u, v) in edges {
            if u as usize >= order || v as usize >= order {
                return Err(Error::invalid(format!("edge {u}-{v} outside 0..{order}")));
            }
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        Self::from_adjacency(lists)
    }

    /// The cycle `C_n`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3);
        let edges: Vec<_> = (0..n as Vertex)
            .map(|i| (i, (i + 1) % n as Vertex))
            .collect();
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    /// The hypercube `Q_d` on `2^d` vertices.
    pub fn hypercube(d: u32) -> Self {
        let order = 1usize << d;
        let lists = (0..order as Vertex)
            .map(|v| (0..d).map(|b| v ^ (1 << b)).collect())
            .collect();
        Self::from_adjacency(lists).expect("hypercube is simple")
    }

    pub fn order(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn size(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (0..self.order() as Vertex)
            .all(|v| self.degree(v) == d)
            .then_some(d)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.order() as Vertex)
            .map(|v| self.degree(v))
            .min()
            .unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        (0..self.order() as Vertex).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    /// Per-vertex neighbor masks, present when `order <= 128`.
    pub fn masks(&self) -> Option<&[u128]> {
        self.masks.as_deref()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.order();
        (0..n as Vertex).all(|v| self.degree(v) + 1 == n)
    }

    /// `|N(u) ∩ N(v)|`.
    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> Result<usize> {
        if u == v {
            return Err(Error::invalid("common neighbors of a vertex with itself"));
        }
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.cn_unchecked(u, v))
    }

    pub(crate) fn cn_unchecked(&self, u: Vertex, v: Vertex) -> usize {
        if let Some(m) = &self.masks {
            return (m[u as usize] & m[v as usize]).count_ones() as usize;
        }
        let (a, b) = (self.neighbors(u), self.neighbors(v));
        let (mut i, mut j, mut c) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    c += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        c
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.order() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "vertex {v} outside 0..{}",
                self.order()
            )))
        }
    }

    /// Length of a shortest cycle through `source`, if any.
    ///
    /// For a vertex-transitive graph this is the girth.
    pub fn shortest_cycle_through(&self, source: Vertex) -> Option<usize> {
        let n = self.order();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[source as usize] = 0;
        queue.push_back(source);
        let mut best = usize::MAX;
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            if 2 * dx as usize >= best {
                break;
            }
            for &y in self.neighbors(x) {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx + 1;
                    parent[y as usize] = x;
                    queue.push_back(y);
                } else if parent[x as usize] != y {
                    best = best.min((dx + dist[y as usize] + 1) as usize);
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }

    /// Girth from a single source; valid for vertex-transitive graphs.
    pub fn girth_single_source(&self) -> Result<usize> {
        if self.order() == 0 {
            return Err(Error::NoCycle);
        }
        self.shortest_cycle_through(0).ok_or(Error::NoCycle)
    }

    /// Girth as the minimum over all sources; valid for any graph.
    pub fn girth_all_sources(&self) -> Result<usize> {
        (0..self.order() as Vertex)
            .filter_map(|s| self.shortest_cycle_through(s))
            .min()
            .ok_or(Error::NoCycle)
    }

    /// A proper 2-coloring, if the graph is bipartite.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut color = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s as Vertex);
            while let Some(x) = queue.pop_front() {
                for &y in self.neighbors(x) {
                    if color[y as usize] == u8::MAX {
                        color[y as usize] = 1 - color[x as usize];
                        queue.push_back(y);
                    } else if color[y as usize] == color[x as usize] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    /// Every 4-cycle once, as `[a, b, c, d]` in cycle order with `a` the
    /// smallest vertex and `b < d`.
    pub fn four_cycles(&self) -> Vec<[Vertex; 4]> {
        let mut out = Vec::new();
        for a in 0..self.order() as Vertex {
            let na = self.neighbors(a);
            for (i, &b) in na.iter().enumerate() {
                if b < a {
                    continue;
                }
                for &d in &na[i + 1..] {
                    if d < a {
                        continue;
                    }
                    for &c in self.neighbors(b) {
                        if c > a && c != d && self.has_edge(c, d) {
                            out.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Replaces edges; used to build corrupted fixtures for negative controls.
    pub fn rewired(&self, remove: &[(Vertex, Vertex)], add: &[(Vertex, Vertex)]) -> Result<Graph> {
        let mut lists: Vec<Vec<Vertex>> = (0..self.order() as Vertex)
            .map(|v| self.neighbors(v).to_vec())
            .collect();
        for &(u, v) in remove {
            if !self.has_edge(u, v) {
                return Err(Error::invalid(format!(
                    "cannot remove missing edge {u}-{v}"
                )));
            }
            lists[u as usize].retain(|&w| w != v);
            lists[v as usize].retain(|&w| w != u);
        }
        for &(u, v) in add {
            lists[u as usize].push(v);
            lists[v as usize].push(u);
        }
        Graph::from_adjacency(lists)
    }
}
