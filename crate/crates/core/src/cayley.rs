//! Materialized Cayley graphs `Cay(Sym(n), T)` for transposition sets `T`.
//!
//! Vertex `r` is the permutation of lexicographic rank `r`; `u` is adjacent
//! to `u(kl)` for every edge `{k, l}` of the generating graph. The vertex set
//! splits into `n` blocks by the symbol sitting at the peel position.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genset::{GenClass, GeneratingGraph, PeelChoice};
use crate::graph::{Graph, Vertex};
use crate::perm::{factorial, PermRank, Permutation};

/// Largest arity that is materialized (8! = 40320 vertices).
pub const MAX_CAYLEY_ARITY: usize = 8;

#[derive(Debug, Clone)]
pub struct CayleyGraph {
    gen: GeneratingGraph,
    peel: PeelChoice,
    graph: Graph,
    /// Row `r` holds the one-line notation of vertex `r`.
    symbols: Vec<u8>,
    block_of: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossEdgeSet {
    pub i: u8,
    pub j: u8,
    /// `(a, b)` with `a` in block `i` and `b` in block `j`, sorted.
    pub edges: Vec<(Vertex, Vertex)>,
}

pub fn build_cayley(gen: &GeneratingGraph) -> Result<CayleyGraph> {
    let n = gen.n();
    if n > MAX_CAYLEY_ARITY {
        return Err(Error::Capacity {
            what: "Cayley graph arity",
            requested: n,
            limit: MAX_CAYLEY_ARITY,
        });
    }
    let order = factorial(n) as usize;
    let peel = gen.choose_peel();
    let swaps: Vec<(usize, usize)> = gen
        .edges()
        .iter()
        .map(|&(k, l)| (k as usize - 1, l as usize - 1))
        .collect();

    let mut symbols = Vec::with_capacity(order * n);
    let mut lists = Vec::with_capacity(order);
    let mut block_of = Vec::with_capacity(order);
    for r in 0..order {
        let mut p = Permutation::unrank(PermRank {
            index: r as u64,
            n: n as u8,
        })?;
        symbols.extend_from_slice(p.symbols());
        block_of.push(p.at(peel.position as usize));
        let mut row = Vec::with_capacity(swaps.len());
        for &(i, j) in &swaps {
            p.swap_in_place(i, j);
            row.push(p.rank().index as Vertex);
            p.swap_in_place(i, j);
        }
        lists.push(row);
    }
    let graph = Graph::from_adjacency(lists)?;
    Ok(CayleyGraph {
        gen: gen.clone(),
        peel,
        graph,
        symbols,
        block_of,
    })
}

impl CayleyGraph {
    pub fn n(&self) -> usize {
        self.gen.n()
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn generating_graph(&self) -> &GeneratingGraph {
        &self.gen
    }

    pub fn class(&self) -> GenClass {
        self.gen.class()
    }

    pub fn peel(&self) -> &PeelChoice {
        &self.peel
    }

    pub fn symbols(&self, v: Vertex) -> &[u8] {
        let n = self.n();
        &self.symbols[v as usize * n..(v as usize + 1) * n]
    }

    pub fn perm(&self, v: Vertex) -> Permutation {
        Permutation::new(self.symbols(v).to_vec()).expect("stored rows are permutations")
    }

    /// One-line notation of `v`.
    pub fn label(&self, v: Vertex) -> String {
        self.perm(v).to_string()
    }

    pub fn vertex_of(&self, p: &Permutation) -> Result<Vertex> {
        if p.arity() != self.n() {
            return Err(Error::invalid(format!(
                "permutation {p} has arity {}, graph has {}",
                p.arity(),
                self.n()
            )));
        }
        Ok(p.rank().index as Vertex)
    }

    /// Vertex for a permutation string such as `"4231"`.
    pub fn vertex(&self, label: &str) -> Result<Vertex> {
        self.vertex_of(&label.parse()?)
    }

    /// Block index of `v`: its symbol at the peel position.
    pub fn block_of(&self, v: Vertex) -> u8 {
        self.block_of[v as usize]
    }

    pub fn block_members(&self, block: u8) -> Vec<Vertex> {
        (0..self.order() as Vertex)
            .filter(|&v| self.block_of(v) == block)
            .collect()
    }

    /// Neighbors of `u` outside its block.
    pub fn out_neighbors(&self, u: Vertex) -> Vec<Vertex> {
        let b = self.block_of(u);
        self.graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.block_of(w) != b)
            .collect()
    }

    /// All edges between blocks `i` and `j`.
    pub fn cross_edges(&self, i: u8, j: u8) -> Result<CrossEdgeSet> {
        let n = self.n() as u8;
        if i == j {
            return Err(Error::invalid(format!(
                "cross edges need distinct blocks, got {i} twice"
            )));
        }
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::invalid(format!("blocks ({i}, {j}) outside 1..={n}")));
        }
        let mut edges = Vec::new();
        for a in 0..self.order() as Vertex {
            if self.block_of(a) != i {
                continue;
            }
            for &b in self.graph.neighbors(a) {
                if self.block_of(b) == j {
                    edges.push((a, b));
                }
            }
        }
        Ok(CrossEdgeSet { i, j, edges })
    }

    /// Total number of edges joining different blocks.
    pub fn cross_edge_count(&self) -> usize {
        self.graph
            .edges()
            .filter(|&(u, v)| self.block_of(u) != self.block_of(v))
            .count()
    }

    /// The transposition `(k l)` (1-based, `k < l`) carrying `u` to `v`, if
    /// the two permutations differ by exactly one swap.
    pub fn edge_label(&self, u: Vertex, v: Vertex) -> Option<(u8, u8)> {
        let (a, b) = (self.symbols(u), self.symbols(v));
        let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        match diff.as_slice() {
            &[i, j] if a[i] == b[j] && a[j] == b[i] => Some((i as u8 + 1, j as u8 + 1)),
            _ => None,
        }
    }

    pub fn common_neighbor_count(&self, u: Vertex, v: Vertex) -> Result<usize> {
        self.graph.common_neighbor_count(u, v)
    }

    /// Girth from the identity vertex; Cayley graphs are vertex-transitive.
    pub fn girth(&self) -> Result<usize> {
        self.graph.girth_single_source()
    }

    /// Girth over all BFS sources; cross-check for [`CayleyGraph::girth`].
    pub fn girth_checked(&self) -> Result<usize> {
        let fast = self.girth()?;
        let slow = self.graph.girth_all_sources()?;
        if fast != slow {
            return Err(Error::invalid(format!(
                "single-source girth {fast} disagrees with all-sources girth {slow}"
            )));
        }
        Ok(fast)
    }

    pub fn enumerate_4cycles(&self) -> Vec<[Vertex; 4]> {
        self.graph.four_cycles()
    }

    /// Copy with a replaced adjacency; the permutation labels and blocks are
    /// kept. Used to build corrupted fixtures.
    pub fn with_graph(&self, graph: Graph) -> Result<CayleyGraph> {
        if graph.order() != self.order() {
            return Err(Error::invalid(format!(
                "replacement graph has order {}, expected {}",
                graph.order(),
                self.order()
            )));
        }
        Ok(CayleyGraph {
            graph,
            ..self.clone()
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genset::build_generating_graph;

    fn mb(n: usize) -> CayleyGraph {
        build_cayley(&GeneratingGraph::cycle(n).unwrap()).unwrap()
    }

    fn ug(n: usize) -> CayleyGraph {
        build_cayley(&GeneratingGraph::cycle_with_tail(n, 4).unwrap()).unwrap()
    }

    #[test]
    fn order_size_degree() {
        let g = mb(4);
        assert_eq!((g.order(), g.graph().size()), (24, 48));
        assert_eq!(g.graph().regular_degree(), Some(4));
        let g = ug(5);
        assert_eq!((g.order(), g.graph().size()), (120, 300));
        assert_eq!(g.graph().regular_degree(), Some(5));
    }

    #[test]
    fn bubble_sort_3_is_a_hexagon() {
        let b3 = build_cayley(&GeneratingGraph::path(3).unwrap()).unwrap();
        assert_eq!(b3.order(), 6);
        assert_eq!(b3.graph().regular_degree(), Some(2));
        assert_eq!(b3.girth_checked().unwrap(), 6);
        // connected and 2-regular on 6 vertices: walk the cycle
        let mut prev = 0;
        let mut cur = b3.graph().neighbors(0)[0];
        let mut steps = 1;
        while cur != 0 {
            let next = *b3
                .graph()
                .neighbors(cur)
                .iter()
                .find(|&&w| w != prev)
                .unwrap();
            prev = cur;
            cur = next;
            steps += 1;
        }
        assert_eq!(steps, 6);
    }

    #[test]
    fn capacity_error_above_eight() {
        let g = GeneratingGraph::cycle(9).unwrap();
        assert!(matches!(build_cayley(&g), Err(Error::Capacity { .. })));
    }

    #[test]
    fn out_neighbor_examples() {
        let g = mb(4);
        let u = g.vertex("1234").unwrap();
        let mut outs: Vec<String> = g.out_neighbors(u).iter().map(|&v| g.label(v)).collect();
        outs.sort();
        assert_eq!(outs, vec!["1243", "4231"]);
        assert!((0..24).all(|v| g.out_neighbors(v).len() == 2));

        let h = ug(5);
        let u = h.vertex("12345").unwrap();
        let outs: Vec<String> = h.out_neighbors(u).iter().map(|&v| h.label(v)).collect();
        assert_eq!(outs, vec!["12354"]);
        assert!((0..120).all(|v| h.out_neighbors(v).len() == 1));
    }

    #[test]
    fn out_neighbor_map_is_an_involution_on_ug() {
        let h = ug(6);
        for u in 0..h.order() as Vertex {
            let w = h.out_neighbors(u)[0];
            assert_eq!(h.out_neighbors(w), vec![u]);
        }
    }

    #[test]
    fn cross_edge_counts() {
        let g = mb(4);
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    assert_eq!(g.cross_edges(i, j).unwrap().edges.len(), 4);
                }
            }
        }
        let h = ug(5);
        for i in 1..=5 {
            for j in 1..=5 {
                if i != j {
                    assert_eq!(h.cross_edges(i, j).unwrap().edges.len(), 6);
                }
            }
        }
        assert!(g.cross_edges(2, 2).is_err());
        assert!(g.cross_edges(0, 2).is_err());
    }

    #[test]
    fn cross_edges_use_generators_touching_the_peel() {
        for g in [mb(4), mb(5), ug(5), ug(6)] {
            let peel = g.peel().position;
            let mut total = 0;
            for i in 1..=g.n() as u8 {
                for j in i + 1..=g.n() as u8 {
                    let set = g.cross_edges(i, j).unwrap();
                    for &(a, b) in &set.edges {
                        let (k, l) = g.edge_label(a, b).unwrap();
                        assert!(k == peel || l == peel);
                    }
                    total += set.edges.len();
                }
            }
            // each vertex has |anchors| cross edges
            assert_eq!(total, g.order() * g.peel().anchors.len() / 2);
            assert_eq!(total, g.cross_edge_count());
        }
    }

    #[test]
    fn blocks_have_factorial_size_and_match_peeled_generator() {
        for g in [mb(4), mb(5), ug(5), ug(6)] {
            let sub = build_cayley(&g.generating_graph().peeled().unwrap()).unwrap();
            for b in 1..=g.n() as u8 {
                let members = g.block_members(b);
                assert_eq!(members.len(), factorial(g.n() - 1) as usize);
                let inner_edges: usize = members
                    .iter()
                    .map(|&v| {
                        g.graph()
                            .neighbors(v)
                            .iter()
                            .filter(|&&w| g.block_of(w) == b)
                            .count()
                    })
                    .sum::<usize>()
                    / 2;
                assert_eq!(inner_edges, sub.graph().size());
            }
        }
    }

    #[test]
    fn common_neighbors() {
        let g = mb(4);
        let (u, v) = (g.vertex("1234").unwrap(), g.vertex("2143").unwrap());
        assert_eq!(g.common_neighbor_count(u, v).unwrap(), 2);
        for (a, b) in g.graph().edges() {
            assert_eq!(g.common_neighbor_count(a, b).unwrap(), 0);
        }
        assert!(g.common_neighbor_count(u, u).is_err());
    }

    #[test]
    fn bipartite_by_parity() {
        for g in [mb(4), ug(5)] {
            for (a, b) in g.graph().edges() {
                assert_ne!(g.perm(a).parity(), g.perm(b).parity());
            }
            assert!(g.graph().two_coloring().is_some());
        }
    }

    #[test]
    fn girth_values() {
        assert_eq!(mb(4).girth_checked().unwrap(), 4);
        assert_eq!(ug(5).girth_checked().unwrap(), 4);
        let star4 = build_cayley(&GeneratingGraph::star(4).unwrap()).unwrap();
        assert_eq!(star4.girth_checked().unwrap(), 6);
    }

    #[test]
    fn four_cycle_example_and_labels() {
        let g = mb(4);
        let c: Vec<Vertex> = ["1234", "2134", "2143", "1243"]
            .iter()
            .map(|s| g.vertex(s).unwrap())
            .collect();
        let labels: Vec<_> = (0..4)
            .map(|i| g.edge_label(c[i], c[(i + 1) % 4]).unwrap())
            .collect();
        assert_eq!(labels, vec![(1, 2), (3, 4), (1, 2), (3, 4)]);
        let cycles = g.enumerate_4cycles();
        let mut sorted = c.clone();
        sorted.sort();
        assert!(cycles.iter().any(|q| {
            let mut s = q.to_vec();
            s.sort();
            s == sorted
        }));
    }

    #[test]
    fn relabeled_generator_gives_isomorphic_profile() {
        let g = build_generating_graph(5, &[(1, 2), (1, 3), (3, 4), (4, 5), (1, 5)]).unwrap();
        let (h, _) = g.relabel_to_canonical();
        let (cg, ch) = (build_cayley(&g).unwrap(), build_cayley(&h).unwrap());
        assert_eq!(cg.order(), ch.order());
        assert_eq!(cg.graph().size(), ch.graph().size());
        assert_eq!(cg.graph().regular_degree(), ch.graph().regular_degree());
        assert_eq!(cg.girth_checked().unwrap(), ch.girth_checked().unwrap());
        assert_eq!(cg.enumerate_4cycles().len(), ch.enumerate_4cycles().len());
    }
}
