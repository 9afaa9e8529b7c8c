//! Exhaustive minimum-cut search: sizes ascending, subsets lexicographic
//! within a size, the first witness found is reported.

use crate::cuts::mask::MaskGraph;
use crate::cuts::{CutKind, CutWitness, FaultSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, MASK_LIMIT};
use crate::subsets::{first_subset, with_workers};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub workers: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { workers: 1 }
    }
}

/// Smallest cut of `kind` with at most `max_size` vertices, lexicographically
/// least among those of minimum size. `None` means no such cut exists.
pub fn min_cut_exhaustive(
    g: &Graph,
    kind: CutKind,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<Option<CutWitness>> {
    let nbr = g.masks().ok_or(Error::Capacity {
        what: "exhaustive search graph order",
        requested: g.order(),
        limit: MASK_LIMIT,
    })?;
    let m = MaskGraph::new(nbr);
    let order = g.order();
    let found = with_workers(opts.workers, || {
        (0..=max_size.min(order))
            .find_map(|k| first_subset(order, k, |_, mask| kind.holds_mask(&m, mask)))
    })?;
    Ok(found.map(|members| CutWitness::new(g, FaultSet::from_sorted(members), kind)))
}

pub fn min_cyclic_cut_exhaustive(
    g: &Graph,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<Option<CutWitness>> {
    min_cut_exhaustive(g, CutKind::Cyclic, max_size, opts)
}

pub fn min_good_neighbor_cut_exhaustive(
    g: &Graph,
    min_neighbors: u32,
    max_size: usize,
    opts: &SearchOptions,
) -> Result<Option<CutWitness>> {
    min_cut_exhaustive(g, CutKind::GoodNeighbor(min_neighbors), max_size, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::{vertex_connectivity, ConnectivityMode};

    #[test]
    fn cycle_has_no_cyclic_cut() {
        let c4 = Graph::cycle(4);
        assert!(min_cyclic_cut_exhaustive(&c4, 4, &SearchOptions::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn vertex_cut_search_matches_flow() {
        for g in [Graph::cycle(7), Graph::hypercube(3), Graph::hypercube(4)] {
            let w = min_cut_exhaustive(&g, CutKind::Vertex, 6, &SearchOptions::default())
                .unwrap()
                .unwrap();
            let k = vertex_connectivity(&g, ConnectivityMode::AllPairs).unwrap();
            assert_eq!(w.size(), k.value);
            assert!(w.verify(&g));
        }
    }

    #[test]
    fn two_disjoint_squares_joined_by_a_path() {
        // squares 0-1-2-3 and 4-5-6-7, joined by 2-8-4
        let g = Graph::from_edges(
            9,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 0),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 4),
                (2, 8),
                (8, 4),
            ],
        )
        .unwrap();
        let w = min_cyclic_cut_exhaustive(&g, 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        // removing 2 leaves the path 0-1-3 acyclic, so 8 is the least witness
        assert_eq!(w.fault_set.members(), &[8]);
        let w2 = min_cut_exhaustive(&g, CutKind::GoodNeighbor(2), 3, &SearchOptions::default())
            .unwrap()
            .unwrap();
        assert_eq!(w2.fault_set.members(), &[8]);
    }

    #[test]
    fn large_graphs_are_refused() {
        let g = Graph::cycle(200);
        assert!(matches!(
            min_cyclic_cut_exhaustive(&g, 2, &SearchOptions::default()),
            Err(Error::Capacity { .. })
        ));
    }
}
