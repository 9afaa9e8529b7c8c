//! Fault sets, component analysis of `G - F`, and the cut predicates built
//! on it: vertex cuts, `g`-good-neighbor cuts and cyclic cuts.
//!
//! Graphs of order at most 128 are analysed on `u128` masks; larger graphs
//! fall back to an iterative breadth-first labelling.

pub(crate) mod mask;

mod flow;
mod random;
mod search;

use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use mask::MaskGraph;

pub use flow::{vertex_connectivity, Connectivity, ConnectivityMode};
pub use random::{randomized_cut_falsifier, randomized_cut_search, RandomSearch};
pub use search::{
    min_cut_exhaustive, min_cyclic_cut_exhaustive, min_good_neighbor_cut_exhaustive, SearchOptions,
};

/// Components up to this size carry their member list in a [`CutAnalysis`].
pub const SMALL_COMPONENT_LIMIT: usize = 32;

/// A set of faulty vertices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct FaultSet {
    members: Vec<Vertex>,
}

impl FaultSet {
    pub fn new(mut members: Vec<Vertex>, order: usize) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("fault set lists a vertex twice"));
        }
        if let Some(&v) = members.last().filter(|&&v| v as usize >= order) {
            return Err(Error::invalid(format!(
                "fault vertex {v} outside 0..{order}"
            )));
        }
        Ok(Self { members })
    }

    pub(crate) fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub(crate) fn mask(&self) -> u128 {
        mask::to_mask(&self.members)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentInfo {
    pub vertices: usize,
    pub edges: usize,
    pub contains_cycle: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Vertex>>,
}

/// Component profile of `G - F`. Components are listed in order of their
/// smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutAnalysis {
    pub component_count: usize,
    pub components: Vec<ComponentInfo>,
    /// First component of maximum size.
    pub largest_index: Option<usize>,
    /// Smallest number of surviving neighbors over all survivors.
    pub min_surviving_degree: Option<usize>,
}

impl CutAnalysis {
    pub fn is_disconnected(&self) -> bool {
        self.component_count >= 2
    }

    pub fn cyclic_components(&self) -> usize {
        self.components.iter().filter(|c| c.contains_cycle).count()
    }

    pub fn largest(&self) -> usize {
        self.largest_index
            .map_or(0, |i| self.components[i].vertices)
    }

    pub fn survivors(&self) -> usize {
        self.components.iter().map(|c| c.vertices).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CutKind {
    Vertex,
    GoodNeighbor(u32),
    Cyclic,
}

impl CutKind {
    pub fn holds(self, g: &Graph, f: &FaultSet) -> bool {
        match self {
            CutKind::Vertex => is_vertex_cut(g, f),
            CutKind::GoodNeighbor(k) => is_good_neighbor_cut(g, f, k),
            CutKind::Cyclic => is_cyclic_cut(g, f),
        }
    }

    pub(crate) fn holds_mask(self, m: &MaskGraph<'_>, fault: u128) -> bool {
        match self {
            CutKind::Vertex => m.is_disconnected(fault),
            CutKind::GoodNeighbor(k) => m.is_good_neighbor_cut(fault, k),
            CutKind::Cyclic => m.is_cyclic_cut(fault),
        }
    }
}

impl fmt::Display for CutKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutKind::Vertex => f.write_str("vertex-cut"),
            CutKind::GoodNeighbor(g) => write!(f, "good-neighbor-cut({g})"),
            CutKind::Cyclic => f.write_str("cyclic-cut"),
        }
    }
}

impl Serialize for CutKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutWitness {
    pub fault_set: FaultSet,
    pub kind: CutKind,
    pub analysis: CutAnalysis,
}

impl CutWitness {
    pub fn new(g: &Graph, fault_set: FaultSet, kind: CutKind) -> Self {
        let analysis = components(g, &fault_set);
        Self {
            fault_set,
            kind,
            analysis,
        }
    }

    pub fn size(&self) -> usize {
        self.fault_set.len()
    }

    /// Re-checks the predicate against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        self.kind.holds(g, &self.fault_set)
    }
}

/// Component profile of `G - F`.
pub fn components(g: &Graph, f: &FaultSet) -> CutAnalysis {
    match g.masks() {
        Some(nbr) => components_masked(&MaskGraph::new(nbr), f.mask()),
        None => components_general(g, f),
    }
}

fn components_masked(m: &MaskGraph<'_>, fault: u128) -> CutAnalysis {
    let comps = m.components(fault);
    let components: Vec<ComponentInfo> = comps
        .iter()
        .map(|&c| {
            let vertices = c.count_ones() as usize;
            let edges = m.edges_within(c) as usize;
            ComponentInfo {
                vertices,
                edges,
                contains_cycle: edges >= vertices,
                members: (vertices <= SMALL_COMPONENT_LIMIT).then(|| mask::from_mask(c)),
            }
        })
        .collect();
    finish(
        components,
        m.min_surviving_degree(fault).map(|d| d as usize),
    )
}

fn components_general(g: &Graph, f: &FaultSet) -> CutAnalysis {
    let n = g.order();
    const FAULT: u32 = u32::MAX - 1;
    const UNSEEN: u32 = u32::MAX;
    let mut label = vec![UNSEEN; n];
    for &v in f.members() {
        label[v as usize] = FAULT;
    }
    let mut components = Vec::new();
    let mut queue = VecDeque::new();
    let mut min_deg: Option<usize> = None;
    for s in 0..n {
        if label[s] != UNSEEN {
            continue;
        }
        let id = components.len() as u32;
        label[s] = id;
        queue.push_back(s as Vertex);
        let mut members = Vec::new();
        let mut degree_sum = 0;
        while let Some(x) = queue.pop_front() {
            members.push(x);
            let mut d = 0;
            for &y in g.neighbors(x) {
                let l = label[y as usize];
                if l == FAULT {
                    continue;
                }
                d += 1;
                if l == UNSEEN {
                    label[y as usize] = id;
                    queue.push_back(y);
                }
            }
            degree_sum += d;
            min_deg = Some(min_deg.map_or(d, |m| m.min(d)));
        }
        members.sort_unstable();
        let vertices = members.len();
        let edges = degree_sum / 2;
        components.push(ComponentInfo {
            vertices,
            edges,
            contains_cycle: edges >= vertices,
            members: (vertices <= SMALL_COMPONENT_LIMIT).then_some(members),
        });
    }
    finish(components, min_deg)
}

fn finish(components: Vec<ComponentInfo>, min_surviving_degree: Option<usize>) -> CutAnalysis {
    let mut largest_index = None;
    for (i, c) in components.iter().enumerate() {
        if largest_index.is_none_or(|j: usize| c.vertices > components[j].vertices) {
            largest_index = Some(i);
        }
    }
    CutAnalysis {
        component_count: components.len(),
        components,
        largest_index,
        min_surviving_degree,
    }
}

pub fn is_vertex_cut(g: &Graph, f: &FaultSet) -> bool {
    match g.masks() {
        Some(nbr) => MaskGraph::new(nbr).is_disconnected(f.mask()),
        None => components_general(g, f).is_disconnected(),
    }
}

/// `G - F` is disconnected and every survivor keeps at least `min_neighbors`
/// surviving neighbors (both sides of the cut are checked).
pub fn is_good_neighbor_cut(g: &Graph, f: &FaultSet, min_neighbors: u32) -> bool {
    match g.masks() {
        Some(nbr) => MaskGraph::new(nbr).is_good_neighbor_cut(f.mask(), min_neighbors),
        None => {
            let a = components_general(g, f);
            a.is_disconnected() && a.min_surviving_degree.unwrap_or(0) >= min_neighbors as usize
        }
    }
}

/// `G - F` is disconnected and at least two components contain a cycle.
pub fn is_cyclic_cut(g: &Graph, f: &FaultSet) -> bool {
    match g.masks() {
        Some(nbr) => MaskGraph::new(nbr).is_cyclic_cut(f.mask()),
        None => components_general(g, f).cyclic_components() >= 2,
    }
}

/// `(size of a largest component, survivors outside it)`.
pub fn large_component_profile(g: &Graph, f: &FaultSet) -> (usize, usize) {
    match g.masks() {
        Some(nbr) => {
            let (a, b) = MaskGraph::new(nbr).residual(f.mask());
            (a as usize, b as usize)
        }
        None => {
            let a = components_general(g, f);
            (a.largest(), a.survivors() - a.largest())
        }
    }
}

/// `N(S) \ S` for a vertex set `S`.
pub fn neighborhood(g: &Graph, set: &[Vertex]) -> Vec<Vertex> {
    if let Some(nbr) = g.masks() {
        return mask::from_mask(MaskGraph::new(nbr).neighborhood(mask::to_mask(set)));
    }
    let mut out: Vec<Vertex> = set
        .iter()
        .flat_map(|&v| g.neighbors(v).iter().copied())
        .collect();
    out.sort_unstable();
    out.dedup();
    let mut inside = set.to_vec();
    inside.sort_unstable();
    out.retain(|v| inside.binary_search(v).is_err());
    out
}

/// Checks that `cycle` lists four distinct vertices forming a 4-cycle in order.
pub fn is_four_cycle(g: &Graph, cycle: &[Vertex; 4]) -> bool {
    let mut sorted = *cycle;
    sorted.sort_unstable();
    sorted.windows(2).all(|w| w[0] != w[1])
        && cycle.iter().all(|&v| (v as usize) < g.order())
        && (0..4).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % 4]))
}

/// `F = N(V(C)) \ V(C)` for a 4-cycle `C`.
pub fn build_cycle_neighborhood_cut(g: &Graph, cycle: &[Vertex; 4]) -> Result<FaultSet> {
    if !is_four_cycle(g, cycle) {
        return Err(Error::invalid(format!("{cycle:?} is not a 4-cycle")));
    }
    Ok(FaultSet::from_sorted(neighborhood(g, cycle)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;
    use crate::genset::GeneratingGraph;

    fn mb4() -> Graph {
        build_cayley(&GeneratingGraph::cycle(4).unwrap())
            .unwrap()
            .graph()
            .clone()
    }

    fn fs(g: &Graph, v: Vec<Vertex>) -> FaultSet {
        FaultSet::new(v, g.order()).unwrap()
    }

    #[test]
    fn fault_set_validation() {
        assert!(FaultSet::new(vec![1, 1], 4).is_err());
        assert!(FaultSet::new(vec![4], 4).is_err());
        assert_eq!(FaultSet::new(vec![3, 1], 4).unwrap().members(), &[1, 3]);
    }

    #[test]
    fn empty_fault_on_mb4() {
        let g = mb4();
        let a = components(&g, &FaultSet::empty());
        assert_eq!(a.component_count, 1);
        assert_eq!(a.components[0].vertices, 24);
        assert!(a.components[0].contains_cycle);
        assert!(!is_cyclic_cut(&g, &FaultSet::empty()));
        assert!(!is_vertex_cut(&g, &FaultSet::empty()));
        assert_eq!(large_component_profile(&g, &FaultSet::empty()), (24, 0));
    }

    #[test]
    fn isolating_a_vertex() {
        let g = mb4();
        for v in 0..24 {
            let f = fs(&g, g.neighbors(v).to_vec());
            let a = components(&g, &f);
            assert_eq!(a.component_count, 2);
            assert!(a
                .components
                .iter()
                .any(|c| c.vertices == 1 && c.members == Some(vec![v])));
            assert!(is_vertex_cut(&g, &f));
            assert!(!is_cyclic_cut(&g, &f));
            assert!(!is_good_neighbor_cut(&g, &f, 1));
            assert!(is_good_neighbor_cut(&g, &f, 0));
            assert_eq!(large_component_profile(&g, &f), (19, 1));
        }
    }

    #[test]
    fn four_cycle_neighborhood_cut_on_mb4() {
        let g = mb4();
        for c in g.four_cycles() {
            let f = build_cycle_neighborhood_cut(&g, &c).unwrap();
            assert_eq!(f.len(), 8);
            let a = components(&g, &f);
            assert!(a.component_count >= 2);
            assert!(a.cyclic_components() >= 2);
            assert!(is_cyclic_cut(&g, &f));
            assert!(is_good_neighbor_cut(&g, &f, 2));
            // MB4 is 4-regular: the 16 survivors split into four 4-cycles
            assert_eq!(a.component_count, 4);
            assert_eq!(large_component_profile(&g, &f), (4, 12));
        }
        assert!(build_cycle_neighborhood_cut(&g, &[0, 1, 2, 3]).is_err());
    }

    #[test]
    fn mask_and_general_paths_agree() {
        // the same graph analysed through both engines
        let g = mb4();
        let f = fs(&g, vec![1, 5, 7, 12, 13, 20]);
        let a = components(&g, &f);
        let b = components_general(&g, &f);
        assert_eq!(a, b);
    }

    #[test]
    fn cycle_graph_has_no_cyclic_cut() {
        let c4 = Graph::cycle(4);
        for m in 0u32..16 {
            let members: Vec<Vertex> = (0..4).filter(|b| m & (1 << b) != 0).collect();
            assert!(!is_cyclic_cut(&c4, &fs(&c4, members)));
        }
    }
}
