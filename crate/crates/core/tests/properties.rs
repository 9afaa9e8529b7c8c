//! Property tests for the structural invariants, each against a small
//! brute-force model written here.

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use symcay_core::cuts::{
    components, is_cyclic_cut, is_good_neighbor_cut, is_vertex_cut, min_cyclic_cut_exhaustive,
    randomized_cut_falsifier, vertex_connectivity, ConnectivityMode, SearchOptions,
};
use symcay_core::{
    build_cayley, build_generating_graph, CayleyGraph, FaultSet, GenClass, GeneratingGraph, Graph,
    Vertex,
};

/// A random tree on `1..=n` as parent links, plus an optional extra edge.
fn tree_pairs(n: usize, parents: &[usize]) -> Vec<(u8, u8)> {
    (2..=n)
        .map(|i| ((parents[i - 2] % (i - 1)) as u8 + 1, i as u8))
        .collect()
}

fn distances(n: usize, pairs: &[(u8, u8)]) -> Vec<Vec<usize>> {
    let mut d = vec![vec![usize::MAX / 4; n + 1]; n + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in pairs {
        d[a as usize][b as usize] = 1;
        d[b as usize][a as usize] = 1;
    }
    for k in 1..=n {
        for i in 1..=n {
            for j in 1..=n {
                d[i][j] = d[i][j].min(d[i][k] + d[k][j]);
            }
        }
    }
    d
}

/// Trees and, when a far enough pair exists, unicyclic triangle-free graphs.
fn generating_graph() -> impl Strategy<Value = (usize, Vec<(u8, u8)>)> {
    (
        3usize..=6,
        prop::collection::vec(any::<usize>(), 5),
        any::<usize>(),
        any::<bool>(),
    )
        .prop_map(|(n, parents, pick, close)| {
            let mut pairs = tree_pairs(n, &parents);
            if close {
                let d = distances(n, &pairs);
                let far: Vec<(u8, u8)> = (1..=n)
                    .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
                    .filter(|&(a, b)| d[a][b] >= 3)
                    .map(|(a, b)| (a as u8, b as u8))
                    .collect();
                if !far.is_empty() {
                    pairs.push(far[pick % far.len()]);
                }
            }
            (n, pairs)
        })
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn parity(s: &[u8]) -> usize {
    let mut inv = 0;
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            inv += usize::from(s[i] > s[j]);
        }
    }
    inv % 2
}

/// Oracle adjacency from label strings: swap two characters, look the result up.
fn label_neighbors(g: &CayleyGraph, v: Vertex) -> BTreeSet<Vertex> {
    let index: HashMap<String, Vertex> =
        (0..g.order() as Vertex).map(|u| (g.label(u), u)).collect();
    let label: Vec<char> = g.label(v).chars().collect();
    g.generating_graph()
        .edges()
        .iter()
        .map(|&(k, l)| {
            let mut s = label.clone();
            s.swap(k as usize - 1, l as usize - 1);
            index[&s.iter().collect::<String>()]
        })
        .collect()
}

/// Does the component of `start` in `g - fault` contain a cycle? DFS back-edge search.
fn has_back_edge(g: &Graph, fault: &BTreeSet<Vertex>, start: Vertex) -> bool {
    let mut parent = HashMap::new();
    parent.insert(start, None);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if fault.contains(&w) || parent[&v] == Some(w) {
                continue;
            }
            if parent.contains_key(&w) {
                return true;
            }
            parent.insert(w, Some(v));
            stack.push(w);
        }
    }
    false
}

fn mb(n: usize) -> CayleyGraph {
    build_cayley(&GeneratingGraph::cycle(n).unwrap()).unwrap()
}

fn ug5() -> CayleyGraph {
    build_cayley(&GeneratingGraph::cycle_with_tail(5, 4).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generating_graph_classification((n, pairs) in generating_graph()) {
        let gen = build_generating_graph(n, &pairs).unwrap();
        let class = gen.class();
        prop_assert_eq!(gen.edges().len(), pairs.len());
        if pairs.len() == n - 1 {
            prop_assert!(class.is_tree());
        } else {
            prop_assert!(matches!(class, GenClass::Cycle | GenClass::UnicyclicTriangleFree));
            let peel = gen.choose_peel();
            if class == GenClass::Cycle {
                prop_assert_eq!(peel.anchors.len(), 2);
            } else {
                prop_assert_eq!(gen.degree(peel.position), 1);
                prop_assert_eq!(peel.anchors.len(), 1);
                let rest = gen.peeled().unwrap();
                prop_assert!(rest.class().is_unicyclic());
            }
        }
    }

    #[test]
    fn triangles_are_rejected(n in 3usize..=6, a in 1u8..=6, b in 1u8..=6, c in 1u8..=6) {
        prop_assume!(a != b && b != c && a != c && (a.max(b).max(c) as usize) <= n);
        let mut pairs = vec![(a, b), (b, c), (a, c)];
        let rest: Vec<u8> = (1..=n as u8).filter(|x| ![a, b, c].contains(x)).collect();
        let mut prev = a;
        for &x in &rest {
            pairs.push((prev, x));
            prev = x;
        }
        prop_assert!(build_generating_graph(n, &pairs).is_err());
    }

    #[test]
    fn cayley_graph_invariants((n, pairs) in generating_graph()) {
        let gen = build_generating_graph(n, &pairs).unwrap();
        let g = build_cayley(&gen).unwrap();
        let t = pairs.len();
        prop_assert_eq!(g.order(), factorial(n));
        prop_assert_eq!(g.graph().regular_degree(), Some(t));
        prop_assert_eq!(g.graph().size(), t * factorial(n) / 2);

        for v in 0..g.order() as Vertex {
            let lib: BTreeSet<Vertex> = g.graph().neighbors(v).iter().copied().collect();
            prop_assert_eq!(&lib, &label_neighbors(&g, v));
            prop_assert!(!lib.contains(&v));
        }
        for (u, v) in g.graph().edges() {
            prop_assert_ne!(parity(g.symbols(u)), parity(g.symbols(v)));
            prop_assert!(g.graph().has_edge(v, u));
        }

        let peel = g.peel().position;
        for block in 1..=n as u8 {
            prop_assert_eq!(g.block_members(block).len(), factorial(n - 1));
        }
        for i in 1..=n as u8 {
            for j in i + 1..=n as u8 {
                for (a, b) in g.cross_edges(i, j).unwrap().edges {
                    let (k, l) = g.edge_label(a, b).unwrap();
                    prop_assert!(k == peel || l == peel);
                }
            }
        }
        if !gen.is_cycle() {
            for u in 0..g.order() as Vertex {
                let outs = g.out_neighbors(u);
                prop_assert_eq!(outs.len(), 1);
                prop_assert_eq!(g.out_neighbors(outs[0]), vec![u]);
            }
        }
    }

    #[test]
    fn cut_analysis_matches_dfs(which in 0usize..2, raw in prop::collection::btree_set(0u32..120, 0..14)) {
        let g = if which == 0 { mb(4) } else { ug5() };
        let graph = g.graph();
        let fault: BTreeSet<Vertex> = raw.into_iter().filter(|&v| (v as usize) < g.order()).collect();
        let f = FaultSet::new(fault.iter().copied().collect(), g.order()).unwrap();
        let a = components(graph, &f);
        prop_assert_eq!(a.survivors(), g.order() - fault.len());
        prop_assert_eq!(a.component_count, a.components.len());
        for c in &a.components {
            prop_assert_eq!(c.contains_cycle, c.edges >= c.vertices);
            if let Some(members) = &c.members {
                prop_assert_eq!(has_back_edge(graph, &fault, members[0]), c.contains_cycle);
            }
        }
        if is_cyclic_cut(graph, &f) {
            prop_assert!(is_vertex_cut(graph, &f));
        }
        if is_good_neighbor_cut(graph, &f, 2) && a.component_count >= 2 {
            prop_assert!(is_cyclic_cut(graph, &f));
        }
    }

    #[test]
    fn falsifier_agrees_with_exhaustive_search(seed in any::<u64>()) {
        // MB4 has no cyclic cut of size 7, so sampling must not find one
        let g = mb(4);
        prop_assert!(randomized_cut_falsifier(g.graph(), 7, 2_000, seed, 1).unwrap().is_none());
    }

    #[test]
    fn flow_connectivity_matches_brute_force(
        n in 4usize..=9,
        edges in prop::collection::btree_set((0u32..9, 0u32..9), 4..24),
    ) {
        let edges: Vec<(u32, u32)> = edges
            .into_iter()
            .filter(|&(a, b)| a < b && (b as usize) < n)
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        prop_assume!(!g.is_complete());
        let k = vertex_connectivity(&g, ConnectivityMode::AllPairs).unwrap();
        let mut brute = n;
        for mask in 0u32..1 << n {
            let size = mask.count_ones() as usize;
            if size >= brute {
                continue;
            }
            let alive: Vec<u32> = (0..n as u32).filter(|v| mask >> v & 1 == 0).collect();
            let mut seen = vec![alive[0]];
            let mut stack = vec![alive[0]];
            while let Some(v) = stack.pop() {
                for &w in g.neighbors(v) {
                    if mask >> w & 1 == 0 && !seen.contains(&w) {
                        seen.push(w);
                        stack.push(w);
                    }
                }
            }
            if seen.len() < alive.len() {
                brute = size;
            }
        }
        prop_assert_eq!(k.value, brute);
    }
}

#[test]
fn witness_is_minimal() {
    let g = mb(4);
    let opts = SearchOptions { workers: 2 };
    let w = min_cyclic_cut_exhaustive(g.graph(), 8, &opts)
        .unwrap()
        .unwrap();
    assert!(w.verify(g.graph()));
    assert!(min_cyclic_cut_exhaustive(g.graph(), w.size() - 1, &opts)
        .unwrap()
        .is_none());
}

#[test]
fn parity_classes_split_evenly() {
    for n in 2..=6 {
        let g = build_cayley(&GeneratingGraph::path(n).unwrap()).unwrap();
        let odd = (0..g.order() as Vertex)
            .filter(|&v| parity(g.symbols(v)) == 1)
            .count();
        assert_eq!(odd, factorial(n) / 2);
    }
}
