//! Vertex connectivity through unit-capacity max-flow on the split graph:
//! vertex `v` becomes `v_in -> v_out` with capacity 1, and every edge `uv`
//! becomes `u_out -> v_in` and `v_out -> u_in`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::Result;
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityMode {
    /// Fix the source at vertex 0 and scan every non-neighbor as target.
    /// Exact for vertex-transitive graphs.
    FixedSource,
    /// Scan every non-adjacent pair.
    AllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub value: usize,
    /// A minimum vertex cut separating `source` and `target`; empty for
    /// complete or disconnected graphs.
    pub cut: Vec<Vertex>,
    pub source: Vertex,
    pub target: Vertex,
    /// The graph is complete and `value` is `order - 1` by convention.
    pub complete: bool,
}

struct SplitNetwork {
    head: Vec<usize>,
    next: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    base: Vec<u8>,
}

const NONE: usize = usize::MAX;
const EDGE_CAP: u8 = 100;

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut net = SplitNetwork {
            head: vec![NONE; 2 * n],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
            base: Vec::new(),
        };
        for v in 0..n {
            net.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            let (u, v) = (u as usize, v as usize);
            // edge arcs are uncapacitated so every minimum cut is a vertex cut
            net.arc(2 * u + 1, 2 * v, EDGE_CAP);
            net.arc(2 * v + 1, 2 * u, EDGE_CAP);
        }
        net.base = net.cap.clone();
        net
    }

    fn arc(&mut self, a: usize, b: usize, c: u8) {
        for (x, y, cap) in [(a, b, c), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(cap);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    fn reset(&mut self) {
        self.cap.copy_from_slice(&self.base);
    }

    /// Augments from `s_out` to `t_in` until `limit` units flow or no path
    /// remains.
    fn max_flow(&mut self, s: Vertex, t: Vertex, limit: usize) -> usize {
        let (src, sink) = (2 * s as usize + 1, 2 * t as usize);
        let nodes = self.head.len();
        let mut pred = vec![NONE; nodes];
        let mut flow = 0;
        while flow < limit {
            pred.iter_mut().for_each(|p| *p = NONE);
            let mut queue = VecDeque::from([src]);
            pred[src] = NONE - 1;
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                let mut e = self.head[x];
                while e != NONE {
                    let y = self.to[e];
                    if self.cap[e] > 0 && pred[y] == NONE {
                        pred[y] = e;
                        queue.push_back(y);
                    }
                    e = self.next[e];
                }
            }
            if pred[sink] == NONE {
                break;
            }
            let mut y = sink;
            while y != src {
                let e = pred[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// After a maximum flow from `s`: vertices whose split arc crosses the
    /// residual reachability frontier.
    fn min_cut(&self, s: Vertex) -> Vec<Vertex> {
        let src = 2 * s as usize + 1;
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != NONE {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        (0..self.head.len() / 2)
            .filter(|&v| seen[2 * v] && !seen[2 * v + 1])
            .map(|v| v as Vertex)
            .collect()
    }
}

/// `kappa(G)`: the minimum number of internally vertex-disjoint paths over
/// non-adjacent pairs, with a witness cut.
pub fn vertex_connectivity(g: &Graph, mode: ConnectivityMode) -> Result<Connectivity> {
    let n = g.order();
    if g.is_complete() {
        return Ok(Connectivity {
            value: n.saturating_sub(1),
            cut: Vec::new(),
            source: 0,
            target: 0,
            complete: true,
        });
    }
    let mut net = SplitNetwork::new(g);
    let sources: Vec<Vertex> = match mode {
        ConnectivityMode::FixedSource => vec![0],
        ConnectivityMode::AllPairs => (0..n as Vertex).collect(),
    };
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    for &s in &sources {
        for t in 0..n as Vertex {
            if t == s || g.has_edge(s, t) || (mode == ConnectivityMode::AllPairs && t < s) {
                continue;
            }
            let limit = best.map_or(usize::MAX, |b| b.0);
            net.reset();
            let f = net.max_flow(s, t, limit);
            if best.is_none_or(|b| f < b.0) {
                best = Some((f, s, t));
            }
        }
    }
    let (value, source, target) = best.expect("a non-complete graph has a non-adjacent pair");
    net.reset();
    net.max_flow(source, target, usize::MAX);
    let cut = net.min_cut(source);
    debug_assert_eq!(cut.len(), value);
    Ok(Connectivity {
        value,
        cut,
        source,
        target,
        complete: false,
    })
}
