//! Checks that scan vertices, pairs, edges or 4-cycles once.

use std::collections::HashMap;

use rayon::prelude::*;

use super::{Ctx, Family, Outcome, Part, Witness};
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::perm::factorial;
use crate::subsets::binomial;

/// Vertices at distance two from `u` with their common-neighbor counts,
/// sorted by vertex. Adjacent vertices also show up when they have common
/// neighbors (graphs with triangles).
fn two_hop(g: &Graph, u: Vertex) -> Vec<(Vertex, u32)> {
    let mut all: Vec<Vertex> = g
        .neighbors(u)
        .iter()
        .flat_map(|&x| g.neighbors(x).iter().copied())
        .filter(|&w| w != u)
        .collect();
    all.sort_unstable();
    let mut out: Vec<(Vertex, u32)> = Vec::new();
    for w in all {
        match out.last_mut() {
            Some((v, c)) if *v == w => *c += 1,
            _ => out.push((w, 1)),
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnProfile {
    pub max: usize,
    pub pairs_at_max: u64,
    /// Unordered pairs with at least one common neighbor.
    pub pairs_with_common: u64,
    /// Least pair `(u, w)`, `u < w`, attaining `max`.
    pub first_at_max: Option<(Vertex, Vertex)>,
    /// Least pair exceeding the bound, with its count.
    pub first_above: Option<(Vertex, Vertex, usize)>,
}

impl CnProfile {
    fn merge(mut self, b: CnProfile) -> CnProfile {
        if b.max > self.max {
            self.max = b.max;
            self.pairs_at_max = b.pairs_at_max;
            self.first_at_max = b.first_at_max;
        } else if b.max == self.max {
            self.pairs_at_max += b.pairs_at_max;
            self.first_at_max = self.first_at_max.or(b.first_at_max);
        }
        self.pairs_with_common += b.pairs_with_common;
        self.first_above = self.first_above.or(b.first_above);
        self
    }
}

/// Common-neighbor census over all unordered pairs.
pub fn cn_profile(g: &Graph, bound: usize) -> CnProfile {
    let per_vertex: Vec<CnProfile> = (0..g.order() as Vertex)
        .into_par_iter()
        .map(|u| {
            let mut p = CnProfile::default();
            for (w, c) in two_hop(g, u).into_iter().filter(|&(w, _)| w > u) {
                let c = c as usize;
                p.pairs_with_common += 1;
                if c > p.max {
                    p.max = c;
                    p.pairs_at_max = 0;
                    p.first_at_max = Some((u, w));
                }
                if c == p.max {
                    p.pairs_at_max += 1;
                }
                if c > bound && p.first_above.is_none() {
                    p.first_above = Some((u, w, c));
                }
            }
            p
        })
        .collect();
    per_vertex
        .into_iter()
        .fold(CnProfile::default(), CnProfile::merge)
}

/// First `(p, q, s)` with `pq` an edge, `s` a third vertex and both
/// `cn(s, p) > 0` and `cn(s, q) > 0`.
pub fn edge_cn_exclusion_violation(g: &Graph) -> Option<(Vertex, Vertex, Vertex)> {
    (0..g.order() as Vertex)
        .into_par_iter()
        .find_map_first(|p| {
            let a = two_hop(g, p);
            for &q in g.neighbors(p).iter().filter(|&&q| q > p) {
                let b = two_hop(g, q);
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    let (x, y) = (a[i].0, b[j].0);
                    if x < y {
                        i += 1;
                    } else if y < x {
                        j += 1;
                    } else {
                        if x != p && x != q {
                            return Some((p, q, x));
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
            None
        })
}

type Triple = (Vertex, Vertex, Vertex);

/// Searches for `u, v, w` with `cn(u, v) = 2`, `cn(v, w) = 2` and
/// `cn(u, w) >= 1`. Returns the number of `(u, w)` pairs examined and the
/// first violation, ordered by middle vertex `v` and then `(u, w)`.
pub fn cn_triple_violation(g: &Graph) -> (u64, Option<Triple>) {
    let per_vertex: Vec<(u64, Option<Triple>)> = (0..g.order() as Vertex)
        .into_par_iter()
        .map(|v| {
            let partners: Vec<Vertex> = two_hop(g, v)
                .into_iter()
                .filter(|&(_, c)| c == 2)
                .map(|(x, _)| x)
                .collect();
            let k = partners.len() as u64;
            let examined = k * k.saturating_sub(1) / 2;
            for (i, &u) in partners.iter().enumerate() {
                for &w in &partners[i + 1..] {
                    if g.cn_unchecked(u, w) >= 1 {
                        return (examined, Some((u, v, w)));
                    }
                }
            }
            (examined, None)
        })
        .collect();
    per_vertex
        .into_iter()
        .fold((0, None), |(n, first), (m, x)| (n + m, first.or(x)))
}

pub(super) fn cn_bound(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    let p = cn_profile(g.graph(), 2);
    let total = binomial(g.order(), 2);
    let mut part = Part::exhaustive(
        "pairs",
        format!("all {total} vertex pairs (pairs without a common neighbor are counted as 0)"),
    )
    .metric("max_cn", p.max)
    .metric("pairs_at_max", p.pairs_at_max)
    .metric("pairs_with_common_neighbor", p.pairs_with_common);
    if let Some((u, w)) = p.first_at_max {
        part = part.witness(Witness::new(
            g,
            format!("least pair with cn = {}", p.max),
            &[u, w],
        ));
    }
    let part = part.fail_if(
        p.first_above
            .map(|(u, w, c)| Witness::new(g, format!("pair with cn = {c} > 2"), &[u, w])),
    );
    Ok(if ctx.is_ug() {
        Outcome::gating(vec![part])
    } else {
        Outcome::exploratory(
            vec![part],
            "the bound is claimed for unicyclic triangle-free generators, n >= 4",
        )
    })
}

pub(super) fn cross_edges(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    let n = ctx.n();
    if ctx.family == Family::Other || n < 2 {
        return Ok(Outcome::Skipped(
            "block decomposition is defined for tree, cycle and unicyclic generators".into(),
        ));
    }
    let peel = g.peel();
    let expected = peel.anchors.len() as u64 * factorial(n - 2);
    let mut counts = vec![vec![0u64; n + 1]; n + 1];
    let mut stray = None;
    for (u, v) in g.graph().edges() {
        let (a, b) = (g.block_of(u) as usize, g.block_of(v) as usize);
        if a == b {
            continue;
        }
        counts[a.min(b)][a.max(b)] += 1;
        let touches = g
            .edge_label(u, v)
            .is_some_and(|(k, l)| k == peel.position || l == peel.position);
        if !touches && stray.is_none() {
            stray = Some((u, v));
        }
    }
    let mut bad = None;
    'outer: for (i, row) in counts.iter().enumerate().skip(1) {
        for (j, &c) in row.iter().enumerate().skip(i + 1) {
            if c != expected {
                bad = Some((i, j, c));
                break 'outer;
            }
        }
    }
    let total: u64 = counts.iter().flatten().sum();
    let counts_part = Part::exhaustive(
        "pair-counts",
        format!("all {} block pairs", n * (n - 1) / 2),
    )
    .metric("expected_per_pair", expected)
    .metric("cross_edges", total)
    .fail_if(bad.map(|(i, j, c)| {
        let set = g.cross_edges(i as u8, j as u8).expect("blocks in range");
        let ends: Vec<Vertex> = set.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Witness::new(
            g,
            format!("blocks {i} and {j} joined by {c} edges, expected {expected}"),
            &ends,
        )
    }));
    let generator_part = Part::exhaustive("generators", "every cross edge")
        .metric("peel_position", peel.position)
        .fail_if(stray.map(|(u, v)| {
            Witness::new(
                g,
                "cross edge not given by a transposition through the peel position",
                &[u, v],
            )
        }));
    Ok(Outcome::gating(vec![counts_part, generator_part]))
}

fn mb_only(ctx: &Ctx<'_>) -> Option<Outcome> {
    (!ctx.is_mb(4..=usize::MAX)).then(|| {
        Outcome::Skipped("out-neighbor pairs are defined for cycle generators, n >= 4".into())
    })
}

pub(super) fn out_neighbor_disjoint(ctx: &Ctx<'_>) -> Result<Outcome> {
    if let Some(skip) = mb_only(ctx) {
        return Ok(skip);
    }
    let g = ctx.g;
    let want = g.peel().anchors.len();
    let mut owner: HashMap<(u8, Vertex), Vertex> = HashMap::new();
    let mut shared = None;
    let mut wrong_degree = None;
    for u in 0..g.order() as Vertex {
        let outs = g.out_neighbors(u);
        if outs.len() != want && wrong_degree.is_none() {
            wrong_degree = Some((u, outs.len()));
        }
        for w in outs {
            if let Some(&v) = owner.get(&(g.block_of(u), w)) {
                if shared.is_none() {
                    shared = Some((v, u, w));
                }
            } else {
                owner.insert((g.block_of(u), w), u);
            }
        }
    }
    let disjoint = Part::exhaustive(
        "disjoint",
        format!("all vertex pairs within each of the {} blocks", ctx.n()),
    )
    .fail_if(shared.map(|(v, u, w)| {
        Witness::new(
            g,
            format!("block-mates share out-neighbor {}", g.label(w)),
            &[v, u, w],
        )
    }));
    let degree = Part::exhaustive("out-degree", format!("all {} vertices", g.order()))
        .metric("out_neighbors_per_vertex", want)
        .fail_if(wrong_degree.map(|(u, d)| {
            Witness::new(
                g,
                format!("vertex with {d} out-neighbors, expected {want}"),
                &[u],
            )
        }));
    Ok(Outcome::gating(vec![disjoint, degree]))
}

pub(super) fn out_neighbor_escape(ctx: &Ctx<'_>) -> Result<Outcome> {
    if let Some(skip) = mb_only(ctx) {
        return Ok(skip);
    }
    let g = ctx.g;
    let mut scanned = 0u64;
    let mut bad = None;
    for u in 0..g.order() as Vertex {
        if g.block_of(u) > 2 {
            continue;
        }
        scanned += 1;
        let outs = g.out_neighbors(u);
        if bad.is_none() && !outs.iter().any(|&w| g.block_of(w) >= 3) {
            let mut set = vec![u];
            set.extend(outs);
            bad = Some(set);
        }
    }
    let part = Part::exhaustive(
        "escape",
        format!("all {scanned} vertices of blocks 1 and 2"),
    )
    .metric("scanned", scanned)
    .fail_if(bad.map(|s| {
        Witness::new(
            g,
            "vertex whose out-neighbors all lie in blocks 1 and 2",
            &s,
        )
    }));
    Ok(Outcome::gating(vec![part]))
}

pub(super) fn edge_cn_exclusion(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    let bad = edge_cn_exclusion_violation(g.graph());
    let part = Part::exhaustive(
        "edges",
        format!("all {} edges against every third vertex", g.graph().size()),
    )
    .fail_if(bad.map(|(p, q, s)| {
        Witness::new(
            g,
            "edge p-q and a vertex s with cn(s,p) > 0 and cn(s,q) > 0",
            &[p, q, s],
        )
    }));
    Ok(if ctx.is_mb(4..=usize::MAX) {
        Outcome::gating(vec![part])
    } else {
        Outcome::exploratory(
            vec![part],
            "the property is claimed for cycle generators only",
        )
    })
}

pub(super) fn cn_triple(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    let (examined, bad) = cn_triple_violation(g.graph());
    let part = Part::exhaustive(
        "triples",
        "all vertex triples (only triples whose middle vertex has two cn = 2 partners can violate)",
    )
    .metric("partner_pairs_examined", examined)
    .fail_if(bad.map(|(u, v, w)| {
        Witness::new(
            g,
            "u, v, w with cn(u,v) = 2, cn(v,w) = 2 and cn(u,w) >= 1",
            &[u, v, w],
        )
    }));
    let outcome = if ctx.is_mb(4..=usize::MAX) {
        Outcome::gating(vec![part])
    } else {
        Outcome::exploratory(
            vec![part],
            "the configuration is excluded for cycle generators only",
        )
    };
    Ok(outcome
        .note("checks the pairwise triple form of the forbidden nine-vertex common-neighbor configuration, not the configuration itself")
        .note("the case step concluding cn(x1,x2) = 0 is read as cn(x1,x3) = 0"))
}

fn disjoint(a: (u8, u8), b: (u8, u8)) -> bool {
    a.0 != b.0 && a.0 != b.1 && a.1 != b.0 && a.1 != b.1
}

pub(super) fn four_cycle_labels(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    let cycles = g.enumerate_4cycles();
    let labels = |c: &[Vertex; 4]| -> Option<[(u8, u8); 4]> {
        Some([
            g.edge_label(c[0], c[1])?,
            g.edge_label(c[1], c[2])?,
            g.edge_label(c[2], c[3])?,
            g.edge_label(c[3], c[0])?,
        ])
    };
    let ok = |c: &[Vertex; 4]| {
        labels(c).is_some_and(|l| l[0] == l[2] && l[1] == l[3] && disjoint(l[0], l[1]))
    };
    let bad = cycles.par_iter().find_first(|c| !ok(c));
    let mut part = Part::exhaustive("cycles", format!("all {} 4-cycles", cycles.len()))
        .metric("four_cycles", cycles.len());
    if let Some(c) = cycles.first() {
        if let Some(l) = labels(c) {
            let text: Vec<String> = l.iter().map(|(a, b)| format!("({a}{b})")).collect();
            part = part.witness(Witness::new(
                g,
                format!("least 4-cycle, labels {}", text.join(",")),
                c,
            ));
        }
    }
    let part = part.fail_if(bad.map(|c| {
        Witness::new(
            g,
            "4-cycle whose labels do not alternate between two disjoint transpositions",
            c,
        )
    }));
    Ok(if ctx.is_ug() {
        Outcome::gating(vec![part])
    } else {
        Outcome::exploratory(
            vec![part],
            "the label pattern is claimed for unicyclic triangle-free generators",
        )
    })
}

pub(super) fn block_attachment(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_mb(4..=4) {
        return Ok(Outcome::Skipped(
            "stated for the 4-cycle generator only".into(),
        ));
    }
    let g = ctx.g;
    let last = ctx.n() as u8;
    let into_last = |u: Vertex| {
        g.graph()
            .neighbors(u)
            .iter()
            .filter(|&&w| g.block_of(w) == last)
            .count()
    };
    let mut per_block = serde_json::Map::new();
    let mut bad = None;
    for b in 1..last {
        let mut edges = 0u64;
        for (u, v) in g.graph().edges() {
            if g.block_of(u) != b || g.block_of(v) != b {
                continue;
            }
            edges += 1;
            if into_last(u) != 1 && into_last(v) != 1 && bad.is_none() {
                bad = Some((u, v));
            }
        }
        per_block.insert(b.to_string(), edges.into());
    }
    let part = Part::exhaustive("edges", format!("every edge inside blocks 1..{}", last - 1))
        .metric("edges_per_block", per_block)
        .fail_if(bad.map(|(u, v)| {
            Witness::new(
                g,
                format!("edge with no endpoint having exactly one neighbor in block {last}"),
                &[u, v],
            )
        }));
    Ok(Outcome::gating(vec![part]))
}
