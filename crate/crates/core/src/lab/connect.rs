//! Classical, 2-good-neighbor and cyclic connectivity.

use super::sample::part_seed;
use super::{Ctx, Family, Outcome, Part, Witness};
use crate::cuts::{
    build_cycle_neighborhood_cut, is_cyclic_cut, is_vertex_cut, min_cut_exhaustive,
    randomized_cut_falsifier, vertex_connectivity, ConnectivityMode, CutKind, SearchOptions,
};
use crate::error::Result;
use crate::graph::MASK_LIMIT;
use crate::subsets::subsets_up_to;

/// Largest arity for the max-flow scan.
const FLOW_ARITY: usize = 6;
/// Largest order for which the flow value is cross-checked by exhaustion.
const MENGER_ORDER: usize = 24;

pub(super) fn connectivity(ctx: &Ctx<'_>) -> Result<Outcome> {
    let g = ctx.g;
    if ctx.n() > FLOW_ARITY {
        return Ok(Outcome::Skipped(format!(
            "max-flow scan runs for n <= {FLOW_ARITY}"
        )));
    }
    let graph = g.graph();
    let mode = if ctx.cfg.all_pairs_connectivity {
        ConnectivityMode::AllPairs
    } else {
        ConnectivityMode::FixedSource
    };
    let k = vertex_connectivity(graph, mode)?;
    // transposition Cayley graphs with a connected generating graph are
    // maximally connected
    let expected = graph.regular_degree().unwrap_or_else(|| graph.min_degree());
    let scope = match mode {
        ConnectivityMode::FixedSource => "max-flow from the identity to every non-neighbor",
        ConnectivityMode::AllPairs => "max-flow over every non-adjacent pair",
    };
    let mut flow = Part::exhaustive("max-flow", scope)
        .metric("kappa", k.value)
        .metric("expected", expected)
        .metric("complete", k.complete);
    if !k.cut.is_empty() {
        flow = flow.witness(Witness::new(
            g,
            format!("minimum vertex cut of size {}", k.value),
            &k.cut,
        ));
    }
    if k.value != expected {
        let cx = if k.cut.is_empty() {
            vec![k.source, k.target]
        } else {
            k.cut.clone()
        };
        flow = flow.fail(Witness::new(
            g,
            format!("connectivity {} differs from {expected}", k.value),
            &cx,
        ));
    }
    let mut parts = vec![flow];
    if g.order() <= MENGER_ORDER && !k.complete {
        let found = min_cut_exhaustive(
            graph,
            CutKind::Vertex,
            k.value,
            &SearchOptions {
                workers: ctx.cfg.workers,
            },
        )?;
        let mut part = Part::exhaustive(
            "menger",
            format!(
                "all {} vertex sets of size <= {}",
                subsets_up_to(g.order(), k.value),
                k.value
            ),
        );
        match found {
            Some(w) if w.size() == k.value => {
                part = part.witness(Witness::new(
                    g,
                    "least minimum vertex cut",
                    w.fault_set.members(),
                ));
            }
            Some(w) => {
                part = part.fail(Witness::new(
                    g,
                    format!(
                        "vertex cut of size {} below the flow value {}",
                        w.size(),
                        k.value
                    ),
                    w.fault_set.members(),
                ));
            }
            None => {
                part = part.fail(Witness::new(
                    g,
                    "flow cut not confirmed by exhaustive search",
                    &k.cut,
                ));
            }
        }
        parts.push(part);
    }
    Ok(match ctx.family {
        Family::Other => {
            Outcome::exploratory(parts, "no connectivity value is claimed for this class")
        }
        _ => Outcome::gating(parts),
    })
}

/// The least 4-cycle's neighborhood, checked against `kind`.
fn cycle_cut_part(ctx: &Ctx<'_>, kind: CutKind, expected: usize) -> Result<Part> {
    let g = ctx.g;
    let graph = g.graph();
    let cycle = g.enumerate_4cycles()[0];
    let f = build_cycle_neighborhood_cut(graph, &cycle)?;
    let holds = kind.holds(graph, &f);
    let consistent = !is_cyclic_cut(graph, &f) || is_vertex_cut(graph, &f);
    let mut part = Part::exhaustive(
        "upper-bound",
        format!("neighborhood of the least 4-cycle, verified as a {kind}"),
    )
    .metric("size", f.len())
    .metric("expected", expected)
    .metric("holds", holds)
    .witness(Witness::new(
        g,
        format!("{kind} of size {}", f.len()),
        f.members(),
    ));
    if !holds || f.len() != expected || !consistent {
        part = part.fail(Witness::new(
            g,
            format!(
                "4-cycle neighborhood of size {} is not a {kind} of size {expected}",
                f.len()
            ),
            f.members(),
        ));
    }
    Ok(part)
}

/// Exhaustive minimum below and at `expected`.
fn exact_part(ctx: &Ctx<'_>, kind: CutKind, expected: usize) -> Result<Part> {
    let g = ctx.g;
    let opts = SearchOptions {
        workers: ctx.cfg.workers,
    };
    let found = min_cut_exhaustive(g.graph(), kind, expected, &opts)?;
    let part = Part::exhaustive(
        "exact",
        format!(
            "all {} vertex sets of size <= {expected}",
            subsets_up_to(g.order(), expected)
        ),
    )
    .metric("expected", expected);
    Ok(match found {
        Some(w) if w.size() == expected => part.metric("minimum", w.size()).witness(Witness::new(
            g,
            format!("least minimum {kind}"),
            w.fault_set.members(),
        )),
        Some(w) => part.metric("minimum", w.size()).fail(Witness::new(
            g,
            format!("{kind} of size {} below {expected}", w.size()),
            w.fault_set.members(),
        )),
        None => part.fail(Witness::new(
            g,
            format!("no {kind} of size <= {expected}"),
            &[],
        )),
    })
}

fn lower_bound_skipped(ctx: &Ctx<'_>, expected: usize) -> Part {
    Part::skipped(
        "lower-bound",
        format!(
            "{} vertex sets of size <= {}; not attempted",
            subsets_up_to(ctx.g.order(), expected - 1),
            expected - 1
        ),
    )
}

pub(super) fn good_neighbor(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_ug() {
        return Ok(Outcome::Skipped(
            "stated for unicyclic triangle-free generators, n >= 4".into(),
        ));
    }
    let n = ctx.n();
    let expected = 4 * n - 8;
    let kind = CutKind::GoodNeighbor(2);
    let mut parts = vec![cycle_cut_part(ctx, kind, expected)?];
    if ctx.g.order() <= MASK_LIMIT && n == 4 {
        parts.push(exact_part(ctx, kind, expected)?);
    } else {
        parts.push(lower_bound_skipped(ctx, expected));
    }
    Ok(Outcome::gating(parts))
}

pub(super) fn cyclic(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_ug() {
        return Ok(Outcome::Skipped(
            "stated for unicyclic triangle-free generators, n >= 4".into(),
        ));
    }
    let g = ctx.g;
    let n = ctx.n();
    let expected = 4 * n - 8;
    let mut parts = vec![cycle_cut_part(ctx, CutKind::Cyclic, expected)?];
    if n == 4 {
        parts.push(exact_part(ctx, CutKind::Cyclic, expected)?);
    } else {
        parts.push(lower_bound_skipped(ctx, expected));
    }
    if n == 5 {
        let trials = ctx.cfg.falsify_trials;
        let seed = part_seed(ctx.cfg.seed, 0x4643);
        let found =
            randomized_cut_falsifier(g.graph(), expected - 1, trials, seed, ctx.cfg.workers)?;
        let part = Part::sampled(
            "falsify",
            format!(
                "{trials} randomized cyclic-cut proposals of size <= {}, seed {seed}",
                expected - 1
            ),
        )
        .metric("target", expected - 1)
        .fail_if(found.map(|w| {
            Witness::new(
                g,
                format!("cyclic cut of size {} below {expected}", w.size()),
                w.fault_set.members(),
            )
        }));
        parts.push(part);
    }
    Ok(Outcome::gating(parts))
}
