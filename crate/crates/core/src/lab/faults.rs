//! Checks over fault sets: exhaustive on `u128` masks where the subset count
//! allows it, seeded sampling otherwise.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::sample::{part_seed, run_blocks};
use super::{Ctx, Outcome, Part, Witness};
use crate::cuts::mask::{self, MaskGraph};
use crate::cuts::neighborhood;
use crate::error::Result;
use crate::graph::{Graph, Vertex};
use crate::subsets::{fold_subsets, for_each_subset, subsets_up_to};

/// Subset counts up to this size are enumerated rather than sampled.
const EXHAUSTIVE_LIMIT: u128 = 10_000_000;
/// Largest `N(v) ∪ extras` template family that is enumerated in full.
const TEMPLATE_LIMIT: u128 = 2_000_000;

/// Keeps the earlier of two optional witnesses; partition results arrive in
/// lexicographic order, so this keeps the least one.
fn first<T>(a: Option<T>, b: Option<T>) -> Option<T> {
    a.or(b)
}

fn masks<'a>(ctx: &Ctx<'a>) -> Option<MaskGraph<'a>> {
    ctx.g.graph().masks().map(MaskGraph::new)
}

pub(super) fn isolated_vertex(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_mb(4..=4) {
        return Ok(Outcome::Skipped(
            "stated for the 4-cycle generator only".into(),
        ));
    }
    let g = ctx.g;
    let m = masks(ctx).expect("24 vertices fit a mask");
    let order = g.order();

    #[derive(Default)]
    struct Acc {
        by_size: [u64; 6],
        bad_shape: Option<Vec<Vertex>>,
        not_neighborhood: Option<Vec<Vertex>>,
    }
    let acc = fold_subsets(
        order,
        0..=5,
        Acc::default,
        |acc, s, fault| {
            if !m.is_disconnected(fault) {
                return;
            }
            acc.by_size[s.len()] += 1;
            let comps = m.components(fault);
            let single = comps.iter().find(|c| c.count_ones() == 1);
            if comps.len() != 2 || single.is_none() {
                if acc.bad_shape.is_none() {
                    acc.bad_shape = Some(s.to_vec());
                }
                return;
            }
            if s.len() == 4
                && m.neighborhood(*single.unwrap()) != fault
                && acc.not_neighborhood.is_none()
            {
                acc.not_neighborhood = Some(s.to_vec());
            }
        },
        |mut a, b| {
            for (x, y) in a.by_size.iter_mut().zip(b.by_size) {
                *x += y;
            }
            a.bad_shape = first(a.bad_shape, b.bad_shape);
            a.not_neighborhood = first(a.not_neighborhood, b.not_neighborhood);
            a
        },
    );
    let counts: serde_json::Map<String, serde_json::Value> = (0..=5)
        .map(|k| (k.to_string(), acc.by_size[k].into()))
        .collect();
    let total: u64 = acc.by_size.iter().sum();
    let shape = Part::exhaustive(
        "two-components",
        format!("all {} fault sets of size <= 5", subsets_up_to(order, 5)),
    )
    .metric("disconnecting_by_size", counts)
    .metric("disconnecting_total", total)
    .fail_if(acc.bad_shape.map(|f| {
        Witness::new(
            g,
            "disconnecting set not leaving exactly two components, one a single vertex",
            &f,
        )
    }));
    let census = Part::exhaustive("size-four-sets", "all disconnecting sets of size 4")
        .metric("neighborhoods", acc.by_size[4])
        .fail_if(acc.not_neighborhood.map(|f| {
            Witness::new(
                g,
                "disconnecting 4-set that is not a vertex neighborhood",
                &f,
            )
        }));
    let below = Part::exhaustive("below-connectivity", "all fault sets of size <= 3").fail_if(
        (acc.by_size[..4].iter().any(|&c| c > 0)).then(|| {
            let f = first_disconnecting(&m, order, 3).unwrap_or_default();
            Witness::new(g, "disconnecting set of size <= 3", &f)
        }),
    );
    Ok(Outcome::gating(vec![shape, census, below]))
}

fn first_disconnecting(m: &MaskGraph<'_>, order: usize, max: usize) -> Option<Vec<Vertex>> {
    (0..=max).find_map(|k| crate::subsets::first_subset(order, k, |_, f| m.is_disconnected(f)))
}

pub(super) fn large_component(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_mb(4..=4) {
        return Ok(Outcome::Skipped(
            "stated for the 4-cycle generator only".into(),
        ));
    }
    let g = ctx.g;
    let m = masks(ctx).expect("24 vertices fit a mask");
    let order = g.order();
    // residual allowed outside the largest component, by fault-set size
    let allowed = |k: usize| if k <= 6 { 2 } else { 3 };

    #[derive(Default)]
    struct Acc {
        worst: [u32; 8],
        disconnecting: [u64; 8],
        bad: Option<(Vec<Vertex>, u32)>,
    }
    let acc = fold_subsets(
        order,
        0..=7,
        Acc::default,
        |acc, s, fault| {
            let (_, residual) = m.residual(fault);
            if residual == 0 {
                return;
            }
            let k = s.len();
            acc.disconnecting[k] += 1;
            acc.worst[k] = acc.worst[k].max(residual);
            if residual > allowed(k) && acc.bad.is_none() {
                acc.bad = Some((s.to_vec(), residual));
            }
        },
        |mut a, b| {
            for k in 0..8 {
                a.worst[k] = a.worst[k].max(b.worst[k]);
                a.disconnecting[k] += b.disconnecting[k];
            }
            a.bad = first(a.bad, b.bad);
            a
        },
    );
    let worst: serde_json::Map<String, serde_json::Value> = (0..=7)
        .map(|k| (k.to_string(), acc.worst[k].into()))
        .collect();
    let disc: serde_json::Map<String, serde_json::Value> = (0..=7)
        .map(|k| (k.to_string(), acc.disconnecting[k].into()))
        .collect();
    let part = Part::exhaustive(
        "residual",
        format!("all {} fault sets of size <= 7", subsets_up_to(order, 7)),
    )
    .metric("worst_residual_by_size", worst)
    .metric("disconnecting_by_size", disc)
    .fail_if(acc.bad.map(|(f, r)| {
        Witness::new(
            g,
            format!(
                "{r} vertices outside the largest component, allowed {}",
                allowed(f.len())
            ),
            &f,
        )
    }));
    Ok(Outcome::gating(vec![part]))
}

/// `|N(S) \ S|` on the general adjacency.
fn boundary_size(g: &Graph, set: &[Vertex]) -> usize {
    neighborhood(g, set).len()
}

pub(super) fn neighbor_lower_bound(ctx: &Ctx<'_>) -> Result<Outcome> {
    let n = ctx.n();
    if !ctx.is_mb(4..=8) {
        return Ok(Outcome::Skipped(
            "stated for cycle generators, n >= 4".into(),
        ));
    }
    let g = ctx.g;
    let graph = g.graph();
    let cycle = g.enumerate_4cycles()[0];
    let cycle_value = boundary_size(graph, &cycle);
    let expected = if n <= 5 { 4 * n - 8 } else { 4 * n - 9 };

    if let Some(m) = masks(ctx) {
        let init = || (u32::MAX, 0u64, None::<Vec<Vertex>>);
        let (min, at_min, least) = fold_subsets(
            g.order(),
            4..=4,
            init,
            |acc, s, set| {
                let b = m.neighborhood(set).count_ones();
                if b < acc.0 {
                    *acc = (b, 0, Some(s.to_vec()));
                }
                if b == acc.0 {
                    acc.1 += 1;
                }
            },
            |a, b| match a.0.cmp(&b.0) {
                std::cmp::Ordering::Less => a,
                std::cmp::Ordering::Greater => b,
                std::cmp::Ordering::Equal => (a.0, a.1 + b.1, first(a.2, b.2)),
            },
        );
        let least = least.expect("graphs have at least four vertices");
        let part = Part::exhaustive(
            "four-sets",
            format!(
                "all {} vertex sets of size 4",
                crate::subsets::binomial(g.order(), 4)
            ),
        )
        .metric("min_boundary", min)
        .metric("expected", expected)
        .metric("sets_at_min", at_min)
        .metric("four_cycle_boundary", cycle_value)
        .witness(Witness::new(
            g,
            format!("least 4-set with |N(S)| = {min}"),
            &least,
        ));
        let part = if min as usize != expected {
            let what = if (min as usize) < expected {
                "below"
            } else {
                "above"
            };
            part.fail(Witness::new(
                g,
                format!("minimum {min} is {what} {expected}"),
                &least,
            ))
        } else {
            part
        };
        return Ok(Outcome::gating(vec![part]));
    }

    let trials = ctx.cfg.sample_trials;
    let seed = part_seed(ctx.cfg.seed, 0x4e42);
    let order = g.order() as Vertex;
    let (best, witness) = run_blocks(
        trials,
        seed,
        || (usize::MAX, Vec::new()),
        |acc, rng| {
            let mut s = random_close_set(graph, order, 4, rng);
            if s.len() < 4 {
                return;
            }
            s.sort_unstable();
            let b = boundary_size(graph, &s);
            if (b, &s) < (acc.0, &acc.1) {
                *acc = (b, s);
            }
        },
        |a, b| if (b.0, &b.1) < (a.0, &a.1) { b } else { a },
    );
    let part = Part::sampled(
        "four-sets",
        format!("{trials} sampled connected or distance-2 vertex sets of size 4, seed {seed}"),
    )
    .metric("best_boundary", best)
    .metric("bound", expected)
    .metric("sharp_found", best == expected)
    .metric("four_cycle_boundary", cycle_value)
    .witness(Witness::new(
        g,
        format!("best 4-set found, |N(S)| = {best}"),
        &witness,
    ));
    let part = if best < expected {
        part.fail(Witness::new(
            g,
            format!("4-set with |N(S)| = {best} < {expected}"),
            &witness,
        ))
    } else {
        part
    };
    Ok(Outcome::gating(vec![part]))
}

/// A `k`-set grown from a random vertex, each new member drawn either from
/// the neighbors or from the second neighbors of the set so far.
fn random_close_set(g: &Graph, order: Vertex, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let mut set = vec![rng.gen_range(0..order)];
    let second = rng.gen_bool(0.5);
    while set.len() < k {
        let base = *set.choose(rng).unwrap();
        let hop = *g.neighbors(base).choose(rng).unwrap();
        let pick = if second && rng.gen_bool(0.5) {
            *g.neighbors(hop).choose(rng).unwrap()
        } else {
            hop
        };
        if !set.contains(&pick) {
            set.push(pick);
        }
    }
    set
}

pub(super) fn component_bound(ctx: &Ctx<'_>) -> Result<Outcome> {
    if !ctx.is_ug() {
        return Ok(Outcome::Skipped(
            "stated for unicyclic triangle-free generators, n >= 4".into(),
        ));
    }
    let Some(m) = masks(ctx) else {
        return Ok(Outcome::Skipped(
            "fault-set sampling runs on graphs of at most 128 vertices".into(),
        ));
    };
    let n = ctx.n();
    let mut parts = Vec::new();
    for p in 1..=n - 2 {
        let bound = p * n - p * (p + 1) / 2;
        let name = format!("p={p}");
        let subsets = subsets_up_to(ctx.g.order(), bound);
        if subsets <= EXHAUSTIVE_LIMIT {
            parts.push(component_bound_exhaustive(
                ctx, &m, p, bound, &name, subsets,
            ));
        } else {
            parts.extend(component_bound_sampled(ctx, &m, p, bound, &name));
        }
    }
    Ok(Outcome::gating(parts))
}

fn residual_witness(ctx: &Ctx<'_>, p: usize, f: &[Vertex], r: u32) -> Witness {
    Witness::new(
        ctx.g,
        format!(
            "{r} vertices outside the largest component, allowed {}",
            p - 1
        ),
        f,
    )
}

fn component_bound_exhaustive(
    ctx: &Ctx<'_>,
    m: &MaskGraph<'_>,
    p: usize,
    bound: usize,
    name: &str,
    subsets: u128,
) -> Part {
    let limit = p as u32 - 1;
    let (worst, bad) = fold_subsets(
        ctx.g.order(),
        0..=bound,
        || (0u32, None::<(Vec<Vertex>, u32)>),
        |acc, s, fault| {
            let (_, r) = m.residual(fault);
            acc.0 = acc.0.max(r);
            if r > limit && acc.1.is_none() {
                acc.1 = Some((s.to_vec(), r));
            }
        },
        |a, b| (a.0.max(b.0), first(a.1, b.1)),
    );
    Part::exhaustive(name, format!("all {subsets} fault sets of size <= {bound}"))
        .metric("max_fault_size", bound)
        .metric("worst_residual", worst)
        .fail_if(bad.map(|(f, r)| residual_witness(ctx, p, &f, r)))
}

fn component_bound_sampled(
    ctx: &Ctx<'_>,
    m: &MaskGraph<'_>,
    p: usize,
    bound: usize,
    name: &str,
) -> Vec<Part> {
    let g = ctx.g;
    let graph = g.graph();
    let order = g.order();
    let limit = p as u32 - 1;
    let degree = graph.regular_degree().unwrap_or_else(|| graph.min_degree());
    let mut parts = Vec::new();

    // every N(v) padded by every small set of extras
    let extras = bound.saturating_sub(degree);
    let templates = order as u128 * subsets_up_to(order - 1 - degree, extras);
    if templates <= TEMPLATE_LIMIT {
        #[allow(clippy::type_complexity)]
        let per_vertex: Vec<(u32, u64, Option<(Vec<Vertex>, u32)>)> = (0..order as Vertex)
            .into_par_iter()
            .map(|v| {
                let base = m.nbr[v as usize];
                let others: Vec<Vertex> = (0..order as Vertex)
                    .filter(|&x| x != v && base >> x & 1 == 0)
                    .collect();
                let mut acc = (0u32, 0u64, None);
                for k in 0..=extras {
                    let _ = for_each_subset(others.len(), k, |idx, _| {
                        let fault = idx
                            .iter()
                            .fold(base, |f, &i| f | 1u128 << others[i as usize]);
                        let (_, r) = m.residual(fault);
                        acc.0 = acc.0.max(r);
                        acc.1 += 1;
                        if r > limit && acc.2.is_none() {
                            acc.2 = Some((mask::from_mask(fault), r));
                        }
                        std::ops::ControlFlow::Continue(())
                    });
                }
                acc
            })
            .collect();
        let (worst, count, bad) = per_vertex.into_iter().fold((0, 0, None), |a, b| {
            (a.0.max(b.0), a.1 + b.1, first(a.2, b.2))
        });
        parts.push(
            Part::sampled(
                &format!("{name} templates"),
                format!("all {count} sets N(v) plus up to {extras} extra vertices (a structured sample, not all sets)"),
            )
            .metric("max_fault_size", bound)
            .metric("worst_residual", worst)
            .fail_if(bad.map(|(f, r)| residual_witness(ctx, p, &f, r))),
        );
    }

    let trials = ctx.cfg.sample_trials;
    let seed = part_seed(ctx.cfg.seed, 0x4342_0000 + p as u64);
    let (worst, violations, bad) = run_blocks(
        trials,
        seed,
        || (0u32, 0u64, None::<(Vec<Vertex>, u32)>),
        |acc, rng| {
            let fault = random_fault(graph, m, bound, p, rng);
            let (_, r) = m.residual(fault);
            acc.0 = acc.0.max(r);
            if r > limit {
                acc.1 += 1;
                if acc.2.is_none() {
                    acc.2 = Some((mask::from_mask(fault), r));
                }
            }
        },
        |a, b| (a.0.max(b.0), a.1 + b.1, first(a.2, b.2)),
    );
    parts.push(
        Part::sampled(
            name,
            format!("{trials} sampled fault sets of size <= {bound}, seed {seed}"),
        )
        .metric("max_fault_size", bound)
        .metric("worst_residual", worst)
        .metric("violations", violations)
        .fail_if(bad.map(|(f, r)| residual_witness(ctx, p, &f, r))),
    );
    parts
}

/// One sampled fault set of size at most `bound`: uniform, a padded vertex
/// neighborhood, or the boundary of a small connected set trimmed or padded
/// to the size limit.
fn random_fault(
    g: &Graph,
    m: &MaskGraph<'_>,
    bound: usize,
    p: usize,
    rng: &mut ChaCha8Rng,
) -> u128 {
    let order = g.order() as Vertex;
    let mut fault = match rng.gen_range(0..3) {
        0 => 0u128,
        1 => m.nbr[rng.gen_range(0..order) as usize],
        _ => {
            let size = rng.gen_range(1..=p + 1);
            let mut set = vec![rng.gen_range(0..order)];
            while set.len() < size {
                let base = *set.choose(rng).unwrap();
                let next = *g.neighbors(base).choose(rng).unwrap();
                if !set.contains(&next) {
                    set.push(next);
                }
            }
            m.neighborhood(mask::to_mask(&set))
        }
    };
    if fault.count_ones() as usize > bound {
        let mut members = mask::from_mask(fault);
        members.shuffle(rng);
        members.truncate(bound);
        fault = mask::to_mask(&members);
    }
    while (fault.count_ones() as usize) < bound {
        fault |= 1u128 << rng.gen_range(0..order);
    }
    fault
}
