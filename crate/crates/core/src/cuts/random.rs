//! Seeded randomized search for small cuts where exhaustion is infeasible.
//!
//! Each trial proposes a fault set from one of three generators:
//! the neighborhood of a random 4-cycle grown by a few boundary vertices,
//! a perturbed 4-cycle neighborhood cut, or the neighborhood of a random
//! connected set. Proposals within the size target that satisfy the
//! predicate are greedily shrunk and the least `(size, members)` is kept.
//!
//! Trials are grouped in fixed blocks; block `b` draws from ChaCha stream
//! `b` of the seed, so results do not depend on the number of workers.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cuts::mask::{self, MaskGraph};
use crate::cuts::{neighborhood, CutKind, CutWitness, FaultSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::subsets::with_workers;

const BLOCK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSearch {
    pub kind: CutKind,
    pub target_size: usize,
    pub trials: u64,
    pub seed: u64,
    pub workers: usize,
}

pub fn randomized_cut_search(g: &Graph, params: &RandomSearch) -> Result<Option<CutWitness>> {
    if params.trials == 0 {
        return Err(Error::invalid("randomized search needs at least one trial"));
    }
    let blocks = params.trials.div_ceil(BLOCK);
    let best = with_workers(params.workers, || {
        (0..blocks)
            .into_par_iter()
            .map(|b| {
                let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
                rng.set_stream(b);
                let count = BLOCK.min(params.trials - b * BLOCK);
                let mut best: Option<Vec<Vertex>> = None;
                for _ in 0..count {
                    if let Some(f) = trial(g, params, &mut rng) {
                        best = better(best, Some(f));
                    }
                }
                best
            })
            .reduce(|| None, better)
    })?;
    Ok(best.map(|members| CutWitness::new(g, FaultSet::from_sorted(members), params.kind)))
}

/// Cyclic cuts of size at most `target_size`.
pub fn randomized_cut_falsifier(
    g: &Graph,
    target_size: usize,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Option<CutWitness>> {
    randomized_cut_search(
        g,
        &RandomSearch {
            kind: CutKind::Cyclic,
            target_size,
            trials,
            seed,
            workers,
        },
    )
}

fn better(a: Option<Vec<Vertex>>, b: Option<Vec<Vertex>>) -> Option<Vec<Vertex>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.len(), &y) < (x.len(), &x) { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn holds(g: &Graph, kind: CutKind, members: &[Vertex]) -> bool {
    match g.masks() {
        Some(nbr) => kind.holds_mask(&MaskGraph::new(nbr), mask::to_mask(members)),
        None => kind.holds(g, &FaultSet::from_sorted(members.to_vec())),
    }
}

fn trial(g: &Graph, p: &RandomSearch, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let mut f = match rng.gen_range(0..3) {
        0 => grown_cycle_cut(g, rng),
        1 => perturbed_cycle_cut(g, rng),
        _ => None,
    }
    .unwrap_or_else(|| connected_set_cut(g, rng));
    f.sort_unstable();
    f.dedup();
    if f.len() > p.target_size || !holds(g, p.kind, &f) {
        return None;
    }
    // greedy shrink in member order
    let mut i = 0;
    while i < f.len() {
        let mut smaller = f.clone();
        smaller.remove(i);
        if holds(g, p.kind, &smaller) {
            f = smaller;
        } else {
            i += 1;
        }
    }
    Some(f)
}

fn random_four_cycle(g: &Graph, rng: &mut ChaCha8Rng) -> Option<[Vertex; 4]> {
    let a = rng.gen_range(0..g.order() as Vertex);
    let mut nb = g.neighbors(a).to_vec();
    nb.shuffle(rng);
    for (i, &b) in nb.iter().enumerate() {
        for &d in &nb[i + 1..] {
            let closing: Vec<Vertex> = g
                .neighbors(b)
                .iter()
                .copied()
                .filter(|&c| c != a && g.has_edge(c, d))
                .collect();
            if let Some(&c) = closing.choose(rng) {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

fn grown_cycle_cut(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let mut set = random_four_cycle(g, rng)?.to_vec();
    for _ in 0..rng.gen_range(0..=2) {
        let boundary = neighborhood(g, &set);
        set.push(*boundary.choose(rng)?);
    }
    Some(neighborhood(g, &set))
}

fn perturbed_cycle_cut(g: &Graph, rng: &mut ChaCha8Rng) -> Option<Vec<Vertex>> {
    let cycle = random_four_cycle(g, rng)?;
    let mut f = neighborhood(g, &cycle);
    let drop = rng.gen_range(1..=3usize).min(f.len());
    let add = rng.gen_range(0..=drop);
    let outer = neighborhood(g, &f);
    f.shuffle(rng);
    f.truncate(f.len() - drop);
    f.extend(outer.choose_multiple(rng, add).copied());
    Some(f)
}

fn connected_set_cut(g: &Graph, rng: &mut ChaCha8Rng) -> Vec<Vertex> {
    let size = rng.gen_range(1..=8usize);
    let mut set = vec![rng.gen_range(0..g.order() as Vertex)];
    while set.len() < size {
        let boundary = neighborhood(g, &set);
        match boundary.choose(rng) {
            Some(&v) => set.push(v),
            None => break,
        }
    }
    neighborhood(g, &set)
}
