//! Seeded, worker-independent sampling: trials run in fixed blocks, block `b`
//! draws from ChaCha stream `b`, and block results are merged in order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

const BLOCK: u64 = 1024;

/// Derives an independent seed for one sampled part.
pub(crate) fn part_seed(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub(crate) fn run_blocks<A, I, S, M>(trials: u64, seed: u64, init: I, step: S, merge: M) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut A, &mut ChaCha8Rng) + Sync,
    M: Fn(A, A) -> A,
{
    let blocks = trials.div_ceil(BLOCK);
    let results: Vec<A> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b);
            let mut acc = init();
            for _ in 0..BLOCK.min(trials - b * BLOCK) {
                step(&mut acc, &mut rng);
            }
            acc
        })
        .collect();
    results.into_iter().fold(init(), merge)
}
