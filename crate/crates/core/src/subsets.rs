//! Lexicographic enumeration of vertex subsets, partitioned by smallest
//! element so the partitions can be handed to independent workers.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Vertex;

/// `C(m, k)` as `u128`.
pub fn binomial(m: usize, k: usize) -> u128 {
    if k > m {
        return 0;
    }
    let k = k.min(m - k);
    (0..k).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

/// `sum_{k <= max} C(m, k)`.
pub fn subsets_up_to(m: usize, max: usize) -> u128 {
    (0..=max.min(m)).map(|k| binomial(m, k)).sum()
}

/// Visits every `k`-subset of `0..m` with smallest element `first`, in
/// lexicographic order, passing the members and their bitmask (`m <= 128`).
pub fn for_each_with_first<F>(m: usize, k: usize, first: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex], u128) -> ControlFlow<()>,
{
    debug_assert!(m <= 128);
    if k == 0 {
        return ControlFlow::Continue(());
    }
    if first + k > m {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<Vertex> = (first..first + k).map(|i| i as Vertex).collect();
    // prefix[i] = mask of idx[..i]
    let mut prefix = vec![0u128; k + 1];
    for i in 0..k {
        prefix[i + 1] = prefix[i] | 1u128 << idx[i];
    }
    loop {
        visit(&idx, prefix[k])?;
        // advance, never touching idx[0]
        let mut i = k - 1;
        loop {
            if i == 0 {
                return ControlFlow::Continue(());
            }
            if (idx[i] as usize) < m - (k - i) {
                break;
            }
            i -= 1;
        }
        idx[i] += 1;
        prefix[i + 1] = prefix[i] | 1u128 << idx[i];
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
            prefix[j + 1] = prefix[j] | 1u128 << idx[j];
        }
    }
}

/// Visits every `k`-subset of `0..m` in lexicographic order.
pub fn for_each_subset<F>(m: usize, k: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[Vertex], u128) -> ControlFlow<()>,
{
    if k == 0 {
        return visit(&[], 0);
    }
    for first in 0..m {
        for_each_with_first(m, k, first, &mut visit)?;
    }
    ControlFlow::Continue(())
}

/// Runs `f` on a dedicated pool with exactly `workers` threads.
pub fn with_workers<R: Send>(workers: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::invalid(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(f))
}

/// Lexicographically least `k`-subset of `0..m` (`m <= 128`) satisfying
/// `pred`. Partitions by smallest element run in parallel on the current
/// rayon pool; the answer does not depend on the number of workers.
pub fn first_subset<P>(m: usize, k: usize, pred: P) -> Option<Vec<Vertex>>
where
    P: Fn(&[Vertex], u128) -> bool + Sync,
{
    if k == 0 {
        return pred(&[], 0).then(Vec::new);
    }
    (0..m).into_par_iter().find_map_first(|first| {
        let mut found = None;
        let _ = for_each_with_first(m, k, first, |s, mask| {
            if pred(s, mask) {
                found = Some(s.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        found
    })
}

/// Folds over every subset of `0..m` with size in `sizes`. Partition results
/// are merged in `(size, first)` order, so the result is independent of the
/// number of workers as long as `merge` is associative.
pub fn fold_subsets<A, I, V, M>(
    m: usize,
    sizes: std::ops::RangeInclusive<usize>,
    init: I,
    visit: V,
    merge: M,
) -> A
where
    A: Send,
    I: Fn() -> A + Sync,
    V: Fn(&mut A, &[Vertex], u128) + Sync,
    M: Fn(A, A) -> A,
{
    let parts: Vec<(usize, usize)> = sizes
        .flat_map(|k| {
            let firsts = if k == 0 {
                0..1
            } else {
                0..m.saturating_sub(k - 1)
            };
            firsts.map(move |f| (k, f))
        })
        .collect();
    let results: Vec<A> = parts
        .into_par_iter()
        .map(|(k, first)| {
            let mut acc = init();
            if k == 0 {
                visit(&mut acc, &[], 0);
            } else {
                let _ = for_each_with_first(m, k, first, |s, mask| {
                    visit(&mut acc, s, mask);
                    ControlFlow::Continue(())
                });
            }
            acc
        })
        .collect();
    results.into_iter().fold(init(), merge)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(24, 4), 10626);
        assert_eq!(binomial(120, 4), 8_214_570);
        assert_eq!(binomial(24, 7), 346_104);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(subsets_up_to(24, 7), 536_155);
    }

    #[test]
    fn enumerates_in_lexicographic_order() {
        let mut seen = Vec::new();
        let _ = for_each_subset(5, 3, |s, mask| {
            assert_eq!(mask.count_ones(), 3);
            seen.push(s.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen.len(), 10);
        let mut sorted = seen.clone();
        sorted.sort();
        assert_eq!(seen, sorted);
        assert_eq!(seen[0], vec![0, 1, 2]);
        assert_eq!(seen[9], vec![2, 3, 4]);
    }

    #[test]
    fn counts_match_binomials() {
        for m in 1..=9 {
            for k in 0..=m {
                let c = fold_subsets(m, k..=k, || 0u128, |a, _, _| *a += 1, |a, b| a + b);
                assert_eq!(c, binomial(m, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn first_subset_is_lexicographically_least() {
        // subsets of 0..8 with sum 12
        let pred = |s: &[Vertex], _: u128| s.iter().sum::<u32>() == 12;
        let got = first_subset(8, 3, pred).unwrap();
        let mut all = Vec::new();
        let _ = for_each_subset(8, 3, |s, m| {
            if pred(s, m) {
                all.push(s.to_vec());
            }
            ControlFlow::Continue(())
        });
        assert_eq!(got, all[0]);
        for w in [1, 3, 8] {
            assert_eq!(
                with_workers(w, || first_subset(8, 3, pred)).unwrap(),
                Some(got.clone())
            );
        }
    }
}
