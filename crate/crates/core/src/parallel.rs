//! Worker fan-out. Each worker owns its accumulator; results come back in
//! worker order and the caller merges them once.

use alloc::vec::Vec;
use core::ops::Range;

/// Splits `0..n` into `workers` contiguous ranges of near-equal length.
pub(crate) fn partition(n: usize, workers: usize) -> Vec<Range<usize>> {
    let workers = workers.max(1).min(n.max(1));
    let base = n / workers;
    let extra = n % workers;
    let mut out = Vec::with_capacity(workers);
    let mut start = 0;
    for w in 0..workers {
        let len = base + usize::from(w < extra);
        out.push(start..start + len);
        start += len;
    }
    out
}

/// Runs `work` once per static partition of `0..n`.
#[cfg(feature = "std")]
pub(crate) fn run_partitioned<A, F>(n: usize, workers: usize, work: F) -> Vec<A>
where
    A: Send,
    F: Fn(usize, Range<usize>) -> A + Sync,
{
    let parts = partition(n, workers);
    if parts.len() == 1 {
        return alloc::vec![work(0, parts[0].clone())];
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = parts
            .into_iter()
            .enumerate()
            .map(|(w, range)| {
                let work = &work;
                scope.spawn(move || work(w, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(not(feature = "std"))]
pub(crate) fn run_partitioned<A, F>(n: usize, _workers: usize, work: F) -> Vec<A>
where
    F: Fn(usize, Range<usize>) -> A,
{
    alloc::vec![work(0, 0..n)]
}

/// Runs `work` over `0..n` in blocks claimed dynamically, so skewed per-item
/// cost still balances. `init` creates one accumulator per worker.
#[cfg(feature = "std")]
pub(crate) fn run_dynamic<A, I, F>(n: usize, workers: usize, block: usize, init: I, work: F) -> Vec<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    F: Fn(&mut A, usize) + Sync,
{
    use std::sync::atomic::{AtomicUsize, Ordering};

    let workers = workers.max(1).min(n.max(1));
    if workers == 1 {
        let mut acc = init();
        for i in 0..n {
            work(&mut acc, i);
        }
        return alloc::vec![acc];
    }
    let next = AtomicUsize::new(0);
    let block = block.max(1);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                let (next, init, work) = (&next, &init, &work);
                scope.spawn(move || {
                    let mut acc = init();
                    loop {
                        let start = next.fetch_add(block, Ordering::Relaxed);
                        if start >= n {
                            break;
                        }
                        for i in start..(start + block).min(n) {
                            work(&mut acc, i);
                        }
                    }
                    acc
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

#[cfg(not(feature = "std"))]
pub(crate) fn run_dynamic<A, I, F>(n: usize, _workers: usize, _block: usize, init: I, work: F) -> Vec<A>
where
    I: Fn() -> A,
    F: Fn(&mut A, usize),
{
    let mut acc = init();
    for i in 0..n {
        work(&mut acc, i);
    }
    alloc::vec![acc]
}
