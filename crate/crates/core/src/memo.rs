//! Budget-bounded memoization of line-graph neighborhoods.
//!
//! Used by the on-the-fly counters, which never materialize the full line
//! graph. The budget counts neighbor entries: memoizing `e_i` costs `d_i`.
//! When room is needed the lowest-degree memoized hyperedge (ties: lower
//! index) is evicted first, so high-degree neighborhoods, which are both
//! expensive to rebuild and sampled most often, tend to stay resident.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::hypergraph::{EdgeIdx, Hypergraph};
use crate::line_graph::{NeighborMap, NeighborScratch};

/// Result of [`MemoizedNeighborStore::fetch`].
#[derive(Debug)]
pub enum Fetched {
    /// The neighborhood is resident; read it with [`MemoizedNeighborStore::memoized`].
    Memoized,
    /// Too large for the budget; computed for this use only.
    Transient(NeighborMap),
}

#[derive(Debug, Clone)]
pub struct MemoizedNeighborStore {
    budget: usize,
    cap: usize,
    degrees: Vec<u32>,
    store: Vec<Option<NeighborMap>>,
    queue: BTreeSet<(u32, EdgeIdx)>,
    scratch: NeighborScratch,
    recomputations: u64,
}

impl MemoizedNeighborStore {
    /// `degrees[i]` must equal `|N_ei|`.
    pub fn new(budget: usize, degrees: Vec<u32>) -> Self {
        let m = degrees.len();
        MemoizedNeighborStore {
            budget,
            cap: budget,
            degrees,
            store: alloc::vec![None; m],
            queue: BTreeSet::new(),
            scratch: NeighborScratch::new(m),
            recomputations: 0,
        }
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// Remaining capacity.
    pub fn capacity_left(&self) -> usize {
        self.cap
    }

    /// Σ d_i over memoized hyperedges.
    pub fn used(&self) -> usize {
        self.budget - self.cap
    }

    /// How many neighborhoods have been computed from incidence lists.
    pub fn recomputations(&self) -> u64 {
        self.recomputations
    }

    pub fn is_memoized(&self, i: usize) -> bool {
        self.store[i].is_some()
    }

    pub fn memoized(&self, i: usize) -> Option<&[(EdgeIdx, u32)]> {
        self.store[i].as_deref()
    }

    pub fn memoized_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.store
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| i)
    }

    /// Makes the neighborhood of `e_i` available, memoizing it if it fits.
    ///
    /// Hyperedges in `pinned` are never evicted by this call.
    pub fn fetch(&mut self, h: &Hypergraph, i: usize, pinned: &[EdgeIdx]) -> Fetched {
        if self.store[i].is_some() {
            return Fetched::Memoized;
        }
        let d = self.degrees[i] as usize;
        if d > self.budget {
            self.recomputations += 1;
            return Fetched::Transient(self.scratch.neighbors(h, i));
        }
        if self.cap < d {
            let victims: Vec<(u32, EdgeIdx)> = {
                let mut need = d - self.cap;
                let mut out = Vec::new();
                for &(deg, m) in &self.queue {
                    if need == 0 {
                        break;
                    }
                    if pinned.contains(&m) {
                        continue;
                    }
                    out.push((deg, m));
                    need = need.saturating_sub(deg as usize);
                }
                out
            };
            let freed: usize = victims.iter().map(|&(deg, _)| deg as usize).sum();
            if self.cap + freed < d {
                // Pinned entries hold the rest; leave the store untouched.
                self.recomputations += 1;
                return Fetched::Transient(self.scratch.neighbors(h, i));
            }
            for key in victims {
                self.evict_entry(key);
            }
        }
        self.recomputations += 1;
        let map = self.scratch.neighbors(h, i);
        debug_assert_eq!(map.len(), d);
        self.store[i] = Some(map);
        self.cap -= d;
        self.queue.insert((d as u32, i as EdgeIdx));
        Fetched::Memoized
    }

    /// Returns the neighbor map of `e_i`, memoizing it when the budget allows.
    pub fn get(&mut self, h: &Hypergraph, i: usize, pinned: &[EdgeIdx]) -> NeighborMap {
        match self.fetch(h, i, pinned) {
            Fetched::Memoized => self.store[i].clone().unwrap(),
            Fetched::Transient(map) => map,
        }
    }

    /// Drops `e_i` from the store, if present.
    pub fn evict(&mut self, i: usize) {
        if self.store[i].is_some() {
            self.evict_entry((self.degrees[i], i as EdgeIdx));
        }
    }

    fn evict_entry(&mut self, key: (u32, EdgeIdx)) {
        self.queue.remove(&key);
        self.store[key.1 as usize] = None;
        self.cap += key.0 as usize;
    }
}
