//! Hyperwedge sampling without a materialized line graph.
//!
//! A pre-pass computes every `d_i = |N_ei|` from incidence lists; wedges are
//! then drawn exactly as in [`count_sample_hyperwedge`](super::count_sample_hyperwedge)
//! and neighborhoods are fetched through a budget-bounded memo store. For a
//! given seed the sampled wedge sequence, and therefore the estimate, matches
//! the line-graph version bit for bit.

use alloc::vec::Vec;
use core::cmp::Reverse;

use super::sampling::{draw_wedge, wedge_scaled};
use super::walk::Walker;
use super::{merge_tallies, new_tally, Algorithm, CountVector};
use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeIdx, Hypergraph};
use crate::line_graph::NeighborScratch;
use crate::memo::{Fetched, MemoizedNeighborStore};
use crate::parallel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OtfVariant {
    /// Wedges processed in draw order.
    Basic,
    /// Wedges grouped by key hyperedge and processed in descending
    /// `(degree, index)` order of the key; each key is evicted after its group.
    Advanced,
}

/// Memo budget, in neighbor entries.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Budget {
    Entries(usize),
    /// Fraction of the full line graph, `Σ_i d_i` entries.
    Fraction(f64),
}

impl Budget {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Budget::Fraction(f) if !(f.is_finite() && f >= 0.0) => {
                Err(Error::domain("budget fraction must be a finite non-negative number"))
            }
            _ => Ok(()),
        }
    }

    pub fn resolve(&self, full: usize) -> usize {
        match *self {
            Budget::Entries(b) => b,
            Budget::Fraction(f) => (f * full as f64) as usize,
        }
    }
}

/// Line-graph degrees and their prefix sums, computed from incidence lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeIndex {
    pub degrees: Vec<u32>,
    prefix: Vec<usize>,
}

impl DegreeIndex {
    pub fn compute(h: &Hypergraph, workers: usize) -> Self {
        let m = h.num_edges();
        let parts = parallel::run_partitioned(m, workers, |_, range| {
            let mut scratch = NeighborScratch::new(m);
            range.map(|i| scratch.degree(h, i) as u32).collect::<Vec<_>>()
        });
        let degrees: Vec<u32> = parts.into_iter().flatten().collect();
        let mut prefix = Vec::with_capacity(m + 1);
        prefix.push(0);
        for &d in &degrees {
            prefix.push(prefix.last().unwrap() + d as usize);
        }
        DegreeIndex { degrees, prefix }
    }

    /// Σ_i d_i, the entry count of the full line graph.
    pub fn total_entries(&self) -> usize {
        *self.prefix.last().unwrap()
    }

    pub fn wedge_count(&self) -> u64 {
        self.total_entries() as u64 / 2
    }
}

/// On-the-fly hyperwedge sampling with a memo store of `budget` entries,
/// split evenly across workers.
pub fn count_otf(
    h: &Hypergraph,
    cls: &Classifier,
    r: u64,
    budget: Budget,
    seed: u64,
    variant: OtfVariant,
    workers: usize,
) -> Result<CountVector> {
    let idx = DegreeIndex::compute(h, workers);
    count_otf_indexed(h, cls, &idx, r, budget, seed, variant, workers)
}

/// [`count_otf`] with a precomputed degree pre-pass.
#[allow(clippy::too_many_arguments)]
pub fn count_otf_indexed(
    h: &Hypergraph,
    cls: &Classifier,
    idx: &DegreeIndex,
    r: u64,
    budget: Budget,
    seed: u64,
    variant: OtfVariant,
    workers: usize,
) -> Result<CountVector> {
    if r == 0 {
        return Err(Error::domain("sample count r must be at least 1"));
    }
    budget.validate()?;
    let algorithm = match variant {
        OtfVariant::Basic => Algorithm::OtfBasic,
        OtfVariant::Advanced => Algorithm::OtfAdvanced,
    };
    let wedges = idx.wedge_count();
    let mut out = CountVector {
        num_edges: h.num_edges(),
        num_wedges: wedges,
        samples: r,
        seed: Some(seed),
        ..CountVector::zeros(cls, algorithm)
    };
    if wedges == 0 {
        log::warn!("hypergraph has no hyperwedges; all counts are zero");
        return Ok(out);
    }
    let total_budget = budget.resolve(idx.total_entries());
    let shares = parallel::partition(r as usize, workers).len();
    let parts = parallel::run_partitioned(r as usize, workers, |w, range| {
        let share = total_budget / shares + usize::from(w < total_budget % shares);
        let mut worker = OtfWorker {
            h,
            cls,
            idx,
            store: MemoizedNeighborStore::new(share, idx.degrees.clone()),
            walker: Walker::new(h.num_edges()),
            tally: new_tally(cls),
        };
        match variant {
            OtfVariant::Basic => worker.basic(seed, range),
            OtfVariant::Advanced => worker.advanced(seed, range),
        }
        log::debug!(
            "otf worker {w}: budget {share}, {} neighborhood computations",
            worker.store.recomputations()
        );
        worker.tally
    });
    let tally = merge_tallies(parts, cls.num_motifs() + 1);
    out.counts = wedge_scaled(&tally, cls, wedges, r);
    Ok(out)
}

struct OtfWorker<'a> {
    h: &'a Hypergraph,
    cls: &'a Classifier,
    idx: &'a DegreeIndex,
    store: MemoizedNeighborStore,
    walker: Walker,
    tally: Vec<u64>,
}

fn view<'s>(store: &'s MemoizedNeighborStore, i: usize, f: &'s Fetched) -> &'s [(EdgeIdx, u32)] {
    match f {
        Fetched::Memoized => store.memoized(i).expect("memoized neighborhood"),
        Fetched::Transient(map) => map,
    }
}

impl OtfWorker<'_> {
    fn process(&mut self, i: usize, fi: &Fetched, j: usize, fj: &Fetched, w_ij: u32) {
        let (h, cls, tally) = (self.h, self.cls, &mut self.tally);
        let ni = view(&self.store, i, fi);
        let nj = view(&self.store, j, fj);
        self.walker
            .wedge(i, j, w_ij, ni.iter().copied(), nj.iter().copied(), |t| {
                tally[t.classify(h, cls) as usize] += 1;
            });
    }

    fn basic(&mut self, seed: u64, range: core::ops::Range<usize>) {
        for n in range {
            let (i, o) = draw_wedge(seed, n as u64, &self.idx.prefix);
            let fi = self.store.fetch(self.h, i, &[i as EdgeIdx]);
            let (j, w_ij) = view(&self.store, i, &fi)[o];
            let j = j as usize;
            let fj = self.store.fetch(self.h, j, &[i as EdgeIdx, j as EdgeIdx]);
            self.process(i, &fi, j, &fj, w_ij);
        }
    }

    fn advanced(&mut self, seed: u64, range: core::ops::Range<usize>) {
        let mut draws: Vec<(usize, usize)> = range.map(|n| draw_wedge(seed, n as u64, &self.idx.prefix)).collect();
        draws.sort_unstable();

        // Resolve each draw to its hyperwedge and key hyperedge.
        let deg = &self.idx.degrees;
        let rank = |e: usize| (deg[e], e);
        let mut wedges: Vec<(usize, usize, u32)> = Vec::with_capacity(draws.len());
        let mut pos = 0;
        while pos < draws.len() {
            let i = draws[pos].0;
            let fi = self.store.fetch(self.h, i, &[i as EdgeIdx]);
            let ni = view(&self.store, i, &fi);
            while pos < draws.len() && draws[pos].0 == i {
                let (j, w) = ni[draws[pos].1];
                let j = j as usize;
                let (key, other) = if rank(i) > rank(j) { (i, j) } else { (j, i) };
                wedges.push((key, other, w));
                pos += 1;
            }
        }
        wedges.sort_unstable_by_key(|&(key, other, _)| (Reverse(rank(key)), other));

        let mut pos = 0;
        while pos < wedges.len() {
            let key = wedges[pos].0;
            let fk = self.store.fetch(self.h, key, &[key as EdgeIdx]);
            while pos < wedges.len() && wedges[pos].0 == key {
                let (_, other, w) = wedges[pos];
                let fo = self.store.fetch(self.h, other, &[key as EdgeIdx, other as EdgeIdx]);
                self.process(key, &fk, other, &fo, w);
                pos += 1;
            }
            self.store.evict(key);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::StateMap;
    use crate::counting::count_sample_hyperwedge;
    use crate::line_graph::LineGraph;

    fn sample_graph() -> Hypergraph {
        Hypergraph::from_labeled_edges(
            [
                alloc::vec![0u64, 1, 2],
                alloc::vec![1, 2, 3],
                alloc::vec![3, 4],
                alloc::vec![4, 5, 0],
                alloc::vec![2, 5],
                alloc::vec![6, 0, 3],
                alloc::vec![7, 8],
                alloc::vec![8, 1],
            ]
            .iter()
            .map(|e| e.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn degree_index_matches_line_graph() {
        let h = sample_graph();
        let lg = LineGraph::build(&h, 1);
        let idx = DegreeIndex::compute(&h, 3);
        assert_eq!(idx.degrees, lg.degrees());
        assert_eq!(idx.wedge_count(), lg.wedge_count() as u64);
    }

    #[test]
    fn matches_wedge_sampling_for_any_budget() {
        let h = sample_graph();
        let lg = LineGraph::build(&h, 1);
        let cls = Classifier::new(StateMap::Binary);
        let reference = count_sample_hyperwedge(&h, &lg, &cls, 50, 9, 1).unwrap();
        for budget in [
            Budget::Fraction(1.0),
            Budget::Fraction(0.3),
            Budget::Entries(0),
            Budget::Entries(2),
        ] {
            for variant in [OtfVariant::Basic, OtfVariant::Advanced] {
                for workers in [1, 3] {
                    let got = count_otf(&h, &cls, 50, budget, 9, variant, workers).unwrap();
                    assert_eq!(got.counts, reference.counts, "{budget:?} {variant:?} {workers}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let h = sample_graph();
        let cls = Classifier::new(StateMap::Binary);
        assert!(count_otf(&h, &cls, 0, Budget::Entries(0), 0, OtfVariant::Basic, 1).is_err());
        assert!(count_otf(&h, &cls, 5, Budget::Fraction(-0.5), 0, OtfVariant::Basic, 1).is_err());
    }
}
