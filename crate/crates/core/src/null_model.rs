//! Chung-Lu randomization through the incidence graph.

use alloc::vec::Vec;

use rand::Rng;

use crate::classify::Classifier;
use crate::counting::{self, CountVector, SampleConfig};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeIdx, Hypergraph, NodeId};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NullModelConfig {
    pub replicates: usize,
    pub seed: u64,
}

impl Default for NullModelConfig {
    fn default() -> Self {
        NullModelConfig { replicates: 5, seed: 0 }
    }
}

/// The `Σ|e|` (node, slot) pairs of one Chung-Lu draw: each node is chosen
/// proportionally to its degree and each slot proportionally to its
/// hyperedge's size. Repeated pairs are kept.
///
/// Picking a uniformly random incidence yields a node with probability
/// proportional to its degree; picking another yields a hyperedge with
/// probability proportional to its size.
pub fn chung_lu_incidences(h: &Hypergraph, seed: u64) -> Vec<(NodeId, EdgeIdx)> {
    let incidences = h.members();
    let total = incidences.len();
    let mut edge_of = Vec::with_capacity(total);
    for i in 0..h.num_edges() {
        edge_of.extend(core::iter::repeat_n(i as EdgeIdx, h.edge_range(i).len()));
    }
    let mut rng = rng::stream(seed, 0);
    (0..total)
        .map(|_| {
            let v = incidences[rng.gen_range(0..total)];
            (v, edge_of[rng.gen_range(0..total)])
        })
        .collect()
}

/// Turns each slot of [`chung_lu_incidences`] into a hyperedge. Empty slots
/// vanish, repeated members count once and identical hyperedges collapse.
pub fn randomize_chung_lu(h: &Hypergraph, seed: u64) -> Hypergraph {
    let mut slots: Vec<Vec<NodeId>> = alloc::vec![Vec::new(); h.num_edges()];
    for (v, slot) in chung_lu_incidences(h, seed) {
        slots[slot as usize].push(v);
    }
    Hypergraph::from_labeled_subset(h.labels(), slots).expect("at least one slot receives a node")
}

/// Mean counts over randomized replicates, plus each replicate's counts.
#[derive(Debug, Clone, PartialEq)]
pub struct NullCounts {
    pub mean: CountVector,
    pub replicates: Vec<CountVector>,
}

/// Randomizes `h` `cfg.replicates` times and counts each replicate with
/// `counting`. Replicate `n` is randomized and counted under seeds derived
/// from `(cfg.seed, n)`; `counting.seed` is ignored.
pub fn null_counts(
    h: &Hypergraph,
    cls: &Classifier,
    cfg: &NullModelConfig,
    counting: &SampleConfig,
) -> Result<NullCounts> {
    if cfg.replicates == 0 {
        return Err(Error::domain("replicates must be at least 1"));
    }
    let mut replicates = Vec::with_capacity(cfg.replicates);
    for n in 0..cfg.replicates as u64 {
        let randomized = randomize_chung_lu(h, rng::derive_seed(cfg.seed, 2 * n));
        let run = SampleConfig {
            seed: rng::derive_seed(cfg.seed, 2 * n + 1),
            ..counting.clone()
        };
        replicates.push(counting::count(&randomized, None, cls, &run)?);
    }
    let k = cfg.replicates as f64;
    let mut mean = CountVector {
        seed: Some(cfg.seed),
        ..replicates[0].clone()
    };
    for (t, slot) in mean.counts.iter_mut().enumerate() {
        *slot = replicates.iter().map(|r| r.counts[t]).sum::<f64>() / k;
    }
    let reps = cfg.replicates as u64;
    mean.num_edges = ((replicates.iter().map(|r| r.num_edges as u64).sum::<u64>() + reps / 2) / reps) as usize;
    mean.num_wedges = (replicates.iter().map(|r| r.num_wedges).sum::<u64>() + reps / 2) / reps;
    Ok(NullCounts { mean, replicates })
}
