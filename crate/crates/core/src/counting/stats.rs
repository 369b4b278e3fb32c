//! Instance-pair statistics and the closed-form variance and sample-size
//! bounds of the two sampling estimators.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::exact::enumerate_instances;
use super::walk::Walker;
use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;
use crate::{math, parallel};

/// Default refusal threshold for [`pair_overlap_stats`], in instances.
pub const DEFAULT_INSTANCE_CAP: usize = 100_000;

/// Unordered pairs of same-motif instances by what they share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    /// `p[l]`: pairs sharing exactly `l` hyperedges.
    pub p: [u64; 3],
    /// `q[n]`: pairs sharing exactly `n` hyperwedges.
    pub q: [u64; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOverlapStats {
    /// Exact instance count per motif (index `id - 1`).
    pub instances: Vec<u64>,
    pub pairs: Vec<PairCounts>,
}

impl PairOverlapStats {
    pub fn instances(&self, id: u32) -> u64 {
        self.instances[id as usize - 1]
    }

    pub fn get(&self, id: u32) -> &PairCounts {
        &self.pairs[id as usize - 1]
    }
}

fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Enumerates all instances (refusing above `cap`) and tallies, per motif,
/// instance pairs by shared hyperedges and shared hyperwedges.
///
/// Two distinct instances share at most two hyperedges, and share a
/// hyperwedge exactly when those two overlap, so per-hyperedge and
/// per-hyperedge-pair incidence counts determine every class.
pub fn pair_overlap_stats(h: &Hypergraph, lg: &LineGraph, cls: &Classifier, cap: usize) -> Result<PairOverlapStats> {
    let mut found: Vec<(u32, [u32; 3])> = Vec::new();
    enumerate_instances(h, lg, cls, |a, b, c, id| {
        if found.len() == cap {
            return Err(());
        }
        found.push((id, [a, b, c]));
        Ok(())
    })
    .map_err(|_| Error::CapExceeded { cap })?;
    found.sort_unstable();

    let n = cls.num_motifs();
    let mut instances = alloc::vec![0u64; n];
    let mut pairs = alloc::vec![PairCounts::default(); n];
    for group in found.chunk_by(|x, y| x.0 == y.0) {
        let id = group[0].0 as usize;
        let mut per_edge: HashMap<u32, u64> = HashMap::new();
        let mut per_pair: HashMap<(u32, u32), u64> = HashMap::new();
        for (_, [a, b, c]) in group {
            for e in [a, b, c] {
                *per_edge.entry(*e).or_default() += 1;
            }
            for pair in [(*a, *b), (*a, *c), (*b, *c)] {
                *per_pair.entry(pair).or_default() += 1;
            }
        }
        let m = group.len() as u64;
        let s1: u64 = per_edge.values().map(|&c| choose2(c)).sum();
        let p2: u64 = per_pair.values().map(|&c| choose2(c)).sum();
        let q1: u64 = per_pair
            .iter()
            .filter(|((a, b), _)| lg.weight(*a as usize, *b as usize) > 0)
            .map(|(_, &c)| choose2(c))
            .sum();
        let p1 = s1 - 2 * p2;
        instances[id - 1] = m;
        pairs[id - 1] = PairCounts {
            p: [choose2(m) - p1 - p2, p1, p2],
            q: [choose2(m) - q1, q1],
        };
    }
    Ok(PairOverlapStats { instances, pairs })
}

/// Which estimator a variance or sample-size bound refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    /// Hyperedge sampling; population `|E|`.
    Edge,
    /// Hyperwedge sampling; population `|∧|`.
    Wedge { open: bool },
}

/// Closed-form variance of one motif's estimate.
///
/// `pairs` holds unordered pair counts; the covariance sums run over ordered
/// pairs of distinct instances, hence the factor 2.
pub fn estimator_variance(m: u64, pairs: &PairCounts, samples: u64, population: u64, est: Estimator) -> Result<f64> {
    if samples == 0 {
        return Err(Error::domain("sample count must be at least 1"));
    }
    let total = choose2(m);
    if pairs.p.iter().sum::<u64>() != total || pairs.q.iter().sum::<u64>() != total || pairs.q[1] > pairs.p[2] {
        return Err(Error::domain(
            "pair statistics are inconsistent with the instance count",
        ));
    }
    if m == 0 {
        return Ok(0.0);
    }
    let (m, n, x) = (m as f64, samples as f64, population as f64);
    let ordered = |c: u64| 2.0 * c as f64;
    Ok(match est {
        Estimator::Edge => {
            let cov: f64 = (0..3).map(|l| ordered(pairs.p[l]) * (l as f64 * x - 9.0)).sum();
            m * (x - 3.0) / (3.0 * n) + cov / (9.0 * n)
        }
        Estimator::Wedge { open: false } => {
            let cov: f64 = (0..2).map(|k| ordered(pairs.q[k]) * (k as f64 * x - 9.0)).sum();
            m * (x - 3.0) / (3.0 * n) + cov / (9.0 * n)
        }
        Estimator::Wedge { open: true } => {
            let cov: f64 = (0..2).map(|k| ordered(pairs.q[k]) * (k as f64 * x - 4.0)).sum();
            m * (x - 2.0) / (2.0 * n) + cov / (4.0 * n)
        }
    })
}

/// Samples sufficient for `Pr(|estimate − M| ≥ εM) ≤ δ`, as `⌈bound⌉ + 1`.
///
/// `d_max` is the largest line-graph degree among hyperedges that appear in
/// an instance of the motif; `population` is `|E|` or `|∧|`.
pub fn recommend_samples(eps: f64, delta: f64, d_max: u64, m: u64, population: u64, est: Estimator) -> Result<u64> {
    if !(eps > 0.0 && delta > 0.0) {
        return Err(Error::domain("epsilon and delta must be positive"));
    }
    if m == 0 {
        return Err(Error::domain("bound undefined for a motif with no instances"));
    }
    let (d, m, x) = (d_max as f64, m as f64, population as f64);
    let (constant, ratio) = match est {
        Estimator::Edge => (18.0, x * d * d / m),
        Estimator::Wedge { open: false } => (18.0, x * d / m),
        Estimator::Wedge { open: true } => (8.0, x * d / m),
    };
    let bound = ratio * ratio * math::ln(2.0 / delta) / (constant * eps * eps);
    Ok(math::ceil(bound) as u64 + 1)
}

/// Per motif (index `id - 1`), the largest `|N_e|` over hyperedges `e` that
/// belong to at least one instance; 0 for motifs with no instances.
pub fn max_degree_per_motif(h: &Hypergraph, lg: &LineGraph, cls: &Classifier, workers: usize) -> Vec<u32> {
    let m = h.num_edges();
    let n = cls.num_motifs();
    let parts = parallel::run_dynamic(
        m,
        workers,
        16,
        || (Walker::new(m), alloc::vec![0u32; n + 1]),
        |(walker, best), e| {
            let d = lg.degree(e) as u32;
            walker.edge_walk(lg, e, |t| {
                let id = t.classify(h, cls) as usize;
                best[id] = best[id].max(d);
            });
        },
    );
    let mut out = alloc::vec![0u32; n];
    for (_, best) in parts {
        for (o, b) in out.iter_mut().zip(&best[1..]) {
            *o = (*o).max(*b);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::StateMap;

    fn hg(edges: &[&[u64]]) -> Hypergraph {
        Hypergraph::from_labeled_edges(edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn star_pairs_share_two_hyperedges() {
        let h = hg(&[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]);
        let lg = LineGraph::build(&h, 1);
        let cls = Classifier::new(StateMap::Binary);
        let stats = pair_overlap_stats(&h, &lg, &cls, DEFAULT_INSTANCE_CAP).unwrap();
        let id = (1..=26).find(|&t| stats.instances(t) > 0).unwrap();
        assert_eq!(stats.instances(id), 4);
        assert_eq!(stats.get(id).p, [0, 0, 6]);
        assert_eq!(stats.get(id).q, [0, 6]);
        // Both estimators are deterministic on the star.
        let pc = *stats.get(id);
        assert_eq!(estimator_variance(4, &pc, 7, 4, Estimator::Edge).unwrap(), 0.0);
        assert_eq!(
            estimator_variance(4, &pc, 7, 6, Estimator::Wedge { open: false }).unwrap(),
            0.0
        );
    }

    #[test]
    fn disjoint_triangles_share_nothing() {
        let h = hg(&[&[0, 1], &[1, 2], &[2, 0], &[10, 11], &[11, 12], &[12, 10]]);
        let lg = LineGraph::build(&h, 1);
        let cls = Classifier::new(StateMap::Binary);
        let stats = pair_overlap_stats(&h, &lg, &cls, 10).unwrap();
        let id = (1..=26).find(|&t| stats.instances(t) > 0).unwrap();
        assert_eq!(stats.instances(id), 2);
        assert_eq!(stats.get(id).p, [1, 0, 0]);
        assert!(pair_overlap_stats(&h, &lg, &cls, 1).is_err());
    }

    #[test]
    fn variance_examples() {
        let none = PairCounts::default();
        assert_eq!(estimator_variance(0, &none, 1, 5, Estimator::Edge).unwrap(), 0.0);
        let v = estimator_variance(1, &none, 1, 5, Estimator::Edge).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-15);
        let bad = PairCounts {
            p: [1, 0, 0],
            q: [1, 0],
        };
        assert!(estimator_variance(1, &bad, 1, 5, Estimator::Edge).is_err());
    }

    #[test]
    fn sample_bound_examples() {
        let closed = Estimator::Wedge { open: false };
        let got = recommend_samples(0.1, 0.1, 2, 10, 100, closed).unwrap();
        let expected = ((1.0 / 0.18) * 400.0 * 20f64.ln()).ceil() as u64 + 1;
        assert_eq!(got, expected);
        assert!(recommend_samples(0.1, 0.1, 2, 0, 100, closed).is_err());
    }
}
