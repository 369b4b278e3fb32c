use rand::Rng;

use super::walk::Walker;
use super::{merge_tallies, new_tally, scaled, Algorithm, CountVector};
use crate::classify::Classifier;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;
use crate::{parallel, rng};

/// Hyperedge-sampling estimator.
///
/// Draws `s` hyperedges uniformly with replacement and counts every instance
/// containing each draw; the tallies are scaled by `|E| / 3s`.
pub fn count_sample_hyperedge(
    h: &Hypergraph,
    lg: &LineGraph,
    cls: &Classifier,
    s: u64,
    seed: u64,
    workers: usize,
) -> Result<CountVector> {
    if s == 0 {
        return Err(Error::domain("sample count s must be at least 1"));
    }
    let m = h.num_edges();
    if m < 3 {
        return Err(Error::domain("hyperedge sampling needs at least 3 hyperedges"));
    }
    let parts = parallel::run_partitioned(s as usize, workers, |_, range| {
        let mut walker = Walker::new(m);
        let mut tally = new_tally(cls);
        for n in range {
            let i = rng::stream(seed, n as u64).gen_range(0..m);
            walker.edge_walk(lg, i, |t| {
                tally[t.classify(h, cls) as usize] += 1;
            });
        }
        tally
    });
    let tally = merge_tallies(parts, cls.num_motifs() + 1);
    let factor = m as f64 / (3.0 * s as f64);
    Ok(CountVector {
        counts: scaled(&tally, |_| factor),
        num_edges: m,
        num_wedges: lg.wedge_count() as u64,
        samples: s,
        seed: Some(seed),
        ..CountVector::zeros(cls, Algorithm::EdgeSample)
    })
}

/// Hyperwedge-sampling estimator.
///
/// Draws `r` hyperwedges uniformly with replacement and counts every instance
/// containing each draw; open motifs are scaled by `|∧| / 2r`, closed ones by
/// `|∧| / 3r`.
pub fn count_sample_hyperwedge(
    h: &Hypergraph,
    lg: &LineGraph,
    cls: &Classifier,
    r: u64,
    seed: u64,
    workers: usize,
) -> Result<CountVector> {
    if r == 0 {
        return Err(Error::domain("sample count r must be at least 1"));
    }
    let m = h.num_edges();
    let wedges = lg.wedge_count() as u64;
    let mut out = CountVector {
        num_edges: m,
        num_wedges: wedges,
        samples: r,
        seed: Some(seed),
        ..CountVector::zeros(cls, Algorithm::WedgeSample)
    };
    if wedges == 0 {
        log::warn!("hypergraph has no hyperwedges; all counts are zero");
        return Ok(out);
    }
    let prefix = lg.offsets();
    let parts = parallel::run_partitioned(r as usize, workers, |_, range| {
        let mut walker = Walker::new(m);
        let mut tally = new_tally(cls);
        for n in range {
            let (i, o) = draw_wedge(seed, n as u64, prefix);
            let j = lg.neighbor_ids(i)[o] as usize;
            let w_ij = lg.neighbor_weights(i)[o];
            walker.wedge(i, j, w_ij, lg.neighbors(i), lg.neighbors(j), |t| {
                tally[t.classify(h, cls) as usize] += 1;
            });
        }
        tally
    });
    let tally = merge_tallies(parts, cls.num_motifs() + 1);
    out.counts = wedge_scaled(&tally, cls, wedges, r);
    Ok(out)
}

pub(crate) fn wedge_scaled(tally: &[u64], cls: &Classifier, wedges: u64, r: u64) -> alloc::vec::Vec<f64> {
    let open = wedges as f64 / (2.0 * r as f64);
    let closed = wedges as f64 / (3.0 * r as f64);
    scaled(tally, |id| if cls.is_open(id) { open } else { closed })
}

/// Sample `n` as `(e_i, position of e_j in N_ei)`. `prefix` holds degree
/// prefix sums, so each ordered pair, and hence each hyperwedge, is equally
/// likely.
#[inline]
pub(crate) fn draw_wedge(seed: u64, n: u64, prefix: &[usize]) -> (usize, usize) {
    let total = *prefix.last().unwrap() as u64;
    let u = rng::stream(seed, n).gen_range(0..total) as usize;
    let i = prefix.partition_point(|&p| p <= u) - 1;
    (i, u - prefix[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::StateMap;
    use crate::counting::count_exact;

    fn hg(edges: &[&[u64]]) -> Hypergraph {
        Hypergraph::from_labeled_edges(edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    #[test]
    fn draw_wedge_skips_isolated_edges() {
        // Degrees 2, 0, 1, 1.
        let prefix = [0usize, 2, 2, 3, 4];
        for n in 0..200 {
            let (i, o) = draw_wedge(3, n, &prefix);
            assert!(i != 1);
            assert!(o < prefix[i + 1] - prefix[i]);
        }
    }

    #[test]
    fn star_estimates_are_exact() {
        // Every hyperedge lies in 3 of the 4 instances and every hyperwedge
        // in 2, so both estimators are deterministic.
        let h = hg(&[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]);
        let lg = LineGraph::build(&h, 1);
        let cls = Classifier::new(StateMap::Binary);
        let exact = count_exact(&h, &lg, &cls, 1);
        for seed in 0..5 {
            let e = count_sample_hyperedge(&h, &lg, &cls, 3, seed, 2).unwrap();
            let w = count_sample_hyperwedge(&h, &lg, &cls, 5, seed, 2).unwrap();
            for id in cls.catalog().ids() {
                assert!((e.get(id) - exact.get(id)).abs() < 1e-12);
                assert!((w.get(id) - exact.get(id)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let cls = Classifier::new(StateMap::Binary);
        let h = hg(&[&[0, 1], &[1, 2]]);
        let lg = LineGraph::build(&h, 1);
        assert!(count_sample_hyperedge(&h, &lg, &cls, 5, 0, 1).is_err());
        assert!(count_sample_hyperwedge(&h, &lg, &cls, 0, 0, 1).is_err());
        let h = hg(&[&[0], &[1], &[2]]);
        let lg = LineGraph::build(&h, 1);
        let w = count_sample_hyperwedge(&h, &lg, &cls, 10, 0, 1).unwrap();
        assert_eq!(w.total(), 0.0);
        let e = count_sample_hyperedge(&h, &lg, &cls, 10, 0, 1).unwrap();
        assert_eq!(e.total(), 0.0);
    }

    #[test]
    fn results_do_not_depend_on_workers() {
        let h = hg(&[&[0, 1, 2], &[1, 2, 3], &[3, 4], &[4, 5, 0], &[2, 5], &[6, 0, 3]]);
        let lg = LineGraph::build(&h, 1);
        let cls = Classifier::new(StateMap::Ternary { theta: 1 });
        let a = count_sample_hyperwedge(&h, &lg, &cls, 40, 11, 1).unwrap();
        let b = count_sample_hyperwedge(&h, &lg, &cls, 40, 11, 3).unwrap();
        assert_eq!(a, b);
        let a = count_sample_hyperedge(&h, &lg, &cls, 40, 11, 1).unwrap();
        let b = count_sample_hyperedge(&h, &lg, &cls, 40, 11, 4).unwrap();
        assert_eq!(a, b);
    }
}
