use core::fmt;

use super::walk::Walker;
use super::{merge_tallies, new_tally, scaled, Algorithm, CountVector};
use crate::classify::Classifier;
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;
use crate::parallel;

/// Counts every instance exactly once.
///
/// For each `e_i`, every unordered pair `{e_j, e_k}` of its neighbors forms
/// an instance; a pair that also overlaps is a closed triple reachable from
/// all three of its members and is kept only from its smallest index.
pub fn count_exact(h: &Hypergraph, lg: &LineGraph, cls: &Classifier, workers: usize) -> CountVector {
    let m = h.num_edges();
    let parts = parallel::run_dynamic(
        m,
        workers,
        16,
        || (Walker::new(m), new_tally(cls)),
        |(walker, tally), i| {
            walker.exact_row(lg, i, |t| {
                tally[t.classify(h, cls) as usize] += 1;
            });
        },
    );
    let tally = merge_tallies(parts.into_iter().map(|(_, t)| t), cls.num_motifs() + 1);
    debug_assert_eq!(tally[0], 0);
    CountVector {
        counts: scaled(&tally, |_| 1.0),
        num_edges: m,
        num_wedges: lg.wedge_count() as u64,
        ..CountVector::zeros(cls, Algorithm::Exact)
    }
}

/// A sink error together with how many instances were delivered before it.
#[derive(Debug, Clone, PartialEq)]
pub struct Aborted<E> {
    pub emitted: u64,
    pub error: E,
}

impl<E: fmt::Display> fmt::Display for Aborted<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration aborted after {} instances: {}",
            self.emitted, self.error
        )
    }
}

#[cfg(feature = "std")]
impl<E: fmt::Debug + fmt::Display> std::error::Error for Aborted<E> {}

/// Calls `sink(i, j, k, motif_id)` once per instance, with `i < j < k`, in
/// the same order as a single-threaded [`count_exact`]. Returns the number of
/// instances.
pub fn enumerate_instances<E>(
    h: &Hypergraph,
    lg: &LineGraph,
    cls: &Classifier,
    mut sink: impl FnMut(u32, u32, u32, u32) -> Result<(), E>,
) -> Result<u64, Aborted<E>> {
    let mut walker = Walker::new(h.num_edges());
    let mut emitted = 0u64;
    let mut failure = None;
    for i in 0..h.num_edges() {
        walker.exact_row(lg, i, |t| {
            if failure.is_some() {
                return;
            }
            let id = t.classify(h, cls);
            let [a, b, c] = t.sorted();
            match sink(a, b, c, id) {
                Ok(()) => emitted += 1,
                Err(e) => failure = Some(e),
            }
        });
        if let Some(error) = failure {
            return Err(Aborted { emitted, error });
        }
    }
    Ok(emitted)
}
