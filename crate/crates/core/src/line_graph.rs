//! The weighted line graph: hyperedges as vertices, one edge per hyperwedge
//! (pair of overlapping hyperedges) weighted by the overlap size.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeIdx, Hypergraph};
use crate::parallel;

/// Neighbors of one hyperedge as `(index, overlap)` pairs sorted by index.
pub type NeighborMap = Vec<(EdgeIdx, u32)>;

/// An unordered pair of overlapping hyperedges, `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperwedge {
    pub i: EdgeIdx,
    pub j: EdgeIdx,
    pub weight: u32,
}

/// Line graph in CSR form; every adjacency list is sorted by neighbor index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGraph {
    offsets: Vec<usize>,
    neighbors: Vec<EdgeIdx>,
    weights: Vec<u32>,
}

impl LineGraph {
    /// Builds the line graph using `workers` threads.
    ///
    /// Each hyperedge `e_i` walks the incidence lists of its members and
    /// tallies every `e_j` with `j > i`; the upper-triangle lists are then
    /// mirrored into full adjacency. Output does not depend on `workers`.
    pub fn build(h: &Hypergraph, workers: usize) -> Self {
        let m = h.num_edges();
        let upper: Vec<Vec<(usize, NeighborMap)>> = parallel::run_dynamic(
            m,
            workers,
            64,
            || (Vec::new(), NeighborScratch::new(m)),
            |(out, scratch): &mut (Vec<(usize, NeighborMap)>, NeighborScratch), i| {
                let mut row = scratch.collect(h, i, |j| j > i);
                row.shrink_to_fit();
                out.push((i, row));
            },
        )
        .into_iter()
        .map(|(out, _)| out)
        .collect();

        let mut degree = alloc::vec![0usize; m];
        for (i, row) in upper.iter().flatten() {
            degree[*i] += row.len();
            for &(j, _) in row {
                degree[j as usize] += 1;
            }
        }
        let mut offsets = Vec::with_capacity(m + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let total = *offsets.last().unwrap();
        let mut neighbors = alloc::vec![0; total];
        let mut weights = alloc::vec![0; total];
        let mut fill = offsets[..m].to_vec();

        // Rows sorted by i: lower entries (j < i) land first in ascending
        // order, followed by upper entries, keeping each list sorted.
        let mut rows: Vec<&(usize, NeighborMap)> = upper.iter().flatten().collect();
        rows.sort_unstable_by_key(|(i, _)| *i);
        for (i, row) in &rows {
            for &(j, w) in row {
                let ju = j as usize;
                neighbors[fill[ju]] = *i as EdgeIdx;
                weights[fill[ju]] = w;
                fill[ju] += 1;
            }
        }
        for (i, row) in &rows {
            for &(j, w) in row {
                neighbors[fill[*i]] = j;
                weights[fill[*i]] = w;
                fill[*i] += 1;
            }
        }

        LineGraph {
            offsets,
            neighbors,
            weights,
        }
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.offsets.len() - 1
    }

    /// |∧|, the number of hyperwedges.
    #[inline]
    pub fn wedge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// |N_ei|.
    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.num_vertices()).map(|i| self.degree(i) as u32).collect()
    }

    #[inline]
    pub fn neighbor_ids(&self, i: usize) -> &[EdgeIdx] {
        &self.neighbors[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn neighbor_weights(&self, i: usize) -> &[u32] {
        &self.weights[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn neighbors(&self, i: usize) -> impl ExactSizeIterator<Item = (EdgeIdx, u32)> + Clone + '_ {
        self.neighbor_ids(i)
            .iter()
            .copied()
            .zip(self.neighbor_weights(i).iter().copied())
    }

    pub fn neighbor_map(&self, i: usize) -> NeighborMap {
        self.neighbors(i).collect()
    }

    /// ω(∧ij), or 0 when the hyperedges do not overlap.
    pub fn weight(&self, i: usize, j: usize) -> u32 {
        match self.neighbor_ids(i).binary_search(&(j as EdgeIdx)) {
            Ok(pos) => self.neighbor_weights(i)[pos],
            Err(_) => 0,
        }
    }

    /// Every hyperwedge once, ordered by `(i, j)`.
    pub fn wedges(&self) -> impl Iterator<Item = Hyperwedge> + '_ {
        (0..self.num_vertices()).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&(j, _)| j as usize > i)
                .map(move |(j, weight)| Hyperwedge {
                    i: i as EdgeIdx,
                    j,
                    weight,
                })
        })
    }

    /// Prefix sums of degrees; `offsets()[i]..offsets()[i + 1]` spans `N_ei`.
    pub(crate) fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// Σ over hyperwedges of |e_i ∩ e_j|, the work done by [`LineGraph::build`].
    pub fn overlap_mass(&self) -> u64 {
        self.wedges().map(|w| u64::from(w.weight)).sum()
    }
}

/// Neighbors of hyperedge `i` computed from incidence lists alone.
pub fn hyperedge_neighbors(h: &Hypergraph, i: usize) -> Result<NeighborMap> {
    if i >= h.num_edges() {
        return Err(Error::EdgeOutOfRange {
            edge: i,
            len: h.num_edges(),
        });
    }
    Ok(NeighborScratch::new(h.num_edges()).neighbors(h, i))
}

/// Reusable tally buffer for neighbor computation; one per worker.
#[derive(Debug, Clone)]
pub struct NeighborScratch {
    tally: Vec<u32>,
    touched: Vec<EdgeIdx>,
}

impl NeighborScratch {
    pub fn new(num_edges: usize) -> Self {
        NeighborScratch {
            tally: alloc::vec![0; num_edges],
            touched: Vec::new(),
        }
    }

    /// Full neighbor map of `e_i`.
    pub fn neighbors(&mut self, h: &Hypergraph, i: usize) -> NeighborMap {
        self.collect(h, i, |j| j != i)
    }

    /// |N_ei| without materializing the map.
    pub fn degree(&mut self, h: &Hypergraph, i: usize) -> usize {
        self.tally_into(h, i, |j| j != i);
        let d = self.touched.len();
        for &j in &self.touched {
            self.tally[j as usize] = 0;
        }
        self.touched.clear();
        d
    }

    fn collect(&mut self, h: &Hypergraph, i: usize, keep: impl Fn(usize) -> bool) -> NeighborMap {
        self.tally_into(h, i, keep);
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &j in &self.touched {
            out.push((j, self.tally[j as usize]));
            self.tally[j as usize] = 0;
        }
        self.touched.clear();
        out
    }

    fn tally_into(&mut self, h: &Hypergraph, i: usize, keep: impl Fn(usize) -> bool) {
        for &v in h.edge(i) {
            for &j in h.incident(v) {
                if !keep(j as usize) {
                    continue;
                }
                let slot = &mut self.tally[j as usize];
                if *slot == 0 {
                    self.touched.push(j);
                }
                *slot += 1;
            }
        }
    }
}
