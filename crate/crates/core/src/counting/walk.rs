//! Neighborhood walks shared by every counter. Each walk reports the triples
//! it visits, with their pairwise overlaps, through a callback.

use alloc::vec::Vec;

use crate::classify::Classifier;
use crate::hypergraph::{EdgeIdx, Hypergraph};
use crate::line_graph::LineGraph;

/// A connected triple `{i, j, k}` and its pairwise overlaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Triple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub w_ij: u32,
    pub w_jk: u32,
    pub w_ki: u32,
}

impl Triple {
    #[inline]
    pub fn classify(&self, h: &Hypergraph, cls: &Classifier) -> u32 {
        cls.classify_indexed(h, [self.i, self.j, self.k], [self.w_ij, self.w_jk, self.w_ki])
    }

    pub fn sorted(&self) -> [u32; 3] {
        let mut t = [self.i as u32, self.j as u32, self.k as u32];
        t.sort_unstable();
        t
    }
}

/// Per-worker dense scratch: overlap weights of one marked neighborhood plus
/// an epoch-stamped membership set for another.
#[derive(Debug, Clone)]
pub(crate) struct Walker {
    weight: Vec<u32>,
    stamp: Vec<u32>,
    epoch: u32,
}

impl Walker {
    pub fn new(num_edges: usize) -> Self {
        Walker {
            weight: alloc::vec![0; num_edges],
            stamp: alloc::vec![0; num_edges],
            epoch: 0,
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.stamp.iter_mut().for_each(|s| *s = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Exact counting row for `e_i`: every unordered pair `{e_j, e_k}` of
    /// `N_ei` such that `e_j, e_k` are disjoint or `i < min(j, k)`.
    pub fn exact_row(&mut self, lg: &LineGraph, i: usize, mut visit: impl FnMut(Triple)) {
        let ids = lg.neighbor_ids(i);
        let ws = lg.neighbor_weights(i);
        for a in 0..ids.len() {
            let (j, w_ij) = (ids[a] as usize, ws[a]);
            if a + 1 == ids.len() {
                break;
            }
            for (k, w) in lg.neighbors(j) {
                self.weight[k as usize] = w;
            }
            for b in a + 1..ids.len() {
                let k = ids[b] as usize;
                let w_jk = self.weight[k];
                if w_jk == 0 || i < j.min(k) {
                    visit(Triple {
                        i,
                        j,
                        k,
                        w_ij,
                        w_jk,
                        w_ki: ws[b],
                    });
                }
            }
            for &k in lg.neighbor_ids(j) {
                self.weight[k as usize] = 0;
            }
        }
    }

    /// Every instance containing `e_i`, once each: `e_j ∈ N_ei`, then
    /// `e_k ∈ (N_ei ∪ N_ej) \ {e_i, e_j}` with `e_k ∉ N_ei or j < k`.
    pub fn edge_walk(&mut self, lg: &LineGraph, i: usize, mut visit: impl FnMut(Triple)) {
        for (k, w) in lg.neighbors(i) {
            self.weight[k as usize] = w;
        }
        for (j, w_ij) in lg.neighbors(i) {
            let j = j as usize;
            let epoch = self.next_epoch();
            for (k, w_jk) in lg.neighbors(j) {
                let k = k as usize;
                if k == i {
                    continue;
                }
                let w_ki = self.weight[k];
                if w_ki > 0 {
                    self.stamp[k] = epoch;
                    if j > k {
                        continue;
                    }
                }
                visit(Triple {
                    i,
                    j,
                    k,
                    w_ij,
                    w_jk,
                    w_ki,
                });
            }
            for (k, w_ki) in lg.neighbors(i) {
                let k = k as usize;
                if k > j && self.stamp[k] != epoch {
                    visit(Triple {
                        i,
                        j,
                        k,
                        w_ij,
                        w_jk: 0,
                        w_ki,
                    });
                }
            }
        }
        for &k in lg.neighbor_ids(i) {
            self.weight[k as usize] = 0;
        }
    }

    /// Every `e_k ∈ (N_ei ∪ N_ej) \ {e_i, e_j}` once, for the hyperwedge
    /// `∧ij` with neighborhoods `ni` and `nj`.
    pub fn wedge<I, J>(&mut self, i: usize, j: usize, w_ij: u32, ni: I, nj: J, mut visit: impl FnMut(Triple))
    where
        I: Iterator<Item = (EdgeIdx, u32)> + Clone,
        J: Iterator<Item = (EdgeIdx, u32)>,
    {
        for (k, w) in ni.clone() {
            self.weight[k as usize] = w;
        }
        let epoch = self.next_epoch();
        for (k, w_jk) in nj {
            let k = k as usize;
            if k == i {
                continue;
            }
            let w_ki = self.weight[k];
            if w_ki > 0 {
                self.stamp[k] = epoch;
            }
            visit(Triple {
                i,
                j,
                k,
                w_ij,
                w_jk,
                w_ki,
            });
        }
        for (k, w_ki) in ni.clone() {
            let k = k as usize;
            if k != j && self.stamp[k] != epoch {
                visit(Triple {
                    i,
                    j,
                    k,
                    w_ij,
                    w_jk: 0,
                    w_ki,
                });
            }
        }
        for (k, _) in ni {
            self.weight[k as usize] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hg(edges: &[&[u64]]) -> Hypergraph {
        Hypergraph::from_labeled_edges(edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    fn collect(f: impl FnOnce(&mut Vec<[u32; 3]>)) -> Vec<[u32; 3]> {
        let mut out = Vec::new();
        f(&mut out);
        out.sort_unstable();
        out
    }

    #[test]
    fn star_walks() {
        let h = hg(&[&[0, 1], &[0, 2], &[0, 3], &[0, 4]]);
        let lg = LineGraph::build(&h, 1);
        let mut w = Walker::new(4);
        let exact = collect(|out| {
            for i in 0..4 {
                w.exact_row(&lg, i, |t| out.push(t.sorted()));
            }
        });
        assert_eq!(exact, alloc::vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        // Each hyperedge lies in three of the four instances.
        let via0 = collect(|out| w.edge_walk(&lg, 0, |t| out.push(t.sorted())));
        assert_eq!(via0, alloc::vec![[0, 1, 2], [0, 1, 3], [0, 2, 3]]);
        let via_wedge = collect(|out| w.wedge(1, 3, 1, lg.neighbors(1), lg.neighbors(3), |t| out.push(t.sorted())));
        assert_eq!(via_wedge, alloc::vec![[0, 1, 3], [1, 2, 3]]);
    }

    #[test]
    fn chain_walks_report_overlaps() {
        let h = hg(&[&[0, 1], &[1, 2], &[2, 3]]);
        let lg = LineGraph::build(&h, 1);
        let mut w = Walker::new(3);
        let mut seen = Vec::new();
        w.edge_walk(&lg, 0, |t| seen.push(t));
        assert_eq!(seen.len(), 1);
        let t = seen[0];
        assert_eq!((t.i, t.j, t.k, t.w_ij, t.w_jk, t.w_ki), (0, 1, 2, 1, 1, 0));
    }
}
