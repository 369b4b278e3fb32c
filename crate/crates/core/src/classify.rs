//! Mapping a concrete hyperedge triple to its motif id.

use alloc::vec::Vec;

use crate::catalog::MotifCatalog;
use crate::error::{Error, Result};
use crate::hypergraph::{intersection_size, Hypergraph, NodeId};
use crate::line_graph::LineGraph;

/// Cardinalities of the seven regions of a triple `(e_i, e_j, e_k)`:
/// `[i only, j only, k only, i∩j only, j∩k only, k∩i only, i∩j∩k]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegionVector(pub [usize; 7]);

impl RegionVector {
    /// Computes the regions from the three sizes, the pairwise overlaps, and
    /// the triple overlap.
    #[inline]
    pub fn from_overlaps(sizes: [usize; 3], w_ij: usize, w_jk: usize, w_ki: usize, triple: usize) -> Self {
        let [si, sj, sk] = sizes;
        RegionVector([
            si + triple - w_ij - w_ki,
            sj + triple - w_ij - w_jk,
            sk + triple - w_ki - w_jk,
            w_ij - triple,
            w_jk - triple,
            w_ki - triple,
            triple,
        ])
    }

    /// Size of the hyperedge at position `a` (0, 1, 2) recovered from its regions.
    pub fn edge_size(&self, a: usize) -> usize {
        let c = &self.0;
        match a {
            0 => c[0] + c[3] + c[5] + c[6],
            1 => c[1] + c[3] + c[4] + c[6],
            2 => c[2] + c[4] + c[5] + c[6],
            _ => panic!("triple position out of range"),
        }
    }

    /// Every pair of the three hyperedges overlaps.
    pub fn is_closed(&self) -> bool {
        let c = &self.0;
        c[3] + c[6] > 0 && c[4] + c[6] > 0 && c[5] + c[6] > 0
    }

    pub fn is_connected(&self) -> bool {
        let c = &self.0;
        let adjacent = [c[3] + c[6] > 0, c[4] + c[6] > 0, c[5] + c[6] > 0];
        adjacent.iter().filter(|&&a| a).count() >= 2
    }
}

/// `|a ∩ b ∩ c|` by scanning the smallest set against the other two.
pub(crate) fn triple_intersection(a: &[NodeId], b: &[NodeId], c: &[NodeId]) -> usize {
    let (small, x, y) = if a.len() <= b.len() && a.len() <= c.len() {
        (a, b, c)
    } else if b.len() <= c.len() {
        (b, a, c)
    } else {
        (c, a, b)
    };
    small
        .iter()
        .filter(|v| x.binary_search(v).is_ok() && y.binary_search(v).is_ok())
        .count()
}

/// Region cardinalities of three distinct sorted hyperedges given their
/// pairwise overlaps.
pub fn region_cardinalities(
    e_i: &[NodeId],
    e_j: &[NodeId],
    e_k: &[NodeId],
    w_ij: usize,
    w_jk: usize,
    w_ki: usize,
) -> Result<RegionVector> {
    if e_i == e_j || e_j == e_k || e_k == e_i {
        return Err(Error::domain("triple contains duplicate hyperedges"));
    }
    let triple = if w_ij > 0 && w_jk > 0 && w_ki > 0 {
        triple_intersection(e_i, e_j, e_k)
    } else {
        0
    };
    Ok(RegionVector::from_overlaps(
        [e_i.len(), e_j.len(), e_k.len()],
        w_ij,
        w_jk,
        w_ki,
        triple,
    ))
}

/// How a summary statistic over the covering hyperedges is formed in the
/// hyperedge-ratio state map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Aggregate {
    Mean,
    Max,
    Min,
}

/// Region → state rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateMap {
    /// Empty / nonempty; 26 motifs.
    Binary,
    /// Empty, `1..=theta`, more than `theta`; 431 motifs.
    Ternary { theta: usize },
    /// Nonempty regions split on `c / |e_i ∪ e_j ∪ e_k| <= p`.
    MotifRatio { p: f64 },
    /// Nonempty regions split on `agg(c / |e|) <= p` over the hyperedges `e`
    /// covering the region.
    HyperedgeRatio { p: f64, agg: Aggregate },
}

impl StateMap {
    pub fn num_states(&self) -> usize {
        match self {
            StateMap::Binary => 2,
            _ => 3,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            StateMap::Ternary { theta } if theta < 1 => Err(Error::domain("theta must be at least 1")),
            StateMap::MotifRatio { p } | StateMap::HyperedgeRatio { p, .. } if !(p > 0.0 && p < 1.0) => {
                Err(Error::domain("ratio threshold p must lie in (0, 1)"))
            }
            _ => Ok(()),
        }
    }

    #[inline]
    fn states(&self, r: &RegionVector) -> [u8; 7] {
        let c = &r.0;
        let mut out = [0u8; 7];
        match *self {
            StateMap::Binary => {
                for (o, &x) in out.iter_mut().zip(c) {
                    *o = u8::from(x > 0);
                }
            }
            StateMap::Ternary { theta } => {
                for (o, &x) in out.iter_mut().zip(c) {
                    *o = if x == 0 {
                        0
                    } else if x <= theta {
                        1
                    } else {
                        2
                    };
                }
            }
            StateMap::MotifRatio { p } => {
                let n: usize = c.iter().sum();
                for (o, &x) in out.iter_mut().zip(c) {
                    *o = if x == 0 {
                        0
                    } else if x as f64 / n as f64 <= p {
                        1
                    } else {
                        2
                    };
                }
            }
            StateMap::HyperedgeRatio { p, agg } => {
                let sizes = [r.edge_size(0), r.edge_size(1), r.edge_size(2)];
                const COVER: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[1, 2], &[2, 0], &[0, 1, 2]];
                for (pos, o) in out.iter_mut().enumerate() {
                    let x = c[pos];
                    if x == 0 {
                        continue;
                    }
                    let ratios = COVER[pos].iter().map(|&a| x as f64 / sizes[a] as f64);
                    let value = match agg {
                        Aggregate::Mean => ratios.sum::<f64>() / COVER[pos].len() as f64,
                        Aggregate::Max => ratios.fold(f64::MIN, f64::max),
                        Aggregate::Min => ratios.fold(f64::MAX, f64::min),
                    };
                    *o = if value <= p { 1 } else { 2 };
                }
            }
        }
        out
    }
}

/// A state map plus the matching catalog of three-hyperedge motifs.
#[derive(Debug, Clone)]
pub struct Classifier {
    map: StateMap,
    catalog: MotifCatalog,
}

impl Classifier {
    /// Panics if `map` carries an out-of-range parameter; see [`Classifier::try_new`].
    pub fn new(map: StateMap) -> Self {
        Self::try_new(map).expect("invalid state map")
    }

    pub fn try_new(map: StateMap) -> Result<Self> {
        map.validate()?;
        let catalog = MotifCatalog::enumerate(3, map.num_states())?;
        Ok(Classifier { map, catalog })
    }

    pub fn state_map(&self) -> StateMap {
        self.map
    }

    pub fn catalog(&self) -> &MotifCatalog {
        &self.catalog
    }

    pub fn num_motifs(&self) -> usize {
        self.catalog.len()
    }

    #[inline]
    pub fn is_open(&self, id: u32) -> bool {
        self.catalog.is_open(id)
    }

    /// Motif id of a region vector; 0 if it matches no valid pattern.
    #[inline]
    pub fn id_of_regions(&self, r: &RegionVector) -> u32 {
        let states = self.map.states(r);
        let s = self.catalog.num_states();
        let code = states.iter().fold(0usize, |acc, &x| acc * s + x as usize);
        self.catalog.id_of_code(code)
    }

    /// Hot-path classification of hyperedges `i, j, k` of `h` with known
    /// pairwise overlaps. The caller guarantees a connected triple.
    #[inline]
    pub(crate) fn classify_indexed(&self, h: &Hypergraph, [i, j, k]: [usize; 3], [w_ij, w_jk, w_ki]: [u32; 3]) -> u32 {
        let (a, b, c) = (h.edge(i), h.edge(j), h.edge(k));
        let triple = if w_ij > 0 && w_jk > 0 && w_ki > 0 {
            triple_intersection(a, b, c)
        } else {
            0
        };
        let r = RegionVector::from_overlaps(
            [a.len(), b.len(), c.len()],
            w_ij as usize,
            w_jk as usize,
            w_ki as usize,
            triple,
        );
        let id = self.id_of_regions(&r);
        debug_assert!(id != 0, "unclassifiable triple {i},{j},{k}");
        id
    }

    /// Classifies three sorted, duplicate-free node sets.
    pub fn classify_sets(&self, e_i: &[NodeId], e_j: &[NodeId], e_k: &[NodeId]) -> Result<u32> {
        let w_ij = intersection_size(e_i, e_j);
        let w_jk = intersection_size(e_j, e_k);
        let w_ki = intersection_size(e_k, e_i);
        let r = region_cardinalities(e_i, e_j, e_k, w_ij, w_jk, w_ki)?;
        if !r.is_connected() {
            return Err(Error::domain("triple is not connected"));
        }
        match self.id_of_regions(&r) {
            0 => Err(Error::domain("triple matches no motif")),
            id => Ok(id),
        }
    }

    /// Classifies hyperedges `i, j, k` of `h`, validating the triple.
    pub fn classify(&self, h: &Hypergraph, lg: &LineGraph, i: usize, j: usize, k: usize) -> Result<u32> {
        for x in [i, j, k] {
            h.try_edge(x)?;
        }
        if i == j || j == k || k == i {
            return Err(Error::domain("triple contains duplicate hyperedges"));
        }
        let (w_ij, w_jk, w_ki) = (lg.weight(i, j), lg.weight(j, k), lg.weight(k, i));
        let adjacent = [w_ij, w_jk, w_ki].iter().filter(|&&w| w > 0).count();
        if adjacent < 2 {
            return Err(Error::domain("triple is not connected"));
        }
        Ok(self.classify_indexed(h, [i, j, k], [w_ij, w_jk, w_ki]))
    }

    /// For each id, the binary motif id it refines. Identity for binary.
    pub fn binary_refinement(&self) -> Vec<u32> {
        if self.catalog.num_states() == 2 {
            return self.catalog.ids().collect();
        }
        let binary = MotifCatalog::enumerate(3, 2).expect("binary catalog");
        self.catalog
            .refinement_map(&binary)
            .expect("ternary patterns collapse to valid binary ones")
    }
}
