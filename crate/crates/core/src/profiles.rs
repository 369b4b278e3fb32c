//! Significance, characteristic profiles, hyperedge and node profiles, and
//! statistics over collections of profiles.

use alloc::vec::Vec;
use core::str::FromStr;

use crate::classify::Classifier;
use crate::counting::walk::Walker;
use crate::counting::{count_exact, Algorithm, CountVector};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::line_graph::LineGraph;
use crate::{math, parallel};

/// Default smoothing constant of [`significance`].
pub const DEFAULT_EPSILON: f64 = 1.0;

fn same_catalog(a: &CountVector, b: &CountVector) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::domain("count vectors use different catalogs"));
    }
    Ok(())
}

/// `Δ_t = (M[t] − M_rand[t]) / (M[t] + M_rand[t] + ε)`.
pub fn significance(m: &CountVector, m_rand: &CountVector, eps: f64) -> Result<Vec<f64>> {
    same_catalog(m, m_rand)?;
    Ok(m.counts
        .iter()
        .zip(&m_rand.counts)
        .map(|(a, b)| (a - b) / (a + b + eps))
        .collect())
}

/// L2-normalized significance. An all-zero input yields all zeros.
pub fn characteristic_profile(delta: &[f64]) -> Vec<f64> {
    let norm = math::sqrt(delta.iter().map(|d| d * d).sum());
    if norm == 0.0 {
        log::warn!("all significances are zero; characteristic profile is the zero vector");
        return alloc::vec![0.0; delta.len()];
    }
    delta.iter().map(|d| d / norm).collect()
}

/// `(M[t] − M_rand[t]) / (M[t] + M_rand[t])`, with 0/0 taken as 0.
pub fn relative_counts(m: &CountVector, m_rand: &CountVector) -> Result<Vec<f64>> {
    same_catalog(m, m_rand)?;
    Ok(m.counts
        .iter()
        .zip(&m_rand.counts)
        .map(|(a, b)| if a + b == 0.0 { 0.0 } else { (a - b) / (a + b) })
        .collect())
}

/// Absolute counts of the instances containing hyperedge `e`.
pub fn hyperedge_profile(h: &Hypergraph, lg: &LineGraph, cls: &Classifier, e: usize) -> Result<CountVector> {
    h.try_edge(e)?;
    let mut walker = Walker::new(h.num_edges());
    let mut counts = alloc::vec![0.0; cls.num_motifs()];
    walker.edge_walk(lg, e, |t| {
        counts[t.classify(h, cls) as usize - 1] += 1.0;
    });
    Ok(CountVector {
        counts,
        num_edges: h.num_edges(),
        num_wedges: lg.wedge_count() as u64,
        ..CountVector::zeros(cls, Algorithm::Exact)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EgoKind {
    /// `E_v`: hyperedges containing `v`.
    Star,
    /// `R_v`: hyperedges contained in `V_v`.
    Radial,
    /// `C_v`: nonempty intersections of hyperedges with `V_v`.
    Contracted,
}

impl FromStr for EgoKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star" => Ok(EgoKind::Star),
            "radial" => Ok(EgoKind::Radial),
            "contracted" => Ok(EgoKind::Contracted),
            other => Err(Error::domain(alloc::format!("unknown ego-network kind {other:?}"))),
        }
    }
}

/// Ego-network of `center`, over node ids of the parent hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EgoNetwork {
    pub kind: EgoKind,
    pub center: NodeId,
    /// `V_v`, sorted.
    pub nodes: Vec<NodeId>,
    /// Sorted member lists, distinct.
    pub edges: Vec<Vec<NodeId>>,
}

impl EgoNetwork {
    /// The ego-network as a standalone hypergraph keeping the parent's labels.
    pub fn hypergraph(&self, parent: &Hypergraph) -> Result<Hypergraph> {
        Hypergraph::from_labeled_subset(parent.labels(), self.edges.iter().map(|e| e.iter().copied()))
    }
}

pub fn ego_network(h: &Hypergraph, v: NodeId, kind: EgoKind) -> Result<EgoNetwork> {
    h.node_degree(v)?;
    let mut nodes: Vec<NodeId> = h
        .incident(v)
        .iter()
        .flat_map(|&e| h.edge(e as usize).iter().copied())
        .collect();
    nodes.sort_unstable();
    nodes.dedup();

    let mut candidates: Vec<u32> = match kind {
        EgoKind::Star => h.incident(v).to_vec(),
        _ => nodes.iter().flat_map(|&u| h.incident(u).iter().copied()).collect(),
    };
    candidates.sort_unstable();
    candidates.dedup();

    let inside = |u: &NodeId| nodes.binary_search(u).is_ok();
    let mut edges: Vec<Vec<NodeId>> = Vec::new();
    for e in candidates {
        let members = h.edge(e as usize);
        match kind {
            EgoKind::Star => edges.push(members.to_vec()),
            EgoKind::Radial => {
                if members.iter().all(inside) {
                    edges.push(members.to_vec());
                }
            }
            EgoKind::Contracted => {
                let cut: Vec<NodeId> = members.iter().copied().filter(inside).collect();
                if !cut.is_empty() && !edges.contains(&cut) {
                    edges.push(cut);
                }
            }
        }
    }
    Ok(EgoNetwork {
        kind,
        center: v,
        nodes,
        edges,
    })
}

/// Exact counts over the ego-network of `v`.
pub fn node_profile(h: &Hypergraph, v: NodeId, kind: EgoKind, cls: &Classifier) -> Result<CountVector> {
    let ego = ego_network(h, v, kind)?.hypergraph(h)?;
    let lg = LineGraph::build(&ego, 1);
    Ok(count_exact(&ego, &lg, cls, 1))
}

/// [`node_profile`] for many centers, spread over `workers`.
pub fn node_profiles(
    h: &Hypergraph,
    centers: &[NodeId],
    kind: EgoKind,
    cls: &Classifier,
    workers: usize,
) -> Result<Vec<CountVector>> {
    let parts = parallel::run_dynamic(centers.len(), workers, 4, Vec::new, |out: &mut Vec<_>, n| {
        out.push((n, node_profile(h, centers[n], kind, cls)));
    });
    let mut all: Vec<(usize, Result<CountVector>)> = parts.into_iter().flatten().collect();
    all.sort_unstable_by_key(|(n, _)| *n);
    all.into_iter().map(|(_, r)| r).collect()
}

/// `importance[t] = 1 − within[t] / across[t]`, where `within` and `across`
/// average `|CP_t(a) − CP_t(b)|` over same-domain and cross-domain pairs.
/// Returns 0 where `across[t]` is 0.
pub fn motif_importance<D: PartialEq>(cps: &[(D, Vec<f64>)]) -> Result<Vec<f64>> {
    let len = cps.first().map(|c| c.1.len()).unwrap_or(0);
    if cps.iter().any(|c| c.1.len() != len) {
        return Err(Error::domain("profiles have different lengths"));
    }
    let mut within = alloc::vec![0.0; len];
    let mut across = alloc::vec![0.0; len];
    let (mut n_within, mut n_across) = (0usize, 0usize);
    for (a, (da, pa)) in cps.iter().enumerate() {
        for (db, pb) in &cps[a + 1..] {
            let (acc, n) = if da == db {
                (&mut within, &mut n_within)
            } else {
                (&mut across, &mut n_across)
            };
            *n += 1;
            for (s, (x, y)) in acc.iter_mut().zip(pa.iter().zip(pb)) {
                *s += (x - y).abs();
            }
        }
    }
    if n_within == 0 || n_across == 0 {
        return Err(Error::domain(
            "importance needs at least two domains and a domain with two profiles",
        ));
    }
    Ok(within
        .iter()
        .zip(&across)
        .map(|(w, a)| {
            let (w, a) = (w / n_within as f64, a / n_across as f64);
            if a == 0.0 {
                0.0
            } else {
                1.0 - w / a
            }
        })
        .collect())
}

/// Pearson correlation matrix. Rows for zero-variance profiles are 0 off the
/// diagonal.
pub fn cp_similarity_matrix(cps: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    if cps.len() < 2 {
        return Err(Error::domain("similarity needs at least two profiles"));
    }
    let len = cps[0].len();
    if len == 0 || cps.iter().any(|c| c.len() != len) {
        return Err(Error::domain("profiles must be nonempty and of equal length"));
    }
    let centered: Vec<(Vec<f64>, f64)> = cps
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let mean = c.iter().sum::<f64>() / len as f64;
            let d: Vec<f64> = c.iter().map(|x| x - mean).collect();
            let norm = math::sqrt(d.iter().map(|x| x * x).sum());
            if norm == 0.0 {
                log::warn!("profile {n} has zero variance; its correlations are set to 0");
            }
            (d, norm)
        })
        .collect();
    let k = cps.len();
    let mut out = alloc::vec![alloc::vec![0.0; k]; k];
    for a in 0..k {
        out[a][a] = 1.0;
        for b in a + 1..k {
            let (da, na) = &centered[a];
            let (db, nb) = &centered[b];
            let r = if *na == 0.0 || *nb == 0.0 {
                0.0
            } else {
                let dot: f64 = da.iter().zip(db).map(|(x, y)| x * y).sum();
                (dot / (na * nb)).clamp(-1.0, 1.0)
            };
            out[a][b] = r;
            out[b][a] = r;
        }
    }
    Ok(out)
}

fn check_partition(binary: &[f64], ternary: &[f64], refinement: &[u32]) -> Result<Vec<f64>> {
    if ternary.len() != refinement.len() {
        return Err(Error::domain("refinement map does not match the ternary counts"));
    }
    let mut sums = alloc::vec![0.0; binary.len()];
    for (&c, &b) in ternary.iter().zip(refinement) {
        let slot = sums
            .get_mut((b as usize).wrapping_sub(1))
            .ok_or_else(|| Error::domain("refinement map points outside the binary catalog"))?;
        *slot += c;
    }
    for (s, b) in sums.iter().zip(binary) {
        if (s - b).abs() > 1e-9 * b.abs().max(1.0) {
            return Err(Error::domain("ternary counts do not partition the binary counts"));
        }
    }
    Ok(sums)
}

/// Extra information (nats) of the ternary refinement over the binary counts:
/// `−Σ_i (N_i/N_tot) Σ_j (n_j/N_i) ln(n_j/N_i)`.
pub fn conditional_entropy(binary: &[f64], ternary: &[f64], refinement: &[u32]) -> Result<f64> {
    let class_totals = check_partition(binary, ternary, refinement)?;
    let total: f64 = class_totals.iter().sum();
    if total == 0.0 {
        return Ok(0.0);
    }
    let mut h = 0.0;
    for (&n, &b) in ternary.iter().zip(refinement) {
        let class = class_totals[b as usize - 1];
        if n > 0.0 {
            let p = n / class;
            h -= (class / total) * p * math::ln(p);
        }
    }
    Ok(h)
}

/// `Σ_i (N_i/N_tot) ln|K_i|`, the value reached when each class's instances
/// spread evenly over its `|K_i|` refinements.
pub fn conditional_entropy_bound(binary: &[f64], ternary: &[f64], refinement: &[u32]) -> Result<f64> {
    let class_totals = check_partition(binary, ternary, refinement)?;
    let total: f64 = class_totals.iter().sum();
    if total == 0.0 {
        return Ok(0.0);
    }
    let mut sizes = alloc::vec![0usize; binary.len()];
    for &b in refinement {
        sizes[b as usize - 1] += 1;
    }
    Ok(class_totals
        .iter()
        .zip(&sizes)
        .filter(|(n, _)| **n > 0.0)
        .map(|(n, &k)| (n / total) * math::ln(k as f64))
        .sum())
}
