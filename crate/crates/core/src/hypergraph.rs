//! Hypergraph storage: deduplicated hyperedges as sorted member arrays plus
//! the node → incident-hyperedge index.

use alloc::vec::Vec;
use core::ops::Range;

use hashbrown::HashMap;

use crate::error::{Error, Result};

/// Dense node id, `0..num_nodes()`.
pub type NodeId = u32;
/// Position of a hyperedge in the edge list, `0..num_edges()`.
pub type EdgeIdx = u32;

/// An immutable hypergraph.
///
/// Hyperedges are nonempty, sorted, duplicate-free, and pairwise distinct.
/// Both the edge list and the incidence lists are stored in CSR form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    labels: Vec<u64>,
    edge_offsets: Vec<usize>,
    members: Vec<NodeId>,
    inc_offsets: Vec<usize>,
    incidence: Vec<EdgeIdx>,
}

impl Hypergraph {
    /// Builds a hypergraph from hyperedges given as arbitrary integer labels.
    ///
    /// Labels are remapped to dense ids in order of first appearance. Empty
    /// hyperedges are skipped and repeated hyperedges (as sets) collapse to
    /// their first occurrence.
    pub fn from_labeled_edges<I, E>(edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = u64>,
    {
        let mut ids: HashMap<u64, NodeId> = HashMap::new();
        let mut labels = Vec::new();
        let dense = edges.into_iter().map(|e| {
            e.into_iter()
                .map(|label| {
                    *ids.entry(label).or_insert_with(|| {
                        labels.push(label);
                        (labels.len() - 1) as NodeId
                    })
                })
                .collect::<Vec<_>>()
        });
        let dense: Vec<Vec<NodeId>> = dense.collect();
        Self::assemble(labels, dense)
    }

    /// Builds a hypergraph over nodes `0..num_nodes` whose labels are the ids
    /// themselves. Nodes that end up in no hyperedge are dropped and the rest
    /// re-indexed, so the result may have fewer nodes.
    pub fn from_dense_edges<I, E>(num_nodes: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = NodeId>,
    {
        let labels: Vec<u64> = (0..num_nodes as u64).collect();
        Self::from_labeled_subset(&labels, edges)
    }

    /// Like [`Hypergraph::from_dense_edges`] but hyperedges reference nodes of
    /// some parent hypergraph whose labels are `parent_labels`; the result
    /// keeps those labels.
    pub(crate) fn from_labeled_subset<I, E>(parent_labels: &[u64], edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = NodeId>,
    {
        let mut remap: HashMap<NodeId, NodeId> = HashMap::new();
        let mut labels = Vec::new();
        let mut dense = Vec::new();
        for e in edges {
            let mut out = Vec::new();
            for v in e {
                let id = *remap.entry(v).or_insert_with(|| {
                    labels.push(parent_labels[v as usize]);
                    (labels.len() - 1) as NodeId
                });
                out.push(id);
            }
            dense.push(out);
        }
        Self::assemble(labels, dense)
    }

    fn assemble(labels: Vec<u64>, edges: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut seen: HashMap<Vec<NodeId>, ()> = HashMap::new();
        let mut edge_offsets = Vec::with_capacity(edges.len() + 1);
        let mut members = Vec::new();
        edge_offsets.push(0);
        for mut e in edges {
            e.sort_unstable();
            e.dedup();
            if e.is_empty() || seen.contains_key(&e) {
                continue;
            }
            members.extend_from_slice(&e);
            edge_offsets.push(members.len());
            seen.insert(e, ());
        }
        if edge_offsets.len() == 1 {
            return Err(Error::EmptyInput);
        }

        // Every label belongs to some surviving edge: duplicates share members
        // with their first occurrence and empty edges add no labels.
        let num_nodes = labels.len();
        let mut degree = alloc::vec![0usize; num_nodes];
        for &v in &members {
            degree[v as usize] += 1;
        }
        let mut inc_offsets = Vec::with_capacity(num_nodes + 1);
        inc_offsets.push(0);
        for d in &degree {
            inc_offsets.push(inc_offsets.last().unwrap() + d);
        }
        let mut fill = inc_offsets[..num_nodes].to_vec();
        let mut incidence = alloc::vec![0; members.len()];
        for i in 0..edge_offsets.len() - 1 {
            for &v in &members[edge_offsets[i]..edge_offsets[i + 1]] {
                incidence[fill[v as usize]] = i as EdgeIdx;
                fill[v as usize] += 1;
            }
        }

        Ok(Hypergraph {
            labels,
            edge_offsets,
            members,
            inc_offsets,
            incidence,
        })
    }

    #[inline]
    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edge_offsets.len() - 1
    }

    /// Σ|e_i|, the number of (node, hyperedge) incidences.
    #[inline]
    pub fn num_incidences(&self) -> usize {
        self.members.len()
    }

    /// Sorted members of hyperedge `i`. Panics if out of range.
    #[inline]
    pub fn edge(&self, i: usize) -> &[NodeId] {
        &self.members[self.edge_offsets[i]..self.edge_offsets[i + 1]]
    }

    pub fn try_edge(&self, i: usize) -> Result<&[NodeId]> {
        if i >= self.num_edges() {
            return Err(Error::EdgeOutOfRange {
                edge: i,
                len: self.num_edges(),
            });
        }
        Ok(self.edge(i))
    }

    #[inline]
    pub fn edge_size(&self, i: usize) -> usize {
        self.edge_offsets[i + 1] - self.edge_offsets[i]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[NodeId]> + '_ {
        (0..self.num_edges()).map(move |i| self.edge(i))
    }

    /// Sorted indices of the hyperedges containing `v` (E_v). Panics if out
    /// of range.
    #[inline]
    pub fn incident(&self, v: NodeId) -> &[EdgeIdx] {
        let v = v as usize;
        &self.incidence[self.inc_offsets[v]..self.inc_offsets[v + 1]]
    }

    /// |E_v|, the number of hyperedges containing `v`.
    pub fn node_degree(&self, v: NodeId) -> Result<usize> {
        if v as usize >= self.num_nodes() {
            return Err(Error::NodeOutOfRange {
                node: v as usize,
                len: self.num_nodes(),
            });
        }
        Ok(self.incident(v).len())
    }

    /// Original label of a dense node id.
    #[inline]
    pub fn label(&self, v: NodeId) -> u64 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense id of an original label, if present.
    pub fn node_of_label(&self, label: u64) -> Option<NodeId> {
        self.labels.iter().position(|&l| l == label).map(|v| v as NodeId)
    }

    /// Hyperedge members as original labels.
    pub fn labeled_edge(&self, i: usize) -> impl Iterator<Item = u64> + '_ {
        self.edge(i).iter().map(move |&v| self.label(v))
    }

    /// The star expansion: one bipartite edge per incidence.
    pub fn incidence_graph(&self) -> IncidenceGraph {
        let mut pairs = Vec::with_capacity(self.members.len());
        for i in 0..self.num_edges() {
            for &v in self.edge(i) {
                pairs.push((v, i as EdgeIdx));
            }
        }
        IncidenceGraph {
            num_nodes: self.num_nodes(),
            num_edges: self.num_edges(),
            pairs,
        }
    }

    pub(crate) fn edge_range(&self, i: usize) -> Range<usize> {
        self.edge_offsets[i]..self.edge_offsets[i + 1]
    }

    pub(crate) fn members(&self) -> &[NodeId] {
        &self.members
    }
}

/// Bipartite node/hyperedge graph with an edge `(v, e)` iff `v ∈ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    pub num_nodes: usize,
    pub num_edges: usize,
    pub pairs: Vec<(NodeId, EdgeIdx)>,
}

/// `|a ∩ b|` for sorted slices.
pub(crate) fn intersection_size(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut x, mut y, mut n) = (0, 0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => x += 1,
            core::cmp::Ordering::Greater => y += 1,
            core::cmp::Ordering::Equal => {
                n += 1;
                x += 1;
                y += 1;
            }
        }
    }
    n
}
