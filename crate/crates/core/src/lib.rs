//! Hypergraph motif counting.
//!
//! Three connected hyperedges overlap in one of 26 binary patterns (h-motifs)
//! or, when every intersection region is further split by cardinality, one of
//! 431 ternary patterns (3h-motifs). This crate counts those patterns exactly
//! and by unbiased hyperedge/hyperwedge sampling, randomizes hypergraphs with a
//! Chung-Lu null model, and turns counts into characteristic, hyperedge, and
//! node profiles.
//!
//! The crate is `no_std` + `alloc`. The default `std` feature adds
//! multi-threaded drivers; without it every worker count collapses to one.
//!
//! ```
//! use mochy_core::{Hypergraph, LineGraph, Classifier, StateMap, counting};
//!
//! let h = Hypergraph::from_labeled_edges([vec![1, 2, 3], vec![2, 3, 4], vec![3, 4, 5]]).unwrap();
//! let lg = LineGraph::build(&h, 1);
//! let cls = Classifier::new(StateMap::Binary);
//! let counts = counting::count_exact(&h, &lg, &cls, 1);
//! assert_eq!(counts.total(), 1.0);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod catalog;
pub mod classify;
pub mod counting;
mod error;
pub mod hypergraph;
pub mod line_graph;
mod math;
pub mod memo;
pub mod null_model;
mod parallel;
pub mod profiles;
pub mod rng;

pub use catalog::{count_kh_motifs, MotifCatalog, PatternVector};
pub use classify::{Aggregate, Classifier, RegionVector, StateMap};
pub use counting::CountVector;
pub use error::{Error, Result};
pub use hypergraph::{EdgeIdx, Hypergraph, IncidenceGraph, NodeId};
pub use line_graph::{Hyperwedge, LineGraph, NeighborMap};
pub use memo::MemoizedNeighborStore;
