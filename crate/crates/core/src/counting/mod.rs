//! Motif-instance counting: exact, sampled, and on-the-fly.

mod exact;
mod otf;
mod sampling;
mod stats;
pub(crate) mod walk;

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::classify::{Classifier, StateMap};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::line_graph::LineGraph;

pub use exact::{count_exact, enumerate_instances, Aborted};
pub use otf::{count_otf, count_otf_indexed, Budget, DegreeIndex, OtfVariant};
pub use sampling::{count_sample_hyperedge, count_sample_hyperwedge};
pub use stats::{
    estimator_variance, max_degree_per_motif, pair_overlap_stats, recommend_samples, Estimator, PairCounts,
    PairOverlapStats, DEFAULT_INSTANCE_CAP,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Exact,
    EdgeSample,
    WedgeSample,
    OtfBasic,
    OtfAdvanced,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Exact => "exact",
            Algorithm::EdgeSample => "edge-sample",
            Algorithm::WedgeSample => "wedge-sample",
            Algorithm::OtfBasic => "otf-basic",
            Algorithm::OtfAdvanced => "otf-advanced",
        }
    }

    pub fn is_sampling(&self) -> bool {
        !matches!(self, Algorithm::Exact)
    }

    /// Whether the algorithm works from a materialized line graph.
    pub fn needs_line_graph(&self) -> bool {
        matches!(self, Algorithm::Exact | Algorithm::EdgeSample | Algorithm::WedgeSample)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "exact" => Algorithm::Exact,
            "edge-sample" => Algorithm::EdgeSample,
            "wedge-sample" => Algorithm::WedgeSample,
            "otf-basic" => Algorithm::OtfBasic,
            "otf-advanced" => Algorithm::OtfAdvanced,
            other => return Err(Error::domain(alloc::format!("unknown algorithm {other:?}"))),
        })
    }
}

/// Per-motif counts (index `id - 1`) plus the run that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct CountVector {
    pub counts: Vec<f64>,
    pub state_map: StateMap,
    pub algorithm: Algorithm,
    pub num_edges: usize,
    pub num_wedges: u64,
    /// `s` or `r`; 0 for exact counting.
    pub samples: u64,
    pub seed: Option<u64>,
}

impl CountVector {
    pub fn zeros(cls: &Classifier, algorithm: Algorithm) -> Self {
        CountVector {
            counts: alloc::vec![0.0; cls.num_motifs()],
            state_map: cls.state_map(),
            algorithm,
            num_edges: 0,
            num_wedges: 0,
            samples: 0,
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Count of motif `id` (1-based).
    pub fn get(&self, id: u32) -> f64 {
        self.counts[id as usize - 1]
    }

    pub fn total(&self) -> f64 {
        self.counts.iter().sum()
    }

    /// `(id, count)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i as u32 + 1, c))
    }

    /// Σ_t |self_t − exact_t| / Σ_t exact_t.
    pub fn relative_error(&self, exact: &CountVector) -> Result<f64> {
        if self.len() != exact.len() {
            return Err(Error::domain("count vectors use different catalogs"));
        }
        let denom = exact.total();
        if denom == 0.0 {
            return Err(Error::domain("relative error undefined for an all-zero reference"));
        }
        let num: f64 = self.counts.iter().zip(&exact.counts).map(|(a, b)| (a - b).abs()).sum();
        Ok(num / denom)
    }

    /// Collapses ternary-style counts onto the binary catalog.
    pub fn to_binary(&self, cls: &Classifier) -> Result<CountVector> {
        if cls.num_motifs() != self.len() {
            return Err(Error::domain("classifier does not match the count vector"));
        }
        let map = cls.binary_refinement();
        let mut counts = alloc::vec![0.0; 26];
        for (c, &b) in self.counts.iter().zip(&map) {
            counts[b as usize - 1] += c;
        }
        Ok(CountVector {
            counts,
            state_map: StateMap::Binary,
            ..self.clone()
        })
    }
}

/// Parameters of one counting run.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleConfig {
    pub algorithm: Algorithm,
    /// `s` for edge sampling, `r` for wedge-based modes; ignored by exact.
    pub samples: u64,
    /// Memo budget for on-the-fly modes.
    pub budget: Budget,
    pub workers: usize,
    pub seed: u64,
}

impl SampleConfig {
    pub fn exact(workers: usize) -> Self {
        SampleConfig {
            algorithm: Algorithm::Exact,
            samples: 0,
            budget: Budget::Fraction(1.0),
            workers,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithm.is_sampling() && self.samples == 0 {
            return Err(Error::domain("sample count must be at least 1"));
        }
        self.budget.validate()
    }
}

/// Runs the configured algorithm. `lg` is built on demand when the algorithm
/// needs it and none is supplied.
pub fn count(h: &Hypergraph, lg: Option<&LineGraph>, cls: &Classifier, cfg: &SampleConfig) -> Result<CountVector> {
    cfg.validate()?;
    let built;
    let lg = match (cfg.algorithm.needs_line_graph(), lg) {
        (false, _) => None,
        (true, Some(lg)) => Some(lg),
        (true, None) => {
            built = LineGraph::build(h, cfg.workers);
            Some(&built)
        }
    };
    match cfg.algorithm {
        Algorithm::Exact => Ok(count_exact(h, lg.unwrap(), cls, cfg.workers)),
        Algorithm::EdgeSample => count_sample_hyperedge(h, lg.unwrap(), cls, cfg.samples, cfg.seed, cfg.workers),
        Algorithm::WedgeSample => count_sample_hyperwedge(h, lg.unwrap(), cls, cfg.samples, cfg.seed, cfg.workers),
        Algorithm::OtfBasic | Algorithm::OtfAdvanced => {
            let variant = if cfg.algorithm == Algorithm::OtfBasic {
                OtfVariant::Basic
            } else {
                OtfVariant::Advanced
            };
            count_otf(h, cls, cfg.samples, cfg.budget, cfg.seed, variant, cfg.workers)
        }
    }
}

/// Integer tallies indexed by motif id; slot 0 collects unclassifiable
/// triples and is dropped on conversion.
pub(crate) fn new_tally(cls: &Classifier) -> Vec<u64> {
    alloc::vec![0; cls.num_motifs() + 1]
}

pub(crate) fn merge_tallies(parts: impl IntoIterator<Item = Vec<u64>>, len: usize) -> Vec<u64> {
    let mut out = alloc::vec![0u64; len];
    for part in parts {
        for (o, x) in out.iter_mut().zip(part) {
            *o += x;
        }
    }
    out
}

/// Tallies (slot 0 dropped) times a per-id scale factor.
pub(crate) fn scaled(tally: &[u64], scale: impl Fn(u32) -> f64) -> Vec<f64> {
    tally[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| c as f64 * scale(i as u32 + 1))
        .collect()
}
