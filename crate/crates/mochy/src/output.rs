//! Tabular and JSON rendering of results, plus the run manifest.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use mochy_core::{Classifier, CountVector, PatternVector};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Integral values print exactly; others with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.007_199_254_740_992e15 {
        format!("{}", x as i64)
    } else {
        format!("{x:.16e}")
    }
}

pub fn pattern_string(p: &PatternVector) -> String {
    p.0.iter().fold(String::with_capacity(p.0.len()), |mut s, d| {
        let _ = write!(s, "{d}");
        s
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

/// CSV writer over an in-memory buffer; floats go through [`fmt_f64`].
pub struct Table {
    inner: csv::Writer<Vec<u8>>,
}

impl Table {
    pub fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let mut inner = csv::Writer::from_writer(Vec::new());
        inner.write_record(header).expect("in-memory write");
        Table { inner }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields).expect("in-memory write");
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.inner.into_inner().expect("in-memory flush")
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("serializable value");
    out.push(b'\n');
    out
}

#[derive(Debug, Serialize)]
pub struct MotifRow {
    pub id: u32,
    pub pattern: String,
    pub open: bool,
    pub count: f64,
}

#[derive(Debug, Serialize)]
pub struct CountReport {
    pub algorithm: String,
    pub state_map: String,
    pub num_edges: usize,
    pub num_wedges: u64,
    pub samples: u64,
    pub seed: Option<u64>,
    pub total: f64,
    pub motifs: Vec<MotifRow>,
}

pub fn count_report(counts: &CountVector, cls: &Classifier, state_map: &str) -> CountReport {
    CountReport {
        algorithm: counts.algorithm.name().to_string(),
        state_map: state_map.to_string(),
        num_edges: counts.num_edges,
        num_wedges: counts.num_wedges,
        samples: counts.samples,
        seed: counts.seed,
        total: counts.total(),
        motifs: counts
            .iter()
            .map(|(id, count)| MotifRow {
                id,
                pattern: pattern_string(cls.catalog().pattern(id)),
                open: cls.is_open(id),
                count,
            })
            .collect(),
    }
}

/// `id,pattern,count` rows.
pub fn counts_csv(counts: &CountVector, cls: &Classifier) -> Vec<u8> {
    let mut t = Table::new(["id", "pattern", "count"]);
    for (id, c) in counts.iter() {
        t.row([id.to_string(), pattern_string(cls.catalog().pattern(id)), fmt_f64(c)]);
    }
    t.into_bytes()
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputChecksum {
    pub path: String,
    pub sha256: String,
    pub bytes: usize,
}

/// Everything needed to rerun a command and check its outputs.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub argv: Vec<String>,
    pub input: Option<String>,
    pub input_sha256: Option<String>,
    pub algorithm: Option<String>,
    pub samples: Option<u64>,
    pub budget: Option<f64>,
    pub workers: usize,
    pub seed: u64,
    pub motifs: Option<String>,
    pub theta: Option<usize>,
    pub variant: Option<String>,
    pub p: Option<f64>,
    pub replicates: Option<usize>,
    pub elapsed_seconds: f64,
    pub outputs: Vec<OutputChecksum>,
}

impl RunManifest {
    pub fn set_elapsed(&mut self, elapsed: Duration) {
        self.elapsed_seconds = elapsed.as_secs_f64();
    }
}

/// Writes `bytes` to `path` (or stdout when `None`) and returns its checksum.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> io::Result<OutputChecksum> {
    match path {
        Some(p) => std::fs::write(p, bytes)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(OutputChecksum {
        path: path.map_or_else(|| "-".to_string(), |p| p.display().to_string()),
        sha256: sha256_hex(bytes),
        bytes: bytes.len(),
    })
}

/// Default manifest location: next to the primary output, else none (the
/// manifest then goes to stderr).
pub fn manifest_path(explicit: Option<&Path>, out: Option<&Path>) -> Option<PathBuf> {
    explicit.map(Path::to_path_buf).or_else(|| {
        out.map(|o| {
            let mut name = o.as_os_str().to_owned();
            name.push(".manifest.json");
            PathBuf::from(name)
        })
    })
}
