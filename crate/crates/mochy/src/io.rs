//! Edge-list input and output.
//!
//! One hyperedge per line; node labels are non-negative integers separated
//! by whitespace and/or commas. Blank lines and lines starting with `#` are
//! skipped.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use mochy_core::Hypergraph;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("line {line}: invalid node label {token:?}")]
    Parse { line: usize, token: String },
    #[error("{0}")]
    Core(#[from] mochy_core::Error),
    #[error("{0}")]
    Format(String),
}

fn io_error(path: &Path) -> impl FnOnce(io::Error) -> LoadError + '_ {
    move |source| LoadError::Io {
        path: path.display().to_string(),
        source,
    }
}

/// Labels of one line, or `None` for a blank or comment line.
pub fn parse_line(line: &str, number: usize) -> Result<Option<Vec<u64>>, LoadError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    trimmed
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>().map_err(|_| LoadError::Parse {
                line: number,
                token: t.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(|labels| (!labels.is_empty()).then_some(labels))
}

/// Raw labeled hyperedges, in file order, duplicates kept.
pub fn read_labeled_edges<R: BufRead>(reader: R) -> Result<Vec<Vec<u64>>, LoadError> {
    let mut edges = Vec::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line.map_err(|source| LoadError::Io {
            path: "<input>".into(),
            source,
        })?;
        if let Some(labels) = parse_line(&line, n + 1)? {
            edges.push(labels);
        }
    }
    Ok(edges)
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Hypergraph, LoadError> {
    Ok(Hypergraph::from_labeled_edges(read_labeled_edges(reader)?)?)
}

/// Loads an edge-list file; `-` reads standard input.
pub fn load_path(path: &Path) -> Result<Hypergraph, LoadError> {
    if path.as_os_str() == "-" {
        return read_edge_list(io::stdin().lock());
    }
    let file = File::open(path).map_err(io_error(path))?;
    read_edge_list(BufReader::new(file)).map_err(|e| match e {
        LoadError::Io { source, .. } => io_error(path)(source),
        other => other,
    })
}

/// Writes `h` with original labels, one hyperedge per line in index order.
pub fn write_edge_list<W: Write>(h: &Hypergraph, mut out: W) -> io::Result<()> {
    for i in 0..h.num_edges() {
        let mut first = true;
        for label in h.labeled_edge(i) {
            if !first {
                out.write_all(b" ")?;
            }
            write!(out, "{label}")?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Reads the two-file layout used by the public simplex datasets: `nverts`
/// holds one hyperedge size per line and `simplices` the concatenated
/// members, one label per line.
pub fn read_benson<N: BufRead, S: BufRead>(nverts: N, simplices: S) -> Result<Vec<Vec<u64>>, LoadError> {
    let sizes = read_column(nverts)?;
    let members = read_column(simplices)?;
    let total: u64 = sizes.iter().sum();
    if total != members.len() as u64 {
        return Err(LoadError::Format(format!(
            "nverts sums to {total} but simplices holds {} labels",
            members.len()
        )));
    }
    let mut rest = members.as_slice();
    Ok(sizes
        .iter()
        .map(|&n| {
            let (edge, tail) = rest.split_at(n as usize);
            rest = tail;
            edge.to_vec()
        })
        .filter(|e| !e.is_empty())
        .collect())
}

fn read_column<R: BufRead>(reader: R) -> Result<Vec<u64>, LoadError> {
    Ok(read_labeled_edges(reader)?.into_iter().flatten().collect())
}

/// Loads either an edge-list file or a directory holding one
/// `*-nverts.txt` / `*-simplices.txt` pair.
pub fn load_any(path: &Path) -> Result<Hypergraph, LoadError> {
    if !path.is_dir() {
        return load_path(path);
    }
    let find = |suffix: &str| -> Result<std::path::PathBuf, LoadError> {
        std::fs::read_dir(path)
            .map_err(io_error(path))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .find(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.ends_with(suffix))
            })
            .ok_or_else(|| LoadError::Format(format!("{}: no *{suffix} file", path.display())))
    };
    let nverts = find("-nverts.txt")?;
    let simplices = find("-simplices.txt")?;
    let open = |p: &Path| File::open(p).map(BufReader::new).map_err(io_error(p));
    let edges = read_benson(open(&nverts)?, open(&simplices)?)?;
    Ok(Hypergraph::from_labeled_edges(edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_separators_and_comments() {
        let text = "# header\n1 2 3\n\n2,3 , 4\n1\t2  3\n";
        let h = read_edge_list(text.as_bytes()).unwrap();
        assert_eq!(h.num_nodes(), 4);
        assert_eq!(h.num_edges(), 2);
    }

    #[test]
    fn reports_line_of_bad_token() {
        let err = read_edge_list("1 2\n3 x\n".as_bytes()).unwrap_err();
        assert!(matches!(err, LoadError::Parse { line: 2, ref token } if token == "x"));
        assert!(read_edge_list("1 -2\n".as_bytes()).is_err());
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(
            read_edge_list("# nothing\n\n".as_bytes()),
            Err(LoadError::Core(mochy_core::Error::EmptyInput))
        ));
    }

    #[test]
    fn membership_of_a_chain() {
        let h = read_edge_list("1 2 3\n2 3 4\n3 4 5\n".as_bytes()).unwrap();
        let v = h.node_of_label(3).unwrap();
        assert_eq!(h.incident(v), &[0, 1, 2]);
        let single = read_edge_list("7\n".as_bytes()).unwrap();
        assert_eq!((single.num_nodes(), single.num_edges()), (1, 1));
    }

    #[test]
    fn write_then_read_round_trips() {
        let h = read_edge_list("10 20 30\n30 40\n5\n".as_bytes()).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&h, &mut buf).unwrap();
        let again = read_edge_list(buf.as_slice()).unwrap();
        assert_eq!(again.num_edges(), h.num_edges());
        for i in 0..h.num_edges() {
            let sorted = |g: &Hypergraph| {
                let mut e: Vec<u64> = g.labeled_edge(i).collect();
                e.sort_unstable();
                e
            };
            assert_eq!(sorted(&again), sorted(&h));
        }
    }

    #[test]
    fn benson_layout() {
        let edges = read_benson("2\n3\n1\n".as_bytes(), "1\n2\n2\n3\n4\n9\n".as_bytes()).unwrap();
        assert_eq!(edges, vec![vec![1, 2], vec![2, 3, 4], vec![9]]);
        assert!(read_benson("2\n".as_bytes(), "1\n".as_bytes()).is_err());
    }
}
