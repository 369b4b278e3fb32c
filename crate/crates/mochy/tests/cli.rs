use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn mochy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mochy"))
        .args(args)
        .env_remove("MOCHY_THREADS")
        .output()
        .expect("spawn mochy")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const SAMPLE: &str = "0 1 2\n1 2 3\n3 4\n4 5 0\n2 5\n6 0 3\n7 8\n8 1\n1 4 6\n";

#[test]
fn exact_count_of_a_chain() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.txt", "1 2 3\n2 3 4\n3 4 5\n");
    let out = stdout(&mochy(&["count", "--algo", "exact", s(&input), "--json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["total"], 1.0);
    assert_eq!(v["motifs"].as_array().unwrap().len(), 26);

    let csv = stdout(&mochy(&["count", s(&input)]));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("id,pattern,count"));
    let nonzero: Vec<&str> = lines.filter(|l| !l.ends_with(",0")).collect();
    assert_eq!(nonzero.len(), 1);
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    for args in [
        vec!["count", "--algo", "wedge-sample", "-r", "0", s(&input)],
        vec!["count", "--algo", "wedge-sample", s(&input)],
        vec!["count", "--variant", "mr", s(&input)],
        vec!["count", "--motifs", "ternary", "--variant", "mr", s(&input)],
        vec![
            "count",
            "--motifs",
            "ternary",
            "--variant",
            "mr",
            "--p",
            "1.5",
            s(&input),
        ],
        vec!["count", "--budget", "-1", s(&input)],
        vec!["frobnicate"],
        vec![
            "recommend-samples",
            "--epsilon",
            "0.1",
            "--delta",
            "0.1",
            "--estimator",
            "edge",
        ],
    ] {
        let o = mochy(&args);
        assert_eq!(
            o.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn runtime_errors_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.txt");
    assert_eq!(mochy(&["count", s(&missing)]).status.code(), Some(1));
    let bad = write(&dir, "bad.txt", "1 2\n3 oops\n");
    let o = mochy(&["count", s(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let empty = write(&dir, "empty.txt", "# nothing\n");
    assert_eq!(mochy(&["stats", s(&empty)]).status.code(), Some(1));
}

#[test]
fn sampling_runs_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    let run = |threads: &str| {
        stdout(&mochy(&[
            "count",
            "--algo",
            "otf-advanced",
            "-r",
            "200",
            "--budget",
            "0.1",
            "--seed",
            "7",
            "--threads",
            threads,
            s(&input),
        ]))
    };
    let a = run("4");
    assert_eq!(a, run("4"));
    assert_eq!(a, run("1"));
    let wedge = stdout(&mochy(&[
        "count",
        "--algo",
        "wedge-sample",
        "-r",
        "200",
        "--seed",
        "7",
        s(&input),
    ]));
    assert_eq!(a, wedge);
}

#[test]
fn thread_count_from_environment() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    let out = dir.path().join("c.csv");
    let o = Command::new(env!("CARGO_BIN_EXE_mochy"))
        .args(["count", s(&input), "--out", s(&out)])
        .env("MOCHY_THREADS", "3")
        .output()
        .unwrap();
    assert!(o.status.success());
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("c.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["workers"], 3);
}

#[test]
fn manifest_records_checksums() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    let out = dir.path().join("counts.csv");
    stdout(&mochy(&[
        "count",
        "--algo",
        "edge-sample",
        "-s",
        "5",
        "--seed",
        "3",
        s(&input),
        "-o",
        s(&out),
    ]));
    let bytes = std::fs::read(&out).unwrap();
    let manifest: serde_json::Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("counts.csv.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "count");
    assert_eq!(manifest["algorithm"], "edge-sample");
    assert_eq!(manifest["samples"], 5);
    assert_eq!(manifest["seed"], 3);
    assert!(manifest["elapsed_seconds"].as_f64().unwrap() >= 0.0);
    let digest = format!("{:x}", Sha256::digest(&bytes));
    assert_eq!(manifest["outputs"][0]["sha256"], digest.as_str());
    let input_digest = format!("{:x}", Sha256::digest(SAMPLE.as_bytes()));
    assert_eq!(manifest["input_sha256"], input_digest.as_str());

    // Without --out the manifest goes to stderr.
    let o = mochy(&["stats", s(&input)]);
    let m: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(m["command"], "stats");
}

#[test]
fn catalog_sizes() {
    let rows = |states: &str| {
        stdout(&mochy(&["catalog", "--arity", "3", "--states", states]))
            .lines()
            .count()
            - 1
    };
    assert_eq!(rows("2"), 26);
    assert_eq!(rows("3"), 431);
    let binary = stdout(&mochy(&["catalog"]));
    assert_eq!(binary.lines().filter(|l| l.ends_with(",true")).count(), 6);
    assert_eq!(
        mochy(&["catalog", "--arity", "4", "--states", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn enumerate_lists_instances() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let out = stdout(&mochy(&["enumerate", s(&input)]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("i,j,k,motif_id"));
    let mut rows: Vec<&str> = lines.collect();
    rows.sort_unstable();
    let triples: Vec<String> = rows.iter().map(|r| r.rsplit_once(',').unwrap().0.to_string()).collect();
    assert_eq!(triples, ["0,1,2", "0,1,3", "0,2,3", "1,2,3"]);
}

#[test]
fn randomize_writes_loadable_replicates() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    let out = dir.path().join("rand.txt");
    stdout(&mochy(&[
        "randomize",
        s(&input),
        "--replicates",
        "2",
        "--seed",
        "5",
        "-o",
        s(&out),
    ]));
    for n in 0..2 {
        let p = dir.path().join(format!("rand.{n}.txt"));
        let stats = stdout(&mochy(&["stats", s(&p)]));
        assert!(stats.contains("hyperedges,"));
    }
    let again = stdout(&mochy(&["randomize", s(&input), "--replicates", "2", "--seed", "5"]));
    assert!(again.contains("# replicate 1"));
    let first: String = again
        .split("# replicate 1\n")
        .next()
        .unwrap()
        .replace("# replicate 0\n", "");
    assert_eq!(first, std::fs::read_to_string(dir.path().join("rand.0.txt")).unwrap());
}

#[test]
fn characteristic_profiles_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", SAMPLE);
    let b = write(&dir, "b.txt", SAMPLE);
    let run = |p: &Path| stdout(&mochy(&["cp", "--replicates", "1", "--seed", "11", s(p)]));
    let cp = run(&a);
    assert_eq!(cp, run(&a));
    assert_eq!(cp, run(&b));
    let norm: f64 = cp
        .lines()
        .skip(1)
        .map(|l| l.rsplit(',').next().unwrap().parse::<f64>().unwrap().powi(2))
        .sum();
    assert!((norm - 1.0).abs() < 1e-12);
}

#[test]
fn profiles_and_line_graph() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "chain.txt", "1 2 3\n2 3 4\n3 4 5\n");
    let edges = stdout(&mochy(&["profile-edge", s(&input)]));
    let rows: Vec<&str> = edges.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].starts_with("edge,t1,t2"));
    for r in &rows[1..] {
        let sum: f64 = r.split(',').skip(1).map(|x| x.parse::<f64>().unwrap()).sum();
        assert_eq!(sum, 1.0);
    }
    let nodes = stdout(&mochy(&["profile-node", s(&input), "--nodes", "3", "--ego", "radial"]));
    let row = nodes.lines().nth(1).unwrap();
    assert!(row.starts_with("3,"));
    let lg = stdout(&mochy(&["line-graph", s(&input)]));
    assert_eq!(lg, "i,j,weight\n0,1,2\n0,2,1\n1,2,2\n");
}

#[test]
fn recommend_samples_explicit_form() {
    let out = stdout(&mochy(&[
        "recommend-samples",
        "--epsilon",
        "0.1",
        "--delta",
        "0.1",
        "--estimator",
        "wedge",
        "--open",
        "--d-max",
        "2",
        "--count",
        "10",
        "--population",
        "100",
    ]));
    let expected = (20.0f64.powi(2) * 20f64.ln() / (8.0 * 0.01)).ceil() as u64 + 1;
    assert_eq!(out, format!("samples\n{expected}\n"));
}

#[test]
fn recommend_samples_per_motif() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "g.txt", SAMPLE);
    let out = stdout(&mochy(&[
        "recommend-samples",
        s(&input),
        "--epsilon",
        "0.5",
        "--delta",
        "0.1",
        "--estimator",
        "edge",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("id,pattern,open,count,d_max,population,samples"));
    assert!(lines.all(|l| l.rsplit(',').next().unwrap().parse::<u64>().unwrap() >= 2));
}

#[test]
fn stats_with_pair_overlaps() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let out = stdout(&mochy(&["stats", "--pairs", s(&input)]));
    assert_eq!(
        out.lines().nth(1).unwrap().split(',').skip(2).collect::<Vec<_>>(),
        ["4", "0", "0", "6", "0", "6"]
    );
    let o = mochy(&["stats", "--pairs", "--cap", "2", s(&input)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn convert_benson_files() {
    let dir = TempDir::new().unwrap();
    let nverts = write(&dir, "x-nverts.txt", "2\n3\n2\n");
    let simplices = write(&dir, "x-simplices.txt", "1\n2\n2\n3\n4\n2\n1\n");
    let out = stdout(&mochy(&[
        "convert",
        "--nverts",
        s(&nverts),
        "--simplices",
        s(&simplices),
    ]));
    assert_eq!(out, "1 2\n2 3 4\n2 1\n");
    // A directory holding the pair loads directly, deduplicating {1,2}.
    let stats = stdout(&mochy(&["stats", s(dir.path())]));
    assert!(stats.contains("hyperedges,2\n"));
}

#[test]
fn compare_profiles() {
    let dir = TempDir::new().unwrap();
    let a = write(&dir, "a.txt", SAMPLE);
    let b = write(&dir, "b.txt", "0 1\n0 2\n0 3\n0 4\n1 2 5\n");
    let sim = stdout(&mochy(&["compare", "--replicates", "1", s(&a), s(&b), s(&a)]));
    let rows: Vec<&str> = sim.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[1].split(',').nth(1).unwrap() == "1");
    let a1 = format!("x={}", s(&a));
    let a2 = format!("x={}", s(&a));
    let b1 = format!("y={}", s(&b));
    let imp = stdout(&mochy(&[
        "compare",
        "--what",
        "importance",
        "--replicates",
        "1",
        &a1,
        &a2,
        &b1,
    ]));
    assert_eq!(imp.lines().count(), 27);
    assert_eq!(
        mochy(&["compare", "--what", "importance", s(&a), s(&b)]).status.code(),
        Some(2)
    );
}
