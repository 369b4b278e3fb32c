#![allow(dead_code)]

use std::collections::BTreeSet;

use mochy_core::catalog::{MotifCatalog, PatternVector};
use mochy_core::{rng, Hypergraph};
use rand::Rng;

/// Random hypergraph with up to `max_edges` hyperedges of size 1..=`max_size`
/// over `nodes` labels. Duplicates collapse, so `|E|` may be smaller.
pub fn random_hypergraph(seed: u64, nodes: u64, max_edges: usize, max_size: usize) -> Hypergraph {
    let mut rng = rng::stream(seed, 0);
    let m = rng.gen_range(1..=max_edges);
    let edges: Vec<Vec<u64>> = (0..m)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            (0..size).map(|_| rng.gen_range(0..nodes)).collect()
        })
        .collect();
    Hypergraph::from_labeled_edges(edges).unwrap()
}

pub fn edges_of(h: &Hypergraph) -> Vec<BTreeSet<u32>> {
    h.edges().map(|e| e.iter().copied().collect()).collect()
}

/// Region sizes by direct set arithmetic, in the order
/// (a, b, c, ab, bc, ca, abc).
pub fn regions(a: &BTreeSet<u32>, b: &BTreeSet<u32>, c: &BTreeSet<u32>) -> [usize; 7] {
    let mut out = [0; 7];
    for v in a.union(b).copied().collect::<BTreeSet<_>>().union(c) {
        let mask = usize::from(a.contains(v)) | usize::from(b.contains(v)) << 1 | usize::from(c.contains(v)) << 2;
        let slot = match mask {
            0b001 => 0,
            0b010 => 1,
            0b100 => 2,
            0b011 => 3,
            0b110 => 4,
            0b101 => 5,
            0b111 => 6,
            _ => unreachable!(),
        };
        out[slot] += 1;
    }
    out
}

pub fn connected(a: &BTreeSet<u32>, b: &BTreeSet<u32>, c: &BTreeSet<u32>) -> bool {
    let overlaps = [!a.is_disjoint(b), !b.is_disjoint(c), !c.is_disjoint(a)];
    overlaps.iter().filter(|&&x| x).count() >= 2
}

/// Catalog id found by trying all six orderings of the triple and matching
/// the smallest state vector against the catalog's pattern list.
pub fn oracle_id(
    catalog: &MotifCatalog,
    a: &BTreeSet<u32>,
    b: &BTreeSet<u32>,
    c: &BTreeSet<u32>,
    state: impl Fn(usize) -> u8,
) -> u32 {
    let sets = [a, b, c];
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let best = orders
        .iter()
        .map(|o| {
            let r = regions(sets[o[0]], sets[o[1]], sets[o[2]]);
            r.iter().map(|&x| state(x)).collect::<Vec<u8>>()
        })
        .min()
        .unwrap();
    let pos = catalog
        .patterns()
        .iter()
        .position(|p| *p == PatternVector(best.clone()))
        .unwrap_or_else(|| panic!("pattern {best:?} missing from catalog"));
    pos as u32 + 1
}

pub fn binary_state(c: usize) -> u8 {
    u8::from(c > 0)
}

pub fn ternary_state(theta: usize) -> impl Fn(usize) -> u8 + Copy {
    move |c| match c {
        0 => 0,
        c if c <= theta => 1,
        _ => 2,
    }
}

/// Naive O(|E|³) counts, indexed by `id - 1`.
pub fn brute_force_counts(h: &Hypergraph, catalog: &MotifCatalog, state: impl Fn(usize) -> u8 + Copy) -> Vec<f64> {
    let e = edges_of(h);
    let mut counts = vec![0.0; catalog.len()];
    for i in 0..e.len() {
        for j in i + 1..e.len() {
            for k in j + 1..e.len() {
                if connected(&e[i], &e[j], &e[k]) {
                    counts[oracle_id(catalog, &e[i], &e[j], &e[k], state) as usize - 1] += 1.0;
                }
            }
        }
    }
    counts
}

/// Hyperedges of the star with `n` leaves around a shared node.
pub fn star(n: u64) -> Hypergraph {
    Hypergraph::from_labeled_edges((1..=n).map(|leaf| vec![0, leaf])).unwrap()
}
