mod common;

use std::collections::BTreeSet;

use common::*;
use mochy_core::counting::{self, count_exact, enumerate_instances};
use mochy_core::profiles::hyperedge_profile;
use mochy_core::{Classifier, LineGraph, StateMap};

const GRAPHS: u64 = 60;

#[test]
fn exact_counts_match_brute_force_binary() {
    let cls = Classifier::new(StateMap::Binary);
    for seed in 0..GRAPHS {
        let h = random_hypergraph(seed, 20, 15, 6);
        let lg = LineGraph::build(&h, 1);
        let expected = brute_force_counts(&h, cls.catalog(), binary_state);
        for workers in [1, 4] {
            assert_eq!(count_exact(&h, &lg, &cls, workers).counts, expected, "seed {seed}");
        }
    }
}

#[test]
fn exact_counts_match_brute_force_ternary() {
    for theta in [1, 2] {
        let cls = Classifier::new(StateMap::Ternary { theta });
        for seed in 0..GRAPHS {
            let h = random_hypergraph(1000 + seed, 12, 15, 6);
            let lg = LineGraph::build(&h, 1);
            let expected = brute_force_counts(&h, cls.catalog(), ternary_state(theta));
            assert_eq!(
                count_exact(&h, &lg, &cls, 2).counts,
                expected,
                "seed {seed} theta {theta}"
            );
        }
    }
}

#[test]
fn enumeration_lists_each_connected_triple_once() {
    let cls = Classifier::new(StateMap::Binary);
    for seed in 0..GRAPHS {
        let h = random_hypergraph(2000 + seed, 15, 15, 5);
        let lg = LineGraph::build(&h, 1);
        let e = edges_of(&h);
        let mut expected = BTreeSet::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                for k in j + 1..e.len() {
                    if connected(&e[i], &e[j], &e[k]) {
                        let id = oracle_id(cls.catalog(), &e[i], &e[j], &e[k], binary_state);
                        expected.insert((i as u32, j as u32, k as u32, id));
                    }
                }
            }
        }
        let mut got = Vec::new();
        enumerate_instances(&h, &lg, &cls, |a, b, c, id| {
            got.push((a, b, c, id));
            Ok::<(), ()>(())
        })
        .unwrap();
        assert_eq!(got.len(), expected.len(), "duplicates for seed {seed}");
        assert_eq!(got.into_iter().collect::<BTreeSet<_>>(), expected);
    }
}

#[test]
fn hyperedge_profiles_sum_to_three_times_instances() {
    let cls = Classifier::new(StateMap::Binary);
    for seed in 0..20 {
        let h = random_hypergraph(3000 + seed, 15, 15, 5);
        let lg = LineGraph::build(&h, 1);
        let total = count_exact(&h, &lg, &cls, 1);
        let mut sum = vec![0.0; cls.num_motifs()];
        for e in 0..h.num_edges() {
            let hp = hyperedge_profile(&h, &lg, &cls, e).unwrap();
            for (s, c) in sum.iter_mut().zip(&hp.counts) {
                *s += c;
            }
        }
        let tripled: Vec<f64> = total.counts.iter().map(|c| 3.0 * c).collect();
        assert_eq!(sum, tripled, "seed {seed}");
    }
}

#[test]
fn ternary_counts_collapse_to_binary() {
    let binary = Classifier::new(StateMap::Binary);
    let ternary = Classifier::new(StateMap::Ternary { theta: 1 });
    for seed in 0..20 {
        let h = random_hypergraph(4000 + seed, 12, 15, 6);
        let lg = LineGraph::build(&h, 1);
        let b = count_exact(&h, &lg, &binary, 1);
        let t = count_exact(&h, &lg, &ternary, 1);
        assert_eq!(t.to_binary(&ternary).unwrap().counts, b.counts);
    }
}

#[test]
fn sampling_is_exact_on_a_star() {
    // Every hyperedge and every hyperwedge of the star lies in the same
    // number of instances, so both estimators have zero variance.
    let h = star(6);
    let lg = LineGraph::build(&h, 1);
    let cls = Classifier::new(StateMap::Binary);
    let exact = count_exact(&h, &lg, &cls, 1);
    let e = counting::count_sample_hyperedge(&h, &lg, &cls, 17, 3, 2).unwrap();
    let w = counting::count_sample_hyperwedge(&h, &lg, &cls, 17, 3, 2).unwrap();
    for (got, want) in [(&e, &exact), (&w, &exact)] {
        for (a, b) in got.counts.iter().zip(&want.counts) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
