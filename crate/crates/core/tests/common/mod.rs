#![allow(dead_code)]

use atfp::fuzz::trial_instance;
use atfp::gen::{random_graph, rng_for, Model};
use atfp::graph::{families, Graph};
use atfp::instance::{fixtures, Instance};
use rand::seq::SliceRandom;
use rand::Rng;

/// Hand-made instances: the named fixtures plus the reduction-step cases.
pub fn fixture_set() -> Vec<(&'static str, Instance)> {
    let k4 = families::complete(4);
    vec![
        ("p4", fixtures::p4_single()),
        ("c5-two-pairs", fixtures::c5_two_pairs()),
        ("caterpillar-tree", fixtures::caterpillar_tree()),
        ("caterpillar-split", fixtures::caterpillar_tree_split()),
        ("edge-pair", Instance::new(families::path(2), vec![(0, 1)])),
        ("p3-shared-middle", Instance::new(families::path(3), vec![(0, 1), (1, 2)])),
        ("c4-adjacent", Instance::new(families::cycle(4), vec![(0, 1)])),
        ("c4-opposite", Instance::new(families::cycle(4), vec![(0, 2)])),
        ("c4-both-diagonals", Instance::new(families::cycle(4), vec![(0, 2), (1, 3)])),
        ("k4-common-neighbours", Instance::new(k4, vec![(0, 1)])),
        ("isolated", Instance::new(Graph::empty(2), vec![(0, 1)])),
        ("cocktail-party", Instance::new(families::cocktail_party(3), vec![(0, 1), (2, 3)])),
        ("p6-chain", Instance::new(families::path(6), vec![(0, 2), (2, 4), (4, 5)])),
    ]
}

/// The seeded random IDP corpus, identical to the fuzz trials.
pub fn idp_corpus(seed: u64, trials: usize, max_n: usize, max_k: usize) -> Vec<Instance> {
    (0..trials).map(|t| trial_instance(seed, t, max_n, max_k).1).collect()
}

/// A random AT-free graph with `k` distinct random terminals.
pub fn terminal_case(seed: u64, min_n: usize, max_n: usize, max_k: usize) -> (Graph, Vec<usize>) {
    let mut rng = rng_for(seed);
    let model = Model::ALL[(seed % 4) as usize];
    let n = rng.random_range(min_n..=max_n);
    let g = random_graph(model, n, &mut rng);
    let k = rng.random_range(1..=max_k.min(n));
    let mut vs: Vec<usize> = (0..n).collect();
    vs.shuffle(&mut rng);
    vs.truncate(k);
    (g, vs)
}

/// A random pattern graph on `size` vertices.
pub fn random_pattern(size: usize, seed: u64) -> Graph {
    let mut rng = rng_for(seed ^ 0xA5A5);
    let mut h = Graph::empty(size);
    for a in 0..size {
        for b in a + 1..size {
            if rng.random_bool(0.5) {
                h.add_edge(a, b).unwrap();
            }
        }
    }
    h
}
