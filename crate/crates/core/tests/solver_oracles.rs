mod common;

use atfp::atfree::is_caterpillar;
use atfp::gen::{random_graph, rng_for, Model};
use atfp::graph::families::*;
use atfp::oracles::*;
use atfp::solvers::*;
use rand::Rng;

#[test]
fn terminal_solvers_match_their_oracles() {
    for seed in 0..400u64 {
        let (g, terms) = common::terminal_case(seed, 3, 11, 4);
        let path = k_in_a_path(&g, &terms).unwrap();
        assert_eq!(path.is_some(), oracle_k_in_a_path(&g, &terms, 12).unwrap(), "path seed {seed}");
        if let Some(p) = path {
            assert!(g.is_induced_path(&p) && terms.iter().all(|t| p.contains(t)));
        }
        let tree = k_in_a_tree(&g, &terms).unwrap();
        assert_eq!(tree.is_some(), oracle_k_in_a_tree(&g, &terms, 12).unwrap(), "tree seed {seed}");
        if let Some(t) = tree {
            let (sub, _) = g.induced_subgraph(&t);
            assert!(is_caterpillar(&sub).unwrap(), "tree seed {seed}");
        }
        let cycle = k_in_a_cycle(&g, &terms).unwrap();
        assert_eq!(cycle.is_some(), oracle_k_in_a_cycle(&g, &terms, 12).unwrap(), "cycle seed {seed}");
        if let Some(c) = cycle {
            assert!(g.is_induced_cycle(&c));
        }
    }
}

#[test]
fn coinciding_pairs_match_the_oracle() {
    for seed in 0..600u64 {
        let mut rng = rng_for(seed);
        let n = rng.random_range(3..=10);
        let g = random_graph(Model::ALL[(seed % 4) as usize], n, &mut rng);
        let s = rng.random_range(0..n);
        let t = (s + rng.random_range(1..n)) % n;
        let k = rng.random_range(1..=5);
        let got = coinciding_pairs(&g, s, t, k).unwrap();
        if let Some(sol) = &got {
            assert!(verify_coinciding(&g, s, t, k, sol), "seed {seed}");
        }
        assert_eq!(got.is_some(), oracle_coinciding(&g, s, t, k, 12).unwrap(), "seed {seed}");
    }
}

#[test]
fn anchored_minors_match_the_oracle() {
    for seed in 0..300u64 {
        let (g, order) = common::terminal_case(seed, 3, 10, 10);
        let size = order.len().min(1 + (seed % 4) as usize);
        let h = common::random_pattern(size, seed);
        let anchors = &order[..size];
        assert_eq!(
            anchored_itm(&g, &h, anchors).unwrap(),
            oracle_anchored_subdivision(&g, &h, anchors, 12).unwrap(),
            "seed {seed}"
        );
    }
}

#[test]
fn plain_minors_match_the_oracle() {
    for seed in 0..60u64 {
        let (g, _) = common::terminal_case(seed, 3, 8, 1);
        let h = common::random_pattern(1 + (seed % 3) as usize, seed);
        assert_eq!(itm(&g, &h, 4).unwrap(), oracle_induced_subdivision(&g, &h, 12).unwrap(), "seed {seed}");
    }
    assert!(itm(&cycle(5), &complete(3), 4).unwrap());
    assert!(!itm(&path(4), &complete(3), 4).unwrap());
}
