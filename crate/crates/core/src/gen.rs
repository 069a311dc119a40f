//! Seeded random instances from AT-free graph families.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atfree::is_at_free;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{unordered, Instance};

/// Rejection-sampling attempts before switching to the interval model.
pub const REJECTION_RETRIES: usize = 10_000;
const PAIR_ATTEMPTS: usize = 1_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Model {
    Interval,
    Permutation,
    Cobipartite,
    Rejection,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::Interval, Model::Permutation, Model::Cobipartite, Model::Rejection];

    pub fn name(self) -> &'static str {
        match self {
            Model::Interval => "interval",
            Model::Permutation => "permutation",
            Model::Cobipartite => "cobipartite",
            Model::Rejection => "rejection",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Model> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::PreconditionViolated(format!("unknown model {s:?}")))
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Intersection graph of `n` random intervals with endpoints in `0..2n`.
pub fn interval_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let span = 2 * n.max(1);
    let iv: Vec<(usize, usize)> = (0..n)
        .map(|_| {
            let a = rng.random_range(0..span);
            let b = rng.random_range(0..span);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if iv[u].0 <= iv[v].1 && iv[v].0 <= iv[u].1 {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    g
}

/// Intersection graph of `n` short intervals: vertex `v` starts at `v` and
/// has length `1..=max_len`, so the graph is a long thin corridor.
pub fn corridor_graph(n: usize, max_len: usize, rng: &mut impl Rng) -> Graph {
    let ends: Vec<usize> = (0..n).map(|v| v + rng.random_range(1..=max_len.max(1))).collect();
    let mut g = Graph::empty(n);
    for (u, &end) in ends.iter().enumerate() {
        for v in u + 1..n.min(end + 1) {
            g.add_edge(u, v).expect("distinct in-range vertices");
        }
    }
    g
}

/// `u < v` adjacent iff a random permutation inverts them.
pub fn permutation_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if pi[u] > pi[v] {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    g
}

/// Two cliques with cross edges kept independently with probability 1/2.
pub fn cobipartite_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let split = n / 2;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let same_side = (u < split) == (v < split);
            if same_side || rng.random_bool(0.5) {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    g
}

fn gnp(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                g.add_edge(u, v).expect("distinct in-range vertices");
            }
        }
    }
    g
}

/// `G(n, p)` samples until one is AT-free; after [`REJECTION_RETRIES`]
/// failures an interval graph is returned instead.
pub fn rejection_graph(n: usize, rng: &mut impl Rng) -> Graph {
    let p = rng.random_range(0.25..0.75);
    for _ in 0..REJECTION_RETRIES {
        let g = gnp(n, p, rng);
        if is_at_free(&g) {
            return g;
        }
    }
    interval_graph(n, rng)
}

pub fn random_graph(model: Model, n: usize, rng: &mut impl Rng) -> Graph {
    match model {
        Model::Interval => interval_graph(n, rng),
        Model::Permutation => permutation_graph(n, rng),
        Model::Cobipartite => cobipartite_graph(n, rng),
        Model::Rejection => rejection_graph(n, rng),
    }
}

/// `k` distinct pairs of distinct vertices.
pub fn random_pairs(n: usize, k: usize, rng: &mut impl Rng) -> Result<Vec<(usize, usize)>> {
    if n < 2 * k || (k > 0 && n < 2) {
        return Err(Error::PreconditionViolated(format!("need n >= 2k, got n={n}, k={k}")));
    }
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(k);
    let mut attempts = 0;
    while pairs.len() < k {
        attempts += 1;
        if attempts > PAIR_ATTEMPTS {
            return Err(Error::GenerationFailed(attempts - 1));
        }
        let s = rng.random_range(0..n);
        let t = rng.random_range(0..n);
        if s != t && pairs.iter().all(|&q| unordered(q) != unordered((s, t))) {
            pairs.push((s, t));
        }
    }
    Ok(pairs)
}

/// A random AT-free instance; identical arguments give identical output.
pub fn gen_random(model: Model, n: usize, k: usize, seed: u64) -> Result<Instance> {
    let mut rng = rng_for(seed);
    let g = random_graph(model, n, &mut rng);
    let pairs = random_pairs(n, k, &mut rng)?;
    Ok(Instance::new(g, pairs))
}

/// A random instance whose pairs form a chain `t0–t1, t1–t2, …` of distinct
/// terminals, so the pairs stay in one component of the auxiliary graph.
pub fn gen_chain(model: Model, n: usize, k: usize, seed: u64) -> Result<Instance> {
    if n < k + 1 {
        return Err(Error::PreconditionViolated(format!("need n > k, got n={n}, k={k}")));
    }
    let mut rng = rng_for(seed);
    let g = random_graph(model, n, &mut rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let pairs = order[..=k].windows(2).map(|w| (w[0], w[1])).collect();
    Ok(Instance::new(g, pairs))
}

/// A corridor instance whose `k` pairs chain `k + 1` terminals spread evenly
/// along it, so every pair survives reduction and the auxiliary graph is a
/// single component.
pub fn gen_corridor(n: usize, k: usize, seed: u64) -> Result<Instance> {
    if n < 2 * (k + 1) {
        return Err(Error::PreconditionViolated(format!("need n >= 2(k + 1), got n={n}, k={k}")));
    }
    let mut rng = rng_for(seed);
    let g = corridor_graph(n, 3, &mut rng);
    let step = (n - 1) / k.max(1);
    let pairs = (0..k).map(|i| (i * step, (i + 1) * step)).collect();
    Ok(Instance::new(g, pairs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corridors_chain_spread_terminals() {
        let inst = gen_corridor(20, 3, 4).unwrap();
        assert_eq!(inst.pairs, vec![(0, 6), (6, 12), (12, 18)]);
        assert!(is_at_free(&inst.g));
        assert!(inst.g.is_connected());
        assert!(gen_corridor(7, 3, 0).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(gen_random(Model::Interval, 8, 2, 1).unwrap(), gen_random(Model::Interval, 8, 2, 1).unwrap());
        for model in Model::ALL {
            assert_eq!(gen_random(model, 9, 3, 7).unwrap(), gen_random(model, 9, 3, 7).unwrap());
        }
    }

    #[test]
    fn every_model_is_at_free_and_pairs_are_valid() {
        for model in Model::ALL {
            for seed in 0..20 {
                let inst = gen_random(model, 10, 3, seed).unwrap();
                assert!(is_at_free(&inst.g), "{model} seed {seed}");
                assert_eq!(inst.validate(), Ok(()));
                assert_eq!(inst.k(), 3);
            }
        }
    }

    #[test]
    fn chain_pairs_share_terminals() {
        let inst = gen_chain(Model::Interval, 12, 4, 3).unwrap();
        assert_eq!(inst.validate(), Ok(()));
        assert!(inst.pairs.windows(2).all(|w| w[0].1 == w[1].0));
        assert!(gen_random(Model::Interval, 3, 2, 0).is_err());
    }

    #[test]
    fn model_names_round_trip() {
        for model in Model::ALL {
            assert_eq!(model.name().parse::<Model>().unwrap(), model);
        }
        assert!("grid".parse::<Model>().is_err());
    }
}
