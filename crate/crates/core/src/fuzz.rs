//! Seeded differential testing of the solver against the exhaustive oracle,
//! with a greedy shrinker for failing instances.

use rand::Rng;
use serde::Serialize;

use crate::atfree::is_at_free;
use crate::gen::{gen_random, rng_for, Model};
use crate::graph::Graph;
use crate::idp::solve_idp_with;
use crate::instance::{check_solution, Instance};
use crate::oracles::{oracle_idp, DEFAULT_MAX_N};
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FuzzConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_n: usize,
    pub max_k: usize,
    pub workers: Option<usize>,
    pub exec: Exec,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig { trials: 100, seed: 0, max_n: 10, max_k: 3, workers: None, exec: Exec::default() }
    }
}

/// Seed of trial `trial` under base seed `seed` (splitmix64 mixing).
pub fn trial_seed(seed: u64, trial: usize) -> u64 {
    let mut z = seed ^ (trial as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The instance of one trial: models rotate, sizes are drawn from the seed.
pub fn trial_instance(seed: u64, trial: usize, max_n: usize, max_k: usize) -> (Model, Instance) {
    let s = trial_seed(seed, trial);
    let model = Model::ALL[trial % Model::ALL.len()];
    let mut rng = rng_for(s);
    let n = rng.random_range(2..=max_n.max(2));
    let k = rng.random_range(1..=max_k.clamp(1, n / 2));
    let inst = gen_random(model, n, k, s).expect("n >= 2k by construction");
    (model, inst)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Disagreement {
    Verdict { solver: bool, oracle: bool },
    BadWitness { detail: String },
    Error { detail: String },
}

/// `None` when the solver and the oracle agree and any witness verifies.
pub fn check_instance(inst: &Instance, exec: Exec) -> Option<Disagreement> {
    let oracle = match oracle_idp(inst, DEFAULT_MAX_N) {
        Ok((yes, _)) => yes,
        Err(e) => return Some(Disagreement::Error { detail: format!("oracle: {e}") }),
    };
    match solve_idp_with(inst, exec) {
        Err(e) => Some(Disagreement::Error { detail: e.to_string() }),
        Ok(out) if out.answer != oracle => Some(Disagreement::Verdict { solver: out.answer, oracle }),
        Ok(out) => match out.solution {
            Some(sol) => {
                check_solution(inst, &sol).err().map(|v| Disagreement::BadWitness { detail: format!("{v:?}") })
            }
            None => None,
        },
    }
}

fn without_vertex(inst: &Instance, v: usize) -> Instance {
    let keep: Vec<usize> = (0..inst.g.n()).filter(|&u| u != v).collect();
    let (g, _) = inst.g.induced_subgraph(&keep);
    let shift = |u: usize| if u > v { u - 1 } else { u };
    let pairs = inst.pairs.iter().filter(|&&(s, t)| s != v && t != v).map(|&(s, t)| (shift(s), shift(t))).collect();
    Instance::new(g, pairs)
}

fn without_edge(g: &Graph, u: usize, v: usize) -> Graph {
    let mut out = g.clone();
    out.remove_edge(u, v);
    out
}

/// Greedily deletes vertices, pairs and edges while `failing` still holds.
/// Edge deletions are kept only when the graph stays AT-free.
pub fn shrink(inst: &Instance, failing: impl Fn(&Instance) -> bool) -> Instance {
    let mut cur = inst.clone();
    loop {
        let mut progressed = false;
        for v in (0..cur.g.n()).rev() {
            let cand = without_vertex(&cur, v);
            if failing(&cand) {
                cur = cand;
                progressed = true;
            }
        }
        for p in (0..cur.k()).rev() {
            let mut cand = cur.clone();
            cand.pairs.remove(p);
            if failing(&cand) {
                cur = cand;
                progressed = true;
            }
        }
        let edges: Vec<(usize, usize)> = cur.g.edges().collect();
        for (u, v) in edges.into_iter().rev() {
            let cand = Instance::new(without_edge(&cur.g, u, v), cur.pairs.clone());
            if is_at_free(&cand.g) && failing(&cand) {
                cur = cand;
                progressed = true;
            }
        }
        if !progressed {
            return cur;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialResult {
    pub trial: usize,
    pub seed: u64,
    pub model: String,
    pub n: usize,
    pub k: usize,
    pub disagreement: Option<Disagreement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
    pub original: Instance,
    pub shrunk: Instance,
    pub disagreement: Disagreement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzReport {
    pub results: Vec<TrialResult>,
    /// The lowest-numbered failing trial, shrunk.
    pub first_mismatch: Option<Mismatch>,
}

impl FuzzReport {
    pub fn passed(&self) -> usize {
        self.results.iter().filter(|r| r.disagreement.is_none()).count()
    }
}

/// Runs the trials (concurrently under a parallel `exec`, each trial on its
/// own thread) and shrinks the first failure.
pub fn run_fuzz(cfg: &FuzzConfig) -> FuzzReport {
    let results = cfg.exec.with_workers(cfg.workers, || {
        cfg.exec.map_range(cfg.trials, |trial| {
            let (model, inst) = trial_instance(cfg.seed, trial, cfg.max_n, cfg.max_k);
            TrialResult {
                trial,
                seed: trial_seed(cfg.seed, trial),
                model: model.name().to_string(),
                n: inst.g.n(),
                k: inst.k(),
                disagreement: check_instance(&inst, Exec::Sequential),
            }
        })
    });
    let first_mismatch = results.iter().find(|r| r.disagreement.is_some()).map(|r| {
        let (_, original) = trial_instance(cfg.seed, r.trial, cfg.max_n, cfg.max_k);
        let shrunk = shrink(&original, |i| i.validate().is_ok() && check_instance(i, Exec::Sequential).is_some());
        let disagreement = check_instance(&shrunk, Exec::Sequential).or(r.disagreement.clone()).unwrap();
        Mismatch { trial: r.trial, original, shrunk, disagreement }
    });
    FuzzReport { results, first_mismatch }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    #[test]
    fn trials_are_reproducible() {
        assert_eq!(trial_instance(5, 3, 10, 3), trial_instance(5, 3, 10, 3));
        assert_ne!(trial_seed(5, 3), trial_seed(5, 4));
        let cfg = FuzzConfig { trials: 12, seed: 9, ..Default::default() };
        let a = run_fuzz(&cfg);
        let b = run_fuzz(&FuzzConfig { exec: Exec::Sequential, ..cfg });
        assert_eq!(a, b);
        assert_eq!(a.passed(), 12);
    }

    #[test]
    fn shrinker_reaches_a_minimal_witness() {
        // "fails" whenever some pair has non-adjacent terminals
        let inst = Instance::new(path(6), vec![(0, 5), (1, 2)]);
        let small = shrink(&inst, |i| i.pairs.iter().any(|&(s, t)| !i.g.has_edge(s, t)));
        assert_eq!(small.k(), 1);
        assert_eq!(small.g.n(), 2);
        assert_eq!(small.g.m(), 0);
    }
}
