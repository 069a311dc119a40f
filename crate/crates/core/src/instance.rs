//! Problem instances, solutions and the solution verifier.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A graph with an ordered list of terminal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub g: Graph,
    pub pairs: Vec<(usize, usize)>,
}

impl Instance {
    pub fn new(g: Graph, pairs: Vec<(usize, usize)>) -> Self {
        Instance { g, pairs }
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    /// Sorted, deduplicated terminal vertices.
    pub fn terminals(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.pairs.iter().flat_map(|&(s, t)| [s, t]).collect();
        set.into_iter().collect()
    }

    /// Checks that terminals are in range, no pair is degenerate and no two
    /// pairs coincide as unordered pairs.
    pub fn validate(&self) -> Result<()> {
        let n = self.g.n();
        for (i, &(s, t)) in self.pairs.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::OutOfRange { vertex: s.max(t), n });
            }
            if s == t {
                return Err(Error::DegeneratePair(i));
            }
        }
        for i in 0..self.pairs.len() {
            for j in i + 1..self.pairs.len() {
                if unordered(self.pairs[i]) == unordered(self.pairs[j]) {
                    return Err(Error::DuplicatePair(i, j));
                }
            }
        }
        Ok(())
    }

    /// Relabels vertices: `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Instance {
        Instance { g: self.g.permuted(perm), pairs: self.pairs.iter().map(|&(s, t)| (perm[s], perm[t])).collect() }
    }
}

pub(crate) fn unordered((a, b): (usize, usize)) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// One vertex sequence per terminal pair, in pair order.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Solution {
    pub paths: Vec<Vec<usize>>,
}

/// Which of the four solution conditions a candidate breaks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    WrongPathCount { expected: usize, got: usize },
    Endpoints { pair: usize },
    SharedVertex { a: usize, b: usize, vertex: usize },
    AdjacentInner { a: usize, b: usize, inner: usize, other: usize },
    NotInduced { pair: usize },
}

fn is_end(path: &[usize], v: usize) -> bool {
    path.first() == Some(&v) || path.last() == Some(&v)
}

/// The conditions that involve two paths: vertex sharing and adjacency.
pub(crate) fn pair_violation(g: &Graph, (a, pa): (usize, &[usize]), (b, pb): (usize, &[usize])) -> Option<Violation> {
    for &v in pa {
        if pb.contains(&v) && !(is_end(pa, v) && is_end(pb, v)) {
            return Some(Violation::SharedVertex { a, b, vertex: v });
        }
    }
    let inner = |p: &[usize]| -> Vec<usize> {
        if p.len() > 2 {
            p[1..p.len() - 1].to_vec()
        } else {
            Vec::new()
        }
    };
    for (x, px, py, y) in [(a, pa, pb, b), (b, pb, pa, a)] {
        for u in inner(px) {
            for &v in py {
                if g.has_edge(u, v) && !(is_end(px, v) && is_end(py, v)) {
                    return Some(Violation::AdjacentInner { a: x, b: y, inner: u, other: v });
                }
            }
        }
    }
    None
}

/// Detailed form of [`verify_solution`].
pub fn check_solution(inst: &Instance, sol: &Solution) -> std::result::Result<(), Violation> {
    if sol.paths.len() != inst.pairs.len() {
        return Err(Violation::WrongPathCount { expected: inst.pairs.len(), got: sol.paths.len() });
    }
    for (i, (&(s, t), p)) in inst.pairs.iter().zip(&sol.paths).enumerate() {
        let ok = match (p.first(), p.last()) {
            (Some(&f), Some(&l)) => p.len() >= 2 && ((f, l) == (s, t) || (f, l) == (t, s)),
            _ => false,
        };
        if !ok {
            return Err(Violation::Endpoints { pair: i });
        }
        if !inst.g.is_induced_path(p) {
            return Err(Violation::NotInduced { pair: i });
        }
    }
    for i in 0..sol.paths.len() {
        for j in i + 1..sol.paths.len() {
            if let Some(v) = pair_violation(&inst.g, (i, &sol.paths[i]), (j, &sol.paths[j])) {
                return Err(v);
            }
        }
    }
    Ok(())
}

/// True iff `sol` is a solution for `inst`: correct end-vertices,
/// paths share only common end-vertices, no inner vertex of one path is
/// adjacent to another path except at a shared end-vertex, and every path is
/// induced.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> bool {
    check_solution(inst, sol).is_ok()
}

/// Named instances used as fixtures across tests, docs and the CLI.
pub mod fixtures {
    use super::Instance;
    use crate::graph::{families, Graph};

    pub fn p4_single() -> Instance {
        Instance::new(families::path(4), vec![(0, 3)])
    }

    pub fn c5_two_pairs() -> Instance {
        Instance::new(families::cycle(5), vec![(0, 2), (2, 4)])
    }

    /// Vertices s1=0, a=1, t1=2, s2=3, b=4, t2=5; edges s1a, at1, s2b, bt2, ab.
    pub fn caterpillar_tree() -> Instance {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)]).unwrap();
        Instance::new(g, vec![(0, 2), (3, 5)])
    }

    /// The caterpillar-tree instance without the edge `ab`.
    pub fn caterpillar_tree_split() -> Instance {
        let mut inst = caterpillar_tree();
        inst.g.remove_edge(1, 4);
        inst
    }
}
