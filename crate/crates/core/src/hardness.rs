//! Clique to induced topological minor on cobipartite graphs.
//!
//! Each vertex of the input becomes a vertex of one clique, each edge a
//! vertex of a second clique joined to its two ends. The pattern is a
//! `k`-clique plus a clique of its pairs, each pair vertex joined to the two
//! clique vertices it names.

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::oracle_clique;

/// Largest host graph [`verify_reduction_small`] will search.
pub const VERIFY_MAX_N: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionOutput {
    #[serde(skip)]
    pub g_prime: Graph,
    #[serde(skip)]
    pub h: Graph,
    /// Copy of the input vertices, in order.
    pub u_clique: Vec<usize>,
    /// One vertex per input edge.
    pub w_clique: Vec<usize>,
    /// Input edge `(u, v)`, `u < v`, and its vertex in `w_clique`.
    pub edge_vertex: Vec<((usize, usize), usize)>,
}

fn add_clique(g: &mut Graph, vertices: impl Iterator<Item = usize> + Clone) {
    for (a, b) in vertices.tuple_combinations() {
        g.add_edge(a, b).expect("distinct in-range vertices");
    }
}

pub fn reduce_clique_to_itm(g: &Graph, k: usize) -> Result<ReductionOutput> {
    if k < 5 {
        return Err(Error::PreconditionViolated(format!("k must be at least 5, got {k}")));
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 4) {
        return Err(Error::PreconditionViolated(format!("vertex {v} has degree {} < 4", g.degree(v))));
    }
    let n = g.n();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut gp = Graph::empty(n + edges.len());
    add_clique(&mut gp, 0..n);
    add_clique(&mut gp, n..n + edges.len());
    let mut edge_vertex = Vec::with_capacity(edges.len());
    for (i, &(u, v)) in edges.iter().enumerate() {
        let e = n + i;
        gp.add_edge(e, u)?;
        gp.add_edge(e, v)?;
        edge_vertex.push(((u, v), e));
    }

    let pairs: Vec<(usize, usize)> = (0..k).tuple_combinations().collect();
    let mut h = Graph::empty(k + pairs.len());
    add_clique(&mut h, 0..k);
    add_clique(&mut h, k..k + pairs.len());
    for (i, &(a, b)) in pairs.iter().enumerate() {
        h.add_edge(k + i, a)?;
        h.add_edge(k + i, b)?;
    }
    Ok(ReductionOutput {
        g_prime: gp,
        h,
        u_clique: (0..n).collect(),
        w_clique: (n..n + edges.len()).collect(),
        edge_vertex,
    })
}

/// Adds four vertices adjacent to everything (and each other) so every
/// vertex has degree at least four. This changes the clique number.
pub fn pad_min_degree(g: &Graph) -> Graph {
    let n = g.n();
    let mut out = Graph::empty(n + 4);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
    }
    for extra in n..n + 4 {
        for v in 0..extra {
            out.add_edge(v, extra).expect("in range");
        }
    }
    out
}

/// Whether `h` is isomorphic to an induced subgraph of `g`. Backtracking
/// with forward checking: every unplaced pattern vertex keeps the set of
/// host vertices still consistent with the placed ones, and the smallest
/// such set is branched on next.
pub fn has_induced_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() {
        return false;
    }
    let domains: Vec<FixedBitSet> = (0..h.n())
        .map(|p| {
            let mut d = FixedBitSet::with_capacity(g.n());
            d.extend((0..g.n()).filter(|&v| g.degree(v) >= h.degree(p)));
            d
        })
        .collect();
    fn go(g: &Graph, h: &Graph, domains: Vec<FixedBitSet>, open: Vec<usize>) -> bool {
        let Some(at) = (0..open.len()).min_by_key(|&i| domains[open[i]].count_ones(..)) else {
            return true;
        };
        let p = open[at];
        let mut rest = open.clone();
        rest.swap_remove(at);
        for v in domains[p].ones() {
            let mut next = domains.clone();
            let mut dead = false;
            for &q in &rest {
                let d = &mut next[q];
                if h.has_edge(p, q) {
                    d.intersect_with(g.adjacency_row(v));
                } else {
                    d.difference_with(g.adjacency_row(v));
                    d.set(v, false);
                }
                if d.is_clear() {
                    dead = true;
                    break;
                }
            }
            if !dead && go(g, h, next, rest.clone()) {
                return true;
            }
        }
        false
    }
    go(g, h, domains, (0..h.n()).collect())
}

/// Exact check that `g` has a `k`-clique iff the pattern is an induced
/// subgraph of the constructed host.
pub fn verify_reduction_small(g: &Graph, k: usize, out: &ReductionOutput) -> Result<bool> {
    if out.g_prime.n() > VERIFY_MAX_N {
        return Err(Error::TooLarge { n: out.g_prime.n(), max: VERIFY_MAX_N });
    }
    Ok(oracle_clique(g, k)? == has_induced_subgraph(&out.g_prime, &out.h))
}
