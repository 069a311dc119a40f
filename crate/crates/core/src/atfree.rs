//! Asteroidal triples, dominating pairs and dominating paths.
//!
//! Everything here is definition-based: recognition enumerates triples over
//! the per-vertex component structure of `g - N[w]`, and dominating pairs are
//! found by exhaustive pair search with a per-vertex component check.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::Exec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AsteroidalTriple {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// For every vertex `w`, the component labels of `g - N[w]`.
fn avoiding_labels(g: &Graph) -> Vec<Vec<Option<usize>>> {
    (0..g.n()).map(|w| g.component_labels(&g.closed_neighborhood([w]))).collect()
}

fn same_component(labels: &[Option<usize>], x: usize, y: usize) -> bool {
    matches!((labels[x], labels[y]), (Some(p), Some(q)) if p == q)
}

fn check_triple(g: &Graph, labels: &[Vec<Option<usize>>], a: usize, b: usize, c: usize) -> bool {
    !g.has_edge(a, b)
        && !g.has_edge(a, c)
        && !g.has_edge(b, c)
        && same_component(&labels[c], a, b)
        && same_component(&labels[b], a, c)
        && same_component(&labels[a], b, c)
}

pub fn is_asteroidal_triple(g: &Graph, a: usize, b: usize, c: usize) -> bool {
    if a == b || b == c || a == c {
        return false;
    }
    let lab = |w: usize| g.component_labels(&g.closed_neighborhood([w]));
    !g.has_edge(a, b)
        && !g.has_edge(a, c)
        && !g.has_edge(b, c)
        && same_component(&lab(c), a, b)
        && same_component(&lab(b), a, c)
        && same_component(&lab(a), b, c)
}

/// Lexicographically smallest asteroidal triple, or `None` iff `g` is AT-free.
pub fn find_asteroidal_triple(g: &Graph) -> Option<AsteroidalTriple> {
    find_asteroidal_triple_with(g, Exec::default())
}

pub fn find_asteroidal_triple_with(g: &Graph, exec: Exec) -> Option<AsteroidalTriple> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    let labels = avoiding_labels(g);
    let firsts: Vec<usize> = (0..n).collect();
    exec.find_first(&firsts, |&a| {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                continue;
            }
            for c in b + 1..n {
                if check_triple(g, &labels, a, b, c) {
                    return Some(AsteroidalTriple { a, b, c });
                }
            }
        }
        None
    })
}

pub fn is_at_free(g: &Graph) -> bool {
    find_asteroidal_triple(g).is_none()
}

/// Errors with [`Error::NotATFree`] carrying the smallest triple.
pub fn require_at_free(g: &Graph) -> Result<()> {
    match find_asteroidal_triple(g) {
        Some(t) => Err(Error::NotATFree(t.a, t.b, t.c)),
        None => Ok(()),
    }
}

/// True iff every `x`–`y` path dominates `g`: for each vertex `v`, either
/// `x` or `y` lies in `N[v]`, or `x` and `y` are separated by `N[v]`.
pub fn is_dominating_pair(g: &Graph, x: usize, y: usize) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if x == y {
        return Err(Error::PreconditionViolated("dominating pair needs two distinct vertices".into()));
    }
    Ok(dominating_pair_unchecked(g, x, y))
}

fn dominating_pair_unchecked(g: &Graph, x: usize, y: usize) -> bool {
    (0..g.n()).all(|v| {
        if v == x || v == y || g.has_edge(v, x) || g.has_edge(v, y) {
            return true;
        }
        let reach = g.reachable_within(x, &{
            let mut allowed = g.closed_neighborhood([v]);
            allowed.toggle_range(..);
            allowed
        });
        !reach.contains(y)
    })
}

/// Smallest lexicographic dominating pair `(x, y)`, `x < y`, with both ends
/// drawn from `restrict` when given.
pub fn find_dominating_pair(g: &Graph, restrict: Option<&[usize]>) -> Result<Option<(usize, usize)>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut cand: Vec<usize> = match restrict {
        Some(r) => r.to_vec(),
        None => (0..g.n()).collect(),
    };
    cand.sort_unstable();
    cand.dedup();
    for (i, &x) in cand.iter().enumerate() {
        for &y in &cand[i + 1..] {
            if dominating_pair_unchecked(g, x, y) {
                return Ok(Some((x, y)));
            }
        }
    }
    Ok(None)
}

/// True iff every vertex of `g` is in `set` or adjacent to it.
pub fn dominates(g: &Graph, set: &[usize]) -> bool {
    g.closed_neighborhood(set.iter().copied()).count_ones(..) == g.n()
}

/// Shortest `x`–`y` path with path-vertex-first BFS tie-breaking; fails if
/// the result does not dominate `h` (the pair was not a dominating pair).
pub fn dominating_path(h: &Graph, x: usize, y: usize, path_vertices: &FixedBitSet) -> Result<Vec<usize>> {
    let path = h.bfs_shortest_path(x, y, path_vertices).ok_or(Error::Disconnected)?;
    if !dominates(h, &path) {
        return Err(Error::Internal(format!("path {path:?} from ({x}, {y}) does not dominate")));
    }
    Ok(path)
}

fn is_tree(g: &Graph) -> bool {
    g.n() > 0 && g.m() + 1 == g.n() && g.is_connected()
}

/// True iff removing all leaves of the tree leaves a path (or < 2 vertices).
pub fn is_caterpillar(g: &Graph) -> Result<bool> {
    if !is_tree(g) {
        return Err(Error::NotATree);
    }
    let spine: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) > 1).collect();
    if spine.len() < 2 {
        return Ok(true);
    }
    let (core, _) = g.induced_subgraph(&spine);
    // a subtree whose maximum degree is at most two is a path
    Ok((0..core.n()).all(|v| core.degree(v) <= 2))
}

/// Short-chord property of cycles in AT-free graphs: some `cycle[i]` and
/// `cycle[i + j]` (1-based, `2 <= j <= 4`, no wraparound) are adjacent.
pub fn cycle_chord_property(g: &Graph, cycle: &[usize]) -> Result<bool> {
    let t = cycle.len();
    let valid = t >= 3
        && cycle.iter().all(|&v| v < g.n())
        && {
            let mut seen = FixedBitSet::with_capacity(g.n());
            cycle.iter().all(|&v| !seen.put(v))
        }
        && cycle.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[t - 1], cycle[0]);
    if !valid {
        return Err(Error::NotACycle);
    }
    for i in 0..t {
        for j in 2..=4 {
            if i + j < t && g.has_edge(cycle[i], cycle[i + j]) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
