//! Problems that reduce to tracing induced paths: a path, tree or cycle
//! through given terminals, many paths between one terminal pair, and
//! induced topological minors.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::atfree::{is_caterpillar, require_at_free};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::idp::solve_idp_with;
use crate::instance::{check_solution, pair_violation, Instance, Solution};
use crate::par::Exec;

const WINDOW: usize = 5;
/// Default limit on pattern vertices for [`itm`].
pub const DEFAULT_ITM_BUDGET: usize = 4;

/// Terminals in the component of `last(R)` once the closed neighbourhood of
/// the interior of `R` is removed (keeping `last(R)` itself).
pub fn ahead_set(g: &Graph, r: &[usize], terminals: &FixedBitSet) -> FixedBitSet {
    let Some(&last) = r.last() else {
        return FixedBitSet::with_capacity(g.n());
    };
    let interior = if r.len() > 2 { &r[1..r.len() - 1] } else { &[][..] };
    let mut allowed = g.closed_neighborhood(interior.iter().copied());
    allowed.toggle_range(..);
    allowed.insert(last);
    let mut ahead = g.reachable_within(last, &allowed);
    ahead.intersect_with(terminals);
    ahead
}

fn terminal_mask(g: &Graph, terminals: &[usize]) -> Result<FixedBitSet> {
    let mut mask = FixedBitSet::with_capacity(g.n());
    for &t in terminals {
        if t >= g.n() {
            return Err(Error::OutOfRange { vertex: t, n: g.n() });
        }
        mask.insert(t);
    }
    Ok(mask)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TraceKey {
    start: usize,
    covered: usize,
    window: Vec<usize>,
}

struct TraceNode {
    key: TraceKey,
    parent: Option<usize>,
    /// Terminals hung off the previous head by the move into this node.
    hung: Vec<usize>,
}

/// Breadth-first table over `(start, covered, window)` shared by the path
/// and tree searches. `step` returns the terminals hung by a move or `None`
/// to reject it; `accept` checks a reconstructed result.
struct Tracer<'a> {
    g: &'a Graph,
    terms: FixedBitSet,
    k: usize,
    nodes: Vec<TraceNode>,
    seen: HashMap<TraceKey, usize>,
}

impl<'a> Tracer<'a> {
    fn push(&mut self, key: TraceKey, parent: Option<usize>, hung: Vec<usize>) -> Option<usize> {
        if self.seen.contains_key(&key) {
            return None;
        }
        let id = self.nodes.len();
        self.seen.insert(key.clone(), id);
        self.nodes.push(TraceNode { key, parent, hung });
        Some(id)
    }

    fn chain(&self, id: usize) -> (Vec<usize>, Vec<usize>) {
        let mut path = Vec::new();
        let mut hung = Vec::new();
        let mut at = Some(id);
        while let Some(i) = at {
            let node = &self.nodes[i];
            path.push(*node.key.window.last().unwrap());
            hung.extend(node.hung.iter().copied());
            at = node.parent;
        }
        path.reverse();
        hung.sort_unstable();
        (path, hung)
    }

    fn run(
        mut self,
        mut step: impl FnMut(&Graph, &FixedBitSet, &[usize], usize, &FixedBitSet) -> Option<Vec<usize>>,
        mut accept: impl FnMut(&[usize], &[usize]) -> bool,
    ) -> Option<(Vec<usize>, Vec<usize>)> {
        let g = self.g;
        let mut layer = Vec::new();
        for x in self.terms.ones().collect::<Vec<_>>() {
            let key = TraceKey { start: x, covered: 1, window: vec![x] };
            if let Some(id) = self.push(key, None, Vec::new()) {
                layer.push(id);
            }
        }
        while !layer.is_empty() {
            let mut next = Vec::new();
            for &id in &layer {
                if self.nodes[id].key.covered == self.k {
                    let (path, hung) = self.chain(id);
                    if accept(&path, &hung) {
                        return Some((path, hung));
                    }
                    continue;
                }
                let key = self.nodes[id].key.clone();
                let w = *key.window.last().unwrap();
                let mut ahead = ahead_set(g, &key.window, &self.terms);
                for &r in &key.window {
                    ahead.set(r, false);
                }
                for &v in g.neighbors(w) {
                    if key.window.contains(&v) || key.window[..key.window.len() - 1].iter().any(|&u| g.has_edge(u, v)) {
                        continue;
                    }
                    let Some(hung) = step(g, &self.terms, &key.window, v, &ahead) else { continue };
                    let mut grown = key.window.clone();
                    grown.push(v);
                    let mut still = ahead.clone();
                    still.set(v, false);
                    for &u in &hung {
                        still.set(u, false);
                    }
                    let mut next_ahead = ahead_set(g, &grown, &self.terms);
                    for &r in &grown {
                        next_ahead.set(r, false);
                    }
                    if next_ahead != still {
                        continue;
                    }
                    let covered = key.covered + ahead.count_ones(..) - still.count_ones(..);
                    if grown.len() > WINDOW {
                        grown.remove(0);
                    }
                    let key = TraceKey { start: key.start, covered, window: grown };
                    if let Some(nid) = self.push(key, Some(id), hung) {
                        next.push(nid);
                    }
                }
            }
            layer = next;
        }
        None
    }
}

fn prepare(g: &Graph, terminals: &[usize]) -> Result<(FixedBitSet, usize)> {
    require_at_free(g)?;
    let terms = terminal_mask(g, terminals)?;
    let k = terms.count_ones(..);
    Ok((terms, k))
}

/// An induced path through every terminal, if one exists.
pub fn k_in_a_path(g: &Graph, terminals: &[usize]) -> Result<Option<Vec<usize>>> {
    let (terms, k) = prepare(g, terminals)?;
    if k <= 1 {
        return Ok(Some(terms.ones().collect()));
    }
    let tracer = Tracer { g, terms: terms.clone(), k, nodes: Vec::new(), seen: HashMap::new() };
    let found = tracer.run(
        |_, _, _, _, _| Some(Vec::new()),
        |path, _| g.is_induced_path(path) && terms.ones().all(|t| path.contains(&t)),
    );
    Ok(found.map(|(path, _)| path))
}

/// Vertex set of an induced tree through every terminal, if one exists. The
/// tree found is a caterpillar whose spine joins two terminals.
pub fn k_in_a_tree(g: &Graph, terminals: &[usize]) -> Result<Option<Vec<usize>>> {
    let (terms, k) = prepare(g, terminals)?;
    if k <= 1 {
        return Ok(Some(terms.ones().collect()));
    }
    let tracer = Tracer { g, terms: terms.clone(), k, nodes: Vec::new(), seen: HashMap::new() };
    let found = tracer.run(
        |g, terms, window, v, ahead| {
            let w = *window.last().unwrap();
            let interior = if window.len() > 2 { &window[1..window.len() - 1] } else { &[][..] };
            // terminals hanging off the window, and those about to be hung off w
            let mut near = g.closed_neighborhood(interior.iter().copied());
            near.intersect_with(terms);
            let mut hung_before = g.closed_neighborhood(window.iter().copied());
            hung_before.intersect_with(terms);
            hung_before.difference_with(ahead);
            for &r in window {
                hung_before.set(r, false);
            }
            let mut hang: Vec<usize> =
                g.neighbors(w).iter().copied().filter(|&u| u != v && ahead.contains(u)).collect();
            hang.sort_unstable();
            if hung_before.ones().any(|h| g.has_edge(h, v)) {
                return None;
            }
            for (i, &u) in hang.iter().enumerate() {
                let touches_spine = g.has_edge(u, v) || window.iter().any(|&r| r != w && g.has_edge(u, r));
                let touches_hung = near.ones().any(|t| t != w && g.has_edge(u, t))
                    || hung_before.ones().any(|t| g.has_edge(u, t))
                    || hang[i + 1..].iter().any(|&o| g.has_edge(u, o));
                if touches_spine || touches_hung {
                    return None;
                }
            }
            Some(hang)
        },
        |path, hung| {
            let mut set: Vec<usize> = path.iter().chain(hung).copied().collect();
            set.sort_unstable();
            set.dedup();
            let (sub, _) = g.induced_subgraph(&set);
            terms.ones().all(|t| set.contains(&t))
                && sub.is_connected()
                && sub.m() + 1 == sub.n()
                && is_caterpillar(&sub).unwrap_or(false)
        },
    );
    Ok(found.map(|(path, hung)| {
        let mut set: Vec<usize> = path.into_iter().chain(hung).collect();
        set.sort_unstable();
        set.dedup();
        set
    }))
}

/// An induced cycle through every terminal, if one exists. AT-free graphs
/// have no induced cycle longer than five, so subsets of size three to five
/// are tried in order of size.
pub fn k_in_a_cycle(g: &Graph, terminals: &[usize]) -> Result<Option<Vec<usize>>> {
    let (terms, k) = prepare(g, terminals)?;
    if k > 5 {
        return Ok(None);
    }
    let fixed: Vec<usize> = terms.ones().collect();
    let rest: Vec<usize> = (0..g.n()).filter(|&v| !terms.contains(v)).collect();
    for size in 3.max(k)..=5 {
        if size - k > rest.len() {
            break;
        }
        for extra in rest.iter().copied().combinations(size - k) {
            let set: Vec<usize> = fixed.iter().copied().chain(extra).collect();
            if let Some(cycle) = cycle_order(g, &set) {
                return Ok(Some(cycle));
            }
        }
    }
    Ok(None)
}

/// The vertices of `set` in cycle order when they induce a cycle.
fn cycle_order(g: &Graph, set: &[usize]) -> Option<Vec<usize>> {
    let nbrs = |u: usize| set.iter().copied().filter(move |&v| g.has_edge(u, v));
    if set.iter().any(|&u| nbrs(u).count() != 2) {
        return None;
    }
    let start = *set.iter().min()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = nbrs(start).min()?;
    while cur != start {
        order.push(cur);
        let next = nbrs(cur).find(|&w| w != prev)?;
        prev = cur;
        cur = next;
    }
    (order.len() == set.len() && g.is_induced_cycle(&order)).then_some(order)
}

/// All induced `s`–`t` paths with three or four edges.
fn long_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![s];
    fn grow(g: &Graph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == t {
            if path.len() >= 4 {
                out.push(path.clone());
            }
            return;
        }
        if path.len() == 5 {
            return;
        }
        for &v in g.neighbors(last) {
            if !path.contains(&v) && path[..path.len() - 1].iter().all(|&u| !g.has_edge(u, v)) {
                path.push(v);
                grow(g, t, path, out);
                path.pop();
            }
        }
    }
    grow(g, t, &mut path, &mut out);
    out
}

/// Largest independent set among `cand` (exact branch and bound).
fn max_independent(g: &Graph, cand: &[usize]) -> Vec<usize> {
    fn go(g: &Graph, cand: &[usize], chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if chosen.len() + cand.len() <= best.len() {
            return;
        }
        let Some((&v, rest)) = cand.split_first() else {
            *best = chosen.clone();
            return;
        };
        let without_nbrs: Vec<usize> = rest.iter().copied().filter(|&u| !g.has_edge(u, v)).collect();
        chosen.push(v);
        go(g, &without_nbrs, chosen, best);
        chosen.pop();
        go(g, rest, chosen, best);
    }
    let mut best = Vec::new();
    go(g, cand, &mut Vec::new(), &mut best);
    best
}

/// `k` mutually induced `s`–`t` paths, if they exist.
pub fn coinciding_pairs(g: &Graph, s: usize, t: usize, k: usize) -> Result<Option<Solution>> {
    require_at_free(g)?;
    for v in [s, t] {
        if v >= g.n() {
            return Err(Error::OutOfRange { vertex: v, n: g.n() });
        }
    }
    if s == t {
        return Err(Error::PreconditionViolated("terminals must differ".into()));
    }
    if k == 0 {
        return Ok(Some(Solution::default()));
    }
    if k == 1 {
        let none = FixedBitSet::with_capacity(g.n());
        return Ok(g.bfs_shortest_path(s, t, &none).map(|p| Solution { paths: vec![p] }));
    }
    // any second path would have the edge st as a chord
    if g.has_edge(s, t) {
        return Ok(None);
    }
    let long = long_paths(g, s, t);
    for r in 0..=2.min(k) {
        for picked in long.iter().combinations(r) {
            let fits = picked
                .iter()
                .tuple_combinations()
                .all(|(a, b)| pair_violation(g, (0, a.as_slice()), (1, b.as_slice())).is_none());
            if !fits {
                continue;
            }
            let inner: Vec<usize> = picked.iter().flat_map(|p| p[1..p.len() - 1].iter().copied()).collect();
            let mut gone = g.closed_neighborhood(inner.iter().copied());
            gone.set(s, false);
            gone.set(t, false);
            let common: Vec<usize> =
                g.neighbors(s).iter().copied().filter(|&w| g.has_edge(w, t) && !gone.contains(w)).collect();
            let mis = max_independent(g, &common);
            if mis.len() + r >= k {
                let mut paths: Vec<Vec<usize>> = picked.into_iter().cloned().collect();
                paths.extend(mis.into_iter().take(k - r).map(|w| vec![s, w, t]));
                paths.sort();
                return Ok(Some(Solution { paths }));
            }
        }
    }
    Ok(None)
}

/// Whether `g` has an induced subdivision of `h` with pattern vertex `j`
/// placed at `anchors[j]`.
pub fn anchored_itm(g: &Graph, h: &Graph, anchors: &[usize]) -> Result<bool> {
    anchored_itm_with(g, h, anchors, Exec::default())
}

pub fn anchored_itm_with(g: &Graph, h: &Graph, anchors: &[usize], exec: Exec) -> Result<bool> {
    require_at_free(g)?;
    if anchors.len() != h.n() {
        return Err(Error::PreconditionViolated(format!("{} anchors for {} pattern vertices", anchors.len(), h.n())));
    }
    let mut seen = FixedBitSet::with_capacity(g.n());
    for &a in anchors {
        if a >= g.n() {
            return Err(Error::OutOfRange { vertex: a, n: g.n() });
        }
        if seen.put(a) {
            return Err(Error::PreconditionViolated("anchors must be distinct".into()));
        }
    }
    // branch vertices not joined in the pattern must not be joined in g
    for (i, j) in (0..h.n()).tuple_combinations() {
        if !h.has_edge(i, j) && g.has_edge(anchors[i], anchors[j]) {
            return Ok(false);
        }
    }
    // an isolated pattern vertex takes its closed neighbourhood with it
    let isolated = (0..h.n()).filter(|&j| h.degree(j) == 0).map(|j| anchors[j]);
    let mut keep = g.closed_neighborhood(isolated);
    keep.toggle_range(..);
    let (sub, map) = g.induced_by_mask(&keep);
    let mut index = vec![usize::MAX; g.n()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    let pairs: Vec<(usize, usize)> = h.edges().map(|(i, j)| (index[anchors[i]], index[anchors[j]])).collect();
    if pairs.is_empty() {
        return Ok(true);
    }
    Ok(solve_idp_with(&Instance::new(sub, pairs), exec)?.answer)
}

/// Whether `g` has an induced subdivision of `h`, trying every placement of
/// the pattern vertices. Patterns above `budget` vertices are refused.
pub fn itm(g: &Graph, h: &Graph, budget: usize) -> Result<bool> {
    itm_with(g, h, budget, Exec::default())
}

pub fn itm_with(g: &Graph, h: &Graph, budget: usize, exec: Exec) -> Result<bool> {
    if h.n() > budget {
        return Err(Error::BudgetExceeded { size: h.n(), budget });
    }
    require_at_free(g)?;
    if h.n() > g.n() {
        return Ok(false);
    }
    let placements: Vec<Vec<usize>> = (0..g.n()).permutations(h.n()).collect();
    let hit = exec.find_first(&placements, |anchors| match anchored_itm_with(g, h, anchors, Exec::Sequential) {
        Ok(true) => Some(Ok(())),
        Ok(false) => None,
        Err(e) => Some(Err(e)),
    });
    match hit {
        Some(Ok(())) => Ok(true),
        Some(Err(e)) => Err(e),
        None => Ok(false),
    }
}

/// Checks a coinciding-pairs witness: `k` paths between `s` and `t` that
/// satisfy every solution condition.
pub fn verify_coinciding(g: &Graph, s: usize, t: usize, k: usize, sol: &Solution) -> bool {
    let inst = Instance::new(g.clone(), vec![(s, t); k]);
    check_solution(&inst, sol).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::graph::vertex_set;

    #[test]
    fn ahead_set_examples() {
        let p5 = path(5);
        assert_eq!(ahead_set(&p5, &[0, 1, 2], &vertex_set(5, [0, 4])), vertex_set(5, [4]));
        assert_eq!(ahead_set(&p5, &[2], &vertex_set(5, [0, 4])), vertex_set(5, [0, 4]));
        // the window's interior dominates the remaining terminals
        let k13 = star(3);
        assert_eq!(ahead_set(&k13, &[1, 0, 2], &vertex_set(4, [1, 2, 3])), vertex_set(4, [2]));
    }

    #[test]
    fn path_examples() {
        assert_eq!(k_in_a_path(&path(4), &[0, 3]).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(k_in_a_path(&star(3), &[1, 2, 3]).unwrap(), None);
        let p = k_in_a_path(&cycle(5), &[0, 2, 3]).unwrap().unwrap();
        assert!(cycle(5).is_induced_path(&p) && [0, 2, 3].iter().all(|t| p.contains(t)));
        assert!(k_in_a_path(&cycle(6), &[0]).is_err());
    }

    #[test]
    fn tree_examples() {
        assert_eq!(k_in_a_tree(&star(3), &[1, 2, 3]).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(k_in_a_tree(&Graph::empty(2), &[0, 1]).unwrap(), None);
        assert_eq!(k_in_a_tree(&cycle(5), &[0, 1, 2, 3, 4]).unwrap(), None);
    }

    #[test]
    fn cycle_examples() {
        assert_eq!(k_in_a_cycle(&cycle(5), &[0, 2, 4]).unwrap(), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(k_in_a_cycle(&path(4), &[0, 3]).unwrap(), None);
        assert_eq!(k_in_a_cycle(&cycle(4), &[0, 1, 2, 3]).unwrap(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn coinciding_examples() {
        let c4 = cycle(4);
        assert_eq!(coinciding_pairs(&c4, 0, 2, 2).unwrap().unwrap().paths, vec![vec![0, 1, 2], vec![0, 3, 2]]);
        assert_eq!(coinciding_pairs(&c4, 0, 2, 3).unwrap(), None);
        let mut k4e = complete(4);
        k4e.remove_edge(0, 2);
        assert!(coinciding_pairs(&k4e, 0, 2, 1).unwrap().is_some());
        assert_eq!(coinciding_pairs(&k4e, 0, 2, 2).unwrap(), None);
        // adjacent terminals: the edge, and nothing else
        assert_eq!(coinciding_pairs(&c4, 0, 1, 1).unwrap().unwrap().paths, vec![vec![0, 1]]);
        assert_eq!(coinciding_pairs(&c4, 0, 1, 2).unwrap(), None);
    }

    #[test]
    fn coinciding_uses_long_paths() {
        // C5 plus a vertex 5 joined to 0 and 2: paths 0-1-2, 0-5-2 and 0-4-3-2
        // would need 1 and 5 non-adjacent to 3 and 4, which holds
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (5, 2)]).unwrap();
        let sol = coinciding_pairs(&g, 0, 2, 3).unwrap().unwrap();
        assert!(verify_coinciding(&g, 0, 2, 3, &sol));
        assert_eq!(sol.paths.len(), 3);
    }

    #[test]
    fn itm_examples() {
        assert!(anchored_itm(&path(4), &path(2), &[0, 3]).unwrap());
        assert!(anchored_itm(&cycle(5), &complete(3), &[0, 2, 4]).unwrap());
        assert!(!anchored_itm(&path(4), &complete(3), &[0, 1, 3]).unwrap());
        assert!(itm(&cycle(5), &complete(3), 4).unwrap());
        assert!(!itm(&path(4), &complete(3), 4).unwrap());
        assert!(itm(&star(3), &star(3), 4).unwrap());
        assert!(matches!(itm(&path(6), &path(5), 4), Err(Error::BudgetExceeded { .. })));
    }
}
