//! Exhaustive reference solvers for differential testing.
//!
//! These depend on nothing but the graph type and the solution verifier, so
//! a bug in the fast solvers cannot hide behind a shared helper.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{verify_solution, Instance, Solution};

pub const DEFAULT_MAX_N: usize = 12;
const SMALL_MAX_N: usize = 20;

fn guard(n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::TooLarge { n, max })
    } else {
        Ok(())
    }
}

/// All induced paths from `s` to `t`, depth first, neighbours ascending.
fn induced_paths(g: &Graph, s: usize, t: usize) -> Vec<Vec<usize>> {
    fn walk(g: &Graph, t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if last == t {
            out.push(path.clone());
            return;
        }
        for &v in g.neighbors(last) {
            // v may touch only the current end among the path vertices
            if path.contains(&v) || path[..path.len() - 1].iter().any(|&u| g.has_edge(u, v)) {
                continue;
            }
            path.push(v);
            walk(g, t, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    walk(g, t, &mut vec![s], &mut out);
    out
}

fn ends(p: &[usize]) -> [usize; 2] {
    [p[0], p[p.len() - 1]]
}

/// Whether two induced paths may coexist in a solution.
fn compatible(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let (ea, eb) = (ends(a), ends(b));
    let shared_end = |v: usize| ea.contains(&v) && eb.contains(&v);
    for &u in a {
        for &v in b {
            if u == v && !shared_end(u) {
                return false;
            }
        }
    }
    let inner_ok = |x: &[usize], y: &[usize]| {
        x[1..x.len() - 1].iter().all(|&u| y.iter().all(|&v| !g.has_edge(u, v) || shared_end(v)))
    };
    inner_ok(a, b) && inner_ok(b, a)
}

/// Exhaustive search over combinations of induced paths, one per pair.
pub fn oracle_idp(inst: &Instance, max_n: usize) -> Result<(bool, Option<Solution>)> {
    guard(inst.g.n(), max_n)?;
    inst.validate()?;
    let options: Vec<Vec<Vec<usize>>> = inst.pairs.iter().map(|&(s, t)| induced_paths(&inst.g, s, t)).collect();
    if options.iter().any(Vec::is_empty) {
        return Ok((false, None));
    }
    fn search(g: &Graph, options: &[Vec<Vec<usize>>], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == options.len() {
            return true;
        }
        for c in 0..options[i].len() {
            let cand = &options[i][c];
            if chosen.iter().enumerate().all(|(j, &d)| compatible(g, &options[j][d], cand)) {
                chosen.push(c);
                if search(g, options, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    if !search(&inst.g, &options, &mut chosen) {
        return Ok((false, None));
    }
    let sol = Solution { paths: chosen.iter().enumerate().map(|(i, &c)| options[i][c].clone()).collect() };
    debug_assert!(verify_solution(inst, &sol));
    Ok((true, Some(sol)))
}

/// Whether `k` distinct, mutually compatible induced `s`–`t` paths exist.
pub fn oracle_coinciding(g: &Graph, s: usize, t: usize, k: usize, max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    check_terminals(g, &[s, t])?;
    let options = induced_paths(g, s, t);
    fn pick(g: &Graph, options: &[Vec<usize>], from: usize, chosen: &mut Vec<usize>, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for c in from..options.len() {
            if chosen.iter().all(|&d| compatible(g, &options[d], &options[c])) {
                chosen.push(c);
                if pick(g, options, c + 1, chosen, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    Ok(pick(g, &options, 0, &mut Vec::new(), k))
}

/// Calls `f` on each vertex subset (as a sorted list) containing
/// `terminals`; stops at the first `true`.
fn any_superset(n: usize, terminals: &[usize], mut f: impl FnMut(&[usize]) -> bool) -> bool {
    let mut must = 0u64;
    for &t in terminals {
        must |= 1 << t;
    }
    let free: Vec<usize> = (0..n).filter(|&v| must & (1 << v) == 0).collect();
    let mut set = Vec::with_capacity(n);
    for mask in 0u64..(1 << free.len()) {
        let mut bits = must;
        for (i, &v) in free.iter().enumerate() {
            if mask & (1 << i) != 0 {
                bits |= 1 << v;
            }
        }
        set.clear();
        set.extend((0..n).filter(|&v| bits & (1 << v) != 0));
        if f(&set) {
            return true;
        }
    }
    false
}

/// Degrees within `set` and the edge count of the induced subgraph.
fn induced_shape(g: &Graph, set: &[usize]) -> (Vec<usize>, usize) {
    let deg: Vec<usize> = set.iter().map(|&u| set.iter().filter(|&&v| g.has_edge(u, v)).count()).collect();
    let m = deg.iter().sum::<usize>() / 2;
    (deg, m)
}

fn connected_within(g: &Graph, set: &[usize]) -> bool {
    let Some(&start) = set.first() else { return true };
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        i += 1;
        for &v in set {
            if g.has_edge(u, v) && !seen.contains(&v) {
                seen.push(v);
            }
        }
    }
    seen.len() == set.len()
}

fn check_terminals(g: &Graph, terminals: &[usize]) -> Result<()> {
    match terminals.iter().find(|&&t| t >= g.n()) {
        Some(&t) => Err(Error::OutOfRange { vertex: t, n: g.n() }),
        None => Ok(()),
    }
}

pub fn oracle_k_in_a_path(g: &Graph, terminals: &[usize], max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    check_terminals(g, terminals)?;
    Ok(any_superset(g.n(), terminals, |set| {
        let (deg, m) = induced_shape(g, set);
        set.is_empty() || (m + 1 == set.len() && deg.iter().all(|&d| d <= 2) && connected_within(g, set))
    }))
}

pub fn oracle_k_in_a_tree(g: &Graph, terminals: &[usize], max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    check_terminals(g, terminals)?;
    Ok(any_superset(g.n(), terminals, |set| {
        let (_, m) = induced_shape(g, set);
        set.is_empty() || (m + 1 == set.len() && connected_within(g, set))
    }))
}

pub fn oracle_k_in_a_cycle(g: &Graph, terminals: &[usize], max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    check_terminals(g, terminals)?;
    Ok(any_superset(g.n(), terminals, |set| {
        let (deg, _) = induced_shape(g, set);
        set.len() >= 3 && deg.iter().all(|&d| d == 2) && connected_within(g, set)
    }))
}

/// Whether `g` has a clique on `k` vertices.
pub fn oracle_clique(g: &Graph, k: usize) -> Result<bool> {
    guard(g.n(), SMALL_MAX_N)?;
    fn grow(g: &Graph, clique: &mut Vec<usize>, from: usize, k: usize) -> bool {
        if clique.len() == k {
            return true;
        }
        for v in from..g.n() {
            if g.n() - v < k - clique.len() {
                break;
            }
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
                if grow(g, clique, v + 1, k) {
                    return true;
                }
                clique.pop();
            }
        }
        false
    }
    Ok(grow(g, &mut Vec::new(), 0, k))
}

/// Size of a maximum independent set.
pub fn oracle_mis(g: &Graph) -> Result<usize> {
    guard(g.n(), SMALL_MAX_N)?;
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|u| g.neighbors(u).iter().fold(0u32, |acc, &v| acc | 1 << v)).collect();
    fn best(adj: &[u32], left: u32) -> usize {
        if left == 0 {
            return 0;
        }
        let v = left.trailing_zeros() as usize;
        let skip = best(adj, left & !(1 << v));
        let take = 1 + best(adj, left & !(1 << v) & !adj[v]);
        skip.max(take)
    }
    Ok(best(&adj, if n == 0 { 0 } else { u32::MAX >> (32 - n) }))
}

/// Whether the graph on `set` is a subdivision of `h` with pattern vertex
/// `j` sent to `branch[j]`.
fn is_subdivision_at(g: &Graph, set: &[usize], h: &Graph, branch: &[usize]) -> bool {
    let is_branch = |v: usize| branch.contains(&v);
    let nbrs = |u: usize| set.iter().copied().filter(move |&v| g.has_edge(u, v));
    // every subdividing vertex has degree two
    if set.iter().any(|&v| !is_branch(v) && nbrs(v).count() != 2) {
        return false;
    }
    let mut used = vec![false; g.n()];
    let mut found = Vec::new();
    for (a, &u) in branch.iter().enumerate() {
        for first in nbrs(u) {
            let (mut prev, mut cur) = (u, first);
            while !is_branch(cur) {
                used[cur] = true;
                let next = nbrs(cur).find(|&w| w != prev).unwrap();
                prev = cur;
                cur = next;
            }
            let b = branch.iter().position(|&w| w == cur).unwrap();
            if a == b {
                return false;
            }
            if a < b {
                found.push((a, b));
            }
        }
    }
    // subdividing vertices off every branch-to-branch chain lie on cycles
    if set.iter().any(|&v| !is_branch(v) && !used[v]) {
        return false;
    }
    found.sort_unstable();
    let before = found.len();
    found.dedup();
    if found.len() != before {
        return false;
    }
    let mut want: Vec<(usize, usize)> = h.edges().collect();
    want.sort_unstable();
    found == want
}

/// Whether some induced subgraph of `g` is a subdivision of `h` with pattern
/// vertex `j` placed at `anchors[j]`.
pub fn oracle_anchored_subdivision(g: &Graph, h: &Graph, anchors: &[usize], max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    check_terminals(g, anchors)?;
    if anchors.len() != h.n() {
        return Err(Error::PreconditionViolated("one anchor per pattern vertex".into()));
    }
    let mut sorted = anchors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != anchors.len() {
        return Err(Error::PreconditionViolated("anchors must be distinct".into()));
    }
    Ok(any_superset(g.n(), anchors, |set| is_subdivision_at(g, set, h, anchors)))
}

/// Whether some induced subgraph of `g` is a subdivision of `h`.
pub fn oracle_induced_subdivision(g: &Graph, h: &Graph, max_n: usize) -> Result<bool> {
    guard(g.n(), max_n)?;
    if h.n() > g.n() {
        return Ok(false);
    }
    let mut branch = Vec::with_capacity(h.n());
    fn place(g: &Graph, h: &Graph, branch: &mut Vec<usize>) -> bool {
        if branch.len() == h.n() {
            return any_superset(g.n(), branch, |set| is_subdivision_at(g, set, h, branch));
        }
        for v in 0..g.n() {
            if !branch.contains(&v) {
                branch.push(v);
                if place(g, h, branch) {
                    return true;
                }
                branch.pop();
            }
        }
        false
    }
    Ok(place(g, h, &mut branch))
}
