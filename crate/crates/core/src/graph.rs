//! Simple undirected graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A simple undirected graph. Adjacency lists are kept sorted and a bit
/// matrix backs constant-time edge queries.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    matrix: Vec<FixedBitSet>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph").field("n", &self.n()).field("edges", &self.edges().collect::<Vec<_>>()).finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], matrix: vec![FixedBitSet::with_capacity(n); n] }
    }

    /// Builds a graph from an edge list. Duplicate edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::OutOfRange { vertex: u.max(v), n });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.matrix[u].contains(v) {
            return Ok(());
        }
        self.matrix[u].insert(v);
        self.matrix[v].insert(u);
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n() && v < self.n() && self.matrix[u].contains(v) {
            self.matrix[u].set(v, false);
            self.matrix[v].set(u, false);
            self.adj[u].retain(|&w| w != v);
            self.adj[v].retain(|&w| w != u);
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Open neighbourhood of `v`, sorted ascending. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn checked_neighbors(&self, v: usize) -> Result<&[usize]> {
        self.adj.get(v).map(Vec::as_slice).ok_or(Error::OutOfRange { vertex: v, n: self.n() })
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.matrix[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency_row(&self, v: usize) -> &FixedBitSet {
        &self.matrix[v]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Closed neighbourhood of a vertex set as a bitset.
    pub fn closed_neighborhood(&self, vertices: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.n());
        for v in vertices {
            out.insert(v);
            out.union_with(&self.matrix[v]);
        }
        out
    }

    /// Maximal connected vertex sets, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let labels = self.component_labels(&FixedBitSet::with_capacity(self.n()));
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for (v, label) in labels.into_iter().enumerate() {
            let label = label.expect("no vertex is blocked");
            if label == comps.len() {
                comps.push(Vec::new());
            }
            comps[label].push(v);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Component labels of `g - blocked`. Blocked vertices get `None`; labels
    /// are assigned in order of smallest member.
    pub fn component_labels(&self, blocked: &FixedBitSet) -> Vec<Option<usize>> {
        let n = self.n();
        let mut label = vec![None; n];
        let mut next = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if label[start].is_some() || blocked.contains(start) {
                continue;
            }
            label[start] = Some(next);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if label[w].is_none() && !blocked.contains(w) {
                        label[w] = Some(next);
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Vertices reachable from `src` using only vertices in `allowed`
    /// (`src` itself must be allowed).
    pub fn reachable_within(&self, src: usize, allowed: &FixedBitSet) -> FixedBitSet {
        let mut seen = FixedBitSet::with_capacity(self.n());
        if !allowed.contains(src) {
            return seen;
        }
        seen.insert(src);
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if allowed.contains(w) && !seen.contains(w) {
                    seen.insert(w);
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Subgraph induced by `keep`, relabelled `0..|keep|` in ascending order of
    /// the old ids. Returns the graph and the new-id → old-id map.
    pub fn induced_subgraph(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = keep.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (new, &old) in map.iter().enumerate() {
            index[old] = new;
        }
        let mut sub = Graph::empty(map.len());
        for (new_u, &old_u) in map.iter().enumerate() {
            for &old_v in &self.adj[old_u] {
                let new_v = index[old_v];
                if new_v != usize::MAX && new_u < new_v {
                    sub.add_edge(new_u, new_v).expect("relabelled ids are in range");
                }
            }
        }
        (sub, map)
    }

    /// Like [`Graph::induced_subgraph`] with the kept set given as a bitset.
    pub fn induced_by_mask(&self, keep: &FixedBitSet) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = keep.ones().filter(|&v| v < self.n()).collect();
        self.induced_subgraph(&keep)
    }

    /// Shortest `src`–`dst` path by breadth-first search. When a vertex is
    /// dequeued, its undiscovered neighbours in `priority` are enqueued before
    /// the others, each group in ascending id order; a vertex's parent is the
    /// vertex that discovered it.
    pub fn bfs_shortest_path(&self, src: usize, dst: usize, priority: &FixedBitSet) -> Option<Vec<usize>> {
        let n = self.n();
        let mut parent = vec![usize::MAX; n];
        let mut seen = FixedBitSet::with_capacity(n);
        seen.insert(src);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if u == dst {
                break;
            }
            let (first, rest): (Vec<usize>, Vec<usize>) =
                self.adj[u].iter().copied().filter(|&w| !seen.contains(w)).partition(|&w| priority.contains(w));
            for w in first.into_iter().chain(rest) {
                seen.insert(w);
                parent[w] = u;
                queue.push_back(w);
            }
        }
        if !seen.contains(dst) {
            return None;
        }
        let mut path = vec![dst];
        let mut cur = dst;
        while cur != src {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    /// Distances from `src` (`None` for unreachable vertices).
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// True iff `seq` lists distinct vertices, consecutive ones adjacent and
    /// non-consecutive ones non-adjacent. Malformed input yields `false`.
    pub fn is_induced_path(&self, seq: &[usize]) -> bool {
        if seq.is_empty() || seq.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        for &v in seq {
            if seen.put(v) {
                return false;
            }
        }
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if self.has_edge(seq[i], seq[j]) != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// True iff `seq` (distinct, length ≥ 3) is a chordless cycle in listed order.
    pub fn is_induced_cycle(&self, seq: &[usize]) -> bool {
        let t = seq.len();
        if t < 3 || seq.iter().any(|&v| v >= self.n()) {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(self.n());
        for &v in seq {
            if seen.put(v) {
                return false;
            }
        }
        for i in 0..t {
            for j in i + 1..t {
                let consecutive = j == i + 1 || (i == 0 && j == t - 1);
                if self.has_edge(seq[i], seq[j]) != consecutive {
                    return false;
                }
            }
        }
        true
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("permutation keeps ids in range");
        }
        g
    }

    /// Vertices whose bit is set, collected.
    pub fn set_to_vec(set: &FixedBitSet) -> Vec<usize> {
        set.ones().collect()
    }
}

/// Bitset over `0..n` holding the given vertices.
pub fn vertex_set(n: usize, vertices: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(n);
    for v in vertices {
        s.insert(v);
    }
    s
}

/// Small named graphs used throughout the tests and examples.
pub mod families {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Star with centre 0 and leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).unwrap()
    }

    /// Spider S(2,2,2): centre 0, legs 0-1-2, 0-3-4, 0-5-6.
    pub fn spider_222() -> Graph {
        Graph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap()
    }

    /// `K_{2m}` minus a perfect matching `{2i, 2i+1}`.
    pub fn cocktail_party(m: usize) -> Graph {
        let mut g = complete(2 * m);
        for i in 0..m {
            g.remove_edge(2 * i, 2 * i + 1);
        }
        g
    }
}
