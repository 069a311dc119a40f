//! Instance validation and the reduction rules that make terminal pairs
//! non-adjacent and individually connectable.

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::graph::Graph;
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Reduced,
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessResult {
    pub instance: Instance,
    /// Original indices of pairs dropped because their terminals are adjacent.
    pub removed_pairs: Vec<usize>,
    /// Original index of each surviving pair, in order.
    pub kept_pairs: Vec<usize>,
    /// Surviving vertex → original vertex.
    pub vertex_map: Vec<usize>,
    pub verdict: Verdict,
}

pub fn validate_instance(inst: &Instance) -> Result<()> {
    inst.validate()
}

fn terminal_mask(inst: &Instance) -> FixedBitSet {
    let mut t = FixedBitSet::with_capacity(inst.g.n());
    for &(s, u) in &inst.pairs {
        t.insert(s);
        t.insert(u);
    }
    t
}

/// Induced subinstance on `keep` with the listed pairs, relabelled.
fn restrict(inst: &Instance, keep: &FixedBitSet, pairs: &[usize]) -> (Instance, Vec<usize>) {
    let (g, map) = inst.g.induced_by_mask(keep);
    let mut index = vec![usize::MAX; inst.g.n()];
    for (new, &old) in map.iter().enumerate() {
        index[old] = new;
    }
    let pairs = pairs
        .iter()
        .map(|&p| {
            let (s, t) = inst.pairs[p];
            (index[s], index[t])
        })
        .collect();
    (Instance::new(g, pairs), map)
}

fn all_vertices(n: usize) -> FixedBitSet {
    let mut keep = FixedBitSet::with_capacity(n);
    keep.insert_range(..);
    keep
}

/// Removes the common non-terminal neighbours of every pair of adjacent
/// terminals. Returns the reduced instance and its vertex map.
pub fn step1(inst: &Instance) -> (Instance, Vec<usize>) {
    let g = &inst.g;
    let term = terminal_mask(inst);
    let mut keep = all_vertices(g.n());
    for (u, v) in g.edges() {
        if term.contains(u) && term.contains(v) {
            let mut common = g.adjacency_row(u).clone();
            common.intersect_with(g.adjacency_row(v));
            common.difference_with(&term);
            keep.difference_with(&common);
        }
    }
    let pairs: Vec<usize> = (0..inst.k()).collect();
    restrict(inst, &keep, &pairs)
}

/// Repeatedly removes every terminal whose partners are all its neighbours,
/// together with its non-terminal neighbours and all of its pairs.
/// Returns the reduced instance, its vertex map and the dropped pair indices.
pub fn step2(inst: &Instance) -> (Instance, Vec<usize>, Vec<usize>) {
    let g = &inst.g;
    let mut keep = all_vertices(g.n());
    let mut live: Vec<usize> = (0..inst.k()).collect();
    let mut removed = Vec::new();
    loop {
        let mut term = FixedBitSet::with_capacity(g.n());
        for &p in &live {
            let (s, t) = inst.pairs[p];
            term.insert(s);
            term.insert(t);
        }
        let mut unresolved = FixedBitSet::with_capacity(g.n());
        for &p in &live {
            let (s, t) = inst.pairs[p];
            if !g.has_edge(s, t) {
                unresolved.insert(s);
                unresolved.insert(t);
            }
        }
        let mut u_set = term.clone();
        u_set.difference_with(&unresolved);
        if u_set.is_clear() {
            break;
        }
        for u in u_set.ones() {
            keep.set(u, false);
            for &w in g.neighbors(u) {
                if !term.contains(w) {
                    keep.set(w, false);
                }
            }
        }
        live.retain(|&p| {
            let (s, t) = inst.pairs[p];
            let drop = u_set.contains(s) || u_set.contains(t);
            if drop {
                removed.push(p);
            }
            !drop
        });
    }
    removed.sort_unstable();
    let (reduced, map) = restrict(inst, &keep, &live);
    (reduced, map, removed)
}

/// Drops every pair whose terminals are adjacent; the edge is its path.
pub fn step3(inst: &Instance) -> (Instance, Vec<usize>) {
    let (kept, removed): (Vec<usize>, Vec<usize>) =
        (0..inst.k()).partition(|&p| !inst.g.has_edge(inst.pairs[p].0, inst.pairs[p].1));
    let pairs = kept.iter().map(|&p| inst.pairs[p]).collect();
    (Instance::new(inst.g.clone(), pairs), removed)
}

/// Vertex set of the private graph of pair `i`: everything outside the closed
/// neighbourhoods of other terminals, plus the pair's own terminals.
pub fn gi_mask(inst: &Instance, i: usize) -> FixedBitSet {
    let (s, t) = inst.pairs[i];
    let others = inst.terminals().into_iter().filter(|&v| v != s && v != t);
    let mut mask = inst.g.closed_neighborhood(others);
    mask.toggle_range(..);
    mask.insert(s);
    mask.insert(t);
    mask
}

pub fn build_gi(inst: &Instance, i: usize) -> (Graph, Vec<usize>) {
    inst.g.induced_by_mask(&gi_mask(inst, i))
}

/// `No` iff some pair is disconnected inside its private graph.
pub fn step4(inst: &Instance) -> Verdict {
    let disconnected = inst.pairs.iter().enumerate().any(|(i, &(s, t))| {
        let mask = gi_mask(inst, i);
        !inst.g.reachable_within(s, &mask).contains(t)
    });
    if disconnected {
        Verdict::No
    } else {
        Verdict::Reduced
    }
}

/// Validates, then applies the three reduction rules in order (each to a
/// fixpoint, no outer loop) and the connectivity test.
pub fn preprocess(inst: &Instance) -> Result<PreprocessResult> {
    validate_instance(inst)?;
    let (a, map1) = step1(inst);
    let (b, map2, removed2) = step2(&a);
    let kept2: Vec<usize> = (0..a.k()).filter(|p| removed2.binary_search(p).is_err()).collect();
    let (c, removed3) = step3(&b);
    let kept3: Vec<usize> = (0..b.k()).filter(|p| removed3.binary_search(p).is_err()).collect();

    let vertex_map = map2.iter().map(|&v| map1[v]).collect();
    let kept_pairs: Vec<usize> = kept3.iter().map(|&p| kept2[p]).collect();
    let mut removed_pairs: Vec<usize> = removed2.iter().copied().chain(removed3.iter().map(|&p| kept2[p])).collect();
    removed_pairs.sort_unstable();
    let verdict = step4(&c);
    Ok(PreprocessResult { instance: c, removed_pairs, kept_pairs, vertex_map, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::graph::families::*;
    use crate::instance::fixtures::*;

    #[test]
    fn step1_examples() {
        // triangle 0,1,2 plus pendant partners 3 (of 0) and 4 (of 1)
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)]).unwrap();
        let (out, map) = step1(&Instance::new(g, vec![(0, 4), (1, 3)]));
        assert_eq!(map, vec![0, 1, 3, 4]);
        assert_eq!(out.g.n(), 4);

        let (out, _) = step1(&p4_single());
        assert_eq!(out, p4_single());

        // K4 with 0,1 terminals of two pairs through extra partners 4, 5
        let mut g = complete(4);
        let mut big = Graph::empty(6);
        for (u, v) in g.edges() {
            big.add_edge(u, v).unwrap();
        }
        g = big;
        let (out, map) = step1(&Instance::new(g, vec![(0, 4), (1, 5)]));
        assert_eq!(map, vec![0, 1, 4, 5]);
        assert_eq!(out.g.m(), 1);
    }

    #[test]
    fn step2_examples() {
        let (out, _, removed) = step2(&Instance::new(path(2), vec![(0, 1)]));
        assert_eq!((out.g.n(), out.k(), removed), (0, 0, vec![0]));

        let (out, _, removed) = step2(&p4_single());
        assert_eq!(out, p4_single());
        assert!(removed.is_empty());

        let (out, _, removed) = step2(&Instance::new(path(3), vec![(0, 1), (1, 2)]));
        assert_eq!((out.g.n(), removed), (0, vec![0, 1]));
    }

    #[test]
    fn step3_examples() {
        let (out, removed) = step3(&Instance::new(cycle(4), vec![(0, 1)]));
        assert!(out.pairs.is_empty());
        assert_eq!(removed, vec![0]);
        let (out, removed) = step3(&Instance::new(cycle(4), vec![(0, 2)]));
        assert_eq!(out.pairs, vec![(0, 2)]);
        assert!(removed.is_empty());
        let (out, removed) = step3(&Instance::new(cycle(6), vec![(0, 2), (3, 4), (5, 1), (1, 2)]));
        assert_eq!(out.pairs, vec![(0, 2), (5, 1)]);
        assert_eq!(removed, vec![1, 3]);
    }

    #[test]
    fn private_graphs() {
        let (g1, map) = build_gi(&p4_single(), 0);
        assert_eq!((g1, map), (path(4), vec![0, 1, 2, 3]));
        let cat = caterpillar_tree();
        assert_eq!(build_gi(&cat, 0).1, vec![0, 1, 2]);
        assert_eq!(build_gi(&cat, 1).1, vec![3, 4, 5]);
    }

    #[test]
    fn step4_examples() {
        assert_eq!(step4(&Instance::new(Graph::empty(2), vec![(0, 1)])), Verdict::No);
        assert_eq!(step4(&p4_single()), Verdict::Reduced);
        assert_eq!(step4(&caterpillar_tree()), Verdict::Reduced);
    }

    #[test]
    fn preprocess_examples() {
        let r = preprocess(&p4_single()).unwrap();
        assert_eq!((r.instance, r.verdict), (p4_single(), Verdict::Reduced));

        let r = preprocess(&Instance::new(cycle(4), vec![(0, 1)])).unwrap();
        assert_eq!((r.instance.k(), r.verdict, r.removed_pairs), (0, Verdict::Reduced, vec![0]));

        let r = preprocess(&Instance::new(Graph::empty(2), vec![(0, 1)])).unwrap();
        assert_eq!(r.verdict, Verdict::No);

        let bad = Instance::new(path(3), vec![(0, 2), (2, 0)]);
        assert_eq!(preprocess(&bad).unwrap_err(), Error::DuplicatePair(0, 1));
    }

    #[test]
    fn preprocess_composes_maps() {
        // pair (0,1) is adjacent and 2 is their common neighbour; pair (3,6)
        // survives and 0's partner set is resolved by step 2.
        let g = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        let r = preprocess(&Instance::new(g, vec![(0, 1), (3, 6)])).unwrap();
        assert_eq!(r.kept_pairs, vec![1]);
        assert_eq!(r.removed_pairs, vec![0]);
        let (s, t) = r.instance.pairs[0];
        assert_eq!((r.vertex_map[s], r.vertex_map[t]), (3, 6));
    }
}
