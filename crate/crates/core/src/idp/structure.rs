//! The auxiliary terminal graph, its components, interference between
//! components, and the conflict covers between consecutive components.

use fixedbitset::FixedBitSet;

use crate::atfree::find_asteroidal_triple;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::idp::preprocess::{gi_mask, Verdict};
use crate::instance::Instance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    Terminal,
    PathVertex,
}

/// One connected component of the auxiliary graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HComponent {
    /// Auxiliary-graph vertex ids, ascending.
    pub vertices: Vec<usize>,
    /// Pair indices, ascending.
    pub pairs: Vec<usize>,
    /// Terminal vertices in graph labels, ascending.
    pub terminals: Vec<usize>,
}

/// `G[T]` plus one degree-two vertex per pair joining its terminals.
/// Terminals get ids `0..|T|` in ascending graph order; the vertex of pair
/// `p` is `|T| + p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryH {
    pub h: Graph,
    pub kind: Vec<VertexKind>,
    /// Auxiliary id → pair index, for path vertices.
    pub pair_of: Vec<Option<usize>>,
    /// Terminal auxiliary id → graph vertex.
    pub to_g: Vec<usize>,
    /// Graph vertex → terminal auxiliary id.
    pub of_g: Vec<Option<usize>>,
    pub components: Vec<HComponent>,
}

impl AuxiliaryH {
    pub fn terminal_count(&self) -> usize {
        self.to_g.len()
    }

    pub fn path_vertex(&self, pair: usize) -> usize {
        self.to_g.len() + pair
    }

    /// Component index containing each pair.
    pub fn component_of_pair(&self) -> Vec<usize> {
        let mut of = vec![0; self.pair_of.iter().flatten().count()];
        for (c, comp) in self.components.iter().enumerate() {
            for &p in &comp.pairs {
                of[p] = c;
            }
        }
        of
    }
}

pub fn build_h(inst: &Instance) -> AuxiliaryH {
    let terminals = inst.terminals();
    let t = terminals.len();
    let k = inst.k();
    let mut of_g = vec![None; inst.g.n()];
    for (i, &v) in terminals.iter().enumerate() {
        of_g[v] = Some(i);
    }
    let mut h = Graph::empty(t + k);
    for (a, &u) in terminals.iter().enumerate() {
        for &v in inst.g.neighbors(u) {
            if let Some(b) = of_g[v] {
                if a < b {
                    h.add_edge(a, b).expect("terminal ids in range");
                }
            }
        }
    }
    for (p, &(s, u)) in inst.pairs.iter().enumerate() {
        let pv = t + p;
        h.add_edge(pv, of_g[s].expect("terminal")).expect("in range");
        h.add_edge(pv, of_g[u].expect("terminal")).expect("in range");
    }
    let kind = (0..t + k).map(|v| if v < t { VertexKind::Terminal } else { VertexKind::PathVertex }).collect();
    let pair_of = (0..t + k).map(|v| v.checked_sub(t)).collect();
    let components = h
        .connected_components()
        .into_iter()
        .map(|vertices| {
            let pairs = vertices.iter().filter_map(|&v| v.checked_sub(t)).collect();
            let terminals = vertices.iter().filter(|&&v| v < t).map(|&v| terminals[v]).collect();
            HComponent { vertices, pairs, terminals }
        })
        .collect();
    AuxiliaryH { h, kind, pair_of, to_g: terminals, of_g, components }
}

/// `No` iff the auxiliary graph has an asteroidal triple.
pub fn step5(auxh: &AuxiliaryH) -> Verdict {
    if find_asteroidal_triple(&auxh.h).is_some() {
        Verdict::No
    } else {
        Verdict::Reduced
    }
}

/// True iff no three terminals are pairwise adjacent.
pub fn terminals_triangle_free(inst: &Instance) -> bool {
    let t = inst.terminals();
    for (a, &x) in t.iter().enumerate() {
        for (b, &y) in t.iter().enumerate().skip(a + 1) {
            if !inst.g.has_edge(x, y) {
                continue;
            }
            if t[b + 1..].iter().any(|&z| inst.g.has_edge(x, z) && inst.g.has_edge(y, z)) {
                return false;
            }
        }
    }
    true
}

/// Largest number of pairs sharing one terminal vertex.
pub fn max_pairs_per_terminal(inst: &Instance) -> usize {
    let mut count = vec![0usize; inst.g.n()];
    for &(s, t) in &inst.pairs {
        count[s] += 1;
        count[t] += 1;
    }
    count.into_iter().max().unwrap_or(0)
}

/// Neighbours of the pair's terminals that lie on some induced path between
/// them inside the pair's private graph.
///
/// For `u` adjacent to `s`, such a path exists iff `u` reaches `t` without
/// touching `N[s]` again: a shortest such route prefixed by `s` is induced.
pub fn through_set(inst: &Instance, p: usize) -> FixedBitSet {
    let g = &inst.g;
    let (s, t) = inst.pairs[p];
    let gp = gi_mask(inst, p);
    let mut out = FixedBitSet::with_capacity(g.n());
    for (from, to) in [(s, t), (t, s)] {
        let mut base = gp.clone();
        base.difference_with(&g.closed_neighborhood([from]));
        for &u in g.neighbors(from) {
            if !gp.contains(u) || u == to || out.contains(u) {
                continue;
            }
            let mut allowed = base.clone();
            allowed.insert(u);
            allowed.insert(to);
            if g.reachable_within(u, &allowed).contains(to) {
                out.insert(u);
            }
        }
    }
    out
}

pub fn through_sets(inst: &Instance) -> Vec<FixedBitSet> {
    (0..inst.k()).map(|p| through_set(inst, p)).collect()
}

fn sets_touch(g: &Graph, a: &FixedBitSet, b: &FixedBitSet) -> bool {
    a.ones().any(|u| !g.adjacency_row(u).is_disjoint(b))
}

/// True iff private induced paths of the two pairs can conflict: some vertex
/// on an induced path of one is adjacent to a vertex on an induced path of
/// the other.
pub fn pairs_interfere(inst: &Instance, auxh: &AuxiliaryH, i: usize, j: usize) -> Result<bool> {
    let of = auxh.component_of_pair();
    if of[i] == of[j] {
        return Err(Error::SameComponent(i, j));
    }
    Ok(sets_touch(&inst.g, &through_set(inst, i), &through_set(inst, j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterferenceGraph {
    pub r: usize,
    /// Sorted `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
}

impl InterferenceGraph {
    pub fn as_graph(&self) -> Graph {
        Graph::from_edges(self.r, &self.edges).expect("component ids in range")
    }

    /// True iff every component is a path.
    pub fn is_union_of_paths(&self) -> bool {
        let g = self.as_graph();
        (0..self.r).all(|v| g.degree(v) <= 2)
            && g.connected_components().iter().all(|c| {
                let inner = self.edges.iter().filter(|&&(a, _)| c.binary_search(&a).is_ok()).count();
                inner + 1 == c.len()
            })
    }
}

/// Component-level interference graph; errors unless it is a disjoint union
/// of paths.
pub fn build_interference_graph(inst: &Instance, auxh: &AuxiliaryH) -> Result<InterferenceGraph> {
    let through = through_sets(inst);
    build_interference_graph_with(inst, auxh, &through)
}

pub(crate) fn build_interference_graph_with(
    inst: &Instance,
    auxh: &AuxiliaryH,
    through: &[FixedBitSet],
) -> Result<InterferenceGraph> {
    let r = auxh.components.len();
    let mut edges = Vec::new();
    for a in 0..r {
        for b in a + 1..r {
            let hit = auxh.components[a]
                .pairs
                .iter()
                .any(|&p| auxh.components[b].pairs.iter().any(|&q| sets_touch(&inst.g, &through[p], &through[q])));
            if hit {
                edges.push((a, b));
            }
        }
    }
    let ig = InterferenceGraph { r, edges };
    if !ig.is_union_of_paths() {
        return Err(Error::NotUnionOfPaths);
    }
    Ok(ig)
}

/// Order in which every path of the interference graph occupies consecutive
/// positions, walked from its smaller endpoint; paths are concatenated by
/// smallest member.
pub fn component_order(ig: &InterferenceGraph) -> Vec<usize> {
    let g = ig.as_graph();
    let mut order = Vec::with_capacity(ig.r);
    for comp in g.connected_components() {
        let start = comp.iter().copied().find(|&v| g.degree(v) <= 1).unwrap_or(comp[0]);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            match g.neighbors(cur).iter().copied().find(|&w| w != prev) {
                Some(next) if order.len() < ig.r && !order.contains(&next) => {
                    prev = cur;
                    cur = next;
                }
                _ => break,
            }
        }
    }
    order
}

/// Renumbers components by `component_order`, returning the reordered
/// auxiliary graph and interference graph.
pub fn order_components(ig: &InterferenceGraph, auxh: &AuxiliaryH) -> (AuxiliaryH, InterferenceGraph) {
    let order = component_order(ig);
    let mut position = vec![0; ig.r];
    for (new, &old) in order.iter().enumerate() {
        position[old] = new;
    }
    let mut out = auxh.clone();
    out.components = order.iter().map(|&c| auxh.components[c].clone()).collect();
    let mut edges: Vec<(usize, usize)> = ig
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (position[a], position[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    (out, InterferenceGraph { r: ig.r, edges })
}

/// A connected piece of the interference graph as a standalone instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subinstance {
    pub instance: Instance,
    /// Component indices (of the auxiliary graph passed in) it covers.
    pub components: Vec<usize>,
    /// Subinstance vertex → vertex of the decomposed instance.
    pub vertex_map: Vec<usize>,
    /// Subinstance pair → pair of the decomposed instance.
    pub pairs: Vec<usize>,
}

/// One subinstance per connected component of the interference graph: its
/// pairs, in a graph without the closed neighbourhoods of all other terminals.
pub fn decompose_step6(inst: &Instance, auxh: &AuxiliaryH, ig: &InterferenceGraph) -> Vec<Subinstance> {
    let g = ig.as_graph();
    g.connected_components()
        .into_iter()
        .map(|comps| {
            let mut pairs: Vec<usize> = comps.iter().flat_map(|&c| auxh.components[c].pairs.iter().copied()).collect();
            pairs.sort_unstable();
            let mut inside = FixedBitSet::with_capacity(inst.g.n());
            for &p in &pairs {
                inside.insert(inst.pairs[p].0);
                inside.insert(inst.pairs[p].1);
            }
            let outside = inst.terminals().into_iter().filter(|&v| !inside.contains(v));
            let mut keep = inst.g.closed_neighborhood(outside);
            keep.toggle_range(..);
            let (sub, map) = inst.g.induced_by_mask(&keep);
            let mut index = vec![usize::MAX; inst.g.n()];
            for (new, &old) in map.iter().enumerate() {
                index[old] = new;
            }
            let sub_pairs = pairs.iter().map(|&p| (index[inst.pairs[p].0], index[inst.pairs[p].1])).collect();
            Subinstance { instance: Instance::new(sub, sub_pairs), components: comps, vertex_map: map, pairs }
        })
        .collect()
}

/// Vertices on private paths of component `i` adjacent to vertices on private
/// paths of component `i + 1`.
pub fn compute_wi(inst: &Instance, auxh: &AuxiliaryH, i: usize) -> FixedBitSet {
    let through = through_sets(inst);
    compute_wi_with(inst, auxh, i, &through)
}

pub(crate) fn compute_wi_with(inst: &Instance, auxh: &AuxiliaryH, i: usize, through: &[FixedBitSet]) -> FixedBitSet {
    let mut w = FixedBitSet::with_capacity(inst.g.n());
    if i + 1 >= auxh.components.len() {
        return w;
    }
    let mut next = FixedBitSet::with_capacity(inst.g.n());
    for &q in &auxh.components[i + 1].pairs {
        next.union_with(&through[q]);
    }
    for &p in &auxh.components[i].pairs {
        for u in through[p].ones() {
            if !inst.g.adjacency_row(u).is_disjoint(&next) {
                w.insert(u);
            }
        }
    }
    w
}

/// Smallest set of at most two terminals of component `i` whose
/// neighbourhood covers `wi`: the empty set, then singletons, then pairs,
/// lexicographically within each size.
pub fn compute_zi(inst: &Instance, auxh: &AuxiliaryH, i: usize, wi: &FixedBitSet) -> Result<Vec<usize>> {
    if wi.is_clear() {
        return Ok(Vec::new());
    }
    let g = &inst.g;
    let terms = &auxh.components[i].terminals;
    let covers = |set: &[usize]| wi.ones().all(|u| set.iter().any(|&z| g.has_edge(u, z)));
    for &a in terms {
        if covers(&[a]) {
            return Ok(vec![a]);
        }
    }
    for (x, &a) in terms.iter().enumerate() {
        for &b in &terms[x + 1..] {
            if covers(&[a, b]) {
                return Ok(vec![a, b]);
            }
        }
    }
    Err(Error::NoCover(i))
}
