//! The dynamic program over components of the auxiliary graph.
//!
//! For each component a walk is traced through its allowed region along a
//! subdivision of a dominating path of the component, keeping only the last
//! five walk vertices plus the short paths of pairs whose path vertex is off
//! the dominating path. Components of one interference chain are combined by
//! enumerating the vertices they may use near the conflict covers.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use itertools::Itertools;

use crate::atfree::{dominating_path, find_dominating_pair};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::idp::preprocess::gi_mask;
use crate::idp::structure::{
    build_h, build_interference_graph_with, compute_wi_with, compute_zi, order_components, through_sets, AuxiliaryH,
    InterferenceGraph, VertexKind,
};
use crate::instance::{pair_violation, Instance};
use crate::par::Exec;

const WINDOW: usize = 5;
/// Bound on the off-path vertices carried by one table entry.
pub const NPRIME_CAP: usize = 47;
/// Bound on the size of the enumerated cover-neighbourhood subsets.
pub const SUBSET_CAP: usize = 10;

/// Terminals of a dominating path and the bookkeeping derived from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TerminalLayout {
    /// Terminal vertices on the path, in order (graph labels).
    pub u: Vec<usize>,
    /// For each of them: itself plus its terminal neighbours off the path.
    pub u_sets: Vec<Vec<usize>>,
    /// Pairs whose path vertex lies on the path.
    pub o_pairs: Vec<usize>,
    /// Per path position: the pair whose path vertex is here or next.
    pub term: Vec<Option<usize>>,
}

/// Computes the layout for path `d` (auxiliary ids) of component `i`.
pub fn terminal_layout(auxh: &AuxiliaryH, i: usize, d: &[usize]) -> Result<TerminalLayout> {
    let comp = auxh.components.get(i).ok_or_else(|| Error::PreconditionViolated(format!("no component {i}")))?;
    let bad = |msg: &str| Err(Error::PreconditionViolated(msg.to_string()));
    if d.is_empty() || d.iter().any(|v| comp.vertices.binary_search(v).is_err()) {
        return bad("path must be a non-empty vertex sequence inside the component");
    }
    if !d.windows(2).all(|w| auxh.h.has_edge(w[0], w[1])) {
        return bad("consecutive path vertices must be adjacent");
    }
    if auxh.kind[d[0]] != VertexKind::Terminal || auxh.kind[d[d.len() - 1]] != VertexKind::Terminal {
        return bad("path must start and end at terminals");
    }
    let on_path: Vec<usize> = d.iter().copied().filter(|&v| auxh.kind[v] == VertexKind::Terminal).collect();
    let u = on_path.iter().map(|&v| auxh.to_g[v]).collect();
    let u_sets = on_path
        .iter()
        .map(|&v| {
            let mut set: Vec<usize> = auxh
                .h
                .neighbors(v)
                .iter()
                .copied()
                .filter(|w| auxh.kind[*w] == VertexKind::Terminal && !on_path.contains(w))
                .chain([v])
                .map(|w| auxh.to_g[w])
                .collect();
            set.sort_unstable();
            set
        })
        .collect();
    let mut o_pairs: Vec<usize> = d.iter().filter_map(|&v| auxh.pair_of[v]).collect();
    o_pairs.sort_unstable();
    let term =
        (0..d.len()).map(|z| auxh.pair_of[d[z]].or_else(|| d.get(z + 1).and_then(|&w| auxh.pair_of[w]))).collect();
    Ok(TerminalLayout { u, u_sets, o_pairs, term })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Terminal(usize),
    Path(usize),
}

/// Everything about component `i` that does not depend on `X` or `Y`.
#[derive(Debug, Clone)]
struct ComponentSetup {
    pairs: Vec<usize>,
    /// Dominating path in auxiliary ids.
    d: Vec<usize>,
    slots: Vec<Slot>,
    layout: TerminalLayout,
    /// Allowed region: everything outside closed neighbourhoods of terminals
    /// of the other components.
    f_mask: FixedBitSet,
    /// Index into `layout.u` for terminals on the path.
    u_index: Vec<Option<usize>>,
    u_masks: Vec<FixedBitSet>,
    off_pairs: Vec<usize>,
}

/// Structural facts observed while solving, for auditing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DpAudit {
    pub violations: Vec<String>,
    /// Largest off-path vertex set along an accepted entry chain.
    pub max_nprime: usize,
    /// Longest off-path path (edges) in an accepted reconstruction.
    pub max_off_path_len: usize,
    /// Most auxiliary-subdivision vertices left undominated by a traced path.
    pub max_undominated: usize,
    /// Accepting chains whose reconstruction failed the embedding check.
    pub rejected_chains: usize,
    /// Entries dropped because they exceeded the off-path cap.
    pub capped_entries: usize,
}

impl DpAudit {
    pub(crate) fn merge(&mut self, other: &DpAudit) {
        self.violations.extend(other.violations.iter().cloned());
        self.max_nprime = self.max_nprime.max(other.max_nprime);
        self.max_off_path_len = self.max_off_path_len.max(other.max_off_path_len);
        self.max_undominated = self.max_undominated.max(other.max_undominated);
        self.rejected_chains += other.rejected_chains;
        self.capped_entries += other.capped_entries;
    }
}

/// Result of one `component(i, X, Y)` call.
#[derive(Debug, Clone, Default)]
pub struct ComponentOutcome {
    /// Paths `(pair, s → t vertex sequence)` when an embedding exists.
    pub paths: Option<Vec<(usize, Vec<usize>)>>,
    pub entries: usize,
    pub audit: DpAudit,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Entry {
    window: Vec<usize>,
    z: usize,
    /// Sorted `(pair, candidate index)` of short paths in play.
    active: Vec<(usize, usize)>,
}

struct Node {
    entry: Entry,
    parent: Option<usize>,
}

/// A single interference chain: components ordered so interference only
/// happens between neighbours, with their conflict covers.
#[derive(Debug, Clone)]
pub struct ChainContext {
    pub inst: Instance,
    pub auxh: AuxiliaryH,
    pub ig: InterferenceGraph,
    /// `covers[i]` separates component `i` from `i + 1`; empty for the last.
    pub covers: Vec<Vec<usize>>,
    gl: Vec<FixedBitSet>,
    terminals: FixedBitSet,
    setups: Vec<ComponentSetup>,
    pub audit: DpAudit,
}

/// A true vertex set of one level, its parent in the previous level and the
/// component's paths.
type LevelEntry = (Vec<usize>, Option<usize>, Vec<(usize, Vec<usize>)>);

/// Aggregate outcome of the outer dynamic program on one chain.
#[derive(Debug, Clone, Default)]
pub struct ChainOutcome {
    /// One path per pair of the chain instance, when solvable.
    pub paths: Option<Vec<Vec<usize>>>,
    pub entries: usize,
    pub component_calls: usize,
    pub audit: DpAudit,
}

impl ChainContext {
    /// Builds the auxiliary graph, orders its components along the
    /// interference chain and computes dominating paths and covers.
    pub fn new(inst: &Instance) -> Result<ChainContext> {
        let auxh = build_h(inst);
        let through = through_sets(inst);
        let ig = build_interference_graph_with(inst, &auxh, &through)?;
        let (auxh, ig) = order_components(&ig, &auxh);
        if ig.edges.iter().any(|&(a, b)| b != a + 1) {
            return Err(Error::Internal("interference chain is not consecutive after ordering".into()));
        }
        let r = auxh.components.len();
        let mut covers = Vec::with_capacity(r);
        for i in 0..r {
            let w = compute_wi_with(inst, &auxh, i, &through);
            covers.push(compute_zi(inst, &auxh, i, &w)?);
        }
        let gl: Vec<FixedBitSet> = (0..inst.k()).map(|p| gi_mask(inst, p)).collect();
        let mut terminals = FixedBitSet::with_capacity(inst.g.n());
        for v in inst.terminals() {
            terminals.insert(v);
        }
        let mut audit = DpAudit::default();
        let setups = (0..r).map(|i| component_setup(inst, &auxh, i, &mut audit)).collect::<Result<Vec<_>>>()?;
        Ok(ChainContext { inst: inst.clone(), auxh, ig, covers, gl, terminals, setups, audit })
    }

    pub fn component_count(&self) -> usize {
        self.setups.len()
    }

    /// Dominating path of component `i` in auxiliary ids.
    pub fn dominating_path(&self, i: usize) -> &[usize] {
        &self.setups[i].d
    }

    pub fn layout(&self, i: usize) -> &TerminalLayout {
        &self.setups[i].layout
    }

    /// Non-terminal vertices near cover `i` that component `i` could use.
    pub fn cover_candidates(&self, i: usize) -> Vec<usize> {
        let cover = &self.covers[i];
        if cover.is_empty() {
            return Vec::new();
        }
        let setup = &self.setups[i];
        let mut reach = FixedBitSet::with_capacity(self.inst.g.n());
        for &p in &setup.pairs {
            reach.union_with(&self.gl[p]);
        }
        let mut near = FixedBitSet::with_capacity(self.inst.g.n());
        for &z in cover {
            near.union_with(self.inst.g.adjacency_row(z));
        }
        near.intersect_with(&reach);
        near.intersect_with(&setup.f_mask);
        near.difference_with(&self.terminals);
        near.ones().collect()
    }

    /// Decides whether component `i` embeds with no used non-terminal vertex
    /// adjacent to `x` and every used non-terminal vertex near cover `i`
    /// inside `y`; reconstructs the paths on success.
    pub fn component(&self, i: usize, x: &[usize], y: &[usize]) -> ComponentOutcome {
        let g = &self.inst.g;
        let n = g.n();
        let setup = &self.setups[i];
        // vertices an internal path vertex may use
        let mut ok = setup.f_mask.clone();
        ok.difference_with(&self.terminals);
        for &v in x {
            ok.difference_with(g.adjacency_row(v));
            ok.set(v, false);
        }
        let mut near = FixedBitSet::with_capacity(n);
        for &z in &self.covers[i] {
            near.union_with(g.adjacency_row(z));
        }
        for &v in y {
            near.set(v, false);
        }
        ok.difference_with(&near);
        Tracer::new(self, setup, ok).run()
    }

    /// Runs the outer dynamic program over the chain.
    pub fn solve(&self, exec: Exec) -> ChainOutcome {
        let mut out = ChainOutcome { audit: self.audit.clone(), ..Default::default() };
        // per level: minimal true vertex sets with (index into previous level, paths)
        let mut prev: Vec<LevelEntry> = vec![(Vec::new(), None, Vec::new())];
        let mut levels = Vec::with_capacity(self.setups.len());
        for i in 0..self.setups.len() {
            let cand = self.cover_candidates(i);
            let mut level: Vec<LevelEntry> = Vec::new();
            for size in 0..=cand.len().min(SUBSET_CAP) {
                let mut combos = cand.iter().copied().combinations(size).peekable();
                while combos.peek().is_some() {
                    let chunk: Vec<Vec<usize>> = combos
                        .by_ref()
                        .filter(|ys| !level.iter().any(|(known, _, _)| known.iter().all(|v| ys.contains(v))))
                        .take(64)
                        .collect();
                    let results = exec.map(&chunk, |ys| {
                        let mut entries = 0;
                        let mut calls = 0;
                        let mut audit = DpAudit::default();
                        for (xi, (xs, _, _)) in prev.iter().enumerate() {
                            let res = self.component(i, xs, ys);
                            calls += 1;
                            entries += res.entries;
                            audit.merge(&res.audit);
                            if let Some(paths) = res.paths {
                                return (Some((xi, paths)), entries, calls, audit);
                            }
                        }
                        (None, entries, calls, audit)
                    });
                    for (ys, (hit, entries, calls, audit)) in chunk.into_iter().zip(results) {
                        out.entries += entries;
                        out.component_calls += calls;
                        out.audit.merge(&audit);
                        if let Some((xi, paths)) = hit {
                            level.push((ys, Some(xi), paths));
                        }
                    }
                }
            }
            if level.is_empty() {
                return out;
            }
            levels.push(level.clone());
            prev = level;
        }
        // the last component has an empty cover, so its only set is empty
        let mut paths = vec![Vec::new(); self.inst.k()];
        let mut at = 0;
        for level in levels.iter().rev() {
            let (_, back, found) = &level[at];
            for (pair, path) in found {
                paths[*pair] = path.clone();
            }
            at = back.unwrap_or(0);
        }
        out.paths = Some(paths);
        out
    }
}

fn component_setup(inst: &Instance, auxh: &AuxiliaryH, i: usize, audit: &mut DpAudit) -> Result<ComponentSetup> {
    let g = &inst.g;
    let comp = &auxh.components[i];
    let (hi, map) = auxh.h.induced_subgraph(&comp.vertices);
    let local_terms: Vec<usize> = (0..hi.n()).filter(|&v| auxh.kind[map[v]] == VertexKind::Terminal).collect();
    let mut local_paths = FixedBitSet::with_capacity(hi.n());
    for (v, &a) in map.iter().enumerate() {
        if auxh.kind[a] == VertexKind::PathVertex {
            local_paths.insert(v);
        }
    }
    let (x, y) = find_dominating_pair(&hi, Some(&local_terms))?
        .ok_or_else(|| Error::Internal(format!("component {i} has no dominating pair of terminals")))?;
    let d_local = dominating_path(&hi, x, y, &local_paths)?;
    let d: Vec<usize> = d_local.iter().map(|&v| map[v]).collect();
    let layout = terminal_layout(auxh, i, &d)?;

    // every pair has a terminal on the path
    for &p in &comp.pairs {
        let (s, t) = inst.pairs[p];
        if !layout.u.contains(&s) && !layout.u.contains(&t) {
            audit.violations.push(format!("component {i}: dominating path misses both terminals of pair {p}"));
        }
    }
    // each path vertex sees few off-path path vertices and terminals
    for &v in &d {
        let off = auxh.h.neighbors(v).iter().filter(|w| !d.contains(w));
        let (paths, terms): (Vec<usize>, Vec<usize>) = off.partition(|&&w| auxh.kind[w] == VertexKind::PathVertex);
        if paths.len() > 5 || terms.len() > 2 {
            audit.violations.push(format!(
                "component {i}: path vertex {v} sees {} off-path pair vertices and {} off-path terminals",
                paths.len(),
                terms.len()
            ));
        }
    }

    let slots = d
        .iter()
        .map(|&v| match auxh.pair_of[v] {
            Some(p) => Slot::Path(p),
            None => Slot::Terminal(auxh.to_g[v]),
        })
        .collect();
    let others =
        auxh.components.iter().enumerate().filter(|&(j, _)| j != i).flat_map(|(_, c)| c.terminals.iter().copied());
    let mut f_mask = g.closed_neighborhood(others);
    f_mask.toggle_range(..);
    if comp.terminals.iter().any(|&t| !f_mask.contains(t)) {
        return Err(Error::Internal(format!("component {i} loses a terminal to another component")));
    }
    let mut u_index = vec![None; g.n()];
    for (j, &u) in layout.u.iter().enumerate() {
        u_index[u] = Some(j);
    }
    let u_masks = layout
        .u_sets
        .iter()
        .map(|set| {
            let mut m = FixedBitSet::with_capacity(g.n());
            for &v in set {
                m.insert(v);
            }
            m
        })
        .collect();
    let off_pairs = comp.pairs.iter().copied().filter(|p| layout.o_pairs.binary_search(p).is_err()).collect();
    Ok(ComponentSetup { pairs: comp.pairs.clone(), d, slots, layout, f_mask, u_index, u_masks, off_pairs })
}

/// One run of the walk-tracing table for fixed `X`, `Y`.
struct Tracer<'a> {
    ctx: &'a ChainContext,
    setup: &'a ComponentSetup,
    /// Vertices usable as internal path vertices.
    ok: FixedBitSet,
    /// Per pair: usable internal vertices (`ok` within its private graph).
    pair_ok: HashMap<usize, FixedBitSet>,
    /// Per off-path pair: candidate `s → t` paths of length two or three.
    cands: HashMap<usize, Vec<Vec<usize>>>,
    nodes: Vec<Node>,
    seen: HashMap<Entry, usize>,
    audit: DpAudit,
}

impl<'a> Tracer<'a> {
    fn new(ctx: &'a ChainContext, setup: &'a ComponentSetup, ok: FixedBitSet) -> Self {
        let g = &ctx.inst.g;
        let mut pair_ok = HashMap::new();
        for &p in &setup.pairs {
            let mut m = ok.clone();
            m.intersect_with(&ctx.gl[p]);
            pair_ok.insert(p, m);
        }
        let mut cands = HashMap::new();
        for &p in &setup.off_pairs {
            let (s, t) = ctx.inst.pairs[p];
            let allowed = &pair_ok[&p];
            let mut list = Vec::new();
            for &w in g.neighbors(s) {
                if allowed.contains(w) && g.has_edge(w, t) {
                    list.push(vec![s, w, t]);
                }
            }
            for &a in g.neighbors(s) {
                if !allowed.contains(a) || g.has_edge(a, t) {
                    continue;
                }
                for &b in g.neighbors(a) {
                    if allowed.contains(b) && g.has_edge(b, t) && !g.has_edge(b, s) {
                        list.push(vec![s, a, b, t]);
                    }
                }
            }
            cands.insert(p, list);
        }
        Tracer { ctx, setup, ok, pair_ok, cands, nodes: Vec::new(), seen: HashMap::new(), audit: DpAudit::default() }
    }

    fn inner(path: &[usize]) -> &[usize] {
        &path[1..path.len() - 1]
    }

    fn cand(&self, (p, c): (usize, usize)) -> &[usize] {
        &self.cands[&p][c]
    }

    fn touched(&self, window: &[usize]) -> FixedBitSet {
        let mut u = FixedBitSet::with_capacity(self.ctx.inst.g.n());
        for &v in window {
            if let Some(j) = self.setup.u_index[v] {
                u.union_with(&self.setup.u_masks[j]);
            }
        }
        u
    }

    fn pair_touched(&self, p: usize, u: &FixedBitSet) -> bool {
        let (s, t) = self.ctx.inst.pairs[p];
        u.contains(s) || u.contains(t)
    }

    fn nprime(&self, active: &[(usize, usize)]) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(self.ctx.inst.g.n());
        for &a in active {
            for &v in Self::inner(self.cand(a)) {
                m.insert(v);
            }
        }
        m
    }

    /// Every way to add short paths for `new_pairs` to `kept` whose internal
    /// vertices avoid the windows and their non-terminal neighbourhoods.
    fn extensions(
        &self,
        kept: &[(usize, usize)],
        new_pairs: &[usize],
        windows: &[&[usize]],
    ) -> Vec<Vec<(usize, usize)>> {
        let g = &self.ctx.inst.g;
        let mut blocked = FixedBitSet::with_capacity(g.n());
        for w in windows {
            for &v in *w {
                blocked.insert(v);
                if !self.ctx.terminals.contains(v) {
                    blocked.union_with(g.adjacency_row(v));
                }
            }
        }
        let mut out = Vec::new();
        let mut chosen: Vec<(usize, usize)> = kept.to_vec();
        self.extend(0, new_pairs, &blocked, &mut chosen, &mut out);
        out
    }

    fn extend(
        &self,
        at: usize,
        new_pairs: &[usize],
        blocked: &FixedBitSet,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if at == new_pairs.len() {
            let mut done = chosen.clone();
            done.sort_unstable();
            out.push(done);
            return;
        }
        let p = new_pairs[at];
        let g = &self.ctx.inst.g;
        for (c, path) in self.cands[&p].iter().enumerate() {
            if Self::inner(path).iter().any(|&v| blocked.contains(v)) {
                continue;
            }
            let fits = chosen.iter().all(|&other| pair_violation(g, (p, path), (other.0, self.cand(other))).is_none());
            if fits {
                chosen.push((p, c));
                self.extend(at + 1, new_pairs, blocked, chosen, out);
                chosen.pop();
            }
        }
    }

    fn push(&mut self, entry: Entry, parent: Option<usize>) -> Option<usize> {
        let size = self.nprime(&entry.active).count_ones(..);
        if size > NPRIME_CAP {
            self.audit.capped_entries += 1;
            return None;
        }
        if self.seen.contains_key(&entry) {
            return None;
        }
        let id = self.nodes.len();
        self.seen.insert(entry.clone(), id);
        self.nodes.push(Node { entry, parent });
        Some(id)
    }

    fn run(mut self) -> ComponentOutcome {
        let x = match self.setup.slots[0] {
            Slot::Terminal(v) => v,
            Slot::Path(_) => unreachable!("dominating path starts at a terminal"),
        };
        let window = vec![x];
        let u = self.touched(&window);
        let new_pairs: Vec<usize> =
            self.setup.off_pairs.iter().copied().filter(|&p| self.pair_touched(p, &u)).collect();
        let mut layer = Vec::new();
        for active in self.extensions(&[], &new_pairs, &[&window]) {
            if let Some(id) = self.push(Entry { window: window.clone(), z: 0, active }, None) {
                layer.push(id);
            }
        }
        let last = self.setup.slots.len() - 1;
        while !layer.is_empty() {
            let mut next_layer = Vec::new();
            for &id in &layer {
                if self.nodes[id].entry.z == last {
                    if let Some(paths) = self.reconstruct(id) {
                        return ComponentOutcome { paths: Some(paths), entries: self.nodes.len(), audit: self.audit };
                    }
                    continue;
                }
                for (entry, _) in self.successors(id) {
                    if let Some(nid) = self.push(entry, Some(id)) {
                        next_layer.push(nid);
                    }
                }
            }
            layer = next_layer;
        }
        ComponentOutcome { paths: None, entries: self.nodes.len(), audit: self.audit }
    }

    fn successors(&self, id: usize) -> Vec<(Entry, usize)> {
        let g = &self.ctx.inst.g;
        let e = &self.nodes[id].entry;
        let last = *e.window.last().expect("non-empty window");
        let nprime = self.nprime(&e.active);
        let mut out = Vec::new();
        for &u in g.neighbors(last) {
            if !self.setup.f_mask.contains(u) || e.window.contains(&u) {
                continue;
            }
            if e.window[..e.window.len() - 1].iter().any(|&w| g.has_edge(u, w)) {
                continue;
            }
            let z_next = if self.ctx.terminals.contains(u) {
                match self.setup.slots.get(e.z + 1) {
                    Some(&Slot::Terminal(v)) if v == u => e.z + 1,
                    _ => continue,
                }
            } else {
                if nprime.contains(u) || !g.adjacency_row(u).is_disjoint(&nprime) {
                    continue;
                }
                let Some(pair) = self.setup.layout.term[e.z] else { continue };
                if !self.pair_ok[&pair].contains(u) {
                    continue;
                }
                match self.setup.slots[e.z] {
                    Slot::Path(_) => e.z,
                    Slot::Terminal(_) => e.z + 1,
                }
            };
            let mut window = e.window.clone();
            if window.len() == WINDOW {
                window.remove(0);
            }
            window.push(u);
            let touched_next = self.touched(&window);
            let kept: Vec<(usize, usize)> =
                e.active.iter().copied().filter(|&(p, _)| self.pair_touched(p, &touched_next)).collect();
            if self.ctx.terminals.contains(u) {
                let touched_now = self.touched(&e.window);
                let new_pairs: Vec<usize> = self
                    .setup
                    .off_pairs
                    .iter()
                    .copied()
                    .filter(|&p| self.pair_touched(p, &touched_next) && !self.pair_touched(p, &touched_now))
                    .filter(|&p| !kept.iter().any(|&(q, _)| q == p))
                    .collect();
                for active in self.extensions(&kept, &new_pairs, &[&e.window, &window]) {
                    out.push((Entry { window: window.clone(), z: z_next, active }, u));
                }
            } else {
                out.push((Entry { window, z: z_next, active: kept }, u));
            }
        }
        out
    }

    /// Reads the paths off the parent chain of an accepting entry and checks
    /// they form an embedding; `None` when they do not.
    fn reconstruct(&mut self, id: usize) -> Option<Vec<(usize, Vec<usize>)>> {
        let g = &self.ctx.inst.g;
        let mut chain = vec![id];
        while let Some(p) = self.nodes[*chain.last().unwrap()].parent {
            chain.push(p);
        }
        chain.reverse();
        let mut walk = vec![self.nodes[chain[0]].entry.window[0]];
        for &c in &chain[1..] {
            walk.push(*self.nodes[c].entry.window.last().unwrap());
        }
        let mut chosen: HashMap<usize, usize> = HashMap::new();
        let mut consistent = true;
        let mut max_nprime = 0;
        for &c in &chain {
            let active = &self.nodes[c].entry.active;
            max_nprime = max_nprime.max(self.nprime(active).count_ones(..));
            for &(p, k) in active {
                if *chosen.entry(p).or_insert(k) != k {
                    consistent = false;
                }
            }
        }
        let mut paths = Vec::new();
        for &p in &self.setup.pairs {
            let (s, t) = self.ctx.inst.pairs[p];
            if self.setup.layout.o_pairs.binary_search(&p).is_ok() {
                let a = walk.iter().position(|&v| v == s)?;
                let b = walk.iter().position(|&v| v == t)?;
                let mut seg: Vec<usize> = walk[a.min(b)..=a.max(b)].to_vec();
                if a > b {
                    seg.reverse();
                }
                paths.push((p, seg));
            } else {
                let Some(&k) = chosen.get(&p) else {
                    consistent = false;
                    continue;
                };
                paths.push((p, self.cands[&p][k].clone()));
            }
        }
        let embedded = consistent && self.is_embedding(&walk, &paths);
        if !embedded {
            self.audit.rejected_chains += 1;
            return None;
        }
        let off_len = paths
            .iter()
            .filter(|(p, _)| self.setup.layout.o_pairs.binary_search(p).is_err())
            .map(|(_, path)| path.len() - 1)
            .max()
            .unwrap_or(0);
        // undominated vertices of the traced subdivision
        let dominated = g.closed_neighborhood(walk.iter().copied());
        let mut h_prime = FixedBitSet::with_capacity(g.n());
        for (_, path) in &paths {
            for &v in path {
                h_prime.insert(v);
            }
        }
        let undominated = h_prime.difference(&dominated).count();
        if off_len > 3 {
            self.audit.violations.push(format!("off-path path of length {off_len}"));
        }
        if undominated > 2 {
            self.audit.violations.push(format!("traced path leaves {undominated} vertices undominated"));
        }
        if max_nprime > NPRIME_CAP {
            self.audit.violations.push(format!("off-path set of size {max_nprime}"));
        }
        self.audit.max_nprime = self.audit.max_nprime.max(max_nprime);
        self.audit.max_off_path_len = self.audit.max_off_path_len.max(off_len);
        self.audit.max_undominated = self.audit.max_undominated.max(undominated);
        Some(paths)
    }

    fn is_embedding(&self, walk: &[usize], paths: &[(usize, Vec<usize>)]) -> bool {
        let g: &Graph = &self.ctx.inst.g;
        if !g.is_induced_path(walk) {
            return false;
        }
        for (p, path) in paths {
            if !g.is_induced_path(path) {
                return false;
            }
            if Self::inner(path).iter().any(|v| !self.pair_ok[p].contains(*v) || !self.ok.contains(*v)) {
                return false;
            }
        }
        for (a, (p, pa)) in paths.iter().enumerate() {
            for (q, pb) in &paths[a + 1..] {
                if pair_violation(g, (*p, pa), (*q, pb)).is_some() {
                    return false;
                }
            }
        }
        true
    }
}
