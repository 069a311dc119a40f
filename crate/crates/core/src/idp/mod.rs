//! Induced Disjoint Paths on AT-free graphs.
//!
//! The solver reduces the instance, splits it into independent pieces along
//! the interference graph of the auxiliary terminal graph, and runs the
//! dominating-path dynamic program on each piece.

pub mod dp;
pub mod preprocess;
pub mod structure;

use serde::Serialize;

use crate::atfree::require_at_free;
use crate::error::{Error, Result};
use crate::idp::dp::{ChainContext, DpAudit};
use crate::idp::preprocess::{preprocess, Verdict};
use crate::idp::structure::{
    build_h, build_interference_graph_with, decompose_step6, max_pairs_per_terminal, order_components, step5,
    terminals_triangle_free, through_sets,
};
use crate::instance::{check_solution, Instance, Solution};
use crate::par::Exec;

/// Where the pipeline settled the answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// A pair is disconnected in its private graph after reduction.
    Reduction,
    /// The auxiliary graph has an asteroidal triple.
    AuxiliaryTriple,
    /// Every pair was realised by an edge during reduction.
    Trivial,
    DynamicProgram,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct IdpStats {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// Pairs left after reduction.
    pub reduced_k: usize,
    /// Components of the auxiliary graph.
    pub components: usize,
    pub interference_edges: usize,
    pub pieces: usize,
    pub table_entries: usize,
    pub component_calls: usize,
}

/// Structural facts checked along the way. Empty `violations` means every
/// check held.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct IdpAudit {
    pub triangle_free_terminals: Option<bool>,
    pub max_pairs_per_terminal: usize,
    pub max_cover_size: usize,
    pub dp: DpAudit,
}

impl IdpAudit {
    pub fn violations(&self) -> Vec<String> {
        let mut out = self.dp.violations.clone();
        if self.triangle_free_terminals == Some(false) {
            out.push("three pairwise adjacent terminals survive".into());
        }
        if self.max_pairs_per_terminal > 5 {
            out.push(format!("a terminal lies in {} pairs", self.max_pairs_per_terminal));
        }
        if self.max_cover_size > 2 {
            out.push(format!("cover of size {}", self.max_cover_size));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct IdpOutcome {
    pub answer: bool,
    /// Paths for the original pairs when the answer is yes.
    pub solution: Option<Solution>,
    pub stage: Stage,
    pub stats: IdpStats,
    pub audit: IdpAudit,
}

/// Decides the instance with the default execution mode.
pub fn solve_idp(inst: &Instance) -> Result<IdpOutcome> {
    solve_idp_with(inst, Exec::default())
}

pub fn solve_idp_with(inst: &Instance, exec: Exec) -> Result<IdpOutcome> {
    inst.validate()?;
    require_at_free(&inst.g)?;
    let mut out = IdpOutcome {
        answer: false,
        solution: None,
        stage: Stage::Reduction,
        stats: IdpStats { n: inst.g.n(), m: inst.g.m(), k: inst.k(), ..Default::default() },
        audit: IdpAudit::default(),
    };
    let pre = preprocess(inst)?;
    out.stats.reduced_k = pre.instance.k();
    if pre.verdict == Verdict::No {
        return Ok(out);
    }
    let reduced = &pre.instance;
    let mut reduced_paths: Vec<Vec<usize>> = vec![Vec::new(); reduced.k()];
    if reduced.k() == 0 {
        out.stage = Stage::Trivial;
    } else {
        let auxh = build_h(reduced);
        out.stats.components = auxh.components.len();
        if step5(&auxh) == Verdict::No {
            out.stage = Stage::AuxiliaryTriple;
            return Ok(out);
        }
        out.stage = Stage::DynamicProgram;
        out.audit.triangle_free_terminals = Some(terminals_triangle_free(reduced));
        out.audit.max_pairs_per_terminal = max_pairs_per_terminal(reduced);
        let through = through_sets(reduced);
        let ig = build_interference_graph_with(reduced, &auxh, &through)?;
        out.stats.interference_edges = ig.edges.len();
        let (auxh, ig) = order_components(&ig, &auxh);
        let pieces = decompose_step6(reduced, &auxh, &ig);
        out.stats.pieces = pieces.len();
        let solved = exec.map(&pieces, |piece| -> Result<_> {
            let ctx = ChainContext::new(&piece.instance)?;
            // pieces run side by side, so each chain stays sequential
            let inner = if pieces.len() > 1 { Exec::Sequential } else { exec };
            let res = ctx.solve(inner);
            let cover = ctx.covers.iter().map(Vec::len).max().unwrap_or(0);
            Ok((res, cover))
        });
        let mut all_yes = true;
        for (piece, res) in pieces.iter().zip(solved) {
            let (res, cover) = res?;
            out.stats.table_entries += res.entries;
            out.stats.component_calls += res.component_calls;
            out.audit.max_cover_size = out.audit.max_cover_size.max(cover);
            out.audit.dp.merge(&res.audit);
            match res.paths {
                Some(paths) => {
                    for (local, path) in paths.into_iter().enumerate() {
                        reduced_paths[piece.pairs[local]] = path.iter().map(|&v| piece.vertex_map[v]).collect();
                    }
                }
                None => all_yes = false,
            }
        }
        if !all_yes {
            return Ok(out);
        }
    }
    let mut paths = vec![Vec::new(); inst.k()];
    for (p, path) in reduced_paths.into_iter().enumerate() {
        paths[pre.kept_pairs[p]] = path.into_iter().map(|v| pre.vertex_map[v]).collect();
    }
    for &p in &pre.removed_pairs {
        let (s, t) = inst.pairs[p];
        paths[p] = vec![s, t];
    }
    let solution = Solution { paths };
    if let Err(v) = check_solution(inst, &solution) {
        return Err(Error::Internal(format!("assembled solution fails verification: {v:?}")));
    }
    out.answer = true;
    out.solution = Some(solution);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use crate::instance::fixtures::*;

    #[test]
    fn solve_examples() {
        let out = solve_idp(&p4_single()).unwrap();
        assert_eq!(out.solution.unwrap().paths, vec![vec![0, 1, 2, 3]]);

        assert!(!solve_idp(&caterpillar_tree()).unwrap().answer);

        let out = solve_idp(&c5_two_pairs()).unwrap();
        assert_eq!(out.solution.unwrap().paths, vec![vec![0, 1, 2], vec![2, 3, 4]]);

        let out = solve_idp(&caterpillar_tree_split()).unwrap();
        assert_eq!(out.stats.pieces, 2);
        assert!(out.answer);
    }

    #[test]
    fn solve_rejects_asteroidal_input() {
        let inst = Instance::new(cycle(6), vec![(0, 3)]);
        assert_eq!(solve_idp(&inst).unwrap_err(), Error::NotATFree(0, 2, 4));
    }

    #[test]
    fn adjacent_pairs_use_their_edge() {
        let out = solve_idp(&Instance::new(cycle(4), vec![(0, 1), (2, 3)])).unwrap();
        assert_eq!(out.stage, Stage::Trivial);
        assert_eq!(out.solution.unwrap().paths, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn modes_agree() {
        for inst in [p4_single(), c5_two_pairs(), caterpillar_tree(), caterpillar_tree_split()] {
            let a = solve_idp_with(&inst, Exec::Sequential).unwrap();
            let b = solve_idp_with(&inst, Exec::Parallel).unwrap();
            assert_eq!((a.answer, a.solution, a.stats), (b.answer, b.solution, b.stats));
        }
    }
}
