//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion, non-zero exit
//! status if any criterion fails.

#[path = "common/mod.rs"]
mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use atfp::atfree::{cycle_chord_property, is_at_free, is_caterpillar};
use atfp::fuzz::{run_fuzz, FuzzConfig};
use atfp::gen::{gen_chain, gen_corridor, gen_random, rng_for, Model};
use atfp::graph::{families, Graph};
use atfp::hardness::{reduce_clique_to_itm, verify_reduction_small};
use atfp::idp::dp::{ChainContext, NPRIME_CAP};
use atfp::idp::preprocess::{preprocess, Verdict};
use atfp::idp::structure::{build_h, build_interference_graph, decompose_step6, order_components, step5, VertexKind};
use atfp::idp::{solve_idp, solve_idp_with, Stage};
use atfp::instance::{check_solution, Instance};
use atfp::io::serialize_instance;
use atfp::oracles::{
    oracle_anchored_subdivision, oracle_clique, oracle_idp, oracle_k_in_a_cycle, oracle_k_in_a_path,
    oracle_k_in_a_tree, DEFAULT_MAX_N,
};
use atfp::par::Exec;
use atfp::report::ResultReport;
use atfp::solvers::{anchored_itm, coinciding_pairs, itm, k_in_a_cycle, k_in_a_path, k_in_a_tree, verify_coinciding};
use rand::seq::SliceRandom;
use rand::Rng;

const FUZZ_SEED: u64 = 0x5EED_2024;
const FUZZ_TRIALS: usize = 500;

type Check = Result<String, String>;
type Criterion = fn() -> Check;

/// The shared IDP corpus: fuzz trials, fixtures and chained instances.
fn idp_corpus() -> Vec<(String, Instance)> {
    let mut out: Vec<(String, Instance)> = common::fixture_set().into_iter().map(|(n, i)| (n.to_string(), i)).collect();
    for (t, inst) in common::idp_corpus(FUZZ_SEED, FUZZ_TRIALS, 10, 3).into_iter().enumerate() {
        out.push((format!("trial {t}"), inst));
    }
    for seed in 0..150u64 {
        let n = 6 + (seed % 5) as usize;
        let inst = gen_chain(Model::ALL[(seed % 4) as usize], n, 2 + (seed % 3) as usize, seed).unwrap();
        out.push((format!("chain {seed}"), inst));
    }
    for seed in 0..60u64 {
        let inst = gen_corridor(8 + (seed % 5) as usize, 2 + (seed % 2) as usize, seed).unwrap();
        out.push((format!("corridor {seed}"), inst));
    }
    out
}

fn differential() -> Check {
    let report = run_fuzz(&FuzzConfig { trials: FUZZ_TRIALS, seed: FUZZ_SEED, ..Default::default() });
    if let Some(m) = report.first_mismatch {
        return Err(format!(
            "trial {} disagrees ({:?}); shrunk reproducer:\n{}",
            m.trial,
            m.disagreement,
            serialize_instance(&m.shrunk)
        ));
    }
    let mut fixtures = 0;
    for (name, inst) in common::fixture_set() {
        let (expected, _) = oracle_idp(&inst, DEFAULT_MAX_N).map_err(|e| format!("{name}: {e}"))?;
        let got = solve_idp(&inst).map_err(|e| format!("{name}: {e}"))?;
        if got.answer != expected {
            return Err(format!("fixture {name}: solver {} oracle {expected}", got.answer));
        }
        fixtures += 1;
    }
    Ok(format!("{} random trials and {fixtures} fixtures agree with the oracle", report.passed()))
}

fn self_certification() -> Check {
    let mut certified = [0usize; 5];
    for (name, inst) in idp_corpus() {
        let out = solve_idp(&inst).map_err(|e| format!("{name}: {e}"))?;
        if let Some(sol) = &out.solution {
            check_solution(&inst, sol).map_err(|v| format!("{name}: {v:?}"))?;
            certified[0] += 1;
        }
    }
    for seed in 0..400u64 {
        let (g, terms) = common::terminal_case(seed, 3, 11, 4);
        let has_all = |vs: &[usize]| terms.iter().all(|t| vs.contains(t));
        if let Some(t) = k_in_a_tree(&g, &terms).map_err(|e| e.to_string())? {
            let (sub, _) = g.induced_subgraph(&t);
            if !has_all(&t) || !is_caterpillar(&sub).unwrap_or(false) {
                return Err(format!("tree witness fails on seed {seed}"));
            }
            certified[1] += 1;
        }
        if let Some(p) = k_in_a_path(&g, &terms).map_err(|e| e.to_string())? {
            if !has_all(&p) || !g.is_induced_path(&p) {
                return Err(format!("path witness fails on seed {seed}"));
            }
            certified[2] += 1;
        }
        if let Some(c) = k_in_a_cycle(&g, &terms).map_err(|e| e.to_string())? {
            if !has_all(&c) || !g.is_induced_cycle(&c) {
                return Err(format!("cycle witness fails on seed {seed}"));
            }
            certified[3] += 1;
        }
        let s = terms[0];
        let t = (s + 1 + seed as usize % (g.n() - 1).max(1)) % g.n();
        let k = 1 + (seed % 4) as usize;
        if s != t {
            if let Some(sol) = coinciding_pairs(&g, s, t, k).map_err(|e| e.to_string())? {
                if !verify_coinciding(&g, s, t, k, &sol) {
                    return Err(format!("coinciding witness fails on seed {seed}"));
                }
                certified[4] += 1;
            }
        }
    }
    Ok(format!(
        "verified witnesses: idp {} tree {} path {} cycle {} coinciding {}",
        certified[0], certified[1], certified[2], certified[3], certified[4]
    ))
}

/// A random simple cycle of length at least `min_len`, if one is found.
fn sample_cycle(g: &Graph, min_len: usize, rng: &mut impl Rng) -> Option<Vec<usize>> {
    if g.n() == 0 {
        return None;
    }
    let start = rng.random_range(0..g.n());
    let mut walk = vec![start];
    for _ in 0..4 * g.n() {
        let last = *walk.last().unwrap();
        if walk.len() >= min_len && g.has_edge(last, start) {
            return Some(walk);
        }
        let mut next: Vec<usize> = g.neighbors(last).iter().copied().filter(|v| !walk.contains(v)).collect();
        next.shuffle(rng);
        walk.push(*next.first()?);
    }
    None
}

/// Grows a random induced tree by adding vertices with exactly one
/// neighbour in the current set.
fn sample_induced_tree(g: &Graph, rng: &mut impl Rng) -> Vec<usize> {
    let mut tree = vec![rng.random_range(0..g.n())];
    loop {
        let mut options: Vec<usize> = (0..g.n())
            .filter(|v| !tree.contains(v) && tree.iter().filter(|&&u| g.has_edge(u, *v)).count() == 1)
            .collect();
        if options.is_empty() || rng.random_bool(0.2) {
            return tree;
        }
        options.shuffle(rng);
        tree.push(options[0]);
    }
}

fn structural_invariants() -> Check {
    let mut counts = (0usize, 0usize, 0usize, 0usize);
    let mut worst = (0usize, 0usize, 0usize);
    let mut rng = rng_for(FUZZ_SEED);
    for (name, inst) in idp_corpus() {
        let out = solve_idp(&inst).map_err(|e| format!("{name}: {e}"))?;
        let v = out.audit.violations();
        if !v.is_empty() {
            return Err(format!("{name}: {v:?}"));
        }
        let dp = &out.audit.dp;
        if dp.max_nprime > NPRIME_CAP || dp.max_off_path_len > 3 || dp.max_undominated > 2 {
            return Err(format!("{name}: audit out of bounds {dp:?}"));
        }
        worst = (worst.0.max(dp.max_nprime), worst.1.max(dp.max_off_path_len), worst.2.max(dp.max_undominated));

        if out.stage == Stage::DynamicProgram {
            counts.0 += 1;
            let pre = preprocess(&inst).map_err(|e| e.to_string())?;
            assert_eq!(pre.verdict, Verdict::Reduced);
            let auxh = build_h(&pre.instance);
            if step5(&auxh) == Verdict::No {
                return Err(format!("{name}: pipeline and the auxiliary triple check disagree"));
            }
            let ig = build_interference_graph(&pre.instance, &auxh).map_err(|e| e.to_string())?;
            if !ig.is_union_of_paths() {
                return Err(format!("{name}: interference graph is not a union of paths"));
            }
            let (auxh, ig) = order_components(&ig, &auxh);
            for piece in decompose_step6(&pre.instance, &auxh, &ig) {
                let ctx = ChainContext::new(&piece.instance).map_err(|e| format!("{name}: {e}"))?;
                for i in 0..ctx.component_count() {
                    let h = &ctx.auxh;
                    let d = ctx.dominating_path(i);
                    for &p in &h.components[i].pairs {
                        let pv = h.path_vertex(p);
                        if !d.contains(&pv) && !h.h.neighbors(pv).iter().any(|w| d.contains(w)) {
                            return Err(format!("{name}: dominating path misses pair {p}"));
                        }
                    }
                    for &x in d.iter().filter(|&&x| h.kind[x] == VertexKind::Terminal) {
                        let path_nbrs =
                            h.h.neighbors(x).iter().filter(|&&w| h.kind[w] == VertexKind::PathVertex).count();
                        if path_nbrs > 5 {
                            return Err(format!("{name}: {path_nbrs} path vertices at one terminal"));
                        }
                    }
                    if ctx.layout(i).u_sets.iter().any(|s| s.len() > 3) {
                        return Err(format!("{name}: more than two off-path terminals at one path terminal"));
                    }
                    if ctx.covers[i].len() > 2 {
                        return Err(format!("{name}: cover of size {}", ctx.covers[i].len()));
                    }
                }
            }
        }

        for _ in 0..4 {
            if let Some(c) = sample_cycle(&inst.g, 4, &mut rng) {
                counts.1 += 1;
                if !cycle_chord_property(&inst.g, &c).map_err(|e| e.to_string())? {
                    return Err(format!("{name}: cycle {c:?} lacks a short chord"));
                }
            }
        }
        if inst.g.n() > 0 {
            let t = sample_induced_tree(&inst.g, &mut rng);
            let (sub, _) = inst.g.induced_subgraph(&t);
            if !is_caterpillar(&sub).map_err(|e| e.to_string())? {
                return Err(format!("{name}: induced tree {t:?} is not a caterpillar"));
            }
            counts.2 += 1;
        }
        counts.3 += 1;
    }
    Ok(format!(
        "{} instances ({} through the dynamic program), {} cycles, {} induced trees; max off-path set {}, off-path length {}, undominated {}",
        counts.3, counts.0, counts.1, counts.2, worst.0, worst.1, worst.2
    ))
}

fn derived_solvers() -> Check {
    let trials = 400u64;
    for seed in 0..trials {
        let (g, terms) = common::terminal_case(seed ^ 0xC0FFEE, 3, 11, 4);
        let e = |e: atfp::error::Error| format!("seed {seed}: {e}");
        let checks = [
            ("path", k_in_a_path(&g, &terms).map_err(e)?.is_some(), oracle_k_in_a_path(&g, &terms, 12).map_err(e)?),
            ("tree", k_in_a_tree(&g, &terms).map_err(e)?.is_some(), oracle_k_in_a_tree(&g, &terms, 12).map_err(e)?),
            ("cycle", k_in_a_cycle(&g, &terms).map_err(e)?.is_some(), oracle_k_in_a_cycle(&g, &terms, 12).map_err(e)?),
        ];
        for (what, got, want) in checks {
            if got != want {
                return Err(format!("{what} on seed {seed}: solver {got} oracle {want} for {g:?} {terms:?}"));
            }
        }
    }
    Ok(format!("{trials} graphs, path/tree/cycle all agree with the oracles"))
}

fn itm_cases() -> Check {
    let trials = 200u64;
    for seed in 0..trials {
        let (g, order) = common::terminal_case(seed ^ 0x17A, 2, 10, 10);
        let size = order.len().min(1 + (seed % 4) as usize);
        let h = common::random_pattern(size, seed);
        let anchors = &order[..size];
        let got = anchored_itm(&g, &h, anchors).map_err(|e| e.to_string())?;
        let want = oracle_anchored_subdivision(&g, &h, anchors, 12).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("seed {seed}: solver {got} oracle {want}"));
        }
    }
    let c5_k3 = itm(&families::cycle(5), &families::complete(3), 4).map_err(|e| e.to_string())?;
    let p4_k3 = itm(&families::path(4), &families::complete(3), 4).map_err(|e| e.to_string())?;
    if !c5_k3 || p4_k3 {
        return Err(format!("itm(C5, K3) = {c5_k3}, itm(P4, K3) = {p4_k3}"));
    }
    Ok(format!("{trials} anchored cases agree; itm(C5, K3) = yes, itm(P4, K3) = no"))
}

/// A graph with minimum degree at least four and `n + m <= 32`, optionally
/// keeping a planted clique on the first `plant` vertices.
fn hardness_input(seed: u64, plant: usize) -> Graph {
    let mut rng = rng_for(seed);
    let n = rng.random_range(5..=9);
    let mut g = families::complete(n);
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(&mut rng);
    let target = rng.random_range(2 * n..=32 - n);
    for (u, v) in edges {
        if g.m() <= target.min(32 - n) && rng.random_bool(0.3) {
            break;
        }
        if (u < plant && v < plant) || g.degree(u) <= 4 || g.degree(v) <= 4 {
            continue;
        }
        g.remove_edge(u, v);
    }
    g
}

fn hardness() -> Check {
    let (mut verified, mut with, mut without) = (0, 0, 0);
    for seed in 0..160u64 {
        let k = if seed % 10 == 9 { 6 } else { 5 };
        let plant = if seed % 2 == 0 { k } else { 0 };
        let g = hardness_input(seed, plant.min(9));
        if g.n() + g.m() > 32 {
            continue;
        }
        let red = reduce_clique_to_itm(&g, k).map_err(|e| format!("seed {seed}: {e}"))?;
        if red.g_prime.n() != g.n() + g.m() || red.h.n() != k + k * (k - 1) / 2 {
            return Err(format!("seed {seed}: size identity fails"));
        }
        if !is_at_free(&red.g_prime) {
            return Err(format!("seed {seed}: constructed host has an asteroidal triple"));
        }
        if !verify_reduction_small(&g, k, &red).map_err(|e| e.to_string())? {
            return Err(format!("seed {seed}: clique and pattern answers differ"));
        }
        if oracle_clique(&g, k).map_err(|e| e.to_string())? {
            with += 1;
        } else {
            without += 1;
        }
        verified += 1;
    }
    if verified < 100 || with == 0 || without == 0 {
        return Err(format!("too few cases: {verified} verified, {with} with a clique, {without} without"));
    }
    Ok(format!("{verified} reductions verified ({with} with a clique, {without} clique-free)"))
}

fn determinism_and_scale() -> Check {
    for seed in 0..40u64 {
        let model = Model::ALL[(seed % 4) as usize];
        let a = gen_random(model, 10, 3, seed).map_err(|e| e.to_string())?;
        let b = gen_random(model, 10, 3, seed).map_err(|e| e.to_string())?;
        if serialize_instance(&a) != serialize_instance(&b) {
            return Err(format!("seed {seed}: generator is not deterministic"));
        }
        let ra = ResultReport::from_idp(&solve_idp_with(&a, Exec::Parallel).map_err(|e| e.to_string())?, seed);
        let rb = ResultReport::from_idp(&solve_idp_with(&b, Exec::Sequential).map_err(|e| e.to_string())?, seed);
        if ra.to_json() != rb.to_json() || ra.to_text() != rb.to_text() {
            return Err(format!("seed {seed}: reports differ between runs"));
        }
    }
    let cfg = FuzzConfig { trials: 30, seed: 99, ..Default::default() };
    if run_fuzz(&cfg).results != run_fuzz(&FuzzConfig { exec: Exec::Sequential, ..cfg }).results {
        return Err("fuzz results depend on the execution mode".into());
    }
    let mut slowest = Duration::ZERO;
    let (mut through_dp, mut yes) = (0, 0);
    let runs = 10u64;
    for seed in 0..runs {
        let inst = gen_corridor(60, 5, seed).map_err(|e| e.to_string())?;
        let start = Instant::now();
        let out = solve_idp(&inst).map_err(|e| format!("n=60 seed {seed}: {e}"))?;
        let took = start.elapsed();
        if out.stage == Stage::DynamicProgram && out.stats.components == 1 {
            through_dp += 1;
        }
        yes += usize::from(out.answer);
        slowest = slowest.max(took);
        if took > Duration::from_secs(60) {
            return Err(format!("n=60, k=5 seed {seed} took {took:?}"));
        }
    }
    if through_dp == 0 {
        return Err("no n=60 instance reached the dynamic program".into());
    }
    Ok(format!(
        "reports byte-identical across runs and modes; n=60, k=5: {through_dp}/{runs} single-component instances through the dynamic program ({yes} yes), slowest {:.2}s",
        slowest.as_secs_f64()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 7] = [
        ("differential correctness against the oracle", differential),
        ("self-certifying witnesses", self_certification),
        ("structural invariants", structural_invariants),
        ("path, tree and cycle solvers", derived_solvers),
        ("induced topological minors", itm_cases),
        ("clique reduction", hardness),
        ("determinism and scale", determinism_and_scale),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {}. {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {}. {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
