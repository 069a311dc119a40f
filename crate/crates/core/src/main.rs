use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use atfp::atfree::find_asteroidal_triple_with;
use atfp::error::{Error, Result};
use atfp::fuzz::{run_fuzz, FuzzConfig};
use atfp::gen::{gen_chain, gen_random, Model};
use atfp::graph::Graph;
use atfp::hardness::{pad_min_degree, reduce_clique_to_itm};
use atfp::idp::solve_idp_with;
use atfp::instance::{check_solution, Instance};
use atfp::io::{
    parse_graph, parse_instance, parse_solution, parse_vertex_list, serialize_graph, serialize_instance,
    serialize_solution,
};
use atfp::oracles::{oracle_idp, oracle_k_in_a_cycle, oracle_k_in_a_path, oracle_k_in_a_tree, DEFAULT_MAX_N};
use atfp::par::Exec;
use atfp::report::{ReportStats, ResultReport};
use atfp::solvers::{
    anchored_itm_with, coinciding_pairs, itm_with, k_in_a_cycle, k_in_a_path, k_in_a_tree, DEFAULT_ITM_BUDGET,
};

#[derive(Parser)]
#[command(name = "atfp", version, about = "Induced disjoint paths and related problems on AT-free graphs")]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// Base seed for generators and fuzzing.
    #[arg(long, global = true, env = "ATFP_SEED", default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Output {
    /// Print the structured report as JSON.
    #[arg(long)]
    json: bool,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Report whether the graph is AT-free; prints a triple if not.
    CheckAtfree { file: PathBuf },
    /// Solve induced disjoint paths.
    Solve {
        file: PathBuf,
        /// Print only the paths, in solution-file format.
        #[arg(long)]
        emit_paths: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Run an exhaustive reference solver.
    Oracle {
        problem: OracleProblem,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Induced path through all terminals of the file's pairs.
    Kpath {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Induced tree through all terminals of the file's pairs.
    Ktree {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Induced cycle through all terminals of the file's pairs.
    Kcycle {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// `k` mutually induced paths between one terminal pair.
    Coinciding {
        file: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Induced topological minor test.
    Itm {
        graph: PathBuf,
        pattern: PathBuf,
        /// Host vertex of each pattern vertex, comma separated.
        #[arg(long)]
        anchors: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ITM_BUDGET)]
        budget: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Write a generated instance.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Check a solution file against an instance.
    Verify { file: PathBuf, solution: PathBuf },
    /// Differential test of the solver against the oracle.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Where to write the shrunk reproducer on a mismatch.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleProblem {
    Idp,
    Path,
    Tree,
    Cycle,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Chain the pairs through shared terminals.
    #[arg(long)]
    chain: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCmd {
    Interval(GenArgs),
    Permutation(GenArgs),
    Cobipartite(GenArgs),
    Rejection(GenArgs),
    /// Clique instance to induced topological minor instance.
    Hardness {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        /// Add four universal vertices first (changes the clique number).
        #[arg(long)]
        pad: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        pattern_output: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            fs::write(p, text).map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(report: ResultReport, out: &Output, started: Instant) -> u8 {
    let mut report = report;
    if out.timing {
        report.stats.wall_time_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    if out.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    verdict(report.answer == atfp::report::Answer::Yes)
}

fn verdict(yes: bool) -> u8 {
    if yes {
        0
    } else {
        1
    }
}

fn basic_stats(g: &Graph, k: usize) -> ReportStats {
    ReportStats { n: g.n(), m: g.m(), k, ..Default::default() }
}

fn run(cli: Cli) -> Result<u8> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let seed = cli.seed;
    let started = Instant::now();
    match cli.cmd {
        Cmd::CheckAtfree { file } => {
            let g = parse_graph(&read(&file)?)?;
            match find_asteroidal_triple_with(&g, exec) {
                None => {
                    println!("at-free");
                    Ok(0)
                }
                Some(t) => {
                    println!("asteroidal triple: {} {} {}", t.a, t.b, t.c);
                    Ok(1)
                }
            }
        }
        Cmd::Solve { file, emit_paths, out } => {
            let inst = parse_instance(&read(&file)?)?;
            let res = solve_idp_with(&inst, exec)?;
            if emit_paths {
                if let Some(sol) = &res.solution {
                    print!("{}", serialize_solution(sol));
                }
                return Ok(verdict(res.answer));
            }
            Ok(emit(ResultReport::from_idp(&res, seed), &out, started))
        }
        Cmd::Oracle { problem, file, max_n } => {
            let inst = parse_instance(&read(&file)?)?;
            let terms = inst.terminals();
            let (name, yes) = match problem {
                OracleProblem::Idp => ("oracle-idp", oracle_idp(&inst, max_n)?.0),
                OracleProblem::Path => ("oracle-path", oracle_k_in_a_path(&inst.g, &terms, max_n)?),
                OracleProblem::Tree => ("oracle-tree", oracle_k_in_a_tree(&inst.g, &terms, max_n)?),
                OracleProblem::Cycle => ("oracle-cycle", oracle_k_in_a_cycle(&inst.g, &terms, max_n)?),
            };
            print!("{}", ResultReport::new(name, seed, yes, basic_stats(&inst.g, inst.k())).to_text());
            Ok(verdict(yes))
        }
        Cmd::Kpath { file, out } => terminal_problem("kpath", &file, &out, seed, started, k_in_a_path),
        Cmd::Ktree { file, out } => terminal_problem("ktree", &file, &out, seed, started, k_in_a_tree),
        Cmd::Kcycle { file, out } => terminal_problem("kcycle", &file, &out, seed, started, k_in_a_cycle),
        Cmd::Coinciding { file, s, t, k, out } => {
            let g = parse_graph(&read(&file)?)?;
            let sol = coinciding_pairs(&g, s, t, k)?;
            let mut report = ResultReport::new("coinciding", seed, sol.is_some(), basic_stats(&g, k));
            report.paths = sol.map(|s| s.paths);
            Ok(emit(report, &out, started))
        }
        Cmd::Itm { graph, pattern, anchors, budget, out } => {
            let g = parse_graph(&read(&graph)?)?;
            let h = parse_graph(&read(&pattern)?)?;
            let yes = match anchors {
                Some(list) => anchored_itm_with(&g, &h, &parse_vertex_list(&list)?, exec)?,
                None => itm_with(&g, &h, budget, exec)?,
            };
            Ok(emit(ResultReport::new("itm", seed, yes, basic_stats(&g, h.m())), &out, started))
        }
        Cmd::Gen(gen) => {
            let (model, args) = match gen {
                GenCmd::Interval(a) => (Model::Interval, a),
                GenCmd::Permutation(a) => (Model::Permutation, a),
                GenCmd::Cobipartite(a) => (Model::Cobipartite, a),
                GenCmd::Rejection(a) => (Model::Rejection, a),
                GenCmd::Hardness { graph, k, pad, output, pattern_output } => {
                    let mut g = parse_graph(&read(&graph)?)?;
                    if pad {
                        g = pad_min_degree(&g);
                    }
                    let red = reduce_clique_to_itm(&g, k)?;
                    write_or_print(output.as_deref(), &serialize_graph(&red.g_prime))?;
                    if let Some(p) = pattern_output {
                        write_or_print(Some(&p), &serialize_graph(&red.h))?;
                    }
                    return Ok(0);
                }
            };
            let inst = if args.chain {
                gen_chain(model, args.n, args.k, seed)?
            } else {
                gen_random(model, args.n, args.k, seed)?
            };
            write_or_print(args.output.as_deref(), &serialize_instance(&inst))?;
            Ok(0)
        }
        Cmd::Verify { file, solution } => {
            let inst = parse_instance(&read(&file)?)?;
            let sol = parse_solution(&read(&solution)?)?;
            match check_solution(&inst, &sol) {
                Ok(()) => {
                    println!("valid");
                    Ok(0)
                }
                Err(v) => {
                    println!("invalid: {v:?}");
                    Ok(1)
                }
            }
        }
        Cmd::Fuzz { trials, workers, max_n, max_k, out_dir } => {
            let cfg = FuzzConfig { trials, seed, max_n, max_k, workers, exec };
            let report = run_fuzz(&cfg);
            for r in &report.results {
                let status = if r.disagreement.is_none() { "ok" } else { "MISMATCH" };
                println!("trial {} seed {} {} n={} k={} {status}", r.trial, r.seed, r.model, r.n, r.k);
            }
            println!("{}/{} trials agree", report.passed(), report.results.len());
            match report.first_mismatch {
                None => Ok(0),
                Some(m) => {
                    let path = out_dir.join(format!("repro-seed{seed}-trial{}.idp", m.trial));
                    let text = format!(
                        "# shrunk reproducer for trial {} ({:?})\n{}",
                        m.trial,
                        m.disagreement,
                        serialize_instance(&m.shrunk)
                    );
                    write_or_print(Some(&path), &text)?;
                    eprintln!("mismatch on trial {}; reproducer written to {}", m.trial, path.display());
                    Ok(4)
                }
            }
        }
    }
}

type TerminalSolver = fn(&Graph, &[usize]) -> Result<Option<Vec<usize>>>;

fn terminal_problem(
    name: &str,
    file: &Path,
    out: &Output,
    seed: u64,
    started: Instant,
    solve: TerminalSolver,
) -> Result<u8> {
    let inst: Instance = parse_instance(&read(file)?)?;
    let terms = inst.terminals();
    let found = solve(&inst.g, &terms)?;
    let mut report = ResultReport::new(name, seed, found.is_some(), basic_stats(&inst.g, terms.len()));
    report.paths = found.map(|p| vec![p]);
    Ok(emit(report, out, started))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
