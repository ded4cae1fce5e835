//! Command-line front end for the workspace: solvers, the matching
//! spectrum, formula-to-graph reductions, empirical verifiers, graph
//! generators, and coloring validation, all over the KECS-G text format.
//!
//! Exit codes: 0 success or verdict-equality, 1 usage error, 2 format
//! error, 3 budget error, 4 verdict mismatch (a counterexample or an
//! invalid coloring, with the report printed). Every failure prints one
//! `error[<class>]: <message>` line to stderr.

use clap::{Parser, Subcommand, ValueEnum};
use graph_core::format::{self, KecsDocument};
use graph_core::{gen, ColorConstraintMap, Graph, KEdgeColoring, Violation};
use oracle::{OracleError, SearchBudget};
use reduction_gen::ReductionError;
use sat_core::TwoCnf;
use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// stdout writes treat a closed pipe as an early, quiet success, the way
/// line filters expect, instead of a panic.
macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "kecs",
    about = "Exact solvers and verifiers for maximum k-edge-colorable subgraphs",
    version,
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum k-edge-colorable subgraph: prints the optimum and writes a
    /// coloring file next to the input
    Solve {
        /// Number of colors
        #[arg(long)]
        k: usize,
        /// Solver choice; auto routes by input shape
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Overrides the edge budget of search-based methods
        #[arg(long)]
        budget_edges: Option<usize>,
        /// Graph file (KECS-G v1)
        graph: PathBuf,
    },
    /// Matching spectrum: nu, ell, L with witness matchings
    Spectrum {
        /// Overrides the enumeration edge budget
        #[arg(long)]
        budget_edges: Option<usize>,
        /// Graph file (KECS-G v1)
        graph: PathBuf,
    },
    /// Builds a reduction instance from a 2-CNF and writes its directory
    Reduce {
        /// Instance kind to build
        kind: ReduceKind,
        /// Decision parameter K of the source problem
        #[arg(long = "K")]
        k_param: usize,
        /// Weight exponent, min2sat only (defaults to 16m)
        #[arg(long)]
        q: Option<usize>,
        /// Formula file (DIMACS, clauses of width 2)
        cnf: PathBuf,
        /// Output directory for graph.kecs, meta.txt, roles.tsv
        out_dir: PathBuf,
    },
    /// Measures one claimed identity on a formula's instance and prints
    /// the report; equality exits 0, a counterexample exits 4
    Verify {
        /// Which identity to measure
        law: Law,
        /// Decision parameter K of the source problem
        #[arg(long = "K")]
        k_param: usize,
        /// Weight exponent, thm3 only (defaults to 16m)
        #[arg(long)]
        q: Option<usize>,
        /// Overrides the edge budget (default: the instance edge count)
        #[arg(long)]
        budget_edges: Option<usize>,
        /// Formula file (DIMACS, clauses of width 2)
        cnf: PathBuf,
    },
    /// Prints a named graph as KECS-G; seeded families are byte-identical
    /// across runs
    Gen {
        family: Family,
        /// Seed for the random families
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Vertex count for the sized families
        #[arg(long, default_value_t = 8)]
        n: usize,
        /// Edge or attachment probability for the random families
        #[arg(long, default_value_t = 0.5)]
        p: f64,
    },
    /// Validates a coloring file against a graph; violations exit 4
    Check {
        /// Number of colors the coloring file is bound to
        #[arg(long)]
        k: usize,
        /// Graph file (KECS-G v1)
        graph: PathBuf,
        /// Coloring file produced by solve
        coloring: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Flow,
    #[value(name = "forest-dp")]
    ForestDp,
    Brute,
    #[value(name = "weighted-flow")]
    WeightedFlow,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReduceKind {
    Max2sat,
    #[value(name = "max2sat-colored")]
    Max2satColored,
    Min2sat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Thm1,
    Lemma2,
    Thm3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Path,
    Cycle,
    Star,
    K33,
    Petersen,
    Fig1,
    #[value(name = "random-bipartite")]
    RandomBipartite,
    #[value(name = "random-forest")]
    RandomForest,
}

const EXIT_MISMATCH: u8 = 4;

struct Failure {
    code: u8,
    class: &'static str,
    msg: String,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        class: "usage",
        msg: msg.into(),
    }
}

fn format_failure(err: impl Display) -> Failure {
    Failure {
        code: 2,
        class: "format",
        msg: err.to_string(),
    }
}

fn budget_failure(err: impl Display) -> Failure {
    Failure {
        code: 3,
        class: "budget",
        msg: err.to_string(),
    }
}

fn internal(err: impl Display) -> Failure {
    Failure {
        code: 1,
        class: "internal",
        msg: err.to_string(),
    }
}

fn from_oracle(err: OracleError) -> Failure {
    budget_failure(err)
}

fn from_reduction(err: ReductionError) -> Failure {
    match err {
        ReductionError::Sat(e) => format_failure(e),
        ReductionError::Graph(e) => format_failure(e),
        ReductionError::Oracle(e) => from_oracle(e),
        ReductionError::Flow(e) => usage(e.to_string()),
        ReductionError::KOutOfRange { .. } | ReductionError::QBelowMinimum { .. } => {
            usage(err.to_string())
        }
        ReductionError::WrongKind { .. }
        | ReductionError::Invariant(_)
        | ReductionError::Certificate(_) => internal(err),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let first = e.to_string();
                let line = first.lines().next().unwrap_or("invalid arguments");
                let line = line.strip_prefix("error: ").unwrap_or(line);
                eprintln!("error[usage]: {line}");
                return ExitCode::from(1);
            }
            // --help and --version print to stdout and succeed
            out!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error[{}]: {}", f.class, f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Solve {
            k,
            method,
            budget_edges,
            graph,
        } => run_solve(k, method, budget_edges, &graph),
        Command::Spectrum {
            budget_edges,
            graph,
        } => run_spectrum(budget_edges, &graph),
        Command::Reduce {
            kind,
            k_param,
            q,
            cnf,
            out_dir,
        } => run_reduce(kind, k_param, q, &cnf, &out_dir),
        Command::Verify {
            law,
            k_param,
            q,
            budget_edges,
            cnf,
        } => run_verify(law, k_param, q, budget_edges, &cnf),
        Command::Gen { family, seed, n, p } => run_gen(family, seed, n, p),
        Command::Check { k, graph, coloring } => run_check(k, &graph, &coloring),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<KecsDocument, Failure> {
    KecsDocument::parse(&read_file(path)?).map_err(format_failure)
}

fn load_cnf(path: &Path) -> Result<TwoCnf, Failure> {
    sat_core::parse_dimacs_2cnf(&read_file(path)?).map_err(format_failure)
}

/// Flag value, else the KECS_BUDGET_EDGES environment variable, else none.
fn budget_override(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("KECS_BUDGET_EDGES") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| usage(format!("KECS_BUDGET_EDGES must be an edge count, got `{s}`"))),
        Err(_) => Ok(None),
    }
}

fn apply_override(base: SearchBudget, over: Option<usize>) -> SearchBudget {
    match over {
        Some(edges) => base.with_max_edges(edges),
        None => base,
    }
}

/// What solve actually dispatches to after inspecting the input.
enum Routed {
    Flow,
    ForestDp,
    Brute,
    WeightedFlow,
}

fn route(
    method: Method,
    g: &Graph,
    weighted: bool,
    constrained: bool,
    k: usize,
) -> Result<Routed, Failure> {
    let bipartite = g.bipartition().is_some();
    let forest = forest_dp::is_forest(g);
    match method {
        Method::Flow => {
            if !bipartite {
                return Err(usage("method flow requires a bipartite graph"));
            }
            if weighted || constrained {
                return Err(usage(
                    "method flow ignores weights and constraints; pick weighted-flow, forest-dp, or brute",
                ));
            }
            Ok(Routed::Flow)
        }
        Method::ForestDp => {
            if !forest {
                return Err(usage("method forest-dp requires a forest"));
            }
            Ok(Routed::ForestDp)
        }
        Method::Brute => Ok(Routed::Brute),
        Method::WeightedFlow => {
            if !bipartite {
                return Err(usage("method weighted-flow requires a bipartite graph"));
            }
            if constrained {
                return Err(usage(
                    "method weighted-flow cannot honor color constraints; pick forest-dp or brute",
                ));
            }
            Ok(Routed::WeightedFlow)
        }
        Method::Auto => {
            if !weighted && !constrained && bipartite {
                Ok(Routed::Flow)
            } else if forest && k <= forest_dp::MAX_K {
                Ok(Routed::ForestDp)
            } else if !constrained && bipartite {
                eprintln!("note: weighted bipartite input, using weighted-flow");
                Ok(Routed::WeightedFlow)
            } else {
                eprintln!("note: no structure-specific method applies, using brute");
                Ok(Routed::Brute)
            }
        }
    }
}

fn run_solve(
    k: usize,
    method: Method,
    budget_edges: Option<usize>,
    graph_path: &Path,
) -> Result<u8, Failure> {
    let doc = load_document(graph_path)?;
    let g = doc.to_graph().map_err(format_failure)?;
    let w = doc.weight_map(&g).map_err(format_failure)?;
    let wc = doc.constraint_map(k).map_err(format_failure)?;
    let weighted = !w.is_unit();
    let constrained = wc.as_ref().is_some_and(|m| !m.is_full());
    let over = budget_override(budget_edges)?;

    let (value, coloring) = match route(method, &g, weighted, constrained, k)? {
        Routed::Flow => {
            let (count, coloring) = flow_solver::solve_nuk_bipartite(&g, k).map_err(internal)?;
            (count.to_string(), coloring)
        }
        Routed::ForestDp => {
            let full;
            let bound = match &wc {
                Some(map) => map,
                None => {
                    full = ColorConstraintMap::full(g.vertex_count(), k);
                    &full
                }
            };
            let (best, coloring) =
                forest_dp::solve_forest(&g, k, &w, bound).map_err(|e| usage(e.to_string()))?;
            (best.to_string(), coloring)
        }
        Routed::Brute => {
            let budget = apply_override(SearchBudget::for_brute(), over);
            let bound = wc
                .clone()
                .unwrap_or_else(|| ColorConstraintMap::full(g.vertex_count(), k));
            let (best, coloring) =
                oracle::brute_nuk(&g, k, &w, &bound, &budget).map_err(from_oracle)?;
            (best.to_string(), coloring)
        }
        Routed::WeightedFlow => {
            let (best, chosen) =
                flow_solver::solve_weighted_degree_constrained(&g, k, &w).map_err(internal)?;
            let sub = Graph::new(g.vertex_count(), chosen).map_err(internal)?;
            let coloring = flow_solver::konig_edge_color(&sub, k).map_err(internal)?;
            (best.to_string(), coloring)
        }
    };

    let out = graph_path.with_extension("coloring");
    fs::write(&out, format::write_coloring(&coloring))
        .map_err(|e| usage(format!("cannot write {}: {e}", out.display())))?;
    outln!("{value}");
    eprintln!("wrote {}", out.display());
    Ok(0)
}

fn write_edge_list(prefix: &str, edges: &[(usize, usize)]) -> String {
    let mut line = String::from(prefix);
    for (i, (u, v)) in edges.iter().enumerate() {
        if i > 0 {
            line.push(' ');
        }
        line.push_str(&format!("({u},{v})"));
    }
    line
}

fn run_spectrum(budget_edges: Option<usize>, graph_path: &Path) -> Result<u8, Failure> {
    let doc = load_document(graph_path)?;
    let g = doc.to_graph().map_err(format_failure)?;
    let over = budget_override(budget_edges)?;
    let budget = apply_override(SearchBudget::for_enumeration(), over);
    let s = oracle::matching_spectrum(&g, &budget).map_err(from_oracle)?;
    outln!("nu={} ell={} L={}", s.nu, s.ell, s.big_l);
    outln!("{}", write_edge_list("ell_witness=", s.ell_witness.edges()));
    outln!("{}", write_edge_list("L_witness=", s.big_l_witness.edges()));
    Ok(0)
}

fn run_reduce(
    kind: ReduceKind,
    k_param: usize,
    q: Option<usize>,
    cnf_path: &Path,
    out_dir: &Path,
) -> Result<u8, Failure> {
    if q.is_some() && !matches!(kind, ReduceKind::Min2sat) {
        return Err(usage("--q applies to the min2sat kind only"));
    }
    let cnf = load_cnf(cnf_path)?;
    let inst = match kind {
        ReduceKind::Max2sat => {
            reduction_gen::build_max2sat_instance(&cnf, k_param).map_err(from_reduction)?
        }
        ReduceKind::Max2satColored => {
            let plain =
                reduction_gen::build_max2sat_instance(&cnf, k_param).map_err(from_reduction)?;
            reduction_gen::annotate_color_constraints(&plain).map_err(from_reduction)?
        }
        ReduceKind::Min2sat => {
            reduction_gen::build_min2sat_instance(&cnf, k_param, q).map_err(from_reduction)?
        }
    };
    reduction_gen::emit_instance(&inst, out_dir)
        .map_err(|e| usage(format!("cannot write {}: {e}", out_dir.display())))?;
    outln!("kind={}", inst.kind);
    outln!("m={}", inst.meta.m);
    outln!("n={}", inst.meta.n);
    outln!("K={}", inst.meta.k_param);
    if let Some(q) = inst.meta.q {
        outln!("q={q}");
    }
    outln!("threshold={}", inst.meta.threshold);
    outln!("vertices={}", inst.graph.vertex_count());
    outln!("edges={}", inst.graph.edge_count());
    eprintln!("wrote {}", out_dir.display());
    Ok(0)
}

fn run_verify(
    law: Law,
    k_param: usize,
    q: Option<usize>,
    budget_edges: Option<usize>,
    cnf_path: &Path,
) -> Result<u8, Failure> {
    if q.is_some() && !matches!(law, Law::Thm3) {
        return Err(usage("--q applies to thm3 only"));
    }
    let cnf = load_cnf(cnf_path)?;
    let m = cnf.num_clauses();
    // the default budget admits exactly the instance this formula builds
    let default_edges = match law {
        Law::Thm1 | Law::Lemma2 => 24 * m - 1,
        Law::Thm3 => 19 * m - 1,
    };
    let over = budget_override(budget_edges)?;
    let budget =
        apply_override(SearchBudget::for_enumeration().with_max_edges(default_edges), over);

    let (report, holds) = match law {
        Law::Thm1 => {
            let r = reduction_gen::verify_theorem1(&cnf, &budget).map_err(from_reduction)?;
            (r.to_string(), r.verdict.holds())
        }
        Law::Lemma2 => {
            let r = reduction_gen::verify_lemma2(&cnf, &budget).map_err(from_reduction)?;
            (r.to_string(), r.verdict.holds())
        }
        Law::Thm3 => {
            let r = reduction_gen::verify_theorem3(&cnf, k_param, q, &budget)
                .map_err(from_reduction)?;
            (r.to_string(), r.verdict.holds())
        }
    };
    outln!("{report}");
    Ok(if holds { 0 } else { EXIT_MISMATCH })
}

fn run_gen(family: Family, seed: u64, n: usize, p: f64) -> Result<u8, Failure> {
    if !(0.0..=1.0).contains(&p) {
        return Err(usage(format!("--p must lie in [0, 1], got {p}")));
    }
    let g = match family {
        Family::Path => {
            if n < 1 {
                return Err(usage("path needs --n of at least 1"));
            }
            gen::path(n)
        }
        Family::Cycle => {
            if n < 3 {
                return Err(usage("cycle needs --n of at least 3"));
            }
            gen::cycle(n)
        }
        Family::Star => {
            if n < 1 {
                return Err(usage("star needs --n of at least 1"));
            }
            gen::star(n)
        }
        Family::K33 => gen::k33(),
        Family::Petersen => gen::petersen(),
        Family::Fig1 => gen::fig1(),
        Family::RandomBipartite => gen::random_bipartite(n, p, seed),
        Family::RandomForest => gen::random_forest(n, p, seed),
    };
    out!("{}", KecsDocument::from_parts(&g, None, None).render());
    Ok(0)
}

fn describe(v: &Violation) -> String {
    match v {
        Violation::Properness {
            vertex,
            color,
            count,
        } => format!("violation: vertex {vertex} carries color {color} on {count} edges"),
        Violation::Constraint { vertex, color } => {
            format!("violation: vertex {vertex} uses color {color} outside its allowed set")
        }
    }
}

fn run_check(k: usize, graph_path: &Path, coloring_path: &Path) -> Result<u8, Failure> {
    let doc = load_document(graph_path)?;
    let g = doc.to_graph().map_err(format_failure)?;
    let wc = doc.constraint_map(k).map_err(format_failure)?;
    let coloring: KEdgeColoring =
        format::parse_coloring(&read_file(coloring_path)?, k).map_err(format_failure)?;
    let report =
        graph_core::validate_coloring(&g, &coloring, wc.as_ref()).map_err(format_failure)?;
    if report.is_valid() {
        outln!("valid k={k} colored={}", coloring.colored_count());
        Ok(0)
    } else {
        outln!(
            "invalid k={k} violations={}",
            report.violations.len()
        );
        for v in &report.violations {
            outln!("{}", describe(v));
        }
        Ok(EXIT_MISMATCH)
    }
}
