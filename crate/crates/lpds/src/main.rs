use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use lpds::graph_file::{emit_graph, emit_graph_with, parse_graph_file, GraphFile};
use lpds::minrep_file::{describe_role, parse_minrep};
use lpds::orientation_file::parse_orientation;
use lpds::rotation_file::parse_rotation;
use lpds::solution_file::{parse_assignment, parse_rational};
use lpds::td_file::{emit_td, parse_td};
use lpds::text::parse_id_list;
use lpds_core::brute::{solve_bf, BfOptions, BfOutcome};
use lpds_core::dp::{solve_dp_with, DpOptions, DpStats};
use lpds_core::generators::{attach_paths, minrep_to_pds, pendant_cycle, spider};
use lpds_core::graph::{Graph, NodeSet};
use lpds_core::ip::{
    build_ip_ell, build_ip_ordering, check_assignment, emit_lp, objective_value, IpModel,
};
use lpds_core::orientation::{validate, OrientationError, Violation};
use lpds_core::planar::{block_width_bound, compute_levels, ptas_with, LevelAssignment};
use lpds_core::propagation::{is_feasible, propagate};
use lpds_core::treewidth::{heuristic_td, to_nice, validate_td, TdViolation, TreeDecomposition};

/// Round-bounded power domination: solvers, checkers and instance generators.
///
/// Node ids in every file and in all output are 1-based. Input files default
/// to standard input when omitted or given as `-`.
#[derive(Parser)]
#[command(name = "lpds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find a smallest set covering the targets within `--ell` rounds.
    Solve(SolveArgs),
    /// Print the covering round of every node for a source set.
    Closure(ClosureArgs),
    /// Check a timed orientation and report its origin.
    VerifyOrientation(VerifyArgs),
    /// Generate an instance as a graph file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Write an integer program in CPLEX LP format.
    EmitIp(EmitIpArgs),
    /// Check a variable assignment against an integer program.
    CheckIp(CheckIpArgs),
    /// Write a heuristic tree decomposition, or check one.
    Td(TdArgs),
    /// Compute outerplanarity levels from an embedding, or check given levels.
    Levels(LevelsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Bf,
    Dp,
    Ptas,
}

#[derive(Args)]
struct SolveArgs {
    graph: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ell: u64,
    /// Target node file, or `all`.
    #[arg(long, default_value = "all")]
    targets: String,
    #[arg(long, value_enum, default_value = "dp")]
    method: Method,
    /// Tree decomposition for `dp`; the min-fill heuristic is used otherwise.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Directory with per-block decompositions `block_s<i>_j<j>.td` for `ptas`.
    #[arg(long)]
    td_dir: Option<PathBuf>,
    /// Accuracy for `ptas`, a decimal or fraction in (0, 1].
    #[arg(long, default_value = "1")]
    eps: String,
    /// Embedding used to compute levels for `ptas` when the graph file has none.
    #[arg(long)]
    rotation: Option<PathBuf>,
    /// Abort `dp` when one table exceeds this many states.
    #[arg(long)]
    max_states: Option<usize>,
    /// Give up `bf` after all sets of this size.
    #[arg(long)]
    size_cap: Option<usize>,
    /// Allow `bf` on graphs above its default node limit.
    #[arg(long)]
    allow_large: bool,
    #[arg(long)]
    json: bool,
    /// Report wall-clock time (JSON field, or a line on stderr).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct ClosureArgs {
    graph: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ell: u64,
    /// Source nodes, comma or space separated.
    #[arg(long, default_value = "")]
    sources: String,
}

#[derive(Args)]
struct VerifyArgs {
    graph: PathBuf,
    orientation: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ell: u64,
    #[arg(long, default_value = "all")]
    targets: String,
}

#[derive(Subcommand)]
enum GenCommand {
    /// `m` paths of `k` nodes sharing a center.
    Spider { m: usize, k: usize },
    /// Cycle on `m` nodes with a pendant at every node.
    PendantCycle { m: usize },
    /// Attach a path of `ell - 1` nodes to every node of a graph.
    AttachPaths {
        graph: Option<PathBuf>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        ell: u64,
    },
    /// The MinRep reduction of an instance file; node roles become comments.
    Minrep { instance: Option<PathBuf> },
    /// Two concentric `m`-cycles joined by spokes, with levels.
    Prism { m: usize },
    /// Random graph with independent edges.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value = "0.5")]
        edge_prob: f64,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Start from a random spanning tree.
        #[arg(long)]
        connected: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IpKind {
    /// Round-indexed program with `--ell` rounds.
    Ell,
    /// Ordering program.
    Ordering,
}

#[derive(Args)]
struct EmitIpArgs {
    #[arg(value_enum)]
    kind: IpKind,
    graph: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ell: Option<u64>,
    #[arg(long)]
    valid_ineqs: bool,
    /// Emit `[0, 1]` bounds instead of a binary section.
    #[arg(long)]
    relax: bool,
}

#[derive(Args)]
struct CheckIpArgs {
    #[arg(value_enum)]
    kind: IpKind,
    graph: PathBuf,
    /// Lines `<variable> <value>`; values may be decimals or fractions.
    solution: PathBuf,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    ell: Option<u64>,
    #[arg(long)]
    valid_ineqs: bool,
}

#[derive(Args)]
struct TdArgs {
    graph: Option<PathBuf>,
    /// Validate this decomposition instead of computing one.
    #[arg(long)]
    check: Option<PathBuf>,
}

#[derive(Args)]
struct LevelsArgs {
    graph: Option<PathBuf>,
    /// Embedding file; output is the graph with level lines.
    #[arg(long)]
    rotation: Option<PathBuf>,
    /// Validate the level lines already in the graph file.
    #[arg(long, conflicts_with = "rotation")]
    check: bool,
}

/// Result of a command that ran to completion; `Negative` means the answer
/// was "infeasible" or "invalid".
enum Status {
    Success,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match result {
        Ok(Status::Success) => ExitCode::SUCCESS,
        Ok(Status::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, out: &mut String) -> Result<Status> {
    match command {
        Command::Solve(args) => solve(args, out),
        Command::Closure(args) => closure(args, out),
        Command::VerifyOrientation(args) => verify_orientation(args, out),
        Command::Gen(cmd) => generate(cmd, out),
        Command::EmitIp(args) => emit_ip(args, out),
        Command::CheckIp(args) => check_ip(args, out),
        Command::Td(args) => td(args, out),
        Command::Levels(args) => levels(args, out),
    }
}

fn read_input(path: Option<&Path>) -> Result<(String, String)> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok((text, p.display().to_string()))
        }
    }
}

fn read_stdin() -> Result<(String, String)> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .context("reading standard input")?;
    Ok((text, "<stdin>".into()))
}

fn load_graph_file(path: Option<&Path>) -> Result<GraphFile> {
    let (text, name) = read_input(path)?;
    parse_graph_file(&text).with_context(|| format!("graph {name}"))
}

fn load_graph(path: Option<&Path>) -> Result<Graph> {
    Ok(load_graph_file(path)?.graph)
}

fn load_targets(spec: &str, n: usize) -> Result<NodeSet> {
    if spec == "all" {
        return Ok(NodeSet::full(n));
    }
    let (text, name) = read_input(Some(Path::new(spec)))?;
    let ids = parse_id_list(&text, n).with_context(|| format!("targets {name}"))?;
    Ok(NodeSet::from_nodes(n, ids)?)
}

fn to_usize(x: u64) -> usize {
    usize::try_from(x).unwrap_or(usize::MAX)
}

fn one_based(set: &NodeSet) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

#[derive(Serialize)]
struct SolveReport {
    method: &'static str,
    ell: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    opt: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    witness: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dp: Option<DpReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ptas: Option<PtasReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

#[derive(Serialize)]
struct DpReport {
    width: usize,
    tree_nodes: usize,
    largest_table: usize,
    total_states: usize,
}

#[derive(Serialize)]
struct PtasReport {
    k: usize,
    shift: usize,
    blocks: Vec<(i64, usize)>,
    shift_sizes: Vec<usize>,
    max_block_width: usize,
}

fn load_decomposition(path: &Path, g: &Graph) -> Result<TreeDecomposition> {
    let (text, name) = read_input(Some(path))?;
    let file = parse_td(&text).with_context(|| format!("decomposition {name}"))?;
    if file.node_count != g.node_count() {
        bail!(
            "decomposition {name}: header declares {} nodes, graph has {}",
            file.node_count,
            g.node_count()
        );
    }
    validate_td(g, &file.td)
        .map_err(|v| anyhow!("decomposition {name}: {}", describe_td_violation(&v)))?;
    Ok(file.td)
}

fn parse_eps(raw: &str) -> Result<(u64, u64)> {
    let eps = parse_rational(raw).ok_or_else(|| anyhow!("--eps: `{raw}` is not a number"))?;
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    if eps <= zero || eps > one {
        bail!("--eps must lie in (0, 1], got {raw}");
    }
    let num =
        u64::try_from(eps.numer().clone()).map_err(|_| anyhow!("--eps: numerator too large"))?;
    let den =
        u64::try_from(eps.denom().clone()).map_err(|_| anyhow!("--eps: denominator too large"))?;
    Ok((num, den))
}

fn solve(args: SolveArgs, out: &mut String) -> Result<Status> {
    let file = load_graph_file(args.graph.as_deref())?;
    let g = &file.graph;
    let n = g.node_count();
    let ell = to_usize(args.ell);
    let targets = load_targets(&args.targets, n)?;
    let start = Instant::now();
    let mut report = SolveReport {
        method: "",
        ell,
        opt: None,
        size: None,
        witness: Vec::new(),
        dp: None,
        ptas: None,
        elapsed_ms: None,
    };
    let witness = match args.method {
        Method::Bf => {
            report.method = "bf";
            let options = BfOptions {
                size_cap: args.size_cap,
                allow_large: args.allow_large,
            };
            match solve_bf(g, &targets, ell, &options)? {
                BfOutcome::Found { opt, witness } => {
                    report.opt = Some(opt);
                    witness
                }
                BfOutcome::Exceeded { cap } => {
                    if args.json {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::json!({ "method": "bf", "ell": ell, "exceeded": cap })
                        );
                    } else {
                        let _ = writeln!(out, "none within {cap}");
                    }
                    return Ok(Status::Negative);
                }
            }
        }
        Method::Dp => {
            report.method = "dp";
            let td = match &args.td {
                Some(path) => load_decomposition(path, g)?,
                None => heuristic_td(g),
            };
            let ntd = to_nice(&td)?;
            let options = DpOptions {
                max_states: args.max_states,
            };
            let sol = solve_dp_with(g, &targets, ell, &ntd, &options)?;
            let DpStats {
                tree_nodes,
                largest_table,
                total_states,
            } = sol.stats;
            report.opt = Some(sol.opt);
            report.dp = Some(DpReport {
                width: td.width(),
                tree_nodes,
                largest_table,
                total_states,
            });
            sol.witness
        }
        Method::Ptas => {
            report.method = "ptas";
            if args.targets != "all" {
                bail!("--method ptas covers every node; --targets is not supported");
            }
            let levels = match (&args.rotation, file.levels.clone()) {
                (Some(path), _) => {
                    let (text, name) = read_input(Some(path))?;
                    let rs =
                        parse_rotation(&text, g).with_context(|| format!("embedding {name}"))?;
                    compute_levels(g, &rs)
                }
                (None, Some(levels)) => levels,
                (None, None) => {
                    bail!("--method ptas needs level lines in the graph file or --rotation")
                }
            };
            let eps = parse_eps(&args.eps)?;
            let options = DpOptions {
                max_states: args.max_states,
            };
            let mut load_error = None;
            let mut td_for = |block: &lpds_core::planar::Block, sub: &Graph| {
                let dir = args.td_dir.as_ref()?;
                let path = dir.join(format!("block_s{}_j{}.td", block.shift, block.j));
                if !path.exists() {
                    return None;
                }
                match load_decomposition(&path, sub) {
                    Ok(td) => Some(td),
                    Err(e) => {
                        load_error.get_or_insert(e);
                        None
                    }
                }
            };
            let result = ptas_with(g, &levels, ell, eps, &options, &mut td_for);
            if let Some(e) = load_error {
                return Err(e);
            }
            let result = result?;
            let bound = block_width_bound(result.k, ell);
            if result.max_block_width > bound {
                eprintln!(
                    "warning: block decomposition width {} exceeds the bound {bound}",
                    result.max_block_width
                );
            }
            report.size = Some(result.solution.len());
            report.ptas = Some(PtasReport {
                k: result.k,
                shift: result.shift,
                blocks: result.block_sizes.clone(),
                shift_sizes: result.shift_sizes.clone(),
                max_block_width: result.max_block_width,
            });
            result.solution
        }
    };
    if !is_feasible(g, &witness, &targets, ell)? {
        bail!("internal error: solution does not cover the targets within {ell} rounds");
    }
    report.witness = one_based(&witness);
    let elapsed = start.elapsed();
    if args.json {
        if args.timings {
            report.elapsed_ms = Some(elapsed.as_millis());
        }
        let _ = writeln!(out, "{}", serde_json::to_string(&report)?);
    } else {
        if let Some(p) = &report.ptas {
            let _ = writeln!(out, "k {}", p.k);
            let _ = writeln!(out, "shift {}", p.shift);
            for (j, size) in &p.blocks {
                let _ = writeln!(out, "block {j} {size}");
            }
            let _ = writeln!(out, "size {}", witness.len());
        } else {
            let _ = writeln!(out, "opt {}", witness.len());
        }
        for v in &report.witness {
            let _ = writeln!(out, "{v}");
        }
        if args.timings {
            eprintln!("elapsed_ms {}", elapsed.as_millis());
        }
    }
    Ok(Status::Success)
}

fn closure(args: ClosureArgs, out: &mut String) -> Result<Status> {
    let g = load_graph(args.graph.as_deref())?;
    let n = g.node_count();
    let ids = parse_id_list(&args.sources, n).context("--sources")?;
    let sources = NodeSet::from_nodes(n, ids)?;
    let trace = propagate(&g, &sources, to_usize(args.ell))?;
    for (v, t) in trace.times.iter().enumerate() {
        let _ = writeln!(out, "{} {t}", v + 1);
    }
    Ok(Status::Success)
}

fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::AtNode { property, node } => format!("{property} violated at node {}", node + 1),
        Violation::AtEdge { property, edge } => {
            format!(
                "{property} violated on edge ({}, {})",
                edge.0 + 1,
                edge.1 + 1
            )
        }
    }
}

fn describe_orientation_error(e: &OrientationError) -> String {
    match e {
        OrientationError::Invalid(v) => describe_violation(v),
        OrientationError::UnknownEdge(u, v) => {
            format!("({}, {}) is not an edge of the graph", u + 1, v + 1)
        }
        OrientationError::RepeatedEdge(u, v) => {
            format!("edge {{{}, {}}} is listed more than once", u + 1, v + 1)
        }
        OrientationError::MissingEdge(u, v) => {
            format!(
                "edge {{{}, {}}} is neither oriented nor undirected",
                u + 1,
                v + 1
            )
        }
        OrientationError::TimeOutOfRange { node, time, ell } => {
            format!(
                "node {} has label {time}, outside 0..={ell} and not inf",
                node + 1
            )
        }
        OrientationError::Unjustified(v) => format!("no node justifies the time of node {}", v + 1),
        other => other.to_string(),
    }
}

fn describe_td_violation(v: &TdViolation) -> String {
    match v {
        TdViolation::MissingNode(x) => format!("node {} is in no bag", x + 1),
        TdViolation::UncoveredEdge(a, b) => format!("edge {{{}, {}}} is in no bag", a + 1, b + 1),
        TdViolation::Disconnected(x) => {
            format!("the bags containing node {} are not connected", x + 1)
        }
        TdViolation::UnknownNode { bag, node } => {
            format!("bag {} contains unknown node {}", bag + 1, node + 1)
        }
        TdViolation::BadTreeEdge(i, j) => {
            format!("tree edge ({}, {}) refers to a missing bag", i + 1, j + 1)
        }
        other => other.to_string(),
    }
}

fn verify_orientation(args: VerifyArgs, out: &mut String) -> Result<Status> {
    let g = load_graph(Some(&args.graph))?;
    let n = g.node_count();
    let targets = load_targets(&args.targets, n)?;
    let (text, name) = read_input(Some(&args.orientation))?;
    let to = parse_orientation(&text, n, to_usize(args.ell))
        .with_context(|| format!("orientation {name}"))?;
    match validate(&g, &to, &targets) {
        Ok(()) => {
            let _ = write!(out, "valid\norigin");
            for v in one_based(&to.origin()) {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
            Ok(Status::Success)
        }
        Err(e) => {
            let _ = writeln!(out, "invalid: {}", describe_orientation_error(&e));
            Ok(Status::Negative)
        }
    }
}

fn generate(cmd: GenCommand, out: &mut String) -> Result<Status> {
    match cmd {
        GenCommand::Spider { m, k } => out.push_str(&emit_graph(&spider(m, k)?)),
        GenCommand::PendantCycle { m } => out.push_str(&emit_graph(&pendant_cycle(m)?)),
        GenCommand::AttachPaths { graph, ell } => {
            let g = load_graph(graph.as_deref())?;
            out.push_str(&emit_graph(&attach_paths(&g, to_usize(ell))?));
        }
        GenCommand::Minrep { instance } => {
            let (text, name) = read_input(instance.as_deref())?;
            let inst = parse_minrep(&text).with_context(|| format!("MinRep instance {name}"))?;
            let red = minrep_to_pds(&inst)?;
            let comments: Vec<String> = red
                .roles
                .iter()
                .enumerate()
                .map(|(v, &role)| format!("node {} {}", v + 1, describe_role(role)))
                .collect();
            out.push_str(&emit_graph_with(&red.graph, None, &comments));
        }
        GenCommand::Prism { m } => {
            if m < 3 {
                bail!("prism needs m >= 3, got {m}");
            }
            let mut edges = Vec::with_capacity(3 * m);
            for i in 0..m {
                edges.push((i, (i + 1) % m));
                edges.push((m + i, m + (i + 1) % m));
                edges.push((i, m + i));
            }
            let g = Graph::from_edges(2 * m, edges)?;
            let levels = LevelAssignment {
                level: (0..2 * m).map(|v| if v < m { 1 } else { 2 }).collect(),
            };
            out.push_str(&emit_graph_with(&g, Some(&levels), &[]));
        }
        GenCommand::Random {
            nodes,
            edge_prob,
            seed,
            connected,
        } => {
            if !(0.0..=1.0).contains(&edge_prob) {
                bail!("--edge-prob must lie in [0, 1], got {edge_prob}");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = std::collections::BTreeSet::new();
            if connected {
                for v in 1..nodes {
                    edges.insert((rng.gen_range(0..v), v));
                }
            }
            for u in 0..nodes {
                for v in u + 1..nodes {
                    if rng.gen_bool(edge_prob) {
                        edges.insert((u, v));
                    }
                }
            }
            out.push_str(&emit_graph(&Graph::from_edges(nodes, edges)?));
        }
    }
    Ok(Status::Success)
}

fn build_model(kind: IpKind, g: &Graph, ell: Option<u64>, valid: bool) -> Result<IpModel> {
    Ok(match kind {
        IpKind::Ell => {
            let ell = ell.ok_or_else(|| anyhow!("the `ell` program needs --ell"))?;
            build_ip_ell(g, to_usize(ell), valid)
        }
        IpKind::Ordering => {
            if ell.is_some() {
                bail!("the `ordering` program has no --ell");
            }
            if g.node_count() == 0 {
                bail!("the `ordering` program needs at least one node");
            }
            build_ip_ordering(g, valid)
        }
    })
}

fn emit_ip(args: EmitIpArgs, out: &mut String) -> Result<Status> {
    let g = load_graph(args.graph.as_deref())?;
    let model = build_model(args.kind, &g, args.ell, args.valid_ineqs)?;
    out.push_str(&emit_lp(&model, args.relax));
    Ok(Status::Success)
}

fn check_ip(args: CheckIpArgs, out: &mut String) -> Result<Status> {
    let g = load_graph(Some(&args.graph))?;
    let model = build_model(args.kind, &g, args.ell, args.valid_ineqs)?;
    let (text, name) = read_input(Some(&args.solution))?;
    let assignment = parse_assignment(&text).with_context(|| format!("solution {name}"))?;
    let violated =
        check_assignment(&model, &assignment).with_context(|| format!("solution {name}"))?;
    let objective = objective_value(&model, &assignment)?;
    if violated.is_empty() {
        let _ = writeln!(out, "feasible objective {objective}");
        return Ok(Status::Success);
    }
    let _ = writeln!(out, "infeasible objective {objective}");
    for tag in violated {
        let _ = writeln!(out, "violated {tag}");
    }
    Ok(Status::Negative)
}

fn td(args: TdArgs, out: &mut String) -> Result<Status> {
    let g = load_graph(args.graph.as_deref())?;
    match args.check {
        None => out.push_str(&emit_td(&heuristic_td(&g), g.node_count())),
        Some(path) => {
            let (text, name) = read_input(Some(&path))?;
            let file = parse_td(&text).with_context(|| format!("decomposition {name}"))?;
            if file.node_count != g.node_count() {
                let _ = writeln!(
                    out,
                    "invalid: header declares {} nodes, graph has {}",
                    file.node_count,
                    g.node_count()
                );
                return Ok(Status::Negative);
            }
            match validate_td(&g, &file.td) {
                Ok(()) => {
                    let _ = writeln!(out, "valid width {}", file.td.width());
                }
                Err(v) => {
                    let _ = writeln!(out, "invalid: {}", describe_td_violation(&v));
                    return Ok(Status::Negative);
                }
            }
        }
    }
    Ok(Status::Success)
}

fn levels(args: LevelsArgs, out: &mut String) -> Result<Status> {
    let file = load_graph_file(args.graph.as_deref())?;
    let g = &file.graph;
    if args.check {
        let levels = file
            .levels
            .ok_or_else(|| anyhow!("graph file has no level lines"))?;
        return Ok(match levels.validate(g) {
            Ok(()) => {
                let _ = writeln!(out, "valid levels 1..={}", levels.max_level());
                Status::Success
            }
            Err(e) => {
                let _ = writeln!(out, "invalid: {}", describe_level_error(&e));
                Status::Negative
            }
        });
    }
    let path = args
        .rotation
        .ok_or_else(|| anyhow!("levels needs --rotation or --check"))?;
    let (text, name) = read_input(Some(&path))?;
    let rs = parse_rotation(&text, g).with_context(|| format!("embedding {name}"))?;
    let levels = compute_levels(g, &rs);
    out.push_str(&emit_graph_with(g, Some(&levels), &[]));
    Ok(Status::Success)
}

fn describe_level_error(e: &lpds_core::planar::LevelError) -> String {
    use lpds_core::planar::LevelError;
    match e {
        LevelError::Zero(v) => format!("node {} has level 0", v + 1),
        LevelError::Skip(u, v) => format!("edge ({}, {}) skips a level", u + 1, v + 1),
        other => other.to_string(),
    }
}
