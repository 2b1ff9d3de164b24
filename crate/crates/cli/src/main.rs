//! Command-line front end: parse instances, dispatch to a solver, and emit
//! human or JSON reports with a stable exit-code contract
//! (0 yes, 1 no, 2 inconclusive, 10 usage errors, 11 format errors).

mod io;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sfc_core::{
    above_matching, gen, oracle, solver_k, weak_param, Decision, EdgeSet, Graph, Pattern,
    PatternClass, SolveReport,
};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

const DEFAULT_SEED: u64 = 20240; // fixed constant keeps reruns reproducible
const EXIT_YES: u8 = 0;
const EXIT_NO: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 10;
const EXIT_FORMAT: u8 = 11;

#[derive(Parser)]
#[command(
    name = "sfc",
    version,
    about = "Exact solvers for the strong F-closure problem"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether k strong edges are feasible.
    Solve(SolveArgs),
    /// Solve with the branch-and-bound oracle regardless of pattern class.
    Oracle(SolveArgs),
    /// Maximize the number of strong edges.
    Optimum(OptimumArgs),
    /// Apply the big-component kernelization and print the reduced instance.
    Kernelize(KernelizeArgs),
    /// Build instances from the hardness constructions.
    Reduce {
        #[command(subcommand)]
        construction: ReduceCommand,
    },
    /// Generate a seeded random graph.
    GenRandom {
        #[command(subcommand)]
        model: GenModel,
    },
    /// Run a manifest of instances and emit CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Graph file.
    #[arg(long)]
    graph: PathBuf,
    /// Pattern: P3, pK1:<p>, qK2:<q>, pK1qK2:<p>,<q>, K1t:<t>, file:<path>.
    #[arg(long)]
    pattern: String,
    /// Required number of strong edges.
    #[arg(long, conflicts_with = "l")]
    k: Option<usize>,
    /// Allowed number of weak edges (k = m - l).
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
    algorithm: Algorithm,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Search-node budget before giving up as inconclusive.
    #[arg(long, default_value_t = oracle::DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,
    /// Include wall-clock timing in JSON output (off keeps reports
    /// byte-identical across runs).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct OptimumArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pattern: String,
    #[arg(long, default_value_t = oracle::DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct KernelizeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pattern: String,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Split graph from a set packing instance (`t p k` then one set per line).
    SetPacking {
        #[arg(long)]
        input: PathBuf,
        /// Pad the universe with an unused element when k+t is odd.
        #[arg(long)]
        pad: bool,
    },
    /// Planar gadget from an exact-cover-by-3-sets instance (`q m` then triplets).
    X3c {
        #[arg(long)]
        input: PathBuf,
    },
    /// Disjoint union with a double star; k=1 decides independence.
    IndependentSet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: usize,
    },
}

#[derive(Subcommand)]
enum GenModel {
    /// Erdos-Renyi G(n, p).
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Uniform random edges under a maximum-degree cap.
    MaxDeg {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_deg: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Incremental construction with at most d back-edges per vertex.
    DDegenerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Manifest: one `<graph> <pattern> <k:N|l:N> <algorithm>` per line.
    #[arg(long)]
    manifest: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = oracle::DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    Auto,
    Oracle,
    BigComponent,
    Qk2,
    Pk1qk2,
    StcDeg4,
    StarAboveMatching,
    WeakBranch,
    HittingSet,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Auto => "auto",
            Algorithm::Oracle => "oracle",
            Algorithm::BigComponent => "big-component",
            Algorithm::Qk2 => "qk2",
            Algorithm::Pk1qk2 => "pk1qk2",
            Algorithm::StcDeg4 => "stc-deg4",
            Algorithm::StarAboveMatching => "star-above-matching",
            Algorithm::WeakBranch => "weak-branch",
            Algorithm::HittingSet => "hitting-set",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Human,
    Json,
}

struct CliError {
    code: u8,
    msg: String,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }
    fn format(msg: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_FORMAT,
            msg: msg.into(),
        }
    }
}

impl From<io::FormatError> for CliError {
    fn from(e: io::FormatError) -> CliError {
        CliError::format(e.to_string())
    }
}

impl From<sfc_core::Error> for CliError {
    fn from(e: sfc_core::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return ExitCode::from(0);
                }
                _ => {}
            }
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve(args) => run_solve(args, None),
        Command::Oracle(args) => run_solve(args, Some(Algorithm::Oracle)),
        Command::Optimum(args) => run_optimum(args),
        Command::Kernelize(args) => run_kernelize(args),
        Command::Reduce { construction } => run_reduce(construction),
        Command::GenRandom { model } => run_gen(model),
        Command::Bench(args) => run_bench(args),
    }
}

/// Effective strong-edge target from the k/l pair.
fn resolve_k(k: Option<usize>, l: Option<usize>, m: usize) -> Result<usize, CliError> {
    match (k, l) {
        (Some(k), None) => Ok(k),
        (None, Some(l)) => Ok(m.saturating_sub(l)),
        (None, None) => Err(CliError::usage("one of --k or --l is required")),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    }
}

fn dispatch(
    g: &Graph,
    f: &Pattern,
    algorithm: Algorithm,
    k: usize,
    l: Option<usize>,
    seed: u64,
    budget: u64,
) -> Result<SolveReport, CliError> {
    let want_l = || -> usize { l.unwrap_or_else(|| g.m().saturating_sub(k)) };
    let incompatible = |why: &str| {
        CliError::usage(format!(
            "algorithm `{}` is incompatible with pattern class {:?}: {why}",
            algorithm.name(),
            f.class()
        ))
    };
    let report = match algorithm {
        Algorithm::Auto => {
            if l.is_some() {
                if f.edge_count() == 0 {
                    return Err(incompatible("weak-edge algorithms need a pattern edge"));
                }
                weak_param::solve_weak_branching(g, f, want_l())
            } else {
                solver_k::solve_by_k(g, f, k, seed, budget)?
            }
        }
        Algorithm::Oracle => oracle::solve_exact(g, f, k, budget),
        Algorithm::BigComponent => match f.class() {
            PatternClass::BigComponent => solver_k::solve_big_component(g, f, k, budget),
            _ => return Err(incompatible("needs a component with 3+ vertices")),
        },
        Algorithm::Qk2 => match f.class() {
            PatternClass::Pk1Qk2 { p: 0, q } => solver_k::solve_qk2(g, q, k, seed)?,
            _ => return Err(incompatible("needs exactly qK2 with q >= 2")),
        },
        Algorithm::Pk1qk2 => match f.class() {
            PatternClass::Pk1Qk2 { p, q } => solver_k::solve_pk1_qk2(g, p, q, k, seed, budget)?,
            _ => return Err(incompatible("needs pK1+qK2 with q >= 2")),
        },
        Algorithm::StcDeg4 => {
            if !sfc_core::pattern::isomorphic(f.graph(), &Graph::path(3))
                .map_err(|e| CliError::usage(e.to_string()))?
            {
                return Err(incompatible("fixed to the P3 pattern"));
            }
            above_matching::solve_stc_maxdeg4(g, k, budget)?
        }
        Algorithm::StarAboveMatching => {
            let t = f.vertex_count().saturating_sub(1);
            let is_star = t >= 1
                && sfc_core::pattern::isomorphic(f.graph(), &Graph::star(t))
                    .map_err(|e| CliError::usage(e.to_string()))?;
            if !is_star || t < 3 {
                return Err(incompatible("needs a star K1t with t >= 3"));
            }
            above_matching::solve_star_above_matching(g, t, k, budget)?
        }
        Algorithm::WeakBranch => {
            if f.edge_count() == 0 {
                return Err(incompatible("weak-edge algorithms need a pattern edge"));
            }
            weak_param::solve_weak_branching(g, f, want_l())
        }
        Algorithm::HittingSet => {
            if f.edge_count() == 0 {
                return Err(incompatible("weak-edge algorithms need a pattern edge"));
            }
            weak_param::solve_weak_hitting(g, f, want_l())
        }
    };
    Ok(report)
}

#[derive(Serialize)]
struct JsonStats {
    nodes: u64,
    rules: u64,
    millis: u128,
}

#[derive(Serialize)]
struct JsonReport {
    decision: String,
    k: usize,
    pattern: String,
    algorithm: String,
    witness: Option<Vec<[usize; 2]>>,
    optimum: Option<usize>,
    stats: JsonStats,
    inconclusive: bool,
    /// Rule firings, shortcuts and confidence annotations.
    trace: Vec<String>,
    /// File vertex ids are 1-based; internal ids are 0-based.
    vertex_base: usize,
}

fn witness_json(w: &EdgeSet) -> Vec<[usize; 2]> {
    w.iter().map(|e| [e.u + 1, e.v + 1]).collect()
}

#[allow(clippy::too_many_arguments)]
fn emit_report(
    report: &SolveReport,
    g: &Graph,
    f: &Pattern,
    pattern_spec: &str,
    k: usize,
    mode: OutputMode,
    millis: u128,
    timing: bool,
) -> u8 {
    if let (Decision::Yes, Some(w)) = (report.decision, report.witness.as_ref()) {
        assert!(
            sfc_core::pattern::satisfies_closure(g, w, f),
            "internal error: witness fails the closure check"
        );
    }
    match mode {
        OutputMode::Human => {
            println!("decision: {}", report.decision);
            println!("algorithm: {}", report.algorithm);
            println!("pattern: {pattern_spec}");
            println!("k: {k}");
            if let Some(opt) = report.optimum {
                println!("optimum: {opt}");
            }
            if let Some(w) = &report.witness {
                let edges: Vec<String> = w
                    .iter()
                    .map(|e| format!("{}-{}", e.u + 1, e.v + 1))
                    .collect();
                println!("witness ({} edges): {}", w.len(), edges.join(" "));
            }
            println!(
                "stats: nodes={} rules={} millis={millis}",
                report.stats.nodes, report.stats.rules_fired
            );
            for line in &report.trace {
                println!("trace: {line}");
            }
        }
        OutputMode::Json => {
            let json = JsonReport {
                decision: report.decision.to_string(),
                k,
                pattern: pattern_spec.to_string(),
                algorithm: report.algorithm.to_string(),
                witness: report.witness.as_ref().map(witness_json),
                optimum: report.optimum,
                stats: JsonStats {
                    nodes: report.stats.nodes,
                    rules: report.stats.rules_fired,
                    millis: if timing { millis } else { 0 },
                },
                inconclusive: report.decision == Decision::Inconclusive,
                trace: report.trace.clone(),
                vertex_base: 1,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("report serializes")
            );
        }
    }
    match report.decision {
        Decision::Yes => EXIT_YES,
        Decision::No => EXIT_NO,
        Decision::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn run_solve(args: SolveArgs, force: Option<Algorithm>) -> Result<u8, CliError> {
    let g = io::read_graph(&args.graph)?;
    let f = io::parse_pattern(&args.pattern)?;
    let k = resolve_k(args.k, args.l, g.m())?;
    let algorithm = force.unwrap_or(args.algorithm);
    let start = Instant::now();
    let report = dispatch(&g, &f, algorithm, k, args.l, args.seed, args.budget)?;
    let millis = start.elapsed().as_millis();
    Ok(emit_report(
        &report,
        &g,
        &f,
        &args.pattern,
        k,
        args.output,
        millis,
        args.timing,
    ))
}

fn run_optimum(args: OptimumArgs) -> Result<u8, CliError> {
    let g = io::read_graph(&args.graph)?;
    let f = io::parse_pattern(&args.pattern)?;
    let start = Instant::now();
    let report = oracle::optimum(&g, &f, args.budget);
    let millis = start.elapsed().as_millis();
    let k = report.optimum.unwrap_or(0);
    Ok(emit_report(
        &report,
        &g,
        &f,
        &args.pattern,
        k,
        args.output,
        millis,
        args.timing,
    ))
}

#[derive(Serialize)]
struct JsonKernel {
    reduced_n: usize,
    reduced_m: usize,
    k: usize,
    rule1_firings: usize,
    shortcut: Option<String>,
    early_decision: bool,
    witness: Option<Vec<[usize; 2]>>,
    /// Reduced-to-original vertex map, 1-based.
    map: Vec<usize>,
    edges: Vec<[usize; 2]>,
}

fn run_kernelize(args: KernelizeArgs) -> Result<u8, CliError> {
    let g = io::read_graph(&args.graph)?;
    let f = io::parse_pattern(&args.pattern)?;
    if f.class() != PatternClass::BigComponent {
        return Err(CliError::usage(
            "kernelize needs a pattern with a component of 3+ vertices",
        ));
    }
    let kern = solver_k::kernelize_big_component(&g, &f, args.k);
    match args.output {
        OutputMode::Human => {
            println!("c rule1 firings: {}", kern.rule1_firings);
            if let Some(s) = kern.shortcut {
                println!("c shortcut: {s}");
            }
            if let Some(w) = &kern.early_decision {
                let edges: Vec<String> = w
                    .iter()
                    .map(|e| format!("{}-{}", e.u + 1, e.v + 1))
                    .collect();
                println!("c early yes witness: {}", edges.join(" "));
            }
            let map: Vec<String> = kern.map.iter().map(|v| (v + 1).to_string()).collect();
            println!("c vertex map: {}", map.join(" "));
            print!("{}", io::serialize_graph(&kern.graph));
        }
        OutputMode::Json => {
            let json = JsonKernel {
                reduced_n: kern.graph.n(),
                reduced_m: kern.graph.m(),
                k: kern.k,
                rule1_firings: kern.rule1_firings,
                shortcut: kern.shortcut.map(str::to_string),
                early_decision: kern.early_decision.is_some(),
                witness: kern.early_decision.as_ref().map(witness_json),
                map: kern.map.iter().map(|v| v + 1).collect(),
                edges: kern
                    .graph
                    .edges()
                    .iter()
                    .map(|e| [e.u + 1, e.v + 1])
                    .collect(),
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json).expect("kernel serializes")
            );
        }
    }
    Ok(EXIT_YES)
}

fn run_reduce(cmd: ReduceCommand) -> Result<u8, CliError> {
    match cmd {
        ReduceCommand::SetPacking { input, pad } => {
            let text = std::fs::read_to_string(&input).map_err(io::FormatError::from)?;
            let mut inst = io::parse_set_packing(&text)?;
            if pad && (inst.k + inst.universe) % 2 != 0 {
                inst = inst.padded();
                println!("c padded universe to {} elements", inst.universe);
            }
            let (g, k_prime, layout) = sfc_core::reductions::gen_split_from_set_packing(&inst)?;
            println!("c pattern P3");
            println!("c k-prime {k_prime}");
            println!(
                "c blocks u={:?} y={:?} x={:?} w={:?}",
                one_based(&layout.u),
                one_based(&layout.y),
                one_based(&layout.x),
                one_based(&layout.w)
            );
            print!("{}", io::serialize_graph(&g));
            Ok(EXIT_YES)
        }
        ReduceCommand::X3c { input } => {
            let text = std::fs::read_to_string(&input).map_err(io::FormatError::from)?;
            let inst = io::parse_x3c(&text)?;
            let (g, target, _) = sfc_core::reductions::gen_planar_from_x3c(&inst)?;
            println!("c pattern P3");
            println!("c target {target}");
            print!("{}", io::serialize_graph(&g));
            Ok(EXIT_YES)
        }
        ReduceCommand::IndependentSet { input, p } => {
            if p == 0 {
                return Err(CliError::usage("--p must be at least 1"));
            }
            let g = io::read_graph(&input)?;
            let out = sfc_core::reductions::gen_pk1k2_from_independent_set(&g, p);
            println!("c pattern pK1qK2:{p},1");
            println!("c k 1");
            print!("{}", io::serialize_graph(&out));
            Ok(EXIT_YES)
        }
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn run_gen(model: GenModel) -> Result<u8, CliError> {
    let g = match model {
        GenModel::Gnp { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(CliError::usage("--p must lie in [0, 1]"));
            }
            gen::gnp(n, p, seed)
        }
        GenModel::MaxDeg {
            n,
            max_deg,
            edges,
            seed,
        } => gen::max_deg(n, max_deg, edges, seed)?,
        GenModel::DDegenerate { n, d, seed } => gen::d_degenerate(n, d, seed),
    };
    print!("{}", io::serialize_graph(&g));
    Ok(EXIT_YES)
}

type BenchRow = (String, String, String, u64, u128);

fn run_bench(args: BenchArgs) -> Result<u8, CliError> {
    let text = std::fs::read_to_string(&args.manifest).map_err(io::FormatError::from)?;
    struct Job {
        instance: String,
        graph: Graph,
        pattern: Pattern,
        k: usize,
        l: Option<usize>,
        algorithm: Algorithm,
    }
    let mut jobs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 4 {
            return Err(CliError::format(format!(
                "manifest line {}: expected `<graph> <pattern> <k:N|l:N> <algorithm>`",
                idx + 1
            )));
        }
        let graph = io::read_graph(std::path::Path::new(tok[0]))?;
        let pattern = io::parse_pattern(tok[1])?;
        let (k, l) = if let Some(v) = tok[2].strip_prefix("k:") {
            let k = v
                .parse()
                .map_err(|_| CliError::format(format!("bad k in `{}`", tok[2])))?;
            (k, None)
        } else if let Some(v) = tok[2].strip_prefix("l:") {
            let l: usize = v
                .parse()
                .map_err(|_| CliError::format(format!("bad l in `{}`", tok[2])))?;
            (graph.m().saturating_sub(l), Some(l))
        } else {
            return Err(CliError::format(format!("bad parameter `{}`", tok[2])));
        };
        let algorithm = <Algorithm as ValueEnum>::from_str(tok[3], true)
            .map_err(|_| CliError::format(format!("unknown algorithm `{}`", tok[3])))?;
        jobs.push(Job {
            instance: tok[0].to_string(),
            graph,
            pattern,
            k,
            l,
            algorithm,
        });
    }

    let run_job = |job: &Job| -> BenchRow {
        let start = Instant::now();
        let outcome = dispatch(
            &job.graph,
            &job.pattern,
            job.algorithm,
            job.k,
            job.l,
            args.seed,
            args.budget,
        );
        let millis = start.elapsed().as_millis();
        match outcome {
            Ok(report) => (
                job.instance.clone(),
                report.algorithm.to_string(),
                report.decision.to_string(),
                report.stats.nodes,
                millis,
            ),
            Err(e) => (job.instance.clone(), "error".into(), e.msg, 0, millis),
        }
    };

    let workers = args.jobs.max(1);
    let mut rows: Vec<(usize, BenchRow)> = Vec::new();
    if workers <= 1 {
        for (i, job) in jobs.iter().enumerate() {
            rows.push((i, run_job(job)));
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..workers)
                .map(|t| {
                    let jobs = &jobs;
                    let run_job = &run_job;
                    scope.spawn(move || {
                        (0..jobs.len())
                            .filter(|i| i % workers == t)
                            .map(|i| (i, run_job(&jobs[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                rows.extend(h.join().expect("bench worker panicked"));
            }
        });
    }
    rows.sort_by_key(|(i, _)| *i);
    println!("instance,algorithm,decision,nodes,millis");
    for (_, (instance, algorithm, decision, nodes, millis)) in rows {
        println!("{instance},{algorithm},{decision},{nodes},{millis}");
    }
    Ok(EXIT_YES)
}
