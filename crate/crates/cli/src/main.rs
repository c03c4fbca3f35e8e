//! Command-line frontend.
//!
//! Exit codes: 0 success, 1 verification failure or counterexample
//! found, 2 usage or parse error, 3 infeasible instance, 4 budget or
//! overflow.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use majority_coloring::baselines::{
    greedy_acyclic_2color, local_search_kcolor, split_product_4color, BaselineError,
};
use majority_coloring::engine::{
    self, build_majority4_instance, build_twothirds3_instance, check_feasibility,
    color_with_ranks, color_with_ranks_traced, EliminationStrategy, EngineError,
};
use majority_coloring::gen::{
    gen_random_dag, gen_random_digraph, gen_random_lists, gen_random_permutation,
    gen_random_tournament, gen_random_undirected,
};
use majority_coloring::io::{
    parse_coloring, parse_instance, write_coloring, write_instance, ParsedGraph, ParsedInstance,
};
use majority_coloring::oracle::{
    count_valid_colorings, exhaustive_list_coloring, search_majority3_counterexample,
    OracleConstraint, SearchConfig, DEFAULT_CANDIDATE_BUDGET,
};
use majority_coloring::verify::{
    verify_majority_fraction, verify_rank_coloring, verify_undirected_fraction,
};
use majority_coloring::Rational;

#[derive(Parser)]
#[command(name = "majority-color", version, about = "Majority colorings of digraphs from ranked color lists")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance file
    Gen(GenArgs),
    /// Color an instance with the rank-based solver
    Color(ColorArgs),
    /// Check a coloring file against an instance
    Verify(VerifyArgs),
    /// Run a rank-free baseline coloring
    Baseline(BaselineArgs),
    /// Exhaustively search or count list colorings of a small instance
    Oracle(OracleArgs),
    /// Hunt for a digraph that is not majority-colorable from 3-lists
    Search(SearchArgs),
    /// Time the majority-coloring pipeline on a random digraph
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Digraph,
    Tournament,
    Dag,
    Undirected,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: GraphKind,
    #[arg(long)]
    n: usize,
    /// Edge probability as a fraction, e.g. 1/10 (digraph, dag, undirected)
    #[arg(long)]
    p: Option<Rational>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Attach random color lists drawn from {0..palette-1}
    #[arg(long)]
    palette: Option<usize>,
    #[arg(long, requires = "palette")]
    list_size: Option<usize>,
    /// Seed for list generation; defaults to --seed
    #[arg(long)]
    lists_seed: Option<u64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColorMode {
    Majority4,
    Twothirds3,
    Custom,
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: ColorMode,
    #[arg(long, default_value_t = engine::DEFAULT_T)]
    t: u32,
    #[arg(long, default_value_t = EliminationStrategy::AscendingId)]
    strategy: EliminationStrategy,
    /// Slack for twothirds3 ranks, in the open interval (0, 1/3)
    #[arg(long, default_value = "1/4")]
    epsilon: Rational,
    /// Also write the elimination trace to <output>.trace
    #[arg(long, requires = "output")]
    trace: bool,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long)]
    coloring: PathBuf,
    /// Check count <= p/q * degree at every vertex
    #[arg(long, conflicts_with = "ranks")]
    fraction: Option<Rational>,
    /// Check against the instance's own ranks
    #[arg(long)]
    ranks: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaselineMode {
    Acyclic2,
    Product4,
    Lovasz,
}

#[derive(Args)]
struct BaselineArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, value_enum)]
    mode: BaselineMode,
    /// Color count for the lovasz mode
    #[arg(long)]
    k: Option<u32>,
    /// Shuffle the product4 vertex order with this seed (default: identity)
    #[arg(long)]
    order_seed: Option<u64>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, conflicts_with = "ranks")]
    fraction: Option<Rational>,
    #[arg(long)]
    ranks: bool,
    /// Count all valid colorings instead of finding the first
    #[arg(long)]
    count: bool,
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
    budget: u64,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = 500)]
    trials: u64,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CANDIDATE_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: Rational,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure with its process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }

    fn infeasible(message: impl ToString) -> Self {
        Failure { code: 3, message: message.to_string() }
    }

    fn budget(message: impl ToString) -> Self {
        Failure { code: 4, message: message.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e)
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Infeasible(_) => Failure::infeasible(e),
            EngineError::RankOverflow { .. } => Failure::budget(e),
            EngineError::InvalidT => Failure::usage(e),
        }
    }
}

impl From<BaselineError> for Failure {
    fn from(e: BaselineError) -> Self {
        match e {
            BaselineError::Cyclic(_) => Failure::infeasible(e),
            _ => Failure::usage(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Color(args) => run_color(args),
        Command::Verify(args) => run_verify(args),
        Command::Baseline(args) => run_baseline(args),
        Command::Oracle(args) => run_oracle(args),
        Command::Search(args) => run_search(args),
        Command::Bench(args) => run_bench(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_instance(path: &Path) -> Result<ParsedInstance, Failure> {
    let text = fs::read_to_string(path)?;
    parse_instance(&text).map_err(Failure::usage)
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run_gen(args: GenArgs) -> Result<u8, Failure> {
    let need_p = || {
        args.p
            .ok_or_else(|| Failure::usage("--p is required for this kind"))
    };
    let graph = match args.kind {
        GraphKind::Digraph => {
            ParsedGraph::Directed(gen_random_digraph(args.n, need_p()?, args.seed).map_err(Failure::usage)?)
        }
        GraphKind::Dag => {
            ParsedGraph::Directed(gen_random_dag(args.n, need_p()?, args.seed).map_err(Failure::usage)?)
        }
        GraphKind::Tournament => ParsedGraph::Directed(gen_random_tournament(args.n, args.seed)),
        GraphKind::Undirected => ParsedGraph::Undirected(
            gen_random_undirected(args.n, need_p()?, args.seed).map_err(Failure::usage)?,
        ),
    };
    let lists = match (args.palette, args.list_size) {
        (Some(palette), Some(list_size)) => Some(
            gen_random_lists(args.n, palette, list_size, args.lists_seed.unwrap_or(args.seed))
                .map_err(Failure::usage)?,
        ),
        (Some(_), None) => return Err(Failure::usage("--palette requires --list-size")),
        _ => None,
    };
    let inst = ParsedInstance { graph, lists, ranks: None };
    emit(args.output.as_ref(), &write_instance(&inst))?;
    Ok(0)
}

fn run_color(args: ColorArgs) -> Result<u8, Failure> {
    let parsed = read_instance(&args.input)?;
    let instance = match args.mode {
        ColorMode::Majority4 => {
            let digraph = parsed
                .digraph()
                .ok_or_else(|| Failure::usage("majority4 needs a directed instance"))?;
            let lists = parsed
                .lists
                .clone()
                .ok_or_else(|| Failure::usage("majority4 needs 4-color lists (`l` lines)"))?;
            build_majority4_instance(digraph, lists).map_err(Failure::usage)?
        }
        ColorMode::Twothirds3 => {
            let digraph = parsed
                .digraph()
                .ok_or_else(|| Failure::usage("twothirds3 needs a directed instance"))?;
            let lists = parsed
                .lists
                .clone()
                .ok_or_else(|| Failure::usage("twothirds3 needs 3-color lists (`l` lines)"))?;
            build_twothirds3_instance(digraph, lists, args.epsilon)
                .map_err(Failure::usage)?
                .instance
        }
        ColorMode::Custom => parsed.into_ranked().map_err(Failure::usage)?,
    };

    if args.trace {
        let (coloring, trace) = color_with_ranks_traced(&instance, args.t, args.strategy)?;
        let output = args.output.as_ref().expect("clap: --trace requires --output");
        emit(Some(output), &write_coloring(&coloring))?;
        let trace_path = PathBuf::from(format!("{}.trace", output.display()));
        fs::write(trace_path, trace.to_text())?;
    } else {
        let coloring = color_with_ranks(&instance, args.t, args.strategy)?;
        emit(args.output.as_ref(), &write_coloring(&coloring))?;
    }
    Ok(0)
}

fn run_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let parsed = read_instance(&args.input)?;
    let coloring_text = fs::read_to_string(&args.coloring)?;
    let coloring = parse_coloring(&coloring_text, parsed.n()).map_err(Failure::usage)?;

    let report = if args.ranks {
        let instance = parsed.into_ranked().map_err(Failure::usage)?;
        verify_rank_coloring(&instance, &coloring).map_err(Failure::usage)?
    } else {
        let fraction = args
            .fraction
            .ok_or_else(|| Failure::usage("pass --fraction P/Q or --ranks"))?;
        match &parsed.graph {
            ParsedGraph::Directed(d) => {
                verify_majority_fraction(d, &coloring, fraction).map_err(Failure::usage)?
            }
            ParsedGraph::Undirected(g) => {
                // q * count <= p * degree generalizes the 1/k check.
                if fraction.numerator() != 1 {
                    return Err(Failure::usage(
                        "undirected instances take --fraction 1/k",
                    ));
                }
                verify_undirected_fraction(g, &coloring, fraction.denominator() as u32)
                    .map_err(Failure::usage)?
            }
        }
    };
    print!("{report}");
    Ok(if report.ok() { 0 } else { 1 })
}

fn run_baseline(args: BaselineArgs) -> Result<u8, Failure> {
    let parsed = read_instance(&args.input)?;
    let coloring = match args.mode {
        BaselineMode::Acyclic2 => {
            let d = parsed
                .digraph()
                .ok_or_else(|| Failure::usage("acyclic2 needs a directed instance"))?;
            greedy_acyclic_2color(d)?
        }
        BaselineMode::Product4 => {
            let d = parsed
                .digraph()
                .ok_or_else(|| Failure::usage("product4 needs a directed instance"))?;
            let order = match args.order_seed {
                Some(seed) => gen_random_permutation(d.n(), seed),
                None => (0..d.n()).collect(),
            };
            split_product_4color(d, &order)?
        }
        BaselineMode::Lovasz => {
            let g = parsed
                .undirected()
                .ok_or_else(|| Failure::usage("lovasz needs an undirected instance (`u` lines)"))?;
            let k = args.k.ok_or_else(|| Failure::usage("lovasz needs --k"))?;
            local_search_kcolor(g, k)?.coloring
        }
    };
    emit(args.output.as_ref(), &write_coloring(&coloring))?;
    Ok(0)
}

fn run_oracle(args: OracleArgs) -> Result<u8, Failure> {
    let parsed = read_instance(&args.input)?;
    let digraph = parsed
        .digraph()
        .cloned()
        .ok_or_else(|| Failure::usage("oracle needs a directed instance"))?;
    let lists = parsed
        .lists
        .clone()
        .ok_or_else(|| Failure::usage("oracle needs color lists (`l` lines)"))?;

    let ranked;
    let constraint = if args.ranks {
        ranked = parsed.into_ranked().map_err(Failure::usage)?;
        OracleConstraint::Ranks(&ranked)
    } else {
        let fraction = args
            .fraction
            .ok_or_else(|| Failure::usage("pass --fraction P/Q or --ranks"))?;
        OracleConstraint::Fraction(fraction)
    };

    if args.count {
        let count = count_valid_colorings(&digraph, &lists, constraint, args.budget)
            .map_err(Failure::budget)?;
        println!("{count}");
        return Ok(0);
    }
    match exhaustive_list_coloring(&digraph, &lists, constraint, args.budget)
        .map_err(Failure::budget)?
    {
        Some(coloring) => {
            emit(args.output.as_ref(), &write_coloring(&coloring))?;
            Ok(0)
        }
        None => {
            println!("none");
            Ok(0)
        }
    }
}

fn run_search(args: SearchArgs) -> Result<u8, Failure> {
    let report = search_majority3_counterexample(&SearchConfig {
        trials: args.trials,
        n_max: args.n_max,
        seed: args.seed,
        budget: args.budget,
    });
    match report.counterexample {
        Some(ce) => {
            let inst = ParsedInstance {
                graph: ParsedGraph::Directed(ce.digraph),
                lists: Some(ce.lists),
                ranks: None,
            };
            print!("{}", write_instance(&inst));
            println!("UNSAT after {} candidates", ce.candidates_exhausted);
            eprintln!(
                "counterexample found at trial {} of {}",
                ce.trial, report.trials_run
            );
            Ok(1)
        }
        None => {
            println!(
                "no counterexample in {} trials ({} skipped over budget)",
                report.trials_run, report.skipped_budget
            );
            Ok(0)
        }
    }
}

fn peak_rss_bytes() -> Option<u64> {
    let status = fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}

fn run_bench(args: BenchArgs) -> Result<u8, Failure> {
    let start = Instant::now();
    let digraph = gen_random_digraph(args.n, args.p, args.seed).map_err(Failure::usage)?;
    let gen_ms = start.elapsed().as_millis();

    let lists = gen_random_lists(args.n, 8, 4, args.seed ^ 1).map_err(Failure::usage)?;
    let instance = build_majority4_instance(&digraph, lists).map_err(Failure::usage)?;
    debug_assert!(check_feasibility(&instance, 2).map_err(Failure::from)?.is_feasible());

    let start = Instant::now();
    let coloring = color_with_ranks(&instance, 2, EliminationStrategy::AscendingId)?;
    let color_ms = start.elapsed().as_millis();

    let start = Instant::now();
    let report = verify_rank_coloring(&instance, &coloring).map_err(Failure::usage)?;
    let verify_ms = start.elapsed().as_millis();

    println!("n {} m {}", digraph.n(), digraph.edge_count());
    println!("gen_ms {gen_ms}");
    println!("color_ms {color_ms}");
    println!("verify_ms {verify_ms}");
    if let Some(bytes) = peak_rss_bytes() {
        println!("peak_rss_mb {}", bytes / (1024 * 1024));
    }
    println!("{}", if report.ok() { "ok" } else { "FAILED" });
    Ok(if report.ok() { 0 } else { 1 })
}
