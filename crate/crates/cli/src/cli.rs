//! Command-line surface. `run` does all the work against caller-supplied
//! writers so that the binary stays a thin shell.

use std::io::{IsTerminal, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use pidwidth_core::parameters::{compute, decide, decomposition_from_strategy, validate_decomposition, ComputeError};
use pidwidth_core::{DiscoverError, DiscoverOptions, Graph, PartialOrder, Query};
use rayon::prelude::*;

use crate::io::{parse_graph, parse_order, parse_td, write_col, write_gr, GraphFile};
use crate::stats::{self, csv_field, StatsRow, CSV_HEADER};
use crate::{corpus, generators, with_width};

pub const EXIT_OK: i32 = 0;
/// Invalid decomposition, unreadable input or a failed computation.
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "pidwidth", version, about = "Exact treewidth-like parameters via positive-instance driven search games")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a parameter exactly, or decide it for one searcher count.
    Solve(SolveArgs),
    /// Pit, arena and colosseum sizes as CSV.
    Stats(StatsArgs),
    /// Generate a graph.
    Gen(GenArgs),
    /// Check a tree decomposition file.
    Verify(VerifyArgs),
    /// Mean stats over seeded random graphs.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Param {
    Tw,
    Pw,
    Td,
    Twq,
    Dtw,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long, value_enum, default_value = "tw")]
    pub param: Param,
    /// Branch bound for twq.
    #[arg(long)]
    pub q: Option<u64>,
    /// Order file for dtw (`u < v` per line); defaults to the empty order.
    #[arg(long)]
    pub order: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub param: ParamArgs,
    /// Graph file (`.gr` or `.col`), `-` for stdin.
    #[arg(long, conflicts_with = "named")]
    pub input: Option<String>,
    /// A bundled named graph, e.g. `grotzsch`.
    #[arg(long)]
    pub named: Option<String>,
    /// Write the witness decomposition here (`-` for stdout).
    #[arg(long)]
    pub output_td: Option<String>,
    /// Only decide whether `k` searchers win.
    #[arg(long)]
    pub decide: Option<usize>,
    /// Byte budget for configuration storage, with optional K/M/G suffix.
    #[arg(long, value_parser = parse_bytes)]
    pub memory_budget: Option<usize>,
    /// Print the discovery trace of the final pit to stderr.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// `named` for the bundled graphs, otherwise a directory of graph files.
    #[arg(long, default_value = "named")]
    pub corpus: String,
    /// Restrict to these graphs (names or file stems).
    #[arg(long)]
    pub only: Vec<String>,
    /// One row per k from 2 up to the minimal winning k.
    #[arg(long)]
    pub growth: bool,
    /// Largest n for which the colosseum is enumerated.
    #[arg(long, default_value_t = 26)]
    pub max_n: usize,
    #[arg(long, value_parser = parse_bytes)]
    pub memory_budget: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Er,
    Ws,
    Ba,
    Pnk,
    ClawFree,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    /// Vertex count (path length for pnk, vertex cap for claw-free).
    #[arg(long, default_value_t = 25)]
    pub n: usize,
    /// Edge (er) or rewiring (ws) probability.
    #[arg(long, default_value_t = 0.33)]
    pub p: f64,
    /// Lattice neighbours per side (ws) or edges per new vertex (ba).
    #[arg(long = "K", default_value_t = 5)]
    pub big_k: usize,
    /// Clique size for pnk.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Gr,
    Col,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum, default_value = "gr")]
    pub format: OutputFormat,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub td: String,
    #[command(flatten)]
    pub param: ParamArgs,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 25)]
    pub trials: u64,
    #[arg(long, default_value_t = 26)]
    pub max_n: usize,
    /// Append wall-clock seconds per trial; makes the output run dependent.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_parser = parse_bytes)]
    pub memory_budget: Option<usize>,
}

fn parse_bytes(s: &str) -> Result<usize, String> {
    let s = s.trim();
    let (digits, scale) = match s.char_indices().last() {
        Some((i, 'k' | 'K')) => (&s[..i], 1usize << 10),
        Some((i, 'm' | 'M')) => (&s[..i], 1 << 20),
        Some((i, 'g' | 'G')) => (&s[..i], 1 << 30),
        _ => (s, 1),
    };
    digits
        .parse::<usize>()
        .ok()
        .and_then(|d| d.checked_mul(scale))
        .ok_or_else(|| format!("invalid byte count `{s}`"))
}

/// Why a command stopped early.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(anyhow::Error),
    /// The memory budget ran out; `bound` is the proven lower bound line.
    Budget { message: String, bound: Option<String> },
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Input(_) => EXIT_FAILURE,
            Failure::Budget { .. } => EXIT_BUDGET,
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.into())
    }
}

impl From<DiscoverError> for Failure {
    fn from(e: DiscoverError) -> Self {
        Failure::Budget {
            message: e.to_string(),
            bound: None,
        }
    }
}

pub struct Output<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub color: bool,
}

impl Output<'_> {
    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

/// Colour only on a terminal and only without `NO_COLOR`.
pub fn stdout_wants_color() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

/// Runs a parsed command and returns the exit code. Failures are reported on
/// `err`.
pub fn run(cli: Cli, io: &mut Output<'_>) -> i32 {
    let result = match cli.command {
        Command::Solve(args) => solve(&args, io),
        Command::Stats(args) => stats_cmd(&args, io),
        Command::Gen(args) => gen(&args, io),
        Command::Verify(args) => verify(&args, io),
        Command::Bench(args) => bench(&args, io),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            let _ = match &failure {
                Failure::Usage(msg) => writeln!(io.err, "error: {msg}"),
                Failure::Input(e) => writeln!(io.err, "error: {e:#}"),
                Failure::Budget { message, bound } => {
                    if let Some(bound) = bound {
                        let _ = writeln!(io.out, "{bound}");
                    }
                    writeln!(io.err, "error: {message}")
                }
            };
            failure.exit_code()
        }
    }
}

fn options(budget: Option<usize>) -> DiscoverOptions {
    let mut options = DiscoverOptions::default();
    if let Some(b) = budget {
        options.memory_budget = b;
    }
    options
}

fn read_source(path: &str) -> anyhow::Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
    }
}

fn load_graph(path: &str) -> anyhow::Result<GraphFile> {
    parse_graph(&read_source(path)?).with_context(|| format!("in {path}"))
}

fn write_target(target: &str, text: &str, io: &mut Output<'_>) -> anyhow::Result<()> {
    if target == "-" {
        io.out.write_all(text.as_bytes())?;
    } else {
        std::fs::write(target, text).with_context(|| format!("cannot write {target}"))?;
    }
    Ok(())
}

fn check_param_args(args: &ParamArgs) -> Result<(), Failure> {
    match (args.param, args.q, &args.order) {
        (Param::Twq, None, _) => Err(Failure::Usage("--param twq needs --q".into())),
        (p, Some(_), _) if p != Param::Twq => Err(Failure::Usage("--q only applies to --param twq".into())),
        (p, _, Some(_)) if p != Param::Dtw => Err(Failure::Usage("--order only applies to --param dtw".into())),
        _ => Ok(()),
    }
}

fn load_order<const W: usize>(args: &ParamArgs, n: usize) -> anyhow::Result<PartialOrder<W>> {
    match &args.order {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            parse_order(&text, n).with_context(|| format!("in {}", path.display()))
        }
        None => Ok(PartialOrder::empty(n)),
    }
}

fn query<'a, const W: usize>(args: &ParamArgs, order: &'a PartialOrder<W>) -> Query<'a, W> {
    match args.param {
        Param::Tw => Query::Treewidth,
        Param::Pw => Query::Pathwidth,
        Param::Td => Query::Treedepth,
        Param::Twq => Query::QBranched(args.q.unwrap_or(0)),
        Param::Dtw => Query::Dependency(order),
    }
}

fn too_large(n: usize) -> Failure {
    Failure::Input(anyhow!("{n} vertices exceed the supported maximum of 512"))
}

fn solve(args: &SolveArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    check_param_args(&args.param)?;
    let file = match (&args.input, &args.named) {
        (Some(path), None) => load_graph(path)?,
        (None, Some(name)) => {
            corpus::named(name)
                .ok_or_else(|| Failure::Usage(format!("unknown named graph `{name}`; known: {}", corpus::names().join(", "))))?
                .graph
        }
        _ => return Err(Failure::Usage("give exactly one of --input or --named".into())),
    };
    for w in &file.warnings {
        writeln!(io.err, "warning: {w}")?;
    }
    with_width!(file.n, W => solve_with::<W>(&file, args, io)).unwrap_or_else(|| Err(too_large(file.n)))
}

fn solve_with<const W: usize>(file: &GraphFile, args: &SolveArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    let graph: Graph<W> = file.to_graph().map_err(|e| anyhow!(e))?;
    let order = load_order::<W>(&args.param, file.n)?;
    let query = query(&args.param, &order);
    let kind = query.kind();
    let name = kind.name();
    let options = options(args.memory_budget);
    if let Some(k) = args.decide {
        let decision = decide(&graph, k, &query, options)?;
        if args.trace {
            io.err.write_all(decision.pit.trace_text().as_bytes())?;
        }
        let bound = if kind.is_width() { k.saturating_sub(1) } else { k };
        if decision.winnable {
            writeln!(io.out, "{name} <= {bound}")?;
        } else {
            writeln!(io.out, "{name} > {bound}")?;
        }
        if let (Some(target), Some(strategy)) = (&args.output_td, &decision.strategy) {
            let td = decomposition_from_strategy(&graph, &decision.pit, strategy, kind);
            write_target(target, &crate::io::write_td(&td, graph.n()), io)?;
        }
        return Ok(EXIT_OK);
    }
    let solution = match compute(&graph, &query, options) {
        Ok(s) => s,
        Err(ComputeError::EmptyGraph) => {
            writeln!(io.out, "{name} = 0")?;
            return Ok(EXIT_OK);
        }
        Err(ComputeError::BudgetExceeded { lower_bound, k, source }) => {
            return Err(Failure::Budget {
                message: format!("{source} at k = {k}"),
                bound: Some(format!("{name} >= {lower_bound}")),
            });
        }
    };
    if args.trace {
        let pit = pidwidth_core::discover_with(&graph, solution.k, options)?;
        io.err.write_all(pit.trace_text().as_bytes())?;
    }
    writeln!(io.out, "{name} = {}", solution.value)?;
    if let Some(target) = &args.output_td {
        write_target(target, &crate::io::write_td(&solution.witness, graph.n()), io)?;
    }
    Ok(EXIT_OK)
}

fn stats_cmd(args: &StatsArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    let mut graphs: Vec<(String, GraphFile)> = if args.corpus == "named" {
        corpus::named_graphs().into_iter().map(|g| (g.expected.name, g.graph)).collect()
    } else {
        corpus::load_dir(Path::new(&args.corpus))?
    };
    if !args.only.is_empty() {
        let keys: Vec<String> = args.only.iter().map(|s| normalize(s)).collect();
        graphs.retain(|(name, _)| keys.contains(&normalize(name)));
        if graphs.is_empty() {
            return Err(Failure::Usage("--only matched no graph".into()));
        }
    }
    let options = options(args.memory_budget);
    let rows: Vec<Result<Vec<StatsRow>, Failure>> = graphs
        .par_iter()
        .map(|(name, file)| {
            with_width!(file.n, W => {
                let graph: Graph<W> = file.to_graph().map_err(|e| anyhow!(e))?;
                if args.growth {
                    Ok(stats::growth(name, &graph, args.max_n, options)?)
                } else {
                    Ok(vec![stats::row(name, &graph, args.max_n, options)?])
                }
            })
            .unwrap_or_else(|| Err(too_large(file.n)))
        })
        .collect();
    writeln!(io.out, "{CSV_HEADER}")?;
    for rows in rows {
        for row in rows? {
            writeln!(io.out, "{row}")?;
        }
    }
    Ok(EXIT_OK)
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).map(|c| c.to_ascii_lowercase()).collect()
}

fn generate(model: &ModelArgs, seed: u64) -> Result<GraphFile, Failure> {
    let n = model.n;
    let result = match model.model {
        Model::Er => generators::erdos_renyi(n, model.p, seed),
        Model::Ws => generators::watts_strogatz(n, model.big_k, model.p, seed),
        Model::Ba => generators::barabasi_albert(n, model.big_k, seed),
        Model::Pnk => generators::pnk(n, model.k),
        Model::ClawFree => generators::claw_free(n, seed),
    };
    result.map_err(|e| Failure::Usage(e.to_string()))
}

fn gen(args: &GenArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    let file = generate(&args.model, args.model.seed)?;
    let text = match args.format {
        OutputFormat::Gr => write_gr(&file),
        OutputFormat::Col => write_col(&file),
    };
    match &args.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => io.out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn verify(args: &VerifyArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    check_param_args(&args.param)?;
    let file = load_graph(&args.graph)?;
    let td_text = read_source(&args.td)?;
    let td_file = parse_td(&td_text).with_context(|| format!("in {}", args.td))?;
    with_width!(file.n, W => verify_with::<W>(&file, &td_file, args, io)).unwrap_or_else(|| Err(too_large(file.n)))
}

fn verify_with<const W: usize>(
    file: &GraphFile,
    td_file: &crate::io::TdFile,
    args: &VerifyArgs,
    io: &mut Output<'_>,
) -> Result<i32, Failure> {
    let graph: Graph<W> = file.to_graph().map_err(|e| anyhow!(e))?;
    let order = load_order::<W>(&args.param, file.n)?;
    let query = query(&args.param, &order);
    let mut problems = Vec::new();
    if td_file.declared_n != graph.n() {
        problems.push(format!("header claims {} vertices, graph has {}", td_file.declared_n, graph.n()));
    }
    let largest = td_file.bags.iter().map(|b| dedup_len(b)).max().unwrap_or(0);
    if td_file.declared_max_bag != largest {
        problems.push(format!(
            "header claims width {} but the largest bag gives width {}",
            td_file.claimed_width(),
            largest.saturating_sub(1)
        ));
    }
    let report = match td_file.to_decomposition::<W>(graph.n()) {
        Ok(td) => {
            let report = validate_decomposition(&graph, &td, &query);
            problems.extend(report.violations.iter().map(|v| v.to_string()));
            Some(report)
        }
        Err(e) => {
            problems.push(e.to_string());
            None
        }
    };
    let valid = problems.is_empty() && report.as_ref().is_some_and(|r| r.valid);
    let verdict = if valid { io.paint("VALID", "32") } else { io.paint("INVALID", "31") };
    match &report {
        Some(r) => writeln!(
            io.out,
            "{verdict} {} width={} depth={} branches={}",
            query.kind().name(),
            r.width,
            r.depth,
            r.branch_count
        )?,
        None => writeln!(io.out, "{verdict} {}", query.kind().name())?,
    }
    for p in &problems {
        writeln!(io.out, "  {p}")?;
    }
    Ok(if valid { EXIT_OK } else { EXIT_FAILURE })
}

fn dedup_len(bag: &[usize]) -> usize {
    let mut b = bag.to_vec();
    b.sort_unstable();
    b.dedup();
    b.len()
}

/// Seed of trial `i`: the base seed plus `i`, so a single trial reproduces
/// `gen --seed <base>`.
pub fn trial_seed(base: u64, i: u64) -> u64 {
    base.wrapping_add(i)
}

fn bench(args: &BenchArgs, io: &mut Output<'_>) -> Result<i32, Failure> {
    if args.trials == 0 {
        return Err(Failure::Usage("--trials must be positive".into()));
    }
    let options = options(args.memory_budget);
    // check the model arguments once before fanning out
    generate(&args.model, args.model.seed)?;
    let results: Vec<Result<(u64, StatsRow, f64), Failure>> = (0..args.trials)
        .into_par_iter()
        .map(|i| {
            let seed = trial_seed(args.model.seed, i);
            let file = generate(&args.model, seed)?;
            let started = Instant::now();
            let row = with_width!(file.n, W => {
                let graph: Graph<W> = file.to_graph().map_err(|e| anyhow!(e))?;
                Ok::<_, Failure>(stats::row(&format!("{i}"), &graph, args.max_n, options)?)
            })
            .unwrap_or_else(|| Err(too_large(file.n)))?;
            Ok((seed, row, started.elapsed().as_secs_f64()))
        })
        .collect();
    let header = "trial,seed,n,m,k,pit,arena,colosseum";
    if args.timing {
        writeln!(io.out, "{header},seconds")?;
    } else {
        writeln!(io.out, "{header}")?;
    }
    let mut rows = Vec::new();
    for r in results {
        rows.push(r?);
    }
    for (seed, row, secs) in &rows {
        let colosseum = row.colosseum.map_or("-".to_string(), |c| c.to_string());
        write!(
            io.out,
            "{},{seed},{},{},{},{},{},{colosseum}",
            csv_field(&row.graph),
            row.n,
            row.m,
            row.k,
            row.pit,
            row.arena
        )?;
        if args.timing {
            write!(io.out, ",{secs:.3}")?;
        }
        writeln!(io.out)?;
    }
    let count = rows.len() as f64;
    let mean = |f: &dyn Fn(&StatsRow) -> f64| rows.iter().map(|(_, r, _)| f(r)).sum::<f64>() / count;
    let colosseum = if rows.iter().all(|(_, r, _)| r.colosseum.is_some()) {
        format!("{:.1}", mean(&|r| r.colosseum.unwrap_or(0) as f64))
    } else {
        "-".into()
    };
    write!(
        io.out,
        "mean,,{:.1},{:.1},{:.2},{:.1},{:.1},{colosseum}",
        mean(&|r| r.n as f64),
        mean(&|r| r.m as f64),
        mean(&|r| r.k as f64),
        mean(&|r| r.pit as f64),
        mean(&|r| r.arena as f64),
    )?;
    if args.timing {
        write!(io.out, ",{:.3}", rows.iter().map(|r| r.2).sum::<f64>() / count)?;
    }
    writeln!(io.out)?;
    Ok(EXIT_OK)
}

/// Parses `argv` and runs it; clap errors map to the usage exit code.
pub fn main_with<I, T>(argv: I, io: &mut Output<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(cli, io),
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = io.out.write_all(rendered.as_bytes());
                    if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                        EXIT_USAGE
                    } else {
                        EXIT_OK
                    }
                }
                _ => {
                    let _ = io.err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            }
        }
    }
}
