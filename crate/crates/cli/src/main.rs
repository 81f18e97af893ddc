//! Batch front end: parse inputs, run the bounds pipeline, and emit
//! text, JSON, or CSV reports.
//!
//! Exit codes: 0 on success, 2 on input or validation errors, 3 on
//! numerical failures (non-convergence, tolerance conflicts).

mod docs;
mod render;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use docs::{CompareDoc, GraphBoundsDoc, MatrixBoundsDoc, ReportDoc, ReportSection, SearchDoc};
use spectrabound::matcore::parse_vector;
use spectrabound::{
    baseline_catalog, bounds_for_with, compare_report, parse_graph, prior_equality_condition,
    search_p34, spectral_radius, theorem_bounds, AnyGraph, BoundsError, Family, MatError,
    MatrixKind, NonnegMatrix, ShiftedSystem, SpectraError, Tolerances,
};

#[derive(Parser)]
#[command(
    name = "spectrabound",
    version,
    about = "Two-sided spectral-radius bounds with equality diagnosis for \
             matrices, graphs, and digraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Pair bounds, oracle value, and equality diagnosis for one input
    Bounds(BoundsArgs),
    /// Per-kind reports with baseline catalogs for one graph
    Report(ReportArgs),
    /// Comparison tables for one or more graph files
    Compare(CompareArgs),
    /// Exhaustive search for bipartite graphs with a balanced degree
    /// chain that are not semi-regular
    #[command(name = "search-p34")]
    SearchP34(SearchArgs),
    /// Write a graph family to an edge-list file
    Gen(GenArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

fn kind_parser(s: &str) -> Result<MatrixKind, String> {
    s.parse()
}

#[derive(Args)]
struct ToleranceArgs {
    /// Relative residual target for the power iteration oracle
    #[arg(long, default_value_t = 1e-12)]
    tol_oracle: f64,
    /// Relative tolerance for bound attainment (structural conditions
    /// are checked 100x tighter)
    #[arg(long, default_value_t = 1e-7)]
    tol_equality: f64,
}

impl ToleranceArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            oracle: self.tol_oracle,
            attainment: self.tol_equality,
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    /// Graph edge-list file
    #[arg(long, conflicts_with = "matrix")]
    graph: Option<PathBuf>,
    /// Matrix kind for graph inputs
    #[arg(long, value_parser = kind_parser)]
    kind: Option<MatrixKind>,
    /// Raw off-diagonal matrix file (zero diagonal)
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Shift vector file for raw matrix runs
    #[arg(long, requires = "matrix", conflicts_with = "corollary")]
    shift: Option<PathBuf>,
    /// Shift each row by its own row sum
    #[arg(long, requires = "matrix")]
    corollary: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    tols: ToleranceArgs,
}

#[derive(Args)]
struct ReportArgs {
    /// Graph edge-list file
    #[arg(long)]
    graph: PathBuf,
    /// Restrict to one matrix kind (default: all four)
    #[arg(long, value_parser = kind_parser)]
    kind: Option<MatrixKind>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    tols: ToleranceArgs,
}

#[derive(Args)]
struct CompareArgs {
    /// Matrix kind to compare
    #[arg(long, value_parser = kind_parser)]
    kind: MatrixKind,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    tols: ToleranceArgs,
    /// Graph edge-list files
    files: Vec<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest vertex count to enumerate (4..=10)
    #[arg(long)]
    max_n: usize,
    /// Directory for witness edge-list files
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Relative tolerance for bound attainment; the chain equations are
    /// verified 100x tighter
    #[arg(long, default_value_t = 1e-7)]
    tol_equality: f64,
}

#[derive(Args)]
struct GenArgs {
    /// Family name: path, cycle, star, complete, complete-bipartite,
    /// petersen, directed-cycle, gnp, strong-gnp
    family: String,
    /// Family parameters (counts, plus the edge probability for the
    /// random families)
    params: Vec<String>,
    /// Output file
    #[arg(short, long)]
    output: PathBuf,
    /// Seed for the random families
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<SpectraError> for Failure {
    fn from(err: SpectraError) -> Self {
        let code = match &err {
            SpectraError::Matrix(MatError::NoConvergence { .. }) => 3,
            SpectraError::Bounds(BoundsError::ToleranceConflict { .. }) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<spectrabound::GraphError> for Failure {
    fn from(err: spectrabound::GraphError) -> Self {
        Failure::from(SpectraError::from(err))
    }
}

impl From<MatError> for Failure {
    fn from(err: MatError) -> Self {
        Failure::from(SpectraError::from(err))
    }
}

impl From<BoundsError> for Failure {
    fn from(err: BoundsError) -> Self {
        Failure::from(SpectraError::from(err))
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(failure) = run(cli.command) {
        eprintln!("error: {}", failure.message);
        std::process::exit(failure.code);
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Bounds(args) => cmd_bounds(args),
        Command::Report(args) => cmd_report(args),
        Command::Compare(args) => cmd_compare(args),
        Command::SearchP34(args) => cmd_search(args),
        Command::Gen(args) => cmd_gen(args),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))
}

fn input_id(path: &Path) -> String {
    path.file_stem()
        .map(|stem| stem.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load_graph(path: &Path) -> Result<AnyGraph, Failure> {
    let text = read_file(path)?;
    parse_graph(&text).map_err(|err| Failure::usage(format!("{}: {err}", path.display())))
}

fn emit_json<T: serde::Serialize>(doc: &T) -> Result<(), Failure> {
    let json = serde_json::to_string_pretty(doc)
        .map_err(|err| Failure::usage(format!("serialization failed: {err}")))?;
    println!("{json}");
    Ok(())
}

fn reject_csv(format: Format, command: &str) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::usage(format!(
            "{command} has no CSV form; use --format text or json"
        )));
    }
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), Failure> {
    reject_csv(args.format, "bounds")?;
    let tols = args.tols.tolerances();
    match (&args.graph, &args.matrix) {
        (Some(graph_path), None) => {
            let kind = args
                .kind
                .ok_or_else(|| Failure::usage("--kind is required with --graph"))?;
            let graph = load_graph(graph_path)?;
            let report = bounds_for_with(&graph, kind, &tols)?;
            let doc = GraphBoundsDoc {
                input: input_id(graph_path),
                report,
            };
            match args.format {
                Format::Json => emit_json(&doc)?,
                _ => print!("{}", render::graph_bounds_text(&doc)),
            }
            Ok(())
        }
        (None, Some(matrix_path)) => {
            let text = read_file(matrix_path)?;
            let matrix = NonnegMatrix::parse(&text)
                .map_err(|err| Failure::usage(format!("{}: {err}", matrix_path.display())))?;
            let (system, shift_mode) = if let Some(shift_path) = &args.shift {
                let shift = parse_vector(&read_file(shift_path)?)
                    .map_err(|err| Failure::usage(format!("{}: {err}", shift_path.display())))?;
                (ShiftedSystem::new(matrix, shift)?, "file")
            } else if args.corollary {
                (ShiftedSystem::from_row_sum_shift(matrix)?, "row-sums")
            } else {
                let n = matrix.n();
                (ShiftedSystem::new(matrix, vec![0.0; n])?, "zero")
            };
            let bounds = theorem_bounds(&system);
            let rho = spectral_radius(
                &system.matrix(),
                tols.oracle,
                spectrabound::matcore::default_max_iter(system.n()),
            )?;
            let diagnosis = spectrabound::bounds::diagnose_equality_with(
                &system,
                &bounds,
                rho.rho,
                tols.attainment,
            )?;
            let prior_criterion = if args.corollary {
                Some(prior_equality_condition(
                    system.off_diagonal(),
                    tols.attainment / 100.0,
                )?)
            } else {
                None
            };
            let doc = MatrixBoundsDoc {
                input: input_id(matrix_path),
                shift_mode: shift_mode.to_string(),
                n: system.n(),
                bounds,
                rho,
                diagnosis,
                prior_criterion,
            };
            match args.format {
                Format::Json => emit_json(&doc)?,
                _ => print!("{}", render::matrix_bounds_text(&doc)),
            }
            Ok(())
        }
        _ => Err(Failure::usage(
            "exactly one of --graph or --matrix is required",
        )),
    }
}

fn cmd_report(args: ReportArgs) -> Result<(), Failure> {
    reject_csv(args.format, "report")?;
    let tols = args.tols.tolerances();
    let graph = load_graph(&args.graph)?;
    let kinds: Vec<MatrixKind> = match args.kind {
        Some(kind) => vec![kind],
        None => MatrixKind::ALL.to_vec(),
    };
    let mut sections = Vec::new();
    for kind in kinds {
        sections.push(ReportSection {
            report: bounds_for_with(&graph, kind, &tols)?,
            baselines: baseline_catalog(&graph, kind)?,
        });
    }
    let doc = ReportDoc {
        input: input_id(&args.graph),
        directed: graph.is_directed(),
        sections,
    };
    match args.format {
        Format::Json => emit_json(&doc)?,
        _ => print!("{}", render::report_text(&doc)),
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    if args.files.is_empty() {
        return Err(Failure::usage("compare needs at least one graph file"));
    }
    let tols = args.tols.tolerances();
    let kind = args.kind;
    let tables: Vec<Result<CompareDoc, Failure>> = parallel_map(args.files, &|path: PathBuf| {
        let graph = load_graph(&path)?;
        let table = compare_report(&graph, kind, &tols)?;
        Ok(CompareDoc {
            input: input_id(&path),
            kind: table.kind,
            rho: table.rho,
            rows: table.rows,
        })
    });
    let mut docs = Vec::with_capacity(tables.len());
    for table in tables {
        docs.push(table?);
    }
    match args.format {
        Format::Json => emit_json(&docs)?,
        Format::Csv => print!(
            "{}",
            render::compare_csv(&docs)
                .map_err(|err| Failure::usage(format!("csv rendering failed: {err}")))?
        ),
        Format::Text => print!("{}", render::compare_text(&docs)),
    }
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    reject_csv(args.format, "search-p34")?;
    let summary = search_p34(args.max_n, args.tol_equality / 100.0)?;
    let mut witness_files = Vec::new();
    if let Some(dir) = &args.out_dir {
        if !summary.witnesses.is_empty() {
            fs::create_dir_all(dir)
                .map_err(|err| Failure::usage(format!("{}: {err}", dir.display())))?;
            for (idx, witness) in summary.witnesses.iter().enumerate() {
                let path = dir.join(format!("p34-witness-{:03}.g", idx + 1));
                fs::write(&path, witness.graph.to_edge_list_text())
                    .map_err(|err| Failure::usage(format!("{}: {err}", path.display())))?;
                witness_files.push(path.display().to_string());
            }
        }
    }
    let doc = SearchDoc {
        summary,
        witness_files,
    };
    match args.format {
        Format::Json => emit_json(&doc)?,
        _ => print!("{}", render::search_text(&doc)),
    }
    Ok(())
}

fn cmd_gen(args: GenArgs) -> Result<(), Failure> {
    let family = parse_family(&args.family, &args.params, args.seed)?;
    let graph = spectrabound::generate(&family)?;
    fs::write(&args.output, graph.to_edge_list_text())
        .map_err(|err| Failure::usage(format!("{}: {err}", args.output.display())))?;
    let (n, edges, noun) = match &graph {
        AnyGraph::Undirected(g) => (g.n(), g.edge_count(), "edges"),
        AnyGraph::Directed(g) => (g.n(), g.arc_count(), "arcs"),
    };
    println!(
        "wrote {} ({} vertices, {} {})",
        args.output.display(),
        n,
        edges,
        noun
    );
    Ok(())
}

fn parse_family(name: &str, params: &[String], seed: u64) -> Result<Family, Failure> {
    let count = |idx: usize| -> Result<usize, Failure> {
        params
            .get(idx)
            .ok_or_else(|| Failure::usage(format!("{name} needs {} parameter(s)", idx + 1)))?
            .parse()
            .map_err(|_| Failure::usage(format!("invalid count `{}`", params[idx])))
    };
    let prob = |idx: usize| -> Result<f64, Failure> {
        params
            .get(idx)
            .ok_or_else(|| Failure::usage(format!("{name} needs {} parameter(s)", idx + 1)))?
            .parse()
            .map_err(|_| Failure::usage(format!("invalid probability `{}`", params[idx])))
    };
    let exactly = |expected: usize| -> Result<(), Failure> {
        if params.len() != expected {
            return Err(Failure::usage(format!(
                "{name} takes exactly {expected} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    match name {
        "path" => {
            exactly(1)?;
            Ok(Family::Path { n: count(0)? })
        }
        "cycle" => {
            exactly(1)?;
            Ok(Family::Cycle { n: count(0)? })
        }
        "star" => {
            exactly(1)?;
            Ok(Family::Star { leaves: count(0)? })
        }
        "complete" => {
            exactly(1)?;
            Ok(Family::Complete { n: count(0)? })
        }
        "complete-bipartite" => {
            exactly(2)?;
            Ok(Family::CompleteBipartite {
                a: count(0)?,
                b: count(1)?,
            })
        }
        "petersen" => {
            exactly(0)?;
            Ok(Family::Petersen)
        }
        "directed-cycle" => {
            exactly(1)?;
            Ok(Family::DirectedCycle { n: count(0)? })
        }
        "gnp" => {
            exactly(2)?;
            Ok(Family::RandomConnected {
                n: count(0)?,
                p: prob(1)?,
                seed,
            })
        }
        "strong-gnp" => {
            exactly(2)?;
            Ok(Family::RandomStrongDigraph {
                n: count(0)?,
                p: prob(1)?,
                seed,
            })
        }
        other => Err(Failure::usage(format!(
            "unknown family `{other}` (expected path, cycle, star, complete, \
             complete-bipartite, petersen, directed-cycle, gnp, or strong-gnp)"
        ))),
    }
}

/// Worker count for fan-out: `SPECTRABOUND_THREADS` caps it, 0 or 1
/// forces sequential execution, unset uses the available parallelism.
fn worker_cap(tasks: usize) -> usize {
    let configured = std::env::var("SPECTRABOUND_THREADS")
        .ok()
        .and_then(|raw| raw.parse::<usize>().ok());
    let available = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    configured.unwrap_or(available).min(tasks).max(1)
}

/// Order-preserving parallel map over contiguous chunks.
fn parallel_map<T: Send, R: Send>(items: Vec<T>, f: &(impl Fn(T) -> R + Sync)) -> Vec<R> {
    let workers = worker_cap(items.len());
    if workers <= 1 {
        return items.into_iter().map(f).collect();
    }
    let chunk_size = items.len().div_ceil(workers);
    let mut chunks: Vec<Vec<T>> = Vec::new();
    let mut iter = items.into_iter();
    loop {
        let chunk: Vec<T> = iter.by_ref().take(chunk_size).collect();
        if chunk.is_empty() {
            break;
        }
        chunks.push(chunk);
    }
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .into_iter()
            .map(|chunk| scope.spawn(move || chunk.into_iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|handle| handle.join().expect("worker panicked"))
            .collect()
    })
}
