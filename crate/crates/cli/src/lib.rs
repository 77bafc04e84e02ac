//! The `neumaier` command line: thin adapters over the core, search and ilp
//! crates. Results go to standard output as TSV or graph6 lines; progress and
//! errors go to standard error.

use std::fmt::Write as _;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use neumaier_core::constructions::{gamma25, latin_square_graph, LatinSquare};
use neumaier_core::params::full_report;
use neumaier_core::{
    automorphism_group, canonical_form, classify, complement_parameters, decode_graph6,
    encode_graph6, enumerate_admissible, Graph, ParameterSet,
};
use neumaier_ilp::{
    build_model, derive_design_shape, design_files_in, export_model, fixed_edges_from_design,
    load_fixed_edges, partition_fixing, run_campaign, solve_with, Branch, BranchSense,
    CampaignOptions, Design, ExportFormat, IlpModel, SolveOptions, SolveOutcome, Verdict,
};
use neumaier_search::engine::SearchOptions;
use neumaier_search::{
    enumerate_by_degree_sequence, exhaustive_strict_search, lemma51_pipeline, resume_strict_search,
    SearchError, SearchOutcome,
};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONCLUSIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<neumaier_ilp::IlpError> for CliError {
    fn from(e: neumaier_ilp::IlpError) -> Self {
        CliError::Input(e.to_string())
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "neumaier",
    version,
    about = "Tools for strictly Neumaier graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Admissible parameter sets.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Classify graph6 graphs read one per line.
    Verify(InputArgs),
    /// Print a constructed graph.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Canonical form, automorphism group order and vertex orbits of graph6 graphs.
    Canon(InputArgs),
    /// Exhaustive searches.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Write the integer program for one parameter set as LP or MPS.
    EncodeIlp(EncodeArgs),
    /// Solve one integer program with the built-in solver.
    Solve(SolveArgs),
    /// Run every model needed to rule out a parameter set.
    Campaign(CampaignArgs),
}

#[derive(Subcommand, Debug)]
enum ParamsCommand {
    /// All admissible sets with at most VMAX vertices.
    Enumerate {
        #[arg(long)]
        vmax: u32,
    },
    /// Check given sets; `--report` adds one row per failed condition.
    Check {
        /// Parameter sets as v,k,lambda,e,s.
        #[arg(required = true)]
        params: Vec<ParameterSet>,
        #[arg(long)]
        report: bool,
    },
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Read graph6 lines from this file instead of standard input.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GraphFormat {
    /// Print graph6 (the default).
    #[arg(long, conflicts_with = "edges")]
    graph6: bool,
    /// Print one 1-based edge `u w` per line.
    #[arg(long)]
    edges: bool,
}

#[derive(Subcommand, Debug)]
enum ConstructCommand {
    /// The 25-vertex strictly Neumaier graph obtained by switching triangles.
    Gamma25(GraphFormat),
    /// The graph of a Latin square: cells adjacent when they share a row, column or colour.
    Ls {
        #[arg(long)]
        order: usize,
        /// N lines of N space-separated colours 1..N.
        #[arg(long)]
        file: PathBuf,
        #[command(flatten)]
        format: GraphFormat,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// All strictly Neumaier graphs with the given parameters.
    Unique {
        #[arg(long, required_unless_present = "resume")]
        params: Option<ParameterSet>,
        /// Time budget such as `90s` or `2h`.
        #[arg(long, value_parser = humantime::parse_duration)]
        budget: Option<Duration>,
        /// Save the frontier here when the budget runs out.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Continue from a saved frontier.
        #[arg(long, conflicts_with = "params")]
        resume: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Graphs with a degree sequence, one per isomorphism class.
    Degseq {
        /// Comma-separated degrees.
        #[arg(value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
    },
    /// Completions of the four partial neighbourhoods for (25,16,9;3,5).
    Lemma51 {
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sense {
    More,
    Fewer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Lp,
    Mps,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// v,k,lambda,e,s of the graph; the model is for its complement.
    #[arg(long)]
    params: ParameterSet,
    /// Design file: one block per line, 1-based points.
    #[arg(long, conflicts_with_all = ["fixed_edges", "partition"])]
    design: Option<PathBuf>,
    /// Fixed-edge file: one 1-based pair `u w` per line.
    #[arg(long, conflicts_with = "partition")]
    fixed_edges: Option<PathBuf>,
    /// Fix the coclique-pair partition of the exterior vertices.
    #[arg(long)]
    partition: bool,
    /// With `--partition`, also join the vertices inside each group.
    #[arg(long, requires = "partition")]
    group_adjacency: bool,
    /// Edge-regularity branch pair, 1-based `p,q`.
    #[arg(long, value_parser = parse_pair, requires = "sense")]
    branch: Option<(usize, usize)>,
    #[arg(long, value_enum, requires = "branch")]
    sense: Option<Sense>,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "lp")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Time limit such as `30s` or `1h`.
    #[arg(long, value_parser = humantime::parse_duration, default_value = "1h")]
    timeout: Duration,
}

#[derive(Args, Debug)]
struct CampaignArgs {
    #[arg(long)]
    params: ParameterSet,
    /// Directory of design files, one model source per file.
    #[arg(long)]
    designs: Option<PathBuf>,
    /// Fixed-edge file used when no designs are given.
    #[arg(long, conflicts_with = "designs")]
    fixed_edges: Option<PathBuf>,
    /// With partition fixing, also join the vertices inside each group.
    #[arg(long)]
    group_adjacency: bool,
    /// Skip the edge-regularity branch: no strongly regular graph exists
    /// with the complement parameters.
    #[arg(long)]
    assume_no_srg: bool,
    /// Write `.lp` and `.mps` files to this directory instead of solving.
    #[arg(long)]
    export_only: Option<PathBuf>,
    /// Time limit per model.
    #[arg(long, value_parser = humantime::parse_duration, default_value = "1h")]
    timeout: Duration,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => {
            let a: usize = a.parse().map_err(|_| format!("not a vertex: {a:?}"))?;
            let b: usize = b.parse().map_err(|_| format!("not a vertex: {b:?}"))?;
            if a == 0 || b == 0 || a == b {
                return Err("vertices are 1-based and distinct".into());
            }
            Ok((a.min(b), a.max(b)))
        }
        _ => Err(format!("expected p,q, got {text:?}")),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, stdin, out, err) {
        Ok(code) => code,
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn dispatch(
    cmd: Command,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    match cmd {
        Command::Params(c) => params(c, out),
        Command::Verify(a) => {
            for (line, g) in read_graphs(&a, stdin)? {
                let v = classify(&g).map_err(|e| CliError::Input(format!("line {line}: {e}")))?;
                writeln!(out, "{v}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Construct(c) => construct(c, out),
        Command::Canon(a) => {
            writeln!(out, "canonical\tgroup_order\torbits")?;
            for (_, g) in read_graphs(&a, stdin)? {
                writeln!(out, "{}", canon_row(&g))?;
            }
            Ok(EXIT_OK)
        }
        Command::Search(c) => search(c, out, err),
        Command::EncodeIlp(a) => {
            let m = model(&a.model)?;
            let format = match a.format {
                Format::Lp => ExportFormat::Lp,
                Format::Mps => ExportFormat::Mps,
            };
            let text = export_model(&m, format);
            match &a.output {
                Some(path) => std::fs::write(path, text)?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Solve(a) => {
            let m = model(&a.model)?;
            let opts = SolveOptions {
                budget: Some(a.timeout),
                ..SolveOptions::default()
            };
            let report = solve_with(&m, &opts);
            let witness = match &report.outcome {
                SolveOutcome::Feasible(g) => encode_graph6(g),
                _ => "-".into(),
            };
            writeln!(out, "outcome\tnodes\twall_s\twitness")?;
            writeln!(
                out,
                "{}\t{}\t{:.3}\t{}",
                report.outcome.label(),
                report.nodes,
                report.wall_time.as_secs_f64(),
                witness
            )?;
            Ok(match report.outcome {
                SolveOutcome::Timeout => EXIT_INCONCLUSIVE,
                _ => EXIT_OK,
            })
        }
        Command::Campaign(a) => campaign(a, out, err),
    }
}

/// TSV header of `params` output.
pub const PARAMS_HEADER: &str = "v\tk\tlambda\te\ts\tstatus";

/// One `params` row.
pub fn params_row(p: &ParameterSet, status: &str) -> String {
    format!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        p.v, p.k, p.lambda, p.e, p.s, status
    )
}

fn params(cmd: ParamsCommand, out: &mut dyn Write) -> Result<i32, CliError> {
    writeln!(out, "{PARAMS_HEADER}")?;
    match cmd {
        ParamsCommand::Enumerate { vmax } => {
            for p in enumerate_admissible(vmax).map_err(input)? {
                writeln!(out, "{}", params_row(&p, "admissible"))?;
            }
        }
        ParamsCommand::Check { params, report } => {
            for p in &params {
                let r = full_report(p);
                writeln!(
                    out,
                    "{}",
                    params_row(p, if r.passed { "admissible" } else { "rejected" })
                )?;
                if report {
                    for (id, _) in &r.failures {
                        writeln!(out, "{}", params_row(p, id.as_str()))?;
                    }
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn read_graphs(a: &InputArgs, stdin: &mut dyn BufRead) -> Result<Vec<(usize, Graph)>, CliError> {
    let text = match &a.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    let mut graphs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let g = decode_graph6(line).map_err(|e| CliError::Input(format!("line {}: {e}", i + 1)))?;
        graphs.push((i + 1, g));
    }
    Ok(graphs)
}

/// Canonical graph6, automorphism group order and 1-based orbits (`;` between
/// orbits, `,` inside).
pub fn canon_row(g: &Graph) -> String {
    let cert = canonical_form(g, None);
    let group = automorphism_group(g, None);
    let orbits: Vec<String> = group
        .vertex_orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|v| (v + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!(
        "{}\t{}\t{}",
        cert.canonical_string,
        group.order,
        orbits.join(";")
    )
}

/// The graph as graph6 or as 1-based edge lines.
pub fn format_graph(g: &Graph, edges: bool) -> String {
    if edges {
        g.edges().fold(String::new(), |mut s, (u, w)| {
            let _ = writeln!(s, "{} {}", u + 1, w + 1);
            s
        })
    } else {
        format!("{}\n", encode_graph6(g))
    }
}

fn construct(cmd: ConstructCommand, out: &mut dyn Write) -> Result<i32, CliError> {
    let (g, edges) = match cmd {
        ConstructCommand::Gamma25(f) => (gamma25(), f.edges),
        ConstructCommand::Ls {
            order,
            file,
            format,
        } => {
            let square = LatinSquare::parse(&std::fs::read_to_string(&file)?).map_err(input)?;
            if square.order() != order {
                return Err(CliError::Input(format!(
                    "{}: square has order {}, expected {order}",
                    file.display(),
                    square.order()
                )));
            }
            (latin_square_graph(&square).map_err(input)?, format.edges)
        }
    };
    out.write_all(format_graph(&g, edges).as_bytes())?;
    Ok(EXIT_OK)
}

fn search(cmd: SearchCommand, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        SearchCommand::Unique {
            params,
            budget,
            checkpoint,
            resume,
            workers,
        } => {
            let opts = SearchOptions {
                budget,
                workers,
                checkpoint,
            };
            let result = match (&resume, params) {
                (Some(path), _) => resume_strict_search(path, &opts),
                (None, Some(p)) => exhaustive_strict_search(&p, &opts),
                (None, None) => unreachable!("clap requires one of --params and --resume"),
            };
            let (outcome, code) = match result {
                Ok(o) => (o, EXIT_OK),
                Err(SearchError::BudgetExceeded(o)) => {
                    if let Some(path) = &o.checkpoint {
                        writeln!(
                            err,
                            "budget exhausted; frontier saved to {}",
                            path.display()
                        )?;
                    }
                    (*o, EXIT_INCONCLUSIVE)
                }
                Err(e) => return Err(input(e)),
            };
            write_search_outcome(&outcome, out)?;
            Ok(code)
        }
        SearchCommand::Degseq { degrees } => {
            let graphs = enumerate_by_degree_sequence(&degrees).map_err(input)?;
            for g in &graphs {
                writeln!(out, "{}", encode_graph6(g))?;
            }
            let with_k4 = graphs.iter().filter(|g| g.has_clique_of_size(4)).count();
            write!(out, "graphs\t{}\nwith_k4\t{}\n", graphs.len(), with_k4)?;
            Ok(EXIT_OK)
        }
        SearchCommand::Lemma51 { workers } => {
            let report = lemma51_pipeline(workers);
            for g in &report.graphs {
                writeln!(out, "{}", encode_graph6(g))?;
            }
            writeln!(out, "seed\tneighborhoods\tafter_edge_stage\tcompleted")?;
            for s in &report.seeds {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    s.seed, s.neighborhoods, s.after_edge_stage, s.completed
                )?;
            }
            out.write_all(report.stats.to_tsv().as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

fn write_search_outcome(o: &SearchOutcome, out: &mut dyn Write) -> Result<(), CliError> {
    for g in &o.graphs {
        writeln!(out, "{}", encode_graph6(g))?;
    }
    out.write_all(o.stats.to_tsv().as_bytes())?;
    Ok(())
}

fn model(a: &ModelArgs) -> Result<IlpModel, CliError> {
    let cp = complement_parameters(&a.params).map_err(input)?;
    let fixed = if let Some(path) = &a.design {
        let d = Design::load(path, &derive_design_shape(&cp))?;
        fixed_edges_from_design(&d, &cp)?
    } else if let Some(path) = &a.fixed_edges {
        load_fixed_edges(path)?
    } else if a.partition {
        partition_fixing(&cp, a.group_adjacency)?
    } else {
        Vec::new()
    };
    let branch = match (a.branch, a.sense) {
        (Some((p, q)), Some(sense)) => Some(Branch {
            pair: (p - 1, q - 1),
            sense: match sense {
                Sense::More => BranchSense::MoreThanLambda,
                Sense::Fewer => BranchSense::FewerThanLambda,
            },
        }),
        _ => None,
    };
    Ok(build_model(&cp, &fixed, branch, branch.is_some())?)
}

fn campaign(a: CampaignArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let files = match &a.designs {
        Some(dir) => {
            let files = design_files_in(dir)?;
            if files.is_empty() {
                return Err(CliError::Input(format!(
                    "{}: no design files",
                    dir.display()
                )));
            }
            files
        }
        None => Vec::new(),
    };
    let fixed_edges = a.fixed_edges.as_deref().map(load_fixed_edges).transpose()?;
    let opts = CampaignOptions {
        timeout: a.timeout,
        assume_no_srg: a.assume_no_srg,
        group_adjacency: a.group_adjacency,
        fixed_edges,
        export_only: a.export_only.clone(),
        workers: a.workers,
        solver: SolveOptions::default(),
    };
    writeln!(err, "campaign {}: {} design files", a.params, files.len())?;
    let report = run_campaign(&a.params, &files, &opts)?;
    writeln!(
        err,
        "campaign {}: {} runs, verdict {}",
        a.params,
        report.runs.len(),
        report.verdict.as_str()
    )?;
    out.write_all(report.to_tsv().as_bytes())?;
    Ok(match report.verdict {
        _ if a.export_only.is_some() => EXIT_OK,
        Verdict::Nonexistent | Verdict::FoundGraph => EXIT_OK,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}
