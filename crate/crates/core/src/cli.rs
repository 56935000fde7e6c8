//! Command-line front end. [`run`] returns the exit code so tests can drive
//! it without spawning a process.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::completion::{describe_forbidden, shortest_path_complete, MagicCompleter};
use crate::error::{Error, Result};
use crate::obstacles::{enumerate_uncompletable_cycles, extract_obstacle, format_catalogue};
use crate::oracle::suite::format_reports;
use crate::oracle::{fork_table, run_verification_suite_with_jobs, Scope};
use crate::params::{
    classify_admissible, enumerate_admissible, format_set, select_magic_parameter, ParameterTuple,
};
use crate::space::{parse_graph, serialize_graph, LabelledCycle, LabelledGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "magic-complete",
    version,
    about = "Complete partial metric graphs into 3-constrained classes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect parameter tuples.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Tabulate how every fork can be completed.
    Forks(MagicArgs),
    /// Run the magic completion on a graph.
    Complete(CompleteArgs),
    /// Run the shortest-path completion on a graph.
    ShortestPath {
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        file: PathBuf,
    },
    /// Catalogue uncompletable cycles.
    #[command(subcommand)]
    Obstacles(ObstaclesCommand),
    /// Run the property sweeps.
    Verify(VerifyArgs),
}

#[derive(Debug, Subcommand)]
enum ParamsCommand {
    /// List admissible tuples for one diameter.
    List {
        #[arg(long)]
        delta: u32,
    },
    /// Report whether a tuple is admissible and in which case.
    Check {
        #[arg(num_args = 5, value_names = ["DELTA", "K1", "K2", "C0", "C1"])]
        values: Vec<u32>,
    },
}

#[derive(Debug, Args)]
struct MagicArgs {
    #[arg(long, num_args = 5, value_names = ["DELTA", "K1", "K2", "C0", "C1"], required = true)]
    params: Vec<u32>,
    #[arg(long)]
    magic: Option<u32>,
}

#[derive(Debug, Args)]
struct CompleteArgs {
    #[command(flatten)]
    magic: MagicArgs,
    #[arg(long, conflicts_with = "cycle", required_unless_present = "cycle")]
    file: Option<PathBuf>,
    /// Space-separated cycle labels, e.g. "1 1 5 5 5".
    #[arg(long)]
    cycle: Option<String>,
    #[arg(long)]
    trace: bool,
    #[arg(long)]
    obstacle: bool,
}

#[derive(Debug, Subcommand)]
enum ObstaclesCommand {
    /// All canonical uncompletable cycles of one length.
    Enumerate {
        #[command(flatten)]
        magic: MagicArgs,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    magic: MagicArgs,
    #[arg(long, conflicts_with_all = ["random", "seed"], required_unless_present = "random")]
    exhaustive: Option<usize>,
    #[arg(long, requires = "seed")]
    random: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl MagicArgs {
    fn resolve(&self) -> Result<(ParameterTuple, u32)> {
        let p = ParameterTuple::from_slice(&self.params)?;
        let choice = select_magic_parameter(&p, self.magic)?;
        Ok((p, choice.selected))
    }
}

fn read_graph(path: &PathBuf) -> Result<LabelledGraph> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text)
}

/// Parses `args` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut text = String::new();
    let code = match dispatch(cli.command, &mut text) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn dispatch(command: Command, out: &mut String) -> Result<i32> {
    match command {
        Command::Params(ParamsCommand::List { delta }) => {
            for entry in enumerate_admissible(delta)? {
                writeln!(out, "{entry}").expect("writing to a String");
            }
            Ok(EXIT_OK)
        }
        Command::Params(ParamsCommand::Check { values }) => {
            let p = ParameterTuple::from_slice(&values)?;
            let verdict = classify_admissible(&p)?;
            match verdict.case {
                Some(case) => {
                    let choice = select_magic_parameter(&p, None)?;
                    writeln!(
                        out,
                        "{p} admissible case={case} magic={} eligible={} default={}",
                        format_set(&choice.magic_set),
                        format_set(&choice.eligible),
                        choice.selected
                    )
                    .expect("writing to a String");
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "{p} not admissible").expect("writing to a String");
                    for clause in &verdict.failed_clauses {
                        writeln!(out, "failed {clause}").expect("writing to a String");
                    }
                    Ok(EXIT_FAILED)
                }
            }
        }
        Command::Forks(args) => {
            let (p, m) = args.resolve()?;
            writeln!(out, "magic M={m} params {p}").expect("writing to a String");
            for cell in fork_table(&p, m)? {
                writeln!(out, "{cell}").expect("writing to a String");
            }
            Ok(EXIT_OK)
        }
        Command::Complete(args) => complete(args, out),
        Command::ShortestPath { delta, file } => {
            let g = read_graph(&file)?;
            out.push_str(&serialize_graph(&shortest_path_complete(delta, &g)?));
            Ok(EXIT_OK)
        }
        Command::Obstacles(ObstaclesCommand::Enumerate {
            magic,
            length,
            jobs,
        }) => {
            let (p, m) = magic.resolve()?;
            let cycles = with_jobs(jobs, || enumerate_uncompletable_cycles(&p, m, length))??;
            out.push_str(&format_catalogue(&p, length, &cycles));
            Ok(EXIT_OK)
        }
        Command::Verify(args) => {
            let (p, m) = args.magic.resolve()?;
            let scope = match (args.exhaustive, args.random, args.seed) {
                (Some(n), None, _) => Scope::Exhaustive(n),
                (None, Some(count), Some(seed)) => Scope::Randomized { count, seed },
                _ => {
                    return Err(Error::Usage(
                        "give --exhaustive N or --random COUNT --seed S".into(),
                    ))
                }
            };
            writeln!(out, "verify params {p} M={m} {scope}").expect("writing to a String");
            let reports = run_verification_suite_with_jobs(&p, m, scope, args.jobs)?;
            out.push_str(&format_reports(&reports));
            Ok(if reports.iter().all(|r| r.passed()) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
    }
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {jobs} worker threads: {e}")))?;
    Ok(pool.install(f))
}

fn complete(args: CompleteArgs, out: &mut String) -> Result<i32> {
    let (p, m) = args.magic.resolve()?;
    let g = match (&args.file, &args.cycle) {
        (Some(path), None) => read_graph(path)?,
        (None, Some(labels)) => LabelledCycle::parse(labels)?.to_graph(p.delta)?,
        _ => {
            return Err(Error::Usage(
                "give exactly one of --file and --cycle".into(),
            ))
        }
    };
    let outcome = MagicCompleter::new(&p, m)?.complete(&g)?;
    if args.trace {
        write!(out, "{}", outcome.trace).expect("writing to a String");
    } else {
        writeln!(out, "{}", outcome.trace.header()).expect("writing to a String");
    }
    out.push_str(&serialize_graph(&outcome.completed));
    if outcome.verdict.is_completable() {
        out.push_str("verdict completable\n");
        return Ok(EXIT_OK);
    }
    out.push_str("verdict uncompletable\n");
    out.push_str(&describe_forbidden(&outcome));
    if args.obstacle {
        let obstacle = extract_obstacle(&outcome)?;
        let hom: Vec<String> = obstacle.hom.iter().map(usize::to_string).collect();
        writeln!(out, "obstacle {}", obstacle.cycle).expect("writing to a String");
        writeln!(out, "hom {}", hom.join(" ")).expect("writing to a String");
    }
    Ok(EXIT_FAILED)
}
