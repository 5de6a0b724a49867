use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};

use heffter::io::{ArrayFile, Format};
use heffter::oracle::{search_small, SearchBudget, SearchOutcome};
use heffter::sweep::{all_passed, report_csv, run_sweep, SweepRange};
use heffter::{catalog, construct, verify_full, Error, Mode, Parameters};

const EXIT_INTERNAL: u8 = 1;
const EXIT_NONEXISTENT: u8 = 2;
const EXIT_OPEN: u8 = 3;
const EXIT_VERIFY_FAILED: u8 = 4;
const EXIT_EXHAUSTED: u8 = 5;
const EXIT_BUDGET: u8 = 6;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "heffter", version, about = "Build and check integer relative Heffter arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Tuple {
    #[arg(long)]
    m: u64,
    #[arg(long)]
    n: u64,
    #[arg(long)]
    s: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    t: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Integer,
    Simple,
}

#[derive(Subcommand)]
enum Command {
    /// Construct and verify one array.
    Construct {
        #[command(flatten)]
        tuple: Tuple,
        /// Output file; stdout if omitted.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Defaults to the output file's extension, else JSON.
        #[arg(long)]
        format: Option<FormatArg>,
    },
    /// Construct and verify every admissible tuple in a range.
    Sweep {
        /// Range as `lo:hi` or a single value.
        #[arg(long, default_value = "4:12", value_parser = parse_range)]
        m: (u64, u64),
        #[arg(long, default_value = "4:12", value_parser = parse_range)]
        n: (u64, u64),
        #[arg(long, default_value = "4:8", value_parser = parse_range)]
        s: (u64, u64),
        #[arg(long, default_value = "4:8", value_parser = parse_range)]
        k: (u64, u64),
        /// CSV report path; stdout if omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Write 0 in the millis column so reports are reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Worker threads; 1 gives a deterministic single-worker run.
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Verify an array file.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "integer")]
        mode: ModeArg,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Backtracking search for a small array.
    Search {
        #[command(flatten)]
        tuple: Tuple,
        #[arg(long, default_value_t = 50_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 60)]
        max_seconds: u64,
        /// Disable fixing the largest value positive at (1, 1).
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// List catalog blocks, or check them against their declared identities.
    Catalog {
        #[arg(long)]
        self_test: bool,
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
    match s.split_once(':') {
        Some((lo, hi)) => {
            let (lo, hi) = (parse(lo)?, parse(hi)?);
            if lo > hi {
                return Err(format!("empty range {s}"));
            }
            Ok((lo, hi))
        }
        None => parse(s).map(|v| (v, v)),
    }
}

fn params(t: &Tuple) -> Result<Parameters, ExitCode> {
    Parameters::derive(t.m, t.n, t.s, t.k, t.t).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    })
}

fn emit(file: &ArrayFile, out: Option<&PathBuf>, format: Option<FormatArg>) -> Result<(), ExitCode> {
    let format = match (format, out) {
        (Some(FormatArg::Json), _) => Format::Json,
        (Some(FormatArg::Csv), _) => Format::Csv,
        (None, Some(p)) => Format::from_path(p),
        (None, None) => Format::Json,
    };
    let text = file.encode(format);
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(EXIT_INTERNAL)
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_construct(tuple: &Tuple, out: Option<&PathBuf>, format: Option<FormatArg>) -> Result<ExitCode, ExitCode> {
    let p = params(tuple)?;
    match construct(&p) {
        Ok(c) => {
            emit(&ArrayFile::new(p, c.trace.clone(), c.array), out, format)?;
            eprintln!("{p}: verified ({})", c.trace.join(", "));
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NonExistent(_) => EXIT_NONEXISTENT,
                Error::OpenCase { .. } => EXIT_OPEN,
                Error::PreconditionViolated(_) => EXIT_USAGE,
                Error::VerificationFailed(report) => {
                    eprintln!("{report}");
                    EXIT_INTERNAL
                }
                _ => EXIT_INTERNAL,
            };
            Err(ExitCode::from(code))
        }
    }
}

fn cmd_sweep(
    m: (u64, u64),
    n: (u64, u64),
    s: (u64, u64),
    k: (u64, u64),
    report: Option<&PathBuf>,
    timing: bool,
    threads: Option<usize>,
) -> Result<ExitCode, ExitCode> {
    let range = SweepRange { m: m.0..=m.1, n: n.0..=n.1, s: s.0..=s.1, k: k.0..=k.1 };
    let rows = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_INTERNAL)
            })?
            .install(|| run_sweep(&range)),
        None => run_sweep(&range),
    };
    let csv = report_csv(&rows, timing);
    match report {
        Some(p) => std::fs::write(p, csv).map_err(|e| {
            eprintln!("error: cannot write {}: {e}", p.display());
            ExitCode::from(EXIT_INTERNAL)
        })?,
        None => print!("{csv}"),
    }
    let failed = rows.iter().filter(|r| r.outcome.label() == "fail").count();
    eprintln!("{} tuples, {failed} failed", rows.len());
    Ok(if all_passed(&rows) { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INTERNAL) })
}

fn cmd_verify(path: &Path, mode: ModeArg, json: bool) -> Result<ExitCode, ExitCode> {
    let file = ArrayFile::read(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_USAGE)
    })?;
    let mode = match mode {
        ModeArg::Integer => Mode::Integer,
        ModeArg::Simple => Mode::Simple,
    };
    let report = verify_full(&file.array, &file.params, mode);
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        println!("{}", report.to_string().trim_end());
    }
    Ok(if report.overall { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VERIFY_FAILED) })
}

fn cmd_search(tuple: &Tuple, budget: SearchBudget, out: Option<&PathBuf>) -> Result<ExitCode, ExitCode> {
    let p = params(tuple)?;
    let (outcome, stats) = search_small(&p, budget);
    eprintln!("{p}: {} nodes in {:.3}s", stats.nodes, stats.elapsed.as_secs_f64());
    match outcome {
        SearchOutcome::Found(a) => {
            emit(&ArrayFile::new(p, vec!["search".into()], a), out, None)?;
            Ok(ExitCode::SUCCESS)
        }
        SearchOutcome::Exhausted => {
            eprintln!("no array exists");
            Ok(ExitCode::from(EXIT_EXHAUSTED))
        }
        SearchOutcome::BudgetExceeded => {
            eprintln!("budget exceeded");
            Ok(ExitCode::from(EXIT_BUDGET))
        }
    }
}

fn cmd_catalog(self_test: bool) -> ExitCode {
    if self_test {
        let defects = catalog::self_test_catalog();
        for d in &defects {
            println!("{d}");
        }
        println!("{} entries, {} defects", catalog::entries().len(), defects.len());
        return if defects.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_INTERNAL) };
    }
    for e in catalog::entries() {
        println!("{}\t{}\t{}\t{}", e.name(), e.family(), e.contract().name(), e.width());
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Construct { tuple, out, format } => cmd_construct(tuple, out.as_ref(), *format),
        Command::Sweep { m, n, s, k, report, no_timing, threads } => {
            cmd_sweep(*m, *n, *s, *k, report.as_ref(), !no_timing, *threads)
        }
        Command::Verify { path, mode, json } => cmd_verify(path, *mode, *json),
        Command::Search { tuple, max_nodes, max_seconds, no_symmetry, out } => {
            let budget = SearchBudget {
                max_nodes: *max_nodes,
                max_time: Duration::from_secs(*max_seconds),
                fix_sign: !no_symmetry,
                fix_position: !no_symmetry,
            };
            cmd_search(tuple, budget, out.as_ref())
        }
        Command::Catalog { self_test } => Ok(cmd_catalog(*self_test)),
    };
    result.unwrap_or_else(|code| code)
}
