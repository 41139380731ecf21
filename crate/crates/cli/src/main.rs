//! `degseq` command-line tool.

mod commands;
mod output;

use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use degseq::filters::{CompositeOptions, HeadsplitVariant};
use degseq::Algorithm;
use serde_json::json;

use commands::{CliError, Method, Metric};
use output::{Emitted, Format, Rows};

#[derive(Parser)]
#[command(
    version,
    about = "Test, realize and count degree sequences of simple graphs"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct SequenceArgs {
    /// Comma-separated degrees, largest first
    #[arg(long, allow_hyphen_values = true)]
    sequence: String,

    /// Sort the input into non-increasing order before validating it
    #[arg(long)]
    sort: bool,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Worker threads (defaults to the number of available cores)
    #[arg(long, env = "DEGSEQ_THREADS")]
    threads: Option<usize>,

    /// Allow enumeration beyond the default size budget
    #[arg(long)]
    budget_override: bool,
}

impl RunArgs {
    fn threads(&self) -> usize {
        self.threads
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Headsplit {
    Sound,
    SoundTight,
    AsPrinted,
}

impl From<Headsplit> for HeadsplitVariant {
    fn from(h: Headsplit) -> Self {
        match h {
            Headsplit::Sound => HeadsplitVariant::Sound,
            Headsplit::SoundTight => HeadsplitVariant::SoundTight,
            Headsplit::AsPrinted => HeadsplitVariant::AsPrinted,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a sequence is graphical
    Test {
        #[command(flatten)]
        seq: SequenceArgs,
        /// HHSo, HHSh, HHP, EG, EGSh, EGJ, EGL, or a filter: composite,
        /// parity, binomial, positive, headsplitter
        #[arg(long, default_value = "EGL")]
        algorithm: String,
        /// Head-splitting bound used by the filters
        #[arg(long, value_enum, default_value_t = Headsplit::Sound)]
        headsplit: Headsplit,
    },
    /// Build a graph with the given degree sequence
    Realize {
        #[command(flatten)]
        seq: SequenceArgs,
    },
    /// Exact counts for n = 1..=max-n
    Table {
        #[arg(long)]
        max_n: usize,
        /// Any of R, E, Ez, Bz, Fz, Gz, G, ratios
        #[arg(long, default_value = "R,E,ratios")]
        columns: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Distribution of graphical sequences by b_1, or of even non-graphical
    /// sequences by jumping-tester rounds
    Histogram {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        metric: Metric,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Count the graphical n-sequences by exhaustive enumeration
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "EGL")]
        algorithm: String,
        /// Append finished slices to this file and skip those already in it
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Count zerofree even n-sequences accepted by each filter
    FilterCensus {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Headsplit::Sound)]
        headsplit: Headsplit,
        /// Include the b_1 <= p - 1 check in the composite filter
        #[arg(long)]
        positive_check: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Test { .. } => "test",
            Command::Realize { .. } => "realize",
            Command::Table { .. } => "table",
            Command::Histogram { .. } => "histogram",
            Command::Count { .. } => "count",
            Command::FilterCensus { .. } => "filter-census",
        }
    }
}

fn run(command: Command) -> Result<Emitted, CliError> {
    match command {
        Command::Test {
            seq,
            algorithm,
            headsplit,
        } => {
            let method: Method = algorithm.parse()?;
            let s = commands::parse_sequence(&seq.sequence, seq.sort)?;
            Ok(commands::test(&s, method, headsplit.into()))
        }
        Command::Realize { seq } => {
            let s = commands::parse_sequence(&seq.sequence, seq.sort)?;
            Ok(commands::realize_cmd(&s))
        }
        Command::Table {
            max_n,
            columns,
            run,
        } => {
            let cols = commands::parse_columns(&columns)?;
            commands::table(max_n, &cols, run.threads(), run.budget_override)
        }
        Command::Histogram { n, metric, run } => {
            commands::histogram(n, metric, run.threads(), run.budget_override)
        }
        Command::Count {
            n,
            algorithm,
            checkpoint,
            run,
        } => {
            let alg: Algorithm = algorithm.parse()?;
            commands::count(n, alg, run.threads(), checkpoint, run.budget_override)
        }
        Command::FilterCensus {
            n,
            headsplit,
            positive_check,
            run,
        } => {
            let options = CompositeOptions {
                headsplit: headsplit.into(),
                positive_check,
            };
            commands::filter_census(n, options, run.threads(), run.budget_override)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let emitted = match run(cli.command) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {err}");
            let mut rows = Rows::new(["error", "message"]);
            rows.push(vec![err.kind().into(), err.to_string()]);
            Emitted {
                command: name,
                payload: json!({ "error": err.kind(), "message": err.to_string() }),
                rows,
                exit: err.exit_code(),
            }
        }
    };
    if let Err(e) = output::write(&mut io::stdout().lock(), &emitted, cli.format) {
        eprintln!("error: {e}");
        return ExitCode::from(3);
    }
    ExitCode::from(emitted.exit as u8)
}
