use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cyws::classify::Flags;
use cyws_cli::commands::{cmd_brute, cmd_check, cmd_classify, cmd_pairing, cmd_stats, BruteArgs, CheckKind, ClassifyArgs};
use cyws_cli::format::Format;
use cyws_cli::CliError;

/// Weight systems with interior-point Newton polyhedra.
#[derive(Parser)]
#[command(name = "cyws", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all IP weight systems with the given number of weights
    Classify {
        #[arg(long)]
        nweights: usize,
        /// Comma separated: span, transverse, reflexive, all
        #[arg(long, default_value = "")]
        flags: Flags,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Continue an interrupted run from its run directory
        #[arg(long)]
        resume: bool,
        /// Checkpoint directory; defaults to the output path with extension `.run`
        #[arg(long)]
        run_dir: Option<PathBuf>,
        /// Cross-check every interior point decision against the hull oracle
        #[arg(long)]
        verify: bool,
        #[arg(long, hide = true)]
        stop_after_branches: Option<usize>,
    },
    /// Test every weight system up to a maximal degree
    Brute {
        #[arg(long)]
        nweights: usize,
        #[arg(long)]
        dmax: i64,
        #[arg(long, default_value = "")]
        flags: Flags,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Report flags of one weight system given as "n_1 ... n_l d"
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        system: String,
    },
    /// Print vertices, facets and the vertex pairing matrix
    Pairing { system: String },
    /// Tabulate a JSONL record file by transversality, half weight and span
    Stats { input: PathBuf },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    match cli.command {
        Command::Classify {
            nweights,
            flags,
            jobs,
            out,
            format,
            resume,
            run_dir,
            verify,
            stop_after_branches,
        } => {
            let args = ClassifyArgs {
                nweights,
                flags,
                jobs,
                out,
                format,
                resume,
                run_dir,
                verify,
                stop_after_branches,
            };
            cmd_classify(&args, &mut stdout, &mut stderr)
        }
        Command::Brute {
            nweights,
            dmax,
            flags,
            jobs,
            out,
            format,
        } => {
            let args = BruteArgs {
                nweights,
                dmax,
                flags,
                jobs,
                out,
                format,
            };
            cmd_brute(&args, &mut stdout, &mut stderr)
        }
        Command::Check { kind, system } => cmd_check(kind, &system, &mut stdout),
        Command::Pairing { system } => cmd_pairing(&system, &mut stdout),
        Command::Stats { input } => cmd_stats(&input, &mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
