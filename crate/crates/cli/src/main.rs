use autorbit::{
    cmd_analyze, cmd_count, cmd_minimize, cmd_verify, parse_ell_list, parse_rank_list,
    parse_threads, CliError, Format, Outcome, SuiteId, SuiteParams,
};
use autorbit_core::SearchLimits;
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "autorbit",
    version,
    about = "Minimum-length words in free-group automorphism orbits: minimize, count, analyze, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Free-group rank; inferred from the word text when omitted
    #[arg(long)]
    rank: Option<usize>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on distinct words collected during a search
    #[arg(long, default_value_t = 10_000_000)]
    max_members: usize,
    /// Cap on words waiting for expansion during a search
    #[arg(long, default_value_t = 1_000_000)]
    max_frontier: usize,
}

impl Common {
    fn limits(&self) -> SearchLimits {
        SearchLimits::new(self.max_members, self.max_frontier)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Shorten a cyclic word to the minimum length in its orbit
    Minimize {
        /// Word in the form "x1^2 x2^-3 x1"
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Count the minimum-length words in a word's orbit
    Count {
        /// Word in the form "x1^2 x2^-3 x1"
        word: String,
        #[command(flatten)]
        common: Common,
        /// Write the sorted minimum-length words to a file
        #[arg(long, value_name = "FILE")]
        dump: Option<PathBuf>,
    },
    /// Dependence structure and syllable profile of a minimal word
    Analyze {
        /// Word in the form "x1^2 x2^-3 x1"
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite and report each checked row
    Verify {
        /// Suite to run
        #[arg(value_enum)]
        suite: SuiteId,
        #[command(flatten)]
        common: Common,
        /// Tail exponents: an inclusive range "3..10" or a list "3,5,9"
        #[arg(long)]
        ell: Option<String>,
        /// Ranks for the lower-bound suite, as a list "2,3"
        #[arg(long)]
        n: Option<String>,
        /// Worker threads: a count or "auto"
        #[arg(long, default_value = "auto")]
        threads: String,
    },
}

fn dispatch(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Minimize { word, common } => cmd_minimize(&word, common.rank, common.format),
        Command::Count { word, common, dump } => cmd_count(
            &word,
            common.rank,
            common.limits(),
            common.format,
            dump.as_deref(),
        ),
        Command::Analyze { word, common } => {
            cmd_analyze(&word, common.rank, common.limits(), common.format)
        }
        Command::Verify {
            suite,
            common,
            ell,
            n,
            threads,
        } => {
            let params = SuiteParams {
                ell: ell.as_deref().map(parse_ell_list).transpose()?,
                n: n.as_deref().map(parse_rank_list).transpose()?,
            };
            cmd_verify(
                suite,
                &params,
                common.limits(),
                parse_threads(&threads)?,
                common.format,
            )
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(outcome) => {
            // Tolerate a closed pipe (e.g. piping into head) instead of
            // panicking; the exit code still reflects the computation.
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            if !outcome.stdout.ends_with('\n') && !outcome.stdout.is_empty() {
                let _ = stdout.write_all(b"\n");
            }
            let _ = stdout.flush();
            std::process::exit(outcome.code);
        }
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(error.exit_code());
        }
    }
}
