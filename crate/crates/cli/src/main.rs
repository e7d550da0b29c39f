//! Command-line front end: compute the invariant (in any of its three
//! formulations), the traces, or run the randomized verification suites.
//!
//! Exit codes: 0 success; 1 a verification suite reported failures;
//! 2 unparsable word or bad arguments; 3 state cap exceeded.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pseudo_homfly::braid::PseudoWord;
use pseudo_homfly::coeff::ExtScalar;
use pseudo_homfly::invariant::{
    classical_h, induced_trace, invariant_p, skein_evaluate, state_sum_p, InvariantError,
    DEFAULT_STATE_CAP,
};
use pseudo_homfly::verify::{run_suite, Suite, SuiteConfig};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_BAD_INPUT: u8 = 2;
const EXIT_STATE_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pseudo-homfly",
    version,
    about = "Exact invariants of pseudo links presented as braid words",
    after_help = "Word grammar: whitespace-separated tokens; a nonzero integer k \
                  stands for the crossing s_|k| (inverse when k < 0), and pK for \
                  the pseudo generator p_K. Example: \"1 -2 p1\"."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct WordArgs {
    /// Braid word, e.g. "1 -2 p1"
    #[arg(long, allow_hyphen_values = true)]
    word: String,
    /// Strand count; default is 1 + the largest index in the word
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// The invariant of the word's closure (direct algebraic pipeline)
    Compute(WordArgs),
    /// The induced trace of the word (no closure normalization)
    Trace(WordArgs),
    /// The normalized classical value; the word must have no pseudo letters
    Homfly(WordArgs),
    /// The invariant via the sum over all classical resolutions
    Statesum {
        #[command(flatten)]
        word: WordArgs,
        /// Abort when the word needs more than this many states
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: u64,
    },
    /// The invariant via recursive skein resolution
    SkeinEval(WordArgs),
    /// Re-verify invariance properties on seeded random words
    Verify {
        /// markov | rho | trace-props | statesum | pseudo-skein | classical-skein | all
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        max_strands: usize,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_pseudo: usize,
        #[arg(long, default_value_t = DEFAULT_STATE_CAP)]
        state_cap: u64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Compute(args) => value_command(&args, |w| Ok(invariant_p(w))),
        Command::Trace(args) => value_command(&args, |w| Ok(induced_trace(w))),
        Command::Homfly(args) => value_command(&args, classical_h),
        Command::Statesum { word, state_cap } => {
            value_command(&word, |w| state_sum_p(w, state_cap))
        }
        Command::SkeinEval(args) => value_command(&args, |w| Ok(skein_evaluate(w))),
        Command::Verify {
            suite,
            seed,
            trials,
            max_strands,
            max_len,
            max_pseudo,
            state_cap,
            format,
        } => {
            let suite: Suite = match suite.parse() {
                Ok(s) => s,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(EXIT_BAD_INPUT);
                }
            };
            let cfg = SuiteConfig {
                seed,
                trials,
                max_strands,
                max_len,
                max_pseudo,
                state_cap,
            };
            verify_command(suite, &cfg, format)
        }
    }
}

fn value_command(
    args: &WordArgs,
    compute: impl FnOnce(&PseudoWord) -> Result<ExtScalar, InvariantError>,
) -> ExitCode {
    let word = match PseudoWord::parse(&args.word, args.strands) {
        Ok(w) => w,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_BAD_INPUT);
        }
    };
    match compute(&word) {
        Ok(value) => {
            match args.format {
                Format::Text => println!("{value}"),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string(&value).expect("scalars serialize")
                ),
            }
            ExitCode::SUCCESS
        }
        Err(err @ InvariantError::StateBudgetExceeded { .. }) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_STATE_CAP)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_BAD_INPUT)
        }
    }
}

fn verify_command(suite: Suite, cfg: &SuiteConfig, format: Format) -> ExitCode {
    let reports = run_suite(suite, cfg);
    let all_passed = reports.iter().all(|r| r.passed());
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&reports).expect("reports serialize")
        ),
        Format::Text => {
            for r in &reports {
                println!(
                    "{}: {} instances, {} failures ({} ms)",
                    r.check,
                    r.instances,
                    r.failures.len(),
                    r.elapsed_ms
                );
                for f in &r.failures {
                    println!("  seed {} word \"{}\": {}", f.seed, f.word, f.step);
                }
            }
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAILED)
    }
}
