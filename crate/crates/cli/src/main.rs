//! `mpacm`: decide and explain the ACM property of point configurations in
//! products of projective spaces.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 invalid configuration or
//! failed verification, 4 undecidable.

mod commands;
mod config_file;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mpacm::acm::{AcmOptions, DEFAULT_TRIALS};
use mpacm::algebra::{Field, PrimeField, Rationals, DEFAULT_PRIME};
use mpacm::lab::{self, GenSpec, Pattern, DEFAULT_MAX_POINTS, DEFAULT_SEED};
use mpacm::{ConfigError, Configuration};

use commands::{CmdError, IdealFlags, Outcome, EXIT_OK};
use config_file::ConfigFile;
use report::Report;

/// Environment variable holding the default prime.
const PRIME_ENV: &str = "MPACM_PRIME";

#[derive(Parser, Debug)]
#[command(name = "mpacm", version, about = "ACM property of points in multiprojective space")]
struct Cli {
    /// Field characteristic; overrides the file and $MPACM_PRIME.
    #[arg(long, global = true)]
    prime: Option<u32>,
    #[arg(long, global = true, value_enum, default_value_t = FieldKind::Prime)]
    field: FieldKind,
    /// Random seed; overrides the file.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FieldKind {
    Prime,
    Rational,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Combinatorial structure: level sets, star and inclusion properties, A/B split.
    Check { file: PathBuf },
    /// The ideal of the points: Gröbner basis, Hilbert function, minimal generators.
    Ideal {
        file: PathBuf,
        #[arg(long)]
        groebner: bool,
        /// One degree per factor; several multidegrees may follow in sequence.
        #[arg(long, num_args = 1.., value_name = "DEGREE")]
        hilbert: Vec<u32>,
        #[arg(long)]
        min_gens: bool,
    },
    /// Decide the ACM property.
    Acm {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Accept a combinatorial criterion without algebraic confirmation.
        #[arg(long)]
        trust_theorems: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 20)]
        cases: usize,
    },
    /// Search for counterexamples to a conjecture.
    Scan {
        conjecture: String,
        #[arg(long, default_value_t = 30)]
        budget: usize,
    },
    /// Write a random configuration file.
    Generate(GenerateArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PatternKind {
    Random,
    Star,
    Inclusion,
    Ab,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// Factor dimensions.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2])]
    dims: Vec<usize>,
    #[arg(long, value_enum, default_value_t = PatternKind::Random)]
    pattern: PatternKind,
    /// Number of points for the random pattern.
    #[arg(long, default_value_t = 6)]
    points: usize,
    /// Row lengths of a star configuration.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<usize>>,
    /// Level sets over the first factor.
    #[arg(long, default_value_t = 2)]
    levels: usize,
    /// Columns outside the common part.
    #[arg(long, default_value_t = 2)]
    n0: usize,
    /// Columns common to every row.
    #[arg(long, default_value_t = 0)]
    n1: usize,
    /// Allow A-columns to be shared by several rows.
    #[arg(long)]
    intersect: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_POINTS)]
    max_points: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn env_prime() -> Result<Option<u32>, CmdError> {
    match std::env::var(PRIME_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CmdError::usage(format!("{PRIME_ENV}={v} is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Flag, then file, then environment, then the built-in default.
fn resolve_prime(flag: Option<u32>, file: Option<u32>) -> Result<u32, CmdError> {
    Ok(match (flag, file) {
        (Some(p), _) | (None, Some(p)) => p,
        (None, None) => env_prime()?.unwrap_or(DEFAULT_PRIME),
    })
}

fn prime_field(p: u32) -> Result<PrimeField, CmdError> {
    PrimeField::new(p).map_err(|e| CmdError::usage(e.to_string()))
}

enum FileCommand<'a> {
    Check,
    Ideal(IdealFlags<'a>),
    Acm { trials: usize, trust_theorems: bool },
}

fn run_on<F: Field>(
    cmd: &FileCommand,
    file: &ConfigFile,
    field: &F,
    field_name: &str,
    seed: u64,
) -> Result<Outcome, CmdError> {
    let x: Configuration<F> = file.realize(field)?;
    match cmd {
        FileCommand::Check => commands::check(&x, field_name, seed),
        FileCommand::Ideal(flags) => commands::ideal(&x, field_name, flags),
        FileCommand::Acm { trials, trust_theorems } => {
            let opts = AcmOptions {
                trials: *trials,
                seed,
                trust_theorems: *trust_theorems,
            };
            commands::decide(&x, field_name, &opts)
        }
    }
}

fn run_file(cli: &Cli, path: &Path, cmd: FileCommand) -> Result<Outcome, CmdError> {
    let file = ConfigFile::read(path)?;
    let seed = cli.seed.or(file.seed).unwrap_or(DEFAULT_SEED);
    match cli.field {
        FieldKind::Prime => {
            let p = resolve_prime(cli.prime, file.prime)?;
            run_on(&cmd, &file, &prime_field(p)?, &format!("gf({p})"), seed)
        }
        FieldKind::Rational => run_on(&cmd, &file, &Rationals::default(), "rational", seed),
    }
}

fn generate(cli: &Cli, args: &GenerateArgs) -> Result<Outcome, CmdError> {
    let pattern = match args.pattern {
        PatternKind::Random => Pattern::Random { points: args.points },
        PatternKind::Star => Pattern::Star {
            lambda: args.lambda.clone(),
        },
        PatternKind::Inclusion => Pattern::Inclusion { levels: args.levels },
        PatternKind::Ab => Pattern::Ab {
            n0: args.n0,
            n1: args.n1,
            levels: args.levels,
            intersect_allowed: args.intersect,
        },
    };
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    let spec = GenSpec::new(&args.dims, pattern, seed).with_max_points(args.max_points);
    let ic = lab::generate(&spec).map_err(|e| match e {
        ConfigError::RetryExhausted { .. } => CmdError::from(e),
        other => CmdError::usage(other.to_string()),
    })?;
    let mut file = ConfigFile::from_int_config(&ic);
    file.seed = Some(seed);
    file.prime = cli.prime;
    if cli.field == FieldKind::Prime {
        let p = resolve_prime(cli.prime, None)?;
        file.realize(&prime_field(p)?)?;
    }
    let text = file.to_toml();
    let mut r = Report::new();
    r.human(format!(
        "{} pattern in {} with {} points",
        args.pattern.to_possible_value().expect("no skipped variants").get_name(),
        args.dims.iter().map(|a| format!("P^{a}")).collect::<Vec<_>>().join(" x "),
        ic.len()
    ));
    match &args.out {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CmdError::usage(format!("{}: {e}", path.display())))?;
            r.field("out", path.display());
            r.field("points", ic.len());
            r.field("seed", seed);
            Ok(r.into())
        }
        None => {
            print!("{r}{text}");
            Ok(Outcome {
                report: Report::new(),
                code: EXIT_OK,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, CmdError> {
    let seed = cli.seed.unwrap_or(DEFAULT_SEED);
    match &cli.command {
        Command::Check { file } => run_file(cli, file, FileCommand::Check),
        Command::Ideal {
            file,
            groebner,
            hilbert,
            min_gens,
        } => run_file(
            cli,
            file,
            FileCommand::Ideal(IdealFlags {
                groebner: *groebner,
                hilbert,
                min_gens: *min_gens,
            }),
        ),
        Command::Acm {
            file,
            trials,
            trust_theorems,
        } => {
            if *trials == 0 {
                return Err(CmdError::usage("--trials must be positive"));
            }
            run_file(
                cli,
                file,
                FileCommand::Acm {
                    trials: *trials,
                    trust_theorems: *trust_theorems,
                },
            )
        }
        Command::Verify { suite, cases } => commands::verify(suite, *cases, seed),
        Command::Scan { conjecture, budget } => commands::scan(conjecture, *budget, seed),
        Command::Generate(args) => generate(cli, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.report);
            let _ = std::io::stdout().flush();
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn prime_precedence() {
        assert_eq!(resolve_prime(Some(7), Some(11)).unwrap(), 7);
        assert_eq!(resolve_prime(None, Some(11)).unwrap(), 11);
    }

    #[test]
    fn hilbert_degrees_accumulate() {
        let cli = Cli::try_parse_from(["mpacm", "ideal", "f.toml", "--hilbert", "5", "5", "--hilbert", "1", "0"]).unwrap();
        match cli.command {
            Command::Ideal { hilbert, .. } => assert_eq!(hilbert, vec![5, 5, 1, 0]),
            other => panic!("{other:?}"),
        }
    }
}
