use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use loctwist::app::{run, Command, ModuleFixture, ModuleSource, OutputFormat, RunConfig, SetSource, DEFAULT_SEED};
use loctwist::{Error, Field};

/// Twisted tensor products, cobar and bar constructions, and necklace
/// categories of finite simplicial sets.
#[derive(Debug, Parser)]
#[command(name = "loctwist", version)]
struct Cli {
    /// Coefficient field: `rat` or `fp:<p>`. Repeat to run `verify` over
    /// several fields; other commands use the first.
    #[arg(long, global = true, value_parser = parse_field)]
    field: Vec<Field>,

    #[arg(long, global = true, default_value_t = 6)]
    max_degree: usize,

    /// Word-length cap for cobar words with degree-0 letters.
    #[arg(long, global = true, default_value_t = 8)]
    word_cap: usize,

    #[arg(long, global = true, default_value = "table", value_parser = parse_format)]
    format: OutputFormat,

    /// Treat truncation warnings as check failures.
    #[arg(long, global = true)]
    strict: bool,

    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Args)]
struct SetArgs {
    /// Built-in simplicial set.
    #[arg(long, conflicts_with = "set_file")]
    fixture: Option<String>,

    /// Simplicial set in JSON.
    #[arg(long)]
    set_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ModuleArgs {
    /// Built-in module: `trivial` or `hopf`.
    #[arg(long, conflicts_with_all = ["monodromy", "module_file"])]
    module: Option<String>,

    /// Rank-one local system with this monodromy along every 1-simplex.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "module_file")]
    monodromy: Option<i64>,

    /// Module in JSON.
    #[arg(long)]
    module_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Generator counts, Euler characteristic and homology.
    Describe(SetArgs),
    /// Homology of the normalized chains.
    Homology(SetArgs),
    /// Homology of the cobar construction of the chains.
    CobarHomology(SetArgs),
    /// Homology of the bar construction of the cobar construction.
    BarHomology(SetArgs),
    /// Homology of the twisted tensor product with a module.
    TwistedHomology {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Homology of the colimit of a local system, with an oracle check on
    /// the circle.
    Colimit {
        #[command(flatten)]
        set: SetArgs,
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Homology of a necklace hom complex between two vertices.
    LambdaHom {
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Runs every built-in check.
    Verify,
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn set_source(args: SetArgs) -> Result<SetSource, Error> {
    match (args.fixture, args.set_file) {
        (Some(name), None) => Ok(SetSource::Fixture(name)),
        (None, Some(path)) => Ok(SetSource::File(path)),
        _ => Err(Error::Parse("give exactly one of --fixture or --set-file".into())),
    }
}

fn module_source(args: ModuleArgs) -> Result<ModuleSource, Error> {
    if let Some(path) = args.module_file {
        return Ok(ModuleSource::File(path));
    }
    if let Some(u) = args.monodromy {
        return Ok(ModuleSource::Fixture(ModuleFixture::Monodromy(u)));
    }
    match args.module.as_deref() {
        None | Some("trivial") => Ok(ModuleSource::Fixture(ModuleFixture::Trivial)),
        Some("hopf") => Ok(ModuleSource::Fixture(ModuleFixture::Hopf)),
        Some(other) => Err(Error::Parse(format!("unknown module {other:?}; expected trivial or hopf"))),
    }
}

fn command(sub: Sub) -> Result<Command, Error> {
    Ok(match sub {
        Sub::Describe(s) => Command::Describe { set: set_source(s)? },
        Sub::Homology(s) => Command::Homology { set: set_source(s)? },
        Sub::CobarHomology(s) => Command::CobarHomology { set: set_source(s)? },
        Sub::BarHomology(s) => Command::BarHomology { set: set_source(s)? },
        Sub::TwistedHomology { set, module } => Command::TwistedHomology {
            set: set_source(set)?,
            module: module_source(module)?,
        },
        Sub::Colimit { set, module } => Command::Colimit {
            set: set_source(set)?,
            module: module_source(module)?,
        },
        Sub::LambdaHom { set, from, to } => Command::LambdaHom {
            set: set_source(set)?,
            source: from,
            target: to,
        },
        Sub::Verify => Command::Verify,
    })
}

/// Errors in what the user supplied, as opposed to failed checks.
fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Schema { .. }
            | Error::UnknownFixture(_)
            | Error::UnknownVertex(_)
            | Error::UnknownSimplex(_)
            | Error::NotPrime(_)
            | Error::NotOneVertex(_)
            | Error::NotConnected(_)
            | Error::Malformed(_)
            | Error::SimplicialIdentity { .. }
            | Error::IndexOutOfRange { .. }
            | Error::ModuleViolation(_)
            | Error::Mismatch(_)
            | Error::Singular
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let verify = matches!(cli.command, Sub::Verify);
    let fields = match (cli.field.is_empty(), verify) {
        (false, _) => cli.field,
        (true, true) => vec![Field::Rational, Field::prime(5).expect("5 is prime")],
        (true, false) => vec![Field::Rational],
    };
    let config = RunConfig {
        fields,
        max_degree: cli.max_degree,
        word_cap: cli.word_cap,
        format: cli.format,
        strict: cli.strict,
        seed: cli.seed,
    };
    let outcome = command(cli.command).and_then(|c| run(&c, &config));
    match outcome {
        Ok(report) => {
            print!("{}", report.render(config.format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if is_input_error(&e) { 2 } else { 1 })
        }
    }
}
