mod report;

use clap::{Parser, Subcommand, ValueEnum};
use semibrick::category::Caps;
use semibrick::error::Category;
use semibrick::{Error, ModuleCategory, MonomialAlgebra};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

#[derive(Parser, Debug)]
#[command(
    name = "semibrick",
    version,
    about = "Semibrick pairs, torsion lattices and 0-Hall algebras of monomial algebras"
)]
struct Cli {
    /// Characteristic of the ground field.
    #[arg(long = "field", global = true, default_value_t = 2)]
    field: u32,
    /// Print JSON with sorted keys instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Most bricks before giving up [default: 24].
    #[arg(long = "cap-bricks", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_bricks: Option<u64>,
    /// Largest Hom dimension computed [default: 16].
    #[arg(long = "cap-homdim", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_homdim: Option<u64>,
    /// Longest string enumerated.
    #[arg(long = "cap-length", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_length: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural flags of the algebra.
    Classify { algebra: PathBuf },
    /// Catalog of string modules.
    Strings { algebra: PathBuf },
    /// Catalog of bricks.
    Bricks { algebra: PathBuf },
    /// Decides completability of a pair written `POS / NEG`.
    CheckPair { algebra: PathBuf, pair: String },
    /// Checks that pairwise completability implies completability.
    Pairwise { algebra: PathBuf },
    /// Lattice of torsion classes.
    Tors {
        algebra: PathBuf,
        /// Also write the Hasse diagram in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Two-term simple-minded collections.
    Smc {
        algebra: PathBuf,
        #[arg(long, value_enum, default_value_t = Via::Lattice)]
        via: Via,
    },
    /// Picture group presentation.
    Group { algebra: PathBuf },
    /// Verifies the picture group relations in the truncated 0-Hall algebra.
    Hall {
        algebra: PathBuf,
        /// Truncation length; defaults to twice the longest module.
        #[arg(long)]
        degree: Option<usize>,
        /// Held-out primes used to confirm each interpolated polynomial.
        #[arg(long, default_value_t = 1)]
        primes: usize,
    },
    /// Arc model of a Nakayama-like algebra.
    Arc {
        algebra: PathBuf,
        /// Compare every prediction with linear algebra.
        #[arg(long)]
        validate: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Via {
    Lattice,
    Mutation,
    Both,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn load(cli: &Cli, path: &PathBuf) -> Result<ModuleCategory, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let alg = MonomialAlgebra::parse(&text)?;
    let mut caps = Caps::default();
    if let Some(b) = cli.cap_bricks {
        caps.bricks = b as usize;
    }
    if let Some(h) = cli.cap_homdim {
        caps.hom_dim = h as usize;
    }
    caps.string_length = cli.cap_length.map(|l| l as usize);
    Ok(ModuleCategory::with_caps(Arc::new(alg), cli.field, caps)?)
}

fn run(cli: &Cli) -> Result<report::Report, Failure> {
    use report::*;
    match &cli.command {
        Command::Classify { algebra } => Ok(classify(&load(cli, algebra)?)),
        Command::Strings { algebra } => Ok(strings(&load(cli, algebra)?)),
        Command::Bricks { algebra } => Ok(bricks(&load(cli, algebra)?)?),
        Command::CheckPair { algebra, pair } => check_pair(&load(cli, algebra)?, pair),
        Command::Pairwise { algebra } => Ok(pairwise(&load(cli, algebra)?)?),
        Command::Tors { algebra, dot } => {
            let cat = load(cli, algebra)?;
            let (r, dot_text) = tors(&cat)?;
            if let Some(path) = dot {
                std::fs::write(path, dot_text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            Ok(r)
        }
        Command::Smc { algebra, via } => {
            let cat = load(cli, algebra)?;
            Ok(smc(&cat, matches!(via, Via::Lattice | Via::Both), matches!(via, Via::Mutation | Via::Both))?)
        }
        Command::Group { algebra } => Ok(group(&load(cli, algebra)?)?),
        Command::Hall { algebra, degree, primes } => Ok(hall(&load(cli, algebra)?, *degree, *primes)?),
        Command::Arc { algebra, validate } => Ok(arc(&load(cli, algebra)?, *validate)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(r) => {
            let out = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("reports serialize") + "\n"
            } else {
                r.text
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::from(r.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.category() {
                Category::Input => 1,
                Category::Invariant => 2,
                Category::Resource => 3,
            })
        }
    }
}
