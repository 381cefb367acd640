use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hochschild_steenrod::cli::config::{parse_config, Command, Format, SessionConfig};
use hochschild_steenrod::cli::{run, EXIT_PARSE};

/// Steenrod squares on Hochschild homology from a free model over F_2.
#[derive(Parser)]
#[command(name = "hhsq", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions and named generators of HH in each degree.
    Hh(Args),
    /// The Steenrod table of HH.
    Steenrod(Args),
    /// Run every invariant suite and the fixture goldens.
    Verify(Args),
    /// List the built-in fixtures.
    Fixtures(Args),
    /// Steenrod squares on H(A) only.
    SqHa(Args),
}

#[derive(clap::Args)]
struct Args {
    /// A built-in fixture, see `hhsq fixtures`.
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
    /// A JSON input document.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    max_degree: Option<i32>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Largest class degree computed by the HH pipeline; Cartan closure covers the rest.
    #[arg(long)]
    degree_bound_direct: Option<i32>,
    /// Seed of the randomized suites.
    #[arg(long)]
    seed: Option<u64>,
}

fn config(command: Command, args: Args) -> Result<SessionConfig, String> {
    let mut c = match &args.input {
        Some(path) => {
            let doc =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_config(&doc).map_err(|e| format!("{}: {e}", path.display()))?
        }
        None => SessionConfig::default(),
    };
    c.command = Some(command);
    if let Some(f) = args.fixture {
        c.fixture = Some(f);
        c.algebra = None;
        c.kappa = None;
    }
    if let Some(n) = args.max_degree {
        c.max_degree = Some(n);
    }
    if let Some(f) = args.format {
        c.format = f;
    }
    if args.degree_bound_direct.is_some() {
        c.degree_bound_direct = args.degree_bound_direct;
    }
    if args.seed.is_some() {
        c.seed = args.seed;
    }
    c.check().map_err(|e| e.to_string())?;
    Ok(c)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = match cli.command {
        Cmd::Hh(a) => (Command::Hh, a),
        Cmd::Steenrod(a) => (Command::Steenrod, a),
        Cmd::Verify(a) => (Command::Verify, a),
        Cmd::Fixtures(a) => (Command::Fixtures, a),
        Cmd::SqHa(a) => (Command::SqHa, a),
    };
    let out = match config(command, args) {
        Ok(c) => run(c),
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
