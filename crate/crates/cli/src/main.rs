mod commands;
mod demo;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "incidence",
    version,
    about = "Exact incidence algebras and interval bialgebras of finite posets"
)]
struct Cli {
    /// Emit the JSON report form instead of CSV
    #[arg(long, global = true)]
    json: bool,

    /// Write the payload to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for randomized checks
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poset operations
    Poset {
        #[command(subcommand)]
        action: PosetAction,
    },
    /// Relation operations
    Relation {
        #[command(subcommand)]
        action: RelationAction,
    },
    /// Möbius function of a relation, one row per class
    Mobius { poset: String, relation: String },
    /// Antipode of the interval bialgebra, compared against the Möbius operator
    Antipode { poset: String, relation: String },
    /// Bialgebra operations
    Bialgebra {
        #[command(subcommand)]
        action: BialgebraAction,
    },
    /// Bernoulli numbers β_0..β_N
    Bernoulli {
        #[arg(long = "n", value_name = "N")]
        n: usize,
    },
    /// Classical Möbius function μ(1..N)
    ClassicalMobius {
        #[arg(long, value_name = "N")]
        max: usize,
    },
    /// Worked examples: hamilton, matrix:n, boolean:n, chain:n, divisors:N, fan:n, squarefree:N
    Demo { name: String },
}

#[derive(Subcommand, Debug)]
enum PosetAction {
    /// Validate a poset file or generator spec and summarize it
    Check { poset: String },
}

#[derive(Subcommand, Debug)]
enum RelationAction {
    /// Bialgebra-compatibility verdict
    Check { poset: String, relation: String },
}

#[derive(Subcommand, Debug)]
enum BialgebraAction {
    /// Full axiom report of the interval bialgebra
    Verify { poset: String, relation: String },
}

fn dispatch(cli: &Cli) -> incidence_core::Result<output::Payload> {
    match &cli.command {
        Command::Poset {
            action: PosetAction::Check { poset },
        } => commands::poset_check(poset),
        Command::Relation {
            action: RelationAction::Check { poset, relation },
        } => commands::relation_check(poset, relation),
        Command::Mobius { poset, relation } => commands::mobius(poset, relation),
        Command::Antipode { poset, relation } => commands::antipode(poset, relation),
        Command::Bialgebra {
            action: BialgebraAction::Verify { poset, relation },
        } => commands::bialgebra_verify(poset, relation),
        Command::Bernoulli { n } => commands::bernoulli(*n),
        Command::ClassicalMobius { max } => commands::classical_mobius(*max),
        Command::Demo { name } => demo::run(name, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let payload = match dispatch(&cli) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = payload.render(cli.json);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::SUCCESS
}
