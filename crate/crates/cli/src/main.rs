//! `hecke`: cells, Kazhdan-Lusztig tables, stalks, structure constants and
//! verification suites for the extended Hecke algebra.

mod commands;
mod config;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::Run;
use config::Settings;
use hecke_core::suites::Suite;

#[derive(Parser)]
#[command(name = "hecke", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Two-sided (J, J') cells; writes cells.json and cells.txt.
    Cells(#[command(flatten)] Settings),
    /// KL polynomials of every stabilizer; writes kl.csv and n.csv.
    Kl(#[command(flatten)] Settings),
    /// Stalk multiplicities and sheaf classes; writes stalks.csv and stalks.json.
    Stalks(#[command(flatten)] Settings),
    /// Structure constants of the canonical basis; writes gamma.csv.
    Gamma(#[command(flatten)] Settings),
    /// Runs a property suite: duality, facets, positivity, convolution, cosets or all.
    Verify {
        suite: String,
        #[command(flatten)]
        settings: Settings,
    },
}

enum Outcome {
    Pass,
    Counterexample(String),
}

fn execute(cli: Cli) -> Result<Outcome> {
    type Action = fn(&Run) -> Result<String>;
    let (settings, action): (Settings, std::result::Result<Action, String>) = match cli.command {
        Command::Cells(s) => (s, Ok(commands::cells)),
        Command::Kl(s) => (s, Ok(commands::kl)),
        Command::Stalks(s) => (s, Ok(commands::stalks)),
        Command::Gamma(s) => (s, Ok(commands::gamma)),
        Command::Verify { suite, settings } => (settings, Err(suite)),
    };
    let suites = match &action {
        Err(name) => Some(Suite::parse_many(name)?),
        Ok(_) => None,
    };
    let run = Run::new(&settings.resolve()?)?;
    let Some(suites) = suites else {
        print!("{}", action.expect("plain command")(&run)?);
        return Ok(Outcome::Pass);
    };
    let (text, failure) = commands::verify(&run, &suites)?;
    print!("{text}");
    Ok(match failure {
        None => Outcome::Pass,
        Some(r) => Outcome::Counterexample(format!("{}: {}", r.suite, r.counterexample.unwrap_or_default())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Counterexample(msg)) => {
            eprintln!("counterexample: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
