use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use flagpos::commands::{self, Outcome, EXIT_INVALID};
use flagpos::io::{CliError, CliResult};

#[derive(Parser)]
#[command(name = "flagpos", version, about = "Flag positroids and the nonnegative tropical flag variety")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Read JSON input from FILE instead of standard input.
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Write the JSON result to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads for table reproduction and suites.
    #[arg(long, global = true, env = "FLAGPOS_JOBS")]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Basis exchange axiom for {"n", "bases"}.
    CheckMatroid,
    /// Positroid test for {"n", "bases"}.
    CheckPositroid,
    /// Grassmann necklace of {"n", "bases"}, or the positroid of {"n", "necklace"}.
    Necklace,
    /// Necklace quotient test for {"n", "low", "high", "rule"?}.
    Quotient,
    /// Positively oriented flag matroid test for {"n", "matroids"}.
    Pom,
    /// Nonnegative flag Dressian membership of valuated vectors.
    Fldr,
    /// Coherent subdivision induced by valuated vectors.
    Subdivide,
    /// Bruhat envelope of a complete flag matroid {"n", "matroids"}.
    Envelope,
    /// Recompute a printed figure, table or the worked examples.
    Reproduce {
        #[arg(value_parser = commands::TARGETS)]
        target: String,
    },
    /// Run a seeded property suite ("all" runs every suite).
    Suite {
        name: String,
        /// Multiplier on the default instance counts.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
    },
}

fn read_input(path: &Option<PathBuf>) -> CliResult<String> {
    let mut text = String::new();
    match path {
        Some(p) => text = std::fs::read_to_string(p)?,
        None => {
            std::io::stdin().read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let jobs = cli
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    match &cli.command {
        Command::Reproduce { target } => return commands::reproduce(target, jobs),
        Command::Suite { name, scale } => {
            rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().ok();
            eprintln!("seed: {}", cli.seed);
            return commands::suite(name, cli.seed, *scale);
        }
        _ => {}
    }
    let text = read_input(&cli.input)?;
    match &cli.command {
        Command::CheckMatroid => commands::check_matroid(&text),
        Command::CheckPositroid => commands::check_positroid(&text),
        Command::Necklace => commands::necklace(&text),
        Command::Quotient => commands::quotient(&text),
        Command::Pom => commands::pom(&text),
        Command::Fldr => commands::fldr(&text),
        Command::Subdivide => commands::subdivide(&text),
        Command::Envelope => commands::envelope_cmd(&text),
        Command::Reproduce { .. } | Command::Suite { .. } => unreachable!(),
    }
}

fn emit(cli: &Cli, value: &serde_json::Value) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).expect("serializable") + "\n";
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            let value = match &e {
                CliError::Input { pointer, message } => {
                    serde_json::json!({ "error": message, "pointer": pointer })
                }
                other => serde_json::json!({ "error": other.to_string() }),
            };
            eprintln!("error: {e}");
            let _ = emit(&cli, &value);
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    if matches!(cli.command, Command::Reproduce { .. }) {
        for line in commands::diff_lines(&outcome.value) {
            eprintln!("{line}");
        }
    }
    if let Err(e) = emit(&cli, &outcome.value) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_INVALID as u8);
    }
    ExitCode::from(outcome.code as u8)
}
