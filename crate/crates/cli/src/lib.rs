//! Command-line front end: configuration documents, command dispatch and
//! report output.

pub mod commands;
pub mod config;
pub mod error;
pub mod render;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use galois_cover::enumerate::FamilyIter;
use serde_json::json;

pub use commands::{run_command, Command, Flags};
pub use config::{parse_config, to_config, ConfigDoc, Model};
pub use error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "galcov", version, about = "Invariants of Galois covers of compact Riemann surfaces")]
pub struct Args {
    /// Report to produce
    #[arg(value_enum)]
    pub command: Command,
    /// Configuration document (`-` reads standard input)
    pub config: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Print enumerated divisors as JSON lines without a cap
    #[arg(long)]
    pub stream: bool,
    /// Largest number of divisors returned by an enumeration
    #[arg(long, default_value_t = galois_cover::enumerate::DEFAULT_CAP)]
    pub cap: u128,
    /// Weight of the differentials
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub q: i64,
    /// Degree of the reduced divisor Gamma on the base
    #[arg(long, default_value_t = 0)]
    pub gamma_degree: u64,
    /// Restrict to one character: exponents `k1,k2,..` or a character name
    #[arg(long = "char", allow_hyphen_values = true)]
    pub character: Option<String>,
    /// Group element `a1,a2,..` for traces
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// Irreducible representations with eigenvalue tables
    #[arg(long)]
    pub irrep_file: Option<PathBuf>,
    /// Report only the number of divisors
    #[arg(long)]
    pub count_only: bool,
    /// Bucket of each branch point for `dims`, comma separated
    #[arg(long, value_delimiter = ',')]
    pub buckets: Option<Vec<u64>>,
    /// Exponent over the distinguished point for `dims`
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub p: i64,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    let name = path.display().to_string();
    if name == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| CliError::Io { path: name, source })?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: name, source })
}

pub fn flags_from(args: &Args) -> Result<Flags, CliError> {
    let irreps = match &args.irrep_file {
        Some(path) => Some(config::from_json(&read_input(path)?)?),
        None => None,
    };
    Ok(Flags {
        q: args.q,
        gamma_degree: args.gamma_degree,
        character: args.character.clone(),
        tau: args.tau.clone(),
        irreps,
        count_only: args.count_only,
        cap: args.cap,
        buckets: args.buckets.clone(),
        p: args.p,
    })
}

/// Executes one invocation, writing the report to `out`.
pub fn run(args: &Args, out: &mut dyn Write) -> Result<(), CliError> {
    let model = parse_config(&read_input(&args.config)?)?;
    let flags = flags_from(args)?;
    if let (true, Some(family)) = (args.stream && !args.count_only, args.command.family()) {
        let cover = model.cover();
        cover.validate()?;
        for d in FamilyIter::new(cover, family)? {
            serde_json::to_writer(&mut *out, &d).map_err(|e| CliError::Output(e.into()))?;
            out.write_all(b"\n")?;
        }
        return Ok(());
    }
    let report = json!({ "command": args.command.name(), "report": run_command(args.command, &model, &flags)? });
    match args.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &report).map_err(|e| CliError::Output(e.into()))?;
            out.write_all(b"\n")?;
        }
        Format::Table => out.write_all(render::render_table(&report).as_bytes())?,
    }
    Ok(())
}

/// Error report in the requested format.
pub fn render_error(e: &CliError, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({ "error": { "code": e.code(), "message": e.to_string(), "exit_code": e.exit_code() } });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("plain json"))
        }
        Format::Table => format!("error[{}]: {e}\n", e.code()),
    }
}
