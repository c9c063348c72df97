//! `cgm`: decide binomiality of colored Gaussian graphical models, list
//! generators, and run the verification oracles.

mod commands;
mod input;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use cgm_core::oracle::VerifyOptions;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cgm", version, about = "Binomiality of colored Gaussian graphical models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide binomiality and report block-graph and regularity properties.
    Check(Common),
    /// List linear and quadratic generators of a binomial model.
    Generators(Common),
    /// Run series, numeric, rewriting and witness oracles.
    Verify(Common),
    /// Analyse a relation partition: a file, shrikhande, j15 or trivial:N.
    Scheme(Common),
    /// Peel sequence, depth function and structural checks.
    Structure(Common),
}

#[derive(Args)]
struct Common {
    /// Graph or partition file, or the name of a bundled example.
    input: String,
    /// Truncation degree for series checks.
    #[arg(long, default_value_t = 6)]
    degree: u32,
    /// Number of numeric samples.
    #[arg(long, default_value_t = 20)]
    trials: u64,
    /// Sampling seed; overrides TOOL_SEED.
    #[arg(long, env = "TOOL_SEED")]
    seed: Option<u64>,
    /// Exact rational arithmetic for numeric checks.
    #[arg(long)]
    rational: bool,
    /// One linear generator per pair instead of a spanning set.
    #[arg(long)]
    all_pairs: bool,
    /// JSON only; suppress the summary on standard error.
    #[arg(long)]
    json: bool,
}

impl Common {
    fn seed(&self) -> Result<u64, CliError> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var("CGM_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("CGM_SEED is not an unsigned integer: {v}"))),
            Err(_) => Ok(VerifyOptions::default().seed),
        }
    }
}

/// A failure that ends the command with the given exit code.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn oracle(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

/// A finished command: payload, one-line summary and exit code.
pub struct Outcome {
    payload: Value,
    summary: String,
    code: u8,
}

impl Outcome {
    pub fn new(payload: Value, summary: String, code: u8) -> Self {
        Self { payload, summary, code }
    }
}

fn run(cli: &Cli) -> Result<(&'static str, &Common, input::Input, u64, Outcome), CliError> {
    let (name, common) = match &cli.command {
        Command::Check(c) => ("check", c),
        Command::Generators(c) => ("generators", c),
        Command::Verify(c) => ("verify", c),
        Command::Scheme(c) => ("scheme", c),
        Command::Structure(c) => ("structure", c),
    };
    let seed = common.seed()?;
    if let Command::Scheme(c) = &cli.command {
        let (inp, scheme) = input::load_scheme(&c.input)?;
        return Ok((name, common, inp, seed, commands::scheme(&scheme)?));
    }
    let (inp, g) = input::load_graph(&common.input)?;
    let outcome = match &cli.command {
        Command::Check(_) => commands::check(&g)?,
        Command::Generators(c) => commands::generators(&g, c.all_pairs)?,
        Command::Verify(c) => {
            let opts = VerifyOptions {
                degree: c.degree,
                trials: c.trials.max(1),
                seed,
                rational: c.rational,
                ..VerifyOptions::default()
            };
            commands::verify(&g, &opts)?
        }
        Command::Structure(_) => commands::structure(&g)?,
        Command::Scheme(_) => unreachable!(),
    };
    Ok((name, common, inp, seed, outcome))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok((name, common, inp, seed, outcome)) => {
            let report = json!({
                "command": name,
                "version": env!("CARGO_PKG_VERSION"),
                "input": { "source": inp.source, "sha256": inp.digest() },
                "seed": seed,
                "result": outcome.payload,
                "timing_ms": start.elapsed().as_secs_f64() * 1e3,
            });
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            if !common.json {
                eprintln!("{name}: {}", outcome.summary);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
