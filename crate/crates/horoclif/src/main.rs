use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use horoclif::commands::{cmd_flags, cmd_horosphere, cmd_lambda, cmd_ptolemy, cmd_random, cmd_verify};
use horoclif::{dim_cap, CliError, Format, RandomKind, Report, RunConfig, DIM_CAP_VAR};

#[derive(Parser)]
#[command(name = "horoclif", version, about = "Spinors, null flags, decorated horospheres and Clifford lambda lengths")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Clifford dimension: inputs are checked against it, verify and random use it.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Samples per property (verify, default 200) or spinors/matrices to draw (random, default 4).
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Replaces the pass threshold of ptolemy and of every verify property.
    #[arg(long, global = true)]
    tol: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Input file, or - for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Decorated horosphere of each spinor.
    Horosphere,
    /// Table of pairwise lambda lengths.
    Lambda,
    /// Ptolemy relation for four spinors.
    Ptolemy,
    /// Null multiflag of each spinor.
    Flags,
    /// Run every property suite.
    Verify,
    /// Draw random spinors or SL(2) matrices.
    Random {
        #[arg(long, value_enum, default_value_t = RandomKind::Spinor)]
        kind: RandomKind,
    },
}

fn read_input(path: &str) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Io { path: path.to_string(), source })?;
    Ok(s)
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let cap = dim_cap(std::env::var(DIM_CAP_VAR).ok().as_deref())?;
    if let Some(t) = cli.tol.filter(|t| t.is_nan() || *t < 0.0) {
        return Err(CliError::input(format!("--tol must be non-negative, got {t}")));
    }
    let cfg = RunConfig { n: cli.n, seed: cli.seed, samples: cli.samples, tol: cli.tol, format: cli.format, cap };
    match &cli.command {
        Command::Horosphere => cmd_horosphere(&read_input(&cli.input)?, &cfg),
        Command::Lambda => cmd_lambda(&read_input(&cli.input)?, &cfg),
        Command::Ptolemy => cmd_ptolemy(&read_input(&cli.input)?, &cfg),
        Command::Flags => cmd_flags(&read_input(&cli.input)?, &cfg),
        Command::Verify => cmd_verify(&cfg),
        Command::Random { kind } => cmd_random(&cfg, *kind),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(r) => {
            print!("{}", r.text);
            ExitCode::from(r.code as u8)
        }
        Err(e) => {
            let diag = horoclif::output::to_json(&e.diagnostic()).unwrap_or_else(|_| format!("{e}\n"));
            eprint!("{diag}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
