use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use epistemic_horizon::cli::{run, Command, OutputFormat, RunConfig};

#[derive(Parser)]
#[command(
    name = "horizon",
    version,
    about = "Diagonal measurements, toy states, CHSH and context checking"
)]
struct Args {
    /// Seed for toy-sim's random outcomes (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    output_format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Subcommand)]
enum Sub {
    /// Diagonal measurement and fixed-point check of an outcome table.
    Diagonal {
        /// Grid of +/- or a JSON array of ±1 rows; defaults to a 5x5 example.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Run a scripted measurement sequence on a toy state.
    ToySim {
        #[arg(long)]
        script: PathBuf,
    },
    /// Local hidden-variable feasibility, model reports or the vertex list.
    Bell {
        /// <xx>,<xz>,<zx>,<zz> as integers, fractions or decimals.
        #[arg(long, allow_hyphen_values = true)]
        correlations: Option<String>,
        /// JSON array of sixteen rational weights.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Hardy state expansions, outcome table and the fused-chain check.
    Hardy {
        /// <basisA>,<basisB> with z, x or an angle in radians.
        #[arg(long, allow_hyphen_values = true)]
        settings: Option<String>,
    },
    /// Friend-lab version of the Hardy chain.
    Fr,
    /// Counterfactual inference on anticorrelated pairs.
    Epr,
    /// Check a reasoning chain file.
    Validate {
        #[arg(long)]
        chain: PathBuf,
        /// Two-qubit state JSON; defaults to the Hardy state.
        #[arg(long)]
        state: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Sub::Diagonal { table } => Command::Diagonal { table },
        Sub::ToySim { script } => Command::ToySim { script },
        Sub::Bell { correlations, model } => Command::Bell { correlations, model },
        Sub::Hardy { settings } => Command::Hardy { settings },
        Sub::Fr => Command::Fr,
        Sub::Epr => Command::Epr,
        Sub::Validate { chain, state } => Command::Validate { chain, state },
    };
    let out = run(&RunConfig {
        command,
        seed: args.seed,
        output_format: match args.output_format {
            Format::Table => OutputFormat::Table,
            Format::Json => OutputFormat::Json,
        },
    });
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.exit_code as u8)
}
