//! `weyl`: checks Jacobian maps, their Weyl-algebra extensions and symplectic
//! maps read from endomorphism files.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Input, InputError};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Parser, Debug)]
#[command(name = "weyl", version, about = "Exact checks for Jacobian maps and Weyl algebra endomorphisms")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Jacobian matrix and determinant.
    Jacobian { file: String },
    /// Extend a Jacobian map to the Weyl algebra and verify the relations.
    Extend {
        file: String,
        /// Add d_i'(p) to each d_i'.
        #[arg(long)]
        potential: Option<String>,
    },
    /// Check a Poisson map of P_2n and lift it to A_2n.
    Lift { file: String },
    /// Associated graded map of the extension.
    Gr {
        file: String,
        #[arg(long)]
        potential: Option<String>,
    },
    /// Formal inverse modulo degree N+1 after removing the affine part.
    Invert {
        file: String,
        #[arg(long, default_value_t = 8)]
        trunc: u32,
    },
    /// Length bounds for the map's degree.
    Bounds { file: String },
    /// Filtration dimensions of the twisted module and degree growth.
    Hilbert {
        file: String,
        #[arg(long, default_value_t = 8)]
        steps: u32,
    },
    /// Whether g generates the twisted module up to a degree.
    Cyclic {
        file: String,
        #[arg(long = "gen", default_value = "1")]
        generator: String,
        /// Operator degree; defaults to 2*d*maxdeg capped at 20000 basis elements.
        #[arg(long)]
        opdeg: Option<u32>,
        #[arg(long, default_value_t = 4)]
        maxdeg: u32,
    },
}

impl Command {
    fn file(&self) -> &str {
        match self {
            Command::Jacobian { file }
            | Command::Extend { file, .. }
            | Command::Lift { file }
            | Command::Gr { file, .. }
            | Command::Invert { file, .. }
            | Command::Bounds { file }
            | Command::Hilbert { file, .. }
            | Command::Cyclic { file, .. } => file,
        }
    }
}

fn run(cli: &Cli) -> Result<report::Report, InputError> {
    let input = Input::load(cli.command.file())?;
    match &cli.command {
        Command::Jacobian { .. } => commands::jacobian(&input),
        Command::Extend { potential, .. } => commands::extend(&input, potential.as_deref()),
        Command::Lift { .. } => commands::lift(&input),
        Command::Gr { potential, .. } => commands::gr(&input, potential.as_deref()),
        Command::Invert { trunc, .. } => commands::invert(&input, *trunc),
        Command::Bounds { .. } => commands::bounds(&input),
        Command::Hilbert { steps, .. } => commands::hilbert(&input, *steps),
        Command::Cyclic {
            generator,
            opdeg,
            maxdeg,
            ..
        } => commands::cyclic(&input, generator, *opdeg, *maxdeg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(mut report) => {
            report.timing_ms = start.elapsed().as_millis();
            match cli.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Structured => println!("{}", report.to_json()),
            }
            if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
