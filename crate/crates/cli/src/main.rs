use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use statone::{
    cmd_check, cmd_dualize, cmd_enumerate, cmd_export_dot, cmd_roundtrip, load, CliError, Direction, Mode, Outcome,
};

#[derive(Parser)]
#[command(
    name = "statone",
    version,
    about = "Finite MV-algebras with internal states and their dualities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    AlgebraToSpace,
    SpaceToAlgebra,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Structural,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a document: MV axioms, operator axioms, idempotence, divisibility.
    Check { file: String },
    /// Write the dual object.
    Dualize {
        file: String,
        #[arg(long)]
        direction: Option<DirectionArg>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify both round trips and write a certificate.
    Roundtrip {
        file: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// List state-morphism-operators, or all state-operator tables.
    Enumerate {
        file: String,
        #[arg(long, value_enum, default_value = "structural")]
        mode: ModeArg,
    },
    /// Graphviz rendering of g on a stone or bauer document.
    ExportDot {
        file: String,
        #[arg(long)]
        out: Option<String>,
    },
}

fn run(cli: Cli) -> Result<(Outcome, Option<String>), CliError> {
    match cli.command {
        Command::Check { file } => Ok((cmd_check(&load(&file)?)?, None)),
        Command::Dualize { file, direction, out } => {
            let direction = direction.map(|d| match d {
                DirectionArg::AlgebraToSpace => Direction::AlgebraToSpace,
                DirectionArg::SpaceToAlgebra => Direction::SpaceToAlgebra,
            });
            Ok((cmd_dualize(&load(&file)?, direction)?, out))
        }
        Command::Roundtrip { file, out } => Ok((cmd_roundtrip(&load(&file)?)?, out)),
        Command::Enumerate { file, mode } => {
            let mode = match mode {
                ModeArg::Structural => Mode::Structural,
                ModeArg::Table => Mode::Table,
            };
            Ok((cmd_enumerate(&load(&file)?, mode)?, None))
        }
        Command::ExportDot { file, out } => Ok((cmd_export_dot(&load(&file)?)?, out)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, out)) => {
            let Outcome {
                code,
                mut stdout,
                stderr,
                document,
            } = outcome;
            let payload = document.map(|d| d.to_json());
            match (out, payload) {
                (Some(path), payload) => {
                    let text = payload.unwrap_or_else(|| std::mem::take(&mut stdout));
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("cannot write {path}: {e}");
                        return ExitCode::from(2);
                    }
                }
                (None, Some(json)) => {
                    eprint!("{stdout}");
                    stdout = json;
                }
                (None, None) => {}
            }
            print!("{stdout}");
            eprint!("{stderr}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.code() as u8)
        }
    }
}
