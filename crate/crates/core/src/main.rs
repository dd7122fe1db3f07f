use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qdecision::scenario::{
    emit_report, format_float, medical_scenario, parse_scenario, reconstruct_scenario,
    run_scenario, spin_report, Format, Report, ScenarioError,
};
use qdecision::Tolerances;

#[derive(Parser)]
#[command(
    name = "qdecision",
    version,
    about = "Quantum probability for decision variables"
)]
struct Cli {
    /// Print every numeric tolerance and exit.
    #[arg(long)]
    tolerances: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario document.
    Analyze {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a built-in demonstration.
    Demo {
        #[command(subcommand)]
        which: Demo,
        #[arg(long, default_value = "text", global = true)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Demo {
    /// Two non-commuting yes/no questions.
    Medical {
        #[arg(long, default_value_t = 40.0)]
        angle_a: f64,
        #[arg(long, default_value_t = 70.0)]
        angle_b: f64,
    },
    /// Hidden-variable versus qubit spin conditionals.
    Spin {
        #[arg(long, default_value_t = 60.0)]
        delta_degrees: f64,
        #[arg(long, default_value_t = 1_000_000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Reconstruct a random density from effect probabilities.
    Reconstruct {
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

fn fail(e: ScenarioError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

/// Writes to stdout, tolerating a closed pipe.
fn emit(text: &str) -> ExitCode {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
    ExitCode::SUCCESS
}

fn print(rep: &Report, format: Format) -> ExitCode {
    emit(&emit_report(rep, format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.tolerances {
        let text: String = Tolerances::default()
            .entries()
            .iter()
            .map(|(name, value)| format!("{name:<22}{}\n", format_float(*value)))
            .collect();
        return emit(&text);
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given (try --help)");
        return ExitCode::from(1);
    };
    match command {
        Command::Analyze { file, format, seed } => {
            let text = match std::fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", file.display());
                    return ExitCode::from(1);
                }
            };
            match parse_scenario(&text).and_then(|s| run_scenario(&s, seed)) {
                Ok(rep) => print(&rep, format),
                Err(e) => fail(e),
            }
        }
        Command::Demo { which, format } => {
            let report = match which {
                Demo::Medical { angle_a, angle_b } => {
                    medical_scenario(angle_a, angle_b).and_then(|s| run_scenario(&s, 0))
                }
                Demo::Spin {
                    delta_degrees,
                    samples,
                    seed,
                } => spin_report(delta_degrees, samples, seed).map_err(|source| {
                    ScenarioError::Engine {
                        query_index: 1,
                        source,
                    }
                }),
                Demo::Reconstruct { dim, seed } => {
                    reconstruct_scenario(dim, seed).and_then(|s| run_scenario(&s, seed))
                }
            };
            match report {
                Ok(rep) => print(&rep, format),
                Err(e) => fail(e),
            }
        }
    }
}
