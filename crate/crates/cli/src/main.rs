use std::path::PathBuf;
use std::process::ExitCode;

use aifsim::{apply_override, parse_config, run_subcommand, CliError, Command};
use clap::Parser;

/// Simulation engine for light-pulse atom interferometers with
/// internal-state transitions: phases, frame checks, mass-defect scaling,
/// sensitivity budgets, Monte Carlo campaigns and parameter sweeps.
#[derive(Parser)]
#[command(name = "aifsim", version, about, max_term_width = 100)]
struct Cli {
    /// Subcommand: phase, frame-check, oracle-check, sensitivity,
    /// montecarlo or sweep.
    command: String,

    /// JSON configuration file; omitted means all defaults.
    #[arg(long)]
    config: Option<PathBuf>,

    /// Flat dotted-path overrides applied to the configuration,
    /// e.g. --set geometry.t=0.6 --set campaign.seed=7.
    #[arg(long = "set", value_name = "PATH=VALUE")]
    set: Vec<String>,

    /// Directory for CSV artifacts (sweep.csv, records.csv, sensitivity.csv).
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
}

fn run(cli: &Cli) -> Result<String, CliError> {
    let command: Command = cli.command.parse()?;

    let mut doc = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::io(&format!("reading {}", path.display()), e))?;
            serde_json::from_str(&text).map_err(|e| CliError {
                kind: aifsim::ErrorKind::Config,
                message: format!("invalid JSON: {e}"),
                path: None,
            })?
        }
        None => serde_json::json!({}),
    };
    for assignment in &cli.set {
        apply_override(&mut doc, assignment)?;
    }
    let config = parse_config(&doc)?;

    if let Some(dir) = &cli.out_dir {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::io(&format!("creating {}", dir.display()), e))?;
    }

    let report = run_subcommand(command, &config, cli.out_dir.as_deref())?;
    serde_json::to_string_pretty(&report).map_err(|e| CliError {
        kind: aifsim::ErrorKind::Io,
        message: format!("serializing report: {e}"),
        path: None,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            println!("{report}");
            ExitCode::SUCCESS
        }
        Err(err) => {
            let obj = serde_json::json!({ "error": err });
            eprintln!(
                "{}",
                serde_json::to_string_pretty(&obj).unwrap_or_else(|_| err.to_string())
            );
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
