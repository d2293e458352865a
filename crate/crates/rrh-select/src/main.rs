//! Thin command-line front end: resolve the configuration, run the requested
//! workflow from the library, write the CSV + manifest pair.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rrh_select::cli::commands::{self, CompareOptConfig, LossConfig, MultiConfig, ProtocolConfig, ShadowConfig, SweepConfig, VerifyConfig};
use rrh_select::cli::config::{resolve_out_dir, FileConfig};
use rrh_select::cli::report::write_outputs;
use rrh_select::Result;

#[derive(Parser)]
#[command(
    name = "rrh-select",
    version,
    about = "SIR coverage analysis and Monte-Carlo validation of two-phase RRH selection"
)]
struct Cli {
    /// JSON experiment configuration; command-line flags override its fields.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Master seed for every RNG stream.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte-Carlo trial count.
    #[arg(long, global = true)]
    trials: Option<u64>,
    /// Output directory (default: $RRH_SELECT_OUT_DIR, then ./out).
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic SIR CCDF vs Monte-Carlo estimates per selection threshold.
    Verify,
    /// Coverage as a function of the selection threshold, optima marked.
    Sweep,
    /// Closed-form selection threshold vs the numeric optimum.
    CompareOpt,
    /// Analytic coverage loss of random vs nearest selection by density ratio.
    Loss,
    /// Shadowing validation: loss-process counts and power-threshold runs.
    Shadow,
    /// Multi-RRH selection with maximum ratio combining.
    Multi,
    /// Fronthaul cost accounting of the selection-switch protocol.
    Protocol,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Sweep => "sweep",
            Command::CompareOpt => "compare_opt",
            Command::Loss => "loss",
            Command::Shadow => "shadow",
            Command::Multi => "multi",
            Command::Protocol => "protocol",
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let file = match &cli.config {
        Some(path) => Some(FileConfig::load(path)?),
        None => None,
    };
    let file = file.as_ref();
    let started = Instant::now();
    let (out, seed, echo) = match &cli.command {
        Command::Verify => {
            let cfg = VerifyConfig::resolve(file, cli.seed, cli.trials)?;
            (commands::verify(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::Sweep => {
            let cfg = SweepConfig::resolve(file, cli.seed)?;
            (commands::sweep(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::CompareOpt => {
            let cfg = CompareOptConfig::resolve(file, cli.seed)?;
            (commands::compare_opt(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::Loss => {
            let cfg = LossConfig::resolve(file, cli.seed)?;
            (commands::loss(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::Shadow => {
            let cfg = ShadowConfig::resolve(file, cli.seed, cli.trials)?;
            (commands::shadow(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::Multi => {
            let cfg = MultiConfig::resolve(file, cli.seed, cli.trials)?;
            (commands::multi(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
        Command::Protocol => {
            let cfg = ProtocolConfig::resolve(file, cli.seed, cli.trials)?;
            (commands::protocol(&cfg)?, cfg.master_seed, serde_json::to_value(&cfg)?)
        }
    };
    let out_dir = resolve_out_dir(cli.out.clone(), file);
    let (csv_path, manifest_path) = write_outputs(
        &out_dir,
        cli.command.name(),
        &out.csv,
        seed,
        echo,
        out.resolved,
        started.elapsed().as_secs_f64(),
    )?;
    println!("wrote {}", csv_path.display());
    println!("wrote {}", manifest_path.display());
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
