use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use log::{error, info};

use rydberg_gate::runner::{run_sweep, sweep_points, write_outputs, Analysis, ChannelConfig, RunConfig};
use rydberg_gate::Result;

#[derive(Parser)]
#[command(name = "rydberg-gate", version, about = "Rydberg-blockade CZ/CNOT gate simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fidelity and purity over the configured parameter grid.
    Sweep(RunArgs),
    /// CNOT truth tables, raw and postselected.
    TruthTable(RunArgs),
    /// Process matrix and closest unitary of the CNOT.
    Tomography(RunArgs),
    /// Checks a configuration and prints it with all defaults filled in.
    ValidateConfig {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML configuration; defaults are used when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory, overriding the configuration.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Comma-separated loss channels, `all` or `none`, overriding the configuration.
    #[arg(long)]
    channels: Option<String>,
}

fn load_config(path: Option<&PathBuf>) -> Result<RunConfig> {
    match path {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn run(args: &RunArgs, analysis: Analysis) -> Result<bool> {
    let mut cfg = load_config(args.config.as_ref())?;
    if let Some(out) = &args.out {
        cfg.output_dir = out.clone();
    }
    if let Some(list) = &args.channels {
        cfg.channels = ChannelConfig::parse_list(list)?;
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.jobs {
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| rydberg_gate::Error::Argument(format!("thread pool: {e}")))?;
    info!("running {} tasks on {} threads", sweep_points(&cfg).len(), pool.current_num_threads());
    let results = pool.install(|| run_sweep(&cfg, analysis))?;
    for r in &results {
        if let Err(e) = &r.outcome {
            error!("task {} failed: {e}", r.point.index);
        }
    }
    let files = write_outputs(&cfg.output_dir, &cfg, analysis, &results)?;
    for f in &files {
        info!("wrote {}", f.display());
    }
    print!("{}", std::fs::read_to_string(cfg.output_dir.join(rydberg_gate::runner::output::SUMMARY_FILE)).unwrap_or_default());
    Ok(results.iter().all(|r| r.outcome.is_ok()))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Sweep(a) => run(a, Analysis::Metrics),
        Command::TruthTable(a) => run(a, Analysis::TruthTable),
        Command::Tomography(a) => run(a, Analysis::Tomography),
        Command::ValidateConfig { config } => load_config(config.as_ref()).map(|c| {
            print!("{}", c.to_toml());
            true
        }),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
