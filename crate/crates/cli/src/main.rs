use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use srs_cli::commands::{cmd_render, cmd_run, cmd_sweep, split_axes};
use srs_cli::config::{parse_pair, read_config_file, resolve, Overrides, KEYS};
use srs_cli::{CliError, Result};

#[derive(Parser)]
#[command(name = "srs", version, about = "Self-regulated swarm simulator on dynamic landscapes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario over its seeds.
    Run(RunArgs),
    /// Run the cartesian product of comma-separated --set values.
    Sweep(RunArgs),
    /// Re-render agent and pheromone rasters from state dumps.
    Render {
        /// state_tNNNN.json files written by `run`.
        #[arg(required = true)]
        states: Vec<PathBuf>,
        /// Output directory (defaults to each dump's directory).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List preset ids and configuration keys.
    List,
}

#[derive(Args)]
struct RunArgs {
    /// Preset id, e.g. ackley-speed:v=2.
    #[arg(long)]
    scenario: Option<String>,
    /// Master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of consecutive seeds.
    #[arg(long)]
    seeds: Option<usize>,
    /// Output directory.
    #[arg(long, default_value = "srs-out")]
    out: PathBuf,
    /// Steps to snapshot, comma separated.
    #[arg(long)]
    snapshots: Option<String>,
    /// key=value override; repeatable, applied after config files.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    sets: Vec<String>,
    /// Flat key=value config file (a manifest works); repeatable.
    #[arg(long = "config", value_name = "FILE")]
    configs: Vec<PathBuf>,
    /// Resolve the configuration and write the manifest only.
    #[arg(long)]
    dry_run: bool,
}

impl RunArgs {
    /// Config files, then --set, then the dedicated flags.
    fn overrides(&self) -> Result<Overrides> {
        let mut all = Vec::new();
        for path in &self.configs {
            all.extend(read_config_file(path)?);
        }
        for s in &self.sets {
            all.push(parse_pair(s).ok_or_else(|| CliError::Config(format!("--set expects key=value, got `{s}`")))?);
        }
        let flags = [
            ("scenario", self.scenario.clone()),
            ("seed", self.seed.map(|v| v.to_string())),
            ("seeds", self.seeds.map(|v| v.to_string())),
            ("snapshots", self.snapshots.clone()),
        ];
        all.extend(flags.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))));
        Ok(all)
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(args) => {
            let config = resolve(&args.overrides()?)?;
            if let Some(report) = cmd_run(&config, &args.out, args.dry_run)? {
                println!(
                    "{}: mean success {:.3} (min {:.3}, max {:.3}) over {} seeds -> {}",
                    report.scenario,
                    report.mean_success,
                    report.min_success,
                    report.max_success,
                    report.runs.len(),
                    args.out.display()
                );
            } else {
                println!("manifest written to {}", args.out.display());
            }
        }
        Command::Sweep(args) => {
            let (fixed, axes) = split_axes(&args.overrides()?);
            let reports = cmd_sweep(&fixed, &axes, &args.out, args.dry_run)?;
            println!("{} combinations -> {}", reports.len(), args.out.display());
        }
        Command::Render { states, out } => {
            for path in cmd_render(&states, out.as_deref())? {
                println!("{}", path.display());
            }
        }
        Command::List => {
            println!("presets:");
            for id in srs_core::bench::catalog() {
                println!("  {id}");
            }
            println!("keys:");
            for (k, doc) in KEYS {
                println!("  {k:<18} {doc}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
