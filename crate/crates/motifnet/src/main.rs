use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use motifnet::config::Config;
use motifnet::pipeline::{self, RunError, RunResult, StageKind};

/// Temporal mobility-network motif analysis.
#[derive(Parser)]
#[command(name = "motifnet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// TOML config file; defaults apply when omitted
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Master seed; re-derives every stage seed
    #[arg(long, value_name = "N")]
    seed: Option<u64>,
    /// Worker threads; defaults to all cores
    #[arg(long, value_name = "N")]
    threads: Option<usize>,
    /// Generate inputs from the [synth] section instead of reading files
    #[arg(long)]
    synth: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run every stage: ingest, census, persistence, conversions,
    /// attributes, global measures, charts, manifest
    Run(CommonArgs),
    /// Generate the synthetic trips and zones CSVs only
    Synth(CommonArgs),
    /// Daily motif census and distribution change tables
    Census(CommonArgs),
    /// Persistence intervals and diagram table
    Persist(CommonArgs),
    /// Day-to-day motif conversion matrices
    Convert(CommonArgs),
    /// Per-type attribute medians and changes
    Attr(CommonArgs),
    /// Daily global network measures
    Global(CommonArgs),
    /// Re-render the SVG charts from existing CSVs
    Report(CommonArgs),
}

impl Command {
    fn args(&self) -> &CommonArgs {
        match self {
            Command::Run(a)
            | Command::Synth(a)
            | Command::Census(a)
            | Command::Persist(a)
            | Command::Convert(a)
            | Command::Attr(a)
            | Command::Global(a)
            | Command::Report(a) => a,
        }
    }
}

fn load_config(args: &CommonArgs) -> RunResult<Config> {
    let mut config = match &args.config {
        Some(path) => Config::load(path).map_err(RunError::Usage)?,
        None => Config::default(),
    };
    if let Some(seed) = args.seed {
        config.apply_master_seed(seed);
    }
    Ok(config)
}

fn dispatch(command: Command) -> RunResult<()> {
    let args = command.args();
    if let Some(threads) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| RunError::Usage(anyhow::anyhow!("cannot set thread count: {e}")))?;
    }
    let out = args.out.clone();
    let use_synth = args.synth;
    match command {
        Command::Run(ref args) => pipeline::cmd_run(load_config(args)?, &out, use_synth),
        Command::Synth(ref args) => pipeline::cmd_synth(load_config(args)?, &out),
        Command::Census(ref args) => {
            pipeline::cmd_stage(load_config(args)?, &out, use_synth, StageKind::Census)
        }
        Command::Persist(ref args) => {
            pipeline::cmd_stage(load_config(args)?, &out, use_synth, StageKind::Persist)
        }
        Command::Convert(ref args) => {
            pipeline::cmd_stage(load_config(args)?, &out, use_synth, StageKind::Convert)
        }
        Command::Attr(ref args) => {
            pipeline::cmd_stage(load_config(args)?, &out, use_synth, StageKind::Attr)
        }
        Command::Global(ref args) => {
            pipeline::cmd_stage(load_config(args)?, &out, use_synth, StageKind::Global)
        }
        Command::Report(_) => pipeline::cmd_report(&out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e.error());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
