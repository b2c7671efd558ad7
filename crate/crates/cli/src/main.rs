//! `highgenus`: build many-handle surfaces, measure their topology and
//! geometry, and simulate decoding on the codes they carry.
//!
//! Every command reads an optional TOML config (`--config`), applies flag
//! overrides, and writes CSV tables plus a `<command>.bundle.json` that echoes
//! the normalized config, tool version and complex hashes.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use highgenus::decoding::DecoderKind;

use crate::config::{ExperimentConfig, OUT_DIR_ENV};
use crate::error::{CliError, CliResult, EXIT_CONFIG};

#[derive(Parser, Debug)]
#[command(
    name = "highgenus",
    version,
    about = "High-genus surface code experiments"
)]
struct Cli {
    /// TOML experiment config; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory [default: $HIGHGENUS_OUT_DIR, then .]
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for trial execution; 0 uses all cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build, cut, re-pair and optionally symmetrize a surface.
    Build(BuildArgs),
    /// Check a surface file's structure and report its code size.
    Validate(SurfaceArg),
    /// Primal and dual systoles plus per-handle l-loops.
    Systole(SystoleArgs),
    /// Measured circle growth against the recursion and closed form.
    Growth(GrowthArgs),
    /// Monte Carlo logical failure rates.
    Simulate(SimulateArgs),
    /// Threshold factor product, closed form and walk multiplier.
    Threshold(ThresholdArgs),
    /// Exact walk counts from one root.
    Walks(WalksArgs),
    /// Print the normalized config.
    Config,
}

#[derive(Args, Debug)]
struct SurfaceArg {
    /// Surface file [default: <out-dir>/surface.json]
    surface: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BuildArgs {
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    hole_side: Option<usize>,
    #[arg(long)]
    tube_length: Option<usize>,
    #[arg(long)]
    base_side: Option<usize>,
    #[arg(long)]
    symmetrized: bool,
    #[arg(long)]
    reversed_glue: bool,
    /// Write a flat torus of this side instead.
    #[arg(long)]
    torus: Option<usize>,
    /// Surface file name inside the output directory.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SystoleArgs {
    #[command(flatten)]
    surface: SurfaceArg,
    /// Cross-check with the exhaustive search up to this length.
    #[arg(long)]
    bruteforce_radius: Option<usize>,
}

#[derive(Args, Debug)]
struct GrowthArgs {
    #[command(flatten)]
    surface: SurfaceArg,
    #[arg(long)]
    roots: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
    /// Kink density for the recursion [default: measured]
    #[arg(long)]
    rho: Option<f64>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    /// Surface files [default: <out-dir>/surface.json]
    surfaces: Vec<PathBuf>,
    /// Physical error rates.
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    #[arg(long)]
    trials: Option<u64>,
    /// Decoders: mwpm, greedy, ml.
    #[arg(long, value_delimiter = ',')]
    decoder: Option<Vec<DecoderKind>>,
    /// Write one row per trial.
    #[arg(long)]
    log_trials: bool,
    /// Fit the scaling law across surfaces and rates.
    #[arg(long)]
    fit: bool,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Args, Debug)]
struct ThresholdArgs {
    #[arg(long)]
    l: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<f64>>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    symmetrized: bool,
    /// Surface for the walk multiplier.
    #[arg(long)]
    walk_surface: Option<PathBuf>,
    #[arg(long)]
    walk_root: Option<usize>,
    #[arg(long)]
    walk_r_max: Option<usize>,
}

#[derive(Args, Debug)]
struct WalksArgs {
    #[command(flatten)]
    surface: SurfaceArg,
    #[arg(long)]
    root: Option<usize>,
    #[arg(long)]
    r_max: Option<usize>,
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn apply(cli: &Cli, cfg: &mut ExperimentConfig) {
    set(&mut cfg.seed, cli.seed);
    if cli.out_dir.is_some() {
        cfg.out_dir = cli.out_dir.clone();
    }
    match &cli.command {
        Command::Build(a) => {
            let b = &mut cfg.build;
            set(&mut b.l, a.l);
            set(&mut b.n, a.n);
            for (slot, v) in [
                (&mut b.hole_side, a.hole_side),
                (&mut b.tube_length, a.tube_length),
                (&mut b.base_side, a.base_side),
            ] {
                if v.is_some() {
                    *slot = v;
                }
            }
            b.symmetrized |= a.symmetrized;
            b.reversed_glue |= a.reversed_glue;
            set(&mut b.torus, a.torus);
            set(&mut b.output, a.output.clone());
        }
        Command::Validate(a) => {
            if a.surface.is_some() {
                cfg.surface = a.surface.clone();
            }
        }
        Command::Systole(a) => {
            if a.surface.surface.is_some() {
                cfg.surface = a.surface.surface.clone();
            }
            set(&mut cfg.systole.bruteforce_radius, a.bruteforce_radius);
        }
        Command::Growth(a) => {
            if a.surface.surface.is_some() {
                cfg.surface = a.surface.surface.clone();
            }
            set(&mut cfg.growth.roots, a.roots);
            set(&mut cfg.growth.r_max, a.r_max);
            if a.rho.is_some() {
                cfg.growth.rho = a.rho;
            }
        }
        Command::Simulate(a) => {
            let s = &mut cfg.simulate;
            if !a.surfaces.is_empty() {
                s.surfaces = a.surfaces.clone();
            }
            set(&mut s.p, a.p.clone());
            set(&mut s.trials, a.trials);
            set(&mut s.decoders, a.decoder.clone());
            s.log_trials |= a.log_trials;
            s.fit |= a.fit;
            set(&mut s.beta, a.beta);
        }
        Command::Threshold(a) => {
            let t = &mut cfg.threshold;
            set(&mut t.l, a.l);
            set(&mut t.n, a.n.clone());
            set(&mut t.beta, a.beta);
            set(&mut t.alpha, a.alpha);
            t.symmetrized |= a.symmetrized;
            if a.walk_surface.is_some() {
                t.walk_surface = a.walk_surface.clone();
            }
            set(&mut t.walk_root, a.walk_root);
            set(&mut t.walk_r_max, a.walk_r_max);
        }
        Command::Walks(a) => {
            if a.surface.surface.is_some() {
                cfg.surface = a.surface.surface.clone();
            }
            set(&mut cfg.walks.root, a.root);
            set(&mut cfg.walks.r_max, a.r_max);
        }
        Command::Config => {}
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    apply(&cli, &mut cfg);
    let env_dir = std::env::var_os(OUT_DIR_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    cfg.normalize(env_dir)?;
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    }
    match cli.command {
        Command::Build(_) => commands::build(&cfg),
        Command::Validate(_) => commands::validate(&cfg),
        Command::Systole(_) => commands::systole(&cfg),
        Command::Growth(_) => commands::growth(&cfg),
        Command::Simulate(_) => commands::simulate(&cfg),
        Command::Threshold(_) => commands::threshold(&cfg),
        Command::Walks(_) => commands::walks(&cfg),
        Command::Config => {
            print!("{}", cfg.to_toml());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
