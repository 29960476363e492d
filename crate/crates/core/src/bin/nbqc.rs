use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nbqc::analysis::DEFAULT_FLOOR_THRESHOLD;
use nbqc::cli::{self, ConstructArgs, DEFAULT_SEED};
use nbqc::lifter::{DEFAULT_CYCLE_CAP, DEFAULT_TRIALS_PER_EDGE};
use nbqc::{ConstructionConfig, InitialAssignment};

#[derive(Parser)]
#[command(
    name = "nbqc",
    version,
    about = "Non-binary quasi-cyclic LDPC construction and simulation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a binary base matrix with the greedy ACE search.
    Construct {
        /// Base matrix file: a line "m n" then m rows of 0/1.
        base: PathBuf,
        #[arg(short, long)]
        s: usize,
        #[arg(short, long)]
        q: usize,
        #[arg(short, long, default_value_t = 8)]
        depth: usize,
        #[arg(short, long, default_value_t = DEFAULT_TRIALS_PER_EDGE)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(short, long)]
        out: PathBuf,
        /// Cycles kept per (column, length); 0 for no cap.
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: usize,
        /// Start from the all-1*x^0 lifting instead of a random one.
        #[arg(long)]
        identity_start: bool,
        /// Also write the scalar adjacency section.
        #[arg(long)]
        full: bool,
    },
    /// Report bounds, degree profile, girth and cycle spectrum.
    Analyze {
        /// Base matrix or nbalist file.
        matrix: PathBuf,
        #[arg(short, long, default_value_t = 8)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_CYCLE_CAP)]
        cycle_cap: usize,
        /// Distance bounds below this mark the code as floor-prone.
        #[arg(long, default_value_t = DEFAULT_FLOOR_THRESHOLD)]
        floor_threshold: u128,
    },
    /// Monte-Carlo block error rate over AWGN.
    Simulate {
        /// nbalist file.
        matrix: PathBuf,
        /// TOML simulation config.
        #[arg(short, long)]
        config: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn cap(c: usize) -> Option<usize> {
    (c > 0).then_some(c)
}

fn run(cli: Cli) -> nbqc::Result<()> {
    match cli.command {
        Command::Construct {
            base,
            s,
            q,
            depth,
            trials,
            seed,
            out,
            cycle_cap,
            identity_start,
            full,
        } => {
            let seed = seed.unwrap_or_else(|| {
                println!("no --seed given, using {DEFAULT_SEED}");
                DEFAULT_SEED
            });
            let mut config = ConstructionConfig::new(s, q, depth, seed);
            config.trials_per_edge = trials;
            config.cycle_cap = cap(cycle_cap);
            if identity_start {
                config.init = InitialAssignment::Identity;
            }
            let outcome = cli::construct(&ConstructArgs {
                base,
                out,
                config,
                full,
            })?;
            print!("{}", outcome.summary);
        }
        Command::Analyze {
            matrix,
            depth,
            cycle_cap,
            floor_threshold,
        } => {
            print!(
                "{}",
                cli::analyze(&matrix, depth, cap(cycle_cap), floor_threshold)?
            );
        }
        Command::Simulate {
            matrix,
            config,
            out,
            seed,
        } => {
            print!("{}", cli::simulate(&matrix, &config, &out, seed)?.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
