use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::Config;

const AFTER_HELP: &str = "\
D(N) counts orbit hits over 0 <= k <= N (N+1 iterates) and subtracts N*Length(W).
Values use the exact syntax a+b*xi, e.g. -1+1*xi or 17/3-4*xi; xi is given as
sqrt(2) or (p + q*sqrt(d)). Windows are unions of half-open intervals: \"[0, 1/3) [-2/3+1*xi, 5-3*xi)\".

Exit codes: 0 success or bounded, 3 unbounded, 4 invalid input,
5 orbit point on a window endpoint (with --strict-boundary), 1 other failures.";

#[derive(Parser, Debug)]
#[command(name = "cpdisc", version, about = "Cut-and-project point sets and their discrepancy", after_help = AFTER_HELP)]
struct Cli {
    /// TOML file with default values; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Worker threads; results do not depend on it
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct SystemArgs {
    /// Irrational slope, e.g. sqrt(2)
    #[arg(long)]
    pub xi: Option<String>,
    /// Starting point of the orbit in [0, 1) [default: 0]
    #[arg(long, allow_hyphen_values = true)]
    pub basepoint: Option<String>,
    /// Window, e.g. "[0, -1+1*xi)"
    #[arg(long)]
    pub window: Option<String>,
    /// Fail with exit 5 when an orbit point lands exactly on an endpoint
    #[arg(long)]
    pub strict_boundary: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the point pattern {k : frac(x + k*xi) in W} for k in [kmin, kmax]
    Generate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        kmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<i64>,
        /// Label each point with the interval it falls in
        #[arg(long)]
        colored: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Discrepancy profile D(N), N <= nmax, as CSV with decade maxima
    Profile {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        nmax: Option<u64>,
        /// Number of log-spaced rows in the CSV [default: 4096]
        #[arg(long)]
        trace_points: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact Kesten/Oren decision with rank report (JSON)
    Decide {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Acceptance domain of a local pattern such as "require 0,2 forbid 1"
    Accept {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        pattern: Option<String>,
        /// With --kmax, also list occurrences in [kmin, kmax]
        #[arg(long, allow_hyphen_values = true)]
        kmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<i64>,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monotone bounded-displacement matching of the hits in [kmin, kmax]
    Witness {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        kmin: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        kmax: Option<i64>,
        /// Lattice density [default: Length(W)]
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized cross-validation of exact against empirical verdicts
    Suite {
        #[arg(long)]
        count: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        nmax: Option<u64>,
        /// Points per bounded case for the matching check; 0 disables it
        #[arg(long)]
        witness_points: Option<usize>,
        /// Growth treated as constant by the empirical verdict [default: 1/20]
        #[arg(long)]
        tolerance: Option<String>,
        /// Also write the per-window report as JSON
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Bad flags or config values; exit 4.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

/// Outcome of a successful run.
pub enum Status {
    Ok,
    Unbounded,
    Failed,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<cpdisc_core::Error>() {
            return match e {
                cpdisc_core::Error::SingularOrbit { .. } => 5,
                _ => 4,
            };
        }
        if let Some(e) = cause.downcast_ref::<commands::FieldError>() {
            return if e.is_singular() { 5 } else { 4 };
        }
        if cause.downcast_ref::<InputError>().is_some() {
            return 4;
        }
    }
    1
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| anyhow::anyhow!("thread pool: {e}"))?;
    }
    match cli.command {
        Command::Generate {
            sys,
            kmin,
            kmax,
            colored,
            out,
        } => commands::generate(&cfg, &sys, kmin, kmax, colored, out),
        Command::Profile {
            sys,
            nmax,
            trace_points,
            out,
        } => commands::profile(&cfg, &sys, nmax, trace_points, out),
        Command::Decide { sys, out } => commands::decide(&cfg, &sys, out),
        Command::Accept {
            sys,
            pattern,
            kmin,
            kmax,
            json,
            out,
        } => commands::accept(&cfg, &sys, pattern, kmin, kmax, json, out),
        Command::Witness {
            sys,
            kmin,
            kmax,
            delta,
            out,
        } => commands::witness(&cfg, &sys, kmin, kmax, delta, out),
        Command::Suite {
            count,
            seed,
            nmax,
            witness_points,
            tolerance,
            json,
        } => commands::suite(&cfg, count, seed, nmax, witness_points, tolerance, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Unbounded) => ExitCode::from(3),
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
