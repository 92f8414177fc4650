use anyhow::Result;
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;

/// Secrecy gains, theta series and coset schemes of binary codes.
#[derive(Parser, Debug)]
#[command(name = "secgain", version)]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parameters, FSD verdict and distance invariance of a code file.
    Analyze {
        code: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Weight enumerator of a code file.
    Enumerator {
        code: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Secrecy report (JSON) with optional curve, Gleason form and optimality conditions.
    Secrecy {
        code: PathBuf,
        /// Write the curve (tau in dB, Xi) as CSV to this file; `-` prints only the CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
        #[arg(long, default_value_t = -10.0, allow_hyphen_values = true)]
        db_min: f64,
        #[arg(long, default_value_t = 10.0, allow_hyphen_values = true)]
        db_max: f64,
        #[arg(long, default_value_t = 201)]
        points: usize,
        #[arg(long)]
        gleason: bool,
        /// Sufficient-condition certificate and derivative sign analysis.
        #[arg(long)]
        conditions: bool,
    },
    /// Gains of every corpus entry against the expected values.
    Table {
        corpus: PathBuf,
        #[arg(long)]
        csv: bool,
    },
    /// Rank all rate-1/2 tail-biting codes of memory <= m at length L.
    Scan {
        #[arg(short, long)]
        memory: usize,
        #[arg(short = 'L', long)]
        length: usize,
        #[arg(long, value_enum, default_value_t = Rank::Gain)]
        rank: Rank,
        /// Keep only the best rows.
        #[arg(long)]
        top: Option<usize>,
    },
    /// Monte Carlo estimate of the eavesdropper's correct-decision rate.
    Simulate {
        scheme: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<f64>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Theta series coefficients (`--order`, in half-units) or a value at i tau.
    Theta {
        code: PathBuf,
        #[arg(long, conflicts_with = "tau")]
        order: Option<usize>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Rank {
    Gain,
    Score,
}

fn configure_threads() -> Result<()> {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("SECGAIN_THREADS") {
        let n: usize = v.parse().map_err(|_| anyhow::anyhow!("SECGAIN_THREADS must be a positive integer, got {v:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let parallel = !cli.sequential && secgain::par::DEFAULT_PARALLEL;
    let mut out = std::io::stdout().lock();
    match cli.command {
        Command::Analyze { code, json } => commands::analyze(&mut out, &code, json, parallel),
        Command::Enumerator { code, json } => commands::enumerator(&mut out, &code, json, parallel),
        Command::Secrecy { code, curve, db_min, db_max, points, gleason, conditions } => {
            let curve = curve.map(|path| commands::CurveArgs { path, db_min, db_max, points });
            commands::secrecy(&mut out, &code, curve, gleason, conditions, parallel)
        }
        Command::Table { corpus, csv } => commands::table(&mut out, &corpus, csv, parallel),
        Command::Scan { memory, length, rank, top } => {
            let rank = match rank {
                Rank::Gain => secgain::convcode::ScanRanking::Gain,
                Rank::Score => secgain::convcode::ScanRanking::Score,
            };
            commands::scan(&mut out, memory, length, rank, top, parallel)
        }
        Command::Simulate { scheme, sigma, trials, seed } => {
            commands::simulate(&mut out, &scheme, &sigma, trials, seed, parallel)
        }
        Command::Theta { code, order, tau, json } => commands::theta(&mut out, &code, order, tau, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
