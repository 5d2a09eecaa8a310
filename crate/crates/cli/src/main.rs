use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permalgebra::gamma::{build_gamma, export_dot};
use permalgebra::harness::{self, Method};
use permalgebra::{BipartiteGraph, Error};

// 0 agreement, 1 counting mismatch (from the report), 2 usage or input error.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "permalgebra", version, about = "Count perfect matchings through the generating graph and cross-check them against permanent oracles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count one graph file with every applicable method and compare.
    Verify {
        file: PathBuf,
        /// Include per-method elapsed times in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Compare all counting methods over many graphs.
    Sweep(SweepArgs),
    /// Emit the generating graph as DOT or as structure statistics.
    Gamma {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "stats", required_unless_present = "stats")]
        dot: bool,
        #[arg(long)]
        stats: bool,
    },
    /// Print the canonic factorization and path of a permutation in cycle notation.
    Factorize {
        #[arg(long)]
        n: usize,
        cycles: String,
    },
    /// Generate a random graph file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        density: f64,
        #[arg(long)]
        seed: u64,
    },
    /// Count the perfect matchings of a graph file with one method.
    Count {
        #[arg(long, value_enum)]
        method: MethodArg,
        file: PathBuf,
    },
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    n: usize,
    /// Every graph on n + n vertices (n <= 4).
    #[arg(long, conflicts_with_all = ["trials", "seed"], required_unless_present = "trials")]
    exhaustive: bool,
    #[arg(long, requires = "seed")]
    trials: Option<u64>,
    #[arg(long, requires = "trials")]
    seed: Option<u64>,
    /// Edge probability for random sweeps.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Cvmp,
    Ryser,
    Brute,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Cvmp => Method::Cvmp,
            MethodArg::Ryser => Method::Ryser,
            MethodArg::Brute => Method::Brute,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Io(PathBuf, std::io::Error),
    InFile(PathBuf, Error),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::InFile(path, e) => write!(f, "{}: {e}", path.display()),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

fn read_graph(path: &Path) -> Result<BipartiteGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
    BipartiteGraph::parse(&text).map_err(|e| Failure::InFile(path.to_path_buf(), e))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify { file, timings } => {
            let g = read_graph(&file)?;
            let report = harness::verify_graph(&g, timings)?;
            println!("{}", report.to_json());
            Ok(report.exit_code() as u8)
        }
        Command::Sweep(args) => {
            let report = match (args.exhaustive, args.trials, args.seed) {
                (true, _, _) => harness::sweep_exhaustive(args.n, args.timings)?,
                (false, Some(trials), Some(seed)) => {
                    harness::sweep_random(args.n, trials, seed, args.density, args.timings)?
                }
                _ => unreachable!("clap enforces --exhaustive or --trials with --seed"),
            };
            if !report.agreement {
                eprintln!("{} mismatching instance(s)", report.mismatches.len());
            }
            println!("{}", report.to_json());
            Ok(report.exit_code() as u8)
        }
        Command::Gamma { n, dot, .. } => {
            let gamma = build_gamma(n)?;
            if dot {
                print!("{}", export_dot(&gamma)?);
            } else {
                println!("{}", harness::gamma_diagnostics(&gamma)?.to_json());
            }
            Ok(0)
        }
        Command::Factorize { n, cycles } => {
            print!("{}", harness::factorize(&cycles, n)?);
            Ok(0)
        }
        Command::Gen { n, density, seed } => {
            print!("{}", harness::generate_graph(n, density, seed)?.serialize());
            Ok(0)
        }
        Command::Count { method, file } => {
            let g = read_graph(&file)?;
            println!("{}", harness::count_with(method.into(), &g)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
