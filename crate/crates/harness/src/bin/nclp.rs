use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nclp_core::{decompose, Element, Exponent, Isometry, Jordan, Json, Tolerances};
use nclp_harness::{generate_instance, parse_grid, run_suite, RunReport, Selection, SuiteConfig};

/// Exit codes: 0 pass, 1 property failure or rejected input, 2 usage, config or I/O error.
#[derive(Parser)]
#[command(name = "nclp", version, about = "Noncommutative L^p isometry toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run property suites and write a JSON report.
    Run {
        /// Suite name or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Comma-separated exponents, `inf` for infinity.
        #[arg(long, default_value = "1,1.5,3,4,inf")]
        p: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        /// Instances per suite (per exponent for roundtrip).
        #[arg(long, default_value_t = 50)]
        n: usize,
        /// Equality tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Certification tolerance on the dense-map residual.
        #[arg(long, default_value_t = 1e-7)]
        cert_tol: f64,
        /// Replay the single instance with this seed (from a report's worst_seed).
        #[arg(long)]
        instance: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose a raw isometry into a unitary and a Jordan map.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize the isometry of a Jordan map, a unitary and an exponent.
    Synth {
        #[arg(long)]
        jordan: PathBuf,
        #[arg(long)]
        unitary: PathBuf,
        #[arg(long)]
        p: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the random instance for a seed.
    Generate {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "1,1.5,3,4,inf")]
        p: String,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 3)]
        max_blocks: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    /// Property failure or rejected input.
    Rejected(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Usage(_) => 2,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn config(seed: u64, p: &str, max_dim: usize, max_blocks: usize, n: usize, tol: Tolerances<f64>) -> Result<SuiteConfig, Failure> {
    let config = SuiteConfig {
        seed,
        p_grid: parse_grid(p).map_err(usage)?,
        max_blocks,
        max_dim,
        n_instances: n,
        tolerances: tol,
    };
    config.validate().map_err(usage)?;
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run {
            suite,
            seed,
            p,
            max_dim,
            max_blocks,
            n,
            tol,
            cert_tol,
            instance,
            out,
        } => {
            let selection: Selection = suite.parse().map_err(usage)?;
            let tolerances = Tolerances {
                eq: tol,
                cert: cert_tol,
            };
            let config = config(seed, &p, max_dim, max_blocks, n, tolerances)?;
            let mut reports = Vec::new();
            for s in selection.suites() {
                let report = match instance {
                    Some(i) => s.replay(&config, i),
                    None => run_suite(s, &config),
                }
                .map_err(usage)?;
                println!("{}", report.line());
                if let Some(f) = &report.first_failure {
                    println!("  first failure: {f}");
                }
                reports.push(report);
            }
            let report = RunReport::new(config.summary(), reports);
            if let Some(path) = &out {
                emit(Some(path), &report.to_json())?;
            }
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Rejected("one or more suites failed".into()))
            }
        }
        Command::Decompose { input, out } => {
            let t = Isometry::from_json(&read(&input)?).map_err(usage)?;
            let d = decompose(&t, &Tolerances::default()).map_err(|e| Failure::Rejected(e.to_string()))?;
            eprintln!("certified, residual {:.3e}", d.residual);
            emit(out.as_deref(), &d.to_json())
        }
        Command::Synth {
            jordan,
            unitary,
            p,
            out,
        } => {
            let j = Jordan::from_json(&read(&jordan)?).map_err(usage)?;
            let w = Element::from_json(&read(&unitary)?).map_err(usage)?;
            let p: Exponent<f64> = p.parse().map_err(usage)?;
            let t = Isometry::synthesize(&j, &w, p, &Tolerances::default())
                .map_err(|e| Failure::Rejected(e.to_string()))?;
            emit(out.as_deref(), &t.to_json())
        }
        Command::Generate {
            seed,
            p,
            max_dim,
            max_blocks,
            out,
        } => {
            let config = config(seed, &p, max_dim, max_blocks, 1, Tolerances::default())?;
            emit(out.as_deref(), &generate_instance(&config, seed).to_json())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Rejected(m) => eprintln!("rejected: {m}"),
                Failure::Usage(m) => eprintln!("error: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
