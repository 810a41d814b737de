use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tomoinfo::commands::{self, AnalyzeSource, ReportJson};
use tomoinfo::formats::{read_json, to_json, AnalyzeInput, DesignFile, ExperimentFile, ProbabilitiesFile};
use tomoinfo::sweep;
use tomoinfo::CliError;
use tomoinfo_core::haar_random_design;

#[derive(Parser, Debug)]
#[command(name = "tomoinfo", version, about = "Information content of tomography measurement designs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write the unbiased-basis design for prime n.
    Mub {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report det Γ, information loss and bounds for a design or table.
    Analyze {
        /// Design or transition-table JSON.
        #[arg(long = "in", required_unless_present = "two_value")]
        input: Option<PathBuf>,
        /// Analyze the synthetic two-value table instead; `auto` means c = 1/n².
        #[arg(long, requires = "n", conflicts_with = "input")]
        two_value: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// Vector dropped from every basis, 1..n (default n).
        #[arg(long)]
        drop_index: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form spectrum of the two-value reduced matrix next to numerics.
    ClosedForm {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Perturb the unbiased design and report information loss per (eps, seed) as CSV.
    PerturbSweep {
        #[arg(long)]
        n: usize,
        #[arg(long, required = true, allow_hyphen_values = true)]
        eps: Vec<f64>,
        #[arg(long, required = true)]
        seed: Vec<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Linear-inversion state estimate from per-basis outcome probabilities.
    Reconstruct {
        /// Design JSON.
        #[arg(long = "in")]
        input: PathBuf,
        /// Probabilities JSON.
        #[arg(long)]
        probs: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pointwise and average information of a discrete experiment.
    Lindley {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "2")]
        log_base: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hill-climb ½·ln det Γ from a design file or a random design.
    Optimize {
        #[arg(long = "in", conflicts_with = "n")]
        input: Option<PathBuf>,
        /// Start from a Haar-random design of this dimension.
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        steps: usize,
        #[arg(long, default_value_t = 0.1)]
        step_size: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Mub { n, out } => {
            let m = commands::mub(n)?;
            emit(out.as_deref(), &to_json(&m.design))?;
            eprintln!("max unbiasedness deviation: {:e}", m.deviation);
        }
        Command::Analyze { input, two_value, n, drop_index, out } => {
            let source = match (input, two_value) {
                (Some(path), _) => AnalyzeSource::File(read_json::<AnalyzeInput>(&path)?),
                (None, Some(c)) => {
                    let c = match c.as_str() {
                        "auto" => None,
                        s => Some(s.parse::<f64>().map_err(|_| {
                            CliError::Input(format!("--two-value must be a number or auto, got {s}"))
                        })?),
                    };
                    AnalyzeSource::TwoValue { n: n.expect("clap enforces --n"), c }
                }
                (None, None) => unreachable!("clap enforces --in or --two-value"),
            };
            let report = commands::analyze(source, drop_index)?;
            emit(out.as_deref(), &to_json(&ReportJson::from(&report)))?;
            if report.singular {
                return Err(CliError::Degenerate(format!(
                    "incomplete design: det Γ / det Γ₀ = {:e}",
                    report.vd
                )));
            }
        }
        Command::ClosedForm { n, c, out } => {
            emit(out.as_deref(), &to_json(&commands::closed_form(n, c)?))?;
        }
        Command::PerturbSweep { n, eps, seed, out } => {
            commands::check_dimension(n)?;
            let rows = sweep::run_sweep(n, &eps, &seed)?;
            match out.as_deref() {
                Some(path) => {
                    let file = fs::File::create(path)
                        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
                    sweep::write_csv(&rows, io::BufWriter::new(file))?;
                }
                None => sweep::write_csv(&rows, io::stdout().lock())?,
            }
            let medians = sweep::median_loss(&rows);
            for (e, m) in &medians {
                eprintln!("eps {e:e}: median infoLossNats {m:e}");
            }
            eprintln!("median loss monotone in eps: {}", sweep::is_monotone(&medians));
        }
        Command::Reconstruct { input, probs, out } => {
            let design = read_json::<DesignFile>(&input)?.to_design()?;
            let p: ProbabilitiesFile = read_json(&probs)?;
            let rho = commands::reconstruct(&design, &p.probabilities)?;
            emit(out.as_deref(), &to_json(&rho))?;
            eprintln!("round-trip residual: {:e}", rho.residual);
        }
        Command::Lindley { input, log_base, out } => {
            let base = commands::parse_log_base(&log_base)?;
            let file: ExperimentFile = read_json(&input)?;
            emit(out.as_deref(), &to_json(&commands::lindley(file, base)?))?;
        }
        Command::Optimize { input, n, seed, steps, step_size, out } => {
            let start = match (input, n) {
                (Some(path), _) => read_json::<DesignFile>(&path)?.to_design()?,
                (None, Some(n)) => {
                    commands::check_dimension(n)?;
                    haar_random_design(n, seed)?
                }
                (None, None) => unreachable!("clap enforces --in or --n"),
            };
            let result = commands::optimize(&start, steps, step_size, seed)?;
            emit(out.as_deref(), &to_json(&result))?;
            eprintln!(
                "info {:.12} -> {:.12} (maximum {:.12}), {} accepted",
                result.initial_info, result.final_info, result.max_info, result.accepted
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
