use std::fs;
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use strikesim::equilibrium::solve_equilibrium;
use strikesim::io::dataset::{self, TABLE1_PRINTED_TOTALS};
use strikesim::io::{self, Format, RunConfig};
use strikesim::scenario::{self, apply_mask, BuiltinScenario};
use strikesim::{simulator, stability, Error, ModelParameters};

// ── CLI ───────────────────────────────────────────────────────────────────────

#[derive(Parser)]
#[command(
    name = "strikesim",
    version,
    about = "Student movement between federal, state and private universities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate the model and write the trajectory as CSV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write every N-th sample (the final sample is always written).
        #[arg(long, default_value = "1")]
        stride: NonZeroUsize,
    },
    /// Solve for the equilibrium.
    Equilibrium {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Jacobian, characteristic polynomial, eigenvalues and verdict.
    Stability {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the built-in strike scenarios.
    Scenario {
        #[arg(long)]
        config: PathBuf,
        /// THEOREM_2_1, THEOREM_2_2, THEOREM_2_3 or MOVEMENT_RESTRICTED.
        #[arg(long)]
        name: String,
        #[arg(long)]
        json: bool,
    },
    /// Private-university openings and strike durations per period.
    Dataset {
        #[arg(long)]
        summary: bool,
    },
}

// ── Errors ───────────────────────────────────────────────────────────────────

/// Exit 1 for bad input, 2 for numerical failure.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Self {
            code: 1,
            message: message.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_numerical() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

// ── Main ─────────────────────────────────────────────────────────────────────

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn format(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn load_config(path: &Path) -> Result<RunConfig, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let (cfg, warnings) = io::parse_config_with_warnings(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

/// Parameters with the config's scenario mask, if any, applied.
fn effective_params(cfg: &RunConfig) -> Result<ModelParameters, Failure> {
    match cfg.scenario {
        Some(s) => Ok(apply_mask(&cfg.params, &s.mask())?),
        None => Ok(cfg.params),
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Simulate {
            config,
            out,
            stride,
        } => {
            let cfg = load_config(&config)?;
            let traj = simulator::simulate(&effective_params(&cfg)?, &cfg.simulation)?;
            let csv = io::write_trajectory_csv(&traj, stride);
            match out {
                Some(path) => fs::write(&path, csv)
                    .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{csv}"),
            }
        }
        Command::Equilibrium { config, json } => {
            let cfg = load_config(&config)?;
            let eq = solve_equilibrium(&effective_params(&cfg)?)?;
            print!("{}", io::render_equilibrium(&eq, format(json)));
            if !eq.unique {
                return Err(Failure {
                    code: 2,
                    message: "equilibrium system is singular".into(),
                });
            }
        }
        Command::Stability { config, json } => {
            let cfg = load_config(&config)?;
            let report = stability::analyze(&effective_params(&cfg)?)?;
            print!("{}", io::render_stability(&report, format(json)));
        }
        Command::Scenario { config, name, json } => {
            let builtin = BuiltinScenario::from_name(&name).ok_or_else(|| {
                let names: Vec<_> = BuiltinScenario::ALL.iter().map(|s| s.name()).collect();
                Failure::input(format!(
                    "unknown scenario `{name}`; expected one of {}",
                    names.join(", ")
                ))
            })?;
            let cfg = load_config(&config)?;
            let report = scenario::run_scenario(&cfg.params, &builtin.mask(), &cfg.simulation)
                .map_err(|e| Failure {
                    code: if e.source.is_numerical() { 2 } else { 1 },
                    message: e.to_string(),
                })?;
            print!("{}", io::render_report(&report, format(json)));
        }
        Command::Dataset { summary } => {
            let records =
                dataset::parse_strike_records(dataset::BUNDLED_TABLE1).map_err(Failure::input)?;
            if !summary {
                println!("period,start_year,end_year,private_universities,strike_days");
            }
            for r in &records {
                if summary {
                    println!(
                        "{:<10} {:>4} private universities {:>4} strike days",
                        r.period_label, r.private_universities, r.strike_days
                    );
                } else {
                    println!(
                        "{},{},{},{},{}",
                        r.period_label,
                        r.start_year,
                        r.end_year,
                        r.private_universities,
                        r.strike_days
                    );
                }
            }
            if summary {
                let t = dataset::totals(&records);
                println!("periods    {}", records.len());
                println!(
                    "total      {:>4} private universities {:>4} strike days",
                    t.private_universities, t.strike_days
                );
                if let Err(e) = dataset::load_table1(dataset::BUNDLED_TABLE1) {
                    eprintln!(
                        "note: printed totals are {} and {}; {e}",
                        TABLE1_PRINTED_TOTALS.private_universities,
                        TABLE1_PRINTED_TOTALS.strike_days
                    );
                }
            }
        }
    }
    Ok(())
}
