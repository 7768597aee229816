//! `dergo`: ergotropy, daemonic gain, discord and concurrence from the
//! command line, plus seeded sweeps and the verification suites.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use daemonic_core::correlations::{concurrence, discord_with, DiscordDirection};
use daemonic_core::daemonic::{
    daemonic_ergotropy, daemonic_gain, measurement_from_angles, BlochAngles,
};
use daemonic_core::ergotropy::{ergotropy, thermal_ergotropy, HamiltonianFile, HamiltonianSpec};
use daemonic_core::sweep::{
    emit, format_sig12, run_sweep, summarize, verify, Ensemble, OutputFormat, Suite, SweepConfig,
    VerifyOptions,
};
use daemonic_core::{BipartiteState, Execution, OptimizerConfig, Result};

#[derive(Parser)]
#[command(
    name = "dergo",
    version,
    about = "Daemonic ergotropy and quantum correlations of bipartite states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ergotropy W and thermal bound W_th of the reduced system state.
    Ergotropy {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
    },
    /// Daemonic ergotropy at a fixed measurement, or the optimized gain.
    Daemonic {
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        hamiltonian: Option<PathBuf>,
        #[arg(long, requires = "phi")]
        theta: Option<f64>,
        #[arg(long, requires = "theta")]
        phi: Option<f64>,
    },
    /// Quantum discord with the given party measured.
    Discord {
        #[arg(long)]
        state: PathBuf,
        #[arg(long, value_enum)]
        direction: Direction,
    },
    /// Two-qubit concurrence.
    Concurrence {
        #[arg(long)]
        state: PathBuf,
    },
    /// Monte Carlo sweep over random two-qubit states.
    Sweep {
        /// Sets the default state count: 3000 (discord) or 10000 (concurrence).
        #[arg(long, value_enum, default_value = "discord")]
        plane: Plane,
        #[arg(long)]
        n_states: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        ensemble: Option<EnsembleArg>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// JSON file mirroring the sweep configuration; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Runs a verification suite; exits with status 1 if any property fails.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    S,
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum Plane {
    Discord,
    Concurrence,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnsembleArg {
    Mixed,
    Pure,
    Xstate,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn read_state(path: &Path) -> Result<BipartiteState> {
    BipartiteState::from_json(&std::fs::read_to_string(path)?)
}

fn read_hamiltonian(path: Option<&Path>) -> Result<HamiltonianSpec> {
    match path {
        None => Ok(HamiltonianSpec::neg_sigma_z()),
        Some(p) => {
            let file: HamiltonianFile = serde_json::from_str(&std::fs::read_to_string(p)?)?;
            file.to_spec()
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Ergotropy { state, hamiltonian } => {
            let st = read_state(&state)?;
            let h = read_hamiltonian(hamiltonian.as_deref())?;
            let rho_s = st.reduced_system();
            println!("ergotropy {}", format_sig12(ergotropy(&rho_s, &h)?));
            println!("thermal {}", format_sig12(thermal_ergotropy(&rho_s, &h)?));
        }
        Command::Daemonic {
            state,
            hamiltonian,
            theta,
            phi,
        } => {
            let st = read_state(&state)?;
            let h = read_hamiltonian(hamiltonian.as_deref())?;
            match (theta, phi) {
                (Some(t), Some(p)) => {
                    let m = measurement_from_angles(BlochAngles::new(t, p)?);
                    println!(
                        "daemonic {}",
                        format_sig12(daemonic_ergotropy(&st, &h, &m)?)
                    );
                }
                _ => {
                    let g = daemonic_gain(&st, &h, &OptimizerConfig::default())?;
                    println!("ergotropy {}", format_sig12(g.plain_ergotropy));
                    println!("daemonic {}", format_sig12(g.daemonic_ergotropy));
                    println!("gain {}", format_sig12(g.gain));
                    println!("theta_opt {}", format_sig12(g.best_measurement.theta));
                    println!("phi_opt {}", format_sig12(g.best_measurement.phi));
                }
            }
        }
        Command::Discord { state, direction } => {
            let st = read_state(&state)?;
            let dir = match direction {
                Direction::S => DiscordDirection::MeasureSystem,
                Direction::A => DiscordDirection::MeasureAncilla,
            };
            let d = discord_with(&st, dir, &OptimizerConfig::default(), Execution::default())?;
            println!("discord {}", format_sig12(d.discord));
            println!("mutual_information {}", format_sig12(d.mutual_information));
            println!(
                "classical_information {}",
                format_sig12(d.classical_information)
            );
        }
        Command::Concurrence { state } => {
            println!(
                "concurrence {}",
                format_sig12(concurrence(&read_state(&state)?)?)
            );
        }
        Command::Sweep {
            plane,
            n_states,
            seed,
            ensemble,
            out,
            format,
            config,
            workers,
        } => {
            let mut cfg = match &config {
                Some(p) => SweepConfig::from_json(&std::fs::read_to_string(p)?)?,
                None => SweepConfig {
                    n_states: match plane {
                        Plane::Discord => 3000,
                        Plane::Concurrence => 10_000,
                    },
                    ..SweepConfig::default()
                },
            };
            if let Some(n) = n_states {
                cfg.n_states = n;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(e) = ensemble {
                cfg.ensemble = match e {
                    EnsembleArg::Mixed => Ensemble::Mixed,
                    EnsembleArg::Pure => Ensemble::Pure,
                    EnsembleArg::Xstate => Ensemble::Xstate,
                };
            }
            if let Some(w) = workers {
                cfg.workers = w;
            }
            let records = run_sweep(&cfg)?;
            let format = match format {
                Format::Csv => OutputFormat::Csv,
                Format::Json => OutputFormat::Json,
            };
            emit(&records, format, &out)?;
            let s = summarize(&records, cfg.tol)?;
            let (violations, worst, name) = match plane {
                Plane::Discord => (s.discord_violations, s.worst_discord_slack, "h(1 - D/2)"),
                Plane::Concurrence => (
                    s.concurrence_violations,
                    s.worst_concurrence_slack,
                    "1 - sqrt(1 - C^2)",
                ),
            };
            eprintln!(
                "{} states written to {}; bound {name}: {violations} violations, worst slack {}; max gain {}",
                s.n_states,
                out.display(),
                format_sig12(worst),
                format_sig12(s.max_gain)
            );
            if s.gain_envelope_exceeded(cfg.tol) {
                eprintln!("warning: max gain exceeds 1");
            }
        }
        Command::Verify { suite, n, seed } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut opts = VerifyOptions {
                n,
                ..VerifyOptions::default()
            };
            if let Some(s) = seed {
                opts.seed = s;
            }
            let mut all = true;
            for s in suites {
                let report = verify(s, &opts)?;
                println!("{report}");
                all &= report.passed();
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
