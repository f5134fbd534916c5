//! Batch front door for the oddsphere toolkit.
//!
//! Exit codes: 0 on success, 2 on input errors (one-line diagnostic on
//! stderr), 1 on internal invariant violations — including a failing
//! lemma-check, which a correct build can never produce.

mod commands;
mod config;
mod emit;
mod states;
mod symbol_expr;

use clap::Parser;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl From<oddsphere_core::Error> for CliError {
    fn from(e: oddsphere_core::Error) -> Self {
        match e {
            oddsphere_core::Error::Input(m) => CliError::Input(format!("input error: {m}")),
            oddsphere_core::Error::Singularity(m) => CliError::Input(format!("singularity: {m}")),
            oddsphere_core::Error::Internal(m) => CliError::Internal(format!("internal error: {m}")),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "oddsphere",
    version,
    about = "Toeplitz truncations, harmonic splittings and quantum-metric experiments on the unit ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand)]
enum Command {
    /// Monomial norms and basis coefficients of a weight (CSV).
    Weights(commands::weights::Args),
    /// Truncated Toeplitz matrix of a polynomial symbol.
    Toeplitz(commands::toeplitz::Args),
    /// Harmonic extension of real polynomial boundary data.
    HarmonicExtend(commands::harmonic::Args),
    /// Certified interval for ζ(α+2) − 1.
    Gamma(commands::gamma::Args),
    /// Randomized verification of the norm bound ‖K‖ ≤ γ_α L̃(K).
    LemmaCheck(commands::lemma::Args),
    /// State-distance LP between two states.
    Rho(commands::rho::Args),
    /// Convergence table: Hausdorff LP estimates against 2γ_α (CSV).
    Qgh(commands::qgh::Args),
    /// Truncated kernel expansion against the closed form.
    KernelCheck(commands::kernel::Args),
    /// Per-degree decay of commutator entries (CSV).
    CommutatorDecay(commands::commutator::Args),
    /// Per-degree decay of the weight-comparison difference (CSV).
    UDiff(commands::udiff::Args),
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Weights(a) => commands::weights::run(a),
        Command::Toeplitz(a) => commands::toeplitz::run(a),
        Command::HarmonicExtend(a) => commands::harmonic::run(a),
        Command::Gamma(a) => commands::gamma::run(a),
        Command::LemmaCheck(a) => commands::lemma::run(a),
        Command::Rho(a) => commands::rho::run(a),
        Command::Qgh(a) => commands::qgh::run(a),
        Command::KernelCheck(a) => commands::kernel::run(a),
        Command::CommutatorDecay(a) => commands::commutator::run(a),
        Command::UDiff(a) => commands::udiff::run(a),
    }
}

fn main() -> std::process::ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return std::process::ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(CliError::Input(msg)) => {
            eprintln!("{msg}");
            std::process::ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("{msg}");
            std::process::ExitCode::from(1)
        }
    }
}
