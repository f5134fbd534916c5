use std::path::PathBuf;

use oddsphere_core::quantum_metric::lemma_bound_check;

use crate::config;
use crate::emit::{self, Json};
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Support block size: random operators live on indices 1..=support.
    #[arg(long)]
    support: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let trials = config::resolve(args.trials, cfg.trials, 1000);
    let seed = config::resolve(args.seed, cfg.seed, 0);
    let support = config::resolve(args.support, cfg.support, 20);

    let report = lemma_bound_check(alpha, trials, seed, support)?;
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("lemma-check".into())),
        ("alpha", Json::Float(alpha)),
        ("seed", Json::UInt(seed)),
        ("support", Json::UInt(support)),
        ("trials", Json::UInt(trials)),
    ]);
    let text = emit::json_line(&Json::obj(vec![
        ("alpha", Json::Float(alpha)),
        ("max_ratio", Json::Float(report.max_ratio)),
        ("gamma_lo", Json::Float(report.gamma_bound.lo)),
        ("gamma_hi", Json::Float(report.gamma_bound.hi)),
        ("schur_chain_ok", Json::Bool(report.schur_chain_ok)),
        ("pass", Json::Bool(report.pass)),
        ("config", config_json),
    ]));
    emit::deliver(&text, &args.out)?;
    if !report.pass {
        // The bound is a theorem; a violation is a defect in this build.
        return Err(CliError::Internal(format!(
            "norm bound violated: max ratio {} exceeds gamma {}",
            report.max_ratio, report.gamma_bound.hi
        )));
    }
    Ok(())
}
