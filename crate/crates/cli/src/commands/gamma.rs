use std::path::PathBuf;

use oddsphere_core::quantum_metric::gamma;

use crate::config;
use crate::emit::{self, Json};
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    alpha: Option<f64>,
    /// Requested interval width.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let tol = config::resolve(args.tol, cfg.tol, 1e-8);
    let interval = gamma(alpha, tol)?;
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("gamma".into())),
        ("alpha", Json::Float(alpha)),
        ("tol", Json::Float(tol)),
    ]);
    let text = emit::json_line(&Json::obj(vec![
        ("alpha", Json::Float(alpha)),
        ("lo", Json::Float(interval.lo)),
        ("hi", Json::Float(interval.hi)),
        ("width", Json::Float(interval.width())),
        ("config", config_json),
    ]));
    emit::deliver(&text, &args.out)
}
