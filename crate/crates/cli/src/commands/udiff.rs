use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::toeplitz::u_conjugation_difference;

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::symbol_expr::parse_symbol;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// Symbol expression compared across the two weights.
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    d: Option<u32>,
    /// The larger weight n > alpha-low.
    #[arg(long)]
    n: f64,
    /// The smaller weight; defaults to d (the classical Bergman weight).
    #[arg(long)]
    alpha_low: Option<f64>,
    /// Truncation degree.
    #[arg(long)]
    degree: Option<i64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alpha_low = args.alpha_low.unwrap_or(d as f64);
    let degree = degree_u32(config::require(args.degree, cfg.degree, "degree")?)?;

    let symbol =
        parse_symbol(&args.symbol, d).map_err(|e| CliError::Input(e.to_string()))?;
    let low = BergmanWeight::new(d, alpha_low)?;
    let high = BergmanWeight::new(d, args.n)?;
    let rows = u_conjugation_difference(&symbol, &high, &low, degree)?;

    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("u-diff".into())),
        ("alpha_low", Json::Float(alpha_low)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("n", Json::Float(args.n)),
        ("symbol", Json::Str(args.symbol.clone())),
    ]);
    let out_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.degree.to_string(), emit::fmt_float(r.max_abs)])
        .collect();
    let text = emit::csv_document(&["degree", "max_abs"], &out_rows, &config_json);
    emit::deliver(&text, &args.out)
}
