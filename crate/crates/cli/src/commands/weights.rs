use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::exact::format_rat;

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// Complex dimension d of the ball.
    #[arg(long)]
    d: Option<u32>,
    /// Weight parameter α ≥ d.
    #[arg(long)]
    alpha: Option<f64>,
    /// Largest total degree to enumerate.
    #[arg(long)]
    degree: Option<i64>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let degree = degree_u32(config::require(args.degree, cfg.degree, "degree")?)?;

    let weight = BergmanWeight::new(d, alpha)?;
    let enumeration = weight.enumeration();
    let count = enumeration.count_up_to_degree(degree)?;
    let mut rows = Vec::with_capacity(count as usize);
    for j in 1..=count {
        let k = enumeration.multi_of(j)?;
        let norm_sq = match weight.monomial_norm_sq_exact(&k)? {
            Some(exact) => format_rat(&exact),
            None => emit::fmt_float(weight.monomial_norm_sq(&k)?),
        };
        rows.push(vec![
            j.to_string(),
            k.to_string(),
            norm_sq,
            emit::fmt_float(weight.basis_coeff(&k)?),
        ]);
    }
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("weights".into())),
        ("alpha", Json::Float(alpha)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
    ]);
    let text = emit::csv_document(
        &["j", "multi_index", "norm_sq", "basis_coeff"],
        &rows,
        &config_json,
    );
    emit::deliver(&text, &args.out)
}
