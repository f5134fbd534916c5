use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::exact::format_rat;
use oddsphere_core::toeplitz::{commutator_decay, commutator_exact};

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::symbol_expr::parse_symbol;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// First symbol expression.
    #[arg(long)]
    phi: String,
    /// Second symbol expression.
    #[arg(long)]
    psi: String,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Truncation degree D; reported rows stop at D − deg φ − deg ψ.
    #[arg(long)]
    degree: Option<i64>,
    /// Exact commutator arithmetic (integer α); adds a max |entry|² column.
    #[arg(long)]
    exact: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let degree = degree_u32(config::require(args.degree, cfg.degree, "degree")?)?;
    let exact = args.exact || cfg.exact.unwrap_or(false);

    let phi = parse_symbol(&args.phi, d).map_err(|e| CliError::Input(e.to_string()))?;
    let psi = parse_symbol(&args.psi, d).map_err(|e| CliError::Input(e.to_string()))?;
    let weight = BergmanWeight::new(d, alpha)?;

    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("commutator-decay".into())),
        ("alpha", Json::Float(alpha)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("exact", Json::Bool(exact)),
        ("phi", Json::Str(args.phi.clone())),
        ("psi", Json::Str(args.psi.clone())),
    ]);

    let text = if exact {
        let (matrix, rows) = commutator_exact(&weight, &phi, &psi, degree)?;
        let enumeration = weight.enumeration();
        let mut out_rows = Vec::with_capacity(rows.len());
        for row in &rows {
            // Exact squared modulus of the per-degree maximum entry.
            let lo = if row.degree == 0 {
                0
            } else {
                enumeration.count_up_to_degree(row.degree - 1)? as usize
            };
            let hi = enumeration.count_up_to_degree(row.degree)? as usize;
            let keep = rows.len();
            let keep_cols = enumeration.count_up_to_degree(keep as u32 - 1)? as usize;
            let mut best = oddsphere_core::exact::rat_int(0);
            for r in lo..hi {
                for c in 0..keep_cols.min(matrix.dim()) {
                    let sq = matrix.entry(r, c).abs_sq();
                    if sq > best {
                        best = sq;
                    }
                }
            }
            out_rows.push(vec![
                row.degree.to_string(),
                emit::fmt_float(row.max_abs),
                format_rat(&best),
            ]);
        }
        emit::csv_document(&["degree", "max_abs", "max_abs_sq"], &out_rows, &config_json)
    } else {
        let rows = commutator_decay(&weight, &phi, &psi, degree)?;
        let out_rows: Vec<Vec<String>> = rows
            .iter()
            .map(|r| vec![r.degree.to_string(), emit::fmt_float(r.max_abs)])
            .collect();
        emit::csv_document(&["degree", "max_abs"], &out_rows, &config_json)
    };
    emit::deliver(&text, &args.out)
}
