use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::exact::format_rat;
use oddsphere_core::toeplitz::{ExactToeplitz, ToeplitzMatrix};

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::symbol_expr::parse_symbol;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// Symbol expression, e.g. "z1*zb1" or "(1/2)*z1^2 + zb1".
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Truncation degree D.
    #[arg(long)]
    degree: Option<i64>,
    /// Exact entry arithmetic (integer α only); CSV gains an |entry|² column.
    #[arg(long)]
    exact: bool,
    /// Output format: json (default) or csv entry list.
    #[arg(long)]
    format: Option<String>,
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
    let format = args
        .format
        .or(cfg.format)
        .unwrap_or_else(|| "json".to_string());

    let symbol =
        parse_symbol(&args.symbol, d).map_err(|e| CliError::Input(e.to_string()))?;
    let weight = BergmanWeight::new(d, alpha)?;
    let float = ToeplitzMatrix::build(&weight, &symbol, degree)?;
    let exact_matrix = if exact {
        Some(ExactToeplitz::build(&weight, &symbol, degree)?)
    } else {
        None
    };
    let m = float.dim();
    let norm = float.norm_interval();

    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("toeplitz".into())),
        ("alpha", Json::Float(alpha)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("exact", Json::Bool(exact)),
        ("format", Json::Str(format.clone())),
        ("symbol", Json::Str(args.symbol.clone())),
    ]);

    let entry = |r: usize, c: usize| match &exact_matrix {
        Some(e) => e.entry(r, c).to_c64(),
        None => float.entries()[(r, c)],
    };

    let text = match format.as_str() {
        "json" => {
            let mut re = Vec::with_capacity(m * m);
            let mut im = Vec::with_capacity(m * m);
            for r in 0..m {
                for c in 0..m {
                    let v = entry(r, c);
                    re.push(Json::Float(v.re));
                    im.push(Json::Float(v.im));
                }
            }
            emit::json_line(&Json::obj(vec![
                ("m", Json::UInt(m as u64)),
                ("re", Json::Arr(re)),
                ("im", Json::Arr(im)),
                (
                    "norm_interval",
                    Json::obj(vec![
                        ("lo", Json::Float(norm.lo)),
                        ("hi", Json::Float(norm.hi)),
                    ]),
                ),
                ("exact", Json::Bool(exact)),
                ("config", config_json),
            ]))
        }
        "csv" => {
            let mut rows = Vec::new();
            for r in 0..m {
                for c in 0..m {
                    let v = entry(r, c);
                    let mut row = vec![
                        r.to_string(),
                        c.to_string(),
                        emit::fmt_float(v.re),
                        emit::fmt_float(v.im),
                    ];
                    if let Some(e) = &exact_matrix {
                        row.push(format_rat(&e.entry(r, c).abs_sq()));
                    }
                    rows.push(row);
                }
            }
            let header: &[&str] = if exact {
                &["row", "col", "re", "im", "abs_sq"]
            } else {
                &["row", "col", "re", "im"]
            };
            emit::csv_document(header, &rows, &config_json)
        }
        other => {
            return Err(CliError::Input(format!(
                "unknown format '{other}' (expected json or csv)"
            )))
        }
    };
    emit::deliver(&text, &args.out)
}
