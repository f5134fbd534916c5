use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::Complex64;

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// Interior point as 2d comma-separated real coordinates.
    #[arg(long)]
    z: String,
    /// Second interior point, same format.
    #[arg(long)]
    v: String,
    /// Truncation degree of the basis expansion.
    #[arg(long)]
    degree: Option<i64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_interior(text: &str, d: u32) -> Result<Vec<Complex64>, CliError> {
    let reals: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Input(format!("bad coordinate '{t}'")))
        })
        .collect::<Result<_, _>>()?;
    if reals.len() != 2 * d as usize {
        return Err(CliError::Input(format!(
            "point needs {} real coordinates for d = {d}, got {}",
            2 * d,
            reals.len()
        )));
    }
    Ok(reals
        .chunks(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect())
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let degree = degree_u32(config::resolve(args.degree, cfg.degree, 40))?;
    let z = parse_interior(&args.z, d)?;
    let v = parse_interior(&args.v, d)?;

    let weight = BergmanWeight::new(d, alpha)?;
    let check = weight.kernel_series_check(&z, &v, degree)?;
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("kernel-check".into())),
        ("alpha", Json::Float(alpha)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("v", Json::Str(args.v.clone())),
        ("z", Json::Str(args.z.clone())),
    ]);
    let complex_obj = |c: Complex64| {
        Json::obj(vec![("re", Json::Float(c.re)), ("im", Json::Float(c.im))])
    };
    let text = emit::json_line(&Json::obj(vec![
        ("partial_sum", complex_obj(check.partial_sum)),
        ("closed_form", complex_obj(check.closed_form)),
        ("gap", Json::Float(check.gap)),
        ("config", config_json),
    ]));
    emit::deliver(&text, &args.out)
}
