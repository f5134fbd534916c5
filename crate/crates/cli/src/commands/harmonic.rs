use std::path::PathBuf;

use oddsphere_core::harmonic::harmonic_extension;
use oddsphere_core::sphere::SphereSampler;

use crate::config;
use crate::emit::{self, Json};
use crate::symbol_expr::parse_symbol;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    /// Real-valued boundary symbol expression.
    #[arg(long)]
    symbol: String,
    #[arg(long)]
    d: Option<u32>,
    /// Emit coefficients as exact rational strings instead of floats.
    #[arg(long)]
    exact: bool,
    /// Sphere sample count for the boundary-residual report.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let exact = args.exact || cfg.exact.unwrap_or(false);
    let samples = config::resolve(args.samples, cfg.samples, 1000);
    let seed = config::resolve(args.seed, cfg.seed, 0);

    let boundary =
        parse_symbol(&args.symbol, d).map_err(|e| CliError::Input(e.to_string()))?;
    let solution = harmonic_extension(&boundary)?;

    let sampler = SphereSampler::generate(d, samples, seed)?;
    let mut residual_max = 0.0f64;
    let fb = boundary.compiled();
    let he = solution.extension.compiled();
    for p in sampler.points() {
        let gap = (fb.evaluate(p.coords()) - he.evaluate(p.coords())).norm();
        residual_max = residual_max.max(gap);
    }
    let laplacian_zero = solution.extension.laplacian().is_zero();

    let extension = if exact {
        solution.extension.clone()
    } else {
        solution.extension.clone().with_float_provenance()
    };
    let extension_json = serde_json::to_string(&extension)
        .map_err(|e| CliError::Internal(format!("symbol serialization failed: {e}")))?;

    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("harmonic-extend".into())),
        ("d", Json::UInt(d as u64)),
        ("exact", Json::Bool(exact)),
        ("samples", Json::UInt(samples as u64)),
        ("seed", Json::UInt(seed)),
        ("symbol", Json::Str(args.symbol.clone())),
    ]);
    let text = emit::json_line(&Json::obj(vec![
        ("extension", Json::Raw(extension_json)),
        (
            "verification",
            Json::obj(vec![
                ("laplacian_zero", Json::Bool(laplacian_zero)),
                ("boundary_residual_max", Json::Float(residual_max)),
            ]),
        ),
        (
            "residual_degree",
            match solution.residual_degree {
                Some(deg) => Json::UInt(deg as u64),
                None => Json::Int(-1),
            },
        ),
        ("config", config_json),
    ]));
    emit::deliver(&text, &args.out)
}
