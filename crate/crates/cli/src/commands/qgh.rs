use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::quantum_metric::{
    hausdorff_estimate, BridgeConfig, DensityMatrix, RhoFamily, State,
};

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    d: Option<u32>,
    /// Comma-separated weights, e.g. "1,2,4,8".
    #[arg(long)]
    alpha_list: Option<String>,
    /// Polynomial degree of the boundary-function family.
    #[arg(long)]
    degree: Option<i64>,
    /// Sampled Lipschitz pair budget.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    support: Option<u64>,
    /// Truncation degree of the density-state net.
    #[arg(long)]
    cutoff: Option<u32>,
    /// Number of vector states e_j e_j* in the operator-side net.
    #[arg(long)]
    vectors: Option<u64>,
    /// Number of point masses in the function-side net.
    #[arg(long)]
    points: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alphas: Vec<f64> = match (&args.alpha_list, &cfg.alpha_list) {
        (Some(text), _) => text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| CliError::Input(format!("bad alpha '{t}'")))
            })
            .collect::<Result<_, _>>()?,
        (None, Some(list)) => list.clone(),
        (None, None) => return Err(CliError::Input("missing required value --alpha-list".into())),
    };
    if alphas.is_empty() {
        return Err(CliError::Input("alpha list must be nonempty".into()));
    }
    let degree = degree_u32(config::resolve(args.degree, cfg.degree, 2))?;
    let pairs = config::resolve(args.pairs, cfg.pairs, 512);
    let samples = config::resolve(args.samples, cfg.samples, 512);
    let seed = config::resolve(args.seed, cfg.seed, 0);
    let support = config::resolve(args.support, cfg.support, 6);
    let cutoff = config::resolve(args.cutoff, cfg.cutoff, 12);
    let vectors = args.vectors.unwrap_or(5);
    let points = args.points.unwrap_or(3);
    let family = RhoFamily {
        degree,
        k_support: support,
    };

    let alpha_list_str = alphas
        .iter()
        .map(|a| emit::fmt_float(*a))
        .collect::<Vec<_>>()
        .join(",");
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("qgh".into())),
        ("alpha_list", Json::Str(alpha_list_str)),
        ("cutoff", Json::UInt(cutoff as u64)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("pairs", Json::UInt(pairs as u64)),
        ("points", Json::UInt(points as u64)),
        ("samples", Json::UInt(samples as u64)),
        ("seed", Json::UInt(seed)),
        ("support", Json::UInt(support)),
        ("vectors", Json::UInt(vectors)),
    ]);

    let mut rows = Vec::with_capacity(alphas.len());
    for &alpha in &alphas {
        let weight = BergmanWeight::new(d, alpha)?;
        let truncation_size = weight.enumeration().count_up_to_degree(cutoff)? as usize;
        if vectors as usize > truncation_size {
            return Err(CliError::Input(format!(
                "{vectors} vector states exceed the truncation of size {truncation_size}"
            )));
        }
        let bridge = BridgeConfig::new(weight, None, samples, pairs, seed, 1e-9)?;
        if points > bridge.sampler().len() {
            return Err(CliError::Input(format!(
                "{points} point masses exceed the sample count {samples}"
            )));
        }
        let net_a: Vec<State> = (1..=vectors)
            .map(|j| Ok(State::Density(DensityMatrix::vector_state(j, truncation_size)?)))
            .collect::<Result<_, oddsphere_core::Error>>()?;
        let net_b: Vec<State> = bridge.sampler().points()[..points]
            .iter()
            .map(|p| State::Point(p.clone()))
            .collect();
        let report = hausdorff_estimate(&net_a, &net_b, &family, &bridge, true)?;
        rows.push(vec![
            emit::fmt_float(alpha),
            emit::fmt_float(report.value),
            emit::fmt_float(report.upper_bound_2gamma.lo),
            emit::fmt_float(report.upper_bound_2gamma.hi),
        ]);
    }
    let text = emit::csv_document(
        &[
            "alpha",
            "lp_hausdorff_estimate",
            "upper_bound_2gamma_lo",
            "upper_bound_2gamma_hi",
        ],
        &rows,
        &config_json,
    );
    emit::deliver(&text, &args.out)
}
