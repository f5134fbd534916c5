use std::path::PathBuf;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::quantum_metric::{rho_distance_lp, BridgeConfig, RhoFamily};

use crate::config::{self, degree_u32};
use crate::emit::{self, Json};
use crate::states::parse_state;
use crate::CliError;

#[derive(clap::Args)]
pub struct Args {
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    alpha: Option<f64>,
    /// First state: point:COORDS, vector:J, or density:FILE.json.
    #[arg(long)]
    mu: String,
    /// Second state, same grammar.
    #[arg(long)]
    nu: String,
    /// Polynomial degree of the boundary-function family.
    #[arg(long)]
    degree: Option<i64>,
    /// Sampled Lipschitz pair budget.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Sphere sample count for bridge and Lipschitz constraints.
    #[arg(long)]
    samples: Option<usize>,
    /// Leading-block support size of the compact part.
    #[arg(long)]
    support: Option<u64>,
    /// Truncation degree for vector/density states.
    #[arg(long)]
    cutoff: Option<u32>,
    /// Bridge anchor n0 (defaults to alpha).
    #[arg(long)]
    n0: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn run(args: Args) -> Result<(), CliError> {
    let cfg = config::load(&args.config)?;
    let d = config::require(args.d, cfg.d, "d")?;
    let alpha = config::require(args.alpha, cfg.alpha, "alpha")?;
    let degree = degree_u32(config::resolve(args.degree, cfg.degree, 2))?;
    let pairs = config::resolve(args.pairs, cfg.pairs, 512);
    let samples = config::resolve(args.samples, cfg.samples, 512);
    let seed = config::resolve(args.seed, cfg.seed, 0);
    let support = config::resolve(args.support, cfg.support, 6);
    let cutoff = config::resolve(args.cutoff, cfg.cutoff, 12);
    let n0 = args.n0.or(cfg.n0);

    let weight = BergmanWeight::new(d, alpha)?;
    let truncation_size = weight.enumeration().count_up_to_degree(cutoff)? as usize;
    let mu = parse_state(&args.mu, d, truncation_size)?;
    let nu = parse_state(&args.nu, d, truncation_size)?;
    let bridge = BridgeConfig::new(weight, n0, samples, pairs, seed, 1e-9)?;
    let family = RhoFamily {
        degree,
        k_support: support,
    };
    let solution = rho_distance_lp(&mu, &nu, &family, &bridge)?;

    let g_json = serde_json::to_string(&solution.g)
        .map_err(|e| CliError::Internal(format!("symbol serialization failed: {e}")))?;
    let f_json = serde_json::to_string(&solution.f)
        .map_err(|e| CliError::Internal(format!("symbol serialization failed: {e}")))?;
    let k_json = Json::Arr(
        solution
            .k
            .triples()
            .map(|(i, j, v)| {
                Json::obj(vec![
                    ("i", Json::UInt(i)),
                    ("j", Json::UInt(j)),
                    ("value", Json::Float(v)),
                ])
            })
            .collect(),
    );
    let config_json = Json::obj(vec![
        ("subcommand", Json::Str("rho".into())),
        ("alpha", Json::Float(alpha)),
        ("cutoff", Json::UInt(cutoff as u64)),
        ("d", Json::UInt(d as u64)),
        ("degree", Json::UInt(degree as u64)),
        ("mu", Json::Str(args.mu.clone())),
        (
            "n0",
            Json::Float(n0.unwrap_or(alpha)),
        ),
        ("nu", Json::Str(args.nu.clone())),
        ("pairs", Json::UInt(pairs as u64)),
        ("samples", Json::UInt(samples as u64)),
        ("seed", Json::UInt(seed)),
        ("support", Json::UInt(support)),
    ]);
    let gamma = bridge.gamma_n0();
    let text = emit::json_line(&Json::obj(vec![
        ("value", Json::Float(solution.value)),
        ("u", Json::Float(solution.u)),
        ("v", Json::Float(solution.v)),
        ("g", Json::Raw(g_json)),
        ("f", Json::Raw(f_json)),
        ("k", k_json),
        (
            "gamma_n0",
            Json::obj(vec![
                ("lo", Json::Float(gamma.lo)),
                ("hi", Json::Float(gamma.hi)),
            ]),
        ),
        ("config", config_json),
    ]));
    emit::deliver(&text, &args.out)
}
