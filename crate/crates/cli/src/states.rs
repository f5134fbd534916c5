//! State specifications: `point:0.6,0.8` (real coordinates of ℝ^{2d}),
//! `vector:j` (the j-th vector state of the truncation), and
//! `density:FILE.json` (a density matrix file with row-major re/im arrays).

use std::path::Path;

use serde::Deserialize;

use oddsphere_core::quantum_metric::{DensityMatrix, State};
use oddsphere_core::sphere::SpherePoint;

use crate::CliError;

#[derive(Deserialize)]
struct DensityFile {
    size: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

pub fn parse_state(spec: &str, d: u32, truncation_size: usize) -> Result<State, CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Input(format!("state spec needs kind:data, got '{spec}'")))?;
    match kind {
        "point" => {
            let coords: Vec<f64> = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<f64>()
                        .map_err(|_| CliError::Input(format!("bad coordinate '{t}'")))
                })
                .collect::<Result<_, _>>()?;
            if coords.len() != 2 * d as usize {
                return Err(CliError::Input(format!(
                    "point needs {} real coordinates for d = {d}, got {}",
                    2 * d,
                    coords.len()
                )));
            }
            let point = SpherePoint::from_real_coords(&coords)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(State::Point(point))
        }
        "vector" => {
            let j: u64 = rest
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("bad vector index '{rest}'")))?;
            let rho = DensityMatrix::vector_state(j, truncation_size)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(State::Density(rho))
        }
        "density" => {
            let text = std::fs::read_to_string(Path::new(rest))
                .map_err(|e| CliError::Input(format!("cannot read {rest}: {e}")))?;
            let file: DensityFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Input(format!("bad density file {rest}: {e}")))?;
            if file.re.len() != file.size * file.size || file.im.len() != file.size * file.size {
                return Err(CliError::Input(format!(
                    "density file {rest}: arrays must have size² = {} entries",
                    file.size * file.size
                )));
            }
            let rho = DensityMatrix::from_row_major(file.size, &file.re, &file.im)
                .map_err(|e| CliError::Input(e.to_string()))?;
            Ok(State::Density(rho))
        }
        other => Err(CliError::Input(format!(
            "unknown state kind '{other}' (expected point/vector/density)"
        ))),
    }
}
