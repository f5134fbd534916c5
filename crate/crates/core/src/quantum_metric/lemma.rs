//! Randomized verification of the norm bound ‖K‖ ≤ γ_α L̃(K) and of the
//! Schur chain behind it:
//!
//! ```text
//! ‖K‖ ≤ sup_j Σ_i |K_{ij}| ≤ Σ_i (i+1)^{−α−2} = ζ(α+2) − 1.
//! ```
//!
//! Trials draw real-symmetric operators on a finite support, normalize them
//! to L̃ = 1 and compare the exact finite block norm against the certified
//! γ interval. A failing report indicates a bug, not bad luck: the bound is
//! a theorem.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::interval::Interval;
use crate::quantum_metric::gamma::gamma;
use crate::quantum_metric::lip::LipCompactOperator;

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub alpha: f64,
    pub trials: u64,
    pub support: u64,
    /// Largest ‖K‖ seen across trials (each normalized to L̃(K) = 1).
    pub max_ratio: f64,
    pub gamma_bound: Interval,
    /// Whether every intermediate inequality of the chain held term-wise.
    pub schur_chain_ok: bool,
    pub pass: bool,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

struct TrialOutcome {
    norm: f64,
    chain_ok: bool,
}

fn run_trial(alpha: f64, support: u64, trial_seed: u64, gamma_hi: f64) -> TrialOutcome {
    let s = alpha + 2.0;
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let mut triples = Vec::new();
    for i in 1..=support {
        for j in i..=support {
            triples.push((i, j, rng.random_range(-1.0..=1.0)));
        }
    }
    let raw = LipCompactOperator::new(s, triples.iter().copied()).expect("valid triples");
    let lip = raw.lip_norm();
    if lip == 0.0 {
        return TrialOutcome {
            norm: 0.0,
            chain_ok: true,
        };
    }
    let k = LipCompactOperator::new(
        s,
        triples.iter().map(|&(i, j, v)| (i, j, v / lip)),
    )
    .expect("valid triples");

    let norm = k.operator_norm();
    let row_sup = k.row_sum_sup();
    let mut chain_ok = norm <= row_sup + 1e-9;
    // Entry-wise: L̃ = 1 forces |K_{ij}| ≤ (i+j)^{−s}.
    for (i, j, v) in k.triples() {
        if v.abs() > ((i + j) as f64).powf(-s) * (1.0 + 1e-12) {
            chain_ok = false;
        }
    }
    // Row-wise: Σ_i |K_{ij}| ≤ Σ_i (i+j)^{−s} ≤ Σ_i (i+1)^{−s} = γ.
    for j in 1..=support {
        let row: f64 = (1..=support).map(|i| k.entry(i, j).abs()).sum();
        let dominating: f64 = (1..=support).map(|i| ((i + j) as f64).powf(-s)).sum();
        if row > dominating + 1e-12 || dominating > gamma_hi + 1e-12 {
            chain_ok = false;
        }
    }
    TrialOutcome { norm, chain_ok }
}

/// Data-parallel over trials (with the `parallel` feature); per-trial seeds
/// derive deterministically from `seed`, so results do not depend on the
/// thread count.
pub fn lemma_bound_check(alpha: f64, trials: u64, seed: u64, support: u64) -> Result<LemmaReport> {
    lemma_inner(alpha, trials, seed, support, true)
}

/// Sequential reference path; the benchmark baseline.
pub fn lemma_bound_check_seq(
    alpha: f64,
    trials: u64,
    seed: u64,
    support: u64,
) -> Result<LemmaReport> {
    lemma_inner(alpha, trials, seed, support, false)
}

fn lemma_inner(
    alpha: f64,
    trials: u64,
    seed: u64,
    support: u64,
    parallel: bool,
) -> Result<LemmaReport> {
    let gamma_bound = gamma(alpha, 1e-10)?;
    if trials < 1 {
        return Err(crate::error::Error::input("need at least one trial"));
    }
    if support < 1 {
        return Err(crate::error::Error::input("support size must be >= 1"));
    }
    let run = |t: usize| {
        run_trial(
            alpha,
            support,
            splitmix64(seed ^ (t as u64 + 1)),
            gamma_bound.hi,
        )
    };
    let outcomes: Vec<TrialOutcome> = if parallel {
        crate::par::map_indexed(trials as usize, run)
    } else {
        crate::par::map_indexed_seq(trials as usize, run)
    };
    let max_ratio = outcomes.iter().map(|o| o.norm).fold(0.0, f64::max);
    let schur_chain_ok = outcomes.iter().all(|o| o.chain_ok);
    let pass = max_ratio <= gamma_bound.hi && schur_chain_ok;
    Ok(LemmaReport {
        alpha,
        trials,
        support,
        max_ratio,
        gamma_bound,
        schur_chain_ok,
        pass,
    })
}
