//! The bridge seminorm N(T, f) = γ_{n0}^{−1} ‖π(T) − f‖_{∞,S} and the glued
//! Lip-norm Λ(T, f) = max{L_n(T), L(f), N(T, f)}.

use crate::bergman::BergmanWeight;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::quantum_metric::gamma::gamma;
use crate::quantum_metric::lip::LipElement;
use crate::sphere::SphereSampler;
use crate::symbols::PolynomialSymbol;

/// Everything a bridge evaluation needs: the operator-side weight, the
/// anchor n0 with its certified γ interval, a sphere sample with mesh bound,
/// and the pair budget of the distance LP.
#[derive(Debug, Clone)]
pub struct BridgeConfig {
    weight: BergmanWeight,
    n0: f64,
    gamma_n0: Interval,
    sampler: SphereSampler,
    pairs: usize,
}

impl BridgeConfig {
    /// `n0` defaults to α itself, which gives the tightest 2γ bound the
    /// construction allows.
    pub fn new(
        weight: BergmanWeight,
        n0: Option<f64>,
        samples: usize,
        pairs: usize,
        seed: u64,
        gamma_tol: f64,
    ) -> Result<Self> {
        let n0 = n0.unwrap_or_else(|| weight.alpha());
        if n0 < weight.dim() as f64 {
            return Err(Error::input("bridge anchor n0 must be >= d"));
        }
        if n0 > weight.alpha() {
            return Err(Error::input(
                "bridge anchor n0 must not exceed the weight alpha",
            ));
        }
        let gamma_n0 = gamma(n0, gamma_tol)?;
        let sampler = SphereSampler::generate(weight.dim(), samples, seed)?;
        Ok(BridgeConfig {
            weight,
            n0,
            gamma_n0,
            sampler,
            pairs,
        })
    }

    pub fn weight(&self) -> &BergmanWeight {
        &self.weight
    }

    pub fn n0(&self) -> f64 {
        self.n0
    }

    pub fn gamma_n0(&self) -> Interval {
        self.gamma_n0
    }

    pub fn sampler(&self) -> &SphereSampler {
        &self.sampler
    }

    pub fn pairs(&self) -> usize {
        self.pairs
    }
}

/// Certified enclosure of N(T, f) = γ_{n0}^{−1} ‖π(T) − f‖_{∞,S}.
pub fn bridge_n(t: &LipElement, f: &PolynomialSymbol, cfg: &BridgeConfig) -> Result<Interval> {
    if !f.is_hermitian() {
        return Err(Error::input("bridge needs a real-valued function side"));
    }
    let diff = t.boundary().sub(f)?;
    let sup = diff.sup_norm_on_sphere(cfg.sampler())?;
    let g = cfg.gamma_n0();
    Ok(Interval::new(sup.lo / g.hi, sup.hi / g.lo))
}

/// Upper value of the glued Lip-norm max{L_n(T), L(f), N(T, f)}.
///
/// The two anchor identities hold exactly as computed: for (σ(f), f) the
/// bridge term is identically zero and the maximum is the Lipschitz value of
/// f, and for (T, π(T)) it is L_n(T).
pub fn combined_lip(t: &LipElement, f: &PolynomialSymbol, cfg: &BridgeConfig) -> Result<f64> {
    let operator_side = t.lip_norm(cfg.sampler())?.hi;
    let function_side = f.lipschitz_constant(cfg.sampler())?.hi;
    let bridge = bridge_n(t, f, cfg)?.hi;
    Ok(operator_side.max(function_side).max(bridge))
}
