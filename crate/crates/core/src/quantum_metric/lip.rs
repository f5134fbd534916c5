//! Lip-norms: the weighted-entry seminorm on finitely supported compact
//! operators and the combined Lip structure on Toeplitz elements
//! T = T_{σ(f)} + K.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::bergman::BergmanWeight;
use crate::error::{Error, Result};
use crate::harmonic::splitting_sigma;
use crate::interval::Interval;
use crate::linalg;
use crate::sphere::SphereSampler;
use crate::symbols::PolynomialSymbol;

/// A real-symmetric finitely supported operator against the global
/// enumeration, carrying the weight exponent s = α + 2 of its Lip-norm
/// `L̃(K) = max (i+j)^s |K_{ij}|`.
#[derive(Debug, Clone)]
pub struct LipCompactOperator {
    s: f64,
    /// Canonical storage: keys (i, j) with 1 ≤ i ≤ j.
    entries: BTreeMap<(u64, u64), f64>,
}

impl LipCompactOperator {
    pub fn zero(s: f64) -> Self {
        LipCompactOperator {
            s,
            entries: BTreeMap::new(),
        }
    }

    /// Builds from (i, j, value) triples, 1-based. Mirrored pairs must agree;
    /// entries must be finite reals.
    pub fn new(s: f64, triples: impl IntoIterator<Item = (u64, u64, f64)>) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, j, v) in triples {
            if i < 1 || j < 1 {
                return Err(Error::input("operator indices are 1-based"));
            }
            if !v.is_finite() {
                return Err(Error::input("operator entries must be finite reals"));
            }
            let key = (i.min(j), i.max(j));
            match entries.get(&key) {
                Some(&old) if old != v => {
                    return Err(Error::input(format!(
                        "asymmetric entries at ({i},{j}): {old} vs {v}"
                    )));
                }
                _ => {
                    if v != 0.0 {
                        entries.insert(key, v);
                    }
                }
            }
        }
        Ok(LipCompactOperator { s, entries })
    }

    pub fn weight_exponent(&self) -> f64 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Canonical (upper-triangle) support triples.
    pub fn triples(&self) -> impl Iterator<Item = (u64, u64, f64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    pub fn entry(&self, i: u64, j: u64) -> f64 {
        let key = (i.min(j), i.max(j));
        self.entries.get(&key).copied().unwrap_or(0.0)
    }

    pub fn max_index(&self) -> u64 {
        self.entries.keys().map(|&(_, j)| j).max().unwrap_or(0)
    }

    /// L̃(K) = max over the support of (i+j)^s |K_{ij}|.
    pub fn lip_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|(&(i, j), &v)| ((i + j) as f64).powf(self.s) * v.abs())
            .fold(0.0, f64::max)
    }

    /// Symmetric dense block of the leading `size × size` corner.
    pub fn materialize(&self, size: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(size, size);
        for (&(i, j), &v) in &self.entries {
            let (r, c) = (i as usize - 1, j as usize - 1);
            if r < size && c < size {
                m[(r, c)] = v;
                m[(c, r)] = v;
            }
        }
        m
    }

    /// The operator norm: finite support means the norm of the leading block
    /// is the exact operator norm.
    pub fn operator_norm(&self) -> f64 {
        let n = self.max_index() as usize;
        if n == 0 {
            return 0.0;
        }
        linalg::symmetric_spectral_norm(&self.materialize(n))
    }

    /// sup_j Σ_i |K_{ij}| over the full symmetric support.
    pub fn row_sum_sup(&self) -> f64 {
        let mut sums: BTreeMap<u64, f64> = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            *sums.entry(i).or_insert(0.0) += v.abs();
            if i != j {
                *sums.entry(j).or_insert(0.0) += v.abs();
            }
        }
        sums.values().fold(0.0, |a, &b| a.max(b))
    }

    /// Norm enclosure: the exact block norm from below, the symmetric
    /// row-sum (Schur) bound from above.
    pub fn norm_interval(&self) -> Interval {
        let lo = self.operator_norm();
        Interval::new(lo, self.row_sum_sup().max(lo))
    }
}

/// An element T = T_{σ(f)} + K of the Lip space: real boundary symbol plus
/// real-symmetric finitely supported compact part, over a fixed weight and
/// truncation cutoff.
#[derive(Debug, Clone)]
pub struct LipElement {
    boundary: PolynomialSymbol,
    compact: LipCompactOperator,
    weight: BergmanWeight,
    cutoff: u32,
}

impl LipElement {
    pub fn new(
        boundary: PolynomialSymbol,
        compact_triples: impl IntoIterator<Item = (u64, u64, f64)>,
        weight: BergmanWeight,
        cutoff: u32,
    ) -> Result<Self> {
        let compact = LipCompactOperator::new(weight.alpha() + 2.0, compact_triples)?;
        Self::from_parts(boundary, compact, weight, cutoff)
    }

    pub fn from_parts(
        boundary: PolynomialSymbol,
        compact: LipCompactOperator,
        weight: BergmanWeight,
        cutoff: u32,
    ) -> Result<Self> {
        if !boundary.is_hermitian() {
            return Err(Error::input("boundary symbol must be real-valued"));
        }
        if boundary.dim() != weight.dim() {
            return Err(Error::input("boundary symbol dimension mismatch"));
        }
        if compact.weight_exponent() != weight.alpha() + 2.0 {
            return Err(Error::input(
                "compact part weight exponent must equal alpha + 2",
            ));
        }
        Ok(LipElement {
            boundary,
            compact,
            weight,
            cutoff,
        })
    }

    /// The boundary symbol — the image π(T) under the symbol map.
    pub fn boundary(&self) -> &PolynomialSymbol {
        &self.boundary
    }

    pub fn compact(&self) -> &LipCompactOperator {
        &self.compact
    }

    pub fn weight(&self) -> &BergmanWeight {
        &self.weight
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    /// The compression of T = T_{σ(f)} + K at the cutoff. Matrix elements of
    /// the Toeplitz part are exact; compact entries beyond the truncation are
    /// dropped.
    pub fn materialize(&self) -> Result<DMatrix<Complex64>> {
        let sigma = splitting_sigma(&self.boundary, &self.weight, self.cutoff)?;
        let m = sigma.dim();
        let mut out = sigma.into_entries();
        for (i, j, v) in self.compact.triples() {
            let (r, c) = (i as usize - 1, j as usize - 1);
            if r < m && c < m {
                out[(r, c)] += Complex64::new(v, 0.0);
                if r != c {
                    out[(c, r)] += Complex64::new(v, 0.0);
                }
            }
        }
        Ok(out)
    }

    /// L_n(T) = L̃(K) + L(f|_S): certified enclosure, both endpoints.
    pub fn lip_norm(&self, sampler: &SphereSampler) -> Result<Interval> {
        let compact = self.compact.lip_norm();
        let boundary = self.boundary.lipschitz_constant(sampler)?;
        Ok(Interval::new(compact + boundary.lo, compact + boundary.hi))
    }
}

/// The symbol map π on Lip elements: (T_{σ(f)} + K) ↦ f.
pub fn pi_of(t: &LipElement) -> &PolynomialSymbol {
    t.boundary()
}

/// Free-function form of the compact Lip-norm.
pub fn lip_compact_norm(k: &LipCompactOperator) -> f64 {
    k.lip_norm()
}
