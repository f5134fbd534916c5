//! Weighted Bergman-space data on the unit ball of ℂ^d.
//!
//! For a weight parameter α ≥ d the probability measure
//! dV_α = c_α (1 − |z|²)^{α−d} dV turns the monomials into an orthogonal
//! family with
//!
//! ```text
//! ‖z^m‖² = m! · Γ(α+1) / Γ(|m|+α+1),
//! ```
//!
//! and the normalized monomials e_k = z^k / ‖z^k‖ reproduce the kernel
//! K_α(z, v) = (1 − ⟨z, v⟩)^{−(α+1)}. Integer α admits an exact rational
//! path; real α uses logarithmic accumulation of the factorial ratios, which
//! stays finite far beyond the overflow range of Γ itself.

use std::sync::{Arc, RwLock};

use num::complex::Complex64;
use num::{BigInt, BigRational, BigUint, One};

use crate::error::{Error, Result};
use crate::exact::Rat;
use crate::multiindex::{Enumeration, MultiIndex};

/// The weight (d, α) of a generalized Bergman space, with memoized
/// logarithmic tables shared across clones.
#[derive(Debug, Clone)]
pub struct BergmanWeight {
    d: u32,
    alpha: f64,
    alpha_int: Option<u64>,
    tables: Arc<LogTables>,
}

#[derive(Debug)]
struct LogTables {
    /// `ln_fact[k] = ln k!`
    ln_fact: RwLock<Vec<f64>>,
    /// `ln_rise[m] = Σ_{t=1..m} ln(α + t)`
    ln_rise: RwLock<Vec<f64>>,
}

impl LogTables {
    fn new() -> Self {
        LogTables {
            ln_fact: RwLock::new(vec![0.0]),
            ln_rise: RwLock::new(vec![0.0]),
        }
    }

    fn ln_fact(&self, k: usize) -> f64 {
        {
            let table = self.ln_fact.read().unwrap();
            if k < table.len() {
                return table[k];
            }
        }
        let mut table = self.ln_fact.write().unwrap();
        while table.len() <= k {
            let n = table.len() as f64;
            let last = *table.last().unwrap();
            table.push(last + n.ln());
        }
        table[k]
    }

    fn ln_rise(&self, alpha: f64, m: usize) -> f64 {
        {
            let table = self.ln_rise.read().unwrap();
            if m < table.len() {
                return table[m];
            }
        }
        let mut table = self.ln_rise.write().unwrap();
        while table.len() <= m {
            let t = table.len() as f64;
            let last = *table.last().unwrap();
            table.push(last + (alpha + t).ln());
        }
        table[m]
    }
}

impl BergmanWeight {
    pub fn new(d: u32, alpha: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be >= 1"));
        }
        if !alpha.is_finite() || alpha < d as f64 {
            return Err(Error::input(format!(
                "weight must satisfy alpha >= d (got alpha={alpha}, d={d})"
            )));
        }
        let alpha_int = (alpha.fract() == 0.0 && alpha <= 4.0e9).then_some(alpha as u64);
        Ok(BergmanWeight {
            d,
            alpha,
            alpha_int,
            tables: Arc::new(LogTables::new()),
        })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `Some(n)` when the weight is an integer and the exact rational path is
    /// available.
    pub fn alpha_integer(&self) -> Option<u64> {
        self.alpha_int
    }

    pub fn enumeration(&self) -> Enumeration {
        Enumeration::new(self.d).expect("validated at construction")
    }

    fn check_index(&self, m: &MultiIndex) -> Result<()> {
        if m.dim() != self.d {
            return Err(Error::input(format!(
                "multi-index dimension {} does not match weight dimension {}",
                m.dim(),
                self.d
            )));
        }
        Ok(())
    }

    /// `ln ‖z^m‖²` under dV_α.
    pub fn ln_monomial_norm_sq(&self, m: &MultiIndex) -> Result<f64> {
        self.check_index(m)?;
        let mut acc = 0.0;
        for &k in m.entries() {
            acc += self.tables.ln_fact(k as usize);
        }
        Ok(acc - self.tables.ln_rise(self.alpha, m.degree() as usize))
    }

    /// ∫ |z^m|² dV_α = m! Γ(α+1) / Γ(|m|+α+1).
    pub fn monomial_norm_sq(&self, m: &MultiIndex) -> Result<f64> {
        Ok(self.ln_monomial_norm_sq(m)?.exp())
    }

    /// Exact rational norm for integer α: m! α! / (|m|+α)! = m! / Π_{t=1}^{|m|} (α+t).
    pub fn monomial_norm_sq_exact(&self, m: &MultiIndex) -> Result<Option<Rat>> {
        self.check_index(m)?;
        let Some(n) = self.alpha_int else {
            return Ok(None);
        };
        let mut rise = BigUint::one();
        for t in 1..=m.degree() as u64 {
            rise *= BigUint::from(n + t);
        }
        Ok(Some(BigRational::new(
            BigInt::from(m.factorial()),
            BigInt::from(rise),
        )))
    }

    /// Coefficient of the normalized basis vector e_k = basis_coeff(k) z^k,
    /// equal to ((|k|+α)! / (k! α!))^{1/2} in Gamma form.
    pub fn basis_coeff(&self, k: &MultiIndex) -> Result<f64> {
        Ok((-0.5 * self.ln_monomial_norm_sq(k)?).exp())
    }

    /// Reproducing kernel K_α(z, v) = (1 − ⟨z, v⟩)^{−(α+1)} with
    /// ⟨z, v⟩ = Σ z_i conj(v_i), principal branch.
    pub fn kernel(&self, z: &[Complex64], v: &[Complex64]) -> Result<Complex64> {
        self.check_point(z)?;
        self.check_point(v)?;
        let inner: Complex64 = z.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
        let w = Complex64::new(1.0, 0.0) - inner;
        if w.norm() < 1e-14 {
            return Err(Error::Singularity(
                "kernel pole: <z, v> = 1".to_string(),
            ));
        }
        Ok(w.powf(-(self.alpha + 1.0)))
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.d as usize {
            return Err(Error::input("point dimension mismatch"));
        }
        let norm_sq: f64 = z.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq >= 1.0 {
            return Err(Error::input(format!(
                "point must lie strictly inside the unit ball (|z|² = {norm_sq})"
            )));
        }
        Ok(())
    }

    /// Compares the truncated basis expansion Σ_{|k|≤D} e_k(z) conj(e_k(v))
    /// against the closed kernel form.
    pub fn kernel_series_check(
        &self,
        z: &[Complex64],
        v: &[Complex64],
        max_degree: u32,
    ) -> Result<KernelSeriesCheck> {
        let closed_form = self.kernel(z, v)?;
        let enumeration = self.enumeration();
        let mut partial_sum = Complex64::new(0.0, 0.0);
        for k in enumeration.indices_up_to_degree(max_degree)? {
            let mut zk = Complex64::new(1.0, 0.0);
            let mut vk = Complex64::new(1.0, 0.0);
            for i in 0..self.d as usize {
                zk *= z[i].powu(k.entry(i));
                vk *= v[i].powu(k.entry(i));
            }
            partial_sum += zk * vk.conj() / self.monomial_norm_sq(&k)?;
        }
        let gap = (partial_sum - closed_form).norm();
        Ok(KernelSeriesCheck {
            partial_sum,
            closed_form,
            gap,
        })
    }
}

/// Result of [`BergmanWeight::kernel_series_check`].
#[derive(Debug, Clone, Copy)]
pub struct KernelSeriesCheck {
    pub partial_sum: Complex64,
    pub closed_form: Complex64,
    pub gap: f64,
}
