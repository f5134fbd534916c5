//! Truncated Toeplitz matrices for polynomial symbols.
//!
//! For the weight (d, α) and a symbol φ = Σ c_{a,b} z^a z̄^b the matrix
//! element against the normalized monomial basis is closed-form:
//!
//! ```text
//! ⟨T_φ e_k, e_l⟩ = Σ_{(a,b): k+a = l+b} c_{a,b} · bc(k) bc(l) · ‖z^{k+a}‖²,
//! ```
//!
//! with no projection tail, so truncations are exact compressions P_D T P_D.
//! Matrix products of compressions are polluted near the truncation edge;
//! the decay diagnostics below exclude that boundary band.
//!
//! For integer α every squared entry is rational: an entry is a Gaussian
//! rational times the square root of a rational ([`ExactEntry`]), and this
//! form is closed under the matrix products needed for commutators.

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{One, Zero};

use crate::bergman::BergmanWeight;
use crate::error::{Error, Result};
use crate::exact::{crat_to_c64, rat_to_f64, rational_sqrt, CRat, Rat};
use crate::interval::Interval;
use crate::linalg;
use crate::multiindex::MultiIndex;
use crate::symbols::PolynomialSymbol;

/// A compression P_D T_φ P_D against the global enumeration.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    weight: BergmanWeight,
    symbol: PolynomialSymbol,
    cutoff: u32,
    entries: DMatrix<Complex64>,
}

/// One entry in exact form: `numerator / sqrt(norm_prod)`.
#[derive(Debug, Clone)]
pub struct ExactEntry {
    /// Gaussian-rational factor Σ c_{a,b} [k+a = l+b] ‖z^{k+a}‖².
    pub numerator: CRat,
    /// ‖z^k‖² ‖z^l‖², the square of the reciprocal basis normalization.
    pub norm_prod: Rat,
}

impl ExactEntry {
    pub fn to_c64(&self) -> Complex64 {
        let scale = rat_to_f64(&self.norm_prod).sqrt();
        crat_to_c64(&self.numerator) / scale
    }

    /// |entry|² as an exact rational.
    pub fn abs_sq(&self) -> Rat {
        let n2 = &self.numerator.re * &self.numerator.re
            + &self.numerator.im * &self.numerator.im;
        n2 / self.norm_prod.clone()
    }

    /// The entry itself, when the normalization square root is rational.
    pub fn rational_value(&self) -> Option<CRat> {
        let inv = Rat::one() / self.norm_prod.clone();
        let s = rational_sqrt(&inv)?;
        Some(CRat::new(
            &self.numerator.re * &s,
            &self.numerator.im * &s,
        ))
    }
}

/// Closed-form single element ⟨T_φ e_k, e_l⟩.
pub fn matrix_element(
    weight: &BergmanWeight,
    symbol: &PolynomialSymbol,
    k: &MultiIndex,
    l: &MultiIndex,
) -> Result<Complex64> {
    check_dims(weight, symbol)?;
    k.check_dim(l)?;
    if k.dim() != weight.dim() {
        return Err(Error::input("index dimension does not match weight"));
    }
    let half_ln = 0.5 * (weight.ln_monomial_norm_sq(k)? + weight.ln_monomial_norm_sq(l)?);
    let mut acc = Complex64::zero();
    for ((a, b), c) in symbol.terms() {
        let ka = k.add(a)?;
        let lb = l.add(b)?;
        if ka == lb {
            let scale = (weight.ln_monomial_norm_sq(&ka)? - half_ln).exp();
            acc += crat_to_c64(c) * scale;
        }
    }
    Ok(acc)
}

/// Exact-form single element; requires an integer weight.
pub fn matrix_element_exact(
    weight: &BergmanWeight,
    symbol: &PolynomialSymbol,
    k: &MultiIndex,
    l: &MultiIndex,
) -> Result<ExactEntry> {
    check_dims(weight, symbol)?;
    k.check_dim(l)?;
    if weight.alpha_integer().is_none() {
        return Err(Error::input(
            "exact matrix elements need an integer weight",
        ));
    }
    let mut numerator = CRat::zero();
    for ((a, b), c) in symbol.terms() {
        let ka = k.add(a)?;
        let lb = l.add(b)?;
        if ka == lb {
            let ns = weight.monomial_norm_sq_exact(&ka)?.expect("integer weight");
            numerator = numerator + c.clone() * CRat::new(ns, Rat::zero());
        }
    }
    let nk = weight.monomial_norm_sq_exact(k)?.expect("integer weight");
    let nl = weight.monomial_norm_sq_exact(l)?.expect("integer weight");
    Ok(ExactEntry {
        numerator,
        norm_prod: nk * nl,
    })
}

fn check_dims(weight: &BergmanWeight, symbol: &PolynomialSymbol) -> Result<()> {
    if weight.dim() != symbol.dim() {
        return Err(Error::input(format!(
            "symbol dimension {} does not match weight dimension {}",
            symbol.dim(),
            weight.dim()
        )));
    }
    Ok(())
}

/// Per-column nonzero pattern: column k receives contributions at rows
/// l = k + a − b for the symbol's terms (a, b).
fn column_entries(
    weight: &BergmanWeight,
    symbol: &PolynomialSymbol,
    basis: &[MultiIndex],
    row_index: &dyn Fn(&MultiIndex) -> Option<usize>,
    col: usize,
) -> Result<Vec<(usize, Complex64)>> {
    let k = &basis[col];
    let ln_k = weight.ln_monomial_norm_sq(k)?;
    let mut acc: std::collections::BTreeMap<usize, Complex64> = Default::default();
    for ((a, b), c) in symbol.terms() {
        let ka = k.add(a)?;
        let Some(l) = ka.checked_sub(b) else {
            continue;
        };
        let Some(row) = row_index(&l) else {
            continue;
        };
        let ln_l = weight.ln_monomial_norm_sq(&l)?;
        let scale = (weight.ln_monomial_norm_sq(&ka)? - 0.5 * (ln_k + ln_l)).exp();
        *acc.entry(row).or_insert_with(Complex64::zero) += crat_to_c64(c) * scale;
    }
    Ok(acc.into_iter().collect())
}

impl ToeplitzMatrix {
    /// Assembles the compression at degree cutoff `max_degree`; data-parallel
    /// over columns when the `parallel` feature is on.
    pub fn build(
        weight: &BergmanWeight,
        symbol: &PolynomialSymbol,
        max_degree: u32,
    ) -> Result<Self> {
        Self::build_inner(weight, symbol, max_degree, true)
    }

    /// Sequential reference path for [`ToeplitzMatrix::build`]; used by the
    /// benchmark suite as the single-thread baseline.
    pub fn build_seq(
        weight: &BergmanWeight,
        symbol: &PolynomialSymbol,
        max_degree: u32,
    ) -> Result<Self> {
        Self::build_inner(weight, symbol, max_degree, false)
    }

    fn build_inner(
        weight: &BergmanWeight,
        symbol: &PolynomialSymbol,
        max_degree: u32,
        parallel: bool,
    ) -> Result<Self> {
        check_dims(weight, symbol)?;
        let enumeration = weight.enumeration();
        let basis = enumeration.indices_up_to_degree(max_degree)?;
        let m = basis.len();
        let row_index = |l: &MultiIndex| -> Option<usize> {
            (l.degree() <= max_degree).then(|| enumeration.index_of(l).unwrap() as usize - 1)
        };
        let columns: Vec<Result<Vec<(usize, Complex64)>>> = if parallel {
            crate::par::map_indexed(m, |col| {
                column_entries(weight, symbol, &basis, &row_index, col)
            })
        } else {
            crate::par::map_indexed_seq(m, |col| {
                column_entries(weight, symbol, &basis, &row_index, col)
            })
        };
        let mut entries = DMatrix::<Complex64>::zeros(m, m);
        for (col, column) in columns.into_iter().enumerate() {
            for (row, value) in column? {
                entries[(row, col)] = value;
            }
        }
        Ok(ToeplitzMatrix {
            weight: weight.clone(),
            symbol: symbol.clone(),
            cutoff: max_degree,
            entries,
        })
    }

    pub fn weight(&self) -> &BergmanWeight {
        &self.weight
    }

    pub fn symbol(&self) -> &PolynomialSymbol {
        &self.symbol
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<Complex64> {
        self.entries
    }

    /// Certified enclosure of the full (untruncated) operator norm: the
    /// compression norm from below, the coefficient bound for
    /// sup_{B̄} |φ| ≥ ‖T_φ‖ from above.
    pub fn norm_interval(&self) -> Interval {
        let lo = if self.symbol.is_hermitian() {
            linalg::hermitian_spectral_norm(&self.entries)
        } else {
            linalg::power_iteration_norm(&self.entries, 1e-10, 100_000)
        };
        let hi = self.symbol.coeff_abs_sum().max(lo);
        Interval::new(lo, hi)
    }
}

/// Exact compression for integer weights: entry (l, k) equals
/// `core[l][k] / sqrt(ns[l] · ns[k])` with Gaussian-rational core.
#[derive(Debug, Clone)]
pub struct ExactToeplitz {
    cutoff: u32,
    dim: usize,
    core: Vec<CRat>,
    ns: Vec<Rat>,
}

impl ExactToeplitz {
    pub fn build(
        weight: &BergmanWeight,
        symbol: &PolynomialSymbol,
        max_degree: u32,
    ) -> Result<Self> {
        check_dims(weight, symbol)?;
        if weight.alpha_integer().is_none() {
            return Err(Error::input("exact Toeplitz matrices need an integer weight"));
        }
        let enumeration = weight.enumeration();
        let basis = enumeration.indices_up_to_degree(max_degree)?;
        let m = basis.len();
        let ns: Vec<Rat> = basis
            .iter()
            .map(|k| Ok(weight.monomial_norm_sq_exact(k)?.expect("integer weight")))
            .collect::<Result<_>>()?;
        let mut core = vec![CRat::zero(); m * m];
        for (col, k) in basis.iter().enumerate() {
            for ((a, b), c) in symbol.terms() {
                let ka = k.add(a)?;
                let Some(l) = ka.checked_sub(b) else {
                    continue;
                };
                if l.degree() > max_degree {
                    continue;
                }
                let row = enumeration.index_of(&l)? as usize - 1;
                let nska = weight.monomial_norm_sq_exact(&ka)?.expect("integer weight");
                core[row * m + col] =
                    core[row * m + col].clone() + c.clone() * CRat::new(nska, Rat::zero());
            }
        }
        Ok(ExactToeplitz {
            cutoff: max_degree,
            dim: m,
            core,
            ns,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn entry(&self, row: usize, col: usize) -> ExactEntry {
        ExactEntry {
            numerator: self.core[row * self.dim + col].clone(),
            norm_prod: &self.ns[row] * &self.ns[col],
        }
    }

    pub fn to_float(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.dim, self.dim, |r, c| self.entry(r, c).to_c64())
    }

    /// Exact commutator [A, B] = AB − BA of two compressions over the same
    /// weight and cutoff. The weighted core product
    /// `Σ_k core_A(l,k) core_B(k,j) / ns(k)` keeps entries in
    /// Gaussian-rational-times-√rational form.
    pub fn commutator(&self, other: &ExactToeplitz) -> Result<ExactToeplitz> {
        if self.dim != other.dim || self.cutoff != other.cutoff || self.ns != other.ns {
            return Err(Error::input(
                "commutator operands must share weight and cutoff",
            ));
        }
        let m = self.dim;
        let weighted_product = |x: &[CRat], y: &[CRat]| -> Vec<CRat> {
            let mut out = vec![CRat::zero(); m * m];
            for l in 0..m {
                for k in 0..m {
                    let xv = &x[l * m + k];
                    if xv.is_zero() {
                        continue;
                    }
                    let w = CRat::new(Rat::one() / self.ns[k].clone(), Rat::zero());
                    let xw = xv.clone() * w;
                    for j in 0..m {
                        let yv = &y[k * m + j];
                        if yv.is_zero() {
                            continue;
                        }
                        out[l * m + j] = out[l * m + j].clone() + xw.clone() * yv.clone();
                    }
                }
            }
            out
        };
        let ab = weighted_product(&self.core, &other.core);
        let ba = weighted_product(&other.core, &self.core);
        let core: Vec<CRat> = ab
            .into_iter()
            .zip(ba)
            .map(|(x, y)| x - y)
            .collect();
        Ok(ExactToeplitz {
            cutoff: self.cutoff,
            dim: m,
            core,
            ns: self.ns.clone(),
        })
    }
}

/// Per-degree maximum modulus used by the decay diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub degree: u32,
    pub max_abs: f64,
}

/// Per-degree maxima of |[T_φ, T_ψ]| entries, with rows and columns
/// restricted to degree ≤ D − deg φ − deg ψ so that every reported entry is
/// a true (compression-free) operator entry.
pub fn commutator_decay(
    weight: &BergmanWeight,
    phi: &PolynomialSymbol,
    psi: &PolynomialSymbol,
    max_degree: u32,
) -> Result<Vec<DecayRow>> {
    let a = ToeplitzMatrix::build(weight, phi, max_degree)?;
    let b = ToeplitzMatrix::build(weight, psi, max_degree)?;
    let comm = a.entries() * b.entries() - b.entries() * a.entries();
    per_degree_max(weight, &comm, max_degree, phi.max_degree() + psi.max_degree())
}

fn per_degree_max(
    weight: &BergmanWeight,
    matrix: &DMatrix<Complex64>,
    max_degree: u32,
    band: u32,
) -> Result<Vec<DecayRow>> {
    if max_degree < band {
        return Ok(Vec::new());
    }
    let limit = max_degree - band;
    let enumeration = weight.enumeration();
    let keep = enumeration.count_up_to_degree(limit)? as usize;
    let mut rows = Vec::with_capacity(limit as usize + 1);
    for m in 0..=limit {
        let lo = if m == 0 {
            0
        } else {
            enumeration.count_up_to_degree(m - 1)? as usize
        };
        let hi = enumeration.count_up_to_degree(m)? as usize;
        let mut max_abs = 0.0f64;
        for r in lo..hi {
            for c in 0..keep {
                max_abs = max_abs.max(matrix[(r, c)].norm());
            }
        }
        rows.push(DecayRow { degree: m, max_abs });
    }
    Ok(rows)
}

/// Exact version of [`commutator_decay`]: returns the commutator in exact
/// form together with the per-degree maxima.
pub fn commutator_exact(
    weight: &BergmanWeight,
    phi: &PolynomialSymbol,
    psi: &PolynomialSymbol,
    max_degree: u32,
) -> Result<(ExactToeplitz, Vec<DecayRow>)> {
    let a = ExactToeplitz::build(weight, phi, max_degree)?;
    let b = ExactToeplitz::build(weight, psi, max_degree)?;
    let comm = a.commutator(&b)?;
    let band = phi.max_degree() + psi.max_degree();
    let float = comm.to_float();
    let rows = per_degree_max(weight, &float, max_degree, band)?;
    Ok((comm, rows))
}

/// Per-degree maxima of |⟨T_{φ,low} e_k, e_l⟩ − ⟨T_{φ,high} e_k, e_l⟩|: the
/// entries of U* T_{φ,low} U − T_{φ,high} for the basis-matching unitary U.
/// Entries are single matrix elements, so the full truncation range is exact.
pub fn u_conjugation_difference(
    symbol: &PolynomialSymbol,
    high: &BergmanWeight,
    low: &BergmanWeight,
    max_degree: u32,
) -> Result<Vec<DecayRow>> {
    if high.dim() != low.dim() {
        return Err(Error::input("weights must share the dimension d"));
    }
    if high.alpha() <= low.alpha() {
        return Err(Error::input(
            "comparison weight must exceed the base weight (n > d)",
        ));
    }
    let a = ToeplitzMatrix::build(low, symbol, max_degree)?;
    let b = ToeplitzMatrix::build(high, symbol, max_degree)?;
    let diff = a.entries() - b.entries();
    per_degree_max(high, &diff, max_degree, 0)
}
