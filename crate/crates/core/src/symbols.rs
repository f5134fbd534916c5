//! Polynomials in z and z̄ on ℂ^d.
//!
//! A [`PolynomialSymbol`] is a finite sum Σ c_{a,b} z^a z̄^b with Gaussian
//! rational coefficients. It is the common representation for Toeplitz
//! symbols on the closed ball, for boundary functions on the sphere
//! S^{2d−1}, and for their harmonic extensions. Coefficients are stored
//! exactly; the `exact` flag only records whether the object originated from
//! rational data (and therefore whether rational strings or floats are used
//! when it is serialized).

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{Complex, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{
    crat_abs_f64, crat_to_c64, parse_rat, rat_from_f64, rat_int, rat_to_f64, format_rat, CRat, Rat,
};
use crate::interval::Interval;
use crate::multiindex::MultiIndex;
use crate::sphere::SphereSampler;

/// Exponent pair (a, b) of a monomial z^a z̄^b.
pub type TermKey = (MultiIndex, MultiIndex);

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSymbol {
    d: u32,
    terms: BTreeMap<TermKey, CRat>,
    exact: bool,
}

impl PolynomialSymbol {
    pub fn zero(d: u32) -> Self {
        PolynomialSymbol {
            d,
            terms: BTreeMap::new(),
            exact: true,
        }
    }

    pub fn constant(d: u32, c: CRat) -> Self {
        let mut p = Self::zero(d);
        p.add_term(MultiIndex::zero(d), MultiIndex::zero(d), c);
        p
    }

    pub fn one(d: u32) -> Self {
        Self::constant(d, Complex::new(Rat::one(), Rat::zero()))
    }

    pub fn monomial(a: MultiIndex, b: MultiIndex, c: CRat) -> Result<Self> {
        a.check_dim(&b)?;
        let mut p = Self::zero(a.dim());
        p.add_term(a, b, c);
        Ok(p)
    }

    /// The coordinate function z_i (0-based i).
    pub fn coordinate(d: u32, i: usize) -> Self {
        let mut p = Self::zero(d);
        p.add_term(
            MultiIndex::unit(d, i),
            MultiIndex::zero(d),
            Complex::new(Rat::one(), Rat::zero()),
        );
        p
    }

    /// The conjugate coordinate z̄_i (0-based i).
    pub fn conj_coordinate(d: u32, i: usize) -> Self {
        let mut p = Self::zero(d);
        p.add_term(
            MultiIndex::zero(d),
            MultiIndex::unit(d, i),
            Complex::new(Rat::one(), Rat::zero()),
        );
        p
    }

    /// |z|² = Σ_i z_i z̄_i.
    pub fn radius_sq(d: u32) -> Self {
        let mut p = Self::zero(d);
        for i in 0..d as usize {
            p.add_term(
                MultiIndex::unit(d, i),
                MultiIndex::unit(d, i),
                Complex::new(Rat::one(), Rat::zero()),
            );
        }
        p
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &CRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, a: &MultiIndex, b: &MultiIndex) -> CRat {
        self.terms
            .get(&(a.clone(), b.clone()))
            .cloned()
            .unwrap_or_else(|| Complex::new(Rat::zero(), Rat::zero()))
    }

    /// Whether the object carries exact (rational-string) provenance.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Marks the object as float-sourced for serialization purposes.
    pub fn with_float_provenance(mut self) -> Self {
        self.exact = false;
        self
    }

    fn add_term(&mut self, a: MultiIndex, b: MultiIndex, c: CRat) {
        if c.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((a, b))
            .or_insert_with(|| Complex::new(Rat::zero(), Rat::zero()));
        *entry = entry.clone() + c;
        // Keep the canonical no-zero-coefficients form.
        let last_zero: Vec<TermKey> = self
            .terms
            .iter()
            .filter(|(_, v)| v.is_zero())
            .map(|(k, _)| k.clone())
            .collect();
        for k in last_zero {
            self.terms.remove(&k);
        }
    }

    pub fn max_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|(a, b)| a.degree() + b.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.exact = self.exact && other.exact;
        for ((a, b), c) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = -v.clone();
        }
        out
    }

    pub fn scale(&self, c: &CRat) -> Self {
        if c.is_zero() {
            let mut z = Self::zero(self.d);
            z.exact = self.exact;
            return z;
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = v.clone() * c.clone();
        }
        out
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&Complex::new(r.clone(), Rat::zero()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.d);
        out.exact = self.exact && other.exact;
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &other.terms {
                out.add_term(a1.add(a2)?, b1.add(b2)?, c1.clone() * c2.clone());
            }
        }
        Ok(out)
    }

    /// Swaps the z and z̄ exponents and conjugates every coefficient, so that
    /// `conjugate(p)(z) = conj(p(z))` pointwise.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.d);
        out.exact = self.exact;
        for ((a, b), c) in &self.terms {
            out.add_term(b.clone(), a.clone(), c.conj());
        }
        out
    }

    /// Hermitian symmetry c_{a,b} = conj(c_{b,a}), equivalent to the symbol
    /// being real-valued on ℂ^d. The check is exact.
    pub fn is_hermitian(&self) -> bool {
        self.terms.iter().all(|((a, b), c)| {
            self.terms
                .get(&(b.clone(), a.clone()))
                .map(|c2| *c == c2.conj())
                .unwrap_or(false)
        })
    }

    /// Real part (p + conj p)/2 as a symbol.
    pub fn re_part(&self) -> Self {
        let half = Complex::new(Rat::new(1.into(), 2.into()), Rat::zero());
        self.add(&self.conjugate()).unwrap().scale(&half)
    }

    /// Imaginary part (p − conj p)/(2i) as a symbol.
    pub fn im_part(&self) -> Self {
        // 1/(2i) = -i/2
        let c = Complex::new(Rat::zero(), -Rat::new(1.into(), 2.into()));
        self.sub(&self.conjugate()).unwrap().scale(&c)
    }

    /// Euclidean Laplacian on ℝ^{2d}: Δ(z^a z̄^b) = 4 Σ_i a_i b_i
    /// z^{a−e_i} z̄^{b−e_i}, extended linearly.
    pub fn laplacian(&self) -> Self {
        let mut out = Self::zero(self.d);
        out.exact = self.exact;
        for ((a, b), c) in &self.terms {
            for i in 0..self.d as usize {
                let (ai, bi) = (a.entry(i), b.entry(i));
                if ai == 0 || bi == 0 {
                    continue;
                }
                let unit = MultiIndex::unit(self.d, i);
                let factor = CRat::new(rat_int(4 * ai as i64 * bi as i64), Rat::zero());
                out.add_term(
                    a.checked_sub(&unit).unwrap(),
                    b.checked_sub(&unit).unwrap(),
                    c.clone() * factor,
                );
            }
        }
        out
    }

    /// Terms of total degree exactly `m`.
    pub fn homogeneous_component(&self, m: u32) -> Self {
        let mut out = Self::zero(self.d);
        out.exact = self.exact;
        for ((a, b), c) in &self.terms {
            if a.degree() + b.degree() == m {
                out.add_term(a.clone(), b.clone(), c.clone());
            }
        }
        out
    }

    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        self.compiled().evaluate(z)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn evaluate_exact(&self, z: &[CRat]) -> CRat {
        let mut acc = Complex::new(Rat::zero(), Rat::zero());
        for ((a, b), c) in &self.terms {
            let mut term = c.clone();
            for i in 0..self.d as usize {
                term = term * z[i].powu(a.entry(i)) * z[i].conj().powu(b.entry(i));
            }
            acc = acc + term;
        }
        acc
    }

    /// Float-coefficient view for fast repeated evaluation.
    pub fn compiled(&self) -> CompiledSymbol {
        CompiledSymbol {
            d: self.d as usize,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| (a.entries().to_vec(), b.entries().to_vec(), crat_to_c64(c)))
                .collect(),
        }
    }

    /// Σ |c_{a,b}|: an upper bound for sup |p| on the closed unit ball.
    pub fn coeff_abs_sum(&self) -> f64 {
        self.terms.values().map(crat_abs_f64).sum()
    }

    /// Σ |c_{a,b}| (|a|+|b|): an upper bound for the Euclidean gradient of p
    /// on the closed unit ball, hence for its Lipschitz constant there.
    pub fn gradient_coeff_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|((a, b), c)| crat_abs_f64(c) * (a.degree() + b.degree()) as f64)
            .sum()
    }

    /// Certified Lipschitz upper bound for the restriction of p to the
    /// sphere: the gradient bound of whichever of p and its sphere-reduced
    /// normal form is smaller (both agree with p on S^{2d−1}).
    pub fn sphere_lipschitz_bound(&self) -> f64 {
        self.gradient_coeff_bound()
            .min(self.reduce_mod_sphere().gradient_coeff_bound())
    }

    /// Normal form modulo the ideal generated by (Σ_i z_i z̄_i − 1): divides
    /// by that polynomial using z_1 z̄_1 as the leading monomial. The result
    /// agrees with p on the unit sphere, and is zero iff p lies in the ideal
    /// (a single polynomial is a Gröbner basis of the ideal it generates).
    pub fn reduce_mod_sphere(&self) -> Self {
        let mut out = Self::zero(self.d);
        out.exact = self.exact;
        let mut work: Vec<(MultiIndex, MultiIndex, CRat)> = self
            .terms
            .iter()
            .map(|((a, b), c)| (a.clone(), b.clone(), c.clone()))
            .collect();
        // Each rewrite strictly decreases a_1 + b_1 of the processed
        // monomial, so the loop terminates.
        while let Some((a, b, c)) = work.pop() {
            if a.entry(0) >= 1 && b.entry(0) >= 1 {
                let unit = MultiIndex::unit(self.d, 0);
                let a0 = a.checked_sub(&unit).unwrap();
                let b0 = b.checked_sub(&unit).unwrap();
                // z_1 z̄_1 M → (1 − Σ_{i≥2} z_i z̄_i) M
                work.push((a0.clone(), b0.clone(), c.clone()));
                for i in 1..self.d as usize {
                    let ui = MultiIndex::unit(self.d, i);
                    work.push((a0.add(&ui).unwrap(), b0.add(&ui).unwrap(), -c.clone()));
                }
            } else {
                out.add_term(a, b, c);
            }
        }
        out
    }

    /// Certified enclosure of sup |p| over S^{2d−1}: the sample maximum plus
    /// a Lipschitz-times-mesh inflation.
    pub fn sup_norm_on_sphere(&self, sampler: &SphereSampler) -> Result<Interval> {
        if sampler.dim() != self.d {
            return Err(Error::input("sampler dimension mismatch"));
        }
        if sampler.is_empty() {
            return Err(Error::input("empty sample set"));
        }
        let compiled = self.compiled();
        let points = sampler.points();
        let lo = crate::par::max_indexed(points.len(), |i| compiled.evaluate(points[i].coords()).norm());
        // | |p(x)| − |p(y)| | ≤ |p(x) − p(y)|, so p's Lipschitz bound covers |p|.
        let hi = lo + self.sphere_lipschitz_bound() * sampler.mesh_bound();
        Ok(Interval::new(lo, hi))
    }

    /// Certified enclosure of the Lipschitz seminorm of p restricted to
    /// S^{2d−1} with the chordal metric: sampled pair ratios from below, the
    /// coefficient gradient bound from above.
    pub fn lipschitz_constant(&self, sampler: &SphereSampler) -> Result<Interval> {
        if !self.is_hermitian() {
            return Err(Error::input(
                "lipschitz_constant requires a real-valued (Hermitian) symbol",
            ));
        }
        if sampler.dim() != self.d {
            return Err(Error::input("sampler dimension mismatch"));
        }
        if sampler.is_empty() {
            return Err(Error::input("empty sample set"));
        }
        let compiled = self.compiled();
        let points = sampler.points();
        let values: Vec<f64> = points
            .iter()
            .map(|x| compiled.evaluate(x.coords()).re)
            .collect();
        let n = points.len();
        let lo = crate::par::max_indexed(n, |i| {
            let mut best = 0.0f64;
            for j in i + 1..n {
                let dist = points[i].chordal(&points[j]);
                if dist < 1e-9 {
                    continue;
                }
                best = best.max((values[i] - values[j]).abs() / dist);
            }
            best
        })
        .max(0.0);
        let hi = self.sphere_lipschitz_bound().max(lo);
        Ok(Interval::new(lo, hi))
    }
}

/// Float-coefficient form of a symbol for tight evaluation loops.
#[derive(Debug, Clone)]
pub struct CompiledSymbol {
    d: usize,
    terms: Vec<(Vec<u32>, Vec<u32>, Complex64)>,
}

impl CompiledSymbol {
    pub fn evaluate(&self, z: &[Complex64]) -> Complex64 {
        debug_assert_eq!(z.len(), self.d);
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, b, c) in &self.terms {
            let mut term = *c;
            for i in 0..self.d {
                if a[i] > 0 {
                    term *= z[i].powu(a[i]);
                }
                if b[i] > 0 {
                    term *= z[i].conj().powu(b[i]);
                }
            }
            acc += term;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Serialization: {"d": int, "terms": [{"a": [...], "b": [...], "re": ..., "im": ...}]}
// with re/im emitted as rational strings for exact objects and floats
// otherwise; both forms are accepted on input.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NumRepr {
    Exact(String),
    Float(f64),
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    a: Vec<u32>,
    b: Vec<u32>,
    re: NumRepr,
    im: NumRepr,
}

#[derive(Serialize, Deserialize)]
struct SymbolRepr {
    d: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for PolynomialSymbol {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let encode = |r: &Rat| -> NumRepr {
            if self.exact {
                NumRepr::Exact(format_rat(r))
            } else {
                NumRepr::Float(rat_to_f64(r))
            }
        };
        let repr = SymbolRepr {
            d: self.d,
            terms: self
                .terms
                .iter()
                .map(|((a, b), c)| TermRepr {
                    a: a.entries().to_vec(),
                    b: b.entries().to_vec(),
                    re: encode(&c.re),
                    im: encode(&c.im),
                })
                .collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolynomialSymbol {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymbolRepr::deserialize(deserializer)?;
        if repr.d == 0 {
            return Err(D::Error::custom("symbol dimension must be >= 1"));
        }
        let mut exact = true;
        let mut decode = |n: &NumRepr| -> std::result::Result<Rat, D::Error> {
            match n {
                NumRepr::Exact(s) => {
                    parse_rat(s).ok_or_else(|| D::Error::custom(format!("bad rational: {s}")))
                }
                NumRepr::Float(x) => {
                    exact = false;
                    rat_from_f64(*x).ok_or_else(|| D::Error::custom("non-finite float"))
                }
            }
        };
        let mut p = PolynomialSymbol::zero(repr.d);
        for t in &repr.terms {
            if t.a.len() != repr.d as usize || t.b.len() != repr.d as usize {
                return Err(D::Error::custom("term exponent length != d"));
            }
            let re = decode(&t.re)?;
            let im = decode(&t.im)?;
            p.add_term(
                MultiIndex::new(t.a.clone()),
                MultiIndex::new(t.b.clone()),
                Complex::new(re, im),
            );
        }
        p.exact = exact;
        Ok(p)
    }
}

impl std::fmt::Display for PolynomialSymbol {
    /// Renders in the CLI expression grammar; complex coefficients are split
    /// into a real term and an `i`-scaled term.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut emit = |f: &mut std::fmt::Formatter<'_>,
                        r: &Rat,
                        imag: bool,
                        a: &MultiIndex,
                        b: &MultiIndex|
         -> std::fmt::Result {
            if r.is_zero() {
                return Ok(());
            }
            let neg = r.is_negative();
            let mag = r.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (a.degree() == 0 && b.degree() == 0 && !imag) {
                factors.push(format!("({})", format_rat(&mag)));
            }
            if imag {
                factors.push("i".to_string());
            }
            for i in 0..self.d as usize {
                let e = a.entry(i);
                if e == 1 {
                    factors.push(format!("z{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("z{}^{}", i + 1, e));
                }
            }
            for i in 0..self.d as usize {
                let e = b.entry(i);
                if e == 1 {
                    factors.push(format!("zb{}", i + 1));
                } else if e > 1 {
                    factors.push(format!("zb{}^{}", i + 1, e));
                }
            }
            if factors.is_empty() {
                factors.push("(1)".to_string());
            }
            write!(f, "{}", factors.join("*"))
        };
        for ((a, b), c) in &self.terms {
            emit(f, &c.re, false, a, b)?;
            emit(f, &c.im, true, a, b)?;
        }
        Ok(())
    }
}
