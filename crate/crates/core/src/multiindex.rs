//! Multi-indices in d variables and their graded-lexicographic enumeration.
//!
//! The enumeration fixes the identification between multi-indices and the
//! 1-based basis positions that the operator Lip-norm weights `(i+j)^s`
//! refer to: indices are ordered by total degree first, then
//! lexicographically within each degree. The choice is global; every
//! Lip-norm value in this crate is relative to it.

use std::cmp::Ordering;

use num::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::factorial_big;

/// A d-tuple of nonnegative integer exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    entries: Vec<u32>,
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        debug_assert!(!entries.is_empty(), "multi-index needs dimension >= 1");
        MultiIndex { entries }
    }

    pub fn zero(d: u32) -> Self {
        MultiIndex {
            entries: vec![0; d as usize],
        }
    }

    /// The i-th coordinate unit index (0-based coordinate).
    pub fn unit(d: u32, i: usize) -> Self {
        let mut entries = vec![0; d as usize];
        entries[i] = 1;
        MultiIndex { entries }
    }

    pub fn dim(&self) -> u32 {
        self.entries.len() as u32
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn entry(&self, i: usize) -> u32 {
        self.entries[i]
    }

    /// Total degree `k_1 + … + k_d`.
    pub fn degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `k! = k_1! ⋯ k_d!` as an exact integer.
    pub fn factorial(&self) -> BigUint {
        self.entries
            .iter()
            .map(|&k| factorial_big(k as u64))
            .product()
    }

    /// Componentwise sum.
    pub fn add(&self, other: &MultiIndex) -> Result<MultiIndex> {
        self.check_dim(other)?;
        Ok(MultiIndex::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// Componentwise difference, `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.dim() != other.dim() {
            return None;
        }
        let mut out = Vec::with_capacity(self.entries.len());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex::new(out))
    }

    pub fn check_dim(&self, other: &MultiIndex) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::input(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }
}

/// Graded-lexicographic order: degree first, then lexicographic on entries.
impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, k) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, "]")
    }
}

/// Number of multi-indices of degree exactly `deg` in `parts` variables.
fn compositions(deg: u64, parts: u32) -> Result<u64> {
    if parts == 0 {
        return Ok(if deg == 0 { 1 } else { 0 });
    }
    binomial(deg + parts as u64 - 1, parts as u64 - 1)
}

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::input(format!("binomial({n},{k}) overflows u64")));
        }
    }
    Ok(acc as u64)
}

/// The fixed graded-lexicographic enumeration of multi-indices in dimension
/// `d`, as a bijection with the integers ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Enumeration {
    d: u32,
}

impl Enumeration {
    pub fn new(d: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be >= 1"));
        }
        Ok(Enumeration { d })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    /// Number of multi-indices of degree ≤ `deg`: `C(deg + d, d)`.
    pub fn count_up_to_degree(&self, deg: u32) -> Result<u64> {
        binomial(deg as u64 + self.d as u64, self.d as u64)
    }

    /// 1-based position of `k` in graded-lex order.
    pub fn index_of(&self, k: &MultiIndex) -> Result<u64> {
        if k.dim() != self.d {
            return Err(Error::input(format!(
                "dimension mismatch: index has d={}, enumeration has d={}",
                k.dim(),
                self.d
            )));
        }
        let m = k.degree() as u64;
        let before_degree = if m == 0 {
            0
        } else {
            self.count_up_to_degree(m as u32 - 1)?
        };
        // Rank within the degree-m block: count lex-smaller indices of the
        // same degree position by position.
        let mut rank: u64 = 0;
        let mut remaining = m;
        for i in 0..self.d as usize {
            let ki = k.entry(i) as u64;
            let parts_after = self.d - i as u32 - 1;
            for v in 0..ki {
                rank = rank
                    .checked_add(compositions(remaining - v, parts_after)?)
                    .ok_or_else(|| Error::input("enumeration index overflows u64"))?;
            }
            remaining -= ki;
        }
        Ok(before_degree + rank + 1)
    }

    /// Inverse of [`Enumeration::index_of`].
    pub fn multi_of(&self, j: u64) -> Result<MultiIndex> {
        if j < 1 {
            return Err(Error::input("enumeration positions start at 1"));
        }
        // Locate the degree block containing j.
        let mut deg: u32 = 0;
        while self.count_up_to_degree(deg)? < j {
            deg += 1;
        }
        let before = if deg == 0 {
            0
        } else {
            self.count_up_to_degree(deg - 1)?
        };
        let mut rank = j - before - 1;
        let mut remaining = deg as u64;
        let mut entries = Vec::with_capacity(self.d as usize);
        for i in 0..self.d as usize {
            let parts_after = self.d - i as u32 - 1;
            if parts_after == 0 {
                entries.push(remaining as u32);
                break;
            }
            let mut v = 0u64;
            loop {
                let ways = compositions(remaining - v, parts_after)?;
                if rank < ways {
                    break;
                }
                rank -= ways;
                v += 1;
            }
            entries.push(v as u32);
            remaining -= v;
        }
        Ok(MultiIndex::new(entries))
    }

    /// All multi-indices of degree ≤ `deg`, in enumeration order.
    pub fn indices_up_to_degree(&self, deg: u32) -> Result<Vec<MultiIndex>> {
        let n = self.count_up_to_degree(deg)?;
        (1..=n).map(|j| self.multi_of(j)).collect()
    }
}
