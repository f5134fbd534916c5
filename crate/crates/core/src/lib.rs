//! Numerical toolkit for Toeplitz operators on weighted Bergman spaces of the
//! unit ball in ℂ^d and for the quantum-metric structure they carry.
//!
//! The crate computes, exactly where the arithmetic allows and with certified
//! intervals otherwise:
//!
//! - multi-index enumeration and weighted monomial norms ([`multiindex`],
//!   [`bergman`]),
//! - truncated Toeplitz matrices of polynomial symbols, operator-norm
//!   intervals, commutator and weight-comparison decay diagnostics
//!   ([`toeplitz`]),
//! - exact harmonic extension of polynomial boundary data and the induced
//!   positive splitting of the symbol map ([`harmonic`]),
//! - Lip-norms on compact operators and Toeplitz elements, the ζ-tail
//!   constants γ_α = ζ(α+2) − 1, the bridge seminorm, state-distance linear
//!   programs and Hausdorff estimates between state nets
//!   ([`quantum_metric`]).
//!
//! All randomized components are seeded and deterministic; data-parallel
//! paths (behind the default `parallel` feature) produce byte-identical
//! results regardless of thread count.

pub mod bergman;
pub mod error;
pub mod exact;
pub mod harmonic;
pub mod interval;
pub mod linalg;
pub mod multiindex;
pub(crate) mod par;
pub mod quantum_metric;
pub mod sphere;
pub mod symbols;
pub mod toeplitz;

pub use error::{Error, Result};
pub use interval::Interval;

/// Complex double re-export used across the public API.
pub use num::complex::Complex64;
