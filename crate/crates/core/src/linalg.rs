//! Thin wrappers around the dense eigen machinery used for operator norms.

use nalgebra::DMatrix;
use num::complex::Complex64;

/// Spectral norm of a Hermitian matrix: max |eigenvalue|.
pub fn hermitian_spectral_norm(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn hermitian_min_eigenvalue(m: &DMatrix<Complex64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.symmetric_eigenvalues()
        .iter()
        .fold(f64::INFINITY, |acc, &l| acc.min(l))
}

/// Spectral norm of a real symmetric matrix.
pub fn symmetric_spectral_norm(m: &DMatrix<f64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.symmetric_eigenvalues()
        .iter()
        .fold(0.0f64, |acc, &l| acc.max(l.abs()))
}

/// Largest singular value of a general complex matrix by power iteration on
/// the Gram matrix A^H A. The returned value is a Rayleigh-quotient lower
/// bound for σ_max even when the iteration cap is hit.
pub fn power_iteration_norm(m: &DMatrix<Complex64>, tol: f64, max_iters: usize) -> f64 {
    let n = m.ncols();
    if n == 0 || m.nrows() == 0 {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    // Deterministic start vector with nonzero overlap in every coordinate.
    let mut v = nalgebra::DVector::<Complex64>::from_fn(n, |i, _| {
        Complex64::new(1.0 + (i as f64 + 1.0).sqrt().fract(), 0.0)
    });
    v /= Complex64::new(v.norm(), 0.0);
    let mut lambda = 0.0f64;
    for _ in 0..max_iters {
        let w = &gram * &v;
        let new_lambda = w.norm();
        if new_lambda == 0.0 {
            return 0.0;
        }
        let converged = (new_lambda - lambda).abs() <= tol * new_lambda.max(1.0);
        v = w / Complex64::new(new_lambda, 0.0);
        lambda = new_lambda;
        if converged {
            break;
        }
    }
    // Rayleigh quotient of the Gram matrix at the final iterate.
    let rq = (v.adjoint() * (&gram * &v))[(0, 0)].re.max(0.0);
    rq.sqrt()
}
