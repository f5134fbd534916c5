//! States: point evaluations on the sphere and density matrices on a
//! truncated Bergman space, together with the two canonical pullbacks that
//! connect the two sides (ν ↦ ν∘σ through the splitting, μ ↦ μ∘π through
//! the symbol map).

use nalgebra::DMatrix;
use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::harmonic::splitting_sigma;
use crate::linalg;
use crate::quantum_metric::lip::LipElement;
use crate::sphere::SpherePoint;
use crate::symbols::PolynomialSymbol;

/// A Hermitian, positive-semidefinite, trace-one matrix on a truncation.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    mat: DMatrix<Complex64>,
}

impl DensityMatrix {
    pub fn new(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() || mat.nrows() == 0 {
            return Err(Error::input("density matrix must be square and nonempty"));
        }
        let n = mat.nrows();
        for r in 0..n {
            for c in 0..n {
                if (mat[(r, c)] - mat[(c, r)].conj()).norm() > 1e-12 {
                    return Err(Error::input("density matrix must be Hermitian"));
                }
            }
        }
        let trace: Complex64 = (0..n).map(|i| mat[(i, i)]).sum();
        if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::input(format!(
                "density matrix trace must be 1 (got {trace})"
            )));
        }
        if linalg::hermitian_min_eigenvalue(&mat) < -1e-10 {
            return Err(Error::input("density matrix must be positive semidefinite"));
        }
        Ok(DensityMatrix { mat })
    }

    /// The vector state e_j e_j^* (1-based j).
    pub fn vector_state(j: u64, size: usize) -> Result<Self> {
        if j < 1 || j as usize > size {
            return Err(Error::input(format!(
                "vector state index {j} outside truncation of size {size}"
            )));
        }
        let mut mat = DMatrix::zeros(size, size);
        mat[(j as usize - 1, j as usize - 1)] = Complex64::new(1.0, 0.0);
        Ok(DensityMatrix { mat })
    }

    /// Builds from row-major real and imaginary arrays of length size².
    pub fn from_row_major(size: usize, re: &[f64], im: &[f64]) -> Result<Self> {
        if re.len() != size * size || im.len() != size * size {
            return Err(Error::input(format!(
                "density arrays must hold size² = {} entries",
                size * size
            )));
        }
        let mat = DMatrix::from_fn(size, size, |r, c| {
            Complex64::new(re[r * size + c], im[r * size + c])
        });
        DensityMatrix::new(mat)
    }

    /// The rank-one state v v^*/⟨v, v⟩.
    pub fn rank_one(v: &[Complex64]) -> Result<Self> {
        let norm_sq: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        if norm_sq < 1e-300 {
            return Err(Error::input("rank-one state needs a nonzero vector"));
        }
        let n = v.len();
        let mat = DMatrix::from_fn(n, n, |r, c| v[r] * v[c].conj() / norm_sq);
        Ok(DensityMatrix { mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    /// tr(ρ A) over the common truncation. The caller guarantees that `a`
    /// covers the support of ρ; entries of ρ beyond `a` contribute nothing
    /// only if ρ is supported there, so we require ρ.dim ≤ dim(a).
    pub fn trace_against(&self, a: &DMatrix<Complex64>) -> Result<f64> {
        if self.dim() > a.nrows() {
            return Err(Error::input(format!(
                "density state of size {} exceeds the truncation of size {}",
                self.dim(),
                a.nrows()
            )));
        }
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.mat[(i, j)] * a[(j, i)];
            }
        }
        if acc.im.abs() > 1e-9 * acc.re.abs().max(1.0) {
            return Err(Error::internal(format!(
                "trace against a Hermitian operator came out complex: {acc}"
            )));
        }
        Ok(acc.re)
    }
}

/// A state on the glued pair (T, f). The variant decides which component the
/// state reads:
///
/// - `Point(x)`: evaluation of f at x ∈ S^{2d−1};
/// - `Density(ρ)`: tr(ρ · T) on the truncation;
/// - `PulledBack(ρ)`: the state ν∘σ, reading tr(ρ · σ(f));
/// - `PiPullback(x)`: the state μ∘π, reading π(T) = g at x.
#[derive(Debug, Clone)]
pub enum State {
    Point(SpherePoint),
    Density(DensityMatrix),
    PulledBack(DensityMatrix),
    PiPullback(SpherePoint),
}

impl State {
    /// Whether the state reads the operator component of a pair.
    pub fn acts_on_operator_side(&self) -> bool {
        matches!(self, State::Density(_) | State::PiPullback(_))
    }

    pub fn sphere_point(&self) -> Option<&SpherePoint> {
        match self {
            State::Point(x) | State::PiPullback(x) => Some(x),
            _ => None,
        }
    }

    pub fn density(&self) -> Option<&DensityMatrix> {
        match self {
            State::Density(r) | State::PulledBack(r) => Some(r),
            _ => None,
        }
    }

    /// The canonical partner on the other side: σ-pullback of a density
    /// state, π-pullback of a point state.
    pub fn canonical_partner(&self) -> State {
        match self {
            State::Point(x) => State::PiPullback(x.clone()),
            State::PiPullback(x) => State::Point(x.clone()),
            State::Density(r) => State::PulledBack(r.clone()),
            State::PulledBack(r) => State::Density(r.clone()),
        }
    }
}

/// Evaluates a state on the pair (T, f).
pub fn evaluate_state(state: &State, t: &LipElement, f: &PolynomialSymbol) -> Result<f64> {
    if !f.is_hermitian() {
        return Err(Error::input("states evaluate real-valued symbols only"));
    }
    if f.dim() != t.weight().dim() {
        return Err(Error::input("symbol dimension mismatch"));
    }
    match state {
        State::Point(x) => {
            if x.dim() != f.dim() {
                return Err(Error::input("state point dimension mismatch"));
            }
            Ok(f.evaluate(x.coords()).re)
        }
        State::PiPullback(x) => {
            if x.dim() != t.boundary().dim() {
                return Err(Error::input("state point dimension mismatch"));
            }
            Ok(t.boundary().evaluate(x.coords()).re)
        }
        State::Density(rho) => rho.trace_against(&t.materialize()?),
        State::PulledBack(rho) => {
            let sigma = splitting_sigma(f, t.weight(), t.cutoff())?;
            rho.trace_against(sigma.entries())
        }
    }
}
