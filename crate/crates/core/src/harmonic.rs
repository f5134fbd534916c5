//! Exact harmonic extension of polynomial boundary data on S^{2d−1} and the
//! induced splitting f ↦ T_{f̃} of the symbol map.
//!
//! A real polynomial f of degree N agrees on the sphere with a unique
//! harmonic polynomial h of degree ≤ N, namely h = f − (|z|² − 1) q where q
//! solves Δ((|z|² − 1) q) = Δf. The solve never forms a matrix: writing
//! q = Σ_m q_m by total degree, each homogeneous block satisfies
//!
//! ```text
//! (4(d+m) + |z|²Δ) q_m = (Δf)_m + Δ q_{m+2},
//! ```
//!
//! and repeated application of Δ(|z|² u) = 4(d + deg u) u + |z|² Δu turns
//! the block into a finite back-substitution with positive integer pivots
//! a_t = 4(t+1)(d+m−t). Everything runs in exact rational arithmetic, so
//! Δh = 0 holds identically, not approximately.

use num::{One, Zero};

use crate::bergman::BergmanWeight;
use crate::error::{Error, Result};
use crate::exact::{rat_int, CRat, Rat};
use crate::symbols::PolynomialSymbol;
use crate::toeplitz::ToeplitzMatrix;

/// A solved Dirichlet problem: `extension` is harmonic and agrees with
/// `boundary` on the unit sphere.
#[derive(Debug, Clone)]
pub struct DirichletSolution {
    pub boundary: PolynomialSymbol,
    pub extension: PolynomialSymbol,
    /// Degree of `extension − boundary`; `None` when the boundary data was
    /// already harmonic.
    pub residual_degree: Option<u32>,
}

/// Computes the unique harmonic polynomial agreeing with `f` on S^{2d−1}.
pub fn harmonic_extension(f: &PolynomialSymbol) -> Result<DirichletSolution> {
    if !f.is_hermitian() {
        return Err(Error::input(
            "harmonic extension needs real-valued (Hermitian) boundary data",
        ));
    }
    let d = f.dim();
    let lap = f.laplacian();
    if lap.is_zero() {
        return Ok(DirichletSolution {
            boundary: f.clone(),
            extension: f.clone(),
            residual_degree: None,
        });
    }
    let n = f.max_degree();
    debug_assert!(n >= 2, "nonzero Laplacian needs degree >= 2");
    // Homogeneous blocks of q, solved from the top degree down.
    let mut blocks: Vec<PolynomialSymbol> = vec![PolynomialSymbol::zero(d); (n - 1) as usize];
    for m in (0..=n - 2).rev() {
        let mut rhs = lap.homogeneous_component(m);
        if (m + 2) as usize <= n as usize - 2 {
            rhs = rhs.add(&blocks[(m + 2) as usize].laplacian())?;
        }
        blocks[m as usize] = solve_block(d, m, &rhs)?;
    }
    let mut q = PolynomialSymbol::zero(d);
    for b in &blocks {
        q = q.add(b)?;
    }
    let sphere = PolynomialSymbol::radius_sq(d).sub(&PolynomialSymbol::one(d))?;
    let extension = f.sub(&sphere.mul(&q)?)?;
    if !extension.laplacian().is_zero() {
        return Err(Error::internal(
            "Dirichlet solve left a non-harmonic residual",
        ));
    }
    let correction = extension.sub(f)?;
    let residual_degree = (!correction.is_zero()).then(|| correction.max_degree());
    Ok(DirichletSolution {
        boundary: f.clone(),
        extension,
        residual_degree,
    })
}

/// Solves (4(d+m) + |z|²Δ) x = r on the homogeneous component of degree m.
fn solve_block(d: u32, m: u32, r: &PolynomialSymbol) -> Result<PolynomialSymbol> {
    if r.is_zero() {
        return Ok(PolynomialSymbol::zero(d));
    }
    let levels = (m / 2) as usize;
    let mut delta_pows = Vec::with_capacity(levels + 1);
    delta_pows.push(r.clone());
    for _ in 0..levels {
        let next = delta_pows.last().unwrap().laplacian();
        delta_pows.push(next);
    }
    let radius = PolynomialSymbol::radius_sq(d);
    let mut y = PolynomialSymbol::zero(d); // y_{t+1}
    for t in (0..=levels).rev() {
        let a_t = 4 * (t as i64 + 1) * (d as i64 + m as i64 - t as i64);
        if a_t <= 0 {
            return Err(Error::internal("Dirichlet block pivot must be positive"));
        }
        let inv = CRat::new(Rat::one() / rat_int(a_t), Rat::zero());
        y = delta_pows[t].sub(&radius.mul(&y)?)?.scale(&inv);
    }
    Ok(y)
}

/// The positive linear splitting σ(f) = T_{f̃} as a truncated matrix.
pub fn splitting_sigma(
    f: &PolynomialSymbol,
    weight: &BergmanWeight,
    max_degree: u32,
) -> Result<ToeplitzMatrix> {
    let solution = harmonic_extension(f)?;
    ToeplitzMatrix::build(weight, &solution.extension, max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::linalg;
    use crate::multiindex::MultiIndex;
    use crate::sphere::SphereSampler;
    use num::complex::Complex64;
    use num::Complex;
    use rand::{RngExt, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn z(d: u32, i: usize) -> PolynomialSymbol {
        PolynomialSymbol::coordinate(d, i)
    }

    fn zb(d: u32, i: usize) -> PolynomialSymbol {
        PolynomialSymbol::conj_coordinate(d, i)
    }

    /// Deterministic random real symbol with small rational coefficients.
    pub(crate) fn random_real_symbol(
        d: u32,
        max_degree: u32,
        rng: &mut ChaCha8Rng,
    ) -> PolynomialSymbol {
        let mut raw = PolynomialSymbol::zero(d);
        let terms = rng.random_range(1..=6);
        for _ in 0..terms {
            let mut a = Vec::new();
            let mut b = Vec::new();
            let mut budget = max_degree;
            for _ in 0..d {
                let da = rng.random_range(0..=budget);
                budget -= da;
                a.push(da);
            }
            for _ in 0..d {
                let db = rng.random_range(0..=budget);
                budget -= db;
                b.push(db);
            }
            let c = Complex::new(
                rat(rng.random_range(-9..=9), rng.random_range(1..=9)),
                rat(rng.random_range(-9..=9), rng.random_range(1..=9)),
            );
            raw = raw
                .add(
                    &PolynomialSymbol::monomial(MultiIndex::new(a), MultiIndex::new(b), c)
                        .unwrap(),
                )
                .unwrap();
        }
        // Hermitian symmetrization makes it real-valued.
        raw.add(&raw.conjugate()).unwrap()
    }

    #[test]
    fn constant_boundary_data() {
        let d = 3;
        let f = PolynomialSymbol::radius_sq(d);
        let sol = harmonic_extension(&f).unwrap();
        assert_eq!(sol.extension, PolynomialSymbol::one(d));
        assert_eq!(sol.residual_degree, Some(2));
    }

    #[test]
    fn analytic_monomials_are_fixed() {
        let f = z(2, 0).mul(&z(2, 1)).unwrap();
        let real = f.add(&f.conjugate()).unwrap();
        let sol = harmonic_extension(&real).unwrap();
        assert_eq!(sol.extension, real);
        assert_eq!(sol.residual_degree, None);
    }

    #[test]
    fn modulus_squared_on_s3() {
        // f = z_1 z̄_1 on S³ extends to 1/2 + (z_1 z̄_1 − z_2 z̄_2)/2.
        let f = z(2, 0).mul(&zb(2, 0)).unwrap();
        let sol = harmonic_extension(&f).unwrap();
        let half = CRat::new(rat(1, 2), rat(0, 1));
        let expect = PolynomialSymbol::constant(2, half.clone())
            .add(
                &z(2, 0)
                    .mul(&zb(2, 0))
                    .unwrap()
                    .sub(&z(2, 1).mul(&zb(2, 1)).unwrap())
                    .unwrap()
                    .scale(&half),
            )
            .unwrap();
        assert_eq!(sol.extension, expect);
        assert!(sol.extension.laplacian().is_zero());

        // Boundary agreement at sampled points of S³.
        let sampler = SphereSampler::generate(2, 100, 11).unwrap();
        for p in sampler.points() {
            let a = f.evaluate(p.coords());
            let b = sol.extension.evaluate(p.coords());
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn rejects_non_real_data() {
        assert!(harmonic_extension(&z(1, 0)).is_err());
    }

    #[test]
    fn random_symbols_extend_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for case in 0..20 {
            let d = 1 + (case % 3) as u32;
            let f = random_real_symbol(d, 6, &mut rng);
            let sol = harmonic_extension(&f).unwrap();
            // Harmonicity is exact.
            assert!(sol.extension.laplacian().is_zero(), "case {case}");
            // Exact membership of h − f in the sphere ideal.
            let diff = sol.extension.sub(&f).unwrap();
            assert!(diff.reduce_mod_sphere().is_zero(), "case {case}");
            // Idempotence.
            let again = harmonic_extension(&sol.extension).unwrap();
            assert_eq!(again.extension, sol.extension);
        }
    }

    #[test]
    fn boundary_agreement_and_maximum_principle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let f = random_real_symbol(2, 5, &mut rng);
        let sol = harmonic_extension(&f).unwrap();
        let sampler = SphereSampler::generate(2, 1000, 3).unwrap();
        let mut min_f = f64::INFINITY;
        let mut max_f = f64::NEG_INFINITY;
        for p in sampler.points() {
            let fb = f.evaluate(p.coords()).re;
            let hb = sol.extension.evaluate(p.coords()).re;
            assert!((fb - hb).abs() <= 1e-10);
            min_f = min_f.min(fb);
            max_f = max_f.max(fb);
        }
        // Interior values stay inside the sphere range (small slack: the
        // sampled extrema underestimate the true ones).
        for (i, p) in sampler.points().iter().enumerate() {
            let radius = 0.05 + 0.9 * (i as f64 / 1000.0);
            let inside: Vec<Complex64> = p.coords().iter().map(|c| c * radius).collect();
            let v = sol.extension.evaluate(&inside).re;
            assert!(v >= min_f - 1e-6 && v <= max_f + 1e-6);
        }
    }

    #[test]
    fn sigma_is_linear_and_positive() {
        let w = BergmanWeight::new(2, 2.0).unwrap();
        let f = z(2, 0).mul(&zb(2, 0)).unwrap();
        let g = z(2, 1).add(&zb(2, 1)).unwrap();
        let sf = splitting_sigma(&f, &w, 4).unwrap();
        let sg = splitting_sigma(&g, &w, 4).unwrap();
        let sum = splitting_sigma(&f.add(&g).unwrap(), &w, 4).unwrap();
        let diff = sum.entries() - (sf.entries() + sg.entries());
        assert!(diff.iter().all(|c| c.norm() < 1e-13));

        // f ≥ 0 on the sphere (it is |z_1|²): σ(f) is PSD.
        assert!(linalg::hermitian_min_eigenvalue(sf.entries()) > -1e-12);

        // Example diagonal value: the extension of |z_1|² has vacuum entry 1/2.
        assert!((sf.entries()[(0, 0)].re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn sigma_of_one_is_identity() {
        let w = BergmanWeight::new(1, 1.0).unwrap();
        let s = splitting_sigma(&PolynomialSymbol::one(1), &w, 5).unwrap();
        for r in 0..s.dim() {
            for c in 0..s.dim() {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert!((s.entries()[(r, c)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn sigma_of_harmonic_symbol_matches_direct_build() {
        let w = BergmanWeight::new(1, 1.0).unwrap();
        let f = z(1, 0).add(&zb(1, 0)).unwrap();
        let s = splitting_sigma(&f, &w, 3).unwrap();
        let direct = ToeplitzMatrix::build(&w, &f, 3).unwrap();
        assert_eq!(s.entries(), direct.entries());
        for k in 0..3usize {
            let expect = ((k as f64 + 1.0) / (k as f64 + 2.0)).sqrt();
            assert!((s.entries()[(k + 1, k)].re - expect).abs() < 1e-14);
        }
    }
}
