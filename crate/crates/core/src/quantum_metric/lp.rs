//! The state-distance linear program
//!
//! ```text
//! ρ(μ, ν) = sup { |μ(T,f) − ν(T,f)| : Λ(T,f) ≤ 1 },
//! ```
//!
//! restricted to the finite family T = T_{σ(g)} + K, with g, f drawn from
//! the real harmonic polynomials of bounded degree and K supported on a
//! leading block. Boundary functions are parameterized directly by a basis
//! of harmonic polynomials: restrictions of polynomials to the sphere
//! coincide with restrictions of their harmonic extensions, so this is the
//! same function family with the null directions removed, and σ acts on it
//! coefficient-by-coefficient. All LP data is real — Hermitian symmetry
//! eliminates the imaginary halves exactly — so every modulus constraint is
//! two linear inequalities.
//!
//! The Λ ≤ 1 constraint splits into: weighted entry bounds (i+j)^s|K_{ij}| ≤ u,
//! sampled pairwise Lipschitz constraints for g (slack v, with u + v ≤ 1)
//! and for f (bound 1), and the sampled bridge constraint |g − f| ≤ γ_{n0}.
//! The LP value estimates ρ from below in the family size and from above in
//! the constraint sampling; `μ(a) − ν(a)` is invariant under joint constant
//! shifts, which the solve pins with a gauge row g(x₀) = 0.

use std::collections::BTreeSet;

use microlp::{ComparisonOp, OptimizationDirection, Problem, Variable};
use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{crat_int, rat_from_f64, CRat};
use crate::harmonic::harmonic_extension;
use crate::multiindex::MultiIndex;
use crate::quantum_metric::bridge::BridgeConfig;
use crate::quantum_metric::lip::LipCompactOperator;
use crate::quantum_metric::state::State;
use crate::sphere::SpherePoint;
use crate::symbols::{CompiledSymbol, PolynomialSymbol};
use crate::toeplitz::ToeplitzMatrix;

/// A basis of the real harmonic polynomials of degree ≤ `degree` on ℂ^d:
/// exactly the boundary-function family of that degree on S^{2d−1}.
#[derive(Debug, Clone)]
pub struct HarmonicBasis {
    d: u32,
    degree: u32,
    elements: Vec<PolynomialSymbol>,
}

impl HarmonicBasis {
    pub fn build(d: u32, degree: u32) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be >= 1"));
        }
        // Real generators: one per conjugate orbit of monomials z^a z̄^b.
        let mut generators = Vec::new();
        let pairs = exponent_pairs(d, degree)?;
        for (a, b) in pairs {
            if a > b {
                continue; // conjugate orbit already covered
            }
            let m = PolynomialSymbol::monomial(a.clone(), b.clone(), crat_int(1, 0))?;
            if a == b {
                generators.push(m);
            } else {
                generators.push(m.add(&m.conjugate())?);
                // −i(m − conj m) is the matching real generator.
                generators.push(m.sub(&m.conjugate())?.scale(&crat_int(0, -1)));
            }
        }
        // Harmonic extensions span the restrictions; exact row reduction
        // drops the dependent ones (e.g. z z̄ extends to the constant 1).
        let mut slots: std::collections::BTreeMap<(MultiIndex, MultiIndex, bool), usize> =
            Default::default();
        let mut rows: Vec<(usize, Vec<crate::exact::Rat>)> = Vec::new();
        let mut elements = Vec::new();
        for g in generators {
            let h = harmonic_extension(&g)?.extension;
            if h.is_zero() {
                continue;
            }
            let mut vector = vec![num::Zero::zero(); slots.len()];
            for ((a, b), c) in h.terms() {
                if a > b {
                    continue; // determined by Hermitian symmetry
                }
                for (im_part, value) in [(false, c.re.clone()), (true, c.im.clone())] {
                    if a == b && im_part {
                        continue; // diagonal coefficients are real
                    }
                    let key = (a.clone(), b.clone(), im_part);
                    let next = slots.len();
                    let slot = *slots.entry(key).or_insert(next);
                    if slot >= vector.len() {
                        vector.resize(slot + 1, num::Zero::zero());
                    }
                    vector[slot] = value;
                }
            }
            if reduce_against(&mut vector, &rows) {
                continue; // dependent
            }
            let pivot = vector
                .iter()
                .position(|x| !num::Zero::is_zero(x))
                .expect("nonzero after reduction");
            let inv = <crate::exact::Rat as num::One>::one() / vector[pivot].clone();
            for x in vector.iter_mut() {
                *x = x.clone() * inv.clone();
            }
            rows.push((pivot, vector));
            elements.push(h);
        }
        Ok(HarmonicBasis {
            d,
            degree,
            elements,
        })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[PolynomialSymbol] {
        &self.elements
    }
}

/// All exponent pairs (a, b) with |a| + |b| ≤ degree.
fn exponent_pairs(d: u32, degree: u32) -> Result<Vec<(MultiIndex, MultiIndex)>> {
    let e = crate::multiindex::Enumeration::new(d)?;
    let all = e.indices_up_to_degree(degree)?;
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if a.degree() + b.degree() <= degree {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Gaussian elimination step against the stored pivot rows; true if the
/// vector reduces to zero.
fn reduce_against(
    vector: &mut Vec<crate::exact::Rat>,
    rows: &[(usize, Vec<crate::exact::Rat>)],
) -> bool {
    for (pivot, row) in rows {
        if *pivot >= vector.len() {
            continue;
        }
        let factor = vector[*pivot].clone();
        if num::Zero::is_zero(&factor) {
            continue;
        }
        for (i, r) in row.iter().enumerate() {
            if i >= vector.len() {
                vector.resize(i + 1, num::Zero::zero());
            }
            vector[i] = vector[i].clone() - factor.clone() * r.clone();
        }
    }
    vector.iter().all(num::Zero::is_zero)
}

/// Family parameters of the distance LP: polynomial degree of the boundary
/// functions and the leading-block support size of the compact part.
#[derive(Debug, Clone, Copy)]
pub struct RhoFamily {
    pub degree: u32,
    pub k_support: u64,
}

/// The optimizing element of a solved distance LP.
#[derive(Debug, Clone)]
pub struct RhoSolution {
    pub value: f64,
    pub g: PolynomialSymbol,
    pub f: PolynomialSymbol,
    pub k: LipCompactOperator,
    pub u: f64,
    pub v: f64,
}

/// A reusable LP context: harmonic basis, its Toeplitz matrices at the
/// truncation, and precomputed basis values on the sample set.
#[derive(Debug)]
pub struct RhoSolver {
    cfg: BridgeConfig,
    family: RhoFamily,
    basis: HarmonicBasis,
    compiled: Vec<CompiledSymbol>,
    t_mats: Vec<DMatrix<Complex64>>,
    truncation_size: usize,
}

#[derive(Default, Clone)]
struct StateCoeffs {
    g: Vec<f64>,
    f: Vec<f64>,
    k: Vec<f64>,
}

impl RhoSolver {
    /// `cutoff` is the truncation degree used to materialize σ(basis); it
    /// must cover every density state passed to [`RhoSolver::distance`].
    pub fn new(cfg: &BridgeConfig, family: &RhoFamily, cutoff: u32) -> Result<Self> {
        let d = cfg.weight().dim();
        let basis = HarmonicBasis::build(d, family.degree)?;
        if basis.is_empty() {
            return Err(Error::internal("harmonic basis came out empty"));
        }
        let truncation_size = cfg
            .weight()
            .enumeration()
            .count_up_to_degree(cutoff)? as usize;
        // Basis elements are harmonic, so σ acts element-by-element.
        let t_mats: Vec<DMatrix<Complex64>> = basis
            .elements()
            .iter()
            .map(|b| Ok(ToeplitzMatrix::build(cfg.weight(), b, cutoff)?.into_entries()))
            .collect::<Result<_>>()?;
        let compiled = basis.elements().iter().map(|b| b.compiled()).collect();
        Ok(RhoSolver {
            cfg: cfg.clone(),
            family: *family,
            basis,
            compiled,
            t_mats,
            truncation_size,
        })
    }

    pub fn basis(&self) -> &HarmonicBasis {
        &self.basis
    }

    pub fn truncation_size(&self) -> usize {
        self.truncation_size
    }

    fn support_pairs(&self) -> Vec<(u64, u64)> {
        let s = self.family.k_support;
        let mut out = Vec::new();
        for i in 1..=s {
            for j in i..=s {
                out.push((i, j));
            }
        }
        out
    }

    fn state_coeffs(&self, state: &State, support: &[(u64, u64)]) -> Result<StateCoeffs> {
        let b = self.basis.len();
        let mut coeffs = StateCoeffs {
            g: vec![0.0; b],
            f: vec![0.0; b],
            k: vec![0.0; support.len()],
        };
        match state {
            State::Point(x) => {
                if x.dim() != self.basis.dim() {
                    return Err(Error::input("state point dimension mismatch"));
                }
                for (i, c) in self.compiled.iter().enumerate() {
                    coeffs.f[i] = c.evaluate(x.coords()).re;
                }
            }
            State::PiPullback(x) => {
                if x.dim() != self.basis.dim() {
                    return Err(Error::input("state point dimension mismatch"));
                }
                for (i, c) in self.compiled.iter().enumerate() {
                    coeffs.g[i] = c.evaluate(x.coords()).re;
                }
            }
            State::Density(rho) | State::PulledBack(rho) => {
                if rho.dim() > self.truncation_size {
                    return Err(Error::input(format!(
                        "density state of size {} exceeds the solver truncation {}",
                        rho.dim(),
                        self.truncation_size
                    )));
                }
                let into_g = matches!(state, State::Density(_));
                for (i, t) in self.t_mats.iter().enumerate() {
                    let v = rho.trace_against(t)?;
                    if into_g {
                        coeffs.g[i] = v;
                    } else {
                        coeffs.f[i] = v;
                    }
                }
                if into_g {
                    let m = rho.matrix();
                    for (slot, &(i, j)) in support.iter().enumerate() {
                        let (r, c) = (i as usize - 1, j as usize - 1);
                        if r < rho.dim() && c < rho.dim() {
                            coeffs.k[slot] = if i == j {
                                m[(r, r)].re
                            } else {
                                2.0 * m[(r, c)].re
                            };
                        }
                    }
                }
            }
        }
        Ok(coeffs)
    }

    /// Deterministic pair selection: state points pair with each other and
    /// with leading samples, nearest-neighbour pairs pin the local Lipschitz
    /// behaviour, and seeded random pairs fill the budget.
    fn build_pairs(&self, points: &[SpherePoint], num_state_points: usize) -> Vec<(usize, usize)> {
        let total = points.len();
        let samples = total - num_state_points;
        let budget = self.cfg.pairs().max(num_state_points * 4);
        let mut set: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 0..num_state_points {
            for j in i + 1..num_state_points {
                set.insert((i, j));
            }
        }
        let lead = samples.min(64);
        for i in 0..num_state_points {
            for j in 0..lead {
                set.insert((i, num_state_points + j));
            }
        }
        let nn_count = samples.min(budget / 2);
        for i in 0..nn_count {
            let pi = num_state_points + i;
            let mut best = None;
            let mut best_dist = f64::INFINITY;
            for j in 0..samples {
                let pj = num_state_points + j;
                if pi == pj {
                    continue;
                }
                let dist = points[pi].chordal(&points[pj]);
                if dist < best_dist {
                    best_dist = dist;
                    best = Some(pj);
                }
            }
            if let Some(pj) = best {
                set.insert((pi.min(pj), pi.max(pj)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.sampler().seed() ^ 0x70ab_17e5);
        let mut guard = 0usize;
        while set.len() < budget && guard < budget * 20 && samples >= 2 {
            let i = num_state_points + rng.random_range(0..samples);
            let j = num_state_points + rng.random_range(0..samples);
            if i != j {
                set.insert((i.min(j), i.max(j)));
            }
            guard += 1;
        }
        set.into_iter()
            .filter(|&(i, j)| points[i].chordal(&points[j]) > 1e-9)
            .collect()
    }

    /// Solves the distance LP between two states.
    pub fn distance(&self, mu: &State, nu: &State) -> Result<RhoSolution> {
        let support = self.support_pairs();
        let mu_coeffs = self.state_coeffs(mu, &support)?;
        let nu_coeffs = self.state_coeffs(nu, &support)?;

        let mut state_points: Vec<SpherePoint> = Vec::new();
        for s in [mu, nu] {
            if let Some(x) = s.sphere_point() {
                state_points.push(x.clone());
            }
        }
        let num_state_points = state_points.len();
        let mut points = state_points;
        points.extend(self.cfg.sampler().points().iter().cloned());
        // Basis values at every constraint point.
        let values: Vec<Vec<f64>> = points
            .iter()
            .map(|p| {
                self.compiled
                    .iter()
                    .map(|c| c.evaluate(p.coords()).re)
                    .collect()
            })
            .collect();
        let pairs = self.build_pairs(&points, num_state_points);

        let b = self.basis.len();
        let gamma_hi = self.cfg.gamma_n0().hi;
        let s_exp = self.cfg.weight().alpha() + 2.0;

        let mut prob = Problem::new(OptimizationDirection::Maximize);
        let unbounded = (f64::NEG_INFINITY, f64::INFINITY);
        let g_vars: Vec<Variable> = (0..b)
            .map(|i| prob.add_var(mu_coeffs.g[i] - nu_coeffs.g[i], unbounded))
            .collect();
        let f_vars: Vec<Variable> = (0..b)
            .map(|i| prob.add_var(mu_coeffs.f[i] - nu_coeffs.f[i], unbounded))
            .collect();
        let k_vars: Vec<Variable> = support
            .iter()
            .enumerate()
            .map(|(slot, _)| prob.add_var(mu_coeffs.k[slot] - nu_coeffs.k[slot], unbounded))
            .collect();
        let u = prob.add_var(0.0, (0.0, 1.0));
        let v = prob.add_var(0.0, (0.0, 1.0));

        // (i) weighted entry bounds: (i+j)^s |K_{ij}| ≤ u.
        for (slot, &(i, j)) in support.iter().enumerate() {
            let w = ((i + j) as f64).powf(s_exp);
            prob.add_constraint(
                [(k_vars[slot], w), (u, -1.0)],
                ComparisonOp::Le,
                0.0,
            );
            prob.add_constraint(
                [(k_vars[slot], -w), (u, -1.0)],
                ComparisonOp::Le,
                0.0,
            );
        }
        // (ii) pairwise Lipschitz constraints.
        for &(p, q) in &pairs {
            let dist = points[p].chordal(&points[q]);
            for sign in [1.0f64, -1.0] {
                let mut row: Vec<(Variable, f64)> = Vec::with_capacity(b + 1);
                for i in 0..b {
                    let diff = values[p][i] - values[q][i];
                    if diff != 0.0 {
                        row.push((g_vars[i], sign * diff));
                    }
                }
                row.push((v, -dist));
                prob.add_constraint(row, ComparisonOp::Le, 0.0);
                let mut row: Vec<(Variable, f64)> = Vec::with_capacity(b);
                for i in 0..b {
                    let diff = values[p][i] - values[q][i];
                    if diff != 0.0 {
                        row.push((f_vars[i], sign * diff));
                    }
                }
                prob.add_constraint(row, ComparisonOp::Le, dist);
            }
        }
        // (iii) L_n(T) ≤ 1 through u + v ≤ 1.
        prob.add_constraint([(u, 1.0), (v, 1.0)], ComparisonOp::Le, 1.0);
        // (iv) bridge constraint |g − f| ≤ γ_{n0} at every constraint point.
        for vals in &values {
            for sign in [1.0f64, -1.0] {
                let mut row: Vec<(Variable, f64)> = Vec::with_capacity(2 * b);
                for i in 0..b {
                    if vals[i] != 0.0 {
                        row.push((g_vars[i], sign * vals[i]));
                        row.push((f_vars[i], -sign * vals[i]));
                    }
                }
                if !row.is_empty() {
                    prob.add_constraint(row, ComparisonOp::Le, gamma_hi);
                }
            }
        }
        // Gauge: joint constant shifts leave the objective invariant.
        let anchor = &values[num_state_points];
        let row: Vec<(Variable, f64)> = (0..b)
            .filter(|&i| anchor[i] != 0.0)
            .map(|i| (g_vars[i], anchor[i]))
            .collect();
        prob.add_constraint(row, ComparisonOp::Eq, 0.0);

        let outcome = prob.solve().map_err(|e| match e {
            microlp::Error::Infeasible => {
                Error::internal("distance LP reported infeasible (zero is feasible)")
            }
            microlp::Error::Unbounded => {
                Error::internal("distance LP reported unbounded (constraints compact it)")
            }
            other => Error::internal(format!("LP solver failure: {other:?}")),
        })?;
        let solution = outcome
            .into_solution()
            .map_err(|_| Error::internal("LP solve interrupted"))?;

        let combine = |vars: &[Variable]| -> Result<PolynomialSymbol> {
            let mut acc = PolynomialSymbol::zero(self.basis.dim());
            for (i, var) in vars.iter().enumerate() {
                let c = solution.var_value(*var);
                if c.abs() < 1e-12 {
                    continue;
                }
                let rat = rat_from_f64(c).ok_or_else(|| Error::internal("non-finite optimizer"))?;
                acc = acc.add(&self.basis.elements()[i].scale(&CRat::new(rat, num::Zero::zero())))?;
            }
            Ok(acc.with_float_provenance())
        };
        let g = combine(&g_vars)?;
        let f = combine(&f_vars)?;
        let k = LipCompactOperator::new(
            s_exp,
            support.iter().enumerate().filter_map(|(slot, &(i, j))| {
                let val = solution.var_value(k_vars[slot]);
                (val.abs() >= 1e-12).then_some((i, j, val))
            }),
        )?;
        Ok(RhoSolution {
            value: solution.objective(),
            g,
            f,
            k,
            u: solution.var_value(u),
            v: solution.var_value(v),
        })
    }
}

/// One-shot distance between two states; the truncation degree is derived
/// from the density states involved.
pub fn rho_distance_lp(
    mu: &State,
    nu: &State,
    family: &RhoFamily,
    cfg: &BridgeConfig,
) -> Result<RhoSolution> {
    let mut max_dim = 0usize;
    for s in [mu, nu] {
        if let Some(rho) = s.density() {
            max_dim = max_dim.max(rho.dim());
        }
    }
    let enumeration = cfg.weight().enumeration();
    let mut cutoff = 0u32;
    while (enumeration.count_up_to_degree(cutoff)? as usize) < max_dim {
        cutoff += 1;
    }
    RhoSolver::new(cfg, family, cutoff)?.distance(mu, nu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::BergmanWeight;
    use crate::quantum_metric::state::DensityMatrix;

    fn circle_cfg(samples: usize, pairs: usize, seed: u64) -> BridgeConfig {
        let w = BergmanWeight::new(1, 1.0).unwrap();
        BridgeConfig::new(w, None, samples, pairs, seed, 1e-9).unwrap()
    }

    #[test]
    fn circle_basis_dimension() {
        // 1, cos θ, sin θ, cos 2θ, sin 2θ.
        let basis = HarmonicBasis::build(1, 2).unwrap();
        assert_eq!(basis.len(), 5);
        for b in basis.elements() {
            assert!(b.laplacian().is_zero());
            assert!(b.is_hermitian());
        }
        // Degree 0: just the constants.
        assert_eq!(HarmonicBasis::build(1, 0).unwrap().len(), 1);
        // S³, degree 1: 1 and the four real coordinates.
        assert_eq!(HarmonicBasis::build(2, 1).unwrap().len(), 5);
    }

    #[test]
    fn sphere_basis_counts_match_harmonic_dimensions() {
        // dim of spherical harmonics on S³ of degree ≤ 2: 1 + 4 + 9 = 14.
        let basis = HarmonicBasis::build(2, 2).unwrap();
        assert_eq!(basis.len(), 14);
    }

    #[test]
    fn identical_states_have_zero_distance() {
        let cfg = circle_cfg(96, 128, 3);
        let family = RhoFamily {
            degree: 2,
            k_support: 4,
        };
        let x = SpherePoint::from_real_coords(&[0.6, 0.8]).unwrap();
        let sol =
            rho_distance_lp(&State::Point(x.clone()), &State::Point(x), &family, &cfg).unwrap();
        assert!(sol.value.abs() <= 1e-8, "{}", sol.value);
    }

    #[test]
    fn antipodal_point_masses_on_the_circle() {
        let cfg = circle_cfg(128, 256, 5);
        let family = RhoFamily {
            degree: 1,
            k_support: 2,
        };
        let mu = State::Point(SpherePoint::from_real_coords(&[1.0, 0.0]).unwrap());
        let nu = State::Point(SpherePoint::from_real_coords(&[-1.0, 0.0]).unwrap());
        let sol = rho_distance_lp(&mu, &nu, &family, &cfg).unwrap();
        assert!((sol.value - 2.0).abs() < 0.04, "{}", sol.value);
        // The optimizer is essentially f(θ) = ±cos θ.
        assert!(sol.v <= 1.0 + 1e-9);
    }

    #[test]
    fn symmetry_of_the_distance() {
        let cfg = circle_cfg(96, 160, 11);
        let family = RhoFamily {
            degree: 2,
            k_support: 3,
        };
        let mu = State::Point(SpherePoint::from_real_coords(&[0.0, 1.0]).unwrap());
        let nu = State::Density(DensityMatrix::vector_state(1, 4).unwrap());
        let a = rho_distance_lp(&mu, &nu, &family, &cfg).unwrap().value;
        let b = rho_distance_lp(&nu, &mu, &family, &cfg).unwrap().value;
        assert!((a - b).abs() <= 1e-8, "{a} vs {b}");
    }

    #[test]
    fn density_to_its_pullback_respects_two_gamma() {
        let cfg = circle_cfg(512, 256, 17);
        let family = RhoFamily {
            degree: 2,
            k_support: 5,
        };
        let rho = DensityMatrix::vector_state(1, 5).unwrap();
        let mu = State::Density(rho.clone());
        let nu = State::PulledBack(rho);
        let sol = rho_distance_lp(&mu, &nu, &family, &cfg).unwrap();
        let two_gamma = 2.0 * cfg.gamma_n0().hi;
        // Mesh slack only; generous envelope.
        assert!(
            sol.value <= two_gamma + 0.05,
            "{} vs 2γ = {two_gamma}",
            sol.value
        );
        assert!(sol.value > 0.0);
    }

    #[test]
    fn optimizer_satisfies_the_proof_chain() {
        // For the returned a = (g, K, f): |μ(a) − ν∘σ(a)| ≤ ‖K‖ + ‖g−f‖_∞,
        // term by term against the certified bounds.
        let cfg = circle_cfg(256, 256, 23);
        let family = RhoFamily {
            degree: 2,
            k_support: 4,
        };
        let rho = DensityMatrix::vector_state(2, 5).unwrap();
        let sol = rho_distance_lp(
            &State::Density(rho.clone()),
            &State::PulledBack(rho),
            &family,
            &cfg,
        )
        .unwrap();
        let k_norm = sol.k.norm_interval().hi;
        let g_minus_f = sol.g.sub(&sol.f).unwrap();
        let sup = g_minus_f.sup_norm_on_sphere(cfg.sampler()).unwrap().hi;
        let gamma = cfg.gamma_n0().hi;
        assert!(k_norm <= gamma * sol.u + 1e-7, "{k_norm} vs γu");
        assert!(sup <= gamma + 0.05, "{sup} vs γ (sampled)");
        assert!(sol.value <= k_norm + sup + 1e-6);
    }
}
