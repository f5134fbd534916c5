//! Independent numerical oracles for the closed-form paths.
//!
//! Nothing here reuses the formulas under test: matrix elements are checked
//! against 2-D quadrature over the ball (Gauss–Legendre radially, trapezoid
//! angularly — exact for the polynomial integrands involved, up to
//! rounding), monomial norms against quadrature and seeded Monte Carlo, and
//! the state-distance LP against the metric closure of a circle grid, which
//! solves the grid Lipschitz LP exactly.

use num::complex::Complex64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::multiindex::MultiIndex;
use oddsphere_core::symbols::PolynomialSymbol;
use oddsphere_core::toeplitz::matrix_element;

/// Gauss–Legendre nodes and weights on [0, 1] by Newton iteration on the
/// Legendre polynomial; exact (to rounding) for polynomial degree ≤ 2n−1.
fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Initial guess on [-1, 1].
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre recurrence for P_n(x) and P_{n-1}(x).
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0f64, x);
        for k in 2..=n {
            let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = pk;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // Map [-1, 1] → [0, 1].
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out
}

#[test]
fn gauss_legendre_integrates_polynomials_exactly() {
    let rule = gauss_legendre_unit(8);
    for deg in 0..=15u32 {
        let numeric: f64 = rule.iter().map(|&(x, w)| w * x.powi(deg as i32)).sum();
        let exact = 1.0 / (deg as f64 + 1.0);
        assert!((numeric - exact).abs() < 1e-13, "degree {deg}");
    }
}

/// Quadrature oracle for ⟨T_φ e_k, e_l⟩ on the disk (d = 1):
/// (α/π) ∫_disk φ(z) z^k conj(z)^l (1−|z|²)^{α−1} dA, normalized by the
/// monomial norms, computed as a radial Gauss–Legendre × angular trapezoid
/// double sum. The angular rule is exact for trigonometric polynomials of
/// degree below the node count.
fn disk_matrix_element_oracle(
    alpha: u32,
    phi: &PolynomialSymbol,
    k: u32,
    l: u32,
    radial: usize,
    angular: usize,
) -> Complex64 {
    let rule = gauss_legendre_unit(radial);
    let compiled = phi.compiled();
    let mut raw = Complex64::new(0.0, 0.0);
    for &(u, wu) in &rule {
        // u = r²; dA = π du dθ/(2π) convention folded below.
        let r = u.sqrt();
        let mut angular_sum = Complex64::new(0.0, 0.0);
        for t in 0..angular {
            let theta = 2.0 * std::f64::consts::PI * t as f64 / angular as f64;
            let z = Complex64::from_polar(r, theta);
            let val = compiled.evaluate(&[z]) * z.powu(k) * z.conj().powu(l);
            angular_sum += val;
        }
        let weight = alpha as f64 * (1.0 - u).powi(alpha as i32 - 1);
        raw += angular_sum * wu * weight / angular as f64;
    }
    // Normalize by the monomial norms computed by quadrature as well.
    let norm = |m: u32| -> f64 {
        rule.iter()
            .map(|&(u, wu)| wu * alpha as f64 * (1.0 - u).powi(alpha as i32 - 1) * u.powi(m as i32))
            .sum::<f64>()
    };
    raw / (norm(k) * norm(l)).sqrt()
}

#[test]
fn disk_matrix_elements_match_quadrature() {
    let z = PolynomialSymbol::coordinate(1, 0);
    let zb = PolynomialSymbol::conj_coordinate(1, 0);
    let symbols = [
        z.clone(),
        zb.clone(),
        z.mul(&zb).unwrap(),
        z.mul(&z).unwrap(),
    ];
    for alpha in [1u32, 2, 3] {
        let w = BergmanWeight::new(1, alpha as f64).unwrap();
        for phi in &symbols {
            for k in 0..=15u32 {
                for l in 0..=15u32 {
                    let closed = matrix_element(
                        &w,
                        phi,
                        &MultiIndex::new(vec![k]),
                        &MultiIndex::new(vec![l]),
                    )
                    .unwrap();
                    let oracle = disk_matrix_element_oracle(alpha, phi, k, l, 32, 128);
                    assert!(
                        (closed - oracle).norm() < 1e-8,
                        "alpha={alpha} phi={phi} k={k} l={l}: {closed} vs {oracle}"
                    );
                }
            }
        }
    }
}

#[test]
fn disk_monomial_norm_matches_radial_quadrature() {
    // ∫ |z|² dV_1 over the disk = 1/2.
    let rule = gauss_legendre_unit(16);
    let numeric: f64 = rule.iter().map(|&(u, w)| w * u).sum();
    assert!((numeric - 0.5).abs() < 1e-14);
    let w = BergmanWeight::new(1, 1.0).unwrap();
    assert!((w.monomial_norm_sq(&MultiIndex::new(vec![1])).unwrap() - numeric).abs() < 1e-13);
}

#[test]
fn ball_monomial_norm_matches_monte_carlo() {
    // ∫ |z_1|² dV_2 over B⁴ with d = 2, α = 2: exact value 1/3. The weight
    // (1−|z|²)^{α−d} is identically 1, and dV_2 is the normalized volume, so
    // the integral is the mean of |z_1|² over the uniform ball.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0ddba11);
    let n = 1_000_000usize;
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut accepted = 0usize;
    while accepted < n {
        // Rejection sampling from the cube keeps the oracle independent of
        // any sphere-sampling code in the crate.
        let coords: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let r2: f64 = coords.iter().map(|c| c * c).sum();
        if r2 >= 1.0 {
            continue;
        }
        let z1_sq = coords[0] * coords[0] + coords[1] * coords[1];
        sum += z1_sq;
        sum_sq += z1_sq * z1_sq;
        accepted += 1;
    }
    let mean = sum / n as f64;
    let variance = (sum_sq / n as f64 - mean * mean).max(0.0);
    let stderr = (variance / n as f64).sqrt();
    let w = BergmanWeight::new(2, 2.0).unwrap();
    let exact = w
        .monomial_norm_sq(&MultiIndex::new(vec![1, 0]))
        .unwrap();
    assert!((exact - 1.0 / 3.0).abs() < 1e-14);
    assert!(
        (mean - exact).abs() < 6.0 * stderr + 1e-6,
        "MC mean {mean} vs exact {exact} (stderr {stderr})"
    );
}

/// Metric closure of a finite grid: the exact optimum of the grid LP
/// `max f(x) − f(y)` subject to `|f(p) − f(q)| ≤ |p − q|` for all grid
/// pairs, by LP duality with shortest paths.
fn metric_closure(points: &[(f64, f64)]) -> Vec<Vec<f64>> {
    let n = points.len();
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let dx = points[i].0 - points[j].0;
            let dy = points[i].1 - points[j].1;
            dist[i][j] = (dx * dx + dy * dy).sqrt();
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    dist
}

#[test]
fn grid_lp_oracle_gives_chordal_distances() {
    // 64-point circle grid, plus the two point masses under test.
    let mut grid: Vec<(f64, f64)> = (0..64)
        .map(|t| {
            let theta = 2.0 * std::f64::consts::PI * t as f64 / 64.0;
            (theta.cos(), theta.sin())
        })
        .collect();
    let x = (1.0, 0.0);
    let y = (-0.6, 0.8);
    grid.push(x);
    grid.push(y);
    let closure = metric_closure(&grid);
    let n = grid.len();
    // The chordal metric satisfies the triangle inequality, so the LP value
    // (shortest path) equals the direct distance.
    let direct = ((x.0 - y.0).powi(2) + (x.1 - y.1).powi(2)).sqrt();
    assert!((closure[n - 2][n - 1] - direct).abs() < 1e-12);
    for i in 0..n {
        for j in 0..n {
            let dx = grid[i].0 - grid[j].0;
            let dy = grid[i].1 - grid[j].1;
            let d = (dx * dx + dy * dy).sqrt();
            assert!((closure[i][j] - d).abs() < 1e-12);
        }
    }
}
