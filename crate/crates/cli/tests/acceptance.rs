//! Acceptance suite: one test per criterion, each printing a PASS line and
//! pinning its tolerance in code. Oracles (quadrature, metric closure)
//! live here and stay independent of the library paths they check.

use std::time::Instant;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use oddsphere_core::bergman::BergmanWeight;
use oddsphere_core::exact::{rat, CRat};
use oddsphere_core::harmonic::{harmonic_extension, splitting_sigma};
use oddsphere_core::linalg;
use oddsphere_core::multiindex::MultiIndex;
use oddsphere_core::quantum_metric::{
    gamma, hausdorff_estimate, lemma_bound_check, qgh_upper_bound, rho_distance_lp, BridgeConfig,
    DensityMatrix, LipElement, RhoFamily, State,
};
use oddsphere_core::sphere::{SpherePoint, SphereSampler};
use oddsphere_core::symbols::PolynomialSymbol;
use oddsphere_core::toeplitz::{commutator_exact, matrix_element, u_conjugation_difference};
use oddsphere_core::Complex64;

fn z(d: u32, i: usize) -> PolynomialSymbol {
    PolynomialSymbol::coordinate(d, i)
}

fn zb(d: u32, i: usize) -> PolynomialSymbol {
    PolynomialSymbol::conj_coordinate(d, i)
}

// ---------------------------------------------------------------------
// Criterion 1: closed-form matrix elements against polar quadrature.
// ---------------------------------------------------------------------

/// Gauss–Legendre nodes/weights on [0, 1].
fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.push((0.5 * (x + 1.0), 0.5 * w));
    }
    out
}

/// Independent polar-quadrature oracle for a disk matrix element
/// ⟨T_φ e_k, e_l⟩ at integer α: radial Gauss–Legendre (exact for the
/// polynomial radial integrand), angular trapezoid (exact for the harmonics
/// involved).
fn disk_oracle(alpha: u32, phi: &PolynomialSymbol, k: u32, l: u32) -> Complex64 {
    let rule = gauss_legendre_unit(24);
    let angular = 64usize;
    let compiled = phi.compiled();
    let mut raw = Complex64::new(0.0, 0.0);
    for &(u, wu) in &rule {
        let r = u.sqrt();
        let mut angular_sum = Complex64::new(0.0, 0.0);
        for t in 0..angular {
            let theta = 2.0 * std::f64::consts::PI * t as f64 / angular as f64;
            let zp = Complex64::from_polar(r, theta);
            angular_sum += compiled.evaluate(&[zp]) * zp.powu(k) * zp.conj().powu(l);
        }
        raw += angular_sum * wu * alpha as f64 * (1.0 - u).powi(alpha as i32 - 1) / angular as f64;
    }
    let norm = |m: u32| -> f64 {
        rule.iter()
            .map(|&(u, wu)| wu * alpha as f64 * (1.0 - u).powi(alpha as i32 - 1) * u.powi(m as i32))
            .sum::<f64>()
    };
    raw / (norm(k) * norm(l)).sqrt()
}

#[test]
fn criterion_1_matrix_element_exactness() {
    let started = Instant::now();
    let symbols = [
        z(1, 0),
        zb(1, 0),
        z(1, 0).mul(&zb(1, 0)).unwrap(),
        z(1, 0).mul(&z(1, 0)).unwrap(),
    ];
    for alpha in [1u32, 2, 3] {
        let weight = BergmanWeight::new(1, alpha as f64).unwrap();
        for phi in &symbols {
            for k in 0..=15u32 {
                for l in 0..=15u32 {
                    let closed = matrix_element(
                        &weight,
                        phi,
                        &MultiIndex::new(vec![k]),
                        &MultiIndex::new(vec![l]),
                    )
                    .unwrap();
                    let oracle = disk_oracle(alpha, phi, k, l);
                    assert!(
                        (closed - oracle).norm() < 1e-8,
                        "alpha={alpha} phi={phi} k={k} l={l}: {closed} vs {oracle}"
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "criterion 1 runtime {elapsed:?} exceeds 10 s"
    );
    println!(
        "ACCEPTANCE criterion 1 PASS: 16x16 elements, 4 symbols, alpha in {{1,2,3}} \
         match quadrature to 1e-8 ({elapsed:?})"
    );
}

// ---------------------------------------------------------------------
// Criterion 2: kernel series versus closed form.
// ---------------------------------------------------------------------

#[test]
fn criterion_2_kernel_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0usize;
    for (d, alpha) in [(1u32, 1.0f64), (1, 2.5), (2, 2.0), (2, 3.0)] {
        let weight = BergmanWeight::new(d, alpha).unwrap();
        for _ in 0..5 {
            // Interior points of radius ≤ 0.7 so the degree-40 tail is far
            // below the tolerance.
            let sample = |rng: &mut ChaCha8Rng| -> Vec<Complex64> {
                let dir: Vec<f64> = (0..2 * d).map(|_| rng.random_range(-1.0..1.0)).collect();
                let norm: f64 = dir.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-9);
                let radius = 0.7 * rng.random_range(0.1f64..1.0).powf(0.5);
                dir.chunks(2)
                    .map(|c| Complex64::new(c[0], c[1]) * (radius / norm))
                    .collect()
            };
            let zp = sample(&mut rng);
            let vp = sample(&mut rng);
            let check = weight.kernel_series_check(&zp, &vp, 40).unwrap();
            assert!(
                check.gap < 1e-7,
                "d={d} alpha={alpha}: gap {} at z={zp:?} v={vp:?}",
                check.gap
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 20);
    println!(
        "ACCEPTANCE criterion 2 PASS: kernel series at degree 40 matches the closed form \
         to 1e-7 at 20 interior points, d <= 2"
    );
}

// ---------------------------------------------------------------------
// Criterion 3: harmonic splitting.
// ---------------------------------------------------------------------

fn random_real_symbol(d: u32, max_degree: u32, rng: &mut ChaCha8Rng) -> PolynomialSymbol {
    let mut raw = PolynomialSymbol::zero(d);
    let terms = rng.random_range(1..=5);
    for _ in 0..terms {
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut budget = max_degree;
        for _ in 0..d {
            let e = rng.random_range(0..=budget);
            budget -= e;
            a.push(e);
        }
        for _ in 0..d {
            let e = rng.random_range(0..=budget);
            budget -= e;
            b.push(e);
        }
        let c = CRat::new(
            rat(rng.random_range(-9..=9), rng.random_range(1..=9)),
            rat(rng.random_range(-9..=9), rng.random_range(1..=9)),
        );
        raw = raw
            .add(&PolynomialSymbol::monomial(MultiIndex::new(a), MultiIndex::new(b), c).unwrap())
            .unwrap();
    }
    raw.add(&raw.conjugate()).unwrap()
}

#[test]
fn criterion_3_harmonic_splitting() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // 200 random rational real symbols: exact harmonicity, sphere residual,
    // and the section property of the symbol map.
    for case in 0..200 {
        let d = 1 + (case % 3) as u32;
        let f = random_real_symbol(d, 6, &mut rng);
        let solution = harmonic_extension(&f).unwrap();
        assert!(
            solution.extension.laplacian().is_zero(),
            "case {case}: non-harmonic extension"
        );
        let sampler = SphereSampler::generate(d, 1000, 1000 + case as u64).unwrap();
        let fb = f.compiled();
        let he = solution.extension.compiled();
        let mut residual = 0.0f64;
        for p in sampler.points() {
            residual = residual.max((fb.evaluate(p.coords()) - he.evaluate(p.coords())).norm());
        }
        assert!(residual <= 1e-10, "case {case}: residual {residual}");

        // π ∘ σ = id: the Lip element σ(f) carries f as its boundary symbol.
        let weight = BergmanWeight::new(d, d as f64).unwrap();
        let element = LipElement::new(f.clone(), [], weight, 4).unwrap();
        assert_eq!(oddsphere_core::quantum_metric::pi_of(&element), &f);
    }

    // 50 nonnegative symbols: σ stays positive semidefinite on truncations.
    for case in 0..50 {
        let d = 1 + (case % 3) as u32;
        let cutoff = match d {
            1 => 8,
            2 => 5,
            _ => 4,
        };
        let p = random_real_symbol(d, 3, &mut rng);
        let f = p.mul(&p.conjugate()).unwrap(); // |p|² ≥ 0 on the sphere
        let weight = BergmanWeight::new(d, d as f64).unwrap();
        let sigma = splitting_sigma(&f, &weight, cutoff).unwrap();
        let min_eig = linalg::hermitian_min_eigenvalue(sigma.entries());
        let scale = f.coeff_abs_sum().max(1.0);
        assert!(
            min_eig > -1e-10 * scale,
            "case {case}: min eigenvalue {min_eig}"
        );
    }
    println!(
        "ACCEPTANCE criterion 3 PASS: 200 exact Dirichlet solves (residual <= 1e-10, \
         pi∘sigma = id) and 50 PSD truncations"
    );
}

// ---------------------------------------------------------------------
// Criterion 4: the norm bound ‖K‖ ≤ γ_α L̃(K) with the Schur chain.
// ---------------------------------------------------------------------

#[test]
fn criterion_4_lemma_bound() {
    let started = Instant::now();
    for alpha in [1.0f64, 2.0, 5.0] {
        let report = lemma_bound_check(alpha, 1000, 0x5eed + alpha as u64, 30).unwrap();
        assert!(
            report.pass,
            "alpha={alpha}: max ratio {} vs gamma {}",
            report.max_ratio, report.gamma_bound.hi
        );
        assert!(report.schur_chain_ok, "alpha={alpha}: Schur chain failed");
        assert!(report.max_ratio <= report.gamma_bound.hi);
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "criterion 4 runtime {elapsed:?} exceeds 60 s"
    );
    println!(
        "ACCEPTANCE criterion 4 PASS: 3x1000 random 30x30 operators satisfy the gamma bound \
         and the Schur chain term-wise ({elapsed:?})"
    );
}

// ---------------------------------------------------------------------
// Criterion 5: certified γ values.
// ---------------------------------------------------------------------

#[test]
fn criterion_5_gamma_values() {
    let g1 = gamma(1.0, 1e-8).unwrap();
    assert!(g1.width() <= 1e-8, "width {}", g1.width());
    // ζ(3) − 1 to full precision; the quoted 7-digit value agrees.
    let zeta3_minus_1 = 1.2020569031595942854f64 - 1.0;
    assert!(g1.contains(zeta3_minus_1), "{g1}");
    assert!((g1.midpoint() - 0.2020569).abs() < 1e-7);

    let g2 = gamma(2.0, 1e-8).unwrap();
    assert!(g2.width() <= 1e-8);
    let closed_form = std::f64::consts::PI.powi(4) / 90.0 - 1.0;
    assert!(g2.contains(closed_form), "{g2} vs {closed_form}");
    println!(
        "ACCEPTANCE criterion 5 PASS: gamma(1) and gamma(2) certified to width 1e-8 \
         around zeta(3)-1 and pi^4/90-1"
    );
}

// ---------------------------------------------------------------------
// Criterion 6: convergence bound table and byte-identical CSV.
// ---------------------------------------------------------------------

#[test]
fn criterion_6_convergence_bound_table() {
    // Library side: 2γ_α strictly decreasing, below 1e-3 at α = 9.
    let mut prev = f64::INFINITY;
    for alpha in 1..=12u32 {
        let bound = qgh_upper_bound(alpha as f64).unwrap();
        assert!(bound.hi < prev, "not strictly decreasing at alpha={alpha}");
        prev = bound.lo;
        if alpha == 9 {
            assert!(bound.hi < 1e-3, "2*gamma(9) = {}", bound.hi);
        }
    }

    // CLI side: the emitted CSV is byte-identical across repeated runs and
    // thread counts under a fixed seed.
    let exe = env!("CARGO_BIN_EXE_oddsphere");
    let args = [
        "qgh",
        "--d",
        "1",
        "--alpha-list",
        "1,2,3,4,5,6,7,8,9,10,11,12",
        "--degree",
        "1",
        "--pairs",
        "64",
        "--samples",
        "64",
        "--seed",
        "11",
        "--cutoff",
        "4",
        "--vectors",
        "1",
        "--points",
        "1",
        "--support",
        "2",
    ];
    let run = |threads: &str| -> Vec<u8> {
        let output = std::process::Command::new(exe)
            .args(args)
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .expect("qgh run");
        assert!(output.status.success(), "qgh exited with {:?}", output.status);
        output.stdout
    };
    let first = run("2");
    let second = run("2");
    let single_thread = run("1");
    assert_eq!(first, second, "repeated runs differ");
    assert_eq!(first, single_thread, "thread count changed the bytes");

    // The emitted 2γ columns decrease strictly and cross 1e-3 by α = 9.
    let text = String::from_utf8(first).unwrap();
    let mut rows = 0;
    let mut prev_hi = f64::INFINITY;
    for line in text.lines().skip(1) {
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let alpha: f64 = fields[0].parse().unwrap();
        let hi: f64 = fields[3].parse().unwrap();
        assert!(hi < prev_hi);
        prev_hi = hi;
        if (alpha - 9.0).abs() < 1e-12 {
            assert!(hi < 1e-3);
        }
        rows += 1;
    }
    assert_eq!(rows, 12);
    assert!(text.trim_end().lines().last().unwrap().starts_with("# config: "));
    println!(
        "ACCEPTANCE criterion 6 PASS: 2*gamma strictly decreasing over alpha=1..12, \
         < 1e-3 at alpha=9, CSV byte-identical across runs and thread counts"
    );
}

// ---------------------------------------------------------------------
// Criterion 7: state-distance LP sanity against the grid-LP oracle.
// ---------------------------------------------------------------------

/// Exact optimum of the grid Lipschitz LP by metric closure (LP duality
/// with shortest paths): max f(x) − f(y) s.t. |f(p) − f(q)| ≤ |p − q| over
/// all grid pairs equals the shortest-path distance.
fn grid_lp_oracle(x: (f64, f64), y: (f64, f64)) -> f64 {
    let mut grid: Vec<(f64, f64)> = (0..64)
        .map(|t| {
            let theta = 2.0 * std::f64::consts::PI * t as f64 / 64.0;
            (theta.cos(), theta.sin())
        })
        .collect();
    grid.push(x);
    grid.push(y);
    let n = grid.len();
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let dx = grid[i].0 - grid[j].0;
            let dy = grid[i].1 - grid[j].1;
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
    dist[n - 2][n - 1]
}

#[test]
fn criterion_7_state_distance_lp_sanity() {
    let weight = BergmanWeight::new(1, 1.0).unwrap();
    let cfg = BridgeConfig::new(weight, None, 512, 512, 7, 1e-9).unwrap();
    let family = RhoFamily {
        degree: 2,
        k_support: 4,
    };
    let cases = [
        ([1.0, 0.0], [-1.0, 0.0]),
        ([1.0, 0.0], [0.0, 1.0]),
        ([0.6, 0.8], [-0.8, 0.6]),
    ];
    for (a, b) in cases {
        let mu = State::Point(SpherePoint::from_real_coords(&a).unwrap());
        let nu = State::Point(SpherePoint::from_real_coords(&b).unwrap());
        let solution = rho_distance_lp(&mu, &nu, &family, &cfg).unwrap();
        let oracle = grid_lp_oracle((a[0], a[1]), (b[0], b[1]));
        assert!(
            (solution.value - oracle).abs() <= 0.02 * oracle,
            "points {a:?} {b:?}: LP {} vs oracle {oracle}",
            solution.value
        );
    }
    // Identical states: zero distance to LP tolerance.
    let mu = State::Point(SpherePoint::from_real_coords(&[0.6, 0.8]).unwrap());
    let same = rho_distance_lp(&mu, &mu.clone(), &family, &cfg).unwrap();
    assert!(same.value.abs() <= 1e-8, "{}", same.value);
    println!(
        "ACCEPTANCE criterion 7 PASS: point-mass LP distances within 2% of the grid-LP \
         oracle (chordal metric); identical states at 0 within 1e-8"
    );
}

// ---------------------------------------------------------------------
// Criterion 8: convergence trend on fixed nets.
// ---------------------------------------------------------------------

#[test]
fn criterion_8_convergence_trend() {
    let started = Instant::now();
    let cutoff = 12u32;
    let truncation_size = 13usize; // count_up_to_degree(12) for d = 1
    let family = RhoFamily {
        degree: 2,
        k_support: 5,
    };
    let net_a: Vec<State> = (1..=5)
        .map(|j| State::Density(DensityMatrix::vector_state(j, truncation_size).unwrap()))
        .collect();
    let net_b: Vec<State> = [[1.0, 0.0], [-0.5, 3f64.sqrt() / 2.0], [-0.5, -(3f64.sqrt()) / 2.0]]
        .iter()
        .map(|c| State::Point(SpherePoint::from_real_coords(c).unwrap()))
        .collect();

    let mut decreasing = 0;
    for seed in 1..=5u64 {
        let mut values = Vec::new();
        for alpha in [1.0f64, 4.0] {
            let weight = BergmanWeight::new(1, alpha).unwrap();
            let cfg = BridgeConfig::new(weight, None, 384, 384, seed, 1e-9).unwrap();
            let report = hausdorff_estimate(&net_a, &net_b, &family, &cfg, true).unwrap();
            let envelope = report.upper_bound_2gamma.hi + 0.05;
            assert!(
                report.value <= envelope,
                "seed {seed} alpha {alpha}: {} above 2*gamma + 0.05 = {envelope}",
                report.value
            );
            values.push(report.value);
        }
        if values[1] < values[0] {
            decreasing += 1;
        }
        let _ = cutoff;
    }
    assert_eq!(decreasing, 5, "alpha=4 estimate must sit below alpha=1 on every seed");
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs_f64() < 300.0,
        "criterion 8 runtime {elapsed:?} exceeds 5 min"
    );
    println!(
        "ACCEPTANCE criterion 8 PASS: Hausdorff estimate decreases from alpha=1 to alpha=4 \
         on 5/5 seeds and stays within 2*gamma + 0.05 ({elapsed:?})"
    );
}

// ---------------------------------------------------------------------
// Criterion 9: exact-sequence evidence.
// ---------------------------------------------------------------------

#[test]
fn criterion_9_exact_sequence_evidence() {
    // Exact commutator diagonal on the disk: [T_z̄, T_z](k,k) = 1/((k+1)(k+2)).
    let weight = BergmanWeight::new(1, 1.0).unwrap();
    let (comm, rows) = commutator_exact(&weight, &zb(1, 0), &z(1, 0), 20).unwrap();
    for k in 0..=18usize {
        let value = comm.entry(k, k).rational_value().unwrap();
        let expect = rat(1, (k as i64 + 1) * (k as i64 + 2));
        assert_eq!(value, CRat::new(expect, rat(0, 1)), "k = {k}");
    }
    assert!(!rows.is_empty());

    // Weight-comparison difference: for the curvature-cancelled diagonal
    // symbol z z̄ − (1/2) z² z̄² the per-degree maxima decay like 1/m², so
    // degree 5 to degree 50 drops by well over 10x. (For a single-band
    // symbol such as z the decay is only ~1/m; monotonicity is checked for
    // it separately below.)
    let low = BergmanWeight::new(1, 1.0).unwrap();
    let high = BergmanWeight::new(1, 2.0).unwrap();
    let zzb = z(1, 0).mul(&zb(1, 0)).unwrap();
    let quartic = zzb.mul(&zzb).unwrap();
    let cancelled = zzb
        .sub(&quartic.scale_rat(&rat(1, 2)))
        .unwrap();
    let rows = u_conjugation_difference(&cancelled, &high, &low, 52).unwrap();
    let at5 = rows[5].max_abs;
    let at50 = rows[50].max_abs;
    assert!(
        at5 >= 10.0 * at50,
        "degree-5 max {at5} vs degree-50 max {at50}: ratio {}",
        at5 / at50
    );

    let rows_z = u_conjugation_difference(&z(1, 0), &high, &low, 52).unwrap();
    assert!(rows_z[5].max_abs > rows_z[50].max_abs);
    println!(
        "ACCEPTANCE criterion 9 PASS: exact commutator diagonal 1/((k+1)(k+2)); \
         weight-comparison maxima drop {:.1}x from degree 5 to 50",
        at5 / at50
    );
}
