//! Deterministic seeded sampling of the unit sphere S^{2d−1} ⊂ ℂ^d.
//!
//! Points are drawn by normalizing standard Gaussian vectors of ℝ^{2d},
//! which is uniform on the sphere in any dimension. The covering radius of
//! a sample is estimated as twice the maximum nearest-neighbour distance
//! within it; interval-producing operations inflate sampled maxima by this
//! mesh bound.

use num::complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// A point of S^{2d−1}, stored as complex coordinates with |x| = 1 up to
/// 1e−12.
#[derive(Debug, Clone, PartialEq)]
pub struct SpherePoint {
    coords: Vec<Complex64>,
}

impl SpherePoint {
    /// Validates the unit-norm invariant.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::input("sphere point needs dimension >= 1"));
        }
        let norm_sq: f64 = coords.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq.sqrt() - 1.0).abs() > 1e-12 {
            return Err(Error::input(format!(
                "point is not on the unit sphere: |x| = {}",
                norm_sq.sqrt()
            )));
        }
        Ok(SpherePoint { coords })
    }

    /// Builds a point from real coordinates (x_1, y_1, …, x_d, y_d) of
    /// ℝ^{2d}, pairing consecutive reals into z_i = x_i + i y_i.
    pub fn from_real_coords(reals: &[f64]) -> Result<Self> {
        if reals.is_empty() || reals.len() % 2 != 0 {
            return Err(Error::input(
                "need an even, positive number of real coordinates",
            ));
        }
        let coords = reals
            .chunks(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        SpherePoint::new(coords)
    }

    /// Normalizes an arbitrary nonzero vector onto the sphere.
    pub fn normalized(mut coords: Vec<Complex64>) -> Result<Self> {
        let norm: f64 = coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::input("cannot normalize the zero vector"));
        }
        for c in &mut coords {
            *c /= norm;
        }
        Ok(SpherePoint { coords })
    }

    pub fn dim(&self) -> u32 {
        self.coords.len() as u32
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    /// Chordal (Euclidean ℝ^{2d}) distance.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// A seeded uniform sample of S^{2d−1} together with a mesh bound.
#[derive(Debug, Clone)]
pub struct SphereSampler {
    d: u32,
    seed: u64,
    points: Vec<SpherePoint>,
    mesh_bound: f64,
}

impl SphereSampler {
    pub fn generate(d: u32, count: usize, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::input("dimension must be >= 1"));
        }
        if count == 0 {
            return Err(Error::input("empty sample set"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = Vec::with_capacity(count);
        while points.len() < count {
            let coords: Vec<Complex64> = (0..d)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    Complex64::new(re, im)
                })
                .collect();
            if let Ok(p) = SpherePoint::normalized(coords) {
                points.push(p);
            }
        }
        let mesh_bound = estimate_mesh(&points);
        Ok(SphereSampler {
            d,
            seed,
            points,
            mesh_bound,
        })
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    /// Estimated covering radius of the sample.
    pub fn mesh_bound(&self) -> f64 {
        self.mesh_bound
    }
}

/// Twice the maximum nearest-neighbour distance; the sphere diameter when
/// the sample has a single point.
fn estimate_mesh(points: &[SpherePoint]) -> f64 {
    if points.len() < 2 {
        return 2.0;
    }
    let n = points.len();
    let max_nn = crate::par::max_indexed(n, |i| {
        let mut nearest = f64::INFINITY;
        for j in 0..n {
            if i != j {
                nearest = nearest.min(points[i].chordal(&points[j]));
            }
        }
        nearest
    });
    (2.0 * max_nn).min(2.0)
}
