//! Synthetic point clouds: a noisy sphere in `ℝ³` and a flat torus in `ℝ⁴`.
//!
//! Both use ChaCha8 seeded from a `u64`, so the same seed gives the same
//! cloud on every platform.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Metric};

/// `n` points with uniformly distributed directions (normalized standard
/// Gaussians) and radii drawn from `Normal(mean_radius, sd_radius)`, under `L2`.
pub fn generate_sphere(n: usize, mean_radius: f64, sd_radius: f64, seed: u64) -> Result<FiniteMetricSpace> {
    if n < 1 {
        return Err(Error::usage("sphere needs at least one point"));
    }
    if !(sd_radius >= 0.0) || !mean_radius.is_finite() {
        return Err(Error::usage(format!(
            "radius distribution needs a finite mean and sd >= 0, got ({mean_radius}, {sd_radius})"
        )));
    }
    let radius = Normal::new(mean_radius, sd_radius)
        .map_err(|e| Error::usage(format!("bad radius distribution: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords = Vec::with_capacity(3 * n);
    for _ in 0..n {
        let dir = loop {
            let v: [f64; 3] = [
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
                StandardNormal.sample(&mut rng),
            ];
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > 1e-12 {
                break v.map(|x| x / norm);
            }
        };
        let r = radius.sample(&mut rng);
        coords.extend(dir.iter().map(|x| x * r));
    }
    FiniteMetricSpace::from_flat(coords, 3, Metric::L2)
}

/// The product of two circles of `k` uniformly drawn angles each, embedded as
/// `(cos θ, sin θ, cos φ, sin φ)`: `k²` points under `L2`.
pub fn generate_torus(k: usize, seed: u64) -> Result<FiniteMetricSpace> {
    if k < 1 {
        return Err(Error::usage("torus needs at least one angle per circle"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let theta: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
    let phi: Vec<f64> = (0..k).map(|_| rng.random_range(0.0..TAU)).collect();
    let mut coords = Vec::with_capacity(4 * k * k);
    for &t in &theta {
        for &p in &phi {
            coords.extend([t.cos(), t.sin(), p.cos(), p.sin()]);
        }
    }
    FiniteMetricSpace::from_flat(coords, 4, Metric::L2)
}

/// `n` points uniform in the unit cube `[0, 1]^dim`.
pub fn generate_cube(n: usize, dim: usize, seed: u64, metric: Metric) -> Result<FiniteMetricSpace> {
    if n < 1 || dim < 1 {
        return Err(Error::usage("cube needs n >= 1 and dim >= 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * dim).map(|_| rng.random::<f64>()).collect();
    FiniteMetricSpace::from_flat(coords, dim, metric)
}

/// The integer lattice `{0, 1, …, side - 1}^dim`. Integer coordinates keep
/// every distance exact.
pub fn generate_grid(side: usize, dim: usize, metric: Metric) -> Result<FiniteMetricSpace> {
    if side < 1 || dim < 1 {
        return Err(Error::usage("grid needs side >= 1 and dim >= 1"));
    }
    let total = side.pow(dim as u32);
    let mut coords = Vec::with_capacity(total * dim);
    for mut idx in 0..total {
        for _ in 0..dim {
            coords.push((idx % side) as f64);
            idx /= side;
        }
    }
    FiniteMetricSpace::from_flat(coords, dim, metric)
}
