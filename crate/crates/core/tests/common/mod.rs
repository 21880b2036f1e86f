#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use divcover::cover::DivisionStrategy;
use divcover::generate::generate_cube;
use divcover::metric::{FiniteMetricSpace, Metric};
use divcover::nerve::{FilteredComplex, Simplex};

/// Rank over F2 by Gaussian elimination on rows packed as bitsets.
pub fn rank_f2(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, |r| r.len() * 64);
    for col in 0..width {
        let (word, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[word] & bit != 0 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Betti numbers `β_0..β_{top-1}` of the simplicial complex `simplices`,
/// computed from the ranks of its unreduced boundary matrices.
pub fn betti_by_rank(simplices: &[Vec<usize>], top: usize) -> Vec<usize> {
    let by_dim: Vec<Vec<&Vec<usize>>> = (0..=top)
        .map(|d| simplices.iter().filter(|s| s.len() == d + 1).collect())
        .collect();
    // boundary_rank[d] = rank of the map from d-chains to (d-1)-chains.
    let boundary_rank: Vec<usize> = (0..=top)
        .map(|d| {
            if d == 0 || by_dim[d].is_empty() || by_dim[d - 1].is_empty() {
                return 0;
            }
            let faces = &by_dim[d - 1];
            let words = faces.len().div_ceil(64);
            let rows = by_dim[d]
                .iter()
                .map(|s| {
                    let mut row = vec![0u64; words];
                    for skip in 0..s.len() {
                        let face: Vec<usize> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        let idx = faces
                            .iter()
                            .position(|f| **f == face)
                            .expect("complex is closed under faces");
                        row[idx / 64] |= 1 << (idx % 64);
                    }
                    row
                })
                .collect();
            rank_f2(rows)
        })
        .collect();
    (0..top)
        .map(|d| by_dim[d].len() - boundary_rank[d] - boundary_rank.get(d + 1).copied().unwrap_or(0))
        .collect()
}

/// Betti numbers of `complex_at(t)` by the rank oracle.
pub fn rank_betti_at(complex: &FilteredComplex, t: f64) -> Vec<usize> {
    let sub: Vec<Vec<usize>> = complex
        .complex_at(t)
        .to_simplices()
        .into_iter()
        .map(|s| s.vertices)
        .collect();
    betti_by_rank(&sub, complex.max_dim())
}

/// Random filtered complex, closed under faces, with at most `cap` simplices
/// in every dimension and many tied values.
pub fn random_complex(seed: u64, cap: usize) -> FilteredComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_dim = rng.random_range(1..=3);
    let n_vertices = rng.random_range(2..=cap.min(7));
    let mut layers: Vec<Vec<Simplex>> = vec![(0..n_vertices)
        .map(|v| Simplex::new(vec![v], rng.random_range(0..4) as f64))
        .collect()];
    for dim in 1..=max_dim {
        let below = &layers[dim - 1];
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for_each_subset(n_vertices, dim + 1, &mut |s| {
            let all_faces = (0..s.len()).all(|skip| {
                let face: Vec<usize> = s
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect();
                below.iter().any(|f| f.vertices == face)
            });
            if all_faces {
                candidates.push(s.to_vec());
            }
        });
        candidates.shuffle(&mut rng);
        let keep = rng.random_range(0..=candidates.len().min(cap));
        let layer: Vec<Simplex> = candidates
            .into_iter()
            .take(keep)
            .map(|s| {
                let floor = below
                    .iter()
                    .filter(|f| f.vertices.iter().all(|v| s.contains(v)))
                    .map(|f| f.value)
                    .fold(0.0, f64::max);
                let bump = [0.0, 0.0, 1.0, 2.0][rng.random_range(0..4)];
                Simplex::new(s, floor + bump)
            })
            .collect();
        layers.push(layer);
    }
    FilteredComplex::new(layers.into_iter().flatten().collect(), max_dim)
}

fn for_each_subset(n: usize, size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(n, size, v + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, size, 0, &mut Vec::new(), f);
}

/// Distinct filtration values of `complex`, ascending.
pub fn critical_values(complex: &FilteredComplex) -> Vec<f64> {
    let mut values: Vec<f64> = complex.iter().map(|(_, v)| v).collect();
    values.dedup();
    values
}

/// One randomized interleaving instance.
#[derive(Debug, Clone)]
pub struct Instance {
    pub seed: u64,
    pub space: FiniteMetricSpace,
    pub strategy: DivisionStrategy,
    pub resolution: f64,
}

/// `count` instances with 10 to 30 points uniform in `[0, 1]^d`, cycling
/// through `d ∈ {1, 2, 3}`, `δ ∈ {0.1, 0.2, 0.3}` and the two strategies.
/// Ellipsoid instances use `L2`; decision instances alternate between `L∞`
/// and `L2`. The resolution is a tenth of the radius of the space.
pub fn interleaving_instances(count: usize) -> Vec<Instance> {
    const DELTAS: [f64; 3] = [0.1, 0.2, 0.3];
    (0..count as u64)
        .map(|seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
            let n = rng.random_range(10..=30);
            let dim = 1 + (seed as usize / 6) % 3;
            let delta = DELTAS[seed as usize % 3];
            let (strategy, metric) = if seed % 2 == 0 {
                (DivisionStrategy::Ellipsoid { delta }, Metric::L2)
            } else if seed % 4 == 1 {
                (DivisionStrategy::Decision { delta }, Metric::Linf)
            } else {
                (DivisionStrategy::Decision { delta }, Metric::L2)
            };
            let space = generate_cube(n, dim, rng.random(), metric).unwrap();
            let resolution = 0.3 * space.relative_radius(&space.all()).value;
            Instance { seed, space, strategy, resolution }
        })
        .collect()
}
