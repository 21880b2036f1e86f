mod common;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use divcover::nerve::{FilteredComplex, Simplex};
use divcover::persistence::{compute_persistence, Interval};

use common::{betti_by_rank, critical_values, random_complex, rank_betti_at};

#[test]
fn betti_numbers_match_the_rank_oracle() {
    for seed in 0..200 {
        let complex = random_complex(seed, 12);
        let barcode = compute_persistence(&complex);
        for t in critical_values(&complex) {
            assert_eq!(barcode.betti_at(t), rank_betti_at(&complex, t), "seed {seed} t {t}");
        }
    }
}

#[test]
fn larger_complexes_match_the_rank_oracle() {
    for seed in 0..40 {
        let complex = random_complex(10_000 + seed, 40);
        let barcode = compute_persistence(&complex);
        for t in critical_values(&complex) {
            assert_eq!(barcode.betti_at(t), rank_betti_at(&complex, t), "seed {seed} t {t}");
        }
    }
}

#[test]
fn euler_characteristic_agrees() {
    for seed in 0..100 {
        let complex = random_complex(500 + seed, 12);
        let top = complex.max_dim();
        let all: Vec<Vec<usize>> = complex.to_simplices().into_iter().map(|s| s.vertices).collect();
        let mut betti = betti_by_rank(&all, top + 1);
        betti.truncate(top + 1);
        let last = complex.max_value().unwrap();
        let ours = compute_persistence(&complex).betti_at(last);
        assert_eq!(ours[..], betti[..top], "seed {seed}");
        let alternating = |xs: &[usize]| {
            xs.iter()
                .enumerate()
                .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum::<i64>()
        };
        assert_eq!(alternating(&complex.sizes()), alternating(&betti), "seed {seed}");
    }
}

#[test]
fn input_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..50 {
        let complex = random_complex(900 + seed, 12);
        let mut simplices = complex.to_simplices();
        simplices.shuffle(&mut rng);
        let shuffled = FilteredComplex::new(simplices, complex.max_dim());
        assert_eq!(compute_persistence(&complex), compute_persistence(&shuffled));
    }
}

#[test]
fn monotone_rescaling_maps_intervals() {
    for seed in 0..50 {
        let complex = random_complex(1500 + seed, 12);
        let cubed: Vec<Simplex> = complex
            .to_simplices()
            .into_iter()
            .map(|s| Simplex::new(s.vertices, s.value.powi(3) + 1.0))
            .collect();
        let a = compute_persistence(&complex);
        let b = compute_persistence(&FilteredComplex::new(cubed, complex.max_dim()));
        let mapped: Vec<Interval> = a
            .intervals
            .iter()
            .map(|iv| Interval {
                dim: iv.dim,
                birth: iv.birth.powi(3) + 1.0,
                death: if iv.is_infinite() { iv.death } else { iv.death.powi(3) + 1.0 },
            })
            .collect();
        assert_eq!(b.intervals, mapped, "seed {seed}");
    }
}

#[test]
fn filled_and_hollow_triangles() {
    let edges = || {
        vec![
            Simplex::new(vec![0], 0.0),
            Simplex::new(vec![1], 0.0),
            Simplex::new(vec![2], 0.0),
            Simplex::new(vec![0, 1], 1.0),
            Simplex::new(vec![1, 2], 1.0),
            Simplex::new(vec![0, 2], 2.0),
        ]
    };
    let hollow = compute_persistence(&FilteredComplex::new(edges(), 2));
    assert_eq!(
        hollow.intervals,
        vec![
            Interval { dim: 0, birth: 0.0, death: 1.0 },
            Interval { dim: 0, birth: 0.0, death: 1.0 },
            Interval { dim: 0, birth: 0.0, death: f64::INFINITY },
            Interval { dim: 1, birth: 2.0, death: f64::INFINITY },
        ]
    );
    let mut filled = edges();
    filled.push(Simplex::new(vec![0, 1, 2], 3.0));
    let filled = compute_persistence(&FilteredComplex::new(filled, 2));
    assert_eq!(filled.in_dim(1).copied().collect::<Vec<_>>(), vec![Interval { dim: 1, birth: 2.0, death: 3.0 }]);
    let mut instant = edges();
    instant.push(Simplex::new(vec![0, 1, 2], 2.0));
    let instant = compute_persistence(&FilteredComplex::new(instant, 2));
    assert_eq!(instant.in_dim(1).count(), 0);
    assert_eq!(instant.zero_length, 1);
}
