mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use divcover::cover::{divisive_cover, verify_delta_division, DivisionStrategy, DivisiveCover};
use divcover::generate::{generate_cube, generate_grid};
use divcover::metric::{FiniteMetricSpace, Metric, Subset};

/// Every ball `Y ∩ B(c, reach)` with `c ∈ Y` lies in `a` or in `b`.
fn balls_fit(space: &FiniteMetricSpace, y: &Subset, a: &Subset, b: &Subset, reach: f64) -> bool {
    y.indices().iter().all(|&c| {
        let ball: Vec<usize> = y
            .indices()
            .iter()
            .copied()
            .filter(|&p| space.distance(c, p).unwrap() <= reach)
            .collect();
        ball.iter().all(|&p| a.contains(p)) || ball.iter().all(|&p| b.contains(p))
    })
}

fn structure_holds(space: &FiniteMetricSpace, cover: &DivisiveCover) {
    let root = cover.element(0);
    assert_eq!(root.subset, space.all());
    assert_eq!(root.parent, None);
    for (y, a, b) in cover.divided() {
        assert!(a.subset.len() < y.subset.len() && b.subset.len() < y.subset.len());
        assert!(a.subset.is_subset_of(&y.subset) && b.subset.is_subset_of(&y.subset));
        for &p in y.subset.indices() {
            assert!(a.subset.contains(p) || b.subset.contains(p), "point {p} lost");
        }
        assert_eq!((a.parent, b.parent), (Some(y.id), Some(y.id)));
        assert_eq!((a.depth, b.depth), (y.depth + 1, y.depth + 1));
        match cover.strategy() {
            DivisionStrategy::Ellipsoid { delta } => {
                assert!(verify_delta_division(space, &y.subset, &a.subset, &b.subset, delta));
            }
            DivisionStrategy::Decision { delta } => {
                let reach = delta * y.diameter / 2.0;
                assert!(balls_fit(space, &y.subset, &a.subset, &b.subset, reach));
            }
        }
    }
    for &leaf in cover.leaves() {
        let e = cover.element(leaf);
        assert!(e.is_leaf());
        assert!(e.radius <= cover.resolution() || cover.indivisible().contains(&leaf));
    }
    assert_eq!(cover.len(), 2 * cover.divisions() + 1);
}

#[test]
fn ellipsoid_covers_are_well_formed() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..40 {
        let n = rng.random_range(2..=25);
        let dim = rng.random_range(1..=3);
        let metric = [Metric::L2, Metric::Linf, Metric::Lp(1.0), Metric::Lp(3.0)][seed % 4];
        let space = generate_cube(n, dim, seed as u64, metric).unwrap();
        let delta = [0.05, 0.1, 0.2][seed % 3];
        let r = 0.4 * space.relative_radius(&space.all()).value;
        let cover = divisive_cover(&space, DivisionStrategy::Ellipsoid { delta }, r).unwrap();
        structure_holds(&space, &cover);
    }
}

#[test]
fn decision_covers_are_well_formed() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for seed in 0..40 {
        let n = rng.random_range(2..=200);
        let dim = rng.random_range(1..=3);
        let space = generate_cube(n, dim, seed, Metric::Linf).unwrap();
        let delta = [0.1, 0.25, 0.5][seed as usize % 3];
        let r = 0.2 * space.relative_radius(&space.all()).value;
        let cover = divisive_cover(&space, DivisionStrategy::Decision { delta }, r).unwrap();
        structure_holds(&space, &cover);
    }
}

fn k_for(delta: f64, fraction: f64) -> u32 {
    (fraction.ln() / ((1.0 + delta) / 2.0).ln()).ceil() as u32
}

#[test]
fn decision_cover_size_bound_on_grids() {
    for (dim, max_side) in [(1, 200), (2, 40), (3, 12)] {
        for side in 2..=max_side {
            let grid = generate_grid(side, dim, Metric::Linf).unwrap();
            let rx = grid.relative_radius(&grid.all()).value;
            for delta in [0.25, 0.5] {
                let cover = divisive_cover(&grid, DivisionStrategy::Decision { delta }, 0.5 * rx).unwrap();
                let bound = 2 * 2usize.pow(k_for(delta, 0.5) * dim as u32);
                assert!(cover.len() <= bound, "{side}^{dim} δ={delta}: {} > {bound}", cover.len());
            }
        }
    }
}

#[test]
fn centers_in_the_space_can_break_the_size_bound() {
    // On {0..13}, r(X) = 7 and t = 1.75. Four consecutive points have
    // relative radius 2 > t, though their L∞ radius 1.5 is below it.
    let grid = generate_grid(14, 1, Metric::Linf).unwrap();
    let rx = grid.relative_radius(&grid.all()).value;
    assert_eq!(rx, 7.0);
    let cover = divisive_cover(&grid, DivisionStrategy::Decision { delta: 0.25 }, 0.25 * rx).unwrap();
    assert_eq!(k_for(0.25, 0.25), 3);
    assert_eq!(cover.leaves().len(), 16);
}

#[test]
fn decision_half_diameter_decays_along_paths() {
    for (dim, side) in [(1, 50), (2, 15), (3, 6)] {
        let grid = generate_grid(side, dim, Metric::Linf).unwrap();
        let half = grid.diameter(&grid.all()).value / 2.0;
        for delta in [0.25, 0.5] {
            let cover = divisive_cover(&grid, DivisionStrategy::Decision { delta }, 0.1 * half).unwrap();
            for e in cover.elements() {
                let k = (e.depth / dim) as i32;
                let bound = half * ((1.0 + delta) / 2.0).powi(k);
                assert!(
                    e.diameter / 2.0 <= bound * (1.0 + 1e-12),
                    "{side}^{dim} δ={delta}: depth {} half-diameter {} > {bound}",
                    e.depth,
                    e.diameter / 2.0
                );
            }
        }
    }
}

#[test]
fn relative_radius_can_outrun_the_decay() {
    let grid = generate_grid(50, 1, Metric::Linf).unwrap();
    let rx = grid.relative_radius(&grid.all()).value;
    let cover = divisive_cover(&grid, DivisionStrategy::Decision { delta: 0.5 }, 0.1 * rx).unwrap();
    let worst = cover
        .elements()
        .iter()
        .map(|e| e.radius / (rx * 0.75f64.powi(e.depth as i32)))
        .fold(0.0, f64::max);
    assert!(worst > 1.0 && worst < 1.1, "{worst}");
}

#[test]
fn decision_division_is_not_always_a_relative_delta_division() {
    // A part with relative radius up to twice its L∞ radius can straddle the
    // overlap band of the split.
    let space = generate_cube(39, 2, 12, Metric::Linf).unwrap();
    let r = 0.2 * space.relative_radius(&space.all()).value;
    let cover = divisive_cover(&space, DivisionStrategy::Decision { delta: 0.5 }, r).unwrap();
    let failing = cover
        .divided()
        .filter(|(y, a, b)| !verify_delta_division(&space, &y.subset, &a.subset, &b.subset, 0.5))
        .count();
    assert!(failing > 0);
    structure_holds(&space, &cover);
}

#[test]
fn division_count_can_exceed_twice_the_point_count() {
    let space = generate_cube(30, 2, 3, Metric::L2).unwrap();
    let r = 0.3 * space.relative_radius(&space.all()).value;
    let cover = divisive_cover(&space, DivisionStrategy::Ellipsoid { delta: 0.2 }, r).unwrap();
    assert!(cover.divisions() > 2 * space.len(), "{} divisions", cover.divisions());
    structure_holds(&space, &cover);
}

#[test]
fn cover_is_deterministic() {
    let space = generate_cube(40, 2, 9, Metric::L2).unwrap();
    let strategy = DivisionStrategy::Ellipsoid { delta: 0.1 };
    let a = divisive_cover(&space, strategy, 0.2).unwrap();
    let b = divisive_cover(&space, strategy, 0.2).unwrap();
    assert_eq!(a.elements(), b.elements());
}

#[test]
fn interleaving_instance_divisions_pass() {
    for inst in common::interleaving_instances(50) {
        if !matches!(inst.strategy, DivisionStrategy::Decision { .. }) {
            continue;
        }
        let space = inst.space.with_metric(Metric::Linf).unwrap();
        let cover = divisive_cover(&space, inst.strategy, inst.resolution).unwrap();
        structure_holds(&space, &cover);
    }
}
