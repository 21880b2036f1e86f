//! Brute-force reference filtrations and the harness checking a divisive
//! cover's barcode against the intrinsic Čech barcode.
//!
//! A δ-filtered cover and the Čech filtration are multiplicatively
//! `(1, 1/δ)`-interleaved above the cover's resolution. On a log scale that
//! becomes an additive interleaving, so the bottleneck distance between the
//! log-transformed diagrams is at most `ln(1/δ)`.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::cover::{divisive_cover_bounded, verify_delta_division, DivisionStrategy, DivisiveCover};
use crate::error::{Error, Result};
use crate::metric::{effective_delta, FiniteMetricSpace, Metric, Subset};
use crate::nerve::{nerve_of_sets_bounded, FilteredComplex, Simplex};
use crate::persistence::{compute_persistence, Barcode};

/// Default cap on the number of points accepted by [`cech_filtration`].
pub const CECH_POINT_LIMIT: usize = 64;

/// Size caps for [`verify_interleaving_with_limits`]. Exceeding one is an
/// [`Error::Budget`], not a verification failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub cech_points: usize,
    pub cover_elements: usize,
    pub nerve_simplices: usize,
}

impl Limits {
    pub const NONE: Limits = Limits {
        cech_points: usize::MAX,
        cover_elements: usize::MAX,
        nerve_simplices: usize::MAX,
    };
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            cech_points: CECH_POINT_LIMIT,
            cover_elements: 200_000,
            nerve_simplices: 15_000_000,
        }
    }
}

/// Absolute tolerance on the log-scale bound, absorbing rounding in `ln`.
pub const LOG_BOUND_SLACK: f64 = 1e-9;

/// Intrinsic Čech filtration on every subset of at most `max_dim + 1` points:
/// `σ` enters at `min_{x∈X} max_{y∈σ} d(x, y)`.
pub fn cech_filtration(space: &FiniteMetricSpace, max_dim: usize) -> Result<FilteredComplex> {
    cech_filtration_with_limit(space, max_dim, CECH_POINT_LIMIT)
}

/// [`cech_filtration`] with an explicit point limit.
pub fn cech_filtration_with_limit(
    space: &FiniteMetricSpace,
    max_dim: usize,
    limit: usize,
) -> Result<FilteredComplex> {
    let n = space.len();
    if n > limit {
        return Err(Error::usage(format!(
            "Čech oracle limited to {limit} points, got {n}"
        )));
    }
    let mut simplices = Vec::new();
    let mut stack: Vec<usize> = Vec::with_capacity(max_dim + 1);
    enumerate_subsets(space, n, max_dim + 1, 0, &mut stack, &mut simplices);
    Ok(FilteredComplex::new(simplices, max_dim))
}

fn enumerate_subsets(
    space: &FiniteMetricSpace,
    n: usize,
    max_size: usize,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Simplex>,
) {
    for v in start..n {
        stack.push(v);
        let sigma = Subset::from_sorted_unchecked(stack.clone());
        let value = space.relative_radius(&sigma).value;
        out.push(Simplex {
            vertices: stack.clone(),
            value,
        });
        if stack.len() < max_size {
            enumerate_subsets(space, n, max_size, v + 1, stack, out);
        }
        stack.pop();
    }
}

#[derive(Debug, Clone, Copy)]
struct LogPoint {
    birth: f64,
    death: f64,
}

impl LogPoint {
    fn cost(&self, other: &LogPoint) -> f64 {
        (self.birth - other.birth)
            .abs()
            .max((self.death - other.death).abs())
    }

    fn diagonal_cost(&self) -> f64 {
        (self.death - self.birth) / 2.0
    }
}

fn log_diagram(b: &Barcode, dim: usize, floor: f64) -> (Vec<LogPoint>, Vec<f64>) {
    let mut finite = Vec::new();
    let mut essential = Vec::new();
    for iv in b.in_dim(dim).filter(|iv| iv.death > floor) {
        let birth = iv.birth.max(floor).ln();
        if iv.is_infinite() {
            essential.push(birth);
        } else {
            finite.push(LogPoint {
                birth,
                death: iv.death.ln(),
            });
        }
    }
    essential.sort_by(f64::total_cmp);
    (finite, essential)
}

/// Bottleneck distance between the dimension-`dim` diagrams of `b1` and `b2`
/// after the transform `(b, d) ↦ (ln max(b, floor), ln d)`. Intervals dying at
/// or below `floor` are dropped. Returns infinity when the numbers of infinite
/// intervals differ.
pub fn log_bottleneck(b1: &Barcode, b2: &Barcode, dim: usize, floor: f64) -> f64 {
    assert!(floor > 0.0, "floor must be positive");
    let (f1, e1) = log_diagram(b1, dim, floor);
    let (f2, e2) = log_diagram(b2, dim, floor);
    if e1.len() != e2.len() {
        return f64::INFINITY;
    }
    // Sorted order is an optimal matching on the line.
    let essential = e1
        .iter()
        .zip(&e2)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    essential.max(finite_bottleneck(&f1, &f2))
}

fn finite_bottleneck(a: &[LogPoint], b: &[LogPoint]) -> f64 {
    let mut candidates: Vec<f64> = a
        .iter()
        .flat_map(|p| b.iter().map(move |q| p.cost(q)))
        .chain(a.iter().chain(b).map(LogPoint::diagonal_cost))
        .chain(std::iter::once(0.0))
        .collect();
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    // The largest candidate is always feasible (every point can go to the diagonal).
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching_exists(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Left side: points of `a` then diagonal copies of `b`; right side: points of
/// `b` then diagonal copies of `a`.
fn perfect_matching_exists(a: &[LogPoint], b: &[LogPoint], eps: f64) -> bool {
    let (na, nb) = (a.len(), b.len());
    let size = na + nb;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (i, p) in a.iter().enumerate() {
        adj[i].extend((0..nb).filter(|&j| p.cost(&b[j]) <= eps));
        if p.diagonal_cost() <= eps {
            adj[i].push(nb + i);
        }
    }
    for (j, q) in b.iter().enumerate() {
        if q.diagonal_cost() <= eps {
            adj[na + j].push(j);
        }
        adj[na + j].extend(nb..nb + na);
    }
    hopcroft_karp(&adj, size) == size
}

/// Maximum bipartite matching size; `adj[u]` lists right vertices of left vertex `u`.
fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const FREE: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![FREE; n_left];
    let mut match_r = vec![FREE; n_right];
    let mut dist = vec![0usize; n_left];
    let mut matched = 0;

    loop {
        // Layer the graph from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    FREE => found = true,
                    w if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return matched;
        }
        for u in 0..n_left {
            if match_l[u] == FREE && augment(u, adj, &mut match_l, &mut match_r, &mut dist) {
                matched += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &v in &adj[u] {
        let w = match_r[v];
        if w == usize::MAX || (dist[w] == dist[u] + 1 && augment(w, adj, match_l, match_r, dist)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Measured log-bottleneck distance for one homology dimension.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimCheck {
    pub dim: usize,
    pub distance: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Outcome of [`verify_interleaving`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterleavingReport {
    pub strategy: DivisionStrategy,
    pub metric: String,
    pub points: usize,
    pub resolution: f64,
    /// Scale below which bars are clamped or dropped.
    pub floor: f64,
    pub delta_eff: f64,
    pub cover_size: usize,
    pub divisions: usize,
    /// Divisions of the cover that fail the δ-division check.
    pub division_failures: usize,
    pub dims: Vec<DimCheck>,
    pub pass: bool,
}

impl InterleavingReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Cover built for a space, with nerve values measured in the space's metric.
///
/// Decision division needs `L∞`; on an `Lp` space the cover is built on the
/// `L∞` copy of the points and its δ and resolution are converted.
pub(crate) struct MeasuredCover {
    pub cover: DivisiveCover,
    pub nerve: FilteredComplex,
    pub nerve_time: Duration,
    pub delta_eff: f64,
    pub floor: f64,
    /// Space the cover was divided in.
    pub division_space: FiniteMetricSpace,
}

pub(crate) fn measured_cover(
    space: &FiniteMetricSpace,
    strategy: DivisionStrategy,
    resolution: f64,
    max_dim: usize,
    limits: Limits,
) -> Result<MeasuredCover> {
    let p = space.metric().exponent();
    let shadow = matches!(strategy, DivisionStrategy::Decision { .. }) && p != f64::INFINITY;
    let nerve = |cover: &DivisiveCover, values: &[f64]| {
        let sets: Vec<&Subset> = cover.elements().iter().map(|e| &e.subset).collect();
        nerve_of_sets_bounded(&sets, values, max_dim, limits.nerve_simplices)
    };
    if !shadow {
        let cover = divisive_cover_bounded(space, strategy, resolution, limits.cover_elements)?;
        let clock = Instant::now();
        let nerve = nerve(&cover, &cover.radii())?;
        return Ok(MeasuredCover {
            cover,
            nerve,
            nerve_time: clock.elapsed(),
            delta_eff: strategy.delta(),
            floor: resolution,
            division_space: space.clone(),
        });
    }
    let linf = space.with_metric(Metric::Linf)?;
    let cover = divisive_cover_bounded(&linf, strategy, resolution, limits.cover_elements)?;
    let clock = Instant::now();
    let values: Vec<f64> = cover
        .elements()
        .iter()
        .map(|e| space.relative_radius(&e.subset).value)
        .collect();
    let nerve = nerve(&cover, &values)?;
    let dim = space.dim() as f64;
    Ok(MeasuredCover {
        delta_eff: effective_delta(strategy.delta(), space.dim(), p)?,
        floor: resolution * dim.powf(p.recip()),
        nerve,
        nerve_time: clock.elapsed(),
        cover,
        division_space: linf,
    })
}

/// Runs the divisive pipeline and the Čech oracle on `space` and compares
/// their barcodes above the resolution in every dimension below `max_dim`.
pub fn verify_interleaving(
    space: &FiniteMetricSpace,
    strategy: DivisionStrategy,
    resolution: f64,
    max_dim: usize,
) -> Result<InterleavingReport> {
    verify_interleaving_with_limits(space, strategy, resolution, max_dim, Limits::default())
}

/// [`verify_interleaving`] with explicit size caps.
pub fn verify_interleaving_with_limits(
    space: &FiniteMetricSpace,
    strategy: DivisionStrategy,
    resolution: f64,
    max_dim: usize,
    limits: Limits,
) -> Result<InterleavingReport> {
    let cech = cech_filtration_with_limit(space, max_dim, limits.cech_points)?;
    let measured = measured_cover(space, strategy, resolution, max_dim, limits)?;
    let cover_barcode = compute_persistence(&measured.nerve);
    let cech_barcode = compute_persistence(&cech);

    let floor = if measured.floor > 0.0 {
        measured.floor
    } else {
        f64::MIN_POSITIVE
    };
    let bound = measured.delta_eff.recip().ln();
    let dims: Vec<DimCheck> = (0..max_dim)
        .map(|dim| {
            let distance = log_bottleneck(&cover_barcode, &cech_barcode, dim, floor);
            DimCheck {
                dim,
                distance,
                bound,
                pass: distance <= bound + LOG_BOUND_SLACK,
            }
        })
        .collect();

    let division_failures = measured
        .cover
        .divided()
        .filter(|(y, a, b)| {
            !verify_delta_division(
                &measured.division_space,
                &y.subset,
                &a.subset,
                &b.subset,
                strategy.delta(),
            )
        })
        .count();

    Ok(InterleavingReport {
        strategy,
        metric: space.metric().to_string(),
        points: space.len(),
        resolution,
        floor,
        delta_eff: measured.delta_eff,
        cover_size: measured.cover.len(),
        divisions: measured.cover.divisions(),
        division_failures,
        pass: dims.iter().all(|d| d.pass),
        dims,
    })
}
