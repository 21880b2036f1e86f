//! δ-divisions and the top-down divisive cover.
//!
//! A δ-division of `Y` is a pair of proper subsets covering `Y` such that every
//! ball `Y ∩ B(y, δ·r(Y))` fits inside one of them. The divisive cover starts
//! from the whole space and keeps dividing the active set of largest diameter
//! while any active set still has relative radius above the resolution.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Metric, Subset};

/// How a subset is split into two overlapping parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DivisionStrategy {
    /// Split by weighted distance to a farthest pair; any metric, `0 < δ < 1/2`.
    Ellipsoid { delta: f64 },
    /// Split along the coordinate realizing the `L∞` diameter; `0 < δ < 1`.
    Decision { delta: f64 },
}

impl DivisionStrategy {
    pub fn delta(&self) -> f64 {
        match *self {
            DivisionStrategy::Ellipsoid { delta } | DivisionStrategy::Decision { delta } => delta,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DivisionStrategy::Ellipsoid { .. } => "ellipsoid",
            DivisionStrategy::Decision { .. } => "decision",
        }
    }

    /// Checks the δ range and, for decision division, that the metric is `L∞`.
    pub fn validate(&self, metric: Metric) -> Result<()> {
        match *self {
            DivisionStrategy::Ellipsoid { delta } => {
                if !(delta > 0.0 && delta < 0.5) {
                    return Err(Error::usage(format!(
                        "ellipsoid division needs 0 < delta < 1/2, got {delta}"
                    )));
                }
            }
            DivisionStrategy::Decision { delta } => {
                if !(delta > 0.0 && delta < 1.0) {
                    return Err(Error::usage(format!(
                        "decision division needs 0 < delta < 1, got {delta}"
                    )));
                }
                if metric.exponent() != f64::INFINITY {
                    return Err(Error::usage(format!(
                        "decision division needs the linf metric, got {metric}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn divide(&self, space: &FiniteMetricSpace, y: &Subset) -> Result<(Subset, Subset)> {
        match *self {
            DivisionStrategy::Ellipsoid { delta } => ellipsoid_division(space, y, delta),
            DivisionStrategy::Decision { delta } => decision_division(space, y, delta),
        }
    }
}

/// Splits `y` around an exact farthest pair `(y1, y2)`: with
/// `f = (1 - 2δ)/(1 + 2δ)`, `Y1 = {y : f·d(y, y1) <= d(y, y2)}` and `Y2` symmetric.
/// Points satisfying both conditions land in both parts.
pub fn ellipsoid_division(
    space: &FiniteMetricSpace,
    y: &Subset,
    delta: f64,
) -> Result<(Subset, Subset)> {
    DivisionStrategy::Ellipsoid { delta }.validate(space.metric())?;
    let far = space.diameter(y);
    if far.value <= 0.0 {
        return Err(Error::IndivisibleSubset(y.len()));
    }
    let (a1, a2) = far.pair;
    let f = (1.0 - 2.0 * delta) / (1.0 + 2.0 * delta);
    let (mut y1, mut y2) = (Vec::new(), Vec::new());
    for &p in y.indices() {
        let (d1, d2) = (space.dist(p, a1), space.dist(p, a2));
        if f * d1 <= d2 {
            y1.push(p);
        }
        if f * d2 <= d1 {
            y2.push(p);
        }
    }
    Ok((
        Subset::from_sorted_unchecked(y1),
        Subset::from_sorted_unchecked(y2),
    ))
}

/// Splits `y` along the lowest coordinate `i` realizing the `L∞` distance of a
/// farthest pair `(x1, x2)`: `Y1 = {x : |x1_i - x_i| <= (1+δ)/2 · |x1_i - x2_i|}`,
/// `Y2` symmetric about `x2`.
pub fn decision_division(
    space: &FiniteMetricSpace,
    y: &Subset,
    delta: f64,
) -> Result<(Subset, Subset)> {
    DivisionStrategy::Decision { delta }.validate(space.metric())?;
    let far = space.diameter(y);
    if far.value <= 0.0 {
        return Err(Error::IndivisibleSubset(y.len()));
    }
    let (p1, p2) = (space.point(far.pair.0), space.point(far.pair.1));
    let axis = (0..space.dim())
        .find(|&c| (p1[c] - p2[c]).abs() == far.value)
        .expect("linf diameter is attained on some coordinate");
    let (c1, c2) = (p1[axis], p2[axis]);
    let threshold = (1.0 + delta) / 2.0 * (c1 - c2).abs();
    let (mut y1, mut y2) = (Vec::new(), Vec::new());
    for &p in y.indices() {
        let v = space.point(p)[axis];
        if (c1 - v).abs() <= threshold {
            y1.push(p);
        }
        if (c2 - v).abs() <= threshold {
            y2.push(p);
        }
    }
    Ok((
        Subset::from_sorted_unchecked(y1),
        Subset::from_sorted_unchecked(y2),
    ))
}

/// Which points the balls of the δ-division check are centered at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallCenters {
    /// Every `y ∈ Y`.
    Subset,
    /// Every point of the ambient space.
    Space,
}

/// Checks that `{y1, y2}` is a δ-division of `y`: both proper subsets of `y`,
/// together covering it, and every closed ball `Y ∩ B(c, δ·r(Y))` with `c ∈ Y`
/// contained in `y1` or in `y2`.
pub fn verify_delta_division(
    space: &FiniteMetricSpace,
    y: &Subset,
    y1: &Subset,
    y2: &Subset,
    delta: f64,
) -> bool {
    verify_delta_division_centered(space, y, y1, y2, delta, BallCenters::Subset)
}

/// [`verify_delta_division`] with a choice of ball centers.
pub fn verify_delta_division_centered(
    space: &FiniteMetricSpace,
    y: &Subset,
    y1: &Subset,
    y2: &Subset,
    delta: f64,
    centers: BallCenters,
) -> bool {
    let proper = |part: &Subset| part.len() < y.len() && part.is_subset_of(y);
    if !proper(y1) || !proper(y2) {
        return false;
    }
    if !y.indices().iter().all(|&p| y1.contains(p) || y2.contains(p)) {
        return false;
    }
    let reach = delta * space.relative_radius(y).value;
    let ball_fits = |c: usize| {
        let mut in1 = true;
        let mut in2 = true;
        for &p in y.indices() {
            if space.dist(c, p) <= reach {
                in1 &= y1.contains(p);
                in2 &= y2.contains(p);
                if !in1 && !in2 {
                    return false;
                }
            }
        }
        true
    };
    match centers {
        BallCenters::Subset => y.indices().iter().all(|&c| ball_fits(c)),
        BallCenters::Space => (0..space.len()).all(ball_fits),
    }
}

/// One member of a divisive cover.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverElement {
    pub id: usize,
    pub subset: Subset,
    /// Relative radius, with centers from the whole space.
    pub radius: f64,
    pub center: usize,
    pub diameter: f64,
    pub parent: Option<usize>,
    pub children: Option<(usize, usize)>,
    pub depth: usize,
}

impl CoverElement {
    fn new(space: &FiniteMetricSpace, id: usize, subset: Subset, parent: Option<(usize, usize)>) -> Self {
        let r = space.relative_radius(&subset);
        let diameter = space.diameter(&subset).value;
        CoverElement {
            id,
            subset,
            radius: r.value,
            center: r.center,
            diameter,
            parent: parent.map(|p| p.0),
            children: None,
            depth: parent.map_or(0, |p| p.1 + 1),
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }
}

/// The output of the divisive cover algorithm: a binary tree of subsets rooted
/// at the whole space (element 0), keeping every intermediate set.
#[derive(Debug, Clone)]
pub struct DivisiveCover {
    elements: Vec<CoverElement>,
    resolution: f64,
    strategy: DivisionStrategy,
    leaves: Vec<usize>,
    indivisible: Vec<usize>,
}

impl DivisiveCover {
    pub fn elements(&self) -> &[CoverElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &CoverElement {
        &self.elements[id]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn strategy(&self) -> DivisionStrategy {
        self.strategy
    }

    pub fn delta(&self) -> f64 {
        self.strategy.delta()
    }

    /// Ids of undivided elements, ascending.
    pub fn leaves(&self) -> &[usize] {
        &self.leaves
    }

    /// Leaves that were kept because their points all coincide.
    pub fn indivisible(&self) -> &[usize] {
        &self.indivisible
    }

    /// Number of divisions performed.
    pub fn divisions(&self) -> usize {
        (self.elements.len() - 1) / 2
    }

    /// Iterates `(parent, child1, child2)` over every division.
    pub fn divided(&self) -> impl Iterator<Item = (&CoverElement, &CoverElement, &CoverElement)> {
        self.elements.iter().filter_map(move |e| {
            e.children
                .map(|(a, b)| (e, &self.elements[a], &self.elements[b]))
        })
    }

    pub fn radii(&self) -> Vec<f64> {
        self.elements.iter().map(|e| e.radius).collect()
    }
}

// Max-heap key: largest diameter first, then lowest id.
#[derive(PartialEq)]
struct ByDiameter(f64, usize);

impl Eq for ByDiameter {}

impl PartialOrd for ByDiameter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByDiameter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .total_cmp(&other.0)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Builds a δ-divisive cover of `space` of the given resolution.
///
/// While some active element has relative radius above `resolution`, the
/// active element of largest diameter (lowest id on ties) is divided and
/// replaced by its two parts. Elements whose points all coincide cannot be
/// divided and stay as leaves whatever their radius.
pub fn divisive_cover(
    space: &FiniteMetricSpace,
    strategy: DivisionStrategy,
    resolution: f64,
) -> Result<DivisiveCover> {
    divisive_cover_bounded(space, strategy, resolution, usize::MAX)
}

/// [`divisive_cover`] that stops with [`Error::Budget`] once the cover would
/// hold more than `max_elements` elements.
pub fn divisive_cover_bounded(
    space: &FiniteMetricSpace,
    strategy: DivisionStrategy,
    resolution: f64,
    max_elements: usize,
) -> Result<DivisiveCover> {
    strategy.validate(space.metric())?;
    if !(resolution >= 0.0) || !resolution.is_finite() {
        return Err(Error::usage(format!(
            "resolution must be a finite value >= 0, got {resolution}"
        )));
    }

    let root = CoverElement::new(space, 0, space.all(), None);
    let mut coarse = usize::from(root.radius > resolution);
    let mut active = BinaryHeap::from([ByDiameter(root.diameter, 0)]);
    let mut elements = vec![root];
    let mut indivisible = Vec::new();

    while coarse > 0 {
        let ByDiameter(_, k) = active.pop().expect("coarse elements are active");
        let above = elements[k].radius > resolution;
        match strategy.divide(space, &elements[k].subset) {
            Ok((y1, y2)) => {
                let (depth, id) = (elements[k].depth, elements.len());
                if id + 2 > max_elements {
                    return Err(Error::Budget { what: "cover elements", limit: max_elements });
                }
                for (offset, part) in [y1, y2].into_iter().enumerate() {
                    let e = CoverElement::new(space, id + offset, part, Some((k, depth)));
                    coarse += usize::from(e.radius > resolution);
                    active.push(ByDiameter(e.diameter, e.id));
                    elements.push(e);
                }
                elements[k].children = Some((id, id + 1));
            }
            Err(Error::IndivisibleSubset(_)) => indivisible.push(k),
            Err(e) => return Err(e),
        }
        coarse -= usize::from(above);
    }

    let leaves = elements
        .iter()
        .filter(|e| e.is_leaf())
        .map(|e| e.id)
        .collect();
    indivisible.sort_unstable();
    Ok(DivisiveCover {
        elements,
        resolution,
        strategy,
        leaves,
        indivisible,
    })
}
