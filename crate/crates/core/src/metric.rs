//! Finite metric spaces in coordinates and the extremal quantities the cover
//! construction is built from: diameter, relative radius and the conversion
//! factor between `L∞` and `Lp` filtrations.
//!
//! Every extremum is an exact scan. Ties break toward the smallest point index
//! so all outputs are deterministic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The norm used to measure distances between coordinate tuples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Metric {
    Linf,
    L2,
    /// `p`-norm for a real `p >= 1`.
    Lp(f64),
}

impl Metric {
    /// Norm exponent, `f64::INFINITY` for `Linf`.
    pub fn exponent(&self) -> f64 {
        match *self {
            Metric::Linf => f64::INFINITY,
            Metric::L2 => 2.0,
            Metric::Lp(p) => p,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Metric::Lp(p) if !(p >= 1.0) => Err(Error::usage(format!(
                "Lp metric needs p >= 1, got {p}"
            ))),
            _ => Ok(()),
        }
    }

    #[inline]
    fn eval(&self, a: &[f64], b: &[f64]) -> f64 {
        match *self {
            Metric::Linf => a
                .iter()
                .zip(b)
                .fold(0.0, |acc, (x, y)| f64::max(acc, (x - y).abs())),
            Metric::L2 => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Metric::Lp(p) if p == f64::INFINITY => Metric::Linf.eval(a, b),
            Metric::Lp(p) => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs().powf(p))
                .sum::<f64>()
                .powf(p.recip()),
        }
    }

    fn is_linf(&self) -> bool {
        self.exponent() == f64::INFINITY
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Metric::Linf => write!(f, "linf"),
            Metric::L2 => write!(f, "l2"),
            Metric::Lp(p) => write!(f, "lp:{p}"),
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    /// Accepts `linf`, `l2` or `lp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let metric = match s.trim().to_ascii_lowercase().as_str() {
            "linf" => Metric::Linf,
            "l2" => Metric::L2,
            other => match other.strip_prefix("lp:") {
                Some(p) => Metric::Lp(
                    p.parse()
                        .map_err(|_| Error::usage(format!("bad Lp exponent `{p}`")))?,
                ),
                None => return Err(Error::usage(format!("unknown metric `{s}`"))),
            },
        };
        metric.validate()?;
        Ok(metric)
    }
}

/// A nonempty finite set of points in `ℝ^d` with an `Lp` metric.
///
/// Points are stored row-major in one flat buffer. Duplicate points are kept.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    coords: Vec<f64>,
    dim: usize,
    metric: Metric,
}

impl FiniteMetricSpace {
    pub fn new(points: Vec<Vec<f64>>, metric: Metric) -> Result<Self> {
        let dim = points.first().map(Vec::len).unwrap_or(0);
        if let Some((i, p)) = points.iter().enumerate().find(|(_, p)| p.len() != dim) {
            return Err(Error::usage(format!(
                "point {i} has dimension {}, expected {dim}",
                p.len()
            )));
        }
        Self::from_flat(points.into_iter().flatten().collect(), dim, metric)
    }

    pub fn from_flat(coords: Vec<f64>, dim: usize, metric: Metric) -> Result<Self> {
        metric.validate()?;
        if dim == 0 || coords.is_empty() {
            return Err(Error::usage("a metric space needs at least one point of dimension >= 1"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::usage(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if let Some(x) = coords.iter().find(|x| !x.is_finite()) {
            return Err(Error::usage(format!("non-finite coordinate {x}")));
        }
        Ok(FiniteMetricSpace { coords, dim, metric })
    }

    /// Same points under a different metric.
    pub fn with_metric(&self, metric: Metric) -> Result<Self> {
        metric.validate()?;
        Ok(FiniteMetricSpace {
            coords: self.coords.clone(),
            dim: self.dim,
            metric,
        })
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    /// The full index set of the space.
    pub fn all(&self) -> Subset {
        Subset((0..self.len()).collect())
    }

    /// Distance between points `i` and `j`.
    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(Error::usage(format!(
                "point index ({i}, {j}) out of range for {n} points"
            )));
        }
        Ok(self.dist(i, j))
    }

    #[inline]
    pub(crate) fn dist(&self, i: usize, j: usize) -> f64 {
        self.metric.eval(self.point(i), self.point(j))
    }

    /// Diameter of `y` together with the lexicographically smallest pair
    /// `(a, b)`, `a <= b`, realizing it. A singleton yields `(y, y)` and 0.
    pub fn diameter(&self, y: &Subset) -> Extremum {
        if self.metric.is_linf() {
            return self.diameter_linf(y);
        }
        let idx = y.indices();
        let mut best = Extremum {
            value: 0.0,
            pair: (idx[0], idx[0]),
        };
        for (k, &a) in idx.iter().enumerate() {
            for &b in &idx[k + 1..] {
                let d = self.dist(a, b);
                if d > best.value {
                    best = Extremum { value: d, pair: (a, b) };
                }
            }
        }
        best
    }

    // Under L∞ the farthest pairs are exactly the (argmin, argmax) pairs of the
    // coordinates of maximal spread, so one pass over the coordinates finds the
    // same pair the quadratic scan would.
    fn diameter_linf(&self, y: &Subset) -> Extremum {
        let idx = y.indices();
        let mut best = Extremum {
            value: 0.0,
            pair: (idx[0], idx[0]),
        };
        for c in 0..self.dim {
            let (lo, hi) = self.coordinate_extremes(idx, c);
            let spread = self.point(hi.1)[c] - self.point(lo.1)[c];
            if spread <= 0.0 || spread < best.value {
                continue;
            }
            // Smallest index attaining the min / max of coordinate c.
            let (lo_i, hi_i) = (lo.1, hi.1);
            let pair = if lo_i < hi_i { (lo_i, hi_i) } else { (hi_i, lo_i) };
            if spread > best.value || pair < best.pair {
                best = Extremum { value: spread, pair };
            }
        }
        best
    }

    /// `(value, smallest index)` of the minimum and of the maximum of coordinate `c` over `idx`.
    fn coordinate_extremes(&self, idx: &[usize], c: usize) -> ((f64, usize), (f64, usize)) {
        let first = (self.point(idx[0])[c], idx[0]);
        idx.iter().fold((first, first), |(lo, hi), &i| {
            let v = self.point(i)[c];
            (
                if v < lo.0 { (v, i) } else { lo },
                if v > hi.0 { (v, i) } else { hi },
            )
        })
    }

    /// Radius of `y` relative to the whole space: the smallest `max_{y∈Y} d(x, y)`
    /// over centers `x` drawn from every point of the space, with the smallest
    /// minimizing center.
    pub fn relative_radius(&self, y: &Subset) -> Centered {
        if self.metric.is_linf() {
            return self.relative_radius_linf(y);
        }
        let idx = y.indices();
        let mut best = Centered {
            value: f64::INFINITY,
            center: 0,
        };
        for x in 0..self.len() {
            let mut ecc = 0.0f64;
            for &p in idx {
                ecc = ecc.max(self.dist(x, p));
                if ecc >= best.value {
                    break;
                }
            }
            if ecc < best.value {
                best = Centered { value: ecc, center: x };
            }
        }
        best
    }

    // Eccentricity of x under L∞ is max_c max(|x_c - lo_c|, |x_c - hi_c|).
    fn relative_radius_linf(&self, y: &Subset) -> Centered {
        let bounds: Vec<(f64, f64)> = (0..self.dim)
            .map(|c| {
                let (lo, hi) = self.coordinate_extremes(y.indices(), c);
                (lo.0, hi.0)
            })
            .collect();
        let mut best = Centered {
            value: f64::INFINITY,
            center: 0,
        };
        for (x, p) in self.points().enumerate() {
            let ecc = p
                .iter()
                .zip(&bounds)
                .fold(0.0f64, |acc, (v, (lo, hi))| {
                    acc.max((v - lo).abs()).max((v - hi).abs())
                });
            if ecc < best.value {
                best = Centered { value: ecc, center: x };
            }
        }
        best
    }
}

/// A maximal distance and the pair of points realizing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub value: f64,
    pub pair: (usize, usize),
}

/// A minimax radius and its center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centered {
    pub value: f64,
    pub center: usize,
}

/// A nonempty, strictly increasing list of point indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(Vec<usize>);

impl Subset {
    /// Validates that `indices` is nonempty, strictly increasing and below `n`.
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::usage("subset must be nonempty"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::usage("subset indices must be strictly increasing"));
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(Error::usage(format!("index {last} out of range for {n} points")));
            }
        }
        Ok(Subset(indices))
    }

    /// Sorts and deduplicates arbitrary indices.
    pub fn from_unsorted(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        Self::new(indices, n)
    }

    pub(crate) fn from_sorted_unchecked(indices: Vec<usize>) -> Self {
        debug_assert!(!indices.is_empty() && indices.windows(2).all(|w| w[0] < w[1]));
        Subset(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.len() <= other.len() && self.0.iter().all(|&i| other.contains(i))
    }
}

/// The δ an `L∞`-built cover retains when its distances are read in `Lp` on
/// `ℝ^dim`: `delta · dim^(-1/p)`, and `delta` itself for `p = ∞`.
pub fn effective_delta(delta: f64, dim: usize, p: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::usage(format!("delta must lie in (0, 1], got {delta}")));
    }
    if dim == 0 {
        return Err(Error::usage("dimension must be >= 1"));
    }
    if !(p >= 1.0) {
        return Err(Error::usage(format!("norm exponent must be >= 1, got {p}")));
    }
    if p == f64::INFINITY {
        return Ok(delta);
    }
    Ok(delta * (dim as f64).powf(-p.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64], metric: Metric) -> FiniteMetricSpace {
        FiniteMetricSpace::new(xs.iter().map(|&x| vec![x]).collect(), metric).unwrap()
    }

    #[test]
    fn distances() {
        let s = FiniteMetricSpace::new(vec![vec![0.0, 0.0], vec![3.0, 4.0]], Metric::Linf).unwrap();
        assert_eq!(s.distance(0, 1).unwrap(), 4.0);
        let s = s.with_metric(Metric::L2).unwrap();
        assert_eq!(s.distance(0, 1).unwrap(), 5.0);
        assert_eq!(s.distance(1, 1).unwrap(), 0.0);
        let s = s.with_metric(Metric::Lp(1.0)).unwrap();
        assert_eq!(s.distance(0, 1).unwrap(), 7.0);
        assert!(matches!(s.distance(0, 2), Err(Error::Usage(_))));
    }

    #[test]
    fn rejects_ragged_and_bad_metric() {
        assert!(FiniteMetricSpace::new(vec![vec![0.0], vec![1.0, 2.0]], Metric::L2).is_err());
        assert!(FiniteMetricSpace::new(vec![], Metric::L2).is_err());
        assert!(FiniteMetricSpace::new(vec![vec![0.0]], Metric::Lp(0.5)).is_err());
        assert!("lp:0.3".parse::<Metric>().is_err());
        assert_eq!("lp:3".parse::<Metric>().unwrap(), Metric::Lp(3.0));
        assert_eq!("LINF".parse::<Metric>().unwrap(), Metric::Linf);
    }

    #[test]
    fn subset_validation() {
        assert!(Subset::new(vec![], 3).is_err());
        assert!(Subset::new(vec![1, 1], 3).is_err());
        assert!(Subset::new(vec![2, 1], 3).is_err());
        assert!(Subset::new(vec![0, 3], 3).is_err());
        assert_eq!(Subset::from_unsorted(vec![2, 0, 2], 3).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn diameter_examples() {
        let s = line(&[0.0, 0.5, 1.0], Metric::L2);
        let single = Subset::new(vec![1], 3).unwrap();
        assert_eq!(s.diameter(&single), Extremum { value: 0.0, pair: (1, 1) });
        assert_eq!(s.diameter(&s.all()), Extremum { value: 1.0, pair: (0, 2) });

        let square = FiniteMetricSpace::new(
            vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
            Metric::L2,
        )
        .unwrap();
        let d = square.diameter(&square.all());
        assert_eq!(d.value, 2f64.sqrt());
        assert_eq!(d.pair, (0, 3));
    }

    #[test]
    fn linf_diameter_picks_smallest_pair() {
        // Pairs (0,1), (0,2), (1,2), (0,3)... several attain 1.
        let s = FiniteMetricSpace::new(
            vec![vec![0.5, 0.0], vec![0.0, 1.0], vec![1.0, 1.0], vec![0.5, 1.0]],
            Metric::Linf,
        )
        .unwrap();
        let fast = s.diameter(&s.all());
        assert_eq!(fast, Extremum { value: 1.0, pair: (0, 1) });
    }

    #[test]
    fn relative_radius_examples() {
        let s = line(&[0.0, 1.0, 2.0], Metric::L2);
        let y = Subset::new(vec![0, 2], 3).unwrap();
        assert_eq!(s.relative_radius(&y), Centered { value: 1.0, center: 1 });
        let single = Subset::new(vec![2], 3).unwrap();
        assert_eq!(s.relative_radius(&single), Centered { value: 0.0, center: 2 });

        // No central point: the radius equals the diameter.
        let s = line(&[0.0, 1.0], Metric::L2);
        assert_eq!(s.relative_radius(&s.all()), Centered { value: 1.0, center: 0 });
    }

    #[test]
    fn effective_delta_examples() {
        assert!((effective_delta(0.1, 4, 2.0).unwrap() - 0.05).abs() < 1e-15);
        assert_eq!(effective_delta(0.3, 7, f64::INFINITY).unwrap(), 0.3);
        assert!((effective_delta(0.2, 9, 1.0).unwrap() - 0.2 / 9.0).abs() < 1e-15);
        assert!(effective_delta(0.0, 2, 2.0).is_err());
        assert!(effective_delta(1.5, 2, 2.0).is_err());
        assert!(effective_delta(0.5, 0, 2.0).is_err());
        assert!(effective_delta(0.5, 2, 0.5).is_err());
    }
}
