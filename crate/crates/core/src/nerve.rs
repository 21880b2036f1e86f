//! Filtered simplicial complexes and the filtered nerve of a cover.

use std::cmp::Ordering;

use crate::cover::DivisiveCover;
use crate::error::Error;
use crate::metric::Subset;

/// A simplex given by its sorted vertex ids, with a filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn new(mut vertices: Vec<usize>, value: f64) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Simplex { vertices, value }
    }

    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Filtration order: value, then dimension, then vertex tuple.
    pub fn filtration_cmp(&self, other: &Simplex) -> Ordering {
        self.value
            .total_cmp(&other.value)
            .then_with(|| self.vertices.len().cmp(&other.vertices.len()))
            .then_with(|| self.vertices.cmp(&other.vertices))
    }
}

/// Simplices of one dimension in lexicographic vertex order.
#[derive(Debug, Clone, PartialEq)]
struct Layer {
    arity: usize,
    vertices: Vec<u32>,
    values: Vec<f64>,
    /// Lexicographic indices sorted by `(value, vertices)`.
    order: Vec<u32>,
    /// `first[v]..first[v + 1]` holds the simplices whose lowest vertex is `v`.
    first: Vec<u32>,
}

impl Layer {
    fn new(arity: usize, vertices: Vec<u32>, values: Vec<f64>) -> Self {
        let len = values.len();
        assert_eq!(vertices.len(), arity * len);
        assert!(len < u32::MAX as usize, "too many simplices in one dimension");
        // Lexicographic input, so a stable sort on value alone breaks ties by vertices.
        let mut order: Vec<u32> = (0..len as u32).collect();
        order.sort_by(|&a, &b| values[a as usize].total_cmp(&values[b as usize]));
        let top = vertices.chunks(arity).map(|s| s[0] as usize + 1).max().unwrap_or(0);
        let mut first = vec![0u32; top + 1];
        for s in vertices.chunks(arity) {
            first[s[0] as usize + 1] += 1;
        }
        for v in 0..top {
            first[v + 1] += first[v];
        }
        Layer { arity, vertices, values, order, first }
    }

    fn len(&self) -> usize {
        self.values.len()
    }

    fn get(&self, i: usize) -> &[u32] {
        &self.vertices[i * self.arity..(i + 1) * self.arity]
    }

    fn find(&self, simplex: &[u32]) -> Option<usize> {
        let v = simplex[0] as usize;
        if v + 1 >= self.first.len() {
            return None;
        }
        let (mut lo, mut hi) = (self.first[v] as usize, self.first[v + 1] as usize);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(simplex) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A finite simplicial complex with a monotone filtration, truncated at
/// `max_dim`.
///
/// Each dimension is stored separately in lexicographic order together with
/// its filtration order. The canonical order over all simplices is value,
/// then dimension, then vertex tuple.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredComplex {
    layers: Vec<Layer>,
    max_dim: usize,
}

impl FilteredComplex {
    /// Simplices above `max_dim` are dropped; face closure is not checked
    /// here (see [`FilteredComplex::check`]).
    ///
    /// # Panics
    /// If a vertex id does not fit in `u32`.
    pub fn new(simplices: Vec<Simplex>, max_dim: usize) -> Self {
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); max_dim + 1];
        for s in simplices {
            if !s.vertices.is_empty() && s.dim() <= max_dim {
                by_dim[s.dim()].push(s);
            }
        }
        let layers = by_dim
            .into_iter()
            .enumerate()
            .map(|(dim, mut group)| {
                group.sort_by(|a, b| a.vertices.cmp(&b.vertices));
                let vertices = group
                    .iter()
                    .flat_map(|s| s.vertices.iter())
                    .map(|&v| u32::try_from(v).expect("vertex id fits in u32"))
                    .collect();
                let values = group.iter().map(|s| s.value).collect();
                Layer::new(dim + 1, vertices, values)
            })
            .collect();
        FilteredComplex { layers, max_dim }
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn len(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of simplices in each dimension `0..=max_dim`.
    pub fn sizes(&self) -> Vec<usize> {
        self.layers.iter().map(Layer::len).collect()
    }

    /// Largest filtration value, if any.
    pub fn max_value(&self) -> Option<f64> {
        self.layers
            .iter()
            .filter_map(|l| l.order.last().map(|&i| l.values[i as usize]))
            .max_by(f64::total_cmp)
    }

    /// Vertices of the `i`-th simplex of dimension `dim` in lexicographic order.
    pub fn vertices(&self, dim: usize, i: usize) -> &[u32] {
        self.layers[dim].get(i)
    }

    pub fn value(&self, dim: usize, i: usize) -> f64 {
        self.layers[dim].values[i]
    }

    /// Lexicographic indices of the dimension-`dim` simplices in filtration order.
    pub fn filtration_order(&self, dim: usize) -> &[u32] {
        &self.layers[dim].order
    }

    /// Lexicographic index of `vertices` (sorted) if present.
    pub fn find(&self, vertices: &[u32]) -> Option<usize> {
        match vertices.len() {
            0 => None,
            n if n <= self.max_dim + 1 => self.layers[n - 1].find(vertices),
            _ => None,
        }
    }

    /// All simplices in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&[u32], f64)> + '_ {
        let mut cursor = vec![0usize; self.layers.len()];
        std::iter::from_fn(move || {
            let mut best: Option<(usize, f64)> = None;
            for (dim, layer) in self.layers.iter().enumerate() {
                if let Some(&i) = layer.order.get(cursor[dim]) {
                    let v = layer.values[i as usize];
                    if best.is_none_or(|(_, b)| v < b) {
                        best = Some((dim, v));
                    }
                }
            }
            let (dim, value) = best?;
            let i = self.layers[dim].order[cursor[dim]] as usize;
            cursor[dim] += 1;
            Some((self.layers[dim].get(i), value))
        })
    }

    /// Owned copies of all simplices in canonical order.
    pub fn to_simplices(&self) -> Vec<Simplex> {
        self.iter()
            .map(|(v, value)| Simplex {
                vertices: v.iter().map(|&x| x as usize).collect(),
                value,
            })
            .collect()
    }

    /// Subcomplex of simplices with value `<= t`.
    pub fn complex_at(&self, t: f64) -> FilteredComplex {
        let layers = self
            .layers
            .iter()
            .map(|l| {
                let keep: Vec<usize> = (0..l.len()).filter(|&i| l.values[i] <= t).collect();
                let vertices = keep.iter().flat_map(|&i| l.get(i).iter().copied()).collect();
                let values = keep.iter().map(|&i| l.values[i]).collect();
                Layer::new(l.arity, vertices, values)
            })
            .collect();
        FilteredComplex {
            layers,
            max_dim: self.max_dim,
        }
    }

    /// Returns a description of the first violated invariant: a missing face,
    /// a face entering after its coface, or a duplicate simplex.
    pub fn check(&self) -> Result<(), String> {
        let mut face = Vec::with_capacity(self.max_dim + 1);
        for (dim, layer) in self.layers.iter().enumerate() {
            for i in 0..layer.len() {
                let s = layer.get(i);
                if i > 0 && layer.get(i - 1) == s {
                    return Err(format!("duplicate simplex {s:?}"));
                }
                if dim == 0 {
                    continue;
                }
                for skip in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                    match self.layers[dim - 1].find(&face) {
                        None => return Err(format!("face {face:?} of {s:?} missing")),
                        Some(f) if self.layers[dim - 1].values[f] > layer.values[i] => {
                            return Err(format!("face {face:?} enters after {s:?}"))
                        }
                        _ => {}
                    }
                }
            }
        }
        Ok(())
    }
}

/// Filtered nerve of a divisive cover: one vertex per cover element at its
/// relative radius, and a simplex for every family of at most `max_dim + 1`
/// elements with a common point, at the largest radius among its members.
pub fn build_nerve(cover: &DivisiveCover, max_dim: usize) -> FilteredComplex {
    let sets: Vec<&Subset> = cover.elements().iter().map(|e| &e.subset).collect();
    nerve_of_sets(&sets, &cover.radii(), max_dim)
}

/// Filtered nerve of an arbitrary family of subsets with per-set values.
///
/// Simplices are grown by coface expansion. Each simplex below the top
/// dimension keeps the sorted intersection of its members; its cofaces are
/// found by bucketing the points of that intersection by the higher-numbered
/// sets containing them, so every bucket is exactly the intersection of the
/// extended simplex. Expansion preserves lexicographic order.
pub fn nerve_of_sets(sets: &[&Subset], values: &[f64], max_dim: usize) -> FilteredComplex {
    nerve_of_sets_bounded(sets, values, max_dim, usize::MAX).expect("unbounded nerve")
}

/// [`nerve_of_sets`] that stops with [`Error::Budget`] once the nerve would
/// hold more than `max_simplices` simplices.
pub fn nerve_of_sets_bounded(
    sets: &[&Subset],
    values: &[f64],
    max_dim: usize,
    max_simplices: usize,
) -> Result<FilteredComplex, Error> {
    assert_eq!(sets.len(), values.len(), "one value per set");
    assert!(sets.len() < u32::MAX as usize, "too many sets");
    let n_points = sets
        .iter()
        .filter_map(|s| s.indices().last())
        .max()
        .map_or(0, |&m| m + 1);
    let mut containing: Vec<Vec<u32>> = vec![Vec::new(); n_points];
    for (id, set) in sets.iter().enumerate() {
        for &p in set.indices() {
            containing[p].push(id as u32);
        }
    }

    let mut layers = Vec::with_capacity(max_dim + 1);
    let mut verts: Vec<u32> = (0..sets.len() as u32).collect();
    let mut vals: Vec<f64> = values.to_vec();
    let mut common: Vec<Vec<u32>> = sets
        .iter()
        .map(|s| s.indices().iter().map(|&p| p as u32).collect())
        .collect();

    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); sets.len()];
    let mut touched: Vec<u32> = Vec::new();
    let mut total = sets.len();
    let over = || Error::Budget { what: "nerve simplices", limit: max_simplices };
    if total > max_simplices {
        return Err(over());
    }
    for dim in 0..max_dim {
        let arity = dim + 1;
        let keep_common = dim + 1 < max_dim;
        let (mut next_verts, mut next_vals, mut next_common) = (Vec::new(), Vec::new(), Vec::new());
        for (i, points) in common.iter().enumerate() {
            let simplex = &verts[i * arity..(i + 1) * arity];
            let last = simplex[arity - 1];
            for &p in points {
                for &v in containing[p as usize].iter().filter(|&&v| v > last) {
                    if buckets[v as usize].is_empty() {
                        touched.push(v);
                    }
                    buckets[v as usize].push(p);
                }
            }
            total += touched.len();
            if total > max_simplices {
                return Err(over());
            }
            touched.sort_unstable();
            for v in touched.drain(..) {
                next_verts.extend_from_slice(simplex);
                next_verts.push(v);
                next_vals.push(vals[i].max(values[v as usize]));
                let bucket = std::mem::take(&mut buckets[v as usize]);
                if keep_common {
                    next_common.push(bucket);
                }
            }
        }
        layers.push(Layer::new(arity, std::mem::replace(&mut verts, next_verts), std::mem::replace(&mut vals, next_vals)));
        common = next_common;
    }
    layers.push(Layer::new(max_dim + 1, verts, vals));
    Ok(FilteredComplex { layers, max_dim })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ix: &[usize]) -> Subset {
        Subset::new(ix.to_vec(), 10).unwrap()
    }

    #[test]
    fn hollow_triangle() {
        let (a, b, c) = (set(&[0, 1]), set(&[1, 2]), set(&[0, 2]));
        let k = nerve_of_sets(&[&a, &b, &c], &[1.0, 1.0, 1.0], 2);
        assert_eq!(k.sizes(), vec![3, 3, 0]);
        assert!(k.iter().all(|(_, v)| v == 1.0));
        assert!(k.check().is_ok());
    }

    #[test]
    fn single_set() {
        let x = set(&[0, 1, 2]);
        let k = nerve_of_sets(&[&x], &[0.7], 3);
        assert_eq!(k.to_simplices(), vec![Simplex::new(vec![0], 0.7)]);
        assert_eq!(k.sizes(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn nested_pair_enters_at_larger_value() {
        let (x, y) = (set(&[0, 1, 2]), set(&[1]));
        let k = nerve_of_sets(&[&x, &y], &[2.0, 0.5], 2);
        assert_eq!(
            k.to_simplices(),
            vec![
                Simplex::new(vec![1], 0.5),
                Simplex::new(vec![0], 2.0),
                Simplex::new(vec![0, 1], 2.0)
            ]
        );
    }

    #[test]
    fn zero_max_dim_keeps_vertices() {
        let (a, b) = (set(&[0, 1]), set(&[1, 2]));
        let k = nerve_of_sets(&[&a, &b], &[0.5, 0.25], 0);
        assert_eq!(k.sizes(), vec![2]);
        assert_eq!(k.filtration_order(0), &[1, 0]);
    }

    #[test]
    fn complex_at_thresholds() {
        let (a, b, c) = (set(&[0, 1]), set(&[1, 2]), set(&[0, 2]));
        let k = nerve_of_sets(&[&a, &b, &c], &[1.0, 1.0, 1.0], 2);
        assert!(k.complex_at(0.5).is_empty());
        assert_eq!(k.complex_at(1.0).sizes(), vec![3, 3, 0]);
        assert_eq!(k.complex_at(10.0), k);
    }

    #[test]
    fn max_dim_truncates() {
        let x = set(&[0]);
        let k = nerve_of_sets(&[&x, &x, &x, &x], &[1.0; 4], 1);
        assert_eq!(k.sizes(), vec![4, 6]);
        let k = nerve_of_sets(&[&x, &x, &x, &x], &[1.0; 4], 3);
        assert_eq!(k.sizes(), vec![4, 6, 4, 1]);
    }

    #[test]
    fn canonical_order_interleaves_dimensions() {
        let k = FilteredComplex::new(
            vec![
                Simplex::new(vec![0, 1], 1.0),
                Simplex::new(vec![2], 1.0),
                Simplex::new(vec![1], 0.0),
                Simplex::new(vec![0], 0.5),
            ],
            1,
        );
        let order: Vec<Vec<u32>> = k.iter().map(|(v, _)| v.to_vec()).collect();
        assert_eq!(order, vec![vec![1], vec![0], vec![2], vec![0, 1]]);
        assert_eq!(k.find(&[0, 1]), Some(0));
        assert_eq!(k.find(&[1, 2]), None);
        assert_eq!(k.max_value(), Some(1.0));
    }

    #[test]
    fn check_reports_missing_face() {
        let k = FilteredComplex::new(vec![Simplex::new(vec![0, 1], 1.0), Simplex::new(vec![0], 0.0)], 1);
        assert!(k.check().unwrap_err().contains("missing"));
        let k = FilteredComplex::new(
            vec![
                Simplex::new(vec![0], 2.0),
                Simplex::new(vec![1], 0.0),
                Simplex::new(vec![0, 1], 1.0),
            ],
            1,
        );
        assert!(k.check().unwrap_err().contains("after"));
        let k = FilteredComplex::new(vec![Simplex::new(vec![0], 0.0), Simplex::new(vec![0], 1.0)], 0);
        assert!(k.check().unwrap_err().contains("duplicate"));
    }
}
