//! Persistent homology over the two-element field by boundary-matrix
//! reduction, with the twist (clearing) optimization.

use serde::{Deserialize, Serialize};

use crate::nerve::FilteredComplex;

/// A persistence interval `[birth, death)`; `death` is `f64::INFINITY` for
/// classes that never die.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Interval {
    pub fn is_infinite(&self) -> bool {
        self.death == f64::INFINITY
    }

    pub fn contains(&self, t: f64) -> bool {
        self.birth <= t && t < self.death
    }

    pub fn length(&self) -> f64 {
        self.death - self.birth
    }
}

/// Provenance attached to a barcode by the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BarcodeMeta {
    pub resolution: Option<f64>,
    pub delta: Option<f64>,
    /// All filtration values have been divided by this constant.
    pub normalization: f64,
}

impl Default for BarcodeMeta {
    fn default() -> Self {
        BarcodeMeta {
            resolution: None,
            delta: None,
            normalization: 1.0,
        }
    }
}

/// Multiset of persistence intervals in dimensions `0..homology_dims`, sorted
/// by `(dim, birth, death)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barcode {
    pub intervals: Vec<Interval>,
    /// Number of reported homology dimensions.
    pub homology_dims: usize,
    pub meta: BarcodeMeta,
    /// Pairs with `birth == death` that were discarded.
    pub zero_length: usize,
}

impl Barcode {
    pub fn empty(homology_dims: usize) -> Self {
        Barcode {
            intervals: Vec::new(),
            homology_dims,
            meta: BarcodeMeta::default(),
            zero_length: 0,
        }
    }

    /// Betti numbers `β_0..` at scale `t`: intervals with `birth <= t < death`.
    pub fn betti_at(&self, t: f64) -> Vec<usize> {
        let mut betti = vec![0; self.homology_dims];
        for iv in self.intervals.iter().filter(|iv| iv.contains(t)) {
            betti[iv.dim] += 1;
        }
        betti
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(move |iv| iv.dim == dim)
    }

    /// Divides every birth and death by `scale`.
    pub fn normalized(mut self, scale: f64) -> Self {
        assert!(scale > 0.0, "normalization constant must be positive");
        for iv in &mut self.intervals {
            iv.birth /= scale;
            iv.death /= scale;
        }
        self.meta.normalization *= scale;
        self
    }

    fn sort(&mut self) {
        self.intervals.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
    }
}

/// Persistence barcode of `complex` over F2.
///
/// Each boundary matrix is reduced with rows and columns in filtration
/// order, from the top dimension down; a column whose simplex already
/// appeared as a pivot row of the dimension above is zero and skipped.
/// Intervals in dimension `max_dim` are not reported: the complex holds no
/// cofaces that could kill them.
pub fn compute_persistence(complex: &FilteredComplex) -> Barcode {
    const NONE: u32 = u32::MAX;
    let top = complex.max_dim();
    let sizes = complex.sizes();
    let mut barcode = Barcode::empty(top);
    // paired_birth[d][i]: simplex i of dimension d is the pivot row of some column.
    let mut paired_birth: Vec<Vec<bool>> = sizes.iter().map(|&n| vec![false; n]).collect();
    let mut negative: Vec<Vec<bool>> = sizes.iter().map(|&n| vec![false; n]).collect();

    let mut facet = Vec::with_capacity(top + 1);
    let mut col: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = Vec::new();
    for dim in (1..=top).rev() {
        let rows = complex.filtration_order(dim - 1);
        let mut row_pos = vec![0u32; rows.len()];
        for (pos, &i) in rows.iter().enumerate() {
            row_pos[i as usize] = pos as u32;
        }
        let mut pivot_of = vec![NONE; rows.len()];
        let mut reduced: Vec<Vec<u32>> = vec![Vec::new(); rows.len()];

        for &j in complex.filtration_order(dim) {
            let j = j as usize;
            if paired_birth[dim][j] {
                continue;
            }
            let simplex = complex.vertices(dim, j);
            col.clear();
            for skip in 0..simplex.len() {
                facet.clear();
                facet.extend(simplex.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                let f = complex
                    .find(&facet)
                    .unwrap_or_else(|| panic!("face {facet:?} of {simplex:?} is not in the complex"));
                col.push(row_pos[f]);
            }
            col.sort_unstable();
            while let Some(&low) = col.last() {
                if pivot_of[low as usize] == NONE {
                    break;
                }
                symmetric_difference(&col, &reduced[low as usize], &mut scratch);
                std::mem::swap(&mut col, &mut scratch);
            }
            if let Some(&low) = col.last() {
                let birth_idx = rows[low as usize] as usize;
                pivot_of[low as usize] = j as u32;
                reduced[low as usize] = col.clone();
                paired_birth[dim - 1][birth_idx] = true;
                negative[dim][j] = true;
                let (b, d) = (complex.value(dim - 1, birth_idx), complex.value(dim, j));
                if b == d {
                    barcode.zero_length += 1;
                } else {
                    barcode.intervals.push(Interval { dim: dim - 1, birth: b, death: d });
                }
            }
        }
    }
    for dim in 0..top {
        for i in 0..sizes[dim] {
            if !paired_birth[dim][i] && !negative[dim][i] {
                barcode.intervals.push(Interval {
                    dim,
                    birth: complex.value(dim, i),
                    death: f64::INFINITY,
                });
            }
        }
    }
    barcode.sort();
    barcode
}

fn symmetric_difference(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
