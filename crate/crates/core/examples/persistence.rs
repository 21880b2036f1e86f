//! Persistence of a hand-built filtered complex: a square whose diagonal
//! arrives late, then the two triangles that fill it.

use divcover::nerve::{FilteredComplex, Simplex};
use divcover::persistence::compute_persistence;

fn main() {
    let s = Simplex::new;
    let complex = FilteredComplex::new(
        vec![
            s(vec![0], 0.0),
            s(vec![1], 0.0),
            s(vec![2], 0.0),
            s(vec![3], 0.0),
            s(vec![0, 1], 1.0),
            s(vec![1, 2], 1.0),
            s(vec![2, 3], 1.0),
            s(vec![0, 3], 2.0),
            s(vec![0, 2], 3.0),
            s(vec![0, 1, 2], 3.0),
            s(vec![0, 2, 3], 4.0),
        ],
        2,
    );
    assert!(complex.check().is_ok());
    let barcode = compute_persistence(&complex);
    for iv in &barcode.intervals {
        println!("H{}: [{}, {})", iv.dim, iv.birth, iv.death);
    }
    println!("zero-length pairs dropped: {}", barcode.zero_length);
    for t in [0.5, 1.5, 2.5, 3.5, 4.5] {
        println!("betti at {t}: {:?}", barcode.betti_at(t));
    }
}
