//! Barcode of a noisy sphere: 1000 points, ellipsoid division with δ = 0.05.
//!
//! `cargo run --release --example sphere -- [seed]`

use divcover::pipeline::{run_pipeline, RunConfig};

fn main() -> divcover::Result<()> {
    let seed = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed is an integer"));
    let out = run_pipeline(&RunConfig { seed, ..RunConfig::default() })?;
    println!("{}", out.summary());

    for dim in 0..3 {
        let mut bars: Vec<_> = out.barcode.in_dim(dim).collect();
        bars.sort_by(|a, b| b.length().total_cmp(&a.length()));
        println!("H{dim}: {} bars, longest:", bars.len());
        for iv in bars.iter().take(3) {
            println!("  [{:.3}, {:.3})", iv.birth, iv.death);
        }
    }
    for t in [0.5, 0.6, 0.7, 0.8] {
        println!("betti at {t} d(X): {:?}", out.barcode.betti_at(t));
    }
    Ok(())
}
