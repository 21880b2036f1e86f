//! Barcode of the flat torus on a 20 x 20 grid of random angles, δ = 0.06.
//! Writes `torus.svg` to the working directory.
//!
//! `cargo run --release --example torus -- [k] [seed]`

use divcover::io::barcode_to_svg;
use divcover::pipeline::{run_pipeline, Input, RunConfig};

fn main() -> divcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let k = args.next().map_or(20, |s| s.parse().expect("k is an integer"));
    let seed = args.next().map_or(0, |s| s.parse().expect("seed is an integer"));
    let config = RunConfig {
        input: Input::Torus { k },
        delta: 0.06,
        seed,
        ..RunConfig::default()
    };
    let out = run_pipeline(&config)?;
    println!("{}", out.summary());
    for t in [0.4, 0.5, 0.6, 0.7, 0.8, 0.9] {
        println!("betti at {t} d(X): {:?}", out.barcode.betti_at(t));
    }
    std::fs::write("torus.svg", barcode_to_svg(&out.barcode, Some((0.0, 1.0))))?;
    println!("wrote torus.svg");
    Ok(())
}
