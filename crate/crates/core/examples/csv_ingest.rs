//! Read points from a CSV file (one point per line, `#` comments allowed) and
//! export the barcode as CSV and JSON next to it.
//!
//! `cargo run --release --example csv_ingest -- points.csv [delta]`
//!
//! Without arguments a small demo file is written to the temp directory first.

use std::path::PathBuf;

use divcover::pipeline::{run_pipeline, Format, Input, Normalize, Resolution, RunConfig};

fn main() -> divcover::Result<()> {
    let mut args = std::env::args().skip(1);
    let path = match args.next() {
        Some(p) => PathBuf::from(p),
        None => {
            let p = std::env::temp_dir().join("divcover_demo.csv");
            let mut csv = String::from("# x,y\n");
            for i in 0..24 {
                let a = std::f64::consts::TAU * i as f64 / 24.0;
                csv.push_str(&format!("{},{}\n", a.cos(), a.sin()));
            }
            std::fs::write(&p, csv)?;
            p
        }
    };
    let delta = args.next().map_or(0.1, |s| s.parse().expect("delta is a number"));
    let config = RunConfig {
        input: Input::Csv(path.clone()),
        delta,
        resolution: Resolution::Relative(0.1),
        max_dim: 2,
        normalize: Normalize::None,
        outputs: vec![
            (Format::Csv, path.with_extension("barcode.csv")),
            (Format::Json, path.with_extension("barcode.json")),
        ],
        ..RunConfig::default()
    };
    let out = run_pipeline(&config)?;
    println!("{}", out.summary());
    for iv in out.barcode.intervals.iter().filter(|iv| iv.dim > 0) {
        println!("H{}: [{:.4}, {:.4})", iv.dim, iv.birth, iv.death);
    }
    println!("barcode written next to {}", path.display());
    Ok(())
}
