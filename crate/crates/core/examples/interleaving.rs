//! Compare divisive and Čech barcodes on small random clouds and print the
//! log-bottleneck distance per dimension against ln(1/δ).

use divcover::cover::DivisionStrategy;
use divcover::generate::generate_cube;
use divcover::metric::Metric;
use divcover::oracle::verify_interleaving;

fn main() -> divcover::Result<()> {
    let runs = [
        (DivisionStrategy::Ellipsoid { delta: 0.1 }, Metric::L2, 2),
        (DivisionStrategy::Ellipsoid { delta: 0.2 }, Metric::L2, 1),
        (DivisionStrategy::Decision { delta: 0.3 }, Metric::Linf, 3),
        (DivisionStrategy::Decision { delta: 0.3 }, Metric::L2, 2),
    ];
    for (seed, (strategy, metric, dim)) in runs.into_iter().enumerate() {
        let space = generate_cube(20, dim, seed as u64, metric)?;
        let resolution = 0.3 * space.relative_radius(&space.all()).value;
        let report = verify_interleaving(&space, strategy, resolution, 3)?;
        let distances: Vec<String> = report.dims.iter().map(|d| format!("{:.3}", d.distance)).collect();
        println!(
            "{} δ={} {metric} d={dim}: cover {} elements, distances {distances:?} vs bound {:.3}: {}",
            strategy.name(),
            strategy.delta(),
            report.cover_size,
            report.dims[0].bound,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
