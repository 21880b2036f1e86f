//! The filtered nerve of a small divisive cover, simplex by simplex.

use divcover::cover::{divisive_cover, DivisionStrategy};
use divcover::metric::{FiniteMetricSpace, Metric};
use divcover::nerve::build_nerve;

fn main() -> divcover::Result<()> {
    let xs = [0.0, 0.1, 0.45, 0.5, 0.55, 0.9, 1.0];
    let space = FiniteMetricSpace::new(xs.iter().map(|&x| vec![x]).collect(), Metric::L2)?;
    let cover = divisive_cover(&space, DivisionStrategy::Ellipsoid { delta: 0.2 }, 0.1)?;

    println!("cover elements:");
    for e in cover.elements() {
        let pts: Vec<f64> = e.subset.indices().iter().map(|&i| xs[i]).collect();
        println!("  U{} = {pts:?}  r = {:.3}  parent {:?}", e.id, e.radius, e.parent);
    }

    let nerve = build_nerve(&cover, 2);
    println!("nerve sizes by dimension: {:?}", nerve.sizes());
    for (vertices, value) in nerve.iter().filter(|(v, _)| v.len() > 1).take(12) {
        println!("  {vertices:?} enters at {value:.3}");
    }
    Ok(())
}
