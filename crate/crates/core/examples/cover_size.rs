//! Decision-division cover sizes on L∞ lattices against 2^{kd}, and cover
//! build time as the number of points grows.

use std::time::Instant;

use divcover::cover::{divisive_cover, DivisionStrategy};
use divcover::generate::{generate_cube, generate_grid};
use divcover::metric::Metric;

fn main() -> divcover::Result<()> {
    let delta = 0.5;
    let strategy = DivisionStrategy::Decision { delta };
    for (dim, side) in [(1, 1000), (2, 40), (3, 12)] {
        let grid = generate_grid(side, dim, Metric::Linf)?;
        let rx = grid.relative_radius(&grid.all()).value;
        for fraction in [0.5, 0.25] {
            let cover = divisive_cover(&grid, strategy, fraction * rx)?;
            let k = (fraction.ln() / ((1.0 + delta) / 2.0).ln()).ceil() as u32;
            println!(
                "{side}^{dim} t/r={fraction}: {} leaves, bound 2^{} = {}",
                cover.leaves().len(),
                k * dim as u32,
                2u64.pow(k * dim as u32)
            );
        }
    }

    for n in [1_000, 10_000, 100_000] {
        let space = generate_cube(n, 2, 5, Metric::Linf)?;
        let t = 0.25 * space.relative_radius(&space.all()).value;
        let clock = Instant::now();
        let cover = divisive_cover(&space, strategy, t)?;
        println!("n={n}: {} elements in {:.2?}", cover.len(), clock.elapsed());
    }
    Ok(())
}
