//! One ellipsoid division and one decision division, checked against the
//! δ-division property.

use divcover::cover::{decision_division, ellipsoid_division, verify_delta_division};
use divcover::generate::generate_cube;
use divcover::metric::Metric;

fn main() -> divcover::Result<()> {
    let space = generate_cube(50, 3, 1, Metric::L2)?;
    let all = space.all();
    let far = space.diameter(&all);
    println!("50 points in [0,1]^3, diameter {:.3} between {:?}", far.value, far.pair);

    for delta in [0.05, 0.2, 0.4] {
        let (a, b) = ellipsoid_division(&space, &all, delta)?;
        let shared = a.indices().iter().filter(|&&p| b.contains(p)).count();
        println!(
            "ellipsoid δ={delta}: parts of {} and {} points, {shared} shared, δ-division: {}",
            a.len(),
            b.len(),
            verify_delta_division(&space, &all, &a, &b, delta)
        );
    }

    let linf = space.with_metric(Metric::Linf)?;
    for delta in [0.1, 0.5] {
        let (a, b) = decision_division(&linf, &all, delta)?;
        println!(
            "decision δ={delta}: parts of {} and {} points, δ-division: {}",
            a.len(),
            b.len(),
            verify_delta_division(&linf, &all, &a, &b, delta)
        );
    }
    Ok(())
}
