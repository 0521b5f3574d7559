//! Mixed transition: with a < 0 < b the roll states capture a sector of
//! initial conditions of half-angle arctan(1/2), everything else escapes.

use mhdconv::dynamics::{sector_probe, RayOutcome};

fn main() -> mhdconv::Result<()> {
    let beta = 0.01;
    let rep = sector_probe(-1.0, 1.0, beta, 360, 0.5 * beta.sqrt())?;
    let captured = rep.outcomes.iter().filter(|o| **o == RayOutcome::Captured).count();
    println!("{captured} of {} rays captured", rep.outcomes.len());
    for b in &rep.boundaries {
        println!("  edge at {:+.4} rad ({:+.3} deg)", b, b.to_degrees());
    }
    let h = rep.half_angle.expect("a captured sector around +x");
    println!("half-angle {:.4} deg, arctan(1/2) = {:.4} deg", h.to_degrees(), 0.5f64.atan().to_degrees());
    Ok(())
}
