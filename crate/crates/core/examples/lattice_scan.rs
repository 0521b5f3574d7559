//! Which mode goes first as the box changes shape, at Q = 0 and Q = 10,
//! along the row L2 = 0.5. The index jumps where two modes tie.

use mhdconv::scan::{minimizers, Axis, ScanGrid};
use mhdconv::FluidParams;

fn main() -> mhdconv::Result<()> {
    for q in [0.0, 10.0] {
        let p = FluidParams::new(1.0, 1.0, q)?;
        let grid = ScanGrid { x: Axis::stepped(0.5, 6.0, 0.05)?, y: Axis::point(0.5)? };
        let cells = minimizers(&p, &grid, None)?;
        println!("Q = {q}");
        let mut prev = String::new();
        for c in &cells {
            let set: Vec<String> = c.critical_set.iter().map(|m| m.to_string()).collect();
            let set = set.join(" ");
            if set != prev {
                println!("  from L1 = {:.2}: {set}  (alpha {:.4})", c.l1, c.alpha);
                prev = set;
            }
        }
    }
    Ok(())
}
