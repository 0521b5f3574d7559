//! Samples a hexagonal planform 2ψ_(1,1,1) + ψ_(0,2,1) on the top plate and
//! prints a coarse character map of the vertical velocity.

use mhdconv::cli::parse_combo;
use mhdconv::fields::pattern_snapshot;
use mhdconv::BoxGeometry;

fn main() -> mhdconv::Result<()> {
    let g = BoxGeometry::new(1.5, 1.5 * 3f64.sqrt())?;
    let combo = parse_combo("2*(1,1,1) + 1*(0,2,1)")?;
    let s = pattern_snapshot(&combo, &g, 0.5, 31, 41)?;
    let max = s.w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let shades = [' ', '.', ':', '-', '=', '+', '*', '#'];
    for row in (0..s.ny).rev() {
        let line: String = (0..s.nx)
            .map(|col| {
                let v = s.w[row * s.nx + col] / max;
                if v < 0.0 {
                    ' '
                } else {
                    shades[((v * 7.999) as usize).min(7)]
                }
            })
            .collect();
        println!("{line}");
    }
    println!("upflow shaded; |w| max {max:.4e}");
    Ok(())
}
