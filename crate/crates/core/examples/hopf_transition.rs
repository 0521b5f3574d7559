//! Oscillatory onset for p2 < 1 and large Q: the Hopf coefficient, an
//! independent second-order reduction for its sign, and the large-Q trend.

use mhdconv::transition::hopf::{asymptotic_check, center_manifold_coefficient, hopf_coefficient};
use mhdconv::{BoxGeometry, FluidParams};

fn main() -> mhdconv::Result<()> {
    let g = BoxGeometry::new(2.0, 0.1)?;
    println!("{:>10} {:>8} {:>12} {:>11} {:>12} {:>11}  type", "Q", "Jc", "R_c", "rho", "b", "reduced");
    for q in [1e3, 1e4, 1e5, 1e6] {
        let p = FluidParams::new(1.0, 0.5, q)?;
        let h = hopf_coefficient(&p, &g)?;
        let red = center_manifold_coefficient(&p, &g, h.jc, h.r_c, h.rho)?;
        println!(
            "{q:>10.0} {:>8} {:>12.5e} {:>11.5e} {:>12.4e} {:>11.4e}  {}",
            h.jc.to_string(),
            h.r_c,
            h.rho,
            h.b,
            red,
            h.transition_type
        );
    }
    let p = FluidParams::new(1.0, 0.5, 1.0)?;
    let qs: Vec<f64> = (3..=7).map(|k| 10f64.powi(k)).collect();
    let a = asymptotic_check(&p, &g, &qs)?;
    println!("\nrho^2/Q at Q=1e7: {:.6} (limit {:.6})", a.rho_sq_over_q, a.limit);
    println!("gamma^2 grows like Q^{:.4}", a.exponent);
    Ok(())
}
