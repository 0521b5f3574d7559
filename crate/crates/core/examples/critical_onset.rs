//! First critical Rayleigh number for a few boxes, with the steady and
//! oscillatory thresholds side by side.
//!
//!     cargo run --example critical_onset -- [p1 p2 Q L1 L2]

use mhdconv::stability::{find_q0, rayleigh_oscillatory, rayleigh_steady};
use mhdconv::{critical_rayleigh, BoxGeometry, FluidParams, OnsetKind};

fn main() -> mhdconv::Result<()> {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let cases: Vec<[f64; 5]> = if args.len() == 5 {
        vec![[args[0], args[1], args[2], args[3], args[4]]]
    } else {
        vec![
            [1.0, 1.0, 0.0, 2f64.sqrt(), 2f64.sqrt()],
            [1.0, 0.4, 10.0, 1.5, 1.5 * 3f64.sqrt()],
            [1.0, 0.5, 1000.0, 3.0, 0.6],
        ]
    };
    for [p1, p2, q, l1, l2] in cases {
        let p = FluidParams::new(p1, p2, q)?;
        let g = BoxGeometry::new(l1, l2)?;
        let c = critical_rayleigh(&p, &g);
        println!("p1={p1} p2={p2} Q={q} box {l1:.4}x{l2:.4}");
        let set: Vec<String> = c.critical_set.iter().map(|m| m.to_string()).collect();
        println!("  R = {:.6}  ({:?})  critical {}", c.r_first, c.kind, set.join(" "));
        println!("  alpha = {:.6}", c.alpha);
        if c.kind == OnsetKind::Complex {
            println!("  rho = {:.6}", c.rho);
        }
        let j = c.critical_set[0];
        println!(
            "  thresholds of {j}: steady {:.6}, oscillatory {:.6}",
            rayleigh_steady(j, &p, &g),
            rayleigh_oscillatory(j, &p, &g)
        );
        if let Some(gap) = c.near_tie_gap() {
            println!("  next mode is {:.3}% higher", 100.0 * gap);
        }
        if p2 < 1.0 {
            println!("  steady/oscillatory switch at Q0 = {:.4}", find_q0(p1, p2, &g)?);
        }
    }
    Ok(())
}
