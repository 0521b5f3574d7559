//! Transition type at steady onset, for a single roll and for the hexagonal
//! box L1/L2 = 1/√3 on both sides of p2 = √σ_roll.

use mhdconv::transition::real::{classify, detect_hexagonal_geometry, p_star, q_star, sigma_roll};
use mhdconv::{critical_rayleigh, BoxGeometry, FluidParams};

fn show(p: &FluidParams, g: &BoxGeometry) -> mhdconv::Result<()> {
    let r = classify(p, g)?;
    let set: Vec<String> = r.critical.iter().map(|m| m.to_string()).collect();
    print!("  p2={:<7.4} {:?} {}  b={:+.4e}", p.p2, r.kind, set.join(" "), r.b);
    if let Some(a) = r.a {
        print!("  a={a:+.4e}");
    }
    if let Some(region) = r.region {
        print!("  region {region}");
    }
    println!("  -> {}", r.transition_type);
    for s in &r.inventory {
        println!("      {:<7} {:?} {}", s.name, s.side, if s.stable { "stable" } else { "unstable" });
    }
    Ok(())
}

fn main() -> mhdconv::Result<()> {
    let roll_box = BoxGeometry::new(4.2, 0.4)?;
    let q = 10.0;
    println!("roll box 4.2 x 0.4, Q = {q}");
    let p = FluidParams::new(1.0, 1.0, q)?;
    let roll = critical_rayleigh(&p, &roll_box).critical_set[0];
    let s = sigma_roll(&p, &roll_box, roll).sqrt();
    println!("  sqrt(sigma_roll) = {s:.4}");
    for p2 in [0.5 * s, 2.0 * s] {
        show(&FluidParams::new(1.0, p2, q)?, &roll_box)?;
    }
    println!("  Q* = {:.4}, p* bound = {:.4}", q_star(&roll_box), p_star(&roll_box));

    let hex = BoxGeometry::new(1.5, 1.5 * 3f64.sqrt())?;
    println!("\nhexagonal box 1.5 x 1.5*sqrt(3), detected {:?}", detect_hexagonal_geometry(&hex));
    let p = FluidParams::new(1.0, 1.0, 10.0)?;
    let crit = critical_rayleigh(&p, &hex);
    let roll = crit.critical_set.iter().copied().find(|m| m.is_roll()).expect("pair contains a roll");
    println!("  sqrt(sigma_roll) = {:.4}", sigma_roll(&p, &hex, roll).sqrt());
    for p2 in [0.4, 0.6] {
        show(&FluidParams::new(1.0, p2, 10.0)?, &hex)?;
    }
    Ok(())
}
