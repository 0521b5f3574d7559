//! Checks a closed-form center-manifold coefficient against the same
//! quantity assembled from Gauss–Legendre quadrature of the trilinear form.

use mhdconv::fields::{critical_eigenfield, inner_product, laplacian_eigenfield, trilinear_sym, Branch};
use mhdconv::transition::real::cm_coefficient_b_full;
use mhdconv::{critical_rayleigh, wave_numbers, BoxGeometry, FluidParams, ModeIndex};

fn main() -> mhdconv::Result<()> {
    let p = FluidParams::new(0.7, 0.3, 25.0)?;
    let g = BoxGeometry::new(0.8, 3.0)?;
    let crit = critical_rayleigh(&p, &g);
    let j = crit.critical_set[0];
    assert!(j.is_roll(), "this box has a roll at onset");
    let r = crit.r_r;
    let (psi, adj) = critical_eigenfield(j, &p, &g)?;
    let pairing = inner_product(&psi, &adj)?;

    // Slaved modes: temperature e_{0,0,2} and magnetic e_{2j,0,0}.
    let mut total = 0.0;
    let pi = std::f64::consts::PI;
    for (s, branch, mu) in [
        ((0, 0, 2), Branch::Temperature, 4.0 * pi * pi),
        ((2 * j.j1, 2 * j.j2, 0), Branch::Magnetic, p.p2 * wave_numbers(ModeIndex { j1: 2 * j.j1, j2: 2 * j.j2, j3: 0 }, &g).alpha_sq),
    ] {
        let e = laplacian_eigenfield(s, &g, branch)?;
        let norm = inner_product(&e, &e)?;
        // response solves μΦ = G(ψ,ψ)·e/|e|²
        let phi = trilinear_sym(&psi, &psi, &e, &p)? / 2.0 / (mu * norm);
        total += phi * trilinear_sym(&psi, &e, &adj, &p)?;
    }
    let quad = total / pairing;
    let closed = cm_coefficient_b_full(&p, &g, j, r)?;
    println!("critical {j}, R_r = {r:.6}");
    println!("closed form  {closed:+.12e}");
    println!("quadrature   {quad:+.12e}");
    println!("relative gap {:.2e}", ((closed - quad) / closed).abs());
    Ok(())
}
