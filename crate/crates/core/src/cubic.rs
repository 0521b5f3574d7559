//! Roots of a monic real cubic β³ + b2β² + b1β + b0.
//!
//! Companion-matrix eigenvalues seed the search; the largest real root is
//! polished, deflated out, and the remaining quadratic is solved in closed
//! form. Every root then gets a final Newton step on the full cubic.

use nalgebra::Matrix3;
use num_complex::Complex64;

use crate::error::{Error, Result};

fn horner(c: [f64; 3], z: Complex64) -> (Complex64, Complex64) {
    let [b2, b1, b0] = c;
    let p = ((z + b2) * z + b1) * z + b0;
    let dp = (z * 3.0 + 2.0 * b2) * z + b1;
    (p, dp)
}

/// Rounding scale of the Horner evaluation at `z`.
pub fn residual_scale(c: [f64; 3], z: Complex64) -> f64 {
    let r = z.norm();
    r * r * r + c[0].abs() * r * r + c[1].abs() * r + c[2].abs()
}

fn polish_real(c: [f64; 3], mut x: f64) -> f64 {
    let eval = |x: f64| {
        let (p, dp) = horner(c, Complex64::new(x, 0.0));
        (p.re, dp.re)
    };
    let (mut p, _) = eval(x);
    for _ in 0..8 {
        let (_, dp) = eval(x);
        if dp == 0.0 {
            break;
        }
        let xn = x - p / dp;
        let (pn, _) = eval(xn);
        if pn.abs() < p.abs() {
            x = xn;
            p = pn;
        } else {
            break;
        }
    }
    x
}

fn polish_complex(c: [f64; 3], mut z: Complex64) -> Complex64 {
    let (mut p, _) = horner(c, z);
    for _ in 0..4 {
        let (_, dp) = horner(c, z);
        if dp.norm() == 0.0 {
            break;
        }
        let zn = z - p / dp;
        let (pn, _) = horner(c, zn);
        if pn.norm() < p.norm() {
            z = zn;
            p = pn;
        } else {
            break;
        }
    }
    z
}

/// The three roots, unordered. Complex roots come as an exact conjugate pair.
pub fn cubic_roots(b2: f64, b1: f64, b0: f64) -> Result<[Complex64; 3]> {
    let c = [b2, b1, b0];
    let companion = Matrix3::new(-b2, -b1, -b0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
    let seeds = companion.complex_eigenvalues();

    // A real cubic has a real root: among the seeds nearest the axis take the largest.
    let min_im = seeds.iter().map(|s| s.im.abs()).fold(f64::INFINITY, f64::min);
    let best = seeds
        .iter()
        .filter(|s| s.im.abs() <= min_im + 1e-9 * (1.0 + s.norm()))
        .max_by(|a, b| a.re.abs().total_cmp(&b.re.abs()))
        .copied()
        .unwrap_or(seeds[0]);
    let r = polish_real(c, best.re);

    // Deflate: β³ + b2β² + b1β + b0 = (β − r)(β² + c1β + c0).
    let c1 = b2 + r;
    let c0 = if r.abs() > 1.0 && b0 != 0.0 { -b0 / r } else { b1 + r * c1 };
    let disc = c1 * c1 - 4.0 * c0;
    let (z1, z2) = if disc >= 0.0 {
        let sq = disc.sqrt();
        let q = -0.5 * (c1 + c1.signum() * sq);
        let other = if q != 0.0 { c0 / q } else { 0.0 };
        let z1 = polish_real(c, q);
        let z2 = polish_real(c, other);
        (Complex64::new(z1, 0.0), Complex64::new(z2, 0.0))
    } else {
        let z = polish_complex(c, Complex64::new(-0.5 * c1, 0.5 * (-disc).sqrt()));
        let z = Complex64::new(z.re, z.im.abs());
        (z, z.conj())
    };
    let roots = [Complex64::new(r, 0.0), z1, z2];

    for z in roots {
        let (p, _) = horner(c, z);
        let tol = (1e-9 * b0.abs().max(1.0)).max(64.0 * f64::EPSILON * residual_scale(c, z));
        if !p.norm().is_finite() || p.norm() > tol {
            return Err(Error::SolverFailure { residual: p.norm() });
        }
    }
    Ok(roots)
}

/// Residual |P(z)| as evaluated by Horner's rule.
pub fn residual(b2: f64, b1: f64, b0: f64, z: Complex64) -> f64 {
    horner([b2, b1, b0], z).0.norm()
}
