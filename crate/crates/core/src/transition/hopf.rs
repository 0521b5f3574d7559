//! Oscillatory onset through a roll-type complex pair.
//!
//! The transition number `b` is evaluated from its closed form in terms of
//! the frequency ρ, the critical wave numbers and R_c. The g/c/d tables of
//! inner products that feed the center-manifold function are exposed as well
//! so they can be checked against quadrature.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::Serialize;

use super::TransitionType;
use crate::error::{Error, Result};
use crate::fields::{hopf_eigenfields, inner_product, laplacian_eigenfield, trilinear_quadrature, Branch};
use crate::params::{horizontal_wave_sq, wave_numbers, BoxGeometry, FluidParams, ModeIndex};
use crate::stability::{critical_rayleigh, frequency_squared, growth_rate_derivative, OnsetKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfIngredients {
    pub omega_beta: Complex64,
    pub delta_beta: Complex64,
    pub k_beta: Complex64,
    pub l_beta: Complex64,
    pub e1: f64,
    pub e2: f64,
    pub psi11: f64,
    pub psi21: f64,
    /// A1..A6
    pub a: [f64; 6],
    /// D1..D3
    pub d: [f64; 3],
}

/// ω(β) = (β/p2 + γ²)(β/p1 + γ²) + Qπ²
pub fn omega(p: &FluidParams, gamma_sq: f64, beta: Complex64) -> Complex64 {
    (beta / p.p2 + gamma_sq) * (beta / p.p1 + gamma_sq) + p.q * PI * PI
}

/// K evaluated at a given δ.
pub fn k_of(p: &FluidParams, geom: &BoxGeometry, alpha_sq: f64, r: f64, delta: Complex64) -> Complex64 {
    -delta * (geom.area() / 8.0 * p.q * r * alpha_sq * PI * PI / p.p2)
}

fn check_roll_complex(p: &FluidParams, jc: ModeIndex) -> Result<()> {
    if p.p2 >= 1.0 {
        return Err(Error::InvalidRegime(format!("p2 = {} >= 1: onset is steady", p.p2)));
    }
    if !jc.is_roll() || jc.j3 != 1 {
        return Err(Error::UnsupportedCriticalSet(format!(
            "{jc}: only roll-type complex pairs are covered"
        )));
    }
    Ok(())
}

pub fn hopf_ingredients(p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex, r_c: f64, rho: f64) -> Result<HopfIngredients> {
    check_roll_complex(p, jc)?;
    if !(rho > 0.0) {
        return Err(Error::InvalidRegime(format!("frequency {rho} is not positive (Q <= Q0)")));
    }
    let w = wave_numbers(jc, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    let r = rho;
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let beta = Complex64::new(0.0, rho);

    let omega_beta = omega(p, g2, beta);
    let delta_beta = beta + p2 * g2;
    let k_beta = k_of(p, geom, a2, r_c, delta_beta);
    let l_beta = delta_beta * (geom.area() / 2.0 * g2 * a2 * r_c * PI / p2);

    let e1 = (p2 + p1) * (g2 * g2 / p1 + q * pi2 / (p1 + 1.0));
    let e2 = (p2 + p1) / (p2 * p1) * r * g2;

    let a1 = -((16.0 * pi4 + 2.0 * r * r) * g2 * e1 + 2.0 / p2 * r * e2 * r * r
        - 4.0 * g2 * e2 * r * pi2
        - e1 / p2 * r);
    let a2c = -(16.0 * pi4 * (e2 * g2 + r * e1 / p2) + (g2 * e1 - r * e2 / p2) * (4.0 * r * pi2 + 1.0));
    let a3 = -(r * e2 / p2 * (16.0 * pi4 + 2.0 * r * r) + 2.0 * r * r * g2 * e1 + 4.0 * pi2 / p2 * r * r * e1 + g2 * e2);
    let m = 4.0 * r * p2 * a2 + 1.0;
    let a4 = 2.0 * g2 * (16.0 * p2 * p2 * a2 * a2 + 2.0 * r * r) - m * r;
    let a5 = 2.0 * g2 * m + 32.0 * p2 * p2 * r;
    let a6 = 4.0 * r * r * g2 + m * r;

    let psi11 = -(r * r * a2 * r_c / (p2 * p1) + p2 * e2 * e2 * g2);
    let psi21 = (r * a2 * r_c / p1 + p2 * e1 * e2) * g2;

    let d1 = 2.0 * p2 * (3.0 * g2 * a1 + r * a2c + g2 * a3) * (e1 * psi11 + e2 * psi21);
    let d2 = 2.0 * p2 * (r * a1 + g2 * a2c + 3.0 * r * a3) * (e1 * psi21 - e2 * psi11);
    let d3 = a4 * (3.0 * psi11 + 2.0 * psi21 * r / (p2 * g2)) + a5 * psi21 + a6 * (psi11 + 2.0 * psi21 * r / (p1 * g2));

    Ok(HopfIngredients {
        omega_beta,
        delta_beta,
        k_beta,
        l_beta,
        e1,
        e2,
        psi11,
        psi21,
        a: [a1, a2c, a3, a4, a5, a6],
        d: [d1, d2, d3],
    })
}

/// The two terms of b; their sum is the transition number.
pub fn hopf_b_terms(ing: &HopfIngredients, p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex, r_c: f64, rho: f64) -> (f64, f64) {
    let w = wave_numbers(jc, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let pi2 = PI * PI;
    let [d1, d2, d3] = ing.d;
    let first = (d1 + d2) / (pi2 * (16.0 * pi2 * pi2 + 4.0 * rho * rho));
    let second = p.q * PI * (-3.0 * a2 + pi2) * PI * r_c
        / (2.0 * p.p2 * g2 * (16.0 * p.p2 * p.p2 * a2 * a2 + 4.0 * rho * rho))
        * d3;
    (first, second)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HopfReport {
    pub jc: ModeIndex,
    pub r_c: f64,
    pub rho: f64,
    pub b: f64,
    /// d(Re β)/dR at R_c.
    pub lambda_prime: f64,
    pub transition_type: TransitionType,
    /// Orbit radius is √(λ/|b|) = this · √λ.
    pub radius_coefficient: f64,
}

/// Hopf transition number and type at the first (oscillatory) critical point.
pub fn hopf_coefficient(p: &FluidParams, geom: &BoxGeometry) -> Result<HopfReport> {
    if p.p2 >= 1.0 {
        return Err(Error::InvalidRegime(format!("p2 = {} >= 1: onset is steady", p.p2)));
    }
    let crit = critical_rayleigh(p, geom);
    if crit.kind != OnsetKind::Complex {
        return Err(Error::InvalidRegime("onset is steady (Q <= Q0)".into()));
    }
    if crit.critical_set.len() != 1 {
        return Err(Error::UnsupportedCriticalSet(format!(
            "{} critical pairs",
            crit.critical_set.len()
        )));
    }
    let jc = crit.critical_set[0];
    hopf_at(p, geom, jc, crit.r_c)
}

/// As [`hopf_coefficient`] for a given roll index and its oscillatory threshold.
pub fn hopf_at(p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex, r_c: f64) -> Result<HopfReport> {
    check_roll_complex(p, jc)?;
    let rho2 = frequency_squared(jc, p, geom);
    if rho2 <= 0.0 {
        return Err(Error::InvalidRegime("frequency vanishes".into()));
    }
    let rho = rho2.sqrt();
    let ing = hopf_ingredients(p, geom, jc, r_c, rho)?;
    let (t1, t2) = hopf_b_terms(&ing, p, geom, jc, r_c, rho);
    let b = t1 + t2;
    if b.abs() <= 1e-12 * t1.abs().max(t2.abs()) {
        return Err(Error::ZeroCoefficient("b"));
    }
    let lambda_prime = growth_rate_derivative(jc, p, geom, r_c)?;
    Ok(HopfReport {
        jc,
        r_c,
        rho,
        b,
        lambda_prime,
        transition_type: if b < 0.0 { TransitionType::TypeI } else { TransitionType::TypeII },
        radius_coefficient: (1.0 / b.abs()).sqrt(),
    })
}

/// Inner-product tables at β = iρ for the eigenvector pair ψ¹ = Re ψ, ψ² = Im ψ
/// with amplitudes W = (β/p2+γ²)α²R, Θ = ω(β)γ², H3 = α²πR and adjoint
/// W* = (β̄+p2γ²)α²/p1, Θ* = p2ω(β̄)γ², H3* = −πQα².
///
/// Indices are `[i][j]`; `g1`, `g2` pair G(ψ^i, ψ^j) with e_{0,0,2} and
/// e_{2j,0,0}; `c1`, `c2` pair G(ψ^i, e) with ψ*^j; `d` pairs G(e_{2j,0,0}, ψ^i)
/// with ψ*^j.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfTables {
    pub g1: [[f64; 2]; 2],
    pub g2: [[f64; 2]; 2],
    pub c1: [[f64; 2]; 2],
    pub c2: [[f64; 2]; 2],
    pub d: [[f64; 2]; 2],
}

/// Closed forms of the tables. The temperature pairings carry half of L_β,
/// and the magnetic c-table is off-diagonal; see the quadrature tests.
pub fn hopf_tables(p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex, r_c: f64, rho: f64) -> Result<HopfTables> {
    let ing = hopf_ingredients(p, geom, jc, r_c, rho)?;
    let w = wave_numbers(jc, geom);
    let a2 = w.alpha_sq;
    let pi2 = PI * PI;
    let half_l = ing.l_beta * 0.5;
    let om = ing.omega_beta;
    let om_bar = omega(p, w.gamma_sq, Complex64::new(0.0, -rho));
    let kb = ing.k_beta;
    let kb_bar = k_of(p, geom, a2, r_c, ing.delta_beta.conj());
    let q = p.q;
    Ok(HopfTables {
        g1: [
            [-half_l.re * om.re, -half_l.re * om.im],
            [-half_l.im * om.re, -half_l.im * om.im],
        ],
        g2: [
            [-4.0 / q * a2 * r_c * kb.re, -2.0 / q * a2 * r_c * kb.im],
            [-2.0 / q * a2 * r_c * kb.im, 0.0],
        ],
        c1: [
            [p.p2 * half_l.re * om_bar.re, p.p2 * half_l.re * om_bar.im],
            [p.p2 * half_l.im * om_bar.re, p.p2 * half_l.im * om_bar.im],
        ],
        c2: [[0.0, 2.0 * a2 * kb_bar.im], [2.0 * a2 * kb_bar.im, 0.0]],
        d: [
            [2.0 * (a2 - pi2) * kb.re, (a2 - pi2) * kb_bar.im],
            [(a2 - pi2) * kb.im, 0.0],
        ],
    })
}

/// Averaged cubic radial coefficient 3(a30¹ + a03²) + a12¹ + a21² of the
/// reduced planar system, built directly from the eigenfields: the quadratic
/// center manifold on e_{0,0,2} and e_{2j,2k,0} solves the homological
/// equation, and the cubic terms are projected on the adjoint pair. Every
/// pairing is a quadrature. Its sign decides the transition independently of
/// the closed form for b.
pub fn center_manifold_coefficient(p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex, r_c: f64, rho: f64) -> Result<f64> {
    check_roll_complex(p, jc)?;
    let (psi, adj) = hopf_eigenfields(p, geom, jc, r_c, rho);
    let c = inner_product(&psi[1], &adj[0])? / inner_product(&psi[1], &adj[1])?;
    let phi_star = [adj[0].plus(&adj[1].scaled(-c)), adj[0].scaled(c).plus(&adj[1])];
    let pairing = inner_product(&psi[0], &phi_star[0])?;
    if pairing == 0.0 {
        return Err(Error::DegenerateDenominator("(psi1, Phi*1) = 0".into()));
    }
    let secondaries = [
        (laplacian_eigenfield((0, 0, 2), geom, Branch::Temperature)?, 4.0 * PI * PI),
        (
            laplacian_eigenfield((2 * jc.j1, 2 * jc.j2, 0), geom, Branch::Magnetic)?,
            p.p2 * horizontal_wave_sq(2 * jc.j1, 2 * jc.j2, geom),
        ),
    ];
    let mut h = Vec::with_capacity(2);
    for (e, mu) in &secondaries {
        let norm = inner_product(e, e)?;
        let g = |i: usize, j: usize| -> Result<f64> { Ok(trilinear_quadrature(&psi[i], &psi[j], e, p)? / norm) };
        let q = Vector3::new(g(0, 0)?, g(0, 1)? + g(1, 0)?, g(1, 1)?);
        // h(x, y) = h0 x² + h1 xy + h2 y² with ∇h·(ρy, −ρx) + μh = q
        let m = Matrix3::new(
            *mu, -rho, 0.0,
            2.0 * rho, *mu, -2.0 * rho,
            0.0, rho, *mu,
        );
        h.push(m.lu().solve(&q).ok_or_else(|| Error::DegenerateDenominator("homological system".into()))?);
    }
    let cubic = |k: usize, x: f64, y: f64| -> Result<f64> {
        let z = psi[0].scaled(x).plus(&psi[1].scaled(y));
        let mut total = 0.0;
        for ((e, _), hc) in secondaries.iter().zip(&h) {
            let phi = e.scaled(hc[0] * x * x + hc[1] * x * y + hc[2] * y * y);
            total += trilinear_quadrature(&z, &phi, &phi_star[k], p)? + trilinear_quadrature(&phi, &z, &phi_star[k], p)?;
        }
        Ok(total / pairing)
    };
    let a30_1 = cubic(0, 1.0, 0.0)?;
    let a12_1 = 0.5 * (cubic(0, 1.0, 1.0)? + cubic(0, 1.0, -1.0)?) - a30_1;
    let a03_2 = cubic(1, 0.0, 1.0)?;
    let a21_2 = 0.5 * (cubic(1, 1.0, 1.0)? - cubic(1, 1.0, -1.0)?) - a03_2;
    Ok(3.0 * (a30_1 + a03_2) + a12_1 + a21_2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticReport {
    pub q: Vec<f64>,
    pub gamma_sq: Vec<f64>,
    pub rho_sq: Vec<f64>,
    /// Least-squares slope of ln γ² against ln Q.
    pub exponent: f64,
    /// ρ²/Q at the largest Q.
    pub rho_sq_over_q: f64,
    /// p1p2(1−p2)π²/(p1+1).
    pub limit: f64,
}

/// Large-Q behaviour of the oscillatory critical mode.
pub fn asymptotic_check(p: &FluidParams, geom: &BoxGeometry, q_seq: &[f64]) -> Result<AsymptoticReport> {
    if p.p2 >= 1.0 {
        return Err(Error::InvalidRegime("p2 >= 1".into()));
    }
    let mut gamma_sq = Vec::new();
    let mut rho_sq = Vec::new();
    for &q in q_seq {
        let pq = p.with_q(q)?;
        let c = critical_rayleigh(&pq, geom);
        let jc = c.critical_set[0];
        gamma_sq.push(wave_numbers(jc, geom).gamma_sq);
        rho_sq.push(frequency_squared(jc, &pq, geom));
    }
    let xs: Vec<f64> = q_seq.iter().map(|q| q.ln()).collect();
    let ys: Vec<f64> = gamma_sq.iter().map(|g| g.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let last = q_seq.len() - 1;
    Ok(AsymptoticReport {
        q: q_seq.to_vec(),
        exponent: sxy / sxx,
        rho_sq_over_q: rho_sq[last] / q_seq[last],
        limit: p.p1 * p.p2 * (1.0 - p.p2) * PI * PI / (p.p1 + 1.0),
        gamma_sq,
        rho_sq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_frequency_limits() {
        let p = FluidParams::new(1.0, 0.5, 100.0).unwrap();
        let g2 = 3.0 * PI * PI / 2.0;
        let om = omega(&p, g2, Complex64::new(0.0, 0.0));
        assert_eq!(om.im, 0.0);
        assert!((om.re - (g2 * g2 + 100.0 * PI * PI)).abs() < 1e-9);
    }

    #[test]
    fn ingredients_reject_steady_regime() {
        let g = BoxGeometry::new(3.0, 0.6).unwrap();
        let p = FluidParams::new(1.0, 1.2, 1000.0).unwrap();
        let j = ModeIndex::new(4, 0, 1).unwrap();
        assert!(matches!(hopf_ingredients(&p, &g, j, 1.0, 1.0), Err(Error::InvalidRegime(_))));
        let p = FluidParams::new(1.0, 0.5, 1000.0).unwrap();
        assert!(matches!(hopf_ingredients(&p, &g, j, 1.0, 0.0), Err(Error::InvalidRegime(_))));
    }

    #[test]
    fn e2_scales_with_rho() {
        let g = BoxGeometry::new(3.0, 0.6).unwrap();
        let p = FluidParams::new(1.0, 0.5, 1000.0).unwrap();
        let j = ModeIndex::new(4, 0, 1).unwrap();
        let a = hopf_ingredients(&p, &g, j, 8000.0, 1.0).unwrap();
        let b = hopf_ingredients(&p, &g, j, 8000.0, 2.0).unwrap();
        assert!((b.e2 / a.e2 - 2.0).abs() < 1e-14);
        assert_eq!(a.delta_beta.re, 0.5 * wave_numbers(j, &g).gamma_sq);
    }

    #[test]
    fn large_field_is_supercritical() {
        let g = BoxGeometry::new(3.0, 0.6).unwrap();
        let p = FluidParams::new(1.0, 0.5, 1000.0).unwrap();
        let r = hopf_coefficient(&p, &g).unwrap();
        assert_eq!(r.jc, ModeIndex::new(4, 0, 1).unwrap());
        assert!((r.rho - 32.3388).abs() < 1e-3);
        assert!(r.b < 0.0);
        assert_eq!(r.transition_type, TransitionType::TypeI);
        assert!(r.lambda_prime > 0.0);
    }
}
