//! Steady onset: the coefficients a and b, center-manifold coefficients for
//! single rolls and rectangles, and the region map of the hexagonal pair.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::Serialize;

use super::TransitionType;
use crate::dynamics::{steady_states, StateFamily};
use crate::error::{Error, Result};
use crate::params::{horizontal_wave_sq, wave_numbers, BoxGeometry, FluidParams, ModeIndex};
use crate::stability::{self, critical_rayleigh, growth_rate_derivative, OnsetKind};

const ZERO_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KappaParts {
    pub kappa: f64,
    pub eta: f64,
    pub nu: f64,
    pub r_s: f64,
}

/// Threshold of the secondary mode (s1, s2, 2): (γ_s²/α_s²)(γ_s⁴ + 4π²Q).
pub fn secondary_rayleigh(s1: u32, s2: u32, p: &FluidParams, geom: &BoxGeometry) -> f64 {
    let a_s = horizontal_wave_sq(s1, s2, geom);
    let g_s = a_s + 4.0 * PI * PI;
    g_s / a_s * (g_s * g_s + 4.0 * PI * PI * p.q)
}

/// κ for the secondary mode (s1, s2, 2) excited by the critical mode `j`.
pub fn kappa_parts(s1: u32, s2: u32, p: &FluidParams, geom: &BoxGeometry, j: ModeIndex, r_r: f64) -> Result<KappaParts> {
    if s1 == 0 && s2 == 0 {
        return Err(Error::InvalidParameter("kappa needs (s1, s2) != (0, 0)".into()));
    }
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    let a_s = horizontal_wave_sq(s1, s2, geom);
    let g_s = a_s + 4.0 * PI * PI;
    let r_s = secondary_rayleigh(s1, s2, p, geom);
    if (r_s - r_r).abs() <= ZERO_TOL * r_r.abs() {
        return Err(Error::DegenerateDenominator(format!(
            "secondary mode ({s1},{s2},2) is resonant with the critical mode"
        )));
    }
    let eta = g_s / a2 * (PI * PI * q / p2 + g2 * g2 / p1);
    let nu = 2.0 * p2 * PI * PI * (a2 - a_s / 4.0).powi(2) / (p1 * (r_s - r_r) * a2);
    let kappa = nu
        * ((p1 * PI * PI * q * (1.0 + 4.0 * g2 / g_s) - p2 * g2 * g2) * (r_r + eta)
            - p1 * p2 * r_r * a2 / g_s * (r_s + eta));
    Ok(KappaParts { kappa, eta, nu, r_s })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ABCoefficients {
    /// Only defined when both horizontal indices of `j` are nonzero.
    pub a: Option<f64>,
    pub b: f64,
    pub j: ModeIndex,
    pub r_r: f64,
}

fn b_terms(p: &FluidParams, a2: f64, r_r: f64) -> (f64, f64) {
    (2.0 * PI.powi(4) * p.q * (PI * PI - a2), -p.p2 * p.p2 * a2 * a2 * r_r)
}

pub fn coefficients_ab(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex, r_r: f64) -> Result<ABCoefficients> {
    let a2 = wave_numbers(j, geom).alpha_sq;
    let (t1, t2) = b_terms(p, a2, r_r);
    let b = t1 + t2;
    let a = if j.j1 > 0 && j.j2 > 0 {
        let k1 = kappa_parts(2 * j.j1, 0, p, geom, j, r_r)?.kappa;
        let k2 = kappa_parts(0, 2 * j.j2, p, geom, j, r_r)?.kappa;
        Some(PI.powi(4) * p.q * (PI * PI - 5.0 * a2) + t2 + k1 + k2)
    } else {
        None
    };
    Ok(ABCoefficients { a, b, j, r_r })
}

/// The value of p2² at which b changes sign for a roll of wave number α_J.
pub fn sigma_roll(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex) -> f64 {
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    2.0 * PI.powi(4) * (PI * PI - a2) * p.q / (a2 * g2 * (PI * PI * p.q + g2 * g2))
}

/// ⟨ψ_J, ψ_J*⟩ for the critical mode with amplitudes (γ², 1, π) and its adjoint.
pub fn critical_pairing(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex) -> f64 {
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let nonzero = [j.j1, j.j2].iter().filter(|&&x| x > 0).count() + 1;
    let v = geom.area() / f64::from(1u32 << nonzero);
    v * g2 / a2 * (p.p2 * g2 * g2 * (1.0 + p.p1) + p.p1 * (p.p2 - 1.0) * PI * PI * p.q)
}

/// Cubic center-manifold coefficient of a single roll, assembled from the
/// projections onto e_{0,0,2} and e_{2j,0,0} (the e_{2j,0,2} projection vanishes).
/// Equals p1 · L1L2γ⁴ b / (32 p2 α⁴ ⟨ψ,ψ*⟩).
pub fn cm_coefficient_b_full(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex, r_r: f64) -> Result<f64> {
    if !j.is_roll() || j.j3 != 1 {
        return Err(Error::InvalidParameter(format!("{j} is not a roll mode")));
    }
    let pairing = critical_pairing(p, geom, j);
    if pairing <= 0.0 {
        return Err(Error::NonpositivePairing(pairing));
    }
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    let area = geom.area();
    let phi_t = -g2 / (8.0 * PI);
    let gs_t = area / 4.0 * p1 * p2 * PI * g2 * r_r;
    let phi_m = PI * PI * g2 / (4.0 * p2 * a2);
    let gs_m = area / (4.0 * a2) * p1 * PI * PI * g2 * (PI * PI - a2) * q;
    Ok((phi_t * gs_t + phi_m * gs_m) / pairing)
}

/// G(ψ_J, ψ_J, e^m_S) for S = (2j,0,2) or (0,2k,2) and the rectangle J = (j,k,1).
fn rect_forcing(area: f64, p: &FluidParams, a2: f64, g2: f64, a_s: f64) -> Vector3<f64> {
    let s = -area * PI * g2 * (4.0 * a2 - a_s) / (64.0 * a2);
    Vector3::new(s * (PI * PI * p.q * p.p1 / p.p2 + g2 * g2) / a2, s, 0.0)
}

/// G_s(ψ_J, e^m_S, ψ_J*) for the same S.
fn rect_response(area: f64, p: &FluidParams, a2: f64, g2: f64, a_s: f64, r: f64) -> Vector3<f64> {
    let s = area * PI * g2 * (4.0 * a2 - a_s) / (64.0 * a2 * a2);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    Vector3::new(s * (p2 * g2 * g2 - p1 * PI * PI * q), s * p1 * p2 * r * a2, s * (-2.0 * p1 * PI * q * g2))
}

/// Gram-weighted matrix ⟨e^m_S, L e^n_S⟩ of the linear operator on the
/// three-branch basis of S = (s1, s2, s3) at Rayleigh number r.
pub fn three_branch_operator(p: &FluidParams, geom: &BoxGeometry, s: ModeIndex, r: f64) -> Matrix3<f64> {
    let w = wave_numbers(s, geom);
    let (a_s, g_s) = (w.alpha_sq, w.gamma_sq);
    let c = s.j3 as f64 * PI;
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    let nonzero = [s.j1, s.j2, s.j3].iter().filter(|&&x| x > 0).count();
    let v = geom.area() / f64::from(1u32 << nonzero);
    let norms = [v * g_s / a_s, v, v * g_s / a_s];
    // columns are L e^n expressed in the e^m basis
    let m = Matrix3::new(
        -p1 * g_s, p1 * r * a_s / g_s, -p1 * q * c,
        1.0, -g_s, 0.0,
        p2 * c, 0.0, -p2 * g_s,
    );
    Matrix3::from_fn(|row, col| m[(row, col)] * norms[row])
}

/// Cubic center-manifold coefficient of a single rectangle J = (j,k,1),
/// summed over the six secondary modes it excites.
/// Equals p1 · L1L2γ⁴ a / (128 p2 α⁴ ⟨ψ,ψ*⟩).
pub fn cm_coefficient_a_full(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex, r_r: f64) -> Result<f64> {
    if j.j1 == 0 || j.j2 == 0 || j.j3 != 1 {
        return Err(Error::InvalidParameter(format!("{j} is not a rectangle mode")));
    }
    let pairing = critical_pairing(p, geom, j);
    if pairing <= 0.0 {
        return Err(Error::NonpositivePairing(pairing));
    }
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    let area = geom.area();
    let pi2 = PI * PI;

    let mut total = 0.0;
    // temperature-only e_{0,0,2}
    total += (-g2 / (16.0 * PI)) * (area / 8.0 * p1 * p2 * PI * r_r * g2);
    // magnetic-only e_{2j,2k,0}
    total += (pi2 * g2 / (8.0 * p2 * a2)) * (area / (16.0 * a2) * p1 * pi2 * q * g2 * (pi2 - a2));
    // magnetic-only e_{2j,0,0}, e_{0,2k,0}
    for (s1, s2) in [(2 * j.j1, 0), (0, 2 * j.j2)] {
        let a_s = horizontal_wave_sq(s1, s2, geom);
        let gs = area / (8.0 * a2 * a2) * p1 * pi2 * q * g2 * ((-a2 + a_s / 2.0) * pi2 - a2 * a2);
        total += (pi2 * g2 / (8.0 * p2 * a2)) * gs;
    }
    // three-branch e_{2j,0,2}, e_{0,2k,2}
    for (s1, s2) in [(2 * j.j1, 0), (0, 2 * j.j2)] {
        let s = ModeIndex { j1: s1, j2: s2, j3: 2 };
        let r_s = secondary_rayleigh(s1, s2, p, geom);
        if (r_s - r_r).abs() <= ZERO_TOL * r_r.abs() {
            return Err(Error::DegenerateDenominator(format!("secondary mode {s} is resonant")));
        }
        let a_s = horizontal_wave_sq(s1, s2, geom);
        let op = three_branch_operator(p, geom, s, r_r);
        let forcing = rect_forcing(area, p, a2, g2, a_s);
        let phi = op
            .lu()
            .solve(&(-forcing))
            .ok_or_else(|| Error::DegenerateDenominator(format!("singular projection for {s}")))?;
        total += phi.dot(&rect_response(area, p, a2, g2, a_s, r_r));
    }
    Ok(total / pairing)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionLabel {
    I1,
    I2,
    II1,
    II2,
    II3,
    II4,
    II5,
    III1,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 8] = [
        RegionLabel::I1,
        RegionLabel::I2,
        RegionLabel::II1,
        RegionLabel::II2,
        RegionLabel::II3,
        RegionLabel::II4,
        RegionLabel::II5,
        RegionLabel::III1,
    ];

    pub fn transition_type(self) -> TransitionType {
        match self {
            RegionLabel::I1 | RegionLabel::I2 => TransitionType::TypeI,
            RegionLabel::III1 => TransitionType::TypeIII,
            _ => TransitionType::TypeII,
        }
    }

    /// A representative (a, b) inside the octant.
    pub fn sample(self) -> (f64, f64) {
        match self {
            RegionLabel::I1 => (-1.0, -2.0),
            RegionLabel::I2 => (-2.0, -1.0),
            RegionLabel::II1 => (-1.0, -5.0),
            RegionLabel::II2 => (1.0, 2.0),
            RegionLabel::II3 => (2.0, 1.0),
            RegionLabel::II4 => (1.0, -1.0),
            RegionLabel::II5 => (1.0, 5.0),
            RegionLabel::III1 => (-1.0, 1.0),
        }
    }
}

impl std::fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Octant of the (a, b) plane cut by a = 0, b = 0, b = a and b = 4a.
pub fn region_of(a: f64, b: f64) -> Result<RegionLabel> {
    let scale = a.abs().max(b.abs());
    for (name, v) in [("a", a), ("b", b), ("a-b", a - b), ("4a-b", 4.0 * a - b)] {
        if v.abs() <= ZERO_TOL * scale || !v.is_finite() {
            return Err(Error::ZeroCoefficient(name));
        }
    }
    use RegionLabel::*;
    Ok(match (a < 0.0, b < 0.0) {
        (true, false) => III1,
        (false, true) => II4,
        (true, true) if a < b => I2,
        (true, true) if 4.0 * a - b < 0.0 => I1,
        (true, true) => II1,
        (false, false) if 4.0 * a - b < 0.0 => II5,
        (false, false) if a < b => II2,
        (false, false) => II3,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// R > R_r
    Above,
    /// R < R_r
    Below,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BifurcatedState {
    pub name: String,
    pub side: Side,
    pub stable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TransitionKind {
    SimpleRoll,
    SimpleRectangle,
    HexagonalPair,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionReport {
    pub kind: TransitionKind,
    pub critical: Vec<ModeIndex>,
    pub r_r: f64,
    pub a: Option<f64>,
    pub b: f64,
    pub region: Option<RegionLabel>,
    pub transition_type: TransitionType,
    pub inventory: Vec<BifurcatedState>,
    /// Simple case: the full reduced coefficient and ψ± = ±c(R−R_r)^{1/2}ψ_J.
    pub full_coefficient: Option<f64>,
    pub amplitude_constant: Option<f64>,
    /// Relative gap to the next mode, flagged when the geometry is close to a tie.
    pub near_tie_gap: Option<f64>,
    /// Type-III only: half-angle of the captured sectors around ±x.
    pub sector_half_angle: Option<f64>,
}

fn check_nonzero(name: &'static str, v: f64, terms: &[f64]) -> Result<()> {
    let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
    if v.abs() <= ZERO_TOL * scale {
        return Err(Error::ZeroCoefficient(name));
    }
    Ok(())
}

/// Classification for a simple real critical mode: the sign of b (roll) or a (rectangle) decides.
pub fn classify_simple(p: &FluidParams, geom: &BoxGeometry, j: ModeIndex, r_r: f64) -> Result<TransitionReport> {
    if j.j3 != 1 {
        return Err(Error::UnsupportedCriticalSet(format!("{j} is not a first vertical mode")));
    }
    let ab = coefficients_ab(p, geom, j, r_r)?;
    let a2 = wave_numbers(j, geom).alpha_sq;
    let (kind, deciding, full) = if j.is_roll() {
        let (t1, t2) = b_terms(p, a2, r_r);
        check_nonzero("b", ab.b, &[t1, t2])?;
        (TransitionKind::SimpleRoll, ab.b, cm_coefficient_b_full(p, geom, j, r_r))
    } else {
        let a = ab.a.expect("rectangle modes carry a");
        let k1 = kappa_parts(2 * j.j1, 0, p, geom, j, r_r)?.kappa;
        let k2 = kappa_parts(0, 2 * j.j2, p, geom, j, r_r)?.kappa;
        let t0 = PI.powi(4) * p.q * (PI * PI - 5.0 * a2);
        check_nonzero("a", a, &[t0, b_terms(p, a2, r_r).1, k1, k2])?;
        (TransitionKind::SimpleRectangle, a, cm_coefficient_a_full(p, geom, j, r_r))
    };
    let full = full.ok();
    let amplitude_constant = match full {
        Some(f) if f != 0.0 => {
            let slope = growth_rate_derivative(j, p, geom, r_r)?;
            Some((slope / f.abs()).sqrt())
        }
        _ => None,
    };
    let (transition_type, side, stable) = if deciding < 0.0 {
        (TransitionType::TypeI, Side::Above, true)
    } else {
        (TransitionType::TypeII, Side::Below, false)
    };
    let inventory = ["psi+", "psi-"]
        .iter()
        .map(|n| BifurcatedState { name: n.to_string(), side, stable })
        .collect();
    Ok(TransitionReport {
        kind,
        critical: vec![j],
        r_r,
        a: ab.a,
        b: ab.b,
        region: None,
        transition_type,
        inventory,
        full_coefficient: full,
        amplitude_constant,
        near_tie_gap: None,
        sector_half_angle: None,
    })
}

/// Smallest (j, k), j, k ≤ 64, with |L1/L2 − j/(k√3)| < 1e−6.
pub fn detect_hexagonal_geometry(geom: &BoxGeometry) -> Option<(u32, u32)> {
    let ratio = geom.l1 / geom.l2;
    let s3 = 3f64.sqrt();
    let mut best: Option<(u32, u32)> = None;
    for k in 1..=64u32 {
        for j in 1..=64u32 {
            if (ratio - j as f64 / (k as f64 * s3)).abs() < 1e-6 {
                let better = match best {
                    None => true,
                    Some((bj, bk)) => (j + k, j) < (bj + bk, bj),
                };
                if better {
                    best = Some((j, k));
                }
            }
        }
    }
    best
}

/// Splits a critical set into the hexagonal pair (I, J) = ((j,k,1), (0,2k,1)).
pub fn hexagonal_pair(set: &[ModeIndex]) -> Option<(ModeIndex, ModeIndex)> {
    if set.len() != 2 {
        return None;
    }
    for (i, jj) in [(set[0], set[1]), (set[1], set[0])] {
        if i.j3 == 1 && jj.j3 == 1 && i.j1 > 0 && i.j2 > 0 && jj.j1 == 0 && jj.j2 == 2 * i.j2 {
            return Some((i, jj));
        }
    }
    None
}

/// Region-map classification of the two-mode hexagonal transition.
pub fn classify_hexagonal(
    p: &FluidParams,
    geom: &BoxGeometry,
    i: ModeIndex,
    j: ModeIndex,
    r_r: f64,
) -> Result<TransitionReport> {
    let pair = hexagonal_pair(&[i, j]);
    let wi = wave_numbers(i, geom).alpha_sq;
    let wj = wave_numbers(j, geom).alpha_sq;
    if pair != Some((i, j)) || (wi - wj).abs() > 1e-9 * wi {
        return Err(Error::UnsupportedCriticalSet(format!("{i}, {j} is not a hexagonal pair")));
    }
    let a = coefficients_ab(p, geom, i, r_r)?.a.expect("I has two horizontal indices");
    let b = coefficients_ab(p, geom, j, r_r)?.b;
    let region = region_of(a, b)?;
    let mut inventory = Vec::new();
    for (side, beta) in [(Side::Above, 1.0), (Side::Below, -1.0)] {
        for s in steady_states(a, b, beta)?.existing() {
            inventory.push(BifurcatedState { name: s.name.clone(), side, stable: s.stable() });
        }
    }
    let sector_half_angle = (region == RegionLabel::III1).then(|| 0.5f64.atan());
    Ok(TransitionReport {
        kind: TransitionKind::HexagonalPair,
        critical: vec![i, j],
        r_r,
        a: Some(a),
        b,
        region: Some(region),
        transition_type: region.transition_type(),
        inventory,
        full_coefficient: None,
        amplitude_constant: None,
        near_tie_gap: None,
        sector_half_angle,
    })
}

/// Classifies the transition at the first critical Rayleigh number.
pub fn classify(p: &FluidParams, geom: &BoxGeometry) -> Result<TransitionReport> {
    let crit = critical_rayleigh(p, geom);
    if crit.kind == OnsetKind::Complex {
        return Err(Error::InvalidRegime(
            "onset is oscillatory; use the Hopf analysis".into(),
        ));
    }
    let set = &crit.critical_set;
    if set.len() == 1 {
        let mut report = classify_simple(p, geom, set[0], crit.r_r)?;
        report.near_tie_gap = crit.near_tie_gap();
        return Ok(report);
    }
    match hexagonal_pair(set) {
        Some((i, j)) => classify_hexagonal(p, geom, i, j, crit.r_r),
        None => Err(Error::UnsupportedCriticalSet(
            set.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" "),
        )),
    }
}

/// Horizontal wave number of the steady critical mode at Chandrasekhar number q.
fn critical_alpha(geom: &BoxGeometry, q: f64) -> f64 {
    let p = FluidParams { p1: 1.0, p2: 1.0, q };
    let c = stability::critical_rayleigh(&p, geom);
    c.critical_set
        .iter()
        .map(|m| wave_numbers(*m, geom).alpha())
        .fold(0.0, f64::max)
}

/// Smallest Q beyond which the critical wave number stays at or above π, so
/// that b < 0 for every p2.
pub fn q_star(geom: &BoxGeometry) -> f64 {
    if critical_alpha(geom, 0.0) >= PI {
        return 0.0;
    }
    let mut lo = 0.0;
    let mut hi = 4.0 * PI * PI;
    while critical_alpha(geom, hi) < PI {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > 1e-10 * hi {
        let mid = 0.5 * (lo + hi);
        if critical_alpha(geom, mid) >= PI {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// p2 bound from the roll condition at the smallest critical wave number
/// (attained at Q = 0): beyond it b < 0 for every Q.
pub fn p_star(geom: &BoxGeometry) -> f64 {
    let alpha = critical_alpha(geom, 0.0);
    roll_p2_bound(alpha)
}

/// π√(2(π²−α²))/(αγ) with γ² = α² + π², zero for α ≥ π.
pub fn roll_p2_bound(alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    if a2 >= PI * PI {
        return 0.0;
    }
    PI * (2.0 * (PI * PI - a2)).sqrt() / (alpha * (a2 + PI * PI).sqrt())
}

/// Supremum over Q of the actual crossing p2 = √σ_roll along the critical
/// roll branch. Within a plateau of fixed critical mode σ_roll grows with Q,
/// so only the right end of each plateau matters.
pub fn p_star_exact(geom: &BoxGeometry) -> f64 {
    let q_end = q_star(geom);
    let sigma_at = |q: f64| {
        let p = FluidParams { p1: 1.0, p2: 1.0, q };
        let c = stability::critical_rayleigh(&p, geom);
        c.critical_set
            .iter()
            .filter(|m| m.is_roll())
            .map(|m| sigma_roll(&p, geom, *m))
            .fold(0.0f64, f64::max)
    };
    let mut best = 0.0f64;
    let mut q = 0.0;
    while q < q_end {
        let a0 = critical_alpha(geom, q);
        // right end of the plateau starting at q
        let (mut lo, mut hi) = (q, q_end);
        while hi - lo > 1e-9 * hi.max(1.0) {
            let mid = 0.5 * (lo + hi);
            if critical_alpha(geom, mid) == a0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        best = best.max(sigma_at(lo));
        q = hi;
    }
    best.max(0.0).sqrt()
}

/// Region assignment of every octant with its derived behaviour, for documentation.
pub fn region_table() -> Vec<(RegionLabel, Vec<(String, Side, bool)>)> {
    RegionLabel::ALL
        .iter()
        .map(|&label| {
            let (a, b) = label.sample();
            let mut rows = Vec::new();
            for (side, beta) in [(Side::Above, 1.0), (Side::Below, -1.0)] {
                let inv = steady_states(a, b, beta).expect("samples avoid the degenerate lines");
                for fam in [StateFamily::Roll, StateFamily::Rec, StateFamily::Hex] {
                    if let Some(s) = inv.states.iter().find(|s| s.family == fam && s.exists) {
                        rows.push((format!("{fam:?}"), side, s.stable()));
                    }
                }
            }
            (label, rows)
        })
        .collect()
}
