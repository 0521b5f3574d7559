//! Per-mode characteristic cubic, critical Rayleigh numbers and the
//! steady/oscillatory boundary.
//!
//! Orientation: a mode is stable when every root has negative real part,
//! which holds exactly for R below min(R_steady, R_oscillatory) of that mode.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::cubic;
use crate::error::{Error, Result};
use crate::params::{horizontal_wave_sq, wave_numbers, BoxGeometry, FluidParams, ModeIndex};

/// Relative tolerance under which two Rayleigh values count as a tie.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicCoefficients {
    pub b2: f64,
    pub b1: f64,
    pub b0: f64,
}

/// Roots ordered by descending real part, ties by descending imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenTriple {
    pub roots: [Complex64; 3],
}

impl EigenTriple {
    pub fn leading(&self) -> Complex64 {
        self.roots[0]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OnsetKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalResult {
    pub r_first: f64,
    pub kind: OnsetKind,
    /// Lexicographically sorted.
    pub critical_set: Vec<ModeIndex>,
    /// Zero for steady onset.
    pub rho: f64,
    pub r_r: f64,
    pub r_c: f64,
    /// Horizontal wave number of the critical modes.
    pub alpha: f64,
    /// Smallest value of the winning functional outside the critical set.
    pub runner_up: Option<(ModeIndex, f64)>,
}

impl CriticalResult {
    /// (R_runner_up − R_first)/R_first.
    pub fn near_tie_gap(&self) -> Option<f64> {
        self.runner_up.map(|(_, r)| (r - self.r_first) / self.r_first)
    }
}

pub fn cubic_coefficients(
    j: ModeIndex,
    p: &FluidParams,
    geom: &BoxGeometry,
    r: f64,
) -> CubicCoefficients {
    let w = wave_numbers(j, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let c2 = (j.j3 as f64 * PI).powi(2);
    let (p1, p2, q) = (p.p1, p.p2, p.q);
    CubicCoefficients {
        b2: (p1 + p2 + 1.0) * g2,
        b1: p1 * ((p2 + 1.0 + p2 / p1) * g2 * g2 + p2 * q * c2 - r * a2 / g2),
        b0: p1 * p2 * (g2 * g2 * g2 + q * c2 * g2 - a2 * r),
    }
}

pub fn eigenvalues(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry, r: f64) -> Result<EigenTriple> {
    let c = cubic_coefficients(j, p, geom, r);
    let mut roots = cubic::cubic_roots(c.b2, c.b1, c.b0)?;
    roots.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(EigenTriple { roots })
}

/// Largest real part among the three roots.
pub fn leading_growth_rate(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry, r: f64) -> Result<f64> {
    Ok(eigenvalues(j, p, geom, r)?.leading().re)
}

/// Centered difference of the leading growth rate in R, step `1e-6·R`.
pub fn growth_rate_derivative(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry, r: f64) -> Result<f64> {
    let h = 1e-6 * r.abs().max(1.0);
    let up = leading_growth_rate(j, p, geom, r + h)?;
    let down = leading_growth_rate(j, p, geom, r - h)?;
    Ok((up - down) / (2.0 * h))
}

/// Rayleigh number at which the mode has a zero root.
pub fn rayleigh_steady(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry) -> f64 {
    let w = wave_numbers(j, geom);
    let c2 = (j.j3 as f64 * PI).powi(2);
    w.gamma_sq / w.alpha_sq * (w.gamma_sq * w.gamma_sq + p.q * c2)
}

/// Rayleigh number at which the mode has a purely imaginary pair (b2·b1 = b0).
pub fn rayleigh_oscillatory(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry) -> f64 {
    let w = wave_numbers(j, geom);
    let c2 = (j.j3 as f64 * PI).powi(2);
    let (p1, p2) = (p.p1, p.p2);
    let pref = (p2 + 1.0) * (p1 + p2) / p1;
    let mix = p1 * p2 / ((p2 + 1.0) * (p1 + 1.0));
    pref * w.gamma_sq / w.alpha_sq * (w.gamma_sq * w.gamma_sq + mix * p.q * c2)
}

/// Squared frequency of the imaginary pair at the oscillatory threshold of `j`.
pub fn frequency_squared(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry) -> f64 {
    let w = wave_numbers(j, geom);
    let c2 = (j.j3 as f64 * PI).powi(2);
    let (p1, p2) = (p.p1, p.p2);
    p1 * p2 * (-p2 * w.gamma_sq * w.gamma_sq / p1 + (1.0 - p2) * p.q * c2 / (p1 + 1.0))
}

pub fn oscillation_frequency(p: &FluidParams, geom: &BoxGeometry, jc: ModeIndex) -> Result<f64> {
    let rho2 = frequency_squared(jc, p, geom);
    if rho2 < 0.0 {
        return Err(Error::NegativeFrequencySquared(rho2));
    }
    Ok(rho2.sqrt())
}

// Both thresholds have the j3 = 1 form  K·(s+π²)/s·((s+π²)² + Cπ²)  in s = α²,
// convex in s with minimizer solving (s+π²)²(2s−π²) = Cπ⁴.
#[derive(Clone, Copy)]
struct Functional {
    k: f64,
    c: f64,
}

impl Functional {
    fn steady(p: &FluidParams) -> Self {
        Self { k: 1.0, c: p.q }
    }

    fn oscillatory(p: &FluidParams) -> Self {
        let (p1, p2) = (p.p1, p.p2);
        Self {
            k: (p2 + 1.0) * (p1 + p2) / p1,
            c: p1 * p2 / ((p2 + 1.0) * (p1 + 1.0)) * p.q,
        }
    }

    fn eval(&self, s: f64) -> f64 {
        let g = s + PI * PI;
        self.k * g / s * (g * g + self.c * PI * PI)
    }

    fn minimizer(&self) -> f64 {
        let pi2 = PI * PI;
        let h = |s: f64| (s + pi2).powi(2) * (2.0 * s - pi2) - self.c * pi2 * pi2;
        let mut lo = 0.5 * pi2;
        let mut hi = pi2;
        while h(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if h(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        hi
    }
}

/// Walks the j3 = 1 lattice in rows of fixed j2, stopping a row (and the row
/// sweep) once past the continuous minimizer and above `visit`'s threshold.
/// Exact because the functional is increasing in s beyond its minimizer.
fn walk_lattice(
    f: Functional,
    geom: &BoxGeometry,
    cap: Option<u32>,
    mut visit: impl FnMut(ModeIndex, f64) -> f64,
) {
    let s_star = f.minimizer();
    let cap = cap.unwrap_or(u32::MAX);
    let mut threshold = f64::INFINITY;
    let mut j2 = 0u32;
    loop {
        if j2 > cap {
            break;
        }
        let row_start = if j2 == 0 { 1 } else { 0 };
        let s0 = horizontal_wave_sq(row_start, j2, geom);
        if s0 > s_star && f.eval(s0) > threshold {
            break;
        }
        let mut j1 = row_start;
        while j1 <= cap {
            let s = horizontal_wave_sq(j1, j2, geom);
            let v = f.eval(s);
            threshold = visit(ModeIndex { j1, j2, j3: 1 }, v);
            if s > s_star && v > threshold {
                break;
            }
            j1 += 1;
        }
        j2 += 1;
    }
}

struct LatticeMin {
    value: f64,
    set: Vec<ModeIndex>,
    runner_up: Option<(ModeIndex, f64)>,
}

fn lattice_min(f: Functional, geom: &BoxGeometry, cap: Option<u32>) -> LatticeMin {
    let mut best = f64::INFINITY;
    walk_lattice(f, geom, cap, |_, v| {
        best = best.min(v);
        best * (1.0 + TIE_TOL)
    });
    let mut set = Vec::new();
    walk_lattice(f, geom, cap, |j, v| {
        if v <= best * (1.0 + TIE_TOL) {
            set.push(j);
        }
        best * (1.0 + TIE_TOL)
    });
    set.sort();
    let mut runner: Option<(ModeIndex, f64)> = None;
    walk_lattice(f, geom, cap, |j, v| {
        if !set.contains(&j) {
            match runner {
                Some((rj, rv)) if v > rv || (v == rv && j > rj) => {}
                _ => runner = Some((j, v)),
            }
        }
        runner.map_or(f64::INFINITY, |(_, rv)| rv)
    });
    LatticeMin { value: best, set, runner_up: runner }
}

/// Exact lattice minimization of both thresholds.
pub fn critical_rayleigh(p: &FluidParams, geom: &BoxGeometry) -> CriticalResult {
    critical_rayleigh_capped(p, geom, None)
}

/// As [`critical_rayleigh`] with horizontal indices restricted to `≤ cap`.
pub fn critical_rayleigh_capped(p: &FluidParams, geom: &BoxGeometry, cap: Option<u32>) -> CriticalResult {
    let steady = lattice_min(Functional::steady(p), geom, cap);
    let osc = lattice_min(Functional::oscillatory(p), geom, cap);
    let (kind, win) = if steady.value <= osc.value {
        (OnsetKind::Real, &steady)
    } else {
        (OnsetKind::Complex, &osc)
    };
    let jc = win.set[0];
    let rho = match kind {
        OnsetKind::Real => 0.0,
        OnsetKind::Complex => frequency_squared(jc, p, geom).max(0.0).sqrt(),
    };
    CriticalResult {
        r_first: win.value,
        kind,
        critical_set: win.set.clone(),
        rho,
        r_r: steady.value,
        r_c: osc.value,
        alpha: wave_numbers(jc, geom).alpha(),
        runner_up: win.runner_up,
    }
}

/// Chandrasekhar number where min R_steady = min R_oscillatory (p2 < 1 only).
pub fn find_q0(p1: f64, p2: f64, geom: &BoxGeometry) -> Result<f64> {
    if p2 >= 1.0 {
        return Err(Error::InvalidRegime(format!(
            "p2 = {p2} >= 1: onset is always steady"
        )));
    }
    let diff = |q: f64| -> Result<f64> {
        let p = FluidParams::new(p1, p2, q)?;
        let s = lattice_min(Functional::steady(&p), geom, None).value;
        let o = lattice_min(Functional::oscillatory(&p), geom, None).value;
        Ok(s - o)
    };
    // Oscillatory onset needs a positive frequency, which forces Q above this.
    let floor = PI * PI * p2 * (p1 + 1.0) / (p1 * (1.0 - p2));
    let mut lo = 0.0;
    let mut hi = floor.max(1.0);
    while diff(hi)? <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e15 {
            return Err(Error::InvalidRegime("no steady/oscillatory crossing found".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if diff(mid)? <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}
