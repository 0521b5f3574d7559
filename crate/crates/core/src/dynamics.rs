//! Reduced amplitude equations near onset and a fixed-step RK4 integrator.
//!
//! Three systems are covered: the scalar pitchfork `x' = βx + b x³`, the
//! two-mode hexagonal system
//!
//! ```text
//! x' = βx + x(a x² + 2(2a−b) y²)
//! y' = βy + y((2a−b) x² + 2b y²)
//! ```
//!
//! and the planar Hopf normal form `z' = (λ + iρ)z + b|z|²z` written in (x, y).

use serde::Serialize;

use crate::error::{Error, Result};

/// Norm above which a trajectory counts as escaped.
pub const ESCAPE_NORM: f64 = 1e6;
/// Displacement per unit time below which a step counts as stationary.
pub const STATIONARY_RATE: f64 = 1e-10;
/// Consecutive stationary steps required for convergence.
pub const STATIONARY_RUN: usize = 100;
pub const DEFAULT_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HexSystem {
    pub a: f64,
    pub b: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cubic1D {
    pub beta: f64,
    pub b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfNormalForm {
    pub lambda: f64,
    pub rho: f64,
    pub b: f64,
}

/// Any of the reduced systems, as a vector field on the plane.
/// The scalar system lives on the x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum System {
    Cubic(Cubic1D),
    Hex(HexSystem),
    Hopf(HopfNormalForm),
}

impl System {
    pub fn field(&self, s: [f64; 2]) -> [f64; 2] {
        let [x, y] = s;
        match *self {
            System::Cubic(c) => [c.beta * x + c.b * x * x * x, 0.0],
            System::Hex(h) => {
                let m = 2.0 * h.a - h.b;
                [
                    h.beta * x + x * (h.a * x * x + 2.0 * m * y * y),
                    h.beta * y + y * (m * x * x + 2.0 * h.b * y * y),
                ]
            }
            System::Hopf(h) => {
                let r2 = x * x + y * y;
                [
                    h.lambda * x + h.rho * y + h.b * r2 * x,
                    -h.rho * x + h.lambda * y + h.b * r2 * y,
                ]
            }
        }
    }

    /// Central-difference Jacobian.
    pub fn numeric_jacobian(&self, s: [f64; 2], h: f64) -> [[f64; 2]; 2] {
        let mut jac = [[0.0; 2]; 2];
        for col in 0..2 {
            let mut up = s;
            let mut down = s;
            up[col] += h;
            down[col] -= h;
            let fu = self.field(up);
            let fd = self.field(down);
            for row in 0..2 {
                jac[row][col] = (fu[row] - fd[row]) / (2.0 * h);
            }
        }
        jac
    }
}

fn rk4_step(sys: &System, s: [f64; 2], h: f64) -> [f64; 2] {
    let add = |p: [f64; 2], k: [f64; 2], c: f64| [p[0] + c * k[0], p[1] + c * k[1]];
    let k1 = sys.field(s);
    let k2 = sys.field(add(s, k1, 0.5 * h));
    let k3 = sys.field(add(s, k2, 0.5 * h));
    let k4 = sys.field(add(s, k3, h));
    [
        s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

fn norm(s: [f64; 2]) -> f64 {
    s[0].hypot(s[1])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub t: Vec<f64>,
    pub states: Vec<[f64; 2]>,
    pub step: f64,
    pub steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> [f64; 2] {
        *self.states.last().expect("trajectory has its initial point")
    }
}

/// Fixed-step RK4 for `n_steps` steps, recording every `sample_every`-th state.
/// A negative step integrates backward in time.
pub fn integrate(sys: &System, ic: [f64; 2], step: f64, n_steps: usize, sample_every: usize) -> Result<Trajectory> {
    match integrate_until_escape(sys, ic, step, n_steps, sample_every)? {
        (traj, None) => Ok(traj),
        (_, Some(t)) => Err(Error::Diverged { t }),
    }
}

/// As [`integrate`], but an escape ends the run early and returns the samples
/// taken so far together with the escape time.
pub fn integrate_until_escape(
    sys: &System,
    ic: [f64; 2],
    step: f64,
    n_steps: usize,
    sample_every: usize,
) -> Result<(Trajectory, Option<f64>)> {
    if step == 0.0 || !step.is_finite() {
        return Err(Error::InvalidParameter(format!("step must be nonzero, got {step}")));
    }
    let every = sample_every.max(1);
    let mut s = ic;
    let mut out = Trajectory { t: vec![0.0], states: vec![s], step, steps: n_steps };
    for i in 1..=n_steps {
        s = rk4_step(sys, s, step);
        let t = i as f64 * step;
        if !(norm(s) <= ESCAPE_NORM) {
            out.steps = i - 1;
            return Ok((out, Some(t)));
        }
        if i % every == 0 || i == n_steps {
            out.t.push(t);
            out.states.push(s);
        }
    }
    Ok((out, None))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Fate {
    Converged { state: [f64; 2], t: f64 },
    Escaped { t: f64 },
    Undecided { state: [f64; 2] },
}

/// Integrates until convergence, escape, or `max_steps`.
pub fn run_to_fate(sys: &System, ic: [f64; 2], step: f64, max_steps: usize) -> Fate {
    let mut s = ic;
    let mut quiet = 0usize;
    for i in 1..=max_steps {
        let next = rk4_step(sys, s, step);
        let t = i as f64 * step;
        if !(norm(next) <= ESCAPE_NORM) {
            return Fate::Escaped { t };
        }
        let rate = norm([next[0] - s[0], next[1] - s[1]]) / step.abs();
        s = next;
        if rate < STATIONARY_RATE {
            quiet += 1;
            if quiet >= STATIONARY_RUN {
                return Fate::Converged { state: s, t };
            }
        } else {
            quiet = 0;
        }
    }
    Fate::Undecided { state: s }
}

/// Mean radius over the final `window` time units of a Hopf normal-form run.
pub fn limit_cycle_radius(h: HopfNormalForm, ic: [f64; 2], step: f64, t_end: f64, window: f64) -> Result<f64> {
    let n = (t_end / step).ceil() as usize;
    let traj = integrate(&System::Hopf(h), ic, step, n, 1)?;
    let start = traj.t.last().copied().unwrap_or(0.0) - window;
    let (sum, count) = traj
        .t
        .iter()
        .zip(&traj.states)
        .filter(|(t, _)| **t >= start)
        .fold((0.0, 0usize), |(acc, c), (_, s)| (acc + norm(*s), c + 1));
    Ok(sum / count as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StateFamily {
    /// On the x-axis, amplitude² = −β/a.
    Roll,
    /// On the y-axis, amplitude² = −β/(2b).
    Rec,
    /// On the lines x = ±2y, y² = −β/(2(4a−b)).
    Hex,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyState {
    pub name: String,
    pub family: StateFamily,
    pub position: [f64; 2],
    pub exists: bool,
    /// Jacobian eigenvalues (radial first) at this β.
    pub eigenvalues: [f64; 2],
}

impl SteadyState {
    pub fn stable(&self) -> bool {
        self.eigenvalues.iter().all(|&l| l < 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SteadyStateInventory {
    pub a: f64,
    pub b: f64,
    pub beta: f64,
    pub states: Vec<SteadyState>,
}

impl SteadyStateInventory {
    pub fn existing(&self) -> impl Iterator<Item = &SteadyState> {
        self.states.iter().filter(|s| s.exists)
    }
}

fn degenerate(x: f64, scale: f64) -> bool {
    x.abs() <= 1e-9 * scale
}

/// Closed-form nonzero steady states of the hexagonal system with their
/// Jacobian spectra.
///
/// The transverse eigenvalues are −β(a−b)/a on the x-axis, −2β(a−b)/b on the
/// y-axis and 4β(a−b)/(4a−b) on the hexagonal lines; the radial one is −2β
/// throughout.
pub fn steady_states(a: f64, b: f64, beta: f64) -> Result<SteadyStateInventory> {
    let scale = a.abs().max(b.abs());
    if degenerate(a, scale) {
        return Err(Error::ZeroCoefficient("a"));
    }
    if degenerate(b, scale) {
        return Err(Error::ZeroCoefficient("b"));
    }
    if degenerate(a - b, scale) {
        return Err(Error::ZeroCoefficient("a-b"));
    }
    if degenerate(4.0 * a - b, scale) {
        return Err(Error::ZeroCoefficient("4a-b"));
    }
    let mut states = Vec::with_capacity(8);
    let mut push = |name: &str, family, amp_sq: f64, dir: [f64; 2], transverse: f64| {
        let exists = amp_sq > 0.0;
        let amp = if exists { amp_sq.sqrt() } else { 0.0 };
        states.push(SteadyState {
            name: name.to_string(),
            family,
            position: [amp * dir[0], amp * dir[1]],
            exists,
            eigenvalues: [-2.0 * beta, transverse],
        });
    };
    let roll = -beta / a;
    let rec = -beta / (2.0 * b);
    let hex = -beta / (2.0 * (4.0 * a - b));
    let roll_t = -beta * (a - b) / a;
    let rec_t = -2.0 * beta * (a - b) / b;
    let hex_t = 4.0 * beta * (a - b) / (4.0 * a - b);
    push("Roll+", StateFamily::Roll, roll, [1.0, 0.0], roll_t);
    push("Roll-", StateFamily::Roll, roll, [-1.0, 0.0], roll_t);
    push("Rec+", StateFamily::Rec, rec, [0.0, 1.0], rec_t);
    push("Rec-", StateFamily::Rec, rec, [0.0, -1.0], rec_t);
    // Hex±^i = (−1)^i·amp·(2, ±1)
    push("Hex+^1", StateFamily::Hex, hex, [-2.0, -1.0], hex_t);
    push("Hex-^1", StateFamily::Hex, hex, [-2.0, 1.0], hex_t);
    push("Hex+^2", StateFamily::Hex, hex, [2.0, 1.0], hex_t);
    push("Hex-^2", StateFamily::Hex, hex, [2.0, -1.0], hex_t);
    Ok(SteadyStateInventory { a, b, beta, states })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RayOutcome {
    Captured,
    Escaped,
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SectorReport {
    pub angles: Vec<f64>,
    pub outcomes: Vec<RayOutcome>,
    /// Angles (radians, in (−π, π]) where the outcome changes, refined by bisection.
    pub boundaries: Vec<f64>,
    /// Half-angle of the captured sector containing the +x direction.
    pub half_angle: Option<f64>,
}

fn ray_outcome(sys: &System, theta: f64, radius: f64, step: f64, max_steps: usize) -> RayOutcome {
    match run_to_fate(sys, [radius * theta.cos(), radius * theta.sin()], step, max_steps) {
        Fate::Escaped { .. } => RayOutcome::Escaped,
        // Captured means settling on the x-axis state.
        Fate::Converged { state, .. } if state[1].abs() < 1e-6 * state[0].abs() => RayOutcome::Captured,
        _ => RayOutcome::Other,
    }
}

/// Fan of `n_rays` initial conditions at `radius`, classified as captured
/// (settle on the x-axis state) or escaped; the sector edges are refined by
/// bisection to 1e−4 rad.
pub fn sector_probe(a: f64, b: f64, beta: f64, n_rays: usize, radius: f64) -> Result<SectorReport> {
    if n_rays < 4 {
        return Err(Error::InvalidParameter("need at least 4 rays".into()));
    }
    let sys = System::Hex(HexSystem { a, b, beta });
    let step = (0.5 / beta.abs().max(1e-12)).min(1.0) * 0.02;
    let max_steps = (200.0 / (beta.abs() * step)) as usize;
    let angles: Vec<f64> = (0..n_rays)
        .map(|i| -std::f64::consts::PI + 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n_rays as f64)
        .collect();
    use rayon::prelude::*;
    let outcomes: Vec<RayOutcome> = angles
        .par_iter()
        .map(|&th| ray_outcome(&sys, th, radius, step, max_steps))
        .collect();

    let mut boundaries = Vec::new();
    for i in 0..n_rays {
        let k = (i + 1) % n_rays;
        if outcomes[i] == outcomes[k] {
            continue;
        }
        let mut lo = angles[i];
        let mut hi = if k == 0 { angles[k] + 2.0 * std::f64::consts::PI } else { angles[k] };
        let lo_out = outcomes[i];
        while hi - lo > 1e-4 {
            let mid = 0.5 * (lo + hi);
            if ray_outcome(&sys, mid, radius, step, max_steps) == lo_out {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut edge = 0.5 * (lo + hi);
        if edge > std::f64::consts::PI {
            edge -= 2.0 * std::f64::consts::PI;
        }
        boundaries.push(edge);
    }
    boundaries.sort_by(f64::total_cmp);

    let upper = boundaries.iter().copied().filter(|&t| t > 0.0).reduce(f64::min);
    let lower = boundaries.iter().copied().filter(|&t| t < 0.0).reduce(f64::max);
    let captured_at_zero = ray_outcome(&sys, 0.0, radius, step, max_steps) == RayOutcome::Captured;
    let half_angle = match (captured_at_zero, lower, upper) {
        (true, Some(l), Some(u)) => Some(0.5 * (u - l)),
        _ => None,
    };
    Ok(SectorReport { angles, outcomes, boundaries, half_angle })
}
