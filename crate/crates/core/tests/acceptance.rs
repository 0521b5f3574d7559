//! One PASS/FAIL line per acceptance criterion.
//!
//! The process exits non-zero when a criterion fails that is not listed in
//! `KNOWN_FAILURES`, or when a listed one starts passing.

use std::f64::consts::PI;
use std::time::Instant;

use mhdconv::cubic::{cubic_roots, residual};
use mhdconv::dynamics::{
    limit_cycle_radius, run_to_fate, sector_probe, steady_states, Fate, HexSystem, HopfNormalForm, System,
};
use mhdconv::fields::{
    critical_eigenfield, hopf_eigenfields, inner_product, laplacian_eigenfield, trilinear_quadrature, trilinear_sym,
    Branch,
};
use mhdconv::params::horizontal_wave_sq;
use mhdconv::scan::{hexlines, minimizers, Axis, ScanGrid};
use mhdconv::stability::{
    critical_rayleigh_capped, cubic_coefficients, find_q0, frequency_squared, rayleigh_oscillatory, rayleigh_steady,
};
use mhdconv::transition::hopf::{asymptotic_check, hopf_coefficient, hopf_tables};
use mhdconv::transition::real::{
    classify, classify_hexagonal, cm_coefficient_a_full, cm_coefficient_b_full, coefficients_ab, critical_pairing,
    detect_hexagonal_geometry, hexagonal_pair, kappa_parts, p_star, q_star, region_of, sigma_roll, RegionLabel,
};
use mhdconv::transition::TransitionType;
use mhdconv::{critical_rayleigh, wave_numbers, BoxGeometry, FluidParams, ModeIndex, OnsetKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria expected to fail, with the reason.
const KNOWN_FAILURES: &[(u32, &str)] = &[(
    12,
    "the computed steady/oscillatory switch Q0 lies far above the quoted upper bound for every box tried",
)];

type Outcome = Result<String, String>;

fn mode(j1: u32, j2: u32, j3: u32) -> ModeIndex {
    ModeIndex::new(j1, j2, j3).unwrap()
}

fn params(p1: f64, p2: f64, q: f64) -> FluidParams {
    FluidParams::new(p1, p2, q).unwrap()
}

fn geom(l1: f64, l2: f64) -> BoxGeometry {
    BoxGeometry::new(l1, l2).unwrap()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn c1_eigen_cubic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let (mut worst_res, mut worst_vieta) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let j = mode(rng.gen_range(0..12), rng.gen_range(1..12), rng.gen_range(1..4));
        let p = params(rng.gen_range(0.01..100.0), rng.gen_range(0.01..10.0), rng.gen_range(0.0..1e4));
        let g = geom(rng.gen_range(0.2..10.0), rng.gen_range(0.2..10.0));
        let r = rng.gen_range(0.0..1e6);
        let c = cubic_coefficients(j, &p, &g, r);
        let z = cubic_roots(c.b2, c.b1, c.b0).map_err(|e| e.to_string())?;
        for root in z {
            worst_res = worst_res.max(residual(c.b2, c.b1, c.b0, root) / c.b0.abs().max(1.0));
        }
        let sum = z[0] + z[1] + z[2];
        let pair = z[0] * z[1] + z[0] * z[2] + z[1] * z[2];
        let prod = z[0] * z[1] * z[2];
        let v = [
            (sum.re + c.b2).abs() / c.b2.abs().max(1.0) + sum.im.abs() / c.b2.abs().max(1.0),
            (pair.re - c.b1).abs() / c.b1.abs().max(1.0) + pair.im.abs() / c.b1.abs().max(1.0),
            (prod.re + c.b0).abs() / c.b0.abs().max(1.0) + prod.im.abs() / c.b0.abs().max(1.0),
        ];
        worst_vieta = worst_vieta.max(v.iter().cloned().fold(0.0, f64::max));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        worst_res <= 1e-9 && worst_vieta <= 1e-9 && secs < 1.0,
        format!("max residual/max(1,|b0|) {worst_res:.2e}, max Vieta {worst_vieta:.2e}, {secs:.3} s"),
    )
}

fn c2_critical_exactness() -> Outcome {
    let s = 2f64.sqrt();
    let (p, g) = (params(1.0, 1.0, 0.0), geom(s, s));
    let c = critical_rayleigh(&p, &g);
    let want = 27.0 * PI.powi(4) / 4.0;
    // dense lattice oracle
    let mut dense = f64::INFINITY;
    let mut set = Vec::new();
    for j1 in 0..=32u32 {
        for j2 in 0..=32u32 {
            if j1 + j2 == 0 {
                continue;
            }
            let m = mode(j1, j2, 1);
            let r = rayleigh_steady(m, &p, &g);
            if r < dense * (1.0 - 1e-9) {
                dense = r;
                set = vec![m];
            } else if (r - dense).abs() <= 1e-9 * dense {
                set.push(m);
            }
        }
    }
    set.sort();
    let expected_set = vec![mode(0, 1, 1), mode(1, 0, 1)];
    check(
        rel(c.r_first, want) <= 1e-9 && c.critical_set == expected_set && set == expected_set && rel(dense, want) <= 1e-9,
        format!("R_r = {:.12} vs 27pi^4/4 = {want:.12}, set {:?}", c.r_first, c.critical_set),
    )
}

fn c3_hexagonal_box() -> Outcome {
    let g = geom(1.5, 1.5 * 3f64.sqrt());
    let p = params(1.0, 1.0, 10.0);
    let c = critical_rayleigh(&p, &g);
    let set_ok = c.critical_set == vec![mode(0, 2, 1), mode(1, 1, 1)];
    let alpha_ok = (c.alpha - 2.0 * PI / g.l2).abs() <= 1e-6;
    let s = sigma_roll(&p, &g, mode(0, 2, 1)).sqrt();
    let mut flips = Vec::new();
    for p2 in [s - 0.01, s + 0.01] {
        let r = classify(&params(1.0, p2, 10.0), &g).map_err(|e| e.to_string())?;
        flips.push(r.region);
    }
    let flip_ok = flips == vec![Some(RegionLabel::III1), Some(RegionLabel::I2)];
    check(
        set_ok && alpha_ok && (s - 0.5).abs() <= 0.01 && flip_ok,
        format!("set {:?}, alpha {:.9}, sqrt(sigma_roll) {s:.4}, regions {flips:?}", c.critical_set, c.alpha),
    )
}

fn c4_min_alpha() -> Outcome {
    let start = Instant::now();
    let grid = ScanGrid { x: Axis::stepped(0.5, 10.0, 0.1).unwrap(), y: Axis::stepped(0.5, 10.0, 0.1).unwrap() };
    let cells = minimizers(&params(1.0, 1.0, 0.0), &grid, None).map_err(|e| e.to_string())?;
    let min = cells.iter().map(|c| c.alpha).fold(f64::INFINITY, f64::min);
    let bound = PI / (2f64.cbrt() * (2f64.powf(2.0 / 3.0) + 1.0).sqrt());
    let secs = start.elapsed().as_secs_f64();
    check(
        min >= 1.55 && min >= bound && secs < 30.0,
        format!("min alpha {min:.6} (bound {bound:.6}) over {} cells, {secs:.2} s", cells.len()),
    )
}

fn c5_thresholds() -> Outcome {
    let grid = ScanGrid { x: Axis::stepped(0.5, 10.0, 0.1).unwrap(), y: Axis::stepped(0.5, 10.0, 0.1).unwrap() };
    // Q = 307: b < 0 for every p2, so test the smallest p2 where the first term dominates.
    let at_q = minimizers(&params(1.0, 1.0, 307.0), &grid, None).map_err(|e| e.to_string())?;
    let mut bad_q = 0;
    for c in &at_q {
        let g = geom(c.l1, c.l2);
        for &j in &c.critical_set {
            for p2 in [1e-3, 0.1, 1.0, 10.0] {
                let b = coefficients_ab(&params(1.0, p2, 307.0), &g, j, c.r_first).unwrap().b;
                if b >= 0.0 {
                    bad_q += 1;
                }
            }
        }
    }
    // p2 = 2.24: b < 0 along a Q sweep at every grid cell
    let mut bad_p = 0;
    for q in [0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 307.0] {
        let p = params(1.0, 2.24, q);
        for c in minimizers(&p, &grid, None).map_err(|e| e.to_string())? {
            let g = geom(c.l1, c.l2);
            for &j in &c.critical_set {
                if coefficients_ab(&p, &g, j, c.r_first).unwrap().b >= 0.0 {
                    bad_p += 1;
                }
            }
        }
    }
    let big = geom(40.0, 40.0);
    let (qs, ps) = (q_star(&big), p_star(&big));
    let (qw, pw) = (4.0 * PI * PI, 2.0 / 3f64.sqrt());
    check(
        bad_q == 0 && bad_p == 0 && rel(qs, qw) <= 0.05 && rel(ps, pw) <= 0.05,
        format!(
            "b>=0 cells: {bad_q} at Q=307, {bad_p} at p2=2.24; L=40: Q* {qs:.4} (4pi^2 {qw:.4}), p* {ps:.4} (2/sqrt3 {pw:.4})"
        ),
    )
}

fn c6_hexagonal_large_p2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut accepted = 0;
    let mut tries = 0;
    let mut failures = Vec::new();
    while accepted < 100 {
        tries += 1;
        if tries > 100_000 {
            return Err(format!("only {accepted} hexagonal critical geometries found"));
        }
        let (j, k) = loop {
            let (j, k) = (rng.gen_range(1..4u32), rng.gen_range(1..4u32));
            if gcd(j, k) == 1 {
                break (j, k);
            }
        };
        let l2 = rng.gen_range(0.5..6.0);
        let l1 = l2 * j as f64 / (k as f64 * 3f64.sqrt());
        let g = geom(l1, l2);
        let p = params(rng.gen_range(0.05..20.0), 8.0, rng.gen_range(0.0..200.0));
        let c = critical_rayleigh(&p, &g);
        let Some((i, r)) = hexagonal_pair(&c.critical_set) else { continue };
        if c.critical_set.len() != 2 {
            continue;
        }
        accepted += 1;
        let rep = classify_hexagonal(&p, &g, i, r, c.r_r).map_err(|e| e.to_string())?;
        let k1 = kappa_parts(2 * i.j1, 0, &p, &g, i, c.r_r).unwrap().kappa;
        let k2 = kappa_parts(0, 2 * i.j2, &p, &g, i, c.r_r).unwrap().kappa;
        if rep.region != Some(RegionLabel::I2) || k1 >= 0.0 || k2 >= 0.0 {
            failures.push(format!("L=({l1:.3},{l2:.3}) p1={:.3} Q={:.1}: {:?} k=({k1:.2e},{k2:.2e})", p.p1, p.q, rep.region));
        }
    }
    check(
        failures.is_empty(),
        if failures.is_empty() {
            format!("100/100 in I2 with both kappa < 0 ({tries} draws)")
        } else {
            format!("{} failures, first {}", failures.len(), failures[0])
        },
    )
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn jac_eigs(j: [[f64; 2]; 2]) -> [f64; 2] {
    let tr = j[0][0] + j[1][1];
    let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    let mut e = [(tr - disc) / 2.0, (tr + disc) / 2.0];
    e.sort_by(f64::total_cmp);
    e
}

/// RK4 on the flow restricted to the line through the origin along `d`:
/// the settled coordinate, or None on escape.
fn line_fate(sys: &System, d: [f64; 2], r0: f64, step: f64) -> Option<f64> {
    let f = |r: f64| {
        let v = sys.field([r * d[0], r * d[1]]);
        v[0] * d[0] + v[1] * d[1]
    };
    let mut r = r0;
    let mut quiet = 0;
    for _ in 0..5_000_000 {
        let k1 = f(r);
        let k2 = f(r + 0.5 * step * k1);
        let k3 = f(r + 0.5 * step * k2);
        let k4 = f(r + step * k3);
        let next = r + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if !(next.abs() <= 1e3) {
            return None;
        }
        quiet = if ((next - r) / step).abs() < 1e-13 { quiet + 1 } else { 0 };
        r = next;
        if quiet >= 100 {
            return Some(r);
        }
    }
    Some(r)
}

fn c7_region_table() -> Outcome {
    let start = Instant::now();
    let mut worst_amp = 0.0f64;
    let mut worst_eig = 0.0f64;
    let mut problems = Vec::new();
    for label in RegionLabel::ALL {
        let (a, b) = label.sample();
        if region_of(a, b).map_err(|e| e.to_string())? != label {
            problems.push(format!("{label}: sample outside its octant"));
        }
        for beta in [0.1, -0.1] {
            let sys = System::Hex(HexSystem { a, b, beta });
            let inv = steady_states(a, b, beta).map_err(|e| e.to_string())?;
            for s in &inv.states {
                // Each state sits on an invariant line. Along it the flow is
                // one-dimensional, so integrating in the direction of its
                // radial stability finds the state exactly when it exists.
                let dir = match s.family {
                    mhdconv::dynamics::StateFamily::Roll => [1.0, 0.0],
                    mhdconv::dynamics::StateFamily::Rec => [0.0, 1.0],
                    mhdconv::dynamics::StateFamily::Hex => [2.0 / 5f64.sqrt(), 1.0 / 5f64.sqrt()],
                };
                let sign = if s.name.ends_with('-') || s.name == "Hex+^1" || s.name == "Hex-^1" { -1.0 } else { 1.0 };
                let flip_y = s.name.starts_with("Hex-");
                let d = [sign * dir[0], if flip_y { -sign * dir[1] } else { sign * dir[1] }];
                let guess = if s.exists { 0.5 * (s.position[0].hypot(s.position[1])) } else { 0.05 };
                let step = if beta > 0.0 { 1e-2 } else { -1e-2 };
                match (s.exists, line_fate(&sys, d, guess, step)) {
                    (true, Some(r)) => {
                        let state = [r * d[0], r * d[1]];
                        let err = (state[0] - s.position[0]).abs().max((state[1] - s.position[1]).abs());
                        worst_amp = worst_amp.max(err);
                        let eigs = jac_eigs(sys.numeric_jacobian(s.position, 1e-5));
                        let mut want = s.eigenvalues;
                        want.sort_by(f64::total_cmp);
                        worst_eig = worst_eig.max((eigs[0] - want[0]).abs()).max((eigs[1] - want[1]).abs());
                    }
                    (false, None) => {}
                    (false, Some(r)) if r.abs() < 1e-6 => {}
                    (e, f) => problems.push(format!("{label} beta={beta} {}: exists={e}, line integration {f:?}", s.name)),
                }
            }
            // Transition type from a ring of small generic starts above onset.
            if beta > 0.0 {
                let mut caught = 0;
                let mut lost = 0;
                for k in 0..24 {
                    let th = 2.0 * PI * (k as f64 + 0.37) / 24.0;
                    match run_to_fate(&sys, [0.02 * th.cos(), 0.02 * th.sin()], 1e-2, 5_000_000) {
                        Fate::Converged { .. } => caught += 1,
                        Fate::Escaped { .. } => lost += 1,
                        Fate::Undecided { .. } => {}
                    }
                }
                let observed = match (caught, lost) {
                    (24, 0) => Some(TransitionType::TypeI),
                    (0, 24) => Some(TransitionType::TypeII),
                    (c, l) if c > 0 && l > 0 => Some(TransitionType::TypeIII),
                    _ => None,
                };
                if observed != Some(label.transition_type()) {
                    problems.push(format!("{label}: table says {}, observed {observed:?}", label.transition_type()));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        problems.is_empty() && worst_amp <= 1e-6 && worst_eig <= 1e-8 && secs < 10.0,
        format!(
            "8 octants; max amplitude error {worst_amp:.1e}, max eigenvalue error {worst_eig:.1e}, {secs:.2} s{}",
            problems.first().map(|p| format!("; {p}")).unwrap_or_default()
        ),
    )
}

fn c8_sector() -> Outcome {
    let beta: f64 = 0.01;
    let rep = sector_probe(-1.0, 1.0, beta, 720, 0.5 * beta.sqrt()).map_err(|e| e.to_string())?;
    let h = rep.half_angle.ok_or("no captured sector")?;
    let want = 0.5f64.atan();
    check(
        (h - want).abs().to_degrees() <= 1.0,
        format!("half-angle {:.4} deg vs arctan(1/2) = {:.4} deg", h.to_degrees(), want.to_degrees()),
    )
}

fn c9_quadrature() -> Outcome {
    let mut worst = 0.0f64;
    let mut record = |got: f64, want: f64, scale: f64| {
        worst = worst.max((got - want).abs() / scale.max(want.abs()));
    };
    let q = |x: mhdconv::Result<f64>| x.unwrap();

    // pairing
    let hexbox = geom(1.5, 1.5 * 3f64.sqrt());
    let p = params(1.3, 0.7, 10.0);
    for j in [mode(1, 0, 1), mode(0, 2, 1), mode(1, 1, 1), mode(2, 3, 1)] {
        let (psi, adj) = critical_eigenfield(j, &p, &hexbox).unwrap();
        record(q(inner_product(&psi, &adj)), critical_pairing(&p, &hexbox, j), 0.0);
    }
    // roll components
    let g = geom(1.5, 2.3);
    for j in [mode(1, 0, 1), mode(0, 2, 1)] {
        let w = wave_numbers(j, &g);
        let (a2, g2) = (w.alpha_sq, w.gamma_sq);
        let r = rayleigh_steady(j, &p, &g);
        let (psi, adj) = critical_eigenfield(j, &p, &g).unwrap();
        let e002 = laplacian_eigenfield((0, 0, 2), &g, Branch::Temperature).unwrap();
        let em = laplacian_eigenfield((2 * j.j1, 2 * j.j2, 0), &g, Branch::Magnetic).unwrap();
        record(q(trilinear_sym(&psi, &e002, &adj, &p)), g.area() / 4.0 * p.p1 * p.p2 * PI * g2 * r, 0.0);
        record(
            q(trilinear_sym(&psi, &em, &adj, &p)),
            g.area() / (4.0 * a2) * p.p1 * PI * PI * g2 * (PI * PI - a2) * p.q,
            0.0,
        );
    }
    // rectangle, single-branch and three-branch secondaries
    for (g, p) in [(hexbox, p), (geom(2.0, 2.7), params(0.5, 3.0, 50.0))] {
        let j = mode(1, 1, 1);
        let w = wave_numbers(j, &g);
        let (a2, g2) = (w.alpha_sq, w.gamma_sq);
        let r = rayleigh_steady(j, &p, &g);
        let area = g.area();
        let (psi, adj) = critical_eigenfield(j, &p, &g).unwrap();
        let e002 = laplacian_eigenfield((0, 0, 2), &g, Branch::Temperature).unwrap();
        record(q(trilinear_sym(&psi, &e002, &adj, &p)), area / 8.0 * p.p1 * p.p2 * PI * r * g2, 0.0);
        for (s1, s2) in [(2, 2), (2, 0), (0, 2)] {
            let e = laplacian_eigenfield((s1, s2, 0), &g, Branch::Magnetic).unwrap();
            let a_s = horizontal_wave_sq(s1, s2, &g);
            let phi = q(trilinear_quadrature(&psi, &psi, &e, &p)) / (p.p2 * a_s * q(inner_product(&e, &e)));
            record(phi, PI * PI * g2 / (8.0 * p.p2 * a2), 0.0);
            let want = if s1 > 0 && s2 > 0 {
                area / (16.0 * a2) * p.p1 * PI * PI * p.q * g2 * (PI * PI - a2)
            } else {
                area / (8.0 * a2 * a2) * p.p1 * PI * PI * p.q * g2 * ((-a2 + a_s / 2.0) * PI * PI - a2 * a2)
            };
            record(q(trilinear_sym(&psi, &e, &adj, &p)), want, area * p.p1 * PI.powi(4) * p.q * g2 / a2);
        }
        for (s1, s2) in [(2, 0), (0, 2)] {
            let a_s = horizontal_wave_sq(s1, s2, &g);
            let pref = area * PI * g2 * (4.0 * a2 - a_s) / (64.0 * a2 * a2);
            let want = [
                pref * (p.p2 * g2 * g2 - p.p1 * PI * PI * p.q),
                pref * p.p1 * p.p2 * r * a2,
                pref * (-2.0 * p.p1 * PI * p.q * g2),
            ];
            let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            for (b, want) in [Branch::Velocity, Branch::ThreeTemperature, Branch::ThreeMagnetic].iter().zip(want) {
                let e = laplacian_eigenfield((s1, s2, 2), &g, *b).unwrap();
                record(q(trilinear_sym(&psi, &e, &adj, &p)), want, scale);
            }
        }
    }
    // Hopf tables at beta = i rho
    for (l1, l2, qq, j) in [(3.0, 0.6, 1000.0, mode(4, 0, 1)), (2.0, 0.1, 3000.0, mode(3, 0, 1))] {
        let g = geom(l1, l2);
        let p = params(1.0, 0.5, qq);
        let r_c = rayleigh_oscillatory(j, &p, &g);
        let rho = frequency_squared(j, &p, &g).sqrt();
        let t = hopf_tables(&p, &g, j, r_c, rho).unwrap();
        let (psi, adj) = hopf_eigenfields(&p, &g, j, r_c, rho);
        let e002 = laplacian_eigenfield((0, 0, 2), &g, Branch::Temperature).unwrap();
        let em = laplacian_eigenfield((2 * j.j1, 2 * j.j2, 0), &g, Branch::Magnetic).unwrap();
        let table = |f: &dyn Fn(usize, usize) -> f64| [[f(0, 0), f(0, 1)], [f(1, 0), f(1, 1)]];
        for (closed, numeric) in [
            (t.g1, table(&|i, k| q(trilinear_quadrature(&psi[i], &psi[k], &e002, &p)))),
            (t.g2, table(&|i, k| q(trilinear_quadrature(&psi[i], &psi[k], &em, &p)))),
            (t.c1, table(&|i, k| q(trilinear_quadrature(&psi[i], &e002, &adj[k], &p)))),
            (t.c2, table(&|i, k| q(trilinear_quadrature(&psi[i], &em, &adj[k], &p)))),
            (t.d, table(&|i, k| q(trilinear_quadrature(&em, &psi[i], &adj[k], &p)))),
        ] {
            let scale = closed.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
            for i in 0..2 {
                for k in 0..2 {
                    record(numeric[i][k], closed[i][k], scale);
                }
            }
        }
    }
    // orthogonality
    let g = geom(1.7, 1.1);
    let p = params(1.3, 0.7, 10.0);
    let (psi, adj) = critical_eigenfield(mode(1, 1, 1), &p, &g).unwrap();
    let mut worst_orth = 0.0f64;
    for (s, b) in [
        ((0, 0, 2), Branch::Temperature),
        ((2, 2, 0), Branch::Magnetic),
        ((1, 0, 1), Branch::Velocity),
        ((2, 1, 1), Branch::ThreeTemperature),
        ((1, 1, 2), Branch::ThreeMagnetic),
    ] {
        let e = laplacian_eigenfield(s, &g, b).unwrap();
        let ne = q(inner_product(&e, &e)).sqrt();
        for f in [&psi, &adj] {
            let nf = q(inner_product(f, f)).sqrt();
            worst_orth = worst_orth.max(q(inner_product(f, &e)).abs() / (nf * ne));
        }
    }
    check(
        worst <= 1e-8 && worst_orth <= 1e-12,
        format!("max relative mismatch {worst:.2e}, max orthogonality defect {worst_orth:.2e}"),
    )
}

fn c10_sign_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut rolls, mut rects, mut tries) = (0, 0, 0);
    let mut mismatches = Vec::new();
    while rolls < 100 || rects < 100 {
        tries += 1;
        if tries > 200_000 {
            return Err(format!("only {rolls} rolls and {rects} rectangles drawn"));
        }
        let g = geom(rng.gen_range(0.5..5.0), rng.gen_range(0.5..5.0));
        let p = params(rng.gen_range(0.1..10.0), rng.gen_range(0.1..5.0), rng.gen_range(0.0..300.0));
        let c = critical_rayleigh(&p, &g);
        if c.kind != OnsetKind::Real || c.critical_set.len() != 1 {
            continue;
        }
        let j = c.critical_set[0];
        if critical_pairing(&p, &g, j) <= 0.0 {
            continue;
        }
        let ab = coefficients_ab(&p, &g, j, c.r_r);
        if j.is_roll() && rolls < 100 {
            rolls += 1;
            let full = cm_coefficient_b_full(&p, &g, j, c.r_r).map_err(|e| e.to_string())?;
            let b = ab.map_err(|e| e.to_string())?.b;
            if full.signum() != b.signum() {
                mismatches.push(format!("roll {j} b={b:e} full={full:e}"));
            }
        } else if !j.is_roll() && rects < 100 {
            let Ok(ab) = ab else { continue };
            let Ok(full) = cm_coefficient_a_full(&p, &g, j, c.r_r) else { continue };
            rects += 1;
            let a = ab.a.unwrap();
            if full.signum() != a.signum() {
                mismatches.push(format!("rectangle {j} L=({:.3},{:.3}) a={a:e} full={full:e}", g.l1, g.l2));
            }
        }
    }
    check(
        mismatches.is_empty(),
        format!(
            "{rolls} rolls, {rects} rectangles, {} sign mismatches{}",
            mismatches.len(),
            mismatches.first().map(|m| format!("; {m}")).unwrap_or_default()
        ),
    )
}

fn c11_hopf() -> Outcome {
    let g = geom(2.0, 0.1);
    let mut bs = Vec::new();
    for q in [1e3, 1e4, 1e5, 1e6] {
        let h = hopf_coefficient(&params(1.0, 0.5, q), &g).map_err(|e| e.to_string())?;
        bs.push(h.b);
    }
    let qs: Vec<f64> = (3..=7).map(|k| 10f64.powi(k)).collect();
    let asym = asymptotic_check(&params(1.0, 0.5, 1.0), &g, &qs).map_err(|e| e.to_string())?;
    let ratio_err = rel(asym.rho_sq_over_q, asym.limit);

    let h = hopf_coefficient(&params(1.0, 0.5, 1e3), &g).map_err(|e| e.to_string())?;
    let lambda = h.lambda_prime * 1e-3 * h.r_c;
    let predicted = (lambda / h.b.abs()).sqrt();
    let nf = HopfNormalForm { lambda, rho: h.rho, b: h.b };
    let sim = limit_cycle_radius(nf, [0.5 * predicted, 0.0], 1e-3, 600.0, 20.0).map_err(|e| e.to_string())?;
    let radius_err = rel(sim, predicted);
    check(
        bs.iter().all(|b| *b < 0.0) && ratio_err <= 0.02 && radius_err <= 0.01,
        format!(
            "b<0 at Q=1e3..1e6: {}; rho^2/Q {:.5} vs {:.5} ({:.2}%); radius {sim:.6e} vs {predicted:.6e} ({:.3}%)",
            bs.iter().all(|b| *b < 0.0),
            asym.rho_sq_over_q,
            asym.limit,
            100.0 * ratio_err,
            100.0 * radius_err
        ),
    )
}

fn c12_q0_sandwich() -> Outcome {
    let (p1, p2) = (1.0, 0.8);
    let lo = PI * PI / p2;
    let hi = PI * PI * p2 * (p1 + 1.0) / (p1 * (1.0 - p2));
    let mut rows = Vec::new();
    let mut all_in = true;
    for (l1, l2) in [(2f64.sqrt(), 2f64.sqrt()), (3.0, 0.6), (2.0, 0.1), (10.0, 10.0)] {
        let q0 = find_q0(p1, p2, &geom(l1, l2)).map_err(|e| e.to_string())?;
        all_in &= q0 > lo && q0 < hi;
        rows.push(format!("({l1:.3},{l2:.3}): {q0:.2}"));
    }
    check(all_in, format!("bounds ({lo:.3}, {hi:.3}); Q0 {}", rows.join(", ")))
}

fn c13_scan_regression() -> Outcome {
    let start = Instant::now();
    let grid = ScanGrid { x: Axis::stepped(0.5, 6.0, 0.05).unwrap(), y: Axis::stepped(0.5, 6.0, 0.05).unwrap() };
    let p0 = params(1.0, 1.0, 0.0);
    let p10 = params(1.0, 1.0, 10.0);
    let m0 = minimizers(&p0, &grid, None).map_err(|e| e.to_string())?;
    let m10 = minimizers(&p10, &grid, None).map_err(|e| e.to_string())?;
    let mut problems = Vec::new();

    // weakly outward: the critical wave number never decreases with Q
    let shrunk = m0.iter().zip(&m10).filter(|(a, b)| b.alpha < a.alpha * (1.0 - 1e-12)).count();
    if shrunk > 0 {
        problems.push(format!("{shrunk} cells with smaller alpha at Q=10"));
    }
    // piecewise constant: along each row the index changes at isolated points
    let nx = grid.x.points;
    let regions = |m: &[mhdconv::scan::MinimizerCell]| {
        let mut changes = 0;
        for row in m.chunks(nx) {
            changes += row.windows(2).filter(|w| w[0].critical_set != w[1].critical_set).count();
        }
        changes
    };
    let (ch0, ch10) = (regions(&m0), regions(&m10));
    if ch0 * 4 > m0.len() || ch10 * 4 > m10.len() {
        problems.push("index map is not piecewise constant".into());
    }
    // roll boundaries along L2 = 0.5 move to smaller L1 with Q
    let row = ScanGrid { x: grid.x, y: Axis::point(0.5).unwrap() };
    let first_l1 = |p: &FluidParams, m: u32| -> Option<f64> {
        minimizers(p, &row, None)
            .unwrap()
            .into_iter()
            .find(|c| c.critical_set.contains(&mode(m, 0, 1)))
            .map(|c| c.l1)
    };
    for m in 2..=4 {
        match (first_l1(&p0, m), first_l1(&p10, m)) {
            (Some(a), Some(b)) if b <= a => {}
            other => problems.push(format!("roll ({m},0,1) boundary {other:?}")),
        }
    }

    // hexagonal lines: mask = detected AND the pair minimizes
    let samples = hexlines(&p10, &grid.x, (0.5, 6.0), 4, None).map_err(|e| e.to_string())?;
    let mut marked = 0;
    for s in &samples {
        let g = geom(s.l1, s.l2);
        let detected = detect_hexagonal_geometry(&g);
        let c = critical_rayleigh_capped(&p10, &g, None);
        let pair = c.critical_set.len() == 2 && hexagonal_pair(&c.critical_set).is_some();
        let expect = detected.is_some() && pair;
        if s.mask != expect || s.detected != detected {
            problems.push(format!("hexline sample ({:.4},{:.4}) mask {} expected {expect}", s.l1, s.l2, s.mask));
        }
        marked += s.mask as usize;
    }
    // off the lines no uniform grid cell has a hexagonal pair at onset
    let stray = m10
        .iter()
        .filter(|c| hexagonal_pair(&c.critical_set).is_some() && detect_hexagonal_geometry(&geom(c.l1, c.l2)).is_none())
        .count();
    if stray > 0 {
        problems.push(format!("{stray} grid cells with a hexagonal pair off the lines"));
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        problems.is_empty() && secs < 60.0,
        format!(
            "{} cells per map, {ch0}/{ch10} row changes, {} hexline samples ({marked} marked), {secs:.2} s{}",
            m0.len(),
            samples.len(),
            problems.first().map(|p| format!("; {p}")).unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 13] = [
        (1, "eigen-cubic correctness", c1_eigen_cubic),
        (2, "critical value exactness", c2_critical_exactness),
        (3, "hexagonal example box", c3_hexagonal_box),
        (4, "minimal critical wave number", c4_min_alpha),
        (5, "roll thresholds Q* and p*", c5_thresholds),
        (6, "hexagonal pair at p2 = 8", c6_hexagonal_large_p2),
        (7, "region table vs integration", c7_region_table),
        (8, "mixed-transition sector", c8_sector),
        (9, "quadrature oracle", c9_quadrature),
        (10, "sign equivalence", c10_sign_equivalence),
        (11, "Hopf transition", c11_hopf),
        (12, "Q0 bounds", c12_q0_sandwich),
        (13, "scan regression", c13_scan_regression),
    ];
    let mut unexpected = 0;
    for (n, name, f) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_FAILURES.iter().find(|(k, _)| *k == n);
        match (&outcome, known) {
            (Ok(d), None) => println!("criterion {n:>2}: PASS  {name}: {d} [{secs:.2} s]"),
            (Ok(d), Some(_)) => {
                unexpected += 1;
                println!("criterion {n:>2}: PASS  {name}: {d} [{secs:.2} s] (listed as a known failure)");
            }
            (Err(d), None) => {
                unexpected += 1;
                println!("criterion {n:>2}: FAIL  {name}: {d} [{secs:.2} s]");
            }
            (Err(d), Some((_, why))) => println!("criterion {n:>2}: FAIL  {name}: {d} [{secs:.2} s] (known: {why})"),
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from the expected outcome");
        std::process::exit(1);
    }
}
