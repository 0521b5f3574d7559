//! Separable eigenfields and quadrature of the trilinear form.
//!
//! A mode (j1, j2, j3) with vertical amplitudes (W, Θ, H3) has
//!
//! ```text
//! u1 = U sin(ax)cos(by)cos(cz)   H1 = h1 sin(ax)cos(by)sin(cz)
//! u2 = V cos(ax)sin(by)cos(cz)   H2 = h2 cos(ax)sin(by)sin(cz)
//! u3 = W cos(ax)cos(by)sin(cz)   H3 = H3 cos(ax)cos(by)cos(cz)
//! T  = Θ cos(ax)cos(by)sin(cz)
//! ```
//!
//! with a = j1π/L1, b = j2π/L2, c = j3π, U = −acW/α², V = −bcW/α²,
//! h1 = acH3/α², h2 = bcH3/α², so both u and H are solenoidal.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{wave_numbers, BoxGeometry, FluidParams, ModeIndex};
use crate::quadrature::gauss_legendre;
use crate::stability::rayleigh_steady;
use crate::transition::hopf::omega;

pub const U1: usize = 0;
pub const U2: usize = 1;
pub const U3: usize = 2;
pub const T: usize = 3;
pub const H1: usize = 4;
pub const H2: usize = 5;
pub const H3: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trig {
    Cos,
    Sin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Term {
    pub amp: f64,
    pub axes: [(Trig, u32); 3],
}

/// Sum of separable trigonometric terms for each of the seven components
/// (u1, u2, u3, T, H1, H2, H3).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeField {
    pub lengths: [f64; 3],
    pub comps: [Vec<Term>; 7],
}

fn trig(kind: Trig, k: u32, len: f64, x: f64, deriv: bool) -> f64 {
    let w = k as f64 * PI / len;
    match (kind, deriv) {
        (Trig::Cos, false) => (w * x).cos(),
        (Trig::Sin, false) => (w * x).sin(),
        (Trig::Cos, true) => -w * (w * x).sin(),
        (Trig::Sin, true) => w * (w * x).cos(),
    }
}

impl ModeField {
    pub fn zero(geom: &BoxGeometry) -> Self {
        Self { lengths: [geom.l1, geom.l2, 1.0], comps: Default::default() }
    }

    /// Mode with the given vertical amplitudes and the solenoidal horizontal parts.
    pub fn separable(geom: &BoxGeometry, j: (u32, u32, u32), w: f64, theta: f64, h3: f64) -> Self {
        use Trig::{Cos as C, Sin as S};
        let (j1, j2, j3) = j;
        let mut f = Self::zero(geom);
        let a = j1 as f64 * PI / geom.l1;
        let b = j2 as f64 * PI / geom.l2;
        let c = j3 as f64 * PI;
        let a2 = a * a + b * b;
        let mut add = |comp: usize, amp: f64, axes: [(Trig, u32); 3]| {
            if amp != 0.0 {
                f.comps[comp].push(Term { amp, axes });
            }
        };
        if a2 > 0.0 {
            add(U1, -a * c * w / a2, [(S, j1), (C, j2), (C, j3)]);
            add(U2, -b * c * w / a2, [(C, j1), (S, j2), (C, j3)]);
            add(H1, a * c * h3 / a2, [(S, j1), (C, j2), (S, j3)]);
            add(H2, b * c * h3 / a2, [(C, j1), (S, j2), (S, j3)]);
        }
        add(U3, w, [(C, j1), (C, j2), (S, j3)]);
        add(T, theta, [(C, j1), (C, j2), (S, j3)]);
        add(H3, h3, [(C, j1), (C, j2), (C, j3)]);
        f
    }

    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        for comp in out.comps.iter_mut() {
            for t in comp.iter_mut() {
                t.amp *= c;
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (dst, src) in out.comps.iter_mut().zip(&other.comps) {
            dst.extend_from_slice(src);
        }
        out
    }

    pub fn eval(&self, comp: usize, x: [f64; 3]) -> f64 {
        self.comps[comp]
            .iter()
            .map(|t| (0..3).map(|d| trig(t.axes[d].0, t.axes[d].1, self.lengths[d], x[d], false)).product::<f64>() * t.amp)
            .fold(0.0, |acc, v| acc + v)
    }

    pub fn partial(&self, comp: usize, x: [f64; 3], axis: usize) -> f64 {
        self.comps[comp]
            .iter()
            .map(|t| {
                (0..3)
                    .map(|d| trig(t.axes[d].0, t.axes[d].1, self.lengths[d], x[d], d == axis))
                    .product::<f64>()
                    * t.amp
            })
            .fold(0.0, |acc, v| acc + v)
    }

    pub fn div_u(&self, x: [f64; 3]) -> f64 {
        (0..3).map(|d| self.partial(U1 + d, x, d)).sum()
    }

    pub fn div_h(&self, x: [f64; 3]) -> f64 {
        (0..3).map(|d| self.partial(H1 + d, x, d)).sum()
    }

    fn max_index(&self, axis: usize) -> u32 {
        self.comps.iter().flatten().map(|t| t.axes[axis].1).max().unwrap_or(0)
    }
}

/// The steady critical mode ψ_J = (γ², 1, π) and its adjoint (p2γ², p1p2R_J, −p1Qπ),
/// with R_J the steady threshold of J.
pub fn critical_eigenfield(j: ModeIndex, p: &FluidParams, geom: &BoxGeometry) -> Result<(ModeField, ModeField)> {
    if j.j3 != 1 {
        return Err(Error::InvalidParameter(format!("{j}: critical modes have j3 = 1")));
    }
    let g2 = wave_numbers(j, geom).gamma_sq;
    let r = rayleigh_steady(j, p, geom);
    let idx = (j.j1, j.j2, j.j3);
    Ok((
        ModeField::separable(geom, idx, g2, 1.0, PI),
        ModeField::separable(geom, idx, p.p2 * g2, p.p1 * p.p2 * r, -p.p1 * p.q * PI),
    ))
}

/// Planform amplitude convention (γ², 1, j3π) for any index; used for rendering.
pub fn pattern_mode(j: ModeIndex, geom: &BoxGeometry) -> ModeField {
    let g2 = wave_numbers(j, geom).gamma_sq;
    ModeField::separable(geom, (j.j1, j.j2, j.j3), g2, 1.0, j.j3 as f64 * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// (0, 0, s3): temperature only.
    Temperature,
    /// (s1, s2, 0): vertical magnetic field only.
    Magnetic,
    /// Three-branch modes, unit W.
    Velocity,
    /// Three-branch modes, unit Θ.
    ThreeTemperature,
    /// Three-branch modes, unit H3.
    ThreeMagnetic,
}

pub fn laplacian_eigenfield(s: (u32, u32, u32), geom: &BoxGeometry, branch: Branch) -> Result<ModeField> {
    let (s1, s2, s3) = s;
    let horizontal = s1 > 0 || s2 > 0;
    let label = format!("({s1},{s2},{s3})");
    match branch {
        Branch::Temperature if !horizontal && s3 > 0 => Ok(ModeField::separable(geom, s, 0.0, 1.0, 0.0)),
        Branch::Magnetic if horizontal && s3 == 0 => Ok(ModeField::separable(geom, s, 0.0, 0.0, 1.0)),
        Branch::Velocity if horizontal && s3 > 0 => Ok(ModeField::separable(geom, s, 1.0, 0.0, 0.0)),
        Branch::ThreeTemperature if horizontal && s3 > 0 => Ok(ModeField::separable(geom, s, 0.0, 1.0, 0.0)),
        Branch::ThreeMagnetic if horizontal && s3 > 0 => Ok(ModeField::separable(geom, s, 0.0, 0.0, 1.0)),
        Branch::Temperature => Err(Error::BranchMismatch(label, "temperature-only")),
        Branch::Magnetic => Err(Error::BranchMismatch(label, "magnetic-only")),
        _ => Err(Error::BranchMismatch(label, "three-branch")),
    }
}

/// Real and imaginary parts of the oscillatory eigenvector at β = iρ and of its adjoint.
pub fn hopf_eigenfields(
    p: &FluidParams,
    geom: &BoxGeometry,
    jc: ModeIndex,
    r_c: f64,
    rho: f64,
) -> ([ModeField; 2], [ModeField; 2]) {
    let w = wave_numbers(jc, geom);
    let (a2, g2) = (w.alpha_sq, w.gamma_sq);
    let beta = Complex64::new(0.0, rho);
    let c = jc.j3 as f64 * PI;
    let ww = (beta / p.p2 + g2) * a2 * r_c;
    let th = omega(p, g2, beta) * g2;
    let h3 = a2 * c * r_c;
    let ws = (beta.conj() + p.p2 * g2) * a2 / p.p1;
    let ths = omega(p, g2, beta.conj()) * g2 * p.p2;
    let h3s = -c * p.q * a2;
    let idx = (jc.j1, jc.j2, jc.j3);
    (
        [
            ModeField::separable(geom, idx, ww.re, th.re, h3),
            ModeField::separable(geom, idx, ww.im, th.im, 0.0),
        ],
        [
            ModeField::separable(geom, idx, ws.re, ths.re, h3s),
            ModeField::separable(geom, idx, ws.im, ths.im, 0.0),
        ],
    )
}

struct Grid {
    x: [Vec<f64>; 3],
    w: [Vec<f64>; 3],
}

impl Grid {
    fn for_fields(fields: &[&ModeField]) -> Self {
        let lengths = fields[0].lengths;
        let mut x: [Vec<f64>; 3] = Default::default();
        let mut w: [Vec<f64>; 3] = Default::default();
        for d in 0..3 {
            // The integrand along each axis is a trig polynomial whose top
            // frequency is the sum of the factors'; 2K+8 nodes resolve it to
            // round-off.
            let k: u32 = fields.iter().map(|f| f.max_index(d)).sum();
            let n = 2 * k as usize + 8;
            let (xs, ws) = gauss_legendre(n, 0.0, lengths[d]);
            x[d] = xs;
            w[d] = ws;
        }
        Self { x, w }
    }

    fn len(&self) -> usize {
        self.x.iter().map(Vec::len).product()
    }

    /// Component (or one partial derivative) at all nodes, z fastest.
    fn sample(&self, f: &ModeField, comp: usize, deriv: Option<usize>) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for t in &f.comps[comp] {
            let tabs: Vec<Vec<f64>> = (0..3)
                .map(|d| {
                    self.x[d]
                        .iter()
                        .map(|&x| trig(t.axes[d].0, t.axes[d].1, f.lengths[d], x, deriv == Some(d)))
                        .collect()
                })
                .collect();
            let mut idx = 0;
            for &a in &tabs[0] {
                for &b in &tabs[1] {
                    let ab = t.amp * a * b;
                    for &c in &tabs[2] {
                        out[idx] += ab * c;
                        idx += 1;
                    }
                }
            }
        }
        out
    }

    fn integrate(&self, vals: &[f64]) -> f64 {
        let mut idx = 0;
        let mut total = 0.0;
        for &wa in &self.w[0] {
            for &wb in &self.w[1] {
                let mut line = 0.0;
                for &wc in &self.w[2] {
                    line += wc * vals[idx];
                    idx += 1;
                }
                total += wa * wb * line;
            }
        }
        total
    }
}

fn check_same_box(fields: &[&ModeField]) -> Result<()> {
    if fields.windows(2).any(|p| p[0].lengths != p[1].lengths) {
        return Err(Error::InvalidParameter("fields live on different boxes".into()));
    }
    Ok(())
}

/// G(ψ1, ψ2, ψ3) = ∫ [(Qp1/p2)(H1·∇)H2 − (u1·∇)u2]·u3 + [(H1·∇)u2 − (u1·∇)H2]·H3 − (u1·∇)T2 T3.
pub fn trilinear_quadrature(f1: &ModeField, f2: &ModeField, f3: &ModeField, p: &FluidParams) -> Result<f64> {
    check_same_box(&[f1, f2, f3])?;
    let grid = Grid::for_fields(&[f1, f2, f3]);
    let n = grid.len();
    let u: Vec<Vec<f64>> = (0..3).map(|d| grid.sample(f1, U1 + d, None)).collect();
    let h: Vec<Vec<f64>> = (0..3).map(|d| grid.sample(f1, H1 + d, None)).collect();
    let advect = |carrier: &[Vec<f64>], comp: usize| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for d in 0..3 {
            let g = grid.sample(f2, comp, Some(d));
            for i in 0..n {
                out[i] += carrier[d][i] * g[i];
            }
        }
        out
    };
    let lorentz = p.q * p.p1 / p.p2;
    let mut integrand = vec![0.0; n];
    for d in 0..3 {
        let u3 = grid.sample(f3, U1 + d, None);
        let h3 = grid.sample(f3, H1 + d, None);
        let hh = advect(&h, H1 + d);
        let uu = advect(&u, U1 + d);
        let hu = advect(&h, U1 + d);
        let uh = advect(&u, H1 + d);
        for i in 0..n {
            integrand[i] += (lorentz * hh[i] - uu[i]) * u3[i] + (hu[i] - uh[i]) * h3[i];
        }
    }
    let t3 = grid.sample(f3, T, None);
    let ut = advect(&u, T);
    for i in 0..n {
        integrand[i] -= ut[i] * t3[i];
    }
    Ok(grid.integrate(&integrand))
}

/// G_s(ψ1, ψ2, ψ3) = G(ψ1, ψ2, ψ3) + G(ψ2, ψ1, ψ3).
pub fn trilinear_sym(f1: &ModeField, f2: &ModeField, f3: &ModeField, p: &FluidParams) -> Result<f64> {
    Ok(trilinear_quadrature(f1, f2, f3, p)? + trilinear_quadrature(f2, f1, f3, p)?)
}

/// L² pairing over all seven components.
pub fn inner_product(f1: &ModeField, f2: &ModeField) -> Result<f64> {
    check_same_box(&[f1, f2])?;
    let grid = Grid::for_fields(&[f1, f2]);
    let mut acc = vec![0.0; grid.len()];
    for comp in 0..7 {
        let a = grid.sample(f1, comp, None);
        let b = grid.sample(f2, comp, None);
        for i in 0..acc.len() {
            acc[i] += a[i] * b[i];
        }
    }
    Ok(grid.integrate(&acc))
}

/// Planform samples of a weighted mode superposition at height z.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldSnapshot {
    pub nx: usize,
    pub ny: usize,
    pub z: f64,
    /// Row-major with x2 as the row index: sample (i1, i2) sits at i2·nx + i1.
    pub x1: Vec<f64>,
    pub x2: Vec<f64>,
    pub u1: Vec<f64>,
    pub u2: Vec<f64>,
    pub w: Vec<f64>,
    pub t: Vec<f64>,
    pub h3: Vec<f64>,
}

pub fn pattern_snapshot(
    combination: &[(f64, ModeIndex)],
    geom: &BoxGeometry,
    z: f64,
    nx: usize,
    ny: usize,
) -> Result<FieldSnapshot> {
    if !(0.0..=1.0).contains(&z) {
        return Err(Error::InvalidParameter(format!("z = {z} outside [0, 1]")));
    }
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidParameter("snapshot grid needs at least 2 points per axis".into()));
    }
    let mut field = ModeField::zero(geom);
    for &(c, j) in combination {
        if !c.is_finite() {
            return Err(Error::InvalidParameter(format!("weight {c} is not finite")));
        }
        field = field.plus(&pattern_mode(j, geom).scaled(c));
    }
    let mut s = FieldSnapshot {
        nx,
        ny,
        z,
        x1: Vec::with_capacity(nx * ny),
        x2: Vec::with_capacity(nx * ny),
        u1: Vec::with_capacity(nx * ny),
        u2: Vec::with_capacity(nx * ny),
        w: Vec::with_capacity(nx * ny),
        t: Vec::with_capacity(nx * ny),
        h3: Vec::with_capacity(nx * ny),
    };
    for i2 in 0..ny {
        let y = geom.l2 * i2 as f64 / (ny - 1) as f64;
        for i1 in 0..nx {
            let x = geom.l1 * i1 as f64 / (nx - 1) as f64;
            let pt = [x, y, z];
            s.x1.push(x);
            s.x2.push(y);
            s.u1.push(field.eval(U1, pt));
            s.u2.push(field.eval(U2, pt));
            s.w.push(field.eval(U3, pt));
            s.t.push(field.eval(T, pt));
            s.h3.push(field.eval(H3, pt));
        }
    }
    Ok(s)
}
