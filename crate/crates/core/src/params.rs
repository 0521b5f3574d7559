//! Nondimensional parameters, the box, and the lattice of admissible modes.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Prandtl number `p1`, magnetic Prandtl number `p2` and Chandrasekhar number `q`.
/// The Rayleigh number is passed separately since it is the bifurcation parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FluidParams {
    pub p1: f64,
    pub p2: f64,
    pub q: f64,
}

impl FluidParams {
    pub fn new(p1: f64, p2: f64, q: f64) -> Result<Self> {
        if !(p1.is_finite() && p1 > 0.0) {
            return Err(Error::InvalidParameter(format!("p1 must be > 0, got {p1}")));
        }
        if !(p2.is_finite() && p2 > 0.0) {
            return Err(Error::InvalidParameter(format!("p2 must be > 0, got {p2}")));
        }
        if !(q.is_finite() && q >= 0.0) {
            return Err(Error::InvalidParameter(format!("Q must be >= 0, got {q}")));
        }
        Ok(Self { p1, p2, q })
    }

    pub fn with_q(self, q: f64) -> Result<Self> {
        Self::new(self.p1, self.p2, q)
    }

    pub fn with_p2(self, p2: f64) -> Result<Self> {
        Self::new(self.p1, p2, self.q)
    }
}

/// Horizontal extents of the box (0,L1)×(0,L2)×(0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxGeometry {
    pub l1: f64,
    pub l2: f64,
}

impl BoxGeometry {
    pub fn new(l1: f64, l2: f64) -> Result<Self> {
        if !(l1.is_finite() && l1 > 0.0 && l2.is_finite() && l2 > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "box lengths must be > 0, got L1={l1}, L2={l2}"
            )));
        }
        Ok(Self { l1, l2 })
    }

    pub fn area(&self) -> f64 {
        self.l1 * self.l2
    }
}

/// An admissible index: j1² + j2² ≠ 0 and j3 ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModeIndex {
    pub j1: u32,
    pub j2: u32,
    pub j3: u32,
}

impl ModeIndex {
    pub fn new(j1: u32, j2: u32, j3: u32) -> Result<Self> {
        if j1 == 0 && j2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "mode ({j1},{j2},{j3}) has no horizontal wave number"
            )));
        }
        if j3 == 0 {
            return Err(Error::InvalidParameter(format!(
                "mode ({j1},{j2},{j3}) needs j3 >= 1"
            )));
        }
        Ok(Self { j1, j2, j3 })
    }

    /// Roll modes vary in one horizontal direction only.
    pub fn is_roll(&self) -> bool {
        self.j1 == 0 || self.j2 == 0
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.j1, self.j2, self.j3)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WaveNumbers {
    pub alpha_sq: f64,
    pub gamma_sq: f64,
}

impl WaveNumbers {
    pub fn alpha(&self) -> f64 {
        self.alpha_sq.sqrt()
    }
}

/// Horizontal wave number squared for raw integer indices (no admissibility check).
pub fn horizontal_wave_sq(j1: u32, j2: u32, geom: &BoxGeometry) -> f64 {
    let a = j1 as f64 / geom.l1;
    let b = j2 as f64 / geom.l2;
    (a * a + b * b) * PI * PI
}

pub fn wave_numbers(j: ModeIndex, geom: &BoxGeometry) -> WaveNumbers {
    let alpha_sq = horizontal_wave_sq(j.j1, j.j2, geom);
    let vert = j.j3 as f64 * PI;
    WaveNumbers {
        alpha_sq,
        gamma_sq: alpha_sq + vert * vert,
    }
}

/// Every admissible index with all components ≤ `bound`, lexicographic in (j1, j2, j3).
pub fn admissible_indices(bound: u32) -> Vec<ModeIndex> {
    let mut out = Vec::new();
    for j1 in 0..=bound {
        for j2 in 0..=bound {
            if j1 == 0 && j2 == 0 {
                continue;
            }
            for j3 in 1..=bound {
                out.push(ModeIndex { j1, j2, j3 });
            }
        }
    }
    out
}
