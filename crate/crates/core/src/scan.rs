//! Parameter-plane sweeps: critical-index maps over (L1, L2), hexagonal
//! criticality along the lines L1/L2 = j/(k√3), and the transition region
//! over (p2, Q). Rows are computed in parallel and assembled in row order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::output::{Cell, Table};
use crate::params::{BoxGeometry, FluidParams, ModeIndex};
use crate::stability::{critical_rayleigh_capped, OnsetKind};
use crate::transition::real::{classify, detect_hexagonal_geometry, hexagonal_pair};

/// Uniform axis, endpoints included. Only [`Axis::point`] has a single point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if points < 2 || !(start.is_finite() && end.is_finite()) || end <= start {
            return Err(Error::InvalidParameter(format!(
                "axis [{start}, {end}] with {points} points"
            )));
        }
        Ok(Self { start, end, points })
    }

    /// Degenerate axis holding one value.
    pub fn point(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("axis point {v}")));
        }
        Ok(Self { start: v, end: v, points: 1 })
    }

    /// Axis from a step; the step must divide the range to within 1e−9.
    pub fn stepped(start: f64, end: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) {
            return Err(Error::InvalidParameter(format!("step {step}")));
        }
        let n = (end - start) / step;
        let rounded = n.round();
        if (n - rounded).abs() > 1e-9 * n.max(1.0) {
            return Err(Error::InvalidParameter(format!(
                "step {step} does not divide [{start}, {end}]"
            )));
        }
        Self::new(start, end, rounded as usize + 1)
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            return self.end;
        }
        self.start + (self.end - self.start) * i as f64 / (self.points - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanGrid {
    pub x: Axis,
    pub y: Axis,
}

fn format_set(set: &[ModeIndex]) -> String {
    set.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(";")
}

fn kind_name(k: OnsetKind) -> &'static str {
    match k {
        OnsetKind::Real => "real",
        OnsetKind::Complex => "complex",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimizerCell {
    pub l1: f64,
    pub l2: f64,
    pub r_first: f64,
    pub kind: OnsetKind,
    pub critical_set: Vec<ModeIndex>,
    pub alpha: f64,
}

/// Critical index map over (L1, L2) = (x, y); rows run over L2.
pub fn minimizers(p: &FluidParams, grid: &ScanGrid, cap: Option<u32>) -> Result<Vec<MinimizerCell>> {
    let rows: Vec<Result<Vec<MinimizerCell>>> = (0..grid.y.points)
        .into_par_iter()
        .map(|iy| {
            let l2 = grid.y.value(iy);
            (0..grid.x.points)
                .map(|ix| {
                    let l1 = grid.x.value(ix);
                    let geom = BoxGeometry::new(l1, l2)?;
                    let c = critical_rayleigh_capped(p, &geom, cap);
                    Ok(MinimizerCell {
                        l1,
                        l2,
                        r_first: c.r_first,
                        kind: c.kind,
                        critical_set: c.critical_set,
                        alpha: c.alpha,
                    })
                })
                .collect()
        })
        .collect();
    let mut out = Vec::with_capacity(grid.x.points * grid.y.points);
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

pub fn minimizers_table(cells: &[MinimizerCell]) -> Table {
    let mut t = Table::new("scan-minimizers", 1, &["L1", "L2", "R", "kind", "j1", "j2", "multiplicity", "alpha", "critical_set"]);
    for c in cells {
        let lead = c.critical_set[0];
        t.push(vec![
            c.l1.into(),
            c.l2.into(),
            c.r_first.into(),
            kind_name(c.kind).into(),
            lead.j1.into(),
            lead.j2.into(),
            c.critical_set.len().into(),
            c.alpha.into(),
            format_set(&c.critical_set).into(),
        ]);
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HexLineSample {
    /// The line L1/L2 = j/(k√3) being followed.
    pub line: (u32, u32),
    pub l1: f64,
    pub l2: f64,
    pub detected: Option<(u32, u32)>,
    pub critical_set: Vec<ModeIndex>,
    /// The critical set is a hexagonal pair ((j,k,1), (0,2k,1)).
    pub mask: bool,
}

/// Follows every line L2 = √3 k L1 / j with coprime j, k ≤ `max_index` across
/// the L1 axis, keeping samples whose L2 lies in `l2_range`.
pub fn hexlines(p: &FluidParams, l1: &Axis, l2_range: (f64, f64), max_index: u32, cap: Option<u32>) -> Result<Vec<HexLineSample>> {
    let s3 = 3f64.sqrt();
    let mut lines = Vec::new();
    for j in 1..=max_index {
        for k in 1..=max_index {
            if gcd(j, k) == 1 {
                lines.push((j, k));
            }
        }
    }
    let rows: Vec<Result<Vec<HexLineSample>>> = lines
        .par_iter()
        .map(|&(j, k)| {
            let mut row = Vec::new();
            for x in l1.values() {
                let l2 = s3 * k as f64 * x / j as f64;
                if l2 < l2_range.0 || l2 > l2_range.1 {
                    continue;
                }
                let geom = BoxGeometry::new(x, l2)?;
                let c = critical_rayleigh_capped(p, &geom, cap);
                let mask = c.kind == OnsetKind::Real && hexagonal_pair(&c.critical_set).is_some();
                row.push(HexLineSample {
                    line: (j, k),
                    l1: x,
                    l2,
                    detected: detect_hexagonal_geometry(&geom),
                    critical_set: c.critical_set,
                    mask,
                });
            }
            Ok(row)
        })
        .collect();
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn hexlines_table(samples: &[HexLineSample]) -> Table {
    let mut t = Table::new("scan-hexlines", 1, &["j", "k", "L1", "L2", "detected", "mask", "critical_set"]);
    for s in samples {
        t.push(vec![
            s.line.0.into(),
            s.line.1.into(),
            s.l1.into(),
            s.l2.into(),
            s.detected.map(|(j, k)| format!("({j},{k})")).into(),
            s.mask.into(),
            format_set(&s.critical_set).into(),
        ]);
    }
    t
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionCell {
    pub p2: f64,
    pub q: f64,
    pub kind: OnsetKind,
    pub critical_set: Vec<ModeIndex>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub region: Option<String>,
    pub transition_type: Option<String>,
    /// Why the cell could not be classified.
    pub note: Option<String>,
}

/// Transition classification over (p2, Q) = (x, y) at a fixed box; rows run over Q.
pub fn regions(p1: f64, geom: &BoxGeometry, grid: &ScanGrid) -> Result<Vec<RegionCell>> {
    let rows: Vec<Result<Vec<RegionCell>>> = (0..grid.y.points)
        .into_par_iter()
        .map(|iq| {
            let q = grid.y.value(iq);
            (0..grid.x.points)
                .map(|ip| {
                    let p2 = grid.x.value(ip);
                    let p = FluidParams::new(p1, p2, q)?;
                    let c = critical_rayleigh_capped(&p, geom, None);
                    let mut cell = RegionCell {
                        p2,
                        q,
                        kind: c.kind,
                        critical_set: c.critical_set.clone(),
                        a: None,
                        b: None,
                        region: None,
                        transition_type: None,
                        note: None,
                    };
                    if c.kind == OnsetKind::Complex {
                        cell.note = Some("oscillatory onset".into());
                        return Ok(cell);
                    }
                    match classify(&p, geom) {
                        Ok(r) => {
                            cell.a = r.a;
                            cell.b = Some(r.b);
                            cell.region = r.region.map(|l| l.to_string());
                            cell.transition_type = Some(r.transition_type.to_string());
                        }
                        Err(e) => cell.note = Some(e.to_string()),
                    }
                    Ok(cell)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for row in rows {
        out.extend(row?);
    }
    Ok(out)
}

pub fn regions_table(cells: &[RegionCell]) -> Table {
    let mut t = Table::new(
        "scan-regions",
        1,
        &["p2", "Q", "kind", "critical_set", "a", "b", "region", "type", "note"],
    );
    for c in cells {
        t.push(vec![
            c.p2.into(),
            c.q.into(),
            kind_name(c.kind).into(),
            format_set(&c.critical_set).into(),
            Cell::from(c.a),
            Cell::from(c.b),
            Cell::from(c.region.clone()),
            Cell::from(c.transition_type.clone()),
            Cell::from(c.note.clone()),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stepped_axis() {
        let a = Axis::stepped(0.5, 6.0, 0.05).unwrap();
        assert_eq!(a.points, 111);
        assert_eq!(a.value(110), 6.0);
        assert!((a.value(1) - 0.55).abs() < 1e-15);
        assert!(Axis::stepped(0.0, 1.0, 0.3).is_err());
        assert!(Axis::new(1.0, 1.0, 5).is_err());
    }

    #[test]
    fn rows_in_order() {
        let p = FluidParams::new(1.0, 1.0, 0.0).unwrap();
        let grid = ScanGrid { x: Axis::new(1.0, 2.0, 3).unwrap(), y: Axis::new(1.0, 3.0, 4).unwrap() };
        let cells = minimizers(&p, &grid, None).unwrap();
        assert_eq!(cells.len(), 12);
        assert_eq!((cells[0].l1, cells[0].l2), (1.0, 1.0));
        assert_eq!((cells[5].l1, cells[5].l2), (2.0, grid.y.value(1)));
    }

    #[test]
    fn hexline_masks_fire_on_lines() {
        let p = FluidParams::new(1.0, 1.0, 10.0).unwrap();
        let l1 = Axis::new(1.0, 3.0, 9).unwrap();
        let s = hexlines(&p, &l1, (0.5, 6.0), 2, None).unwrap();
        assert!(s.iter().all(|x| x.detected.is_some()));
        assert!(s.iter().any(|x| x.mask));
    }
}
