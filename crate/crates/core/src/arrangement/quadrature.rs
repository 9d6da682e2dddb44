//! Face integrals of grid densities.
//!
//! Each grid node carries its cell; the node's weight for a face is the
//! exact area of cell ∩ face. Cells crossed by the boundary are clipped
//! polygonally, all others are classified by a scanline through the node.

use alloc::vec;
use alloc::vec::Vec;

use super::{AreaVector, Arrangement};
use crate::error::{Error, Result};
use crate::forms::{Density, Grid};
use crate::geom::{signed_area, Point, Rect};

/// Node weights `(index, covered area)` of bounded face `face`.
pub fn face_coverage(arr: &Arrangement, face: usize, grid: &Grid) -> Result<Vec<(usize, f64)>> {
    let rings: Vec<&[Point]> = arr.face_rings(face).collect();
    let bbox =
        Rect::bounding(rings.iter().flat_map(|r| r.iter())).ok_or(Error::OutsideGrid { face })?;
    if !grid.domain().contains_rect(&bbox) {
        return Err(Error::OutsideGrid { face });
    }
    let (nx, ny) = (grid.nx(), grid.ny());
    let (i0, i1) = grid.cell_range_x(bbox.min.x, bbox.max.x);
    let (j0, j1) = grid.cell_range_y(bbox.min.y, bbox.max.y);
    let w = i1 - i0 + 1;
    let mut marked = vec![false; w * (j1 - j0 + 1)];
    for ring in &rings {
        let n = ring.len();
        for k in 0..n {
            let (a, b) = (ring[k], ring[(k + 1) % n]);
            let (a0, a1) = grid.cell_range_x(a.x.min(b.x), a.x.max(b.x));
            let (b0, b1) = grid.cell_range_y(a.y.min(b.y), a.y.max(b.y));
            for j in b0..=b1 {
                for i in a0..=a1 {
                    marked[(j - j0) * w + (i - i0)] = true;
                }
            }
        }
    }

    let full = grid.hx() * grid.hy();
    let mut out = Vec::new();
    let mut crossings: Vec<(f64, i32)> = Vec::new();
    for j in j0..=j1 {
        let row = &marked[(j - j0) * w..(j - j0 + 1) * w];
        let y = grid.y(j);
        if row.iter().any(|&m| m) {
            let band = grid.cell(i0, j);
            let strips: Vec<Vec<Point>> = rings
                .iter()
                .map(|r| {
                    let s = clip(r, |p| p.y - band.min.y);
                    clip(&s, |p| band.max.y - p.y)
                })
                .collect();
            for (k, _) in row.iter().enumerate().filter(|(_, &m)| m) {
                let cell = grid.cell(i0 + k, j);
                let mut area = 0.0;
                for s in &strips {
                    if s.len() < 3 {
                        continue;
                    }
                    let c = clip(s, |p| p.x - cell.min.x);
                    let c = clip(&c, |p| cell.max.x - p.x);
                    area += signed_area(&c);
                }
                let area = area.clamp(0.0, full);
                if area > 0.0 {
                    out.push((grid.index(i0 + k, j), area));
                }
            }
        }
        if row.iter().all(|&m| m) {
            continue;
        }
        crossings.clear();
        for ring in &rings {
            let n = ring.len();
            for k in 0..n {
                let (a, b) = (ring[k], ring[(k + 1) % n]);
                let dir = if a.y <= y && b.y > y {
                    1
                } else if a.y > y && b.y <= y {
                    -1
                } else {
                    continue;
                };
                let xc = a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x);
                crossings.push((xc, dir));
            }
        }
        crossings.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut wind: i32 = crossings.iter().map(|c| c.1).sum();
        let mut c = 0;
        for (k, &m) in row.iter().enumerate() {
            let x = grid.x(i0 + k);
            while c < crossings.len() && crossings[c].0 <= x {
                wind -= crossings[c].1;
                c += 1;
            }
            if !m && wind == 1 {
                out.push((grid.index(i0 + k, j), full));
            }
        }
    }
    debug_assert!(out.iter().all(|&(n, _)| n < nx * ny));
    out.sort_by_key(|e| e.0);
    Ok(out)
}

/// Sutherland-Hodgman clip against the half-plane `side(p) >= 0`, where
/// `side` is affine.
fn clip(poly: &[Point], side: impl Fn(Point) -> f64) -> Vec<Point> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 4);
    if n == 0 {
        return out;
    }
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let (sa, sb) = (side(a), side(b));
        if sa >= 0.0 {
            out.push(a);
        }
        if (sa >= 0.0) != (sb >= 0.0) {
            out.push(a.lerp(b, sa / (sa - sb)));
        }
    }
    out
}

/// `∫_face f dx∧dy` for every bounded face, in label order.
pub fn integrate_density_over_faces(arr: &Arrangement, omega: &Density) -> Result<AreaVector> {
    let grid = omega.grid();
    let values = omega.values();
    let mut out = Vec::with_capacity(arr.bounded_face_count());
    for face in 0..arr.bounded_face_count() {
        let cov = face_coverage(arr, face, grid)?;
        out.push(cov.iter().map(|&(n, a)| values[n] * a).sum());
    }
    AreaVector::new(out)
}
