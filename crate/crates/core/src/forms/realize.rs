use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{infer_support, Density};
use crate::arrangement::{face_coverage, integrate_density_over_faces, AreaVector, Arrangement};
use crate::error::{Error, Result};
use crate::geom::Point;

/// Standard mollifier profile `exp(-1 / (1 - s^2))` on `|s| < 1`.
pub fn bump_profile(s: f64) -> f64 {
    let q = 1.0 - s * s;
    if q > 0.0 {
        (-1.0 / q).exp()
    } else {
        0.0
    }
}

/// Smooth bump `λ(p) = profile(|p - center| / radius) / norm` supported in
/// a disc inside one face, normalized so that `∫ λ · base = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Bump {
    pub face: usize,
    pub center: Point,
    pub radius: f64,
    pub norm: f64,
    /// Mass `c_j` added to the face.
    pub mass: f64,
}

impl Bump {
    pub fn value(&self, p: Point) -> f64 {
        bump_profile(p.dist(self.center) / self.radius) / self.norm
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealizeOptions {
    /// Factor applied to the base form before adding mass.
    pub base_scale: f64,
    /// Relative tolerance for targets below the base integral and for the
    /// final verification.
    pub tolerance: f64,
    /// Smallest admissible bump radius in grid spacings.
    pub min_radius_cells: f64,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        Self {
            base_scale: 1.0,
            tolerance: 1e-9,
            min_radius_cells: 2.0,
        }
    }
}

/// `ω' = base + Σ_j c_j λ_j base` with `∫_{D_j} ω' = target_j`.
pub fn realize_area_vector(
    arr: &Arrangement,
    target: &AreaVector,
    base: &Density,
) -> Result<Density> {
    realize_with(arr, target, base, &RealizeOptions::default())
}

/// The (scaled) base form and one bump per face that needs extra mass.
pub fn plan_bumps(
    arr: &Arrangement,
    target: &AreaVector,
    base: &Density,
    opts: &RealizeOptions,
) -> Result<(Density, Vec<Bump>)> {
    let r = arr.bounded_face_count();
    if target.len() != r {
        return Err(Error::LengthMismatch {
            expected: r,
            got: target.len(),
        });
    }
    let base = if opts.base_scale == 1.0 {
        base.clone()
    } else {
        base.scaled(opts.base_scale)?
    };
    let current = integrate_density_over_faces(arr, &base)?;
    let grid = *base.grid();
    let slack = opts.tolerance * target.max();
    let min_radius = opts.min_radius_cells * grid.hx().max(grid.hy());
    let mut bumps = Vec::new();
    for face in 0..r {
        let c = target[face] - current[face];
        if c < -slack {
            return Err(Error::TargetBelowBase {
                face,
                target: target[face],
                base: current[face],
            });
        }
        if c <= slack {
            continue;
        }
        let (center, clearance) = arr.deepest_point(face);
        let radius = 0.5 * clearance;
        if radius < min_radius {
            return Err(Error::NoInteriorDisc { face });
        }
        let mut norm = 0.0;
        for (n, w) in face_coverage(arr, face, &grid)? {
            let (i, j) = (n % grid.nx(), n / grid.nx());
            norm += bump_profile(grid.node(i, j).dist(center) / radius) * base.values()[n] * w;
        }
        if norm.is_nan() || norm <= 0.0 {
            return Err(Error::NoInteriorDisc { face });
        }
        bumps.push(Bump {
            face,
            center,
            radius,
            norm,
            mass: c,
        });
    }
    Ok((base, bumps))
}

pub fn realize_with(
    arr: &Arrangement,
    target: &AreaVector,
    base: &Density,
    opts: &RealizeOptions,
) -> Result<Density> {
    let (base, bumps) = plan_bumps(arr, target, base, opts)?;
    let grid = *base.grid();
    let values: Vec<f64> = grid
        .nodes()
        .map(|(i, j, p)| {
            let extra: f64 = bumps.iter().map(|b| b.mass * b.value(p)).sum();
            base.node_value(i, j) * (1.0 + extra)
        })
        .collect();
    let support = infer_support(&grid, &values, base.background());
    let out = Density::new(grid, values, support, base.background())?;
    let got = integrate_density_over_faces(arr, &out)?;
    let err = got
        .entries()
        .iter()
        .zip(target.entries())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if err > opts.tolerance.max(1e-12) * target.max() {
        return Err(Error::RealizationMismatch(err));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::build_arrangement;
    use crate::curve::{check_generic, ClosedCurve, GenericityOptions};
    use crate::forms::Grid;
    use core::f64::consts::PI;

    fn disc() -> (Arrangement, Grid) {
        let c = ClosedCurve::from_fn(256, |t| Point::new(t.cos(), t.sin())).unwrap();
        let arr = build_arrangement(&c, &check_generic(&c, &GenericityOptions::default())).unwrap();
        let grid = Grid::covering(&arr.bounding_box(), 128).unwrap();
        (arr, grid)
    }

    #[test]
    fn profile_is_smooth_and_compact() {
        assert_eq!(bump_profile(1.0), 0.0);
        assert_eq!(bump_profile(-1.5), 0.0);
        assert!((bump_profile(0.0) - (-1.0f64).exp()).abs() < 1e-15);
        assert!(bump_profile(0.999) < 1e-200);
    }

    #[test]
    fn current_integrals_leave_base_unchanged() {
        let (arr, grid) = disc();
        let base = Density::standard(grid);
        let t = integrate_density_over_faces(&arr, &base).unwrap();
        assert_eq!(realize_area_vector(&arr, &t, &base).unwrap(), base);
    }

    #[test]
    fn disc_reaches_two_pi() {
        let (arr, grid) = disc();
        let t = AreaVector::new(alloc::vec![2.0 * PI]).unwrap();
        let w = realize_area_vector(&arr, &t, &Density::standard(grid)).unwrap();
        let got = integrate_density_over_faces(&arr, &w).unwrap();
        assert!((got[0] - 2.0 * PI).abs() < 1e-9);
        // Bump stays inside the disc of radius 1/2.
        assert_eq!(w.value_at(Point::new(0.6, 0.0)), 1.0);
    }

    #[test]
    fn shrinking_needs_base_scale() {
        let (arr, grid) = disc();
        let t = AreaVector::new(alloc::vec![1.0]).unwrap();
        let base = Density::standard(grid);
        assert!(matches!(
            realize_area_vector(&arr, &t, &base),
            Err(Error::TargetBelowBase { .. })
        ));
        let opts = RealizeOptions {
            base_scale: 0.25,
            ..Default::default()
        };
        let w = realize_with(&arr, &t, &base, &opts).unwrap();
        assert!((integrate_density_over_faces(&arr, &w).unwrap()[0] - 1.0).abs() < 1e-9);
    }
}
