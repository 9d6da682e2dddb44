use alloc::vec::Vec;

use super::interp::CubicRow;
use super::map::Jacobian;
use super::{Density, DisplacementGrid, PlanarMap};
use crate::error::{Error, Result};
use crate::geom::Point;
use crate::ode::rk4_integrate;

/// Time-1 map of `X_t = (A / f_t, 0)` with `A(x, y) = ∫_0^x (f0 - f1)(s, y) ds`
/// and `f_t = (1 - t) f0 + t f1`, so that `ρ^*(f1) = f0`.
///
/// Each grid node is flowed along its row by RK4 together with `∂X/∂x`
/// (the variational equation), using the same cubic row interpolants as
/// [`Density::value_at`]. `∂X/∂y` is differenced across rows.
pub fn moser_interpolation(f0: &Density, f1: &Density, steps: usize) -> Result<PlanarMap> {
    if steps < 4 {
        return Err(Error::TooFewSteps(steps));
    }
    if f0.grid() != f1.grid() {
        return Err(Error::GridMismatch);
    }
    let grid = *f0.grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let (x0, h) = (grid.domain().min.x, grid.hx());
    let (b0, b1) = (f0.background(), f1.background());

    let mut xs = Vec::with_capacity(grid.len());
    let mut js = Vec::with_capacity(grid.len());
    let mut diff = alloc::vec![0.0; nx];
    for j in 0..ny {
        let v0 = &f0.values()[j * nx..(j + 1) * nx];
        let v1 = &f1.values()[j * nx..(j + 1) * nx];
        for (d, (a, b)) in diff.iter_mut().zip(v0.iter().zip(v1)) {
            *d = a - b;
        }
        let r0 = CubicRow::new(x0, h, v0, b0);
        let r1 = CubicRow::new(x0, h, v1, b1);
        let ra = CubicRow::new(x0, h, &diff, b0 - b1);
        let mut failure: Option<(f64, f64)> = None;
        for i in 0..nx {
            let field = |t: f64, s: &[f64; 2]| {
                let x = s[0];
                let ft = (1.0 - t) * r0.value(x) + t * r1.value(x);
                if ft.is_nan() || ft <= 0.0 {
                    failure.get_or_insert((x, t));
                    return [0.0, 0.0];
                }
                let a = ra.primitive(x);
                let dft = (1.0 - t) * r0.slope(x) + t * r1.slope(x);
                let u = a / ft;
                let ux = (ra.value(x) * ft - a * dft) / (ft * ft);
                [u, ux * s[1]]
            };
            let end = rk4_integrate(field, [grid.x(i), 1.0], 0.0, 1.0, steps);
            if let Some((x, t)) = failure {
                return Err(Error::NonPositiveDensity { x, y: grid.y(j), t });
            }
            xs.push(end[0]);
            js.push(end[1]);
        }
    }

    let mut dx = Vec::with_capacity(grid.len());
    let mut jac: Vec<Jacobian> = Vec::with_capacity(grid.len());
    for j in 0..ny {
        let (ja, jb) = (j.saturating_sub(1), (j + 1).min(ny - 1));
        let span = grid.y(jb) - grid.y(ja);
        for i in 0..nx {
            let k = grid.index(i, j);
            dx.push(xs[k] - grid.x(i));
            let dxdy = (xs[grid.index(i, jb)] - xs[grid.index(i, ja)]) / span;
            jac.push([js[k], dxdy, 0.0, 1.0]);
        }
    }
    let dy = alloc::vec![0.0; grid.len()];
    Ok(PlanarMap::Sampled(
        DisplacementGrid::new(grid, dx, dy)?.with_jacobians(jac)?,
    ))
}

/// Largest displacement of `map` over grid nodes of `f0` lying outside both
/// support boxes; zero when the flow is compactly supported.
pub fn support_defect(map: &PlanarMap, f0: &Density, f1: &Density) -> f64 {
    let inside = |p: Point| {
        f0.support().is_some_and(|s| s.contains(p)) || f1.support().is_some_and(|s| s.contains(p))
    };
    f0.grid()
        .nodes()
        .filter(|(_, _, p)| !inside(*p))
        .map(|(_, _, p)| map.apply(p).dist(p))
        .fold(0.0, f64::max)
}
