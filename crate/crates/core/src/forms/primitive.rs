use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::{Density, DisplacementGrid, PlanarMap};
use crate::error::Result;

/// Piecewise-linear interpolant of one grid row, continued by a constant
/// beyond the row, together with its exact antiderivative vanishing at 0.
pub(crate) struct Row<'a> {
    x0: f64,
    h: f64,
    values: &'a [f64],
    outside: f64,
    /// `∫_{x0}^{x_i}` of the interpolant.
    cum: Vec<f64>,
    /// `∫_{x0}^{0}`.
    offset: f64,
}

impl<'a> Row<'a> {
    pub(crate) fn new(x0: f64, h: f64, values: &'a [f64], outside: f64) -> Self {
        let mut cum = Vec::with_capacity(values.len());
        let mut acc = 0.0;
        cum.push(0.0);
        for w in values.windows(2) {
            acc += 0.5 * h * (w[0] + w[1]);
            cum.push(acc);
        }
        let mut row = Self {
            x0,
            h,
            values,
            outside,
            cum,
            offset: 0.0,
        };
        row.offset = row.integral_from_start(0.0);
        row
    }

    fn cell(&self, x: f64) -> Option<(usize, f64)> {
        let n = self.values.len();
        let s = (x - self.x0) / self.h;
        if s < 0.0 || s > (n - 1) as f64 {
            return None;
        }
        let i = (s.floor() as usize).min(n - 2);
        Some((i, s - i as f64))
    }

    fn integral_from_start(&self, x: f64) -> f64 {
        let n = self.values.len();
        if x < self.x0 {
            return (x - self.x0) * self.outside;
        }
        match self.cell(x) {
            Some((i, t)) => {
                let v = self.values[i] + t * (self.values[i + 1] - self.values[i]);
                self.cum[i] + 0.5 * self.h * t * (self.values[i] + v)
            }
            None => self.cum[n - 1] + (x - (self.x0 + (n - 1) as f64 * self.h)) * self.outside,
        }
    }

    /// `∫_0^x`.
    #[cfg(test)]
    fn primitive(&self, x: f64) -> f64 {
        self.integral_from_start(x) - self.offset
    }

    /// `∫_0^{x_i}` at node `i`.
    pub(crate) fn primitive_at_node(&self, i: usize) -> f64 {
        self.cum[i] - self.offset
    }
}

/// `ψ(x, y) = (∫_0^x f(s, y) ds, y)`, which satisfies `ψ*(dx∧dy) = ω`.
///
/// The integral runs along each grid row over the piecewise-linear
/// interpolant of the node values (the trapezoid rule at nodes) and over the
/// background beyond the grid. The result is sampled at the nodes of the
/// density's grid.
pub fn primitive_diffeo(omega: &Density) -> Result<PlanarMap> {
    let grid = *omega.grid();
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut dx = Vec::with_capacity(grid.len());
    for j in 0..ny {
        let row = Row::new(
            grid.domain().min.x,
            grid.hx(),
            &omega.values()[j * nx..(j + 1) * nx],
            omega.background(),
        );
        for i in 0..nx {
            dx.push(row.primitive_at_node(i) - grid.x(i));
        }
    }
    let dy = alloc::vec![0.0; grid.len()];
    Ok(PlanarMap::Sampled(DisplacementGrid::new(grid, dx, dy)?))
}
