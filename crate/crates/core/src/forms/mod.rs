//! Area forms `f dx^dy` sampled on rectangular grids, planar maps and the
//! constructions relating them: pullback, the primitive diffeomorphism,
//! bump realization of prescribed face integrals and Moser flows.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geom::{Point, Rect};

mod interp;
mod map;
mod moser;
mod primitive;
mod realize;

pub use map::{Affine, DisplacementGrid, PlanarMap, TrigSeries};
pub use moser::{moser_interpolation, support_defect};
pub use primitive::primitive_diffeo;
pub use realize::{
    bump_profile, plan_bumps, realize_area_vector, realize_with, Bump, RealizeOptions,
};

/// Default node count per axis.
pub const DEFAULT_RESOLUTION: usize = 256;

/// Uniform node grid over a rectangle, `nx` nodes along x and `ny` along y,
/// both including the domain corners.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    domain: Rect,
    nx: usize,
    ny: usize,
}

impl Grid {
    pub fn new(domain: Rect, nx: usize, ny: usize) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidDensity(format!(
                "grid needs at least 2x2 nodes, got {nx}x{ny}"
            )));
        }
        if !(domain.width() > 0.0 && domain.height() > 0.0) {
            return Err(Error::InvalidDensity(format!(
                "degenerate grid domain {domain:?}"
            )));
        }
        Ok(Self { domain, nx, ny })
    }

    /// `n x n` grid over `bbox` enlarged by 25% about its center.
    pub fn covering(bbox: &Rect, n: usize) -> Result<Self> {
        Self::new(bbox.scaled(1.25), n, n)
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn hx(&self) -> f64 {
        self.domain.width() / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        self.domain.height() / (self.ny - 1) as f64
    }

    #[inline]
    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx - 1 {
            self.domain.max.x
        } else {
            self.domain.min.x + i as f64 * self.hx()
        }
    }

    #[inline]
    pub fn y(&self, j: usize) -> f64 {
        if j == self.ny - 1 {
            self.domain.max.y
        } else {
            self.domain.min.y + j as f64 * self.hy()
        }
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Point {
        Point::new(self.x(i), self.y(j))
    }

    /// Row-major index: rows are constant `y`.
    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Cell of the node, `[x - hx/2, x + hx/2] x [y - hy/2, y + hy/2]`.
    pub fn cell(&self, i: usize, j: usize) -> Rect {
        let (hx, hy) = (0.5 * self.hx(), 0.5 * self.hy());
        let c = self.node(i, j);
        Rect::new(c.x - hx, c.x + hx, c.y - hy, c.y + hy)
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize, Point)> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| (i, j, self.node(i, j))))
    }

    /// Cell containing `p` as `(i, j, tx, ty)` with fractions in `[0, 1]`,
    /// `None` outside the domain.
    pub fn locate(&self, p: Point) -> Option<(usize, usize, f64, f64)> {
        if !self.domain.contains(p) {
            return None;
        }
        let (i, tx) = locate_axis(p.x - self.domain.min.x, self.hx(), self.nx);
        let (j, ty) = locate_axis(p.y - self.domain.min.y, self.hy(), self.ny);
        Some((i, j, tx, ty))
    }

    /// Bilinear interpolation of node values at `p`, `None` outside.
    pub fn interpolate(&self, values: &[f64], p: Point) -> Option<f64> {
        self.interpolate_by(p, |k| values[k])
    }

    /// Bilinear interpolation of the node field `value(index)`.
    pub fn interpolate_by(&self, p: Point, value: impl Fn(usize) -> f64) -> Option<f64> {
        let (i, j, tx, ty) = self.locate(p)?;
        let v00 = value(self.index(i, j));
        let v10 = value(self.index(i + 1, j));
        let v01 = value(self.index(i, j + 1));
        let v11 = value(self.index(i + 1, j + 1));
        Some((1.0 - ty) * ((1.0 - tx) * v00 + tx * v10) + ty * ((1.0 - tx) * v01 + tx * v11))
    }

    /// Index range of nodes whose cells meet `[lo, hi]` along x.
    pub(crate) fn cell_range_x(&self, lo: f64, hi: f64) -> (usize, usize) {
        cell_range(
            lo - self.domain.min.x,
            hi - self.domain.min.x,
            self.hx(),
            self.nx,
        )
    }

    pub(crate) fn cell_range_y(&self, lo: f64, hi: f64) -> (usize, usize) {
        cell_range(
            lo - self.domain.min.y,
            hi - self.domain.min.y,
            self.hy(),
            self.ny,
        )
    }
}

fn locate_axis(offset: f64, h: f64, n: usize) -> (usize, f64) {
    let s = offset / h;
    let i = (s.floor().max(0.0) as usize).min(n - 2);
    (i, (s - i as f64).clamp(0.0, 1.0))
}

fn cell_range(lo: f64, hi: f64, h: f64, n: usize) -> (usize, usize) {
    let a = ((lo / h + 0.5).floor().max(0.0) as usize).min(n - 1);
    let b = ((hi / h + 0.5).floor().max(0.0) as usize).min(n - 1);
    (a, b)
}

/// Positive area-form coefficient `f` of `f dx^dy` on a grid. Outside
/// `support` (and outside the grid) the coefficient equals `background`,
/// which is 1 for compactly supported perturbations of the standard form.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    grid: Grid,
    values: Vec<f64>,
    support: Option<Rect>,
    background: f64,
}

impl Density {
    /// Validates positivity and that nodes outside `support` equal
    /// `background` exactly.
    pub fn new(
        grid: Grid,
        values: Vec<f64>,
        support: Option<Rect>,
        background: f64,
    ) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidDensity(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if !(background > 0.0 && background.is_finite()) {
            return Err(Error::InvalidDensity(format!(
                "background {background} is not positive"
            )));
        }
        for (i, j, p) in grid.nodes() {
            let v = values[grid.index(i, j)];
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidDensity(format!(
                    "value {v} at node ({i}, {j}) is not positive"
                )));
            }
            let inside = support.is_some_and(|s| s.contains(p));
            if !inside && v != background {
                return Err(Error::InvalidDensity(format!(
                    "node ({i}, {j}) lies outside the support box but has value {v}"
                )));
            }
        }
        Ok(Self {
            grid,
            values,
            support,
            background,
        })
    }

    /// Values with background 1 and the tightest support box (expanded by
    /// one node spacing, clipped to the domain) containing every node that
    /// differs from 1.
    pub fn with_inferred_support(grid: Grid, values: Vec<f64>) -> Result<Self> {
        Self::with_background(grid, values, 1.0)
    }

    /// Like [`Density::with_inferred_support`] with an arbitrary background.
    pub fn with_background(grid: Grid, values: Vec<f64>, background: f64) -> Result<Self> {
        let support = infer_support(&grid, &values, background);
        Self::new(grid, values, support, background)
    }

    /// The standard form `dx^dy`.
    pub fn standard(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![1.0; grid.len()],
            support: None,
            background: 1.0,
        }
    }

    /// `c` at every node, 1 outside the grid.
    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        let support = if c == 1.0 { None } else { Some(grid.domain()) };
        Self::new(grid, vec![c; grid.len()], support, 1.0)
    }

    /// Samples `f` at nodes inside `support`; other nodes get 1.
    pub fn from_fn(grid: Grid, support: Rect, f: impl Fn(Point) -> f64) -> Result<Self> {
        let values = grid
            .nodes()
            .map(|(_, _, p)| if support.contains(p) { f(p) } else { 1.0 })
            .collect();
        Self::new(grid, values, Some(support), 1.0)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support(&self) -> Option<Rect> {
        self.support
    }

    pub fn background(&self) -> f64 {
        self.background
    }

    #[inline]
    pub fn node_value(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Tensor-product Catmull-Rom cubic inside the grid (nodes beyond the
    /// grid count as `background`), `background` outside.
    pub fn value_at(&self, p: Point) -> f64 {
        let Some((i, j, tx, ty)) = self.grid.locate(p) else {
            return self.background;
        };
        let (wx, wy) = (interp::weights(tx), interp::weights(ty));
        let (nx, ny) = (self.grid.nx() as isize, self.grid.ny() as isize);
        let node = |a: isize, b: isize| {
            if a < 0 || b < 0 || a >= nx || b >= ny {
                self.background
            } else {
                self.values[(b * nx + a) as usize]
            }
        };
        let (i, j) = (i as isize, j as isize);
        let mut acc = 0.0;
        for (dy, wy) in wy.iter().enumerate() {
            if *wy == 0.0 {
                continue;
            }
            let b = j - 1 + dy as isize;
            let row: f64 = (0..4).map(|dx| wx[dx] * node(i - 1 + dx as isize, b)).sum();
            acc += wy * row;
        }
        acc
    }

    /// `c` times this form; the background scales too.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidDensity(format!("scale {c} is not positive")));
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v * c).collect(),
            support: self.support,
            background: self.background * c,
        })
    }

    /// Maximum absolute node difference over nodes inside `region` (all
    /// nodes when `None`).
    pub fn max_abs_diff(&self, other: &Density, region: Option<Rect>) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .grid
            .nodes()
            .filter(|(_, _, p)| region.is_none_or(|r| r.contains(*p)))
            .map(|(i, j, _)| (self.node_value(i, j) - other.node_value(i, j)).abs())
            .fold(0.0, f64::max))
    }

    /// Midpoint-rule integral of `f - background` over the grid cells.
    pub fn excess_integral(&self) -> f64 {
        let cell = self.grid.hx() * self.grid.hy();
        self.values.iter().map(|v| v - self.background).sum::<f64>() * cell
    }

    pub(crate) fn from_parts_unchecked(
        grid: Grid,
        values: Vec<f64>,
        support: Option<Rect>,
        background: f64,
    ) -> Self {
        Self {
            grid,
            values,
            support,
            background,
        }
    }
}

pub(crate) fn infer_support(grid: &Grid, values: &[f64], background: f64) -> Option<Rect> {
    let mut bbox: Option<Rect> = None;
    for (i, j, p) in grid.nodes() {
        if values[grid.index(i, j)] != background {
            match bbox.as_mut() {
                Some(b) => b.include(p),
                None => bbox = Some(Rect { min: p, max: p }),
            }
        }
    }
    bbox.map(|b| {
        let d = b.inflate(grid.hx().max(grid.hy()));
        let dom = grid.domain();
        Rect::new(
            d.min.x.max(dom.min.x),
            d.max.x.min(dom.max.x),
            d.min.y.max(dom.min.y),
            d.max.y.min(dom.max.y),
        )
    })
}

/// Pullback `map^* omega`: at node `p` the value `f(map(p)) det J(p)`.
/// Fails on a non-positive Jacobian determinant.
pub fn pullback(map: &PlanarMap, omega: &Density) -> Result<Density> {
    let grid = *omega.grid();
    let mut values = Vec::with_capacity(grid.len());
    for (_, _, p) in grid.nodes() {
        let det = map.jacobian_det(p);
        if det.is_nan() || det <= 0.0 {
            return Err(Error::NonPositiveJacobian {
                x: p.x,
                y: p.y,
                det,
            });
        }
        values.push(omega.value_at(map.apply(p)) * det);
    }
    let background = omega.background() * map.far_field_det();
    let support = infer_support(&grid, &values, background);
    Ok(Density::from_parts_unchecked(
        grid, values, support, background,
    ))
}
