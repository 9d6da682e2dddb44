use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

use super::Grid;
use crate::error::{Error, Result};
use crate::geom::Point;

/// 2x2 Jacobian, row-major: `[dX/dx, dX/dy, dY/dx, dY/dy]`.
pub type Jacobian = [f64; 4];

#[inline]
fn det(j: &Jacobian) -> f64 {
    j[0] * j[3] - j[1] * j[2]
}

#[inline]
fn mat_mul(a: &Jacobian, b: &Jacobian) -> Jacobian {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

/// `(x, y) -> (a x + b y + tx, c x + d y + ty)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Affine {
    pub const IDENTITY: Affine = Affine::linear(1.0, 0.0, 0.0, 1.0);

    pub const fn linear(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            a,
            b,
            c,
            d,
            tx: 0.0,
            ty: 0.0,
        }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self::linear(c, -s, s, c)
    }

    pub const fn translation(tx: f64, ty: f64) -> Self {
        Self {
            tx,
            ty,
            ..Self::IDENTITY
        }
    }

    pub const fn scaling(s: f64) -> Self {
        Self::linear(s, 0.0, 0.0, s)
    }

    pub fn with_translation(mut self, tx: f64, ty: f64) -> Self {
        self.tx = tx;
        self.ty = ty;
        self
    }

    #[inline]
    pub fn apply(&self, p: Point) -> Point {
        Point::new(
            self.a * p.x + self.b * p.y + self.tx,
            self.c * p.x + self.d * p.y + self.ty,
        )
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }
}

/// `s -> sum amp * sin(freq * s + phase)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigSeries {
    terms: Vec<(f64, f64, f64)>,
}

impl TrigSeries {
    pub fn new(terms: Vec<(f64, f64, f64)>) -> Self {
        Self { terms }
    }

    pub fn single(amp: f64, freq: f64, phase: f64) -> Self {
        Self::new(vec![(amp, freq, phase)])
    }

    pub fn terms(&self) -> &[(f64, f64, f64)] {
        &self.terms
    }

    pub fn value(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(a, k, ph)| a * (k * s + ph).sin())
            .sum()
    }

    pub fn derivative(&self, s: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(a, k, ph)| a * k * (k * s + ph).cos())
            .sum()
    }
}

/// Displacement field on a grid, bilinear between nodes and extended by the
/// nearest edge value outside. Optionally carries node Jacobians (from a
/// variational equation); otherwise Jacobians come from central differences
/// with the grid spacing as step.
#[derive(Debug, Clone, PartialEq)]
pub struct DisplacementGrid {
    grid: Grid,
    dx: Vec<f64>,
    dy: Vec<f64>,
    jacobians: Option<Vec<Jacobian>>,
}

impl DisplacementGrid {
    pub fn new(grid: Grid, dx: Vec<f64>, dy: Vec<f64>) -> Result<Self> {
        if dx.len() != grid.len() || dy.len() != grid.len() {
            return Err(Error::InvalidDensity(format!(
                "displacement grid expects {} nodes, got {} and {}",
                grid.len(),
                dx.len(),
                dy.len()
            )));
        }
        Ok(Self {
            grid,
            dx,
            dy,
            jacobians: None,
        })
    }

    pub fn with_jacobians(mut self, jacobians: Vec<Jacobian>) -> Result<Self> {
        if jacobians.len() != self.grid.len() {
            return Err(Error::InvalidDensity(format!(
                "expected {} node Jacobians, got {}",
                self.grid.len(),
                jacobians.len()
            )));
        }
        self.jacobians = Some(jacobians);
        Ok(self)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn dx(&self) -> &[f64] {
        &self.dx
    }

    pub fn dy(&self) -> &[f64] {
        &self.dy
    }

    pub fn jacobians(&self) -> Option<&[Jacobian]> {
        self.jacobians.as_deref()
    }

    fn clamp(&self, p: Point) -> Point {
        let d = self.grid.domain();
        Point::new(p.x.clamp(d.min.x, d.max.x), p.y.clamp(d.min.y, d.max.y))
    }

    pub fn displacement(&self, p: Point) -> Point {
        let q = self.clamp(p);
        Point::new(
            self.grid.interpolate(&self.dx, q).unwrap_or(0.0),
            self.grid.interpolate(&self.dy, q).unwrap_or(0.0),
        )
    }

    fn apply(&self, p: Point) -> Point {
        p + self.displacement(p)
    }

    fn jacobian(&self, p: Point) -> Jacobian {
        if let Some(js) = &self.jacobians {
            if self.grid.domain().contains(p) {
                let mut out = [0.0; 4];
                for (k, o) in out.iter_mut().enumerate() {
                    *o = self.grid.interpolate_by(p, |n| js[n][k]).unwrap_or(0.0);
                }
                return out;
            }
        }
        let (hx, hy) = (self.grid.hx(), self.grid.hy());
        let ex = Point::new(hx, 0.0);
        let ey = Point::new(0.0, hy);
        let dxp = (self.apply(p + ex) - self.apply(p - ex)) * (0.5 / hx);
        let dyp = (self.apply(p + ey) - self.apply(p - ey)) * (0.5 / hy);
        [dxp.x, dyp.x, dxp.y, dyp.y]
    }

    /// Largest displacement magnitude over nodes.
    pub fn max_displacement(&self) -> f64 {
        self.dx
            .iter()
            .zip(&self.dy)
            .map(|(a, b)| a.hypot(*b))
            .fold(0.0, f64::max)
    }
}

/// Orientation-preserving map of the plane.
#[derive(Debug, Clone, PartialEq)]
pub enum PlanarMap {
    Affine(Affine),
    /// `(x, y) -> (x + q(y), y)`; unit Jacobian determinant.
    ShearX(TrigSeries),
    /// `(x, y) -> (x, y + q(x))`; unit Jacobian determinant.
    ShearY(TrigSeries),
    /// Maps applied first to last.
    Compose(Vec<PlanarMap>),
    Sampled(DisplacementGrid),
}

impl PlanarMap {
    pub fn identity() -> Self {
        PlanarMap::Affine(Affine::IDENTITY)
    }

    /// `outer o inner`.
    pub fn compose(outer: PlanarMap, inner: PlanarMap) -> Self {
        PlanarMap::Compose(vec![inner, outer])
    }

    /// `next o self`.
    pub fn then(self, next: PlanarMap) -> Self {
        match self {
            PlanarMap::Compose(mut v) => {
                v.push(next);
                PlanarMap::Compose(v)
            }
            other => PlanarMap::Compose(vec![other, next]),
        }
    }

    pub fn is_closed_form(&self) -> bool {
        match self {
            PlanarMap::Sampled(_) => false,
            PlanarMap::Compose(v) => v.iter().all(PlanarMap::is_closed_form),
            _ => true,
        }
    }

    pub fn apply(&self, p: Point) -> Point {
        match self {
            PlanarMap::Affine(a) => a.apply(p),
            PlanarMap::ShearX(q) => Point::new(p.x + q.value(p.y), p.y),
            PlanarMap::ShearY(q) => Point::new(p.x, p.y + q.value(p.x)),
            PlanarMap::Compose(maps) => maps.iter().fold(p, |acc, m| m.apply(acc)),
            PlanarMap::Sampled(g) => g.apply(p),
        }
    }

    /// Analytic for closed-form maps, chain rule for compositions.
    pub fn jacobian(&self, p: Point) -> Jacobian {
        match self {
            PlanarMap::Affine(a) => [a.a, a.b, a.c, a.d],
            PlanarMap::ShearX(q) => [1.0, q.derivative(p.y), 0.0, 1.0],
            PlanarMap::ShearY(q) => [1.0, 0.0, q.derivative(p.x), 1.0],
            PlanarMap::Compose(maps) => {
                let mut j = [1.0, 0.0, 0.0, 1.0];
                let mut q = p;
                for m in maps {
                    j = mat_mul(&m.jacobian(q), &j);
                    q = m.apply(q);
                }
                j
            }
            PlanarMap::Sampled(g) => g.jacobian(p),
        }
    }

    pub fn jacobian_det(&self, p: Point) -> f64 {
        det(&self.jacobian(p))
    }

    /// Jacobian determinant far from every grid and support region.
    pub fn far_field_det(&self) -> f64 {
        match self {
            PlanarMap::Affine(a) => a.det(),
            PlanarMap::Compose(maps) => maps.iter().map(PlanarMap::far_field_det).product(),
            _ => 1.0,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Rect;

    #[test]
    fn composition_chain_rule_matches_differences() {
        let m = PlanarMap::ShearX(TrigSeries::new(vec![(0.3, 1.0, 0.2), (0.1, 2.0, -0.4)]))
            .then(PlanarMap::Affine(
                Affine::rotation(0.7).with_translation(0.5, -1.0),
            ))
            .then(PlanarMap::ShearY(TrigSeries::single(0.25, 1.5, 0.3)));
        let p = Point::new(0.4, -0.3);
        let j = m.jacobian(p);
        let h = 1e-6;
        let fx = (m.apply(p + Point::new(h, 0.0)) - m.apply(p - Point::new(h, 0.0))) * (0.5 / h);
        let fy = (m.apply(p + Point::new(0.0, h)) - m.apply(p - Point::new(0.0, h))) * (0.5 / h);
        for (a, b) in j.iter().zip([fx.x, fy.x, fx.y, fy.y]) {
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        assert!((m.jacobian_det(p) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sampled_affine_is_reproduced() {
        let grid = Grid::new(Rect::new(-1.0, 1.0, -1.0, 1.0), 21, 21).unwrap();
        let a = Affine::linear(1.2, 0.1, -0.2, 0.9).with_translation(0.3, 0.0);
        let (dx, dy): (Vec<f64>, Vec<f64>) = grid
            .nodes()
            .map(|(_, _, p)| {
                let q = a.apply(p) - p;
                (q.x, q.y)
            })
            .unzip();
        let m = PlanarMap::Sampled(DisplacementGrid::new(grid, dx, dy).unwrap());
        let p = Point::new(0.13, -0.41);
        assert!(m.apply(p).dist(a.apply(p)) < 1e-14);
        assert!((m.jacobian_det(p) - a.det()).abs() < 1e-12);
    }
}
