//! Planar points, rectangles and the polygon kernels shared by the other
//! modules: shoelace area, winding numbers, segment intersection.

use core::ops::{Add, Mul, Neg, Sub};
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3d cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn lerp(self, other: Point, t: f64) -> Point {
        Point::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }

    /// Angle of the vector in `(-pi, pi]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub const fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        Self {
            min: Point::new(x0, y0),
            max: Point::new(x1, y1),
        }
    }

    /// Bounding box of a non-empty point set.
    pub fn bounding<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Rect> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut r = Rect {
            min: first,
            max: first,
        };
        for p in it {
            r.include(*p);
        }
        Some(r)
    }

    pub fn include(&mut self, p: Point) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn union(&self, other: &Rect) -> Rect {
        let mut r = *self;
        r.include(other.min);
        r.include(other.max);
        r
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }

    pub fn center(&self) -> Point {
        self.min.lerp(self.max, 0.5)
    }

    /// Grows each side by `margin`.
    pub fn inflate(&self, margin: f64) -> Rect {
        Rect::new(
            self.min.x - margin,
            self.max.x + margin,
            self.min.y - margin,
            self.max.y + margin,
        )
    }

    /// Scales the extent about the center by `factor`.
    pub fn scaled(&self, factor: f64) -> Rect {
        let c = self.center();
        let hw = 0.5 * self.width() * factor;
        let hh = 0.5 * self.height() * factor;
        Rect::new(c.x - hw, c.x + hw, c.y - hh, c.y + hh)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.contains(other.min) && self.contains(other.max)
    }

    pub fn intersects(&self, other: &Rect) -> bool {
        self.min.x <= other.max.x
            && other.min.x <= self.max.x
            && self.min.y <= other.max.y
            && other.min.y <= self.max.y
    }
}

/// Signed shoelace area of a closed ring (last point connects to first).
/// Positive for counterclockwise rings.
pub fn signed_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    if n < 3 {
        return 0.0;
    }
    // Shift to the first vertex to limit cancellation.
    let o = ring[0];
    let mut acc = 0.0;
    for i in 1..n - 1 {
        acc += (ring[i] - o).cross(ring[i + 1] - o);
    }
    0.5 * acc
}

/// Area-weighted centroid of a closed ring, `None` for degenerate rings.
pub fn ring_centroid(ring: &[Point]) -> Option<(Point, f64)> {
    let n = ring.len();
    if n < 3 {
        return None;
    }
    let o = ring[0];
    let mut a = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 1..n - 1 {
        let p = ring[i] - o;
        let q = ring[i + 1] - o;
        let w = p.cross(q);
        a += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if a == 0.0 {
        return None;
    }
    Some((
        Point::new(o.x + cx / (3.0 * a), o.y + cy / (3.0 * a)),
        0.5 * a,
    ))
}

/// Euclidean remainder of `a` by positive `m`, in `[0, m)`.
#[inline]
pub fn rem_euclid(a: f64, m: f64) -> f64 {
    let r = a % m;
    if r < 0.0 {
        let s = r + m;
        if s >= m {
            0.0
        } else {
            s
        }
    } else {
        r
    }
}

/// Winding number of a closed ring around `p` (crossing-number form).
pub fn winding_number(ring: &[Point], p: Point) -> i32 {
    let n = ring.len();
    let mut w = 0;
    for i in 0..n {
        let a = ring[i];
        let b = ring[(i + 1) % n];
        if a.y <= p.y {
            if b.y > p.y && (b - a).cross(p - a) > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && (b - a).cross(p - a) < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Intersection of segments `p0p1` and `q0q1` as parameters `(t, u)` with
/// `p0 + t (p1 - p0) = q0 + u (q1 - q0)`. Parameters may exceed `[0, 1]` by
/// `slack`. Parallel segments return `None`.
pub fn segment_intersection(
    p0: Point,
    p1: Point,
    q0: Point,
    q1: Point,
    slack: f64,
) -> Option<(f64, f64)> {
    let r = p1 - p0;
    let s = q1 - q0;
    let denom = r.cross(s);
    let scale = r.norm() * s.norm();
    if denom.abs() <= 1e-14 * scale {
        return None;
    }
    let w = q0 - p0;
    let t = w.cross(s) / denom;
    let u = w.cross(r) / denom;
    if t < -slack || t > 1.0 + slack || u < -slack || u > 1.0 + slack {
        return None;
    }
    Some((t, u))
}

/// Distance from `p` to segment `ab`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    p.dist(project_to_segment(p, a, b))
}

fn project_to_segment(p: Point, a: Point, b: Point) -> Point {
    let d = b - a;
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return a;
    }
    a + d * ((p - a).dot(d) / len2).clamp(0.0, 1.0)
}

/// Minimum distance between two segments.
pub fn segment_distance(p0: Point, p1: Point, q0: Point, q1: Point) -> f64 {
    closest_approach(p0, p1, q0, q1).0
}

/// Minimum distance between two segments and the midpoint of a closest pair.
pub fn closest_approach(p0: Point, p1: Point, q0: Point, q1: Point) -> (f64, Point) {
    if let Some((t, _)) = segment_intersection(p0, p1, q0, q1, 0.0) {
        return (0.0, p0.lerp(p1, t.clamp(0.0, 1.0)));
    }
    [
        (p0, project_to_segment(p0, q0, q1)),
        (p1, project_to_segment(p1, q0, q1)),
        (q0, project_to_segment(q0, p0, p1)),
        (q1, project_to_segment(q1, p0, p1)),
    ]
    .into_iter()
    .map(|(a, b)| (a.dist(b), a.lerp(b, 0.5)))
    .fold(
        (f64::INFINITY, p0),
        |best, c| if c.0 < best.0 { c } else { best },
    )
}

/// Acute angle in `[0, pi/2]` between the lines spanned by `a` and `b`.
pub fn line_angle(a: Point, b: Point) -> f64 {
    a.cross(b).abs().atan2(a.dot(b).abs())
}
