//! Standard sampled curves.

#[allow(unused_imports)]
use num_traits::Float;

use crate::curve::ClosedCurve;
use crate::error::Result;
use crate::geom::Point;

/// Circle of radius `r` about `center`, counterclockwise.
pub fn circle(samples: usize, center: Point, r: f64) -> Result<ClosedCurve> {
    ClosedCurve::from_fn(samples, |t| {
        Point::new(center.x + r * t.cos(), center.y + r * t.sin())
    })
}

/// Gerono lemniscate `(sin 2t, sin t)`; each lobe has area 4/3.
pub fn figure_eight(samples: usize) -> Result<ClosedCurve> {
    ClosedCurve::from_fn(samples, |t| Point::new((2.0 * t).sin(), t.sin()))
}

/// Three-fold symmetric curve `(sin t + 2 sin 2t, cos t - 2 cos 2t)` with
/// three double points and four bounded faces.
pub fn trefoil(samples: usize) -> Result<ClosedCurve> {
    ClosedCurve::from_fn(samples, trefoil_point)
}

pub fn trefoil_point(t: f64) -> Point {
    Point::new(
        t.sin() + 2.0 * (2.0 * t).sin(),
        t.cos() - 2.0 * (2.0 * t).cos(),
    )
}

/// Finite Fourier loop `Σ_k (ax_k cos kt + bx_k sin kt, ay_k cos kt + by_k sin kt)`
/// with `coeffs[k - 1] = [ax, bx, ay, by]`.
pub fn trig_loop(samples: usize, coeffs: &[[f64; 4]]) -> Result<ClosedCurve> {
    ClosedCurve::from_fn(samples, |t| {
        let mut p = Point::new(0.0, 0.0);
        for (k, c) in coeffs.iter().enumerate() {
            let (s, co) = (((k + 1) as f64) * t).sin_cos();
            p.x += c[0] * co + c[1] * s;
            p.y += c[2] * co + c[3] * s;
        }
        p
    })
}

/// Angle-dependent radial rescaling `p -> p (1 + g(arg p))`, a
/// diffeomorphism of the plane whenever `1 + g > 0`.
pub fn radial_distortion(curve: &ClosedCurve, g: impl Fn(f64) -> f64) -> Result<ClosedCurve> {
    curve.map_points(|p| {
        let k = 1.0 + g(p.y.atan2(p.x));
        Point::new(p.x * k, p.y * k)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::signed_area;

    #[test]
    fn lobe_and_disc_areas() {
        let c = circle(4096, Point::new(1.0, -1.0), 2.0).unwrap();
        assert!((signed_area(&c.loops()[0]) - 4.0 * core::f64::consts::PI).abs() < 1e-5);
        let f = figure_eight(4096).unwrap();
        // Opposite orientations of the two lobes cancel.
        assert!(signed_area(&f.loops()[0]).abs() < 1e-9);
    }
}
