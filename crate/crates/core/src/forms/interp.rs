//! Catmull-Rom cubic interpolation of node values. Nodes beyond the grid
//! take a constant outside value.

use alloc::vec::Vec;

/// Hermite basis weights for `(v[-1], v[0], v[1], v[2])` at `t ∈ [0, 1]`.
#[inline]
pub(crate) fn weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    [-0.5 * h10, h00 - 0.5 * h11, h01 + 0.5 * h10, 0.5 * h11]
}

#[inline]
fn slope_weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let d00 = 6.0 * t2 - 6.0 * t;
    let d10 = 3.0 * t2 - 4.0 * t + 1.0;
    let d01 = -6.0 * t2 + 6.0 * t;
    let d11 = 3.0 * t2 - 2.0 * t;
    [-0.5 * d10, d00 - 0.5 * d11, d01 + 0.5 * d10, 0.5 * d11]
}

#[inline]
fn integral_weights(t: f64) -> [f64; 4] {
    let t2 = t * t;
    let t3 = t2 * t;
    let t4 = t3 * t;
    let i00 = 0.5 * t4 - t3 + t;
    let i10 = 0.25 * t4 - 2.0 / 3.0 * t3 + 0.5 * t2;
    let i01 = -0.5 * t4 + t3;
    let i11 = 0.25 * t4 - t3 / 3.0;
    [-0.5 * i10, i00 - 0.5 * i11, i01 + 0.5 * i10, 0.5 * i11]
}

/// One row of node values `v_0..v_{n-1}` at `x0 + i h`.
pub(crate) struct CubicRow<'a> {
    x0: f64,
    h: f64,
    values: &'a [f64],
    outside: f64,
    /// `∫_{x0}^{x_i}`.
    cum: Vec<f64>,
    /// `∫_{x0}^{0}`.
    offset: f64,
}

impl<'a> CubicRow<'a> {
    pub(crate) fn new(x0: f64, h: f64, values: &'a [f64], outside: f64) -> Self {
        let mut row = Self {
            x0,
            h,
            values,
            outside,
            cum: Vec::with_capacity(values.len()),
            offset: 0.0,
        };
        let mut acc = 0.0;
        row.cum.push(0.0);
        let w = integral_weights(1.0);
        for i in 0..values.len() - 1 {
            acc += h * row.dot(i, &w);
            row.cum.push(acc);
        }
        row.offset = row.integral_from_start(0.0);
        row
    }

    #[inline]
    fn node(&self, i: isize) -> f64 {
        if i < 0 || i as usize >= self.values.len() {
            self.outside
        } else {
            self.values[i as usize]
        }
    }

    #[inline]
    fn dot(&self, i: usize, w: &[f64; 4]) -> f64 {
        let i = i as isize;
        w[0] * self.node(i - 1)
            + w[1] * self.node(i)
            + w[2] * self.node(i + 1)
            + w[3] * self.node(i + 2)
    }

    fn cell(&self, x: f64) -> Option<(usize, f64)> {
        let n = self.values.len();
        let s = (x - self.x0) / self.h;
        if !(s >= 0.0 && s <= (n - 1) as f64) {
            return None;
        }
        let i = (s as usize).min(n - 2);
        Some((i, s - i as f64))
    }

    fn integral_from_start(&self, x: f64) -> f64 {
        let n = self.values.len();
        if x < self.x0 {
            return (x - self.x0) * self.outside;
        }
        match self.cell(x) {
            Some((i, t)) => self.cum[i] + self.h * self.dot(i, &integral_weights(t)),
            None => self.cum[n - 1] + (x - (self.x0 + (n - 1) as f64 * self.h)) * self.outside,
        }
    }

    /// `∫_0^x` of the interpolant.
    pub(crate) fn primitive(&self, x: f64) -> f64 {
        self.integral_from_start(x) - self.offset
    }

    pub(crate) fn value(&self, x: f64) -> f64 {
        match self.cell(x) {
            Some((i, t)) => self.dot(i, &weights(t)),
            None => self.outside,
        }
    }

    pub(crate) fn slope(&self, x: f64) -> f64 {
        match self.cell(x) {
            Some((i, t)) => self.dot(i, &slope_weights(t)) / self.h,
            None => 0.0,
        }
    }
}
