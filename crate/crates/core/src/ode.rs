//! Classical fourth-order Runge-Kutta for small fixed-size systems
//! `y' = f(t, y)`.

/// One RK4 step of size `dt` from `(t, y)`.
pub fn rk4_step<const N: usize, F>(f: &mut F, t: f64, y: &[f64; N], dt: f64) -> [f64; N]
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k1));
    let k3 = f(t + 0.5 * dt, &axpy(y, 0.5 * dt, &k2));
    let k4 = f(t + dt, &axpy(y, dt, &k3));
    let mut out = *y;
    for i in 0..N {
        out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Integrates from `t0` to `t1` with `steps` uniform steps.
pub fn rk4_integrate<const N: usize, F>(
    mut f: F,
    y0: [f64; N],
    t0: f64,
    t1: f64,
    steps: usize,
) -> [f64; N]
where
    F: FnMut(f64, &[f64; N]) -> [f64; N],
{
    let dt = (t1 - t0) / steps as f64;
    let mut y = y0;
    for k in 0..steps {
        y = rk4_step(&mut f, t0 + k as f64 * dt, &y, dt);
    }
    y
}

#[inline]
fn axpy<const N: usize>(y: &[f64; N], a: f64, k: &[f64; N]) -> [f64; N] {
    let mut out = *y;
    for i in 0..N {
        out[i] += a * k[i];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourth_order_on_time_dependent_field() {
        // y' = t y, y(0) = 1  =>  y(1) = e^{1/2}
        let exact = 0.5f64.exp();
        let err =
            |n| (rk4_integrate(|t, y: &[f64; 1]| [t * y[0]], [1.0], 0.0, 1.0, n)[0] - exact).abs();
        let (e1, e2) = (err(16), err(32));
        let ratio = e1 / e2;
        assert!(ratio > 14.0 && ratio < 18.0, "ratio {ratio}");
    }

    #[test]
    fn rotation_preserves_norm() {
        let y = rk4_integrate(
            |_, y: &[f64; 2]| [-y[1], y[0]],
            [1.0, 0.0],
            0.0,
            core::f64::consts::TAU,
            400,
        );
        assert!((y[0] - 1.0).abs() < 1e-8 && y[1].abs() < 1e-8);
    }
}
