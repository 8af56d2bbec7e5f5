//! Explicit one-step integrators over complex state vectors.
//!
//! Two schemes, per the cross-check design: a fixed-step classical RK4
//! (the workhorse, combined with step-doubling by callers) and an adaptive
//! Dormand-Prince 5(4) that lands exactly on the requested endpoint.

use crate::error::{Error, Result};
use crate::C64;

/// Classical RK4 with a fixed step. `on_step(k, t_k, y_k)` is invoked for
/// every index 0..=n_steps, including the initial state; the final state is
/// returned. Step times are computed as t0 + k*h to avoid drift.
pub fn rk4_fixed<F, O>(
    rhs: &F,
    t0: f64,
    y0: &[C64],
    h: f64,
    n_steps: usize,
    mut on_step: O,
) -> Vec<C64>
where
    F: Fn(f64, &[C64], &mut [C64]),
    O: FnMut(usize, f64, &[C64]),
{
    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut k1 = vec![C64::new(0.0, 0.0); dim];
    let mut k2 = k1.clone();
    let mut k3 = k1.clone();
    let mut k4 = k1.clone();
    let mut tmp = k1.clone();
    on_step(0, t0, &y);
    for step in 0..n_steps {
        let t = t0 + step as f64 * h;
        rhs(t, &y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(t + 0.5 * h, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(t + h, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        on_step(step + 1, t0 + (step + 1) as f64 * h, &y);
    }
    y
}

// Dormand-Prince 5(4) tableau
const DP_C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// 4th-order weights for the embedded error estimate
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Adaptive Dormand-Prince 5(4). Integrates from t0 to t1 (t1 > t0) with a
/// mixed absolute/relative per-step error target; the final step is clamped
/// so the returned state is exactly at t1.
pub fn dormand_prince<F>(
    rhs: &F,
    t0: f64,
    t1: f64,
    y0: &[C64],
    rel_tol: f64,
    abs_tol: f64,
) -> Result<Vec<C64>>
where
    F: Fn(f64, &[C64], &mut [C64]),
{
    let dim = y0.len();
    let mut y = y0.to_vec();
    let mut t = t0;
    let mut k: Vec<Vec<C64>> = (0..7).map(|_| vec![C64::new(0.0, 0.0); dim]).collect();
    let mut ytmp = vec![C64::new(0.0, 0.0); dim];
    let mut y5 = vec![C64::new(0.0, 0.0); dim];
    let span = t1 - t0;
    if span <= 0.0 {
        return Err(Error::Precondition(
            "dormand_prince requires t1 > t0".into(),
        ));
    }
    let mut h = 1e-3 * span;
    rhs(t, &y, &mut k[0]);
    let max_steps = 50_000_000usize;
    for _ in 0..max_steps {
        if t >= t1 {
            return Ok(y);
        }
        let clamped = t + h >= t1;
        if clamped {
            h = t1 - t;
        }
        for stage in 0..6 {
            for i in 0..dim {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    let a = DP_A[stage][j];
                    if a != 0.0 {
                        acc += h * a * kj[i];
                    }
                }
                ytmp[i] = acc;
            }
            if stage == 5 {
                y5.copy_from_slice(&ytmp); // 5th-order solution (FSAL row)
            }
            let (head, tail) = k.split_at_mut(stage + 1);
            let _ = head;
            rhs(t + DP_C[stage] * h, &ytmp, &mut tail[0]);
        }
        let mut err: f64 = 0.0;
        for i in 0..dim {
            let mut acc4 = y[i];
            for (j, kj) in k.iter().enumerate() {
                if DP_B4[j] != 0.0 {
                    acc4 += h * DP_B4[j] * kj[i];
                }
            }
            let scale = abs_tol + rel_tol * y5[i].norm().max(y[i].norm());
            err = err.max((y5[i] - acc4).norm() / scale);
        }
        if err <= 1.0 {
            t = if clamped { t1 } else { t + h };
            y.copy_from_slice(&y5);
            k.swap(0, 6); // FSAL: k7 becomes next step's k1
        }
        let factor = if err > 0.0 {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h *= factor;
        if h < 1e-14 * span {
            return Err(Error::Convergence {
                context: "dormand-prince step size underflow",
                achieved: err,
                required: 1.0,
            });
        }
    }
    Err(Error::Convergence {
        context: "dormand-prince step budget",
        achieved: f64::NAN,
        required: 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn oscillator(w: f64) -> impl Fn(f64, &[C64], &mut [C64]) {
        move |_t, y, dy| {
            dy[0] = y[1];
            dy[1] = -w * w * y[0];
        }
    }

    #[test]
    fn rk4_harmonic_oscillator_order() {
        // halving h must reduce the endpoint error ~16x
        let w: f64 = 2.0;
        let y0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let t_end: f64 = 10.0;
        let exact = (w * t_end).cos();
        let err = |n: usize| {
            let y = rk4_fixed(&oscillator(w), 0.0, &y0, t_end / n as f64, n, |_, _, _| {});
            (y[0].re - exact).abs()
        };
        let e1 = err(2_000);
        let e2 = err(4_000);
        let ratio = e1 / e2;
        assert!(
            (10.0..26.0).contains(&ratio),
            "expected ~16x reduction, got {ratio}"
        );
    }

    #[test]
    fn dormand_prince_matches_exact() {
        let w = 3.0;
        let y0 = [C64::new(0.0, 0.0), C64::new(w, 0.0)];
        let y = dormand_prince(&oscillator(w), 0.0, 7.0, &y0, 1e-11, 1e-12).unwrap();
        assert_relative_eq!(y[0].re, (w * 7.0f64).sin(), epsilon = 1e-8);
        assert_relative_eq!(y[1].re, w * (w * 7.0f64).cos(), epsilon = 1e-7);
    }

    #[test]
    fn rk4_observer_sees_every_step() {
        let mut count = 0;
        let y0 = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        rk4_fixed(&oscillator(1.0), 0.0, &y0, 0.1, 50, |k, t, _y| {
            assert_relative_eq!(t, k as f64 * 0.1, epsilon = 1e-12);
            count += 1;
        });
        assert_eq!(count, 51);
    }
}
