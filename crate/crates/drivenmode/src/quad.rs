//! Quadrature helpers: composite Simpson over uniform samples, trapezoid
//! over non-uniform samples, and an adaptive Simpson for function integrands.

use crate::error::{Error, Result};
use crate::C64;

/// Composite Simpson over uniformly spaced complex samples (spacing h).
/// An even number of intervals uses plain Simpson; an odd count closes the
/// last three intervals with the 3/8 rule, keeping O(h^4) accuracy.
pub fn simpson_sampled_c64(vals: &[C64], h: f64) -> C64 {
    let n = vals.len();
    match n {
        0 | 1 => C64::new(0.0, 0.0),
        2 => (vals[0] + vals[1]) * (h / 2.0),
        3 => (vals[0] + 4.0 * vals[1] + vals[2]) * (h / 3.0),
        4 => (vals[0] + 3.0 * vals[1] + 3.0 * vals[2] + vals[3]) * (3.0 * h / 8.0),
        _ => {
            let intervals = n - 1;
            if intervals.is_multiple_of(2) {
                let mut s = vals[0] + vals[n - 1];
                for (k, v) in vals.iter().enumerate().take(n - 1).skip(1) {
                    s += if k % 2 == 1 { 4.0 * *v } else { 2.0 * *v };
                }
                s * (h / 3.0)
            } else {
                // Simpson on the first (n-4) intervals, 3/8 on the last three
                let head = simpson_sampled_c64(&vals[..n - 3], h);
                let tail = (vals[n - 4] + 3.0 * vals[n - 3] + 3.0 * vals[n - 2] + vals[n - 1])
                    * (3.0 * h / 8.0);
                head + tail
            }
        }
    }
}

pub fn simpson_sampled_f64(vals: &[f64], h: f64) -> f64 {
    let cv: Vec<C64> = vals.iter().map(|&v| C64::new(v, 0.0)).collect();
    simpson_sampled_c64(&cv, h).re
}

/// Trapezoid rule over non-uniform sample points.
pub fn trapezoid_nonuniform(ts: &[f64], vals: &[C64]) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for k in 1..ts.len() {
        s += (vals[k - 1] + vals[k]) * (0.5 * (ts[k] - ts[k - 1]));
    }
    s
}

/// Adaptive Simpson for a complex-valued integrand on [a, b].
pub fn adaptive_simpson_c64<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<C64> {
    fn simpson(fa: C64, fm: C64, fb: C64, h: f64) -> C64 {
        (fa + 4.0 * fm + fb) * (h / 6.0)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> C64>(
        f: &F,
        a: f64,
        b: f64,
        fa: C64,
        fm: C64,
        fb: C64,
        whole: C64,
        tol: f64,
        floor: f64,
        depth: u32,
    ) -> Result<C64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, m - a);
        let right = simpson(fm, frm, fb, b - m);
        let delta = left + right - whole;
        // extra exits: the discrepancy sits at the evaluation-noise floor of
        // the local contribution (integrands with cancellations carry ~1e-12
        // relative noise near poles), or the whole subinterval is negligible
        // against the caller's top-level tolerance (steep tails otherwise
        // force the recursion to chase vanishing absolute targets)
        if delta.norm() <= 15.0 * tol
            || delta.norm() <= 1e-12 * (left.norm() + right.norm())
            || left.norm().max(right.norm()).max(whole.norm()) <= floor
        {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::Convergence {
                context: "adaptive Simpson",
                achieved: delta.norm() / 15.0,
                required: tol,
            });
        }
        let l = recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, floor, depth - 1)?;
        let r = recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, floor, depth - 1)?;
        Ok(l + r)
    }
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, b - a);
    let floor = 1e-3 * tol;
    recurse(f, a, b, fa, fm, fb, whole, tol, floor, max_depth)
}

pub fn adaptive_simpson_f64<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64> {
    let g = |t: f64| C64::new(f(t), 0.0);
    adaptive_simpson_c64(&g, a, b, tol, max_depth).map(|v| v.re)
}

/// Adaptive Simpson over an oscillatory integrand: the interval is first cut
/// into panels no wider than `max_panel` before adapting, so bisection points
/// cannot alias onto the zeros of a periodic factor.
pub fn adaptive_simpson_osc_c64<F: Fn(f64) -> C64>(
    f: &F,
    a: f64,
    b: f64,
    max_panel: f64,
    tol: f64,
    max_depth: u32,
) -> Result<C64> {
    if b <= a {
        return Ok(C64::new(0.0, 0.0));
    }
    // 1/e keeps panel edges incommensurate with the oscillation period
    let panel = (max_panel * 0.367_879_441_171_442_33).min(b - a);
    let n = ((b - a) / panel).ceil() as usize;
    let tol_each = tol / n as f64;
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..n {
        let lo = a + (b - a) * k as f64 / n as f64;
        let hi = a + (b - a) * (k + 1) as f64 / n as f64;
        sum += adaptive_simpson_c64(f, lo, hi, tol_each, max_depth)?;
    }
    Ok(sum)
}

pub fn adaptive_simpson_osc_f64<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    max_panel: f64,
    tol: f64,
    max_depth: u32,
) -> Result<f64> {
    let g = |t: f64| C64::new(f(t), 0.0);
    adaptive_simpson_osc_c64(&g, a, b, max_panel, tol, max_depth).map(|v| v.re)
}
