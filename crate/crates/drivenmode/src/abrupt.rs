//! Abrupt (delta-barrier) limit: the frequency bump is collapsed to a delta
//! term of weight 2 Omega^2 T, for which the Jost solution, the scattering
//! coefficients and the displacement integral are all closed forms.

use crate::error::Result;
use crate::profile::{force_fourier, force_value, ForceProfile};
use crate::quad;
use crate::special::faddeeva;
use crate::C64;
use std::f64::consts::PI;

/// A = 1 - i Omega^2 T / omega0, B = i Omega^2 T / omega0 for the
/// delta-weight parameter omega2t = Omega^2 T.
pub fn abrupt_coefficients(omega0: f64, omega2t: f64) -> (C64, C64) {
    let k = omega2t / omega0;
    (C64::new(1.0, -k), C64::new(0.0, k))
}

/// Piecewise Jost solution of the delta-barrier equation:
/// exp(-i omega0 t) for t < 0, with an extra -(2 Omega^2 T/omega0) sin(omega0 t)
/// switched on at the kick.
pub fn abrupt_xi(omega0: f64, omega2t: f64, t: f64) -> C64 {
    let plane = C64::new(0.0, -omega0 * t).exp();
    if t < 0.0 {
        plane
    } else {
        plane - C64::new(2.0 * omega2t / omega0 * (omega0 * t).sin(), 0.0)
    }
}

/// The half-line overlap integral
/// I = Integral_0^inf dt f(t - t_f) sin(omega0 t).
///
/// GaussCos forces evaluate in closed form through complex error functions;
/// tabulated forces fall back to quadrature on their sample range.
pub fn halfline_sine_integral(force: &ForceProfile, omega0: f64) -> Result<f64> {
    match force {
        ForceProfile::Null { .. } => Ok(0.0),
        ForceProfile::GaussCos {
            amplitude,
            mod_freq,
            center,
            width,
            ..
        } => Ok(gauss_cos_halfline(
            *amplitude, *mod_freq, *center, *width, omega0,
        )),
        ForceProfile::Tabulated { .. } => halfline_sine_integral_quadrature(force, omega0),
    }
}

/// Quadrature route for the same integral (the GaussCos case doubles as an
/// independent check on the closed form).
pub fn halfline_sine_integral_quadrature(force: &ForceProfile, omega0: f64) -> Result<f64> {
    let (lo, hi) = match force.support() {
        None => return Ok(0.0),
        Some(s) => s,
    };
    let lo = lo.max(0.0);
    if hi <= lo {
        return Ok(0.0);
    }
    let f = |t: f64| force_value(force, t) * (omega0 * t).sin();
    let scale: f64 = (0..=64)
        .map(|k| f(lo + (hi - lo) * k as f64 / 64.0).abs())
        .fold(0.0, f64::max)
        .max(1e-300);
    let half_period = PI / omega0.max(1e-300);
    quad::adaptive_simpson_osc_f64(&f, lo, hi, half_period, 1e-13 * scale * (hi - lo), 48)
}

// Each of the four phasor components of cos * sin integrates to a Gaussian
// tail over [-t_f, inf), i.e. an erfc of complex argument. The products are
// arranged so every factor stays O(1): exp(-y^2) erfc(xhat - i y) is
// computed as exp(-xhat^2 + 2 i xhat y) w(y + i xhat).
fn gauss_cos_halfline(f0: f64, omega_f: f64, t_f: f64, t2: f64, omega0: f64) -> f64 {
    let damped_erfc = |xhat: f64, y: f64| -> C64 {
        let damp = C64::new(0.0, 2.0 * xhat * y).exp() * (-xhat * xhat).exp();
        if xhat >= 0.0 {
            damp * faddeeva(C64::new(y, xhat))
        } else {
            C64::new(2.0 * (-y * y).exp(), 0.0) - damp * faddeeva(C64::new(-y, -xhat))
        }
    };
    let xhat = -t_f / t2;
    let mut total = C64::new(0.0, 0.0);
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let om = s1 * omega0 + s2 * omega_f;
            let y = om * t2 / 2.0;
            // (s1 / 4i) e^{i s1 w0 t_f} (sqrt(pi) T2 / 2) e^{-om^2 T2^2/4} erfc(-t_f/T2 - i om T2/2)
            let phase = C64::new(0.0, s1 * omega0 * t_f).exp();
            let coef = C64::new(0.0, -s1 / 4.0) * phase * (PI.sqrt() * t2 / 2.0);
            total += coef * damped_erfc(xhat, y);
        }
    }
    debug_assert!(total.im.abs() <= 1e-12 * total.re.abs().max(1.0));
    f0 * total.re
}

/// Displacement in the abrupt limit:
/// alpha = (i e^{-i omega0 t} / sqrt(2 m omega0))
///   [ f~(omega0) e^{i omega0 t_f}
///     - (2 Omega^2 T / omega0) { I + Im[f~*(omega0) e^{-i omega0 t_f}] } ].
pub fn abrupt_displacement(omega0: f64, omega2t: f64, force: &ForceProfile, t: f64) -> Result<C64> {
    if matches!(force, ForceProfile::Null { .. }) {
        return Ok(C64::new(0.0, 0.0));
    }
    let m = force.mass();
    let t_f = force.center();
    let ft = force_fourier(force, omega0);
    let rot_f = C64::new(0.0, omega0 * t_f).exp();
    let i_int = halfline_sine_integral(force, omega0)?;
    let interference = (ft.conj() / rot_f).im;
    let bracket = ft * rot_f - C64::new(2.0 * omega2t / omega0 * (i_int + interference), 0.0);
    let prefactor =
        C64::new(0.0, 1.0) * C64::new(0.0, -omega0 * t).exp() / (2.0 * m * omega0).sqrt();
    Ok(prefactor * bracket)
}
