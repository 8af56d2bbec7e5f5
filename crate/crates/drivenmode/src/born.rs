//! First-order Born approximation for a weak parametric drive: integral-
//! equation trajectory, closed-form scattering coefficients for the sech^2
//! bump, and the broadband displacement with its response-function integral.

use crate::error::{Error, Result};
use crate::profile::{
    force_fourier_uncentered, omega_squared, ForceProfile, FrequencyProfile, ProfileSign,
};
use crate::quad;
use crate::C64;
use std::f64::consts::PI;

fn signed_amp2(profile: &FrequencyProfile) -> Result<(f64, f64, f64)> {
    // (signed Omega^2, T, omega0) for a sech bump
    match profile {
        FrequencyProfile::SechBump {
            omega0,
            amp,
            t_scale,
            sign,
        } => {
            let s = match sign {
                ProfileSign::Plus => 1.0,
                ProfileSign::Minus => -1.0,
            };
            Ok((s * amp * amp, *t_scale, *omega0))
        }
        _ => Err(Error::Precondition(
            "operation requires a sech-bump profile".into(),
        )),
    }
}

/// Born trajectory
/// xi(t) = e^{-i w0 t} - Int_{-inf}^{t} (1/w0) sin[w0(t-tau)] [w^2(tau)-w0^2] e^{-i w0 tau} dtau.
pub fn born_xi(profile: &FrequencyProfile, t: f64) -> Result<C64> {
    let omega0 = profile.omega0();
    let plane = C64::new(0.0, -omega0 * t).exp();
    let (lo, hi) = match profile.drive_span() {
        None => return Ok(plane), // constant profile: zero perturbation
        Some(s) => s,
    };
    let upper = t.min(hi);
    if upper <= lo {
        return Ok(plane);
    }
    let w02 = omega0 * omega0;
    let f = |tau: f64| {
        let v = omega_squared(profile, tau).unwrap_or(w02) - w02;
        (omega0 * (t - tau)).sin() / omega0 * v * C64::new(0.0, -omega0 * tau).exp()
    };
    let correction = quad::adaptive_simpson_osc_c64(
        &f,
        lo,
        upper,
        PI / (2.0 * omega0),
        1e-13 * (upper - lo),
        48,
    )?;
    Ok(plane - correction)
}

/// First-order coefficients
/// A = 1 - (i/2w0) Int [w^2 - w0^2],  B = (i/2w0) Int [w^2 - w0^2] e^{-2 i w0 tau}.
/// Sech bumps use the closed forms A = 1 - i Omega^2 T / w0,
/// B = i pi Omega^2 T^2 / sinh(pi w0 T); tabulated profiles are integrated
/// numerically.
pub fn born_coefficients(profile: &FrequencyProfile) -> Result<(C64, C64)> {
    let omega0 = profile.omega0();
    match profile {
        FrequencyProfile::Constant { .. } => Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
        FrequencyProfile::SechBump { .. } => {
            let (amp2, t_scale, _) = signed_amp2(profile)?;
            let a = C64::new(1.0, -amp2 * t_scale / omega0);
            let b = C64::new(
                0.0,
                PI * amp2 * t_scale * t_scale / (PI * omega0 * t_scale).sinh(),
            );
            Ok((a, b))
        }
        FrequencyProfile::Tabulated { samples, .. } => {
            let w02 = omega0 * omega0;
            let (lo, hi) = (samples[0].0, samples[samples.len() - 1].0);
            let weight = |tau: f64| omega_squared(profile, tau).unwrap_or(w02) - w02;
            let ia =
                quad::adaptive_simpson_osc_f64(&|tau| weight(tau), lo, hi, hi - lo, 1e-12, 48)?;
            let ib = quad::adaptive_simpson_osc_c64(
                &|tau| weight(tau) * C64::new(0.0, -2.0 * omega0 * tau).exp(),
                lo,
                hi,
                PI / (2.0 * omega0),
                1e-12,
                48,
            )?;
            Ok((
                C64::new(1.0, 0.0) - C64::new(0.0, 0.5 / omega0) * ia,
                C64::new(0.0, 0.5 / omega0) * ib,
            ))
        }
    }
}

/// Response function R(nu) = Omega^2 T^2 / [(w0 - nu) sinh(pi (w0 + nu) T / 2)],
/// simple poles at nu = ±w0 (the quadrature treats them as principal values).
pub fn born_response(profile: &FrequencyProfile, nu: f64) -> Result<f64> {
    let (amp2, t_scale, omega0) = signed_amp2(profile)?;
    Ok(amp2 * t_scale * t_scale / ((omega0 - nu) * (PI * (omega0 + nu) * t_scale / 2.0).sinh()))
}

/// The response-function integral PV Int dnu/(2 pi) F~*(nu) R(nu), with
/// symmetric exclusion windows of half-width `eps` at both poles nu = ±w0.
///
/// Near each pole the principal value is taken over symmetric pairs
/// parameterized by the distance u from the pole, which keeps the paired
/// integrand smooth and bounded; plain adaptive quadrature covers the rest.
/// The domain is truncated at |nu| <= w0 + 40/T.
pub fn born_response_integral(
    profile: &FrequencyProfile,
    force: &ForceProfile,
    eps: f64,
) -> Result<C64> {
    let (amp2, t_scale, omega0) = signed_amp2(profile)?;
    let lim = omega0 + 40.0 / t_scale;
    let d = 0.5 * omega0; // pole-neighborhood half-width
    let ft_conj = |nu: f64| force_fourier_uncentered(force, nu).conj();
    // paired integrand around nu = -w0 (the sinh zero):
    // R(-w0+u) + R(-w0-u) weighted by F~*
    let pair_minus = |u: f64| {
        let bracket =
            ft_conj(-omega0 + u) / (2.0 * omega0 - u) - ft_conj(-omega0 - u) / (2.0 * omega0 + u);
        bracket * (amp2 * t_scale * t_scale / (PI * u * t_scale / 2.0).sinh())
    };
    // paired integrand around nu = +w0 (the 1/(w0 - nu) pole)
    let pair_plus = |u: f64| {
        let bracket = ft_conj(omega0 - u) / (PI * (2.0 * omega0 - u) * t_scale / 2.0).sinh()
            - ft_conj(omega0 + u) / (PI * (2.0 * omega0 + u) * t_scale / 2.0).sinh();
        bracket * (amp2 * t_scale * t_scale / u)
    };
    let outer = |nu: f64| {
        let r = amp2 * t_scale * t_scale
            / ((omega0 - nu) * (PI * (omega0 + nu) * t_scale / 2.0).sinh());
        ft_conj(nu) * r
    };
    // oscillation scale of F~*(nu) in nu is the force center time
    let nu_panel = PI / force.center().abs().max(1.0 / t_scale);
    let scale: f64 = (0..=64)
        .map(|k| {
            let nu = -0.9 * omega0 + 1.8 * omega0 * k as f64 / 64.0;
            outer(nu).norm()
        })
        .fold(0.0, f64::max)
        .max(1e-300);
    let tol = 1e-11 * scale;
    let mut total = C64::new(0.0, 0.0);
    for (lo, hi) in [
        (-lim, -omega0 - d),
        (-omega0 + d, omega0 - d),
        (omega0 + d, lim),
    ] {
        if hi > lo {
            total += quad::adaptive_simpson_osc_c64(&outer, lo, hi, nu_panel, tol * (hi - lo), 48)?;
        }
    }
    total += quad::adaptive_simpson_osc_c64(&pair_minus, eps, d, nu_panel, tol * d, 48)?;
    total += quad::adaptive_simpson_osc_c64(&pair_plus, eps, d, nu_panel, tol * d, 48)?;
    Ok(total / (2.0 * PI))
}

/// Broadband Born displacement
/// alpha = (i e^{-i w0 t}/sqrt(2 m w0)) [A F~(w0) - B* F~*(w0)
///          - PV Int dnu/(2 pi) F~*(nu) R(nu)],
/// with exclusion windows of half-width 1e-6 w0 at the poles.
pub fn born_displacement(profile: &FrequencyProfile, force: &ForceProfile, t: f64) -> Result<C64> {
    let (amp2, _, omega0) = signed_amp2(profile)?;
    if amp2 < 0.0 {
        return Err(Error::Precondition(
            "broadband displacement requires the plus-sign bump".into(),
        ));
    }
    if matches!(force, ForceProfile::Null { .. }) {
        return Ok(C64::new(0.0, 0.0));
    }
    let (a, b) = born_coefficients(profile)?;
    let ft0 = force_fourier_uncentered(force, omega0);
    let main = a * ft0 - b.conj() * ft0.conj();
    let rint = born_response_integral(profile, force, 1e-6 * omega0)?;
    let prefactor = C64::new(0.0, 1.0) * C64::new(0.0, -omega0 * t).exp()
        / (2.0 * force.mass() * omega0).sqrt();
    Ok(prefactor * (main - rint))
}
