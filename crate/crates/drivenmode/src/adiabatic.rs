//! Adiabatic (slow-drive) limit of the minus-sign profile
//! omega^2(t) = omega0^2 - Omega^2/cosh^2(t/T): WKB solution with the
//! exponentially small reflected wave switched on across the Stokes line by
//! an error-function step of width T_S.
//!
//! The asymptotic forms here carry the reflected amplitude exp(-w0 T g) with
//! w0 T g = (pi/2)(w0 - Omega) T. Direct integration (and the analytic
//! continuation of the exact sech^2 solution) gives twice that exponent;
//! the unit tests pin the measured relationship.

use crate::error::{Error, Result};
use crate::profile::{force_fourier, ForceProfile};
use crate::quad;
use crate::special;
use crate::C64;
use std::f64::consts::PI;

/// Which range convention the smoothing step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StepConvention {
    /// U = (1 + Erf(t/T_S))/2, rising from zero to one.
    #[default]
    ZeroToOne,
    /// U = Erf(t/T_S), rising from minus one to one.
    RawErf,
}

/// Minus-sign sech^2 profile parameters in the adiabatic regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdiabaticParams {
    pub omega0: f64,
    pub amp: f64,
    pub t_scale: f64,
}

impl AdiabaticParams {
    pub fn new(omega0: f64, amp: f64, t_scale: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !(t_scale > 0.0) || !(amp >= 0.0) {
            return Err(Error::InvalidInput(
                "adiabatic params require omega0 > 0, T > 0, Omega >= 0".into(),
            ));
        }
        if amp >= omega0 {
            return Err(Error::InvalidInput(
                "adiabatic profile requires Omega < omega0 (stability)".into(),
            ));
        }
        Ok(AdiabaticParams {
            omega0,
            amp,
            t_scale,
        })
    }

    /// Effective frequency at the bottom of the dip, sqrt(omega0^2 - Omega^2).
    pub fn omega_eff(&self) -> f64 {
        (self.omega0 * self.omega0 - self.amp * self.amp).sqrt()
    }

    /// Instantaneous frequency omega(t).
    pub fn omega_at(&self, t: f64) -> f64 {
        let sech = 1.0 / (t / self.t_scale).cosh();
        (self.omega0 * self.omega0 - self.amp * self.amp * sech * sech).sqrt()
    }

    /// The full exponent w0 T g(Omega/omega0) = (pi/2)(omega0 - Omega) T,
    /// the Stokes-line phase integral from the real axis to the nearest
    /// turning point.
    pub fn g_exponent(&self) -> f64 {
        0.5 * PI * (self.omega0 - self.amp) * self.t_scale
    }

    /// Stokes smoothing width T_S = w0 T g / (2 sqrt(omega0^2 - Omega^2)).
    pub fn t_stokes(&self) -> f64 {
        self.g_exponent() / (2.0 * self.omega_eff())
    }

    /// WKB phase integral from 0 to t of omega(tau).
    pub fn phase_integral(&self, t: f64) -> Result<f64> {
        if t == 0.0 {
            return Ok(0.0);
        }
        let f = |tau: f64| self.omega_at(tau);
        let (a, b) = if t > 0.0 { (0.0, t) } else { (t, 0.0) };
        let v = quad::adaptive_simpson_f64(&f, a, b, 1e-12 * self.omega0 * (b - a), 44)?;
        Ok(if t > 0.0 { v } else { -v })
    }

    /// Smoothing step across the Stokes line.
    pub fn step_u(&self, t: f64, conv: StepConvention) -> f64 {
        let e = special::erf(C64::new(t / self.t_stokes(), 0.0)).re;
        match conv {
            StepConvention::ZeroToOne => 0.5 * (1.0 + e),
            StepConvention::RawErf => e,
        }
    }
}

/// |B| in the adiabatic approximation: exp(-w0 T g).
pub fn adiabatic_b_magnitude(params: &AdiabaticParams) -> f64 {
    (-params.g_exponent()).exp()
}

/// WKB scattering coefficients with phases:
/// A = exp(-i D) with D = Int (omega - omega0) dtau over the whole drive
/// (|A| = 1 at this order), and B = exp(-w0 T g) exp(+i D/2) from the
/// switched-on reflected wave at late times.
pub fn adiabatic_coefficients(params: &AdiabaticParams) -> Result<(C64, C64)> {
    // omega - omega0 decays like exp(-2|t|/T); 30 T covers it
    let half = quad::adaptive_simpson_f64(
        &|tau: f64| params.omega_at(tau) - params.omega0,
        0.0,
        30.0 * params.t_scale,
        1e-13 * params.omega0 * params.t_scale,
        44,
    )?;
    let d_total = 2.0 * half;
    let a = C64::new(0.0, -d_total).exp();
    let b = adiabatic_b_magnitude(params) * C64::new(0.0, half).exp();
    Ok((a, b))
}

/// WKB trajectory with the Stokes-smoothed reflected wave:
/// sqrt(omega0/omega(t)) { exp(-i Int omega) + exp(-w0 T g) U(t) exp(+i Int omega) }.
///
/// Phases are referenced to t = 0; relative to the Jost normalization the
/// whole solution carries the extra constant phase
/// exp(-i Int_{-inf}^0 (omega - omega0) dtau).
pub fn adiabatic_xi(params: &AdiabaticParams, t: f64, conv: StepConvention) -> Result<C64> {
    let phase = params.phase_integral(t)?;
    let amp = (params.omega0 / params.omega_at(t)).sqrt();
    let fwd = C64::new(0.0, -phase).exp();
    let bwd = C64::new(0.0, phase).exp();
    let refl = (-params.g_exponent()).exp() * params.step_u(t, conv);
    Ok(amp * (fwd + refl * bwd))
}

/// Displacement for an impulsive force applied during the slow drive:
/// alpha = (i e^{-i omega0 t} / sqrt(2 m w_eff))
///   [ e^{i w_eff t_f} f~(w_eff)
///     - e^{-i w_eff t_f} f~*(w_eff) exp(-w0 T g) Erfc(t_f / T_S) ].
///
/// Stated validity window: |t_f| << T and T2 << T_S, T.
pub fn adiabatic_displacement(
    params: &AdiabaticParams,
    force: &ForceProfile,
    t: f64,
) -> Result<C64> {
    if matches!(force, ForceProfile::Null { .. }) {
        return Ok(C64::new(0.0, 0.0));
    }
    let weff = params.omega_eff();
    let m = force.mass();
    let t_f = force.center();
    let ft = force_fourier(force, weff);
    let rot = C64::new(0.0, weff * t_f).exp();
    let erfc_tf = 1.0 - special::erf(C64::new(t_f / params.t_stokes(), 0.0)).re;
    let bracket = rot * ft - ft.conj() / rot * ((-params.g_exponent()).exp() * erfc_tf);
    let prefactor =
        C64::new(0.0, 1.0) * C64::new(0.0, -params.omega0 * t).exp() / (2.0 * m * weff).sqrt();
    Ok(prefactor * bracket)
}
