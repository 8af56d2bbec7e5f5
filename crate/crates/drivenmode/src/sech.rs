//! Closed-form reference solution for the sech^2 bump: hypergeometric
//! trajectory and exact scattering coefficients. This is the primary oracle
//! the numeric solver is validated against.

use crate::error::{Error, Result};
use crate::special::{gamma, hyp2f1, hyp2f1_one_minus, recip_gamma};
use crate::C64;
use std::f64::consts::PI;

/// Parameters of the plus-sign sech^2 bump,
/// omega^2(t) = omega0^2 + Omega^2 / cosh^2(t/T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SechParams {
    pub omega0: f64,
    pub amp: f64,
    pub t_scale: f64,
}

impl SechParams {
    pub fn new(omega0: f64, amp: f64, t_scale: f64) -> Result<Self> {
        if !(omega0 > 0.0) || !(t_scale > 0.0) || !(amp >= 0.0) {
            return Err(Error::InvalidInput(
                "sech params require omega0 > 0, T > 0, Omega >= 0".into(),
            ));
        }
        Ok(SechParams {
            omega0,
            amp,
            t_scale,
        })
    }

    /// s = ( sqrt(1 + 4 Omega^2 T^2) - 1 ) / 2
    pub fn s(&self) -> f64 {
        let x = self.amp * self.t_scale;
        0.5 * ((1.0 + 4.0 * x * x).sqrt() - 1.0)
    }
}

/// Exact Jost solution
/// xi(t) = ((1-eta^2)/4)^(-i w0 T / 2) 2F1(-i w0 T - s, -i w0 T + s + 1; -i w0 T + 1; (1+eta)/2)
/// with eta = tanh(t/T). Normalized so xi -> exp(-i w0 t) as t -> -infinity.
pub fn exact_xi(params: &SechParams, t: f64) -> Result<C64> {
    let w0t = params.omega0 * params.t_scale;
    let s = params.s();
    let u = t / params.t_scale;
    // z = (1 + tanh u)/2 and 1 - z, each in its stable logistic form; for
    // u >> 1, z rounds to exactly 1 but 1 - z = 1/(1 + e^{2u}) stays exact
    let z = 1.0 / (1.0 + (-2.0 * u).exp());
    let omz = 1.0 / (1.0 + (2.0 * u).exp());
    // prefactor ((1-eta^2)/4)^(-i w0 T/2) = exp(i w0 T ln(2 cosh u)), |.| = 1
    let ln2cosh = u.abs() + (-2.0 * u.abs()).exp().ln_1p();
    let prefactor = C64::new(0.0, w0t * ln2cosh).exp();
    let a = C64::new(-s, -w0t);
    let b = C64::new(s + 1.0, -w0t);
    let c = C64::new(1.0, -w0t);
    let f = if z <= 0.5 {
        hyp2f1(a, b, c, C64::new(z, 0.0))?
    } else {
        hyp2f1_one_minus(a, b, c, C64::new(omz, 0.0))?
    };
    Ok(prefactor * f)
}

/// Exact scattering coefficients:
/// A = Gamma(1 - i w0 T) Gamma(-i w0 T) / [Gamma(-i w0 T - s) Gamma(-i w0 T + s + 1)],
/// B = i sin(pi s) / sinh(pi w0 T).
pub fn exact_coefficients(params: &SechParams) -> Result<(C64, C64)> {
    let w0t = params.omega0 * params.t_scale;
    if w0t == 0.0 {
        return Err(Error::Domain(
            "exact coefficients undefined at omega0 T = 0 (Gamma pole)".into(),
        ));
    }
    let s = params.s();
    let iw = C64::new(0.0, -w0t);
    let a = gamma(iw + 1.0) * gamma(iw) * recip_gamma(iw - s) * recip_gamma(iw + s + 1.0);
    let sinh = (PI * w0t).sinh();
    if !sinh.is_finite() {
        return Err(Error::Domain(format!(
            "sinh(pi omega0 T) overflows at omega0 T = {w0t}"
        )));
    }
    let b = C64::new(0.0, (PI * s).sin() / sinh);
    Ok((a, b))
}
