//! Quantum outputs built from classical scattering data: the ladder-operator
//! map a(t) = u a0 + v a0^dag + alpha, occupation numbers for vacuum, Fock
//! and coherent initial states, and the squeezed-coherent-state parameters
//! of the final state. Conventions: hbar = 1,
//! a = sqrt(m w/2)(x + i p/(m w)), so quadrature prefactors carry
//! 1/sqrt(2 m w0).

use crate::error::{Error, Result};
use crate::jost::JostSolution;
use crate::profile::{force_fourier, force_value, ForceProfile};
use crate::quad;
use crate::C64;

/// Tolerance on the Bogolyubov identity |u|^2 - |v|^2 = 1 accepted by
/// state extraction.
pub const BOGOLYUBOV_TOL: f64 = 1e-8;

/// Affine ladder-operator evolution between asymptotic times t0 and t.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LadderMap {
    pub u: C64,
    pub v: C64,
    pub alpha: C64,
    pub t0: f64,
    pub t: f64,
    pub mass: f64,
}

impl LadderMap {
    /// | |u|^2 - |v|^2 - 1 |
    pub fn identity_defect(&self) -> f64 {
        (self.u.norm_sqr() - self.v.norm_sqr() - 1.0).abs()
    }
}

/// Squeezed-coherent-state parameters of the evolved vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub squeeze_r: f64,
    pub squeeze_phase: f64,
    pub displacement: C64,
    pub occupation: f64,
}

/// Bogolyubov coefficients from scattering data:
/// u = A e^{-i w0 (t - t0)}, v = B* e^{-i w0 (t + t0)}.
pub fn bogolyubov_from_scattering(a: C64, b: C64, omega0: f64, t0: f64, t: f64) -> (C64, C64) {
    let u = a * C64::new(0.0, -omega0 * (t - t0)).exp();
    let v = b.conj() * C64::new(0.0, -omega0 * (t + t0)).exp();
    (u, v)
}

/// Displacement quadrature
/// alpha = (i e^{-i w0 t} / sqrt(2 m w0)) Int_{t0}^{t} F(tau) [A xi*(tau) - B* xi(tau)] dtau,
/// composite Simpson on the solution grid restricted to the force support,
/// validated by a half-resolution Richardson check.
pub fn displacement(sol: &JostSolution, force: &ForceProfile, t0: f64, t: f64) -> Result<C64> {
    let (f_lo, f_hi) = match force.support() {
        None => return Ok(C64::new(0.0, 0.0)),
        Some(s) => s,
    };
    let slack = 1e-9 * (sol.t_max() - sol.t_min());
    if f_lo < t0 - slack || f_hi > t + slack {
        return Err(Error::Precondition(format!(
            "force support [{f_lo}, {f_hi}] not inside [{t0}, {t}]"
        )));
    }
    if f_lo < sol.t_min() - slack || f_hi > sol.t_max() + slack {
        return Err(Error::Precondition(format!(
            "solution grid [{}, {}] does not cover the force support [{f_lo}, {f_hi}]",
            sol.t_min(),
            sol.t_max()
        )));
    }
    let omega0 = sol.omega0();
    let h = sol.h();
    let k_lo = ((f_lo.max(sol.t_min()) - sol.t_min()) / h).floor() as usize;
    let k_hi = (((f_hi.min(sol.t_max()) - sol.t_min()) / h).ceil() as usize).min(sol.len() - 1);
    let a = sol.a;
    let bc = sol.b.conj();
    let vals: Vec<C64> = (k_lo..=k_hi)
        .map(|k| {
            let xi = sol.xi()[k];
            force_value(force, sol.time(k)) * (a * xi.conj() - bc * xi)
        })
        .collect();
    let full = quad::simpson_sampled_c64(&vals, h);
    let coarse: Vec<C64> = vals.iter().copied().step_by(2).collect();
    let half = quad::simpson_sampled_c64(&coarse, 2.0 * h);
    let scale = vals.iter().map(|v| v.norm()).sum::<f64>() * h;
    let err = (full - half).norm();
    if err > 1e-8 * scale.max(1e-300) {
        return Err(Error::Convergence {
            context: "displacement quadrature Richardson check",
            achieved: err / scale,
            required: 1e-8,
        });
    }
    let prefactor = C64::new(0.0, 1.0) * C64::new(0.0, -omega0 * t).exp()
        / (2.0 * force.mass() * omega0).sqrt();
    Ok(prefactor * full)
}

/// Full ladder map for a solved drive plus force between t0 and t.
pub fn ladder_map(sol: &JostSolution, force: &ForceProfile, t0: f64, t: f64) -> Result<LadderMap> {
    let (u, v) = bogolyubov_from_scattering(sol.a, sol.b, sol.omega0(), t0, t);
    let alpha = displacement(sol, force, t0, t)?;
    Ok(LadderMap {
        u,
        v,
        alpha,
        t0,
        t,
        mass: force.mass(),
    })
}

/// Mean quanta when the initial state is the vacuum: |v|^2 + |alpha|^2.
pub fn occupation_vacuum(map: &LadderMap) -> f64 {
    map.v.norm_sqr() + map.alpha.norm_sqr()
}

/// Occupation gain over an initial n-quanta Fock state, (2n + 1)|B|^2.
/// Only defined without forcing.
pub fn occupation_fock(n: u32, map: &LadderMap) -> Result<f64> {
    if map.alpha.norm() != 0.0 {
        return Err(Error::Precondition(
            "Fock-state gain is defined for alpha = 0 (no forcing)".into(),
        ));
    }
    Ok((2.0 * n as f64 + 1.0) * map.v.norm_sqr())
}

/// Occupation gain over an initial coherent state |alpha0>:
/// (2|a0|^2 + 1)|B|^2 + 2|A||B||a0|^2 cos(2 w0 t0 + 2 phi),
/// with the phase set by alpha0^2 A B.
pub fn occupation_coherent(alpha0: C64, a: C64, b: C64, omega0: f64, t0: f64) -> f64 {
    let n0 = alpha0.norm_sqr();
    let base = (2.0 * n0 + 1.0) * b.norm_sqr();
    let mag = n0 * a.norm() * b.norm();
    if mag == 0.0 {
        return base;
    }
    let two_phi = (alpha0 * alpha0 * a * b).arg();
    base + 2.0 * mag * (2.0 * omega0 * t0 + two_phi).cos()
}

/// Squeezed-coherent-state parameters from a ladder map:
/// sinh r = |v|, phase = arg(u* v), displacement alpha,
/// occupation |v|^2 + |alpha|^2.
pub fn state_from_map(map: &LadderMap) -> Result<OscillatorState> {
    let defect = map.identity_defect();
    if defect > BOGOLYUBOV_TOL {
        return Err(Error::Inconsistency(format!(
            "|u|^2 - |v|^2 deviates from 1 by {defect:.3e}"
        )));
    }
    Ok(OscillatorState {
        squeeze_r: map.v.norm().asinh(),
        squeeze_phase: (map.u.conj() * map.v).arg(),
        displacement: map.alpha,
        occupation: occupation_vacuum(map),
    })
}

/// Displacement when the force acts entirely after the drive:
/// alpha = (i e^{-i w0 t} / sqrt(2 m w0)) e^{i w0 t_f} f~(w0).
pub fn late_force_displacement(force: &ForceProfile, omega0: f64, t: f64) -> C64 {
    let ft = force_fourier(force, omega0);
    let rot = C64::new(0.0, omega0 * force.center()).exp();
    C64::new(0.0, 1.0) * C64::new(0.0, -omega0 * t).exp() / (2.0 * force.mass() * omega0).sqrt()
        * rot
        * ft
}

/// Displacement when the force acts entirely before the drive:
/// alpha = (i e^{-i w0 t} / sqrt(2 m w0)) [A f~(w0) e^{i w0 t_f} - B* f~(w0)* e^{-i w0 t_f}].
pub fn early_force_displacement(a: C64, b: C64, force: &ForceProfile, omega0: f64, t: f64) -> C64 {
    let ft = force_fourier(force, omega0);
    let rot = C64::new(0.0, omega0 * force.center()).exp();
    let bracket = a * ft * rot - b.conj() * ft.conj() / rot;
    C64::new(0.0, 1.0) * C64::new(0.0, -omega0 * t).exp() / (2.0 * force.mass() * omega0).sqrt()
        * bracket
}
