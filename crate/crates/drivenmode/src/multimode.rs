//! n coupled modes with a time-dependent symmetric coupling matrix: matrix
//! Jost solutions, the unitarity relation, the matrix Green's function, and
//! the Bogolyubov-plus-displacement evolution of all mode operators.
//!
//! Each launched solution mu starts as sqrt(w_ref/w_i) delta_{i mu}
//! exp(-i w_i t) in the far past; the reference scale w_ref defaults to the
//! smallest mode frequency (the mass gap) and is configurable.

use crate::error::{Error, Result};
use crate::ode;
use crate::profile::{force_value, ForceProfile, TimeGrid};
use crate::quad;
use crate::C64;
use serde::Deserialize;

/// Storage cap per launched solution; shrinks quadratically with n so the
/// full matrix trajectory stays within a fixed memory budget.
fn max_stored(n: usize) -> usize {
    ((1 << 24) / (n * n).max(1)).clamp(1 << 10, 1 << 15)
}

const MAX_STEPS: usize = 1 << 22;

/// One sech^2 coupling pulse feeding the symmetric entry (i, j):
/// Omega^2_ij(t) += amplitude / cosh^2((t - t_center)/t_scale).
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct CouplingPulse {
    pub i: usize,
    pub j: usize,
    pub amplitude: f64,
    pub t_scale: f64,
    #[serde(default)]
    pub t_center: f64,
}

/// System definition: mode frequencies, coupling pulses, per-mode forces.
#[derive(Debug, Clone)]
pub struct MultimodeSystem {
    omegas: Vec<f64>,
    pulses: Vec<CouplingPulse>,
    forces: Vec<ForceProfile>,
    mass: f64,
    omega_ref: Option<f64>,
}

impl MultimodeSystem {
    pub fn new(
        omegas: Vec<f64>,
        pulses: Vec<CouplingPulse>,
        forces: Vec<ForceProfile>,
    ) -> Result<Self> {
        if omegas.is_empty() {
            return Err(Error::InvalidInput("need at least one mode".into()));
        }
        if omegas.iter().any(|&w| !(w > 0.0)) {
            return Err(Error::InvalidInput(
                "mode frequencies must be positive".into(),
            ));
        }
        let n = omegas.len();
        for p in &pulses {
            if p.i >= n || p.j >= n {
                return Err(Error::InvalidInput(format!(
                    "pulse indices ({}, {}) out of range for n = {n}",
                    p.i, p.j
                )));
            }
            if !(p.t_scale > 0.0) {
                return Err(Error::InvalidInput("pulse t_scale must be positive".into()));
            }
        }
        if !forces.is_empty() && forces.len() != n {
            return Err(Error::InvalidInput(format!(
                "got {} forces for {n} modes (give none or one per mode)",
                forces.len()
            )));
        }
        let forces = if forces.is_empty() {
            vec![ForceProfile::null(); n]
        } else {
            forces
        };
        Ok(MultimodeSystem {
            omegas,
            pulses,
            forces,
            mass: 1.0,
            omega_ref: None,
        })
    }

    pub fn with_mass(mut self, m: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidInput("mass must be positive".into()));
        }
        self.mass = m;
        Ok(self)
    }

    /// Override the reference scale w_ref (default: smallest mode frequency).
    pub fn with_omega_ref(mut self, w: f64) -> Result<Self> {
        if !(w > 0.0) {
            return Err(Error::InvalidInput("omega_ref must be positive".into()));
        }
        self.omega_ref = Some(w);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.omegas.len()
    }
    pub fn omegas(&self) -> &[f64] {
        &self.omegas
    }
    pub fn forces(&self) -> &[ForceProfile] {
        &self.forces
    }
    pub fn mass(&self) -> f64 {
        self.mass
    }
    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
            .unwrap_or_else(|| self.omegas.iter().copied().fold(f64::INFINITY, f64::min))
    }

    /// Largest coupling magnitude at time t (flatness checks).
    fn coupling_peak_at(&self, t: f64) -> f64 {
        self.pulses
            .iter()
            .map(|p| {
                let c = ((t - p.t_center) / p.t_scale).cosh();
                (p.amplitude / (c * c)).abs()
            })
            .fold(0.0, f64::max)
    }

    /// Parse a JSON definition (omegas, pulses, forces, mass, omega_ref).
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct ForceDef {
            kind: String,
            #[serde(default)]
            f0: f64,
            #[serde(default)]
            omega_f: f64,
            #[serde(default)]
            t_f: f64,
            #[serde(default = "one")]
            t2: f64,
        }
        fn one() -> f64 {
            1.0
        }
        #[derive(Deserialize)]
        struct Def {
            omegas: Vec<f64>,
            #[serde(default)]
            pulses: Vec<CouplingPulse>,
            #[serde(default)]
            forces: Vec<ForceDef>,
            #[serde(default)]
            mass: Option<f64>,
            #[serde(default)]
            omega_ref: Option<f64>,
        }
        let def: Def = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInput(format!("system definition: {e}")))?;
        let forces = def
            .forces
            .iter()
            .map(|f| match f.kind.as_str() {
                "gauss_cos" => ForceProfile::gauss_cos(f.f0, f.omega_f, f.t_f, f.t2),
                "null" => Ok(ForceProfile::null()),
                other => Err(Error::InvalidInput(format!(
                    "unknown force kind '{other}' (gauss_cos | null)"
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sys = MultimodeSystem::new(def.omegas, def.pulses, forces)?;
        if let Some(m) = def.mass {
            sys = sys.with_mass(m)?;
        }
        if let Some(w) = def.omega_ref {
            sys = sys.with_omega_ref(w)?;
        }
        Ok(sys)
    }
}

/// Matrix Jost data: per-launch sampled trajectories and the (A, B) matrices
/// indexed [i][mu] (component i of launch mu).
#[derive(Debug, Clone)]
pub struct MultimodeJost {
    omegas: Vec<f64>,
    omega_ref: f64,
    t_start: f64,
    h: f64,
    stored: usize,
    /// xi[mu][k * n + i]
    xi: Vec<Vec<C64>>,
    pub a: Vec<Vec<C64>>,
    pub b: Vec<Vec<C64>>,
    pub achieved_tol: f64,
}

impl MultimodeJost {
    pub fn n(&self) -> usize {
        self.omegas.len()
    }
    pub fn t_min(&self) -> f64 {
        self.t_start
    }
    pub fn t_max(&self) -> f64 {
        self.t_start + self.h * (self.stored - 1) as f64
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    pub fn omega_ref(&self) -> f64 {
        self.omega_ref
    }
    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.h
    }

    /// Sampled component i of launch mu at stored index k.
    pub fn xi_sample(&self, mu: usize, k: usize, i: usize) -> C64 {
        self.xi[mu][k * self.n() + i]
    }

    // 4-point Lagrange interpolation of component i of launch mu
    fn xi_at(&self, mu: usize, i: usize, t: f64) -> Result<C64> {
        if t < self.t_min() - 1e-9 * self.h || t > self.t_max() + 1e-9 * self.h {
            return Err(Error::OutOfRange(format!(
                "t = {t} outside [{}, {}]",
                self.t_min(),
                self.t_max()
            )));
        }
        let n = self.n();
        let kf = ((t - self.t_start) / self.h).floor() as isize;
        let k0 = kf.clamp(1, self.stored as isize - 3) as usize - 1;
        let mut out = C64::new(0.0, 0.0);
        for a in 0..4 {
            let mut w = 1.0;
            let ta = self.time(k0 + a);
            for b in 0..4 {
                if a != b {
                    w *= (t - self.time(k0 + b)) / (ta - self.time(k0 + b));
                }
            }
            out += w * self.xi[mu][(k0 + a) * n + i];
        }
        Ok(out)
    }
}

fn extract_ab_entry(omega_i: f64, omega_ref: f64, t: f64, xi: C64, xi_dot: C64) -> (C64, C64) {
    let scale = (omega_i / omega_ref).sqrt();
    let iw = C64::new(0.0, omega_i);
    let rot = C64::new(0.0, omega_i * t).exp();
    let a = scale * (iw * xi - xi_dot) * rot / (2.0 * iw);
    let b = scale * (xi_dot + iw * xi) / (rot * 2.0 * iw);
    (a, b)
}

struct MmRun {
    h_stored: f64,
    stored: usize,
    xi: Vec<Vec<C64>>,
    a: Vec<Vec<C64>>,
    b: Vec<Vec<C64>>,
}

fn integrate_once(system: &MultimodeSystem, grid: &TimeGrid, steps: usize, keep: bool) -> MmRun {
    let n = system.n();
    let omegas = &system.omegas;
    let omega_ref = system.omega_ref();
    let h = (grid.t_max - grid.t_min) / steps as f64;
    let mut stride = 1usize;
    while steps / stride > max_stored(n) {
        stride *= 2;
    }
    let stored = if keep { steps / stride + 1 } else { 0 };
    let rhs = |t: f64, y: &[C64], dy: &mut [C64]| {
        for i in 0..n {
            dy[i] = y[n + i];
            dy[n + i] = -omegas[i] * omegas[i] * y[i];
        }
        for p in &system.pulses {
            let c = ((t - p.t_center) / p.t_scale).cosh();
            let s = p.amplitude / (c * c);
            dy[n + p.i] -= s * y[p.j];
            if p.i != p.j {
                dy[n + p.j] -= s * y[p.i];
            }
        }
    };
    let mut xi_all = Vec::with_capacity(n);
    let mut a = vec![vec![C64::new(0.0, 0.0); n]; n];
    let mut b = vec![vec![C64::new(0.0, 0.0); n]; n];
    for mu in 0..n {
        let mut y0 = vec![C64::new(0.0, 0.0); 2 * n];
        let norm = (omega_ref / omegas[mu]).sqrt();
        y0[mu] = norm * C64::new(0.0, -omegas[mu] * grid.t_min).exp();
        y0[n + mu] = C64::new(0.0, -omegas[mu]) * y0[mu];
        let mut samples = Vec::with_capacity(stored * n);
        let yf = ode::rk4_fixed(&rhs, grid.t_min, &y0, h, steps, |k, _t, y| {
            if keep && k % stride == 0 {
                samples.extend_from_slice(&y[..n]);
            }
        });
        let t_end = grid.t_min + steps as f64 * h;
        for i in 0..n {
            let (ai, bi) = extract_ab_entry(omegas[i], omega_ref, t_end, yf[i], yf[n + i]);
            a[i][mu] = ai;
            b[i][mu] = bi;
        }
        xi_all.push(samples);
    }
    MmRun {
        h_stored: h * stride as f64,
        stored,
        xi: xi_all,
        a,
        b,
    }
}

fn mat_diff(a: &[Vec<C64>], b: &[Vec<C64>]) -> f64 {
    let mut d: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b.iter()) {
        for (x, y) in ra.iter().zip(rb.iter()) {
            d = d.max((x - y).norm());
        }
    }
    d
}

/// Solve the n launched Jost problems, refining the shared step until the
/// (A, B) matrices are stable to `tol` entrywise.
pub fn solve_multimode_jost(
    system: &MultimodeSystem,
    grid: &TimeGrid,
    tol: f64,
) -> Result<MultimodeJost> {
    if !(tol > 0.0) {
        return Err(Error::Precondition(
            "solver tolerance must be positive".into(),
        ));
    }
    let w_ref = system.omega_ref();
    let eps = 1e-10 * w_ref * w_ref;
    for t in [grid.t_min, grid.t_max] {
        let peak = system.coupling_peak_at(t);
        if peak > eps {
            return Err(Error::Precondition(format!(
                "coupling not flat at grid end t = {t}: peak {peak:.3e} > {eps:.3e}"
            )));
        }
    }
    let mut steps = grid.n_steps.max(1024).div_ceil(1024) * 1024;
    let mut prev = integrate_once(system, grid, steps, false);
    let mut achieved = f64::INFINITY;
    while steps < MAX_STEPS {
        steps *= 2;
        let keep = true;
        let cur = integrate_once(system, grid, steps, keep);
        achieved = mat_diff(&cur.a, &prev.a).max(mat_diff(&cur.b, &prev.b));
        if achieved <= tol {
            return Ok(MultimodeJost {
                omegas: system.omegas.clone(),
                omega_ref: w_ref,
                t_start: grid.t_min,
                h: cur.h_stored,
                stored: cur.stored,
                xi: cur.xi,
                a: cur.a,
                b: cur.b,
                achieved_tol: achieved,
            });
        }
        prev = cur;
    }
    Err(Error::Convergence {
        context: "solve_multimode_jost step refinement",
        achieved,
        required: tol,
    })
}

/// Max entrywise deviation of A^dag A - B^dag B from the identity.
pub fn unitarity_defect(mj: &MultimodeJost) -> f64 {
    let n = mj.n();
    let mut worst: f64 = 0.0;
    for mu in 0..n {
        for nu in 0..n {
            let mut s = C64::new(0.0, 0.0);
            for i in 0..n {
                s += mj.a[i][mu].conj() * mj.a[i][nu] - mj.b[i][mu].conj() * mj.b[i][nu];
            }
            let target = if mu == nu { 1.0 } else { 0.0 };
            worst = worst.max((s - target).norm());
        }
    }
    worst
}

/// Retarded matrix Green's function
/// G_ij(t, tau) = theta(t - tau)/(2 i w_ref) Sum_mu [xi^mu_j(tau) xi^mu_i*(t) - c.c.].
pub fn multimode_green(mj: &MultimodeJost, t: f64, tau: f64) -> Result<Vec<Vec<f64>>> {
    let n = mj.n();
    let mut g = vec![vec![0.0; n]; n];
    if t <= tau {
        // still validate the query window
        mj.xi_at(0, 0, t)?;
        mj.xi_at(0, 0, tau)?;
        return Ok(g);
    }
    for (i, row) in g.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for mu in 0..n {
                let xt = mj.xi_at(mu, i, t)?;
                let xtau = mj.xi_at(mu, j, tau)?;
                acc += (xtau * xt.conj()).im;
            }
            *entry = acc / mj.omega_ref;
        }
    }
    Ok(g)
}

/// Bogolyubov matrices and displacements between asymptotic times t0 and t:
/// U_imu = A_imu e^{-i w_i t} e^{i w_mu t0}, V_imu = B*_imu e^{-i w_i t} e^{-i w_mu t0},
/// alpha_i = (i e^{-i w_i t}/sqrt(2 m w_ref)) Sum_mu sqrt(w_i/w_mu)
///            [A_imu P_mu* - B*_imu P_mu],  P_mu = Sum_j Int xi^mu_j F_j.
///
/// V carries the conjugate of the scattering matrix: it multiplies the
/// creation operators, which enter through the positive-frequency part of the
/// conjugate solutions. The n = 1 case then reduces exactly to the
/// single-mode map (u, v) — the convention the reduction tests pin down.
#[allow(clippy::type_complexity)]
pub fn multimode_evolution(
    system: &MultimodeSystem,
    mj: &MultimodeJost,
    t0: f64,
    t: f64,
) -> Result<(Vec<Vec<C64>>, Vec<Vec<C64>>, Vec<C64>)> {
    let n = mj.n();
    let omegas = &mj.omegas;
    let mut u = vec![vec![C64::new(0.0, 0.0); n]; n];
    let mut v = vec![vec![C64::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for mu in 0..n {
            let rot = C64::new(0.0, -omegas[i] * t).exp();
            u[i][mu] = mj.a[i][mu] * rot * C64::new(0.0, omegas[mu] * t0).exp();
            v[i][mu] = mj.b[i][mu].conj() * rot * C64::new(0.0, -omegas[mu] * t0).exp();
        }
    }
    // P_mu: overlap of each launched solution with all forces
    let mut p = vec![C64::new(0.0, 0.0); n];
    for (j, force) in system.forces().iter().enumerate() {
        let (f_lo, f_hi) = match force.support() {
            None => continue,
            Some(s) => s,
        };
        if f_lo < t0 || f_hi > t {
            return Err(Error::Precondition(format!(
                "force {j} support [{f_lo}, {f_hi}] not inside [{t0}, {t}]"
            )));
        }
        if f_lo < mj.t_min() || f_hi > mj.t_max() {
            return Err(Error::Precondition(format!(
                "solution grid does not cover force {j} support [{f_lo}, {f_hi}]"
            )));
        }
        let k_lo = ((f_lo - mj.t_min()) / mj.h()).floor() as usize;
        let k_hi = (((f_hi - mj.t_min()) / mj.h()).ceil() as usize).min(mj.stored - 1);
        for (mu, p_mu) in p.iter_mut().enumerate() {
            let vals: Vec<C64> = (k_lo..=k_hi)
                .map(|k| force_value(force, mj.time(k)) * mj.xi_sample(mu, k, j))
                .collect();
            *p_mu += quad::simpson_sampled_c64(&vals, mj.h());
        }
    }
    let mut alphas = vec![C64::new(0.0, 0.0); n];
    let pre_scale = 1.0 / (2.0 * system.mass() * mj.omega_ref).sqrt();
    for i in 0..n {
        let mut s = C64::new(0.0, 0.0);
        for mu in 0..n {
            let w_ratio = (omegas[i] / omegas[mu]).sqrt();
            s += w_ratio * (mj.a[i][mu] * p[mu].conj() - mj.b[i][mu].conj() * p[mu]);
        }
        alphas[i] = C64::new(0.0, 1.0) * C64::new(0.0, -omegas[i] * t).exp() * pre_scale * s;
    }
    Ok((u, v, alphas))
}

/// Per-mode occupations diag(V V^dag) + |alpha|^2 (derived diagnostic).
pub fn mode_occupations(v: &[Vec<C64>], alphas: &[C64]) -> Vec<f64> {
    v.iter()
        .zip(alphas.iter())
        .map(|(row, a)| row.iter().map(|x| x.norm_sqr()).sum::<f64>() + a.norm_sqr())
        .collect()
}
