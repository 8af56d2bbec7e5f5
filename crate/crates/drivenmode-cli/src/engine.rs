//! Scenario execution: single runs, t_f sweeps over a shared solution, and
//! side-by-side method comparisons.

use crate::config::{Method, Scenario};
use drivenmode::abrupt::{abrupt_coefficients, abrupt_displacement};
use drivenmode::adiabatic::{adiabatic_coefficients, adiabatic_displacement, AdiabaticParams};
use drivenmode::born::{born_coefficients, born_displacement};
use drivenmode::jost::solve_jost;
use drivenmode::quantum::{self, LadderMap};
use drivenmode::sech::{exact_coefficients, exact_xi, SechParams};
use drivenmode::{Error, ForceProfile, FrequencyProfile, JostSolution, Result, C64};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Everything a method needs to produce (A, B) and per-t_f displacements.
pub enum Engine {
    /// quadrature over a sampled trajectory (numeric solver or exact samples)
    Sampled(Box<JostSolution>),
    Born(FrequencyProfile),
    Abrupt {
        omega0: f64,
        omega2t: f64,
    },
    Adiabatic(AdiabaticParams),
    /// no drive at all: every closed form collapses to the resonant one
    Free {
        omega0: f64,
    },
}

fn sech_params(profile: &FrequencyProfile) -> (f64, f64, f64) {
    // (omega0, amp, t_scale); the constant profile is the amp = 0 limit
    match profile {
        FrequencyProfile::Constant { omega0 } => (*omega0, 0.0, 1.0 / omega0),
        FrequencyProfile::SechBump {
            omega0,
            amp,
            t_scale,
            ..
        } => (*omega0, *amp, *t_scale),
        FrequencyProfile::Tabulated { omega0, .. } => (*omega0, 0.0, 1.0 / omega0),
    }
}

impl Engine {
    pub fn build(method: Method, sc: &Scenario) -> Result<Engine> {
        let profile = &sc.profile;
        if method != Method::Numeric {
            if let FrequencyProfile::Constant { omega0 } = profile {
                return Ok(Engine::Free { omega0: *omega0 });
            }
        }
        match method {
            Method::Numeric => {
                let sol = solve_jost(profile, &sc.grid, sc.tol)?;
                Ok(Engine::Sampled(Box::new(sol)))
            }
            Method::Exact => {
                let (omega0, amp, t_scale) = sech_params(profile);
                let params = SechParams::new(omega0, amp, t_scale)?;
                let (a, b) = exact_coefficients(&params)?;
                // sample the closed-form trajectory at twice the grid density;
                // derivatives by 5-point differences for interpolation use
                let n = (2 * sc.grid.n_steps).max(2048);
                let h = (sc.grid.t_max - sc.grid.t_min) / n as f64;
                let mut xi = Vec::with_capacity(n + 1);
                for k in 0..=n {
                    xi.push(exact_xi(&params, sc.grid.t_min + k as f64 * h)?);
                }
                let mut xi_dot = Vec::with_capacity(n + 1);
                for k in 0..=n {
                    let d = if k >= 2 && k + 2 <= n {
                        (xi[k - 2] - 8.0 * xi[k - 1] + 8.0 * xi[k + 1] - xi[k + 2]) / (12.0 * h)
                    } else if k == 0 {
                        (xi[1] - xi[0]) / h
                    } else if k == n {
                        (xi[n] - xi[n - 1]) / h
                    } else {
                        (xi[k + 1] - xi[k - 1]) / (2.0 * h)
                    };
                    xi_dot.push(d);
                }
                let sol = JostSolution::from_samples(omega0, sc.grid.t_min, h, xi, xi_dot, a, b)?;
                Ok(Engine::Sampled(Box::new(sol)))
            }
            Method::Born => Ok(Engine::Born(profile.clone())),
            Method::Abrupt => {
                let (omega0, amp, t_scale) = sech_params(profile);
                Ok(Engine::Abrupt {
                    omega0,
                    omega2t: amp * amp * t_scale,
                })
            }
            Method::Adiabatic => {
                let (omega0, amp, t_scale) = sech_params(profile);
                Ok(Engine::Adiabatic(AdiabaticParams::new(
                    omega0, amp, t_scale,
                )?))
            }
        }
    }

    pub fn coefficients(&self) -> Result<(C64, C64)> {
        match self {
            Engine::Sampled(sol) => Ok((sol.a, sol.b)),
            Engine::Born(profile) => born_coefficients(profile),
            Engine::Abrupt { omega0, omega2t } => Ok(abrupt_coefficients(*omega0, *omega2t)),
            Engine::Adiabatic(params) => adiabatic_coefficients(params),
            Engine::Free { .. } => Ok((C64::new(1.0, 0.0), C64::new(0.0, 0.0))),
        }
    }

    /// Displacement for a force centered at its own t_f, evaluated at time t
    /// with the integral starting at t0.
    pub fn displacement(&self, force: &ForceProfile, t0: f64, t: f64) -> Result<C64> {
        match self {
            Engine::Sampled(sol) => quantum::displacement(sol, force, t0, t),
            Engine::Born(profile) => match profile {
                FrequencyProfile::Constant { omega0 } => {
                    Ok(quantum::late_force_displacement(force, *omega0, t))
                }
                _ => born_displacement(profile, force, t),
            },
            Engine::Abrupt { omega0, omega2t } => abrupt_displacement(*omega0, *omega2t, force, t),
            Engine::Adiabatic(params) => adiabatic_displacement(params, force, t),
            Engine::Free { omega0 } => Ok(quantum::late_force_displacement(force, *omega0, t)),
        }
    }

    pub fn diagnostics(&self) -> Option<serde_json::Value> {
        match self {
            Engine::Sampled(sol) => Some(sol.diagnostics_json()),
            _ => None,
        }
    }

    pub fn solution(&self) -> Option<&JostSolution> {
        match self {
            Engine::Sampled(sol) => Some(sol),
            _ => None,
        }
    }

    /// The adiabatic displacement form is stated for an impulsive force
    /// during the drive: |t_f| << T and T2 << T_S, T ("much less" is taken
    /// as a factor of four). Other methods have no such window.
    pub fn validity_window(&self, force: &ForceProfile) -> Option<bool> {
        match self {
            Engine::Adiabatic(params) => {
                let t_f = force.center();
                let width = match force {
                    ForceProfile::GaussCos { width, .. } => *width,
                    ForceProfile::Tabulated { samples, .. } => {
                        0.5 * (samples.last().unwrap().0 - samples[0].0)
                    }
                    ForceProfile::Null { .. } => return Some(true),
                };
                let t = params.t_scale;
                let ts = params.t_stokes();
                Some(t_f.abs() <= t / 4.0 && width <= ts / 4.0 && width <= t / 4.0)
            }
            _ => None,
        }
    }
}

/// Scalar results of a single scenario run.
pub struct RunSummary {
    pub a: C64,
    pub b: C64,
    pub map: LadderMap,
    pub squeeze_r: f64,
    pub squeeze_phase: f64,
    pub occupation: f64,
}

pub fn run_single(sc: &Scenario, engine: &Engine) -> Result<RunSummary> {
    let (a, b) = engine.coefficients()?;
    let omega0 = sc.profile.omega0();
    let (t0, t) = (sc.grid.t_min, sc.grid.t_max);
    let (u, v) = quantum::bogolyubov_from_scattering(a, b, omega0, t0, t);
    let alpha = engine.displacement(&sc.force, t0, t)?;
    let map = LadderMap {
        u,
        v,
        alpha,
        t0,
        t,
        mass: sc.force.mass(),
    };
    let state = quantum::state_from_map(&map)?;
    Ok(RunSummary {
        a,
        b,
        map,
        squeeze_r: state.squeeze_r,
        squeeze_phase: state.squeeze_phase,
        occupation: state.occupation,
    })
}

/// One sweep row: displacement and occupation at a given force center.
/// `in_validity` is set only by methods with a stated validity window.
pub struct SweepRow {
    pub t_f: f64,
    pub alpha: C64,
    pub occupation: f64,
    pub in_validity: Option<bool>,
}

/// Evaluate the displacement for every t_f in the sweep, one worker per
/// value over a bounded pool; rows come back in input order.
pub fn sweep_tf(sc: &Scenario, engine: &Engine, values: &[f64]) -> Result<Vec<SweepRow>> {
    let (_, b) = engine.coefficients()?;
    let b2 = b.norm_sqr();
    let (t0, t) = (sc.grid.t_min, sc.grid.t_max);
    let n = values.len();
    let results: Vec<Mutex<Option<Result<SweepRow>>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = sc.threads.min(n).max(1);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let t_f = values[k];
                let force = sc.force.recentered(t_f);
                let row = engine.displacement(&force, t0, t).map(|alpha| SweepRow {
                    t_f,
                    alpha,
                    occupation: b2 + alpha.norm_sqr(),
                    in_validity: engine.validity_window(&force),
                });
                *results[k].lock().unwrap() = Some(row);
            });
        }
    });
    results
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("worker finished"))
        .collect()
}

/// Per-method coefficients and displacement for the comparison table.
pub struct CompareRow {
    pub method: Method,
    pub a: C64,
    pub b: C64,
    pub alpha: C64,
}

pub fn compare(sc: &Scenario) -> Result<Vec<CompareRow>> {
    let mut rows = Vec::new();
    for &method in &sc.compare_methods {
        let engine = Engine::build(method, sc)?;
        let (a, b) = engine.coefficients()?;
        let alpha = engine.displacement(&sc.force, sc.grid.t_min, sc.grid.t_max)?;
        rows.push(CompareRow {
            method,
            a,
            b,
            alpha,
        });
    }
    Ok(rows)
}

/// |x - y| / max(|x|, |y|), zero when both vanish.
pub fn relative_deviation(x: C64, y: C64) -> f64 {
    let denom = x.norm().max(y.norm());
    if denom == 0.0 {
        0.0
    } else {
        (x - y).norm() / denom
    }
}

/// Map library errors to the process exit code contract:
/// solver/convergence/precondition failures are 3.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidInput(_) => 2,
        _ => 3,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_deviation_metric() {
        assert_eq!(
            relative_deviation(C64::new(0.0, 0.0), C64::new(0.0, 0.0)),
            0.0
        );
        let d = relative_deviation(C64::new(1.0, 0.0), C64::new(1.1, 0.0));
        assert!((d - 0.1 / 1.1).abs() < 1e-15);
    }
}
