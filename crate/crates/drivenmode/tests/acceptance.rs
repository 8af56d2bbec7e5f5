//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Tolerances are pinned here, in code.
//!
//! Criterion 7 pins the slow-drive reflection exponent to the half-exponent
//! form exp[-(pi/2)(w0 - Omega) T]; direct integration (and the analytic
//! continuation of the exact sech^2 solution) put the exponent at twice
//! that, so the check fails by construction and documents the discrepancy.
//! See the adiabatic module tests for the measured relationship.

use drivenmode::abrupt::{abrupt_coefficients, abrupt_displacement};
use drivenmode::born::born_coefficients;
use drivenmode::jost::{scattering_flux_defect, solve_jost};
use drivenmode::multimode::{
    multimode_evolution, solve_multimode_jost, unitarity_defect, CouplingPulse, MultimodeSystem,
};
use drivenmode::profile::force_fourier;
use drivenmode::quantum::{
    self, bogolyubov_from_scattering, displacement, late_force_displacement, occupation_vacuum,
    state_from_map, LadderMap,
};
use drivenmode::sech::{exact_coefficients, SechParams};
use drivenmode::{ForceProfile, FrequencyProfile, ProfileSign, TimeGrid, C64};
use std::f64::consts::PI;
use std::time::Instant;

const SIX_PI: f64 = 6.0 * PI;
const TEN_PI: f64 = 10.0 * PI;

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} - {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
}

/// The 12-point (w0 T, Omega T) validation grid at T = 1. w0 T = 10 is
/// excluded: there the exact |B| ~ 1e-13 and a relative comparison sits
/// below the f64 roundoff floor of any integrator.
fn validation_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &w0t in &[0.3, 1.0, 3.0] {
        for &xt in &[0.1, 0.5, 1.0, 2.0] {
            out.push((w0t, xt));
        }
    }
    out
}

fn solve_sech(omega0: f64, amp: f64, t_scale: f64, tol: f64) -> drivenmode::JostSolution {
    let profile = FrequencyProfile::sech_bump(omega0, amp, t_scale, ProfileSign::Plus).unwrap();
    let grid = TimeGrid::for_profile(&profile, &[]).unwrap();
    solve_jost(&profile, &grid, tol).unwrap()
}

// criteria 1 and 2 share the same 12 solves; both are checked here with the
// runtime budget applied to the solve loop
#[test]
fn criterion_01_flux_conservation_and_02_exact_oracle() {
    let start = Instant::now();
    let mut worst_flux: f64 = 0.0;
    let mut worst_rel_a: f64 = 0.0;
    let mut worst_rel_b: f64 = 0.0;
    for (w0t, xt) in validation_grid() {
        let sol = solve_sech(w0t, xt, 1.0, 1e-9);
        worst_flux = worst_flux.max(scattering_flux_defect(&sol));
        let (a_ex, b_ex) = exact_coefficients(&SechParams::new(w0t, xt, 1.0).unwrap()).unwrap();
        worst_rel_a = worst_rel_a.max((sol.a - a_ex).norm() / a_ex.norm());
        worst_rel_b = worst_rel_b.max((sol.b - b_ex).norm() / b_ex.norm());
    }
    let elapsed = start.elapsed().as_secs_f64();
    let pass1 = worst_flux < 1e-8 && elapsed < 10.0;
    report(
        "criterion 1 (flux conservation, 12 combos)",
        pass1,
        &format!("worst | |A|^2-|B|^2-1 | = {worst_flux:.3e}, runtime {elapsed:.2} s"),
    );
    let pass2 = worst_rel_a < 1e-6 && worst_rel_b < 1e-6;
    report(
        "criterion 2 (exact-oracle agreement)",
        pass2,
        &format!("worst rel A = {worst_rel_a:.3e}, worst rel B = {worst_rel_b:.3e}"),
    );
    assert!(
        pass1,
        "flux {worst_flux:.3e} (budget 1e-8), runtime {elapsed:.2}s (budget 10s)"
    );
    assert!(
        pass2,
        "rel A {worst_rel_a:.3e}, rel B {worst_rel_b:.3e} (budget 1e-6)"
    );
}

#[test]
fn criterion_03_strong_suppression_b_below_1e12() {
    let sol = solve_sech(SIX_PI, 1.0, 0.5, 1e-8);
    let b = sol.b.norm();
    let pass = b < 1e-12;
    report(
        "criterion 3 (suppressed |B| at T=0.5, Omega=1, w0=6pi)",
        pass,
        &format!("|B| = {b:.3e} (closed form 1.676e-13)"),
    );
    assert!(pass, "|B| = {b:.3e}");
}

#[test]
fn criterion_04_reflectionless_amplitude() {
    // Omega^2 T^2 = 2 puts the bump exactly on the reflectionless point
    let sol = solve_sech(2.0, 2.0f64.sqrt(), 1.0, 1e-9);
    let b = sol.b.norm();
    let pass = b < 1e-10;
    report(
        "criterion 4 (reflectionless at Omega^2 T^2 = 2)",
        pass,
        &format!("numeric |B| = {b:.3e}"),
    );
    assert!(pass, "|B| = {b:.3e}");
}

#[test]
fn criterion_05_born_error_and_scaling() {
    let rel_err = |omega_t: f64| {
        let p = FrequencyProfile::sech_bump(1.0, omega_t, 1.0, ProfileSign::Plus).unwrap();
        let (_, b_born) = born_coefficients(&p).unwrap();
        let (_, b_ex) = exact_coefficients(&SechParams::new(1.0, omega_t, 1.0).unwrap()).unwrap();
        (b_born - b_ex).norm() / b_ex.norm()
    };
    let e1 = rel_err(0.05);
    let e2 = rel_err(0.025);
    let ratio = e1 / e2;
    let pass = e1 < 1e-2 && ratio >= 4.0;
    report(
        "criterion 5 (Born B error at Omega T = 0.05)",
        pass,
        &format!("rel err = {e1:.4e}, halving reduces it {ratio:.4}x"),
    );
    assert!(
        pass,
        "rel err {e1:.4e} (budget 1e-2), reduction {ratio:.4} (>= 4 required)"
    );
}

#[test]
fn criterion_06_abrupt_limit_convergence() {
    // fixed delta weight Omega^2 T = 10 at w0 = 10 pi, shrinking w0 T
    let omega0 = TEN_PI;
    let (_, b_ab) = abrupt_coefficients(omega0, 10.0);
    let mut devs = Vec::new();
    for &w0t in &[0.1, 0.05, 0.025] {
        let t_scale = w0t / omega0;
        let amp = (10.0 / t_scale).sqrt();
        let sol = solve_sech(omega0, amp, t_scale, 1e-8);
        devs.push((sol.b - b_ab).norm() / b_ab.norm());
    }
    let monotone = devs[0] > devs[1] && devs[1] > devs[2];
    let pass = monotone && devs[2] < 0.02;
    report(
        "criterion 6 (abrupt limit convergence)",
        pass,
        &format!(
            "relative deviations {:.4e} > {:.4e} > {:.4e} (final budget 2e-2)",
            devs[0], devs[1], devs[2]
        ),
    );
    assert!(pass, "deviations {devs:?}");
}

#[test]
fn criterion_07_adiabatic_exponent() {
    // numeric ln|B| vs T for the minus-sign profile, Omega/w0 = 0.5
    let omega0 = 1.0;
    let amp = 0.5;
    let mut pts = Vec::new();
    for &t_scale in &[8.0, 10.0, 12.0] {
        let profile =
            FrequencyProfile::sech_bump(omega0, amp, t_scale, ProfileSign::Minus).unwrap();
        let grid = TimeGrid::for_profile(&profile, &[]).unwrap();
        let sol = solve_jost(&profile, &grid, 1e-10).unwrap();
        pts.push((t_scale, sol.b.norm().ln()));
    }
    // least-squares slope
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let stated = -0.5 * PI * (omega0 - amp);
    let rel = (slope - stated).abs() / stated.abs();
    let pass = rel <= 0.03;
    report(
        "criterion 7 (adiabatic exponent)",
        pass,
        &format!(
            "measured slope {slope:.6} vs stated {stated:.6} (off by {:.2}x; the exact \
             continuation gives 2x the stated exponent, see module tests)",
            slope / stated
        ),
    );
    assert!(
        pass,
        "slope {slope:.6} is {rel:.3} away from the stated {stated:.6}; \
         measured physics sits at twice the stated exponent"
    );
}

// --- helpers for the sweep criteria ---

struct SweepData {
    t_f: Vec<f64>,
    alpha_abs: Vec<f64>,
}

fn abrupt_sweep(values: &[f64]) -> SweepData {
    let omega0 = TEN_PI;
    let base = ForceProfile::gauss_cos(1.0, TEN_PI, 0.0, 1.0).unwrap();
    let alpha_abs = values
        .iter()
        .map(|&tf| {
            abrupt_displacement(omega0, 10.0, &base.recentered(tf), 20.0)
                .unwrap()
                .norm()
        })
        .collect();
    SweepData {
        t_f: values.to_vec(),
        alpha_abs,
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
        .collect()
}

/// (max - min)/2 of |alpha| over the window [c - w/2, c + w/2].
fn window_amplitude(data: &SweepData, center: f64, width: f64) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for (t, a) in data.t_f.iter().zip(data.alpha_abs.iter()) {
        if (t - center).abs() <= width / 2.0 {
            lo = lo.min(*a);
            hi = hi.max(*a);
        }
    }
    0.5 * (hi - lo)
}

/// Fit y = c0 + c1 cos(w t + phi) by scanning w and solving the linear
/// subproblem; returns (w_best, c1, rms residual).
fn fit_cosine(ts: &[f64], ys: &[f64], w_lo: f64, w_hi: f64) -> (f64, f64, f64) {
    let mut best = (0.0, 0.0, f64::INFINITY);
    let try_w = |w: f64| -> (f64, f64) {
        // least squares on {1, cos wt, sin wt}
        let n = ts.len() as f64;
        let (mut sc, mut ss, mut scc, mut sss, mut scs) = (0.0, 0.0, 0.0, 0.0, 0.0);
        let (mut sy, mut syc, mut sys) = (0.0, 0.0, 0.0);
        for (&t, &y) in ts.iter().zip(ys.iter()) {
            let c = (w * t).cos();
            let s = (w * t).sin();
            sc += c;
            ss += s;
            scc += c * c;
            sss += s * s;
            scs += c * s;
            sy += y;
            syc += y * c;
            sys += y * s;
        }
        // solve the 3x3 normal equations by Cramer
        let m = [[n, sc, ss], [sc, scc, scs], [ss, scs, sss]];
        let rhs = [sy, syc, sys];
        let det = |m: &[[f64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det(&m);
        let mut sol = [0.0; 3];
        for i in 0..3 {
            let mut mi = m;
            for r in 0..3 {
                mi[r][i] = rhs[r];
            }
            sol[i] = det(&mi) / d;
        }
        let c1 = (sol[1] * sol[1] + sol[2] * sol[2]).sqrt();
        let mut rss = 0.0;
        for (&t, &y) in ts.iter().zip(ys.iter()) {
            let fit = sol[0] + sol[1] * (w * t).cos() + sol[2] * (w * t).sin();
            rss += (y - fit) * (y - fit);
        }
        (c1, (rss / n).sqrt())
    };
    let scan = 4000;
    for k in 0..=scan {
        let w = w_lo + (w_hi - w_lo) * k as f64 / scan as f64;
        let (c1, res) = try_w(w);
        if res < best.2 {
            best = (w, c1, res);
        }
    }
    // parabolic refinement around the best scan point
    let dw = (w_hi - w_lo) / scan as f64;
    let (mut w_best, mut c1_best, mut r_best) = best;
    let mut step = dw;
    for _ in 0..40 {
        step *= 0.6;
        for &w in &[w_best - step, w_best + step] {
            let (c1, res) = try_w(w);
            if res < r_best {
                w_best = w;
                c1_best = c1;
                r_best = res;
            }
        }
    }
    (w_best, c1_best, r_best)
}

#[test]
fn criterion_08a_lower_panel_sweep() {
    let start = Instant::now();
    let sweep = abrupt_sweep(&linspace(-15.0, 10.0, 400));
    let sweep_runtime = start.elapsed().as_secs_f64();

    // late-time constant equals the resonant closed form
    let force_late = ForceProfile::gauss_cos(1.0, TEN_PI, 10.0, 1.0).unwrap();
    let late_ref = late_force_displacement(&force_late, TEN_PI, 20.0).norm();
    let at_10 = sweep.alpha_abs[399];
    let rel_late = (at_10 - late_ref).abs() / late_ref;

    // monotone envelope decay through t_f ~ 0, on a dense auxiliary sweep
    let dense = abrupt_sweep(&linspace(-8.0, 6.0, 2801));
    let centers: Vec<f64> = (0..11).map(|k| -6.0 + k as f64).collect();
    let amps: Vec<f64> = centers
        .iter()
        .map(|&c| window_amplitude(&dense, c, 1.0))
        .collect();
    let monotone = amps.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-6) + 1e-12);

    // early-time oscillation period of |alpha|^2 is pi/w0 to 0.1%
    let early_ts = linspace(-9.0, -6.0, 1501);
    let early = abrupt_sweep(&early_ts);
    let ys: Vec<f64> = early.alpha_abs.iter().map(|a| a * a).collect();
    let (w_fit, _c1, _res) = fit_cosine(&early.t_f, &ys, 1.8 * TEN_PI, 2.2 * TEN_PI);
    let period = 2.0 * PI / w_fit;
    let period_rel = (period - PI / TEN_PI).abs() / (PI / TEN_PI);

    let elapsed = start.elapsed().as_secs_f64();
    let pass = rel_late < 1e-3 && monotone && period_rel < 1e-3 && sweep_runtime < 120.0;
    report(
        "criterion 8a (lower-panel sweep)",
        pass,
        &format!(
            "|alpha|(+10) vs late form rel {rel_late:.2e}; envelope monotone: {monotone}; \
             period rel err {period_rel:.2e}; 400-point sweep {sweep_runtime:.2} s \
             (criterion total {elapsed:.2} s)"
        ),
    );
    assert!(
        pass,
        "rel_late {rel_late:.3e}, monotone {monotone}, period {period_rel:.3e}"
    );
}

#[test]
fn criterion_08b_upper_panel_sweep() {
    let start = Instant::now();
    let profile = FrequencyProfile::sech_bump(SIX_PI, 1.0, 0.5, ProfileSign::Plus).unwrap();
    let grid = TimeGrid::for_profile(&profile, &[(-22.0, 20.0)]).unwrap();
    let sol = solve_jost(&profile, &grid, 1e-8).unwrap();
    let base = ForceProfile::gauss_cos(1.0, SIX_PI, 0.0, 1.0).unwrap();
    let sweep_of = |values: &[f64]| -> SweepData {
        let alpha_abs = values
            .iter()
            .map(|&tf| {
                displacement(&sol, &base.recentered(tf), grid.t_min, grid.t_max)
                    .unwrap()
                    .norm()
            })
            .collect();
        SweepData {
            t_f: values.to_vec(),
            alpha_abs,
        }
    };
    let timed = Instant::now();
    let _sweep400 = sweep_of(&linspace(-14.0, 12.0, 400));
    let sweep_runtime = timed.elapsed().as_secs_f64();

    let dense = sweep_of(&linspace(-14.0, 12.0, 2081));
    let left = window_amplitude(&dense, -13.0, 2.0);
    let right = window_amplitude(&dense, 11.0, 2.0);
    let intermediate: f64 = (0..25)
        .map(|k| window_amplitude(&dense, -6.0 + 0.5 * k as f64, 0.5))
        .fold(0.0, f64::max);
    let factor = intermediate / left.max(right).max(1e-300);
    let elapsed = start.elapsed().as_secs_f64();
    let pass = factor >= 3.0 && sweep_runtime < 120.0;
    report(
        "criterion 8b (upper-panel sweep)",
        pass,
        &format!(
            "intermediate amplitude {intermediate:.3e} vs asymptotic max {:.3e} \
             (factor {factor:.1}); 400-point sweep {sweep_runtime:.2} s \
             (criterion total {elapsed:.2} s)",
            left.max(right)
        ),
    );
    assert!(
        pass,
        "factor {factor:.2} (>= 3 required), runtime {sweep_runtime:.1}s"
    );
}

#[test]
fn criterion_09_force_only_oracle() {
    let profile = FrequencyProfile::constant(TEN_PI).unwrap();
    let grid = TimeGrid::new(-12.0, 12.0, 1 << 15).unwrap();
    let sol = solve_jost(&profile, &grid, 1e-10).unwrap();
    let force = ForceProfile::gauss_cos(1.0, TEN_PI, 0.0, 1.0).unwrap();
    let alpha = displacement(&sol, &force, grid.t_min, grid.t_max).unwrap();
    let closed = late_force_displacement(&force, TEN_PI, grid.t_max);
    let rel = (alpha - closed).norm() / closed.norm();

    let map = quantum::ladder_map(&sol, &force, grid.t_min, grid.t_max).unwrap();
    let ft = force_fourier(&force, TEN_PI).norm();
    let occ_closed = ft * ft / (2.0 * TEN_PI);
    let occ_rel = (occupation_vacuum(&map) - occ_closed).abs() / occ_closed;
    let pass = rel < 1e-6 && occ_rel < 1e-8;
    report(
        "criterion 9 (force-only displacement oracle)",
        pass,
        &format!("alpha rel {rel:.3e}; occupation rel {occ_rel:.3e}"),
    );
    assert!(
        pass,
        "alpha rel {rel:.3e} (budget 1e-6), occupation rel {occ_rel:.3e} (budget 1e-8)"
    );
}

#[test]
fn criterion_10_early_force_interference() {
    // strong scattering so the 2 w0 interference term is well resolved
    let (omega0, amp, t_scale) = (1.0, 2.0, 1.0);
    let profile = FrequencyProfile::sech_bump(omega0, amp, t_scale, ProfileSign::Plus).unwrap();
    let base = ForceProfile::gauss_cos(1.0, omega0, -20.0 * t_scale, 1.0).unwrap();
    let grid = TimeGrid::for_profile(&profile, &[(-34.0, 30.0)]).unwrap();
    let sol = solve_jost(&profile, &grid, 1e-9).unwrap();
    let ts = linspace(-26.0, -14.0, 241);
    let occ: Vec<f64> = ts
        .iter()
        .map(|&tf| {
            let map =
                quantum::ladder_map(&sol, &base.recentered(tf), grid.t_min, grid.t_max).unwrap();
            occupation_vacuum(&map)
        })
        .collect();
    let (w_fit, c1, res) = fit_cosine(&ts, &occ, 1.9 * omega0, 2.1 * omega0);
    let freq_rel = (w_fit - 2.0 * omega0).abs() / (2.0 * omega0);
    let res_frac = res / c1;
    // the fitted constant and amplitude must also match the interference
    // form's coefficients built from the exact scattering data
    let (a_ex, b_ex) = exact_coefficients(&SechParams::new(omega0, amp, t_scale).unwrap()).unwrap();
    let ft2 = force_fourier(&base, omega0).norm_sqr() / (2.0 * omega0);
    let c1_pred = 2.0 * a_ex.norm() * b_ex.norm() * ft2;
    let c1_rel = (c1 - c1_pred).abs() / c1_pred;
    let pass = freq_rel < 1e-3 && res_frac < 1e-2 && c1_rel < 1e-2;
    report(
        "criterion 10 (early-force interference)",
        pass,
        &format!(
            "fitted frequency {w_fit:.6} (2 w0 rel err {freq_rel:.2e}); \
             residual/amplitude {res_frac:.2e}; amplitude vs 2|A||B||f~|^2/(2 m w0) \
             rel {c1_rel:.2e}"
        ),
    );
    assert!(
        pass,
        "freq rel {freq_rel:.3e} (budget 1e-3), residual {res_frac:.3e} (budget 1e-2), \
         amplitude rel {c1_rel:.3e}"
    );
}

#[test]
fn criterion_11_multimode() {
    // n = 2 unitarity
    let pulse = CouplingPulse {
        i: 0,
        j: 1,
        amplitude: 0.2,
        t_scale: 1.0,
        t_center: 0.0,
    };
    let sys2 = MultimodeSystem::new(vec![1.0, 1.6], vec![pulse], vec![]).unwrap();
    let grid = TimeGrid::new(-30.0, 30.0, 4096).unwrap();
    let mj2 = solve_multimode_jost(&sys2, &grid, 1e-9).unwrap();
    let defect = unitarity_defect(&mj2);

    // n = 1 reduction against the single-mode pipeline
    let (w0, amp, t_scale) = (2.0, 1.0, 1.0);
    let force = ForceProfile::gauss_cos(1.0, w0, 0.0, 1.0).unwrap();
    let sys1 = MultimodeSystem::new(
        vec![w0],
        vec![CouplingPulse {
            i: 0,
            j: 0,
            amplitude: amp * amp,
            t_scale,
            t_center: 0.0,
        }],
        vec![force.clone()],
    )
    .unwrap();
    let mj1 = solve_multimode_jost(&sys1, &grid, 1e-9).unwrap();
    let (u, v, alphas) = multimode_evolution(&sys1, &mj1, grid.t_min, grid.t_max).unwrap();
    let profile = FrequencyProfile::sech_bump(w0, amp, t_scale, ProfileSign::Plus).unwrap();
    let sol = solve_jost(&profile, &grid, 1e-9).unwrap();
    let map = quantum::ladder_map(&sol, &force, grid.t_min, grid.t_max).unwrap();
    let red = (u[0][0] - map.u)
        .norm()
        .max((v[0][0] - map.v).norm())
        .max((alphas[0] - map.alpha).norm());

    // zero-coupling factorization: forced mode matches the free pipeline,
    // dark mode stays dark
    let f0 = ForceProfile::gauss_cos(1.0, 1.0, 0.0, 1.0).unwrap();
    let sys_zc = MultimodeSystem::new(
        vec![1.0, 2.0],
        vec![],
        vec![f0.clone(), ForceProfile::null()],
    )
    .unwrap();
    let mj_zc = solve_multimode_jost(&sys_zc, &grid, 1e-10).unwrap();
    let (_, _, a_zc) = multimode_evolution(&sys_zc, &mj_zc, grid.t_min, grid.t_max).unwrap();
    let free = FrequencyProfile::constant(1.0).unwrap();
    let sol_free = solve_jost(&free, &grid, 1e-10).unwrap();
    let want0 = displacement(&sol_free, &f0, grid.t_min, grid.t_max).unwrap();
    let factorization = (a_zc[0] - want0).norm().max(a_zc[1].norm());

    let pass = defect < 1e-8 && red < 1e-6 && factorization < 1e-8;
    report(
        "criterion 11 (multimode)",
        pass,
        &format!(
            "n=2 unitarity defect {defect:.3e}; n=1 reduction {red:.3e}; \
             zero-coupling factorization {factorization:.3e}"
        ),
    );
    assert!(
        pass,
        "defect {defect:.3e}, reduction {red:.3e}, factorization {factorization:.3e}"
    );
}

#[test]
fn criterion_12_state_identities() {
    // synthetic maps: exact round trips at 1e-12
    let mut worst_synth: f64 = 0.0;
    for &(r, theta, phi, are, aim) in &[
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64),
        (0.7, 1.1, -0.4, 0.3, -0.8),
        (2.5, -2.0, 0.9, -1.2, 0.5),
        (1.3, 0.2, 2.8, 1.7, 1.1),
    ] {
        let map = LadderMap {
            u: C64::new(0.0, theta).exp() * r.cosh(),
            v: C64::new(0.0, phi).exp() * r.sinh(),
            alpha: C64::new(are, aim),
            t0: -1.0,
            t: 1.0,
            mass: 1.0,
        };
        let st = state_from_map(&map).unwrap();
        worst_synth = worst_synth
            .max((st.squeeze_r.sinh().powi(2) - map.v.norm_sqr()).abs())
            .max((st.occupation - (map.v.norm_sqr() + map.alpha.norm_sqr())).abs());
    }

    // solver-derived maps: Bogolyubov identity at 1e-8
    let mut worst_solver: f64 = 0.0;
    for &(w0t, xt) in &[(0.5, 1.0), (1.0, 2.0), (2.0, 0.7)] {
        let sol = solve_sech(w0t, xt, 1.0, 1e-9);
        let (u, v) = bogolyubov_from_scattering(sol.a, sol.b, w0t, -30.0, 30.0);
        worst_solver = worst_solver.max((u.norm_sqr() - v.norm_sqr() - 1.0).abs());
    }
    let pass = worst_synth < 1e-12 && worst_solver < 1e-8;
    report(
        "criterion 12 (state identities)",
        pass,
        &format!(
            "synthetic round-trip worst {worst_synth:.3e}; \
             solver-map identity worst {worst_solver:.3e}"
        ),
    );
    assert!(
        pass,
        "synthetic {worst_synth:.3e} (budget 1e-12), solver {worst_solver:.3e} (budget 1e-8)"
    );
}
