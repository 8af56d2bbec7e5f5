//! Drive and force profiles, sampling grids, and force Fourier transforms.
//!
//! Conventions: hbar = 1 throughout; the force Fourier transform acts on the
//! centered force f(t) = F(t + t_f) with the +i sign,
//! f~(w) = Integral dt f(t) exp(+i w t).

use crate::error::{Error, Result};
use crate::quad;
use crate::C64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::Path;

/// Default asymptotic-flatness tolerance, as a fraction of omega0^2.
pub const DEFAULT_FLATNESS_EPS_FACTOR: f64 = 1e-10;
/// Default half-span of the integration window in units of the bump timescale.
pub const DEFAULT_SPAN_FACTOR: f64 = 30.0;
/// Default sampling density: points per shortest oscillation period.
pub const DEFAULT_POINTS_PER_PERIOD: f64 = 40.0;
/// Gaussian forces are treated as supported within this many widths of t_f.
pub const FORCE_SUPPORT_WIDTHS: f64 = 8.0;

/// Sign of the sech^2 frequency bump.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileSign {
    /// omega^2(t) = omega0^2 + Omega^2 / cosh^2(t/T)
    Plus,
    /// omega^2(t) = omega0^2 - Omega^2 / cosh^2(t/T); requires Omega < omega0
    Minus,
}

/// Time dependence of the squared mode frequency omega^2(t). All variants
/// approach omega0^2 as |t| -> infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum FrequencyProfile {
    Constant {
        omega0: f64,
    },
    SechBump {
        omega0: f64,
        /// bump amplitude Omega (rad/time); the bump adds ±Omega^2 sech^2(t/T)
        amp: f64,
        /// bump timescale T
        t_scale: f64,
        sign: ProfileSign,
    },
    Tabulated {
        omega0: f64,
        /// (t, omega^2) samples, strictly increasing in t
        samples: Vec<(f64, f64)>,
    },
}

impl FrequencyProfile {
    pub fn constant(omega0: f64) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::InvalidInput("omega0 must be positive".into()));
        }
        Ok(FrequencyProfile::Constant { omega0 })
    }

    pub fn sech_bump(omega0: f64, amp: f64, t_scale: f64, sign: ProfileSign) -> Result<Self> {
        if !(omega0 > 0.0) || !(t_scale > 0.0) || !(amp >= 0.0) {
            return Err(Error::InvalidInput(
                "sech bump requires omega0 > 0, T > 0, Omega >= 0".into(),
            ));
        }
        if sign == ProfileSign::Minus && amp >= omega0 {
            return Err(Error::InvalidInput(
                "minus-sign bump requires Omega < omega0 for stability".into(),
            ));
        }
        Ok(FrequencyProfile::SechBump {
            omega0,
            amp,
            t_scale,
            sign,
        })
    }

    pub fn tabulated(omega0: f64, samples: Vec<(f64, f64)>) -> Result<Self> {
        if !(omega0 > 0.0) {
            return Err(Error::InvalidInput("omega0 must be positive".into()));
        }
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated profile needs at least two samples".into(),
            ));
        }
        if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidInput(
                "tabulated profile times must be strictly increasing".into(),
            ));
        }
        let w02 = omega0 * omega0;
        let tol = 1e-6 * w02;
        let first = samples.first().unwrap().1;
        let last = samples.last().unwrap().1;
        if (first - w02).abs() > tol || (last - w02).abs() > tol {
            return Err(Error::InvalidInput(format!(
                "tabulated omega^2 endpoints ({first}, {last}) not within {tol:.3e} of omega0^2"
            )));
        }
        Ok(FrequencyProfile::Tabulated { omega0, samples })
    }

    pub fn tabulated_from_csv(omega0: f64, path: &Path) -> Result<Self> {
        Self::tabulated(omega0, load_two_column_csv(path)?)
    }

    pub fn omega0(&self) -> f64 {
        match self {
            FrequencyProfile::Constant { omega0 }
            | FrequencyProfile::SechBump { omega0, .. }
            | FrequencyProfile::Tabulated { omega0, .. } => *omega0,
        }
    }

    /// Largest instantaneous frequency, used for step-size rules.
    pub fn omega_max(&self) -> f64 {
        match self {
            FrequencyProfile::Constant { omega0 } => *omega0,
            FrequencyProfile::SechBump {
                omega0, amp, sign, ..
            } => match sign {
                ProfileSign::Plus => (omega0 * omega0 + amp * amp).sqrt(),
                ProfileSign::Minus => *omega0,
            },
            FrequencyProfile::Tabulated { omega0, samples } => samples
                .iter()
                .map(|&(_, w2)| w2.max(0.0).sqrt())
                .fold(*omega0, f64::max),
        }
    }

    /// Bump timescale if the profile has one.
    pub fn t_scale(&self) -> Option<f64> {
        match self {
            FrequencyProfile::SechBump { t_scale, .. } => Some(*t_scale),
            _ => None,
        }
    }

    /// Interval outside which omega^2 is flat for practical purposes.
    pub fn drive_span(&self) -> Option<(f64, f64)> {
        match self {
            FrequencyProfile::Constant { .. } => None,
            FrequencyProfile::SechBump { t_scale, .. } => Some((
                -DEFAULT_SPAN_FACTOR * t_scale,
                DEFAULT_SPAN_FACTOR * t_scale,
            )),
            FrequencyProfile::Tabulated { samples, .. } => {
                Some((samples.first().unwrap().0, samples.last().unwrap().0))
            }
        }
    }
}

/// omega^2 at time t. Tabulated profiles interpolate linearly and reject
/// queries outside the sampled range.
pub fn omega_squared(profile: &FrequencyProfile, t: f64) -> Result<f64> {
    match profile {
        FrequencyProfile::Constant { omega0 } => Ok(omega0 * omega0),
        FrequencyProfile::SechBump {
            omega0,
            amp,
            t_scale,
            sign,
        } => {
            let sech = 1.0 / (t / t_scale).cosh();
            let bump = amp * amp * sech * sech;
            Ok(match sign {
                ProfileSign::Plus => omega0 * omega0 + bump,
                ProfileSign::Minus => omega0 * omega0 - bump,
            })
        }
        FrequencyProfile::Tabulated { samples, .. } => interp_linear(samples, t),
    }
}

fn interp_linear(samples: &[(f64, f64)], t: f64) -> Result<f64> {
    let (t0, _) = samples[0];
    let (tn, _) = samples[samples.len() - 1];
    if t < t0 || t > tn {
        return Err(Error::OutOfRange(format!(
            "t = {t} outside tabulated range [{t0}, {tn}]"
        )));
    }
    let idx = samples.partition_point(|&(ts, _)| ts <= t);
    if idx == 0 {
        return Ok(samples[0].1);
    }
    if idx == samples.len() {
        return Ok(samples[samples.len() - 1].1);
    }
    let (ta, va) = samples[idx - 1];
    let (tb, vb) = samples[idx];
    Ok(va + (vb - va) * (t - ta) / (tb - ta))
}

/// Classical source F(t). All variants vanish as |t| -> infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum ForceProfile {
    /// F(t) = F0 cos[w_f (t - t_f)] exp[-(t - t_f)^2 / T2^2]
    GaussCos {
        amplitude: f64,
        mod_freq: f64,
        center: f64,
        width: f64,
        mass: f64,
    },
    Tabulated {
        samples: Vec<(f64, f64)>,
        /// nominal center time t_f used by the centered Fourier transform
        center: f64,
        mass: f64,
    },
    Null {
        mass: f64,
    },
}

impl ForceProfile {
    pub fn gauss_cos(amplitude: f64, mod_freq: f64, center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) {
            return Err(Error::InvalidInput(
                "GaussCos width T2 must be positive".into(),
            ));
        }
        Ok(ForceProfile::GaussCos {
            amplitude,
            mod_freq,
            center,
            width,
            mass: 1.0,
        })
    }

    pub fn tabulated(samples: Vec<(f64, f64)>, center: f64) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::InvalidInput(
                "tabulated force needs at least two samples".into(),
            ));
        }
        if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidInput(
                "tabulated force times must be strictly increasing".into(),
            ));
        }
        let peak = samples.iter().map(|&(_, f)| f.abs()).fold(0.0, f64::max);
        let tol = 1e-6 * peak.max(f64::MIN_POSITIVE);
        if samples.first().unwrap().1.abs() > tol || samples.last().unwrap().1.abs() > tol {
            return Err(Error::InvalidInput(
                "tabulated force endpoints must vanish (within 1e-6 of the peak)".into(),
            ));
        }
        Ok(ForceProfile::Tabulated {
            samples,
            center,
            mass: 1.0,
        })
    }

    pub fn tabulated_from_csv(path: &Path, center: f64) -> Result<Self> {
        Self::tabulated(load_two_column_csv(path)?, center)
    }

    pub fn null() -> Self {
        ForceProfile::Null { mass: 1.0 }
    }

    pub fn with_mass(mut self, m: f64) -> Result<Self> {
        if !(m > 0.0) {
            return Err(Error::InvalidInput("mass must be positive".into()));
        }
        match &mut self {
            ForceProfile::GaussCos { mass, .. }
            | ForceProfile::Tabulated { mass, .. }
            | ForceProfile::Null { mass } => *mass = m,
        }
        Ok(self)
    }

    pub fn mass(&self) -> f64 {
        match self {
            ForceProfile::GaussCos { mass, .. }
            | ForceProfile::Tabulated { mass, .. }
            | ForceProfile::Null { mass } => *mass,
        }
    }

    pub fn center(&self) -> f64 {
        match self {
            ForceProfile::GaussCos { center, .. } | ForceProfile::Tabulated { center, .. } => {
                *center
            }
            ForceProfile::Null { .. } => 0.0,
        }
    }

    /// Move the force center to a new t_f (sweep support). No-op for Null.
    pub fn recentered(&self, t_f: f64) -> Self {
        let mut out = self.clone();
        match &mut out {
            ForceProfile::GaussCos { center, .. } => *center = t_f,
            ForceProfile::Tabulated {
                samples, center, ..
            } => {
                let shift = t_f - *center;
                for s in samples.iter_mut() {
                    s.0 += shift;
                }
                *center = t_f;
            }
            ForceProfile::Null { .. } => {}
        }
        out
    }

    /// Interval outside which the force is negligible; None for Null.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            ForceProfile::GaussCos { center, width, .. } => Some((
                center - FORCE_SUPPORT_WIDTHS * width,
                center + FORCE_SUPPORT_WIDTHS * width,
            )),
            ForceProfile::Tabulated { samples, .. } => {
                Some((samples.first().unwrap().0, samples.last().unwrap().0))
            }
            ForceProfile::Null { .. } => None,
        }
    }
}

/// F(t). Tabulated forces evaluate to zero outside their sample range.
pub fn force_value(force: &ForceProfile, t: f64) -> f64 {
    match force {
        ForceProfile::GaussCos {
            amplitude,
            mod_freq,
            center,
            width,
            ..
        } => {
            let u = t - center;
            amplitude * (mod_freq * u).cos() * (-(u * u) / (width * width)).exp()
        }
        ForceProfile::Tabulated { samples, .. } => interp_linear(samples, t).unwrap_or(0.0),
        ForceProfile::Null { .. } => 0.0,
    }
}

/// Fourier amplitude of the centered force, f~(w) = Int dt F(t + t_f) e^{iwt}.
///
/// GaussCos has the closed form
/// (F0 sqrt(pi) T2 / 2) [exp(-(w-w_f)^2 T2^2/4) + exp(-(w+w_f)^2 T2^2/4)],
/// real and even; tabulated forces are integrated by the trapezoid rule.
pub fn force_fourier(force: &ForceProfile, omega: f64) -> C64 {
    match force {
        ForceProfile::GaussCos {
            amplitude,
            mod_freq,
            width,
            ..
        } => {
            let q = |w: f64| (-(w * w) * width * width / 4.0).exp();
            let v =
                amplitude * PI.sqrt() * width / 2.0 * (q(omega - mod_freq) + q(omega + mod_freq));
            C64::new(v, 0.0)
        }
        ForceProfile::Tabulated {
            samples, center, ..
        } => {
            let vals: Vec<C64> = samples
                .iter()
                .map(|&(t, f)| C64::new(0.0, omega * (t - center)).exp() * f)
                .collect();
            let ts: Vec<f64> = samples.iter().map(|&(t, _)| t).collect();
            quad::trapezoid_nonuniform(&ts, &vals)
        }
        ForceProfile::Null { .. } => C64::new(0.0, 0.0),
    }
}

/// Fourier amplitude of the uncentered force, F~(w) = e^{i w t_f} f~(w).
pub fn force_fourier_uncentered(force: &ForceProfile, omega: f64) -> C64 {
    C64::new(0.0, omega * force.center()).exp() * force_fourier(force, omega)
}

/// Uniform sampling grid realizing the t -> ±infinity limits at finite times.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub t_min: f64,
    pub t_max: f64,
    pub n_steps: usize,
}

impl TimeGrid {
    pub fn new(t_min: f64, t_max: f64, n_steps: usize) -> Result<Self> {
        if !(t_min < t_max) {
            return Err(Error::InvalidInput("grid requires t_min < t_max".into()));
        }
        if n_steps < 2 {
            return Err(Error::InvalidInput("grid requires n_steps >= 2".into()));
        }
        Ok(TimeGrid {
            t_min,
            t_max,
            n_steps,
        })
    }

    pub fn h(&self) -> f64 {
        (self.t_max - self.t_min) / self.n_steps as f64
    }

    /// Default grid for a profile: ±30 T at >= 40 points per shortest period,
    /// optionally widened to cover extra intervals (force supports).
    pub fn for_profile(profile: &FrequencyProfile, extra: &[(f64, f64)]) -> Result<Self> {
        let omega0 = profile.omega0();
        let (mut lo, mut hi) = match profile.drive_span() {
            Some(span) => span,
            None => (-DEFAULT_SPAN_FACTOR / omega0, DEFAULT_SPAN_FACTOR / omega0),
        };
        for &(a, b) in extra {
            lo = lo.min(a);
            hi = hi.max(b);
        }
        let h_max = (2.0 * PI / profile.omega_max()) / DEFAULT_POINTS_PER_PERIOD;
        let n = ((hi - lo) / h_max).ceil() as usize;
        TimeGrid::new(lo, hi, n.max(64))
    }

    /// Check that omega^2 is already flat at both grid ends.
    pub fn validate_flatness(&self, profile: &FrequencyProfile, eps: Option<f64>) -> Result<()> {
        let w02 = profile.omega0() * profile.omega0();
        let eps = eps.unwrap_or(DEFAULT_FLATNESS_EPS_FACTOR * w02);
        for t in [self.t_min, self.t_max] {
            let w2 = omega_squared(profile, t)?;
            if (w2 - w02).abs() > eps {
                return Err(Error::Precondition(format!(
                    "omega^2({t}) deviates from omega0^2 by {:.3e} > {eps:.3e}; widen the grid",
                    (w2 - w02).abs()
                )));
            }
        }
        Ok(())
    }
}

/// Two-column CSV loader: (t, value), comma-separated, optional header,
/// '#' comments and blank lines skipped.
pub fn load_two_column_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let text = std::fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cols = line.split(',').map(str::trim);
        let (a, b) = match (cols.next(), cols.next()) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "{}:{}: expected two comma-separated columns",
                    path.display(),
                    lineno + 1
                )))
            }
        };
        match (a.parse::<f64>(), b.parse::<f64>()) {
            (Ok(t), Ok(v)) => out.push((t, v)),
            _ if out.is_empty() => continue, // header row
            _ => {
                return Err(Error::InvalidInput(format!(
                    "{}:{}: cannot parse '{a}', '{b}' as numbers",
                    path.display(),
                    lineno + 1
                )))
            }
        }
    }
    if out.is_empty() {
        return Err(Error::InvalidInput(format!(
            "{}: no data rows",
            path.display()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn omega_squared_sech_values() {
        let p = FrequencyProfile::sech_bump(1.0, 1.0, 1.0, ProfileSign::Plus).unwrap();
        assert_relative_eq!(omega_squared(&p, 0.0).unwrap(), 2.0, max_relative = 1e-15);
        // approaches the natural value far away
        assert_relative_eq!(omega_squared(&p, 40.0).unwrap(), 1.0, epsilon = 1e-10);

        let m = FrequencyProfile::sech_bump(2.0, 1.0, 1.0, ProfileSign::Minus).unwrap();
        assert_relative_eq!(omega_squared(&m, 0.0).unwrap(), 3.0, max_relative = 1e-15);
    }

    #[test]
    fn omega_squared_even_in_t() {
        for sign in [ProfileSign::Plus, ProfileSign::Minus] {
            let p = FrequencyProfile::sech_bump(2.0, 0.7, 1.3, sign).unwrap();
            for &t in &[0.1, 0.9, 2.5, 17.0] {
                assert_eq!(
                    omega_squared(&p, t).unwrap(),
                    omega_squared(&p, -t).unwrap()
                );
            }
        }
    }

    #[test]
    fn minus_sign_stability_rejected() {
        assert!(FrequencyProfile::sech_bump(1.0, 1.0, 1.0, ProfileSign::Minus).is_err());
        assert!(FrequencyProfile::sech_bump(1.0, 0.99, 1.0, ProfileSign::Minus).is_ok());
    }

    #[test]
    fn tabulated_interpolates_and_errors_out_of_range() {
        let w02 = 4.0;
        let samples = vec![
            (-10.0, w02),
            (-1.0, w02),
            (0.0, 5.0),
            (1.0, w02),
            (10.0, w02),
        ];
        let p = FrequencyProfile::tabulated(2.0, samples).unwrap();
        assert_relative_eq!(omega_squared(&p, 0.5).unwrap(), 4.5, max_relative = 1e-14);
        assert!(matches!(omega_squared(&p, 11.0), Err(Error::OutOfRange(_))));
        // endpoints that fail to asymptote are rejected
        assert!(FrequencyProfile::tabulated(2.0, vec![(0.0, 5.0), (1.0, 4.0)]).is_err());
    }

    #[test]
    fn force_values() {
        let f = ForceProfile::gauss_cos(1.0, 3.0, 2.0, 1.0).unwrap();
        assert_relative_eq!(force_value(&f, 2.0), 1.0, max_relative = 1e-15);
        assert_eq!(force_value(&ForceProfile::null(), 123.0), 0.0);
        let g = ForceProfile::gauss_cos(2.0, 0.0, 0.5, 1.0).unwrap();
        assert_relative_eq!(
            force_value(&g, 1.5),
            2.0 * (-1.0f64).exp(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn fourier_closed_form_values() {
        // resonant Gaussian-cosine: sqrt(pi)/2 (1 + exp(-100 pi^2)) with T2 = 1
        let f = ForceProfile::gauss_cos(1.0, 10.0 * PI, 0.0, 1.0).unwrap();
        let v = force_fourier(&f, 10.0 * PI);
        assert_relative_eq!(v.re, 0.5 * PI.sqrt(), max_relative = 1e-14);
        assert_eq!(v.im, 0.0);
        // pure Gaussian at zero frequency: sqrt(pi)
        let g = ForceProfile::gauss_cos(1.0, 0.0, 0.0, 1.0).unwrap();
        assert_relative_eq!(force_fourier(&g, 0.0).re, PI.sqrt(), max_relative = 1e-14);
        assert_eq!(
            force_fourier(&ForceProfile::null(), 1.0),
            C64::new(0.0, 0.0)
        );
    }

    #[test]
    fn fourier_matches_direct_quadrature() {
        // oracle: Simpson quadrature of F(t+t_f) e^{iwt} over [-8 T2, 8 T2]
        let f = ForceProfile::gauss_cos(1.3, 2.0, 0.7, 1.1).unwrap();
        for &w in &[0.0, 0.5, 2.0, 3.7] {
            let n = 20_001;
            let (lo, hi) = (-8.0 * 1.1, 8.0 * 1.1);
            let h = (hi - lo) / (n - 1) as f64;
            let vals: Vec<C64> = (0..n)
                .map(|k| {
                    let t = lo + k as f64 * h;
                    C64::new(0.0, w * t).exp() * force_value(&f, t + 0.7)
                })
                .collect();
            let oracle = quad::simpson_sampled_c64(&vals, h);
            let got = force_fourier(&f, w);
            assert!(
                (got - oracle).norm() <= 1e-8 * oracle.norm().max(1e-12),
                "w={w}: {got} vs {oracle}"
            );
        }
    }

    proptest! {
        #[test]
        fn fourier_conjugate_symmetry(w in 0.0f64..6.0, wf in 0.0f64..4.0, t2 in 0.3f64..2.0) {
            let f = ForceProfile::gauss_cos(1.0, wf, 0.3, t2).unwrap();
            let plus = force_fourier(&f, w);
            let minus = force_fourier(&f, -w);
            prop_assert!((plus.conj() - minus).norm() <= 1e-12 * plus.norm().max(1e-300));
        }
    }

    #[test]
    fn grid_validation() {
        assert!(TimeGrid::new(1.0, 0.0, 100).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 1).is_err());
        let p = FrequencyProfile::sech_bump(2.0, 1.0, 1.0, ProfileSign::Plus).unwrap();
        let g = TimeGrid::new(-30.0, 30.0, 1000).unwrap();
        g.validate_flatness(&p, None).unwrap();
        let tight = TimeGrid::new(-3.0, 3.0, 100).unwrap();
        assert!(tight.validate_flatness(&p, None).is_err());
    }

    #[test]
    fn csv_loading() {
        use std::io::Write;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w2.csv");
        let mut fh = std::fs::File::create(&path).unwrap();
        writeln!(fh, "t,omega2\n# comment\n-10.0,4.0\n0.0,5.0\n10.0,4.0").unwrap();
        let rows = load_two_column_csv(&path).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[1], (0.0, 5.0));
    }
}
