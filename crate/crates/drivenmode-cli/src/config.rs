//! TOML scenario configuration: parsing, validation, and construction of the
//! domain objects. Validation failures map to exit code 2.

use drivenmode::{ForceProfile, FrequencyProfile, ProfileSign, TimeGrid};
use serde::Deserialize;
use std::fmt;
use std::path::{Path, PathBuf};

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn cfg_err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Numeric,
    Exact,
    Born,
    Abrupt,
    Adiabatic,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Numeric => "numeric",
            Method::Exact => "exact",
            Method::Born => "born",
            Method::Abrupt => "abrupt",
            Method::Adiabatic => "adiabatic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    pub kind: String,
    pub omega0: f64,
    #[serde(rename = "Omega", default)]
    pub omega_amp: f64,
    #[serde(rename = "T", default)]
    pub t_scale: f64,
    #[serde(default)]
    pub sign: Option<String>,
    #[serde(default)]
    pub csv: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForceSection {
    pub kind: String,
    #[serde(rename = "F0", default)]
    pub amplitude: f64,
    #[serde(default)]
    pub omega_f: f64,
    #[serde(default)]
    pub t_f: f64,
    #[serde(rename = "T2", default = "default_one")]
    pub width: f64,
    #[serde(default = "default_one")]
    pub mass: f64,
    #[serde(default)]
    pub csv: Option<String>,
}

fn default_one() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub t_min: f64,
    pub t_max: f64,
    #[serde(default)]
    pub n_steps: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub method: Method,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// methods participating in `compare` (defaults to all compatible)
    #[serde(default)]
    pub methods: Option<Vec<Method>>,
}

fn default_tol() -> f64 {
    1e-9
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub parameter: String,
    #[serde(default)]
    pub start: Option<f64>,
    #[serde(default)]
    pub stop: Option<f64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub values: Option<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub prefix: String,
    #[serde(default)]
    pub threads: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub profile: ProfileSection,
    pub force: Option<ForceSection>,
    pub grid: Option<GridSection>,
    pub run: RunSection,
    pub sweep: Option<SweepSection>,
    pub output: OutputSection,
}

/// A validated scenario ready to execute.
pub struct Scenario {
    pub profile: FrequencyProfile,
    pub force: ForceProfile,
    pub grid: TimeGrid,
    pub method: Method,
    pub compare_methods: Vec<Method>,
    pub tol: f64,
    pub sweep_values: Option<Vec<f64>>,
    pub out_prefix: PathBuf,
    pub threads: usize,
    pub config_hash: String,
}

pub fn load(path: &Path, hash: String) -> Result<Scenario, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let cfg: ConfigFile =
        toml::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    build(cfg, base, hash)
}

fn build(cfg: ConfigFile, base: &Path, config_hash: String) -> Result<Scenario, ConfigError> {
    let profile = build_profile(&cfg.profile, base)?;
    let force = match &cfg.force {
        None => ForceProfile::null(),
        Some(fs) => build_force(fs, base)?,
    };

    let method = cfg.run.method;
    check_compat(method, &profile)?;
    let compare_methods = match &cfg.run.methods {
        Some(ms) => {
            for &m in ms {
                check_compat(m, &profile)?;
            }
            ms.clone()
        }
        None => [
            Method::Numeric,
            Method::Exact,
            Method::Born,
            Method::Abrupt,
            Method::Adiabatic,
        ]
        .into_iter()
        .filter(|&m| check_compat(m, &profile).is_ok())
        .collect(),
    };

    let sweep_values = match &cfg.sweep {
        None => None,
        Some(sw) => {
            if sw.parameter != "t_f" {
                return cfg_err(format!(
                    "sweep.parameter: only 't_f' is supported, got '{}'",
                    sw.parameter
                ));
            }
            let vals = match (&sw.values, sw.start, sw.stop, sw.count) {
                (Some(v), None, None, None) if !v.is_empty() => v.clone(),
                (None, Some(a), Some(b), Some(n)) if n >= 2 && b > a => (0..n)
                    .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
                    .collect(),
                _ => {
                    return cfg_err(
                        "sweep needs either values = [...] or start/stop/count (count >= 2)",
                    )
                }
            };
            Some(vals)
        }
    };

    // grid: explicit, or derived from the drive span plus all force supports
    let mut extra: Vec<(f64, f64)> = Vec::new();
    if let Some(s) = force.support() {
        extra.push(s);
    }
    if let (Some(vals), Some((lo, hi))) = (&sweep_values, force.support()) {
        let t_f = force.center();
        let vmin = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let vmax = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        extra.push((lo + (vmin - t_f), hi + (vmax - t_f)));
    }
    let grid = match &cfg.grid {
        Some(g) => {
            let n = g.n_steps.unwrap_or_else(|| {
                TimeGrid::for_profile(&profile, &[(g.t_min, g.t_max)])
                    .map(|d| d.n_steps)
                    .unwrap_or(4096)
            });
            TimeGrid::new(g.t_min, g.t_max, n).map_err(|e| ConfigError(e.to_string()))?
        }
        None => TimeGrid::for_profile(&profile, &extra).map_err(|e| ConfigError(e.to_string()))?,
    };
    for (lo, hi) in &extra {
        if *lo < grid.t_min || *hi > grid.t_max {
            return cfg_err(format!(
                "grid [{}, {}] does not cover the force support / sweep range [{lo}, {hi}]",
                grid.t_min, grid.t_max
            ));
        }
    }
    // the negated form also rejects a NaN tolerance
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(cfg.run.tol > 0.0) {
        return cfg_err("run.tol must be positive");
    }

    let threads = cfg.output.threads.unwrap_or(1).max(1);
    Ok(Scenario {
        profile,
        force,
        grid,
        method,
        compare_methods,
        tol: cfg.run.tol,
        sweep_values,
        out_prefix: PathBuf::from(&cfg.output.prefix),
        threads,
        config_hash,
    })
}

fn build_profile(p: &ProfileSection, base: &Path) -> Result<FrequencyProfile, ConfigError> {
    match p.kind.as_str() {
        "constant" => FrequencyProfile::constant(p.omega0).map_err(|e| ConfigError(e.to_string())),
        "sech_bump" => {
            let sign = match p.sign.as_deref() {
                Some("plus") | None => ProfileSign::Plus,
                Some("minus") => ProfileSign::Minus,
                Some(other) => return cfg_err(format!("profile.sign: '{other}' (plus | minus)")),
            };
            FrequencyProfile::sech_bump(p.omega0, p.omega_amp, p.t_scale, sign)
                .map_err(|e| ConfigError(e.to_string()))
        }
        "tabulated" => {
            let csv = p
                .csv
                .as_ref()
                .ok_or_else(|| ConfigError("profile.csv required for tabulated".into()))?;
            FrequencyProfile::tabulated_from_csv(p.omega0, &base.join(csv))
                .map_err(|e| ConfigError(e.to_string()))
        }
        other => cfg_err(format!(
            "profile.kind: '{other}' (constant | sech_bump | tabulated)"
        )),
    }
}

fn build_force(f: &ForceSection, base: &Path) -> Result<ForceProfile, ConfigError> {
    let built = match f.kind.as_str() {
        "null" => Ok(ForceProfile::null()),
        "gauss_cos" => ForceProfile::gauss_cos(f.amplitude, f.omega_f, f.t_f, f.width),
        "tabulated" => {
            let csv = f
                .csv
                .as_ref()
                .ok_or_else(|| ConfigError("force.csv required for tabulated".into()))?;
            ForceProfile::tabulated_from_csv(&base.join(csv), f.t_f)
        }
        other => {
            return cfg_err(format!(
                "force.kind: '{other}' (null | gauss_cos | tabulated)"
            ))
        }
    };
    built
        .and_then(|p| p.with_mass(f.mass))
        .map_err(|e| ConfigError(e.to_string()))
}

/// Method-profile compatibility: the closed forms only exist for their
/// specific profiles (a constant profile is every method's trivial limit).
pub fn check_compat(method: Method, profile: &FrequencyProfile) -> Result<(), ConfigError> {
    let ok = match (method, profile) {
        (Method::Numeric, _) => true,
        (_, FrequencyProfile::Constant { .. }) => true,
        (Method::Exact, FrequencyProfile::SechBump { sign, .. }) => *sign == ProfileSign::Plus,
        (Method::Born, FrequencyProfile::SechBump { sign, .. }) => *sign == ProfileSign::Plus,
        (Method::Abrupt, FrequencyProfile::SechBump { sign, .. }) => *sign == ProfileSign::Plus,
        (Method::Adiabatic, FrequencyProfile::SechBump { sign, .. }) => *sign == ProfileSign::Minus,
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        cfg_err(format!(
            "method '{method}' is not compatible with this profile \
             (exact/born/abrupt need a plus-sign sech bump, adiabatic a minus-sign one)"
        ))
    }
}
