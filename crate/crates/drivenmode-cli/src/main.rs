//! Batch scenario runner. Subcommands: run, sweep-tf, compare, multimode.
//! Exit codes: 0 success, 2 config/validation error, 3 solver error.

mod config;
mod engine;
mod output;

use clap::{Parser, Subcommand, ValueEnum};
use drivenmode::multimode::{
    mode_occupations, multimode_evolution, solve_multimode_jost, unitarity_defect, MultimodeSystem,
};
use drivenmode::TimeGrid;
use engine::Engine;
use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotKind {
    None,
    Svg,
}

#[derive(Parser)]
#[command(
    name = "drivenmode",
    version,
    about = "parametrically driven + forced mode engine"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute a single scenario and write its summary (and trajectory CSV)
    Run {
        #[arg(long)]
        config: PathBuf,
        /// override [output].prefix
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = PlotKind::None)]
        plot: PlotKind,
    },
    /// Sweep the force center t_f and tabulate alpha and the occupation
    SweepTf {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = PlotKind::None)]
        plot: PlotKind,
    },
    /// Evaluate every compatible method side by side
    Compare {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value_t = PlotKind::None)]
        plot: PlotKind,
    },
    /// Solve an n-mode system definition (JSON) and dump its matrices
    Multimode {
        /// system definition file
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 8192)]
        n_steps: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
}

fn file_hash(path: &Path) -> Result<String, config::ConfigError> {
    let bytes =
        std::fs::read(path).map_err(|e| config::ConfigError(format!("{}: {e}", path.display())))?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().take(6).map(|b| format!("{b:02x}")).collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Config(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
        Err(AppError::Solver(e)) => {
            eprintln!("solver error: {e}");
            ExitCode::from(engine::exit_code_for(&e) as u8)
        }
    }
}

enum AppError {
    Config(config::ConfigError),
    Solver(drivenmode::Error),
}

impl From<config::ConfigError> for AppError {
    fn from(e: config::ConfigError) -> Self {
        AppError::Config(e)
    }
}

impl From<drivenmode::Error> for AppError {
    fn from(e: drivenmode::Error) -> Self {
        AppError::Solver(e)
    }
}

fn load_scenario(
    config_path: &Path,
    out: Option<PathBuf>,
    threads: Option<usize>,
) -> Result<config::Scenario, config::ConfigError> {
    let hash = file_hash(config_path)?;
    let mut sc = config::load(config_path, hash)?;
    if let Some(o) = out {
        sc.out_prefix = o;
    }
    if let Some(t) = threads {
        sc.threads = t.max(1);
    }
    Ok(sc)
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_os_string();
    s.push(suffix);
    PathBuf::from(s)
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Run {
            config,
            out,
            threads,
            plot: _,
        } => {
            let sc = load_scenario(&config, out, threads)?;
            let eng = Engine::build(sc.method, &sc)?;
            let summary = engine::run_single(&sc, &eng)?;
            let json = output::summary_json(
                &summary,
                sc.method.name(),
                &sc.config_hash,
                eng.diagnostics(),
            );
            output::write_json(&with_suffix(&sc.out_prefix, "_summary.json"), &json)?;
            if let Some(sol) = eng.solution() {
                let path = with_suffix(&sc.out_prefix, "_trajectory.csv");
                if let Some(dir) = path.parent() {
                    if !dir.as_os_str().is_empty() {
                        std::fs::create_dir_all(dir).map_err(drivenmode::Error::from)?;
                    }
                }
                let f = std::fs::File::create(&path).map_err(drivenmode::Error::from)?;
                sol.write_csv(std::io::BufWriter::new(f))?;
            }
            println!(
                "run[{}]: |A|={:.6e} |B|={:.6e} |alpha|={:.6e} occupation={:.6e}",
                sc.method,
                summary.a.norm(),
                summary.b.norm(),
                summary.map.alpha.norm(),
                summary.occupation
            );
            Ok(())
        }
        Command::SweepTf {
            config,
            out,
            threads,
            plot,
        } => {
            let sc = load_scenario(&config, out, threads)?;
            let values = sc
                .sweep_values
                .clone()
                .ok_or_else(|| config::ConfigError("sweep-tf needs a [sweep] section".into()))?;
            let eng = Engine::build(sc.method, &sc)?;
            let rows = engine::sweep_tf(&sc, &eng, &values)?;
            output::write_sweep_csv(
                &with_suffix(&sc.out_prefix, "_sweep.csv"),
                &rows,
                &sc.config_hash,
            )?;
            if plot == PlotKind::Svg {
                let pts: Vec<(f64, f64)> = rows.iter().map(|r| (r.t_f, r.alpha.norm())).collect();
                output::write_line_chart(
                    &with_suffix(&sc.out_prefix, "_sweep.svg"),
                    &format!("|alpha| vs t_f ({})", sc.method),
                    "t_f",
                    "|alpha|",
                    &pts,
                )?;
            }
            println!("sweep[{}]: {} points written", sc.method, rows.len());
            Ok(())
        }
        Command::Compare {
            config,
            out,
            threads,
            plot: _,
        } => {
            let sc = load_scenario(&config, out, threads)?;
            let rows = engine::compare(&sc)?;
            output::write_compare_csv(
                &with_suffix(&sc.out_prefix, "_compare.csv"),
                &rows,
                &sc.config_hash,
            )?;
            output::write_deviations_csv(
                &with_suffix(&sc.out_prefix, "_compare_deviations.csv"),
                &rows,
                &sc.config_hash,
            )?;
            for r in &rows {
                println!(
                    "compare[{}]: A=({:.9e},{:.9e}) B=({:.9e},{:.9e}) |alpha|={:.9e}",
                    r.method,
                    r.a.re,
                    r.a.im,
                    r.b.re,
                    r.b.im,
                    r.alpha.norm()
                );
            }
            Ok(())
        }
        Command::Multimode {
            system,
            out,
            t_min,
            t_max,
            n_steps,
            tol,
        } => {
            let hash = file_hash(&system)?;
            let text = std::fs::read_to_string(&system)
                .map_err(|e| config::ConfigError(format!("{}: {e}", system.display())))?;
            let sys = MultimodeSystem::from_json(&text)
                .map_err(|e| config::ConfigError(e.to_string()))?;
            let grid = TimeGrid::new(t_min, t_max, n_steps)
                .map_err(|e| config::ConfigError(e.to_string()))?;
            let mj = solve_multimode_jost(&sys, &grid, tol)?;
            let (u, v, alphas) = multimode_evolution(&sys, &mj, t_min, t_max)?;
            write_matrix_csv(&with_suffix(&out, "_a.csv"), &mj.a, &hash)?;
            write_matrix_csv(&with_suffix(&out, "_b.csv"), &mj.b, &hash)?;
            write_matrix_csv(&with_suffix(&out, "_u.csv"), &u, &hash)?;
            write_matrix_csv(&with_suffix(&out, "_v.csv"), &v, &hash)?;
            write_alpha_csv(&with_suffix(&out, "_alpha.csv"), &alphas, &hash)?;
            let occ = mode_occupations(&v, &alphas);
            let json = serde_json::json!({
                "config_hash": hash,
                "n": sys.n(),
                "omega_ref": sys.omega_ref(),
                "unitarity_defect": unitarity_defect(&mj),
                "achieved_tol": mj.achieved_tol,
                "occupations": occ,
            });
            output::write_json(&with_suffix(&out, "_summary.json"), &json)?;
            println!(
                "multimode: n={} unitarity defect={:.3e}",
                sys.n(),
                unitarity_defect(&mj)
            );
            Ok(())
        }
    }
}

fn write_matrix_csv(
    path: &Path,
    m: &[Vec<drivenmode::C64>],
    hash: &str,
) -> Result<(), drivenmode::Error> {
    use std::io::Write;
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    let n = m.first().map(|r| r.len()).unwrap_or(0);
    let mut header: Vec<String> = vec!["row".into()];
    for j in 0..n {
        header.push(format!("re_{j}"));
        header.push(format!("im_{j}"));
    }
    header.push("config_hash".into());
    writeln!(f, "{}", header.join(","))?;
    for (i, row) in m.iter().enumerate() {
        let mut cols: Vec<String> = vec![i.to_string()];
        for z in row {
            cols.push(output::fmt_f64(z.re));
            cols.push(output::fmt_f64(z.im));
        }
        cols.push(hash.to_string());
        writeln!(f, "{}", cols.join(","))?;
    }
    Ok(())
}

fn write_alpha_csv(
    path: &Path,
    alphas: &[drivenmode::C64],
    hash: &str,
) -> Result<(), drivenmode::Error> {
    use std::io::Write;
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut f = std::fs::File::create(path)?;
    writeln!(f, "mode,re_alpha,im_alpha,abs_alpha,config_hash")?;
    for (i, a) in alphas.iter().enumerate() {
        writeln!(
            f,
            "{i},{},{},{},{hash}",
            output::fmt_f64(a.re),
            output::fmt_f64(a.im),
            output::fmt_f64(a.norm())
        )?;
    }
    Ok(())
}
