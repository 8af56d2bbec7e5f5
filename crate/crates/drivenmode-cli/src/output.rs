//! Deterministic output writers: CSV at 17 significant digits with the
//! config hash echoed on every row, a JSON summary, and a dependency-free
//! SVG line chart.

use crate::engine::{CompareRow, RunSummary, SweepRow};
use drivenmode::Result;
use std::fs;
use std::io::Write;
use std::path::Path;

/// 17 significant digits, '.' decimal separator.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn create(path: &Path) -> Result<fs::File> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    Ok(fs::File::create(path)?)
}

pub fn write_sweep_csv(path: &Path, rows: &[SweepRow], hash: &str) -> Result<()> {
    let mut f = create(path)?;
    let marked = rows.iter().any(|r| r.in_validity.is_some());
    if marked {
        writeln!(
            f,
            "t_f,re_alpha,im_alpha,abs_alpha,occupation,in_validity_window,config_hash"
        )?;
    } else {
        writeln!(f, "t_f,re_alpha,im_alpha,abs_alpha,occupation,config_hash")?;
    }
    for r in rows {
        let head = format!(
            "{},{},{},{},{}",
            fmt_f64(r.t_f),
            fmt_f64(r.alpha.re),
            fmt_f64(r.alpha.im),
            fmt_f64(r.alpha.norm()),
            fmt_f64(r.occupation)
        );
        match r.in_validity {
            Some(v) => writeln!(f, "{head},{},{hash}", v as u8)?,
            None => writeln!(f, "{head},{hash}")?,
        }
    }
    Ok(())
}

pub fn write_compare_csv(path: &Path, rows: &[CompareRow], hash: &str) -> Result<()> {
    let mut f = create(path)?;
    writeln!(
        f,
        "method,re_a,im_a,re_b,im_b,re_alpha,im_alpha,config_hash"
    )?;
    for r in rows {
        writeln!(
            f,
            "{},{},{},{},{},{},{},{hash}",
            r.method,
            fmt_f64(r.a.re),
            fmt_f64(r.a.im),
            fmt_f64(r.b.re),
            fmt_f64(r.b.im),
            fmt_f64(r.alpha.re),
            fmt_f64(r.alpha.im)
        )?;
    }
    Ok(())
}

pub fn write_deviations_csv(path: &Path, rows: &[CompareRow], hash: &str) -> Result<()> {
    let mut f = create(path)?;
    writeln!(
        f,
        "method_1,method_2,rel_dev_a,rel_dev_b,rel_dev_alpha,config_hash"
    )?;
    for (i, r1) in rows.iter().enumerate() {
        for r2 in rows.iter().skip(i + 1) {
            writeln!(
                f,
                "{},{},{},{},{},{hash}",
                r1.method,
                r2.method,
                fmt_f64(crate::engine::relative_deviation(r1.a, r2.a)),
                fmt_f64(crate::engine::relative_deviation(r1.b, r2.b)),
                fmt_f64(crate::engine::relative_deviation(r1.alpha, r2.alpha)),
            )?;
        }
    }
    Ok(())
}

pub fn summary_json(
    summary: &RunSummary,
    method: &str,
    hash: &str,
    diagnostics: Option<serde_json::Value>,
) -> serde_json::Value {
    serde_json::json!({
        "config_hash": hash,
        "method": method,
        "a": {"re": summary.a.re, "im": summary.a.im, "abs": summary.a.norm()},
        "b": {"re": summary.b.re, "im": summary.b.im, "abs": summary.b.norm()},
        "u": {"re": summary.map.u.re, "im": summary.map.u.im},
        "v": {"re": summary.map.v.re, "im": summary.map.v.im},
        "alpha": {"re": summary.map.alpha.re, "im": summary.map.alpha.im,
                  "abs": summary.map.alpha.norm()},
        "squeeze_r": summary.squeeze_r,
        "squeeze_phase": summary.squeeze_phase,
        "occupation": summary.occupation,
        "flux_defect": (summary.a.norm_sqr() - summary.b.norm_sqr() - 1.0).abs(),
        "solver": diagnostics,
    })
}

pub fn write_json(path: &Path, value: &serde_json::Value) -> Result<()> {
    let mut f = create(path)?;
    writeln!(f, "{}", serde_json::to_string_pretty(value).expect("json"))?;
    Ok(())
}

/// Minimal SVG polyline chart of (x, y) data with axes and tick labels.
pub fn write_line_chart(
    path: &Path,
    title: &str,
    x_label: &str,
    y_label: &str,
    points: &[(f64, f64)],
) -> Result<()> {
    let (w, h) = (900.0, 540.0);
    let (ml, mr, mt, mb) = (80.0, 30.0, 50.0, 60.0);
    let (pw, ph) = (w - ml - mr, h - mt - mb);
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() || x1 <= x0 {
        x0 = 0.0;
        x1 = 1.0;
    }
    if !y0.is_finite() || y1 <= y0 {
        y0 = 0.0;
        y1 = y1.max(1.0);
    }
    let sx = |x: f64| ml + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| mt + (1.0 - (y - y0) / (y1 - y0)) * ph;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" \
         viewBox=\"0 0 {w} {h}\">\n<rect width=\"{w}\" height=\"{h}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{title}</text>\n",
        w / 2.0
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + ph,
        ml + pw,
        mt + ph
    ));
    svg.push_str(&format!(
        "<line x1=\"{ml}\" y1=\"{mt}\" x2=\"{ml}\" y2=\"{}\" stroke=\"black\"/>\n",
        mt + ph
    ));
    for k in 0..=5 {
        let xv = x0 + (x1 - x0) * k as f64 / 5.0;
        let yv = y0 + (y1 - y0) * k as f64 / 5.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{xv:.3}</text>\n",
            sx(xv),
            mt + ph + 18.0
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{yv:.3e}</text>\n",
            ml - 6.0,
            sy(yv) + 4.0
        ));
        svg.push_str(&format!(
            "<line x1=\"{ml}\" y1=\"{0:.1}\" x2=\"{1}\" y2=\"{0:.1}\" stroke=\"#dddddd\"/>\n",
            sy(yv),
            ml + pw
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{x_label}</text>\n",
        ml + pw / 2.0,
        h - 16.0
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{y_label}</text>\n",
        mt + ph / 2.0
    ));
    let pts: Vec<String> = points
        .iter()
        .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
        .collect();
    svg.push_str(&format!(
        "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.2\" points=\"{}\"/>\n",
        pts.join(" ")
    ));
    svg.push_str("</svg>\n");
    let mut f = create(path)?;
    f.write_all(svg.as_bytes())?;
    Ok(())
}
