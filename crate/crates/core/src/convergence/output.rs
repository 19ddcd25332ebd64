//! CSV, JSON and SVG renderings of a convergence report.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{ConfigError, ConvergenceError, ConvergenceReport, Quantity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(ConfigError(format!("unknown format {other:?} (expected csv, json or svg)"))),
        }
    }
}

/// Columns `curve,quantity,level,epsilon,linf_error`; floats carry 17
/// significant digits.
pub fn write_csv(report: &ConvergenceReport, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "curve,quantity,level,epsilon,linf_error")?;
    for c in &report.curves {
        for q in &report.quantities {
            for l in &c.levels {
                if let Some(e) = l.measurement.errors.get(q) {
                    writeln!(
                        out,
                        "{},{},{},{:.16e},{:.16e}",
                        c.curve, q, l.level, l.epsilon, e
                    )?;
                }
            }
        }
    }
    Ok(())
}

pub fn write_json(report: &ConvergenceReport, out: impl Write) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, report)
}

const PALETTE: [&str; 7] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.floor() as i32, hi.ceil() as i32);
    if b - a >= 2 {
        let step = ((b - a) as f64 / 6.0).ceil().max(1.0) as i32;
        (a..=b).step_by(step as usize).map(f64::from).filter(|v| *v >= lo && *v <= hi).collect()
    } else {
        (0..=4).map(|k| lo + (hi - lo) * k as f64 / 4.0).collect()
    }
}

/// A log–log plot of the error series of one quantity, one line per curve.
pub fn render_svg(report: &ConvergenceReport, quantity: Quantity) -> String {
    let (w, h) = (720.0, 480.0);
    let (left, right, top, bottom) = (80.0, 200.0, 40.0, 60.0);
    let series: Vec<(String, Vec<(f64, f64)>)> = report
        .curves
        .iter()
        .filter(|c| c.fit(quantity).is_some())
        .map(|c| {
            let slope = c
                .fit(quantity)
                .and_then(|f| f.fit.slope())
                .map_or_else(|| "n/a".to_string(), |s| format!("{s:.4}"));
            let pts = c
                .series(quantity)
                .into_iter()
                .filter(|(_, e)| *e > 0.0)
                .map(|(x, y)| (x.log10(), y.log10()))
                .collect();
            (format!("{} {} ({slope})", c.label, c.curve), pts)
        })
        .collect();

    let all = series.iter().flat_map(|s| s.1.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-2.0, -1.0, -16.0, 0.0);
    }
    if x1 - x0 < 1e-9 {
        x1 = x0 + 1.0;
    }
    if y1 - y0 < 1e-9 {
        y1 = y0 + 1.0;
    }
    let px = |x: f64| left + (x - x0) / (x1 - x0) * (w - left - right);
    let py = |y: f64| top + (y1 - y) / (y1 - y0) * (h - top - bottom);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="24" text-anchor="middle" font-size="15">l∞ error of {quantity} vs step</text>"#,
        (left + w - right) / 2.0
    );
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - left - right,
        h - top - bottom
    );
    for t in ticks(x0, x1) {
        let x = px(t);
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{}" x2="{x:.2}" y2="{}" stroke="black"/><text x="{x:.2}" y="{}" text-anchor="middle">{:.3}</text>"#,
            h - bottom,
            h - bottom + 5.0,
            h - bottom + 20.0,
            10f64.powf(t)
        );
    }
    for t in ticks(y0, y1) {
        let y = py(t);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y:.2}" x2="{left}" y2="{y:.2}" stroke="black"/><text x="{}" y="{:.2}" text-anchor="end">{:.1e}</text>"#,
            left - 5.0,
            left - 8.0,
            y + 4.0,
            10f64.powf(t)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">step ε (log scale)</text>"#,
        (left + w - right) / 2.0,
        h - 15.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{0}" text-anchor="middle" transform="rotate(-90 18 {0})">l∞ error (log scale)</text>"#,
        (top + h - bottom) / 2.0
    );
    for (i, (name, pts)) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let path: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            path.join(" ")
        );
        for &(x, y) in pts {
            let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{color}"/>"#, px(x), py(y));
        }
        let ly = top + 16.0 * i as f64 + 10.0;
        let lx = w - right + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{}" y="{}">{name}</text>"#,
            lx + 18.0,
            lx + 24.0,
            ly + 4.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn create(path: &Path) -> Result<io::BufWriter<fs::File>, ConvergenceError> {
    fs::File::create(path)
        .map(io::BufWriter::new)
        .map_err(|source| ConvergenceError::Io {
            path: path.to_path_buf(),
            source,
        })
}

/// Writes `errors.csv`, `report.json` and `errors_<quantity>.svg` into `dir`
/// as requested, returning the paths written.
pub fn write_artifacts(
    report: &ConvergenceReport,
    dir: &Path,
    formats: &[Format],
) -> Result<Vec<PathBuf>, ConvergenceError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| ConvergenceError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut written = Vec::new();
    for f in formats {
        match f {
            Format::Csv => {
                let path = dir.join("errors.csv");
                let mut out = create(&path)?;
                write_csv(report, &mut out).map_err(io_err(&path))?;
                out.flush().map_err(io_err(&path))?;
                written.push(path);
            }
            Format::Json => {
                let path = dir.join("report.json");
                let mut out = create(&path)?;
                write_json(report, &mut out)?;
                out.write_all(b"\n").map_err(io_err(&path))?;
                out.flush().map_err(io_err(&path))?;
                written.push(path);
            }
            Format::Svg => {
                for &q in &report.quantities {
                    let path = dir.join(format!("errors_{q}.svg"));
                    fs::write(&path, render_svg(report, q)).map_err(io_err(&path))?;
                    written.push(path);
                }
            }
        }
    }
    Ok(written)
}
