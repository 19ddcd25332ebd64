//! Convergence experiment: sample each test curve at a ladder of step sizes,
//! measure the l∞ deviation of the discrete invariants from the smooth ones,
//! and fit the rate in log–log space.

mod fit;
mod output;

pub use fit::{fit_rate, FitOutcome, MIN_CONFIDENT_POINTS};
pub use output::{render_svg, write_artifacts, write_csv, write_json, Format};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::curve::{analyze_edge, Dimension, EdgeAnalysis, FrenetFrame};
use crate::smooth::{
    edge_midpoint, sample_full, smooth_curvature, smooth_frame, smooth_torsion, tilde_point, ParametricCurve,
    RegistryCurve,
};
use crate::{plane_to_space, GeomError, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Quantity {
    #[serde(rename = "kappa")]
    Curvature,
    #[serde(rename = "tau")]
    Torsion,
    #[serde(rename = "T")]
    Tangent,
    #[serde(rename = "N")]
    Normal,
    #[serde(rename = "B")]
    Binormal,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [
        Quantity::Curvature,
        Quantity::Torsion,
        Quantity::Tangent,
        Quantity::Normal,
        Quantity::Binormal,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            Quantity::Curvature => "kappa",
            Quantity::Torsion => "tau",
            Quantity::Tangent => "T",
            Quantity::Normal => "N",
            Quantity::Binormal => "B",
        }
    }

    /// Torsion and binormal are trivial on planar curves and not measured.
    pub fn applies_to(self, dimension: Dimension) -> bool {
        dimension == Dimension::Spatial || !matches!(self, Quantity::Torsion | Quantity::Binormal)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Quantity {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "kappa" | "k" | "curvature" => Ok(Quantity::Curvature),
            "tau" | "torsion" => Ok(Quantity::Torsion),
            "T" | "t" | "tangent" => Ok(Quantity::Tangent),
            "N" | "n" | "normal" => Ok(Quantity::Normal),
            "B" | "b" | "binormal" => Ok(Quantity::Binormal),
            other => Err(ConfigError(format!(
                "unknown quantity {other:?} (expected kappa, tau, T, N or B)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

#[derive(Debug, Error)]
pub enum ConvergenceError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("serializing report: {0}")]
    Json(#[from] serde_json::Error),
}

/// Step size `0.1 · 1.1^l` at level `l`.
pub fn level_epsilon(level: i32) -> f64 {
    0.1 * 1.1f64.powi(level)
}

/// Default vertex spacing as a multiple of the level's step size: `π/4`,
/// i.e. `8/ε` edges over `[0, 2π]`.
pub const DEFAULT_SPACING: f64 = std::f64::consts::FRAC_PI_4;

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub curves: Vec<RegistryCurve>,
    /// Levels from coarse to fine, e.g. `0..=-15` meaning 0, −1, …, −15.
    pub coarsest: i32,
    pub finest: i32,
    pub quantities: Vec<Quantity>,
    /// Vertex spacing divided by the level's step size.
    pub spacing: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            curves: RegistryCurve::ALL.to_vec(),
            coarsest: 0,
            finest: -15,
            quantities: Quantity::ALL.to_vec(),
            spacing: DEFAULT_SPACING,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.curves.is_empty() {
            return Err(ConfigError("no curves selected".into()));
        }
        if self.quantities.is_empty() {
            return Err(ConfigError("no quantities selected".into()));
        }
        if self.finest > self.coarsest {
            return Err(ConfigError(format!(
                "level range {}..{} must run from coarse to fine (decreasing)",
                self.coarsest, self.finest
            )));
        }
        if !(self.spacing > 0.0 && self.spacing <= 2.0) {
            return Err(ConfigError(format!("spacing {} must lie in (0, 2]", self.spacing)));
        }
        if self.coarsest > 0 {
            return Err(ConfigError(format!(
                "level {} is too coarse: too few interior edges",
                self.coarsest
            )));
        }
        Ok(())
    }

    /// Levels in order, coarsest first.
    pub fn levels(&self) -> impl Iterator<Item = i32> {
        (self.finest..=self.coarsest).rev()
    }
}

/// Parses `A..B` (or `A..=B`), e.g. `0..-15`. Both ends are included.
pub fn parse_level_range(s: &str) -> Result<RangeInclusive<i32>, ConfigError> {
    let bad = || ConfigError(format!("bad level range {s:?} (expected e.g. 0..-15)"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i32 = a.trim().parse().map_err(|_| bad())?;
    let b: i32 = b.trim().parse().map_err(|_| bad())?;
    Ok(a..=b)
}

/// Errors at a single sampling density.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    /// Half the vertex spacing.
    pub stencil_epsilon: f64,
    /// Interior edges compared.
    pub edges: usize,
    /// Interior edges skipped because the discrete quantities were singular.
    pub skipped: usize,
    pub errors: BTreeMap<Quantity, f64>,
    /// `max |p_bc − s(u)|`.
    pub contact_error: f64,
    /// `max |p_da − s̃(u)|`, planar curves only.
    pub tilde_error: Option<f64>,
}

fn aligned_error(discrete: Vec3, smooth: Vec3) -> f64 {
    let plus = (discrete - smooth).amax();
    let minus = (discrete + smooth).amax();
    plus.min(minus)
}

fn frame_vector(f: &FrenetFrame, q: Quantity) -> Vec3 {
    match q {
        Quantity::Tangent => f.tangent,
        Quantity::Normal => f.normal,
        _ => f.binormal,
    }
}

fn edge_errors(
    curve: &dyn ParametricCurve,
    a: &EdgeAnalysis,
    t: f64,
    quantities: &[Quantity],
) -> Result<Vec<(Quantity, f64)>, GeomError> {
    let dim = curve.dimension();
    let mut out = Vec::with_capacity(quantities.len());
    for &q in quantities.iter().filter(|q| q.applies_to(dim)) {
        let err = match q {
            Quantity::Curvature => (a.curvature - smooth_curvature(curve, t)?.abs()).abs(),
            Quantity::Torsion => {
                let tau = a.torsion.ok_or(GeomError::TorsionUndefined)?;
                (tau - smooth_torsion(curve, t)?).abs()
            }
            _ => {
                let frame = a.frame.ok_or(GeomError::FlatFrame { tangent: Vec3::zeros() })?;
                aligned_error(frame_vector(&frame, q), frame_vector(&smooth_frame(curve, t)?, q))
            }
        };
        out.push((q, err));
    }
    Ok(out)
}

/// Samples `curve` with vertex spacing `2 eps` over its full domain (see
/// [`sample_full`]) and takes the maximum
/// deviation of each quantity over the interior edges. Edges where a
/// discrete or smooth quantity is singular are skipped and counted.
pub fn measure_errors(
    curve: &dyn ParametricCurve,
    eps: f64,
    quantities: &[Quantity],
) -> Result<Measurement, GeomError> {
    let polygon = sample_full(curve, eps)?;
    let planar = curve.dimension() == Dimension::Planar;
    let mut errors: BTreeMap<Quantity, f64> = quantities
        .iter()
        .filter(|q| q.applies_to(curve.dimension()))
        .map(|&q| (q, 0.0))
        .collect();
    let (mut edges, mut skipped) = (0, 0);
    let mut contact_error = 0.0_f64;
    let mut tilde_error = planar.then_some(0.0_f64);

    for k in polygon.interior_edges() {
        let t = edge_midpoint(k, eps);
        let measured = analyze_edge(&polygon, k).and_then(|a| Ok((edge_errors(curve, &a, t, quantities)?, a)));
        let (per_quantity, a) = match measured {
            Ok(v) => v,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        edges += 1;
        for (q, e) in per_quantity {
            let slot = errors.entry(q).or_insert(0.0);
            *slot = slot.max(e);
        }
        if let Some(p) = a.edge_points.p_bc.finite() {
            contact_error = contact_error.max((p - curve.position(t)).norm());
        }
        if let (Some(slot), Some(p), Ok(s)) = (tilde_error.as_mut(), a.edge_points.p_da.finite(), tilde_point(curve, t)) {
            *slot = slot.max((p - plane_to_space(s)).norm());
        }
    }
    Ok(Measurement {
        stencil_epsilon: eps,
        edges,
        skipped,
        errors,
        contact_error,
        tilde_error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelRecord {
    pub level: i32,
    /// `0.1 · 1.1^level`.
    pub epsilon: f64,
    #[serde(flatten)]
    pub measurement: Measurement,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuantityFit {
    pub quantity: Quantity,
    pub fit: FitOutcome,
    /// Set when the series is not meaningful as a rate.
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveReport {
    pub curve: RegistryCurve,
    pub label: &'static str,
    pub dimension: Dimension,
    pub levels: Vec<LevelRecord>,
    pub fits: Vec<QuantityFit>,
    pub contact_fit: FitOutcome,
    pub tilde_fit: Option<FitOutcome>,
    /// Quantities requested but not measured on this curve, with the reason.
    pub excluded: Vec<(Quantity, String)>,
    /// Set when the curve could not be processed at all.
    pub failure: Option<String>,
}

impl CurveReport {
    pub fn fit(&self, q: Quantity) -> Option<&QuantityFit> {
        self.fits.iter().find(|f| f.quantity == q)
    }

    pub fn skipped_edges(&self) -> usize {
        self.levels.iter().map(|l| l.measurement.skipped).sum()
    }

    /// `(ε, error)` pairs for one quantity, coarsest first.
    pub fn series(&self, q: Quantity) -> Vec<(f64, f64)> {
        self.levels
            .iter()
            .filter_map(|l| l.measurement.errors.get(&q).map(|e| (l.epsilon, *e)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub quantities: Vec<Quantity>,
    pub spacing: f64,
    pub levels: Vec<i32>,
    pub curves: Vec<CurveReport>,
}

impl ConvergenceReport {
    pub fn curve(&self, c: RegistryCurve) -> Option<&CurveReport> {
        self.curves.iter().find(|r| r.curve == c)
    }

    pub fn has_failures(&self) -> bool {
        self.curves.iter().any(|c| c.failure.is_some())
    }
}

fn series_note(curve: RegistryCurve, q: Quantity) -> Option<String> {
    (curve == RegistryCurve::Helix && q == Quantity::Normal)
        .then(|| "excluded from rate comparison: the error starts at rounding level and only shows numerical noise".into())
}

/// `|p_bc − s|` at or below `CONTACT_FLOOR · scale` at every level counts as
/// exact.
pub const CONTACT_FLOOR: f64 = 1e-12;

/// `|p_da − s̃|` at or below `TILDE_FLOOR · EPS · scale / ε²` at every level
/// counts as exact; `p_da` amplifies rounding like `1/ε²`.
pub const TILDE_FLOOR: f64 = 100.0;

/// Largest `‖s(t)‖` over 257 samples of the domain.
pub fn curve_scale(curve: &dyn ParametricCurve) -> f64 {
    let (a, b) = curve.domain();
    (0..=256)
        .map(|k| curve.position(a + (b - a) * k as f64 / 256.0).norm())
        .fold(0.0, f64::max)
}

fn assemble(curve: RegistryCurve, config: &ExperimentConfig, results: Vec<(i32, Result<Measurement, GeomError>)>) -> CurveReport {
    let dimension = curve.dimension();
    let excluded = config
        .quantities
        .iter()
        .filter(|q| !q.applies_to(dimension))
        .map(|&q| (q, "trivial on a planar curve".to_string()))
        .collect();
    let mut levels = Vec::new();
    let mut failure = None;
    for (level, r) in results {
        match r {
            Ok(measurement) => levels.push(LevelRecord {
                level,
                epsilon: level_epsilon(level),
                measurement,
            }),
            Err(e) => {
                failure.get_or_insert_with(|| format!("level {level}: {e}"));
            }
        }
    }
    let points = |f: &dyn Fn(&Measurement) -> Option<f64>| -> Vec<(f64, f64)> {
        levels
            .iter()
            .filter_map(|l| f(&l.measurement).map(|e| (l.epsilon, e)))
            .collect()
    };
    let fits = config
        .quantities
        .iter()
        .filter(|q| q.applies_to(dimension))
        .map(|&q| QuantityFit {
            quantity: q,
            fit: fit_rate(&points(&|m| m.errors.get(&q).copied())),
            note: series_note(curve, q),
        })
        .collect();
    let scale = curve_scale(&curve);
    let floored = |f: &dyn Fn(&Measurement) -> Option<(f64, f64)>| {
        let at_floor = levels
            .iter()
            .all(|l| f(&l.measurement).is_none_or(|(err, floor)| err <= floor));
        if at_floor && !levels.is_empty() {
            FitOutcome::ExactAtMachinePrecision
        } else {
            fit_rate(&points(&|m| f(m).map(|p| p.0)))
        }
    };
    let contact_fit = floored(&|m| Some((m.contact_error, CONTACT_FLOOR * scale)));
    let tilde_fit = (dimension == Dimension::Planar).then(|| {
        floored(&|m| {
            m.tilde_error
                .map(|e| (e, TILDE_FLOOR * f64::EPSILON * scale / m.stencil_epsilon.powi(2)))
        })
    });
    CurveReport {
        curve,
        label: curve.label(),
        dimension,
        levels,
        fits,
        contact_fit,
        tilde_fit,
        excluded,
        failure,
    }
}

/// Runs the experiment. Levels and curves are evaluated in parallel; the
/// report is ordered as in the config.
pub fn run(config: &ExperimentConfig) -> Result<ConvergenceReport, ConfigError> {
    config.validate()?;
    let levels: Vec<i32> = config.levels().collect();
    let jobs: Vec<(RegistryCurve, i32)> = config
        .curves
        .iter()
        .flat_map(|&c| levels.iter().map(move |&l| (c, l)))
        .collect();
    let results: Vec<(i32, Result<Measurement, GeomError>)> = jobs
        .par_iter()
        .map(|&(c, l)| {
            let eps = level_epsilon(l) * config.spacing / 2.0;
            (l, measure_errors(&c, eps, &config.quantities))
        })
        .collect();

    let mut results = results.into_iter();
    let curves = config
        .curves
        .iter()
        .map(|&c| assemble(c, config, results.by_ref().take(levels.len()).collect()))
        .collect();
    Ok(ConvergenceReport {
        quantities: config.quantities.clone(),
        spacing: config.spacing,
        levels,
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smooth::{Circle, Line};
    use crate::Complex;

    #[test]
    fn epsilon_ladder() {
        assert_eq!(level_epsilon(0), 0.1);
        assert!((level_epsilon(-15) - 0.1 / 1.1f64.powi(15)).abs() < 1e-17);
        let cfg = ExperimentConfig::default();
        let eps: Vec<f64> = cfg.levels().map(level_epsilon).collect();
        assert_eq!(eps.len(), 16);
        assert!(eps.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn level_range_parsing() {
        let r = parse_level_range("0..-15").unwrap();
        assert_eq!((*r.start(), *r.end()), (0, -15));
        let r = parse_level_range("-2..=-5").unwrap();
        assert_eq!((*r.start(), *r.end()), (-2, -5));
        assert!(parse_level_range("0:-3").is_err());
        let bad = ExperimentConfig {
            coarsest: -5,
            finest: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn line_and_circle() {
        let line = Line {
            origin: Complex::new(0.0, 1.0),
            direction: Complex::new(1.0, 2.0),
        };
        let m = measure_errors(&line, 0.05, &[Quantity::Curvature, Quantity::Torsion]).unwrap();
        assert_eq!(m.errors[&Quantity::Curvature], 0.0);
        assert!(!m.errors.contains_key(&Quantity::Torsion));

        for eps in [0.1, 0.03] {
            let m = measure_errors(&Circle { radius: 2.0 }, eps, &Quantity::ALL).unwrap();
            assert!(m.errors[&Quantity::Curvature] < 1e-10);
            assert_eq!(m.skipped, 0);
        }
    }

    #[test]
    fn helix_error_ratio() {
        let q = [Quantity::Curvature];
        let a = measure_errors(&RegistryCurve::Helix, 0.04, &q).unwrap().errors[&Quantity::Curvature];
        let b = measure_errors(&RegistryCurve::Helix, 0.02, &q).unwrap().errors[&Quantity::Curvature];
        let ratio = a / b;
        assert!((3.0..=5.0).contains(&ratio), "{ratio}");
    }

    #[test]
    fn short_run_is_low_confidence() {
        let cfg = ExperimentConfig {
            curves: vec![RegistryCurve::Helix],
            coarsest: 0,
            finest: -3,
            quantities: vec![Quantity::Curvature, Quantity::Normal],
            ..Default::default()
        };
        let report = run(&cfg).unwrap();
        let helix = report.curve(RegistryCurve::Helix).unwrap();
        assert_eq!(helix.levels.len(), 4);
        assert!(matches!(
            helix.fit(Quantity::Curvature).unwrap().fit,
            FitOutcome::Fitted { low_confidence: true, .. }
        ));
        assert!(helix.fit(Quantity::Normal).unwrap().note.is_some());
    }
}
