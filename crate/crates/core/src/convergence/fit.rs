use serde::Serialize;

/// Fewer points than this give a fit flagged as low confidence.
pub const MIN_CONFIDENT_POINTS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum FitOutcome {
    Fitted {
        slope: f64,
        intercept: f64,
        /// Root-mean-square residual in natural-log units.
        residual: f64,
        points: usize,
        excluded_zeros: usize,
        low_confidence: bool,
    },
    /// Every error was zero, or at the rounding floor of the quantity.
    ExactAtMachinePrecision,
    /// Fewer than two usable points.
    Insufficient { points: usize },
}

impl FitOutcome {
    pub fn slope(&self) -> Option<f64> {
        match self {
            FitOutcome::Fitted { slope, .. } => Some(*slope),
            _ => None,
        }
    }
}

/// Ordinary least squares of `ln(error)` against `ln(ε)`. Zero errors are
/// dropped and counted.
pub fn fit_rate(points: &[(f64, f64)]) -> FitOutcome {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, err)| *e > 0.0 && *err > 0.0 && err.is_finite())
        .map(|(e, err)| (e.ln(), err.ln()))
        .collect();
    let zeros = points.iter().filter(|(_, err)| *err == 0.0).count();
    if usable.is_empty() && zeros > 0 && zeros == points.len() {
        return FitOutcome::ExactAtMachinePrecision;
    }
    let n = usable.len();
    if n < 2 {
        return FitOutcome::Insufficient { points: n };
    }
    let nf = n as f64;
    let mx = usable.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = usable.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = usable.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = usable.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return FitOutcome::Insufficient { points: n };
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (usable
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum::<f64>()
        / nf)
        .sqrt();
    FitOutcome::Fitted {
        slope,
        intercept,
        residual,
        points: n,
        excluded_zeros: zeros,
        low_confidence: n < MIN_CONFIDENT_POINTS,
    }
}
