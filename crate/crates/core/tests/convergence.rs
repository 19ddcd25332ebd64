use std::sync::OnceLock;

use dcurv_core::convergence::{self, write_csv, write_json, ConvergenceReport, ExperimentConfig, FitOutcome};
use dcurv_core::curve::Dimension;
use dcurv_core::smooth::{smooth_frame, smooth_torsion, smooth_torsion_via_normal, ParametricCurve, RegistryCurve};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn default_report() -> &'static ConvergenceReport {
    static REPORT: OnceLock<ConvergenceReport> = OnceLock::new();
    REPORT.get_or_init(|| convergence::run(&ExperimentConfig::default()).unwrap())
}

fn artifacts(report: &ConvergenceReport) -> (Vec<u8>, Vec<u8>) {
    let (mut csv, mut json) = (Vec::new(), Vec::new());
    write_csv(report, &mut csv).unwrap();
    write_json(report, &mut json).unwrap();
    (csv, json)
}

#[test]
fn runs_are_byte_identical() {
    let again = convergence::run(&ExperimentConfig::default()).unwrap();
    assert_eq!(artifacts(default_report()), artifacts(&again));
}

#[test]
fn errors_shrink_with_refinement() {
    for c in &default_report().curves {
        for f in &c.fits {
            if f.note.is_some() {
                continue;
            }
            let series: Vec<f64> = c.series(f.quantity).into_iter().map(|p| p.1).collect();
            let inversions = series.windows(2).filter(|w| w[1] > w[0]).count();
            assert!(inversions <= 1, "{} {}: {series:?}", c.curve, f.quantity);
        }
    }
}

#[test]
fn no_edges_skipped_on_registry_curves() {
    for c in &default_report().curves {
        assert!(c.failure.is_none());
        assert_eq!(c.skipped_edges(), 0, "{}", c.curve);
    }
}

#[test]
fn tilde_point_rate_on_planar_curves() {
    for c in default_report().curves.iter().filter(|c| c.dimension == Dimension::Planar) {
        match c.tilde_fit.unwrap() {
            FitOutcome::Fitted { slope, .. } => assert!(slope >= 1.8, "{}: {slope}", c.curve),
            FitOutcome::ExactAtMachinePrecision => assert_eq!(c.curve, RegistryCurve::LogSpiral),
            other => panic!("{}: {other:?}", c.curve),
        }
    }
}

#[test]
fn contact_point_rate() {
    for c in &default_report().curves {
        match c.contact_fit {
            FitOutcome::Fitted { slope, .. } => assert!(slope >= 2.8, "{}: {slope}", c.curve),
            FitOutcome::ExactAtMachinePrecision => assert_eq!(c.curve, RegistryCurve::LogSpiral),
            other => panic!("{}: {other:?}", c.curve),
        }
    }
}

#[test]
fn torsion_formulas_agree() {
    let mut r = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..1000 {
        let curve = RegistryCurve::ALL[r.random_range(0..7)];
        if curve.dimension() == Dimension::Planar {
            continue;
        }
        let (a, b) = curve.domain();
        let t = r.random_range(a..b);
        let (x, y) = (smooth_torsion(&curve, t).unwrap(), smooth_torsion_via_normal(&curve, t).unwrap());
        assert!((x - y).abs() < 1e-10 * x.abs().max(1e-3), "{curve} at {t}: {x} vs {y}");
    }
}

#[test]
fn smooth_frames_are_orthonormal() {
    for curve in RegistryCurve::ALL {
        let (a, b) = curve.domain();
        for k in 0..200 {
            let t = a + (b - a) * (k as f64 + 0.5) / 200.0;
            let f = smooth_frame(&curve, t).unwrap();
            for v in [f.tangent, f.normal, f.binormal] {
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
            for (x, y) in [(f.tangent, f.normal), (f.normal, f.binormal), (f.tangent, f.binormal)] {
                assert!(x.dot(&y).abs() < 1e-12, "{curve} at {t}");
            }
        }
    }
}
