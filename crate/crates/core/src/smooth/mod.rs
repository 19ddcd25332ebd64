//! Smooth parametric curves with closed-form derivatives, and their
//! curvature, torsion, frame and osculating sphere.

mod registry;

pub use registry::{Circle, Line, RegistryCurve, UnknownCurve};

use std::ops::RangeInclusive;

use crate::curve::{Dimension, DiscreteCurve, FrenetFrame, SphereOrPlane};
use crate::{space_to_plane, Complex, GeomError, Result, Vec3};

/// Position and first three derivatives at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub s: Vec3,
    pub d1: Vec3,
    pub d2: Vec3,
    pub d3: Vec3,
}

/// A curve given by exact evaluators for `s, s′, s″, s‴`. Planar curves
/// have zero third component.
pub trait ParametricCurve: Send + Sync {
    fn jet(&self, t: f64) -> Jet;

    fn dimension(&self) -> Dimension;

    fn domain(&self) -> (f64, f64) {
        (0.0, std::f64::consts::TAU)
    }

    fn position(&self, t: f64) -> Vec3 {
        self.jet(t).s
    }
}

fn speed(jet: &Jet, t: f64) -> Result<f64> {
    let v = jet.d1.norm();
    if v == 0.0 || !v.is_finite() {
        return Err(GeomError::SingularParametrization { t });
    }
    Ok(v)
}

/// `s′ × s″`, rejected when it vanishes to rounding.
fn binormal_vector(jet: &Jet, t: f64) -> Result<Vec3> {
    let w = jet.d1.cross(&jet.d2);
    if w.norm() <= f64::EPSILON * jet.d1.norm() * jet.d2.norm() {
        return Err(GeomError::VanishingCurvature { t });
    }
    Ok(w)
}

/// `‖s′ × s″‖ / ‖s′‖³`; signed `det(s′, s″) / ‖s′‖³` for planar curves.
pub fn smooth_curvature(curve: &dyn ParametricCurve, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    let v = speed(&jet, t)?;
    let w = jet.d1.cross(&jet.d2);
    let num = match curve.dimension() {
        Dimension::Planar => w.z,
        Dimension::Spatial => w.norm(),
    };
    Ok(num / (v * v * v))
}

/// `τ = −⟨s′ × s″, s‴⟩ / ‖s′ × s″‖²`; zero for planar curves.
pub fn smooth_torsion(curve: &dyn ParametricCurve, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    speed(&jet, t)?;
    let w = binormal_vector(&jet, t)?;
    if curve.dimension() == Dimension::Planar {
        return Ok(0.0);
    }
    Ok(-w.dot(&jet.d3) / w.norm_squared())
}

/// Torsion through the normal, `⟨s′ × s‴, N⟩ / (κ‖s′‖⁴)`.
pub fn smooth_torsion_via_normal(curve: &dyn ParametricCurve, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    let v = speed(&jet, t)?;
    let w = binormal_vector(&jet, t)?;
    if curve.dimension() == Dimension::Planar {
        return Ok(0.0);
    }
    let frame = smooth_frame(curve, t)?;
    let kappa = w.norm() / (v * v * v);
    Ok(jet.d1.cross(&jet.d3).dot(&frame.normal) / (kappa * v.powi(4)))
}

/// `T = s′/‖s′‖`, `B = s′ × s″ / ‖s′ × s″‖`, `N = B × T`. For planar curves
/// `N` is `T` turned by a right angle and `B = (0, 0, 1)`.
pub fn smooth_frame(curve: &dyn ParametricCurve, t: f64) -> Result<FrenetFrame> {
    let jet = curve.jet(t);
    let v = speed(&jet, t)?;
    let tangent = jet.d1 / v;
    match curve.dimension() {
        Dimension::Planar => Ok(FrenetFrame {
            tangent,
            normal: Vec3::new(-tangent.y, tangent.x, 0.0),
            binormal: Vec3::z(),
        }),
        Dimension::Spatial => {
            let binormal = binormal_vector(&jet, t)?.normalize();
            Ok(FrenetFrame {
                tangent,
                normal: binormal.cross(&tangent),
                binormal,
            })
        }
    }
}

/// Derivative of the unsigned curvature with respect to arclength.
pub fn smooth_kappa_prime(curve: &dyn ParametricCurve, t: f64) -> Result<f64> {
    let jet = curve.jet(t);
    let v = speed(&jet, t)?;
    let w = binormal_vector(&jet, t)?;
    let wn = w.norm();
    let dk_dt = w.dot(&jet.d1.cross(&jet.d3)) / (wn * v.powi(3)) - 3.0 * wn * jet.d1.dot(&jet.d2) / v.powi(5);
    Ok(dk_dt / v)
}

/// Sphere with center `s + N/κ + κ′/(κ²τ) B` through `s(t)`.
pub fn smooth_osculating_sphere(curve: &dyn ParametricCurve, t: f64) -> Result<SphereOrPlane> {
    if curve.dimension() == Dimension::Planar {
        return Err(GeomError::PlaneVariant);
    }
    let s = curve.position(t);
    let kappa = smooth_curvature(curve, t)?;
    let tau = smooth_torsion(curve, t)?;
    if tau == 0.0 {
        return Err(GeomError::PlaneVariant);
    }
    let frame = smooth_frame(curve, t)?;
    let kp = smooth_kappa_prime(curve, t)?;
    let center = s + frame.normal / kappa + frame.binormal * (kp / (kappa * kappa * tau));
    Ok(SphereOrPlane::Sphere {
        center,
        radius: (center - s).norm(),
    })
}

/// `s̃ = s − 2s′²/s″` in complex notation.
pub fn tilde_point(curve: &dyn ParametricCurve, t: f64) -> Result<Complex> {
    if curve.dimension() != Dimension::Planar {
        return Err(GeomError::NotPlanar);
    }
    let jet = curve.jet(t);
    let (s, d1, d2) = (space_to_plane(&jet.s), space_to_plane(&jet.d1), space_to_plane(&jet.d2));
    if d2.norm() == 0.0 {
        return Err(GeomError::Inflection { t });
    }
    Ok(s - d1 * d1 * 2.0 / d2)
}

fn discrete(curve: &dyn ParametricCurve, points: Vec<Vec3>) -> Result<DiscreteCurve> {
    match curve.dimension() {
        Dimension::Planar => DiscreteCurve::planar(points.iter().map(space_to_plane), false),
        Dimension::Spatial => DiscreteCurve::spatial(points, false),
    }
}

/// Open polygon with vertex `k` at `s(u + (2k − 1)ε)`, listed from the
/// lowest `k`.
pub fn sample(curve: &dyn ParametricCurve, u: f64, eps: f64, ks: RangeInclusive<i64>) -> Result<DiscreteCurve> {
    let points = ks.map(|k| curve.position(u + (2 * k - 1) as f64 * eps)).collect();
    discrete(curve, points)
}

/// Number of vertices `floor(π/ε) + 1` of the full-curve sampling.
pub fn full_sample_len(eps: f64) -> usize {
    (std::f64::consts::PI / eps).floor() as usize + 1
}

/// Parameter of the midpoint of edge `(k, k+1)` in the full-curve sampling.
pub fn edge_midpoint(k: usize, eps: f64) -> f64 {
    (2 * k + 1) as f64 * eps
}

/// Open polygon `γ_k = s(2kε)`, `k = 0 ..= floor(π/ε)`, covering `[0, 2π]`.
pub fn sample_full(curve: &dyn ParametricCurve, eps: f64) -> Result<DiscreteCurve> {
    let points = (0..full_sample_len(eps))
        .map(|k| curve.position((2 * k) as f64 * eps))
        .collect();
    discrete(curve, points)
}
