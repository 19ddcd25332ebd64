//! Per-edge invariants: curvature circle, curvature, frame, torsion,
//! osculating sphere and κ′.

use serde::Serialize;

use super::circle::{circle_through_edge_points, circumsphere, CircleOrLine, SphereOrPlane};
use super::DiscreteCurve;
use crate::cross_ratio::cross_ratio_quat;
use crate::insertion::{edge_point_quad, EdgePointQuad};
use crate::{plane_to_space, space_to_plane, GeomError, Result, Vec3};

/// Relative residual allowed for the fourth edge point against the circle
/// through the other three.
pub const CIRCLE_FIT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub tangent: Vec3,
    pub normal: Vec3,
    pub binormal: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ArclengthStatus {
    Arclength,
    NotArclength,
    /// The curvature circle is a line; the test does not apply.
    Flat,
}

/// Everything computed at one edge `(i, i+1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EdgeAnalysis {
    pub edge: usize,
    pub edge_points: EdgePointQuad<Vec3>,
    pub circle: CircleOrLine,
    pub curvature: f64,
    /// `None` when the curvature circle is a line.
    pub frame: Option<FrenetFrame>,
    pub torsion: Option<f64>,
    /// `None` when the stencil is collinear.
    pub osculating_sphere: Option<SphereOrPlane>,
    pub kappa_prime: Option<f64>,
}

fn quad_of(curve: &DiscreteCurve, [a, b, c, d]: [Vec3; 4]) -> Result<EdgePointQuad<Vec3>> {
    if curve.is_planar() {
        let z = |v: Vec3| space_to_plane(&v);
        Ok(edge_point_quad(z(a), z(b), z(c), z(d))?.map(plane_to_space))
    } else {
        edge_point_quad(a, b, c, d)
    }
}

/// The four edge points `p_ab, p_bc, p_cd, p_da` of the stencil around edge `i`.
pub fn edge_points(curve: &DiscreteCurve, i: usize) -> Result<EdgePointQuad<Vec3>> {
    quad_of(curve, curve.stencil(i)?)
}

pub fn curvature_circle(curve: &DiscreteCurve, i: usize) -> Result<CircleOrLine> {
    circle_through_edge_points(&edge_points(curve, i)?, curve.is_planar(), CIRCLE_FIT_TOL)
}

/// Inverse radius of the curvature circle; zero for the line variant.
pub fn discrete_curvature(curve: &DiscreteCurve, i: usize) -> Result<f64> {
    Ok(curvature_circle(curve, i)?.curvature())
}

fn frame_of(circle: &CircleOrLine, quad: &EdgePointQuad<Vec3>, chord: Vec3) -> Result<FrenetFrame> {
    match circle {
        CircleOrLine::Circle(c) => {
            let p = quad.p_bc.finite().ok_or(GeomError::PointAtInfinity)?;
            let normal = ((c.center - p) / c.radius).normalize();
            let mut tangent = c.normal.cross(&normal).normalize();
            if tangent.dot(&chord) < 0.0 {
                tangent = -tangent;
            }
            Ok(FrenetFrame {
                tangent,
                normal,
                binormal: tangent.cross(&normal),
            })
        }
        CircleOrLine::Line(l) => {
            let tangent = if l.direction.dot(&chord) < 0.0 { -l.direction } else { l.direction };
            Err(GeomError::FlatFrame { tangent })
        }
    }
}

/// The frame read off the curvature circle at `p_bc`.
pub fn frenet_frame(curve: &DiscreteCurve, i: usize) -> Result<FrenetFrame> {
    let s = curve.stencil(i)?;
    let quad = quad_of(curve, s)?;
    let circle = circle_through_edge_points(&quad, curve.is_planar(), CIRCLE_FIT_TOL)?;
    frame_of(&circle, &quad, s[2] - s[1])
}

fn torsion_of(s: &[Vec3; 4], kappa: f64, frame: &FrenetFrame) -> Result<f64> {
    if kappa == 0.0 {
        return Err(GeomError::TorsionUndefined);
    }
    let cr = cross_ratio_quat(s[0], s[1], s[2], s[3])?;
    Ok(-9.0 * cr.im().dot(&frame.normal) / (2.0 * kappa * (s[1] - s[2]).norm_squared()))
}

/// `τᵢ = −9⟨Im cr(γᵢ₋₁, γᵢ, γᵢ₊₁, γᵢ₊₂), Nᵢ⟩ / (2κᵢ‖γᵢ − γᵢ₊₁‖²)`.
pub fn discrete_torsion(curve: &DiscreteCurve, i: usize) -> Result<f64> {
    let a = analyze_edge(curve, i)?;
    a.torsion.ok_or(GeomError::TorsionUndefined)
}

/// Circumsphere of the four stencil vertices.
pub fn osculating_sphere(curve: &DiscreteCurve, i: usize) -> Result<SphereOrPlane> {
    let [a, b, c, d] = curve.stencil(i)?;
    circumsphere(a, b, c, d)
}

fn kappa_prime_of(
    circle: &CircleOrLine,
    sphere: &SphereOrPlane,
    frame: &FrenetFrame,
    kappa: f64,
    tau: f64,
) -> Result<f64> {
    match (circle, sphere) {
        (CircleOrLine::Circle(c), SphereOrPlane::Sphere { center, .. }) if tau != 0.0 => {
            Ok((center - c.center).dot(&frame.binormal) * kappa * kappa * tau)
        }
        _ => Err(GeomError::KappaPrimeUndefined),
    }
}

/// κ′ from the oriented distance between the curvature circle's center and
/// the osculating sphere's center.
pub fn discrete_kappa_prime(curve: &DiscreteCurve, i: usize) -> Result<f64> {
    analyze_edge(curve, i)?.kappa_prime.ok_or(GeomError::KappaPrimeUndefined)
}

/// Whether `p_bc` and `p_da` are antipodal on the curvature circle, within
/// `tol` relative to the radius.
pub fn is_arclength_edge(curve: &DiscreteCurve, i: usize, tol: f64) -> Result<ArclengthStatus> {
    let quad = edge_points(curve, i)?;
    let circle = circle_through_edge_points(&quad, curve.is_planar(), CIRCLE_FIT_TOL)?;
    let CircleOrLine::Circle(c) = circle else {
        return Ok(ArclengthStatus::Flat);
    };
    let (Some(p_bc), Some(p_da)) = (quad.p_bc.finite(), quad.p_da.finite()) else {
        return Ok(ArclengthStatus::Flat);
    };
    Ok(if (p_bc + p_da - c.center * 2.0).norm() <= tol * c.radius {
        ArclengthStatus::Arclength
    } else {
        ArclengthStatus::NotArclength
    })
}

/// All invariants at edge `i`. Quantities that are undefined at this edge
/// (frame on a line, torsion on a straight piece, κ′ on planar pieces) are
/// `None`; singular configurations are errors.
pub fn analyze_edge(curve: &DiscreteCurve, i: usize) -> Result<EdgeAnalysis> {
    let s = curve.stencil(i)?;
    let quad = quad_of(curve, s)?;
    let circle = circle_through_edge_points(&quad, curve.is_planar(), CIRCLE_FIT_TOL)?;
    let curvature = circle.curvature();
    let frame = match frame_of(&circle, &quad, s[2] - s[1]) {
        Ok(f) => Some(f),
        Err(GeomError::FlatFrame { .. }) => None,
        Err(e) => return Err(e),
    };
    let torsion = match &frame {
        Some(f) => Some(torsion_of(&s, curvature, f)?),
        None => None,
    };
    let osculating_sphere = match circumsphere(s[0], s[1], s[2], s[3]) {
        Ok(sphere) => Some(sphere),
        Err(GeomError::Collinear { .. }) => None,
        Err(e) => return Err(e),
    };
    let kappa_prime = match (&frame, torsion, &osculating_sphere) {
        (Some(f), Some(t), Some(sphere)) if !curve.is_planar() => {
            kappa_prime_of(&circle, sphere, f, curvature, t).ok()
        }
        _ => None,
    };
    Ok(EdgeAnalysis {
        edge: i,
        edge_points: quad,
        circle,
        curvature,
        frame,
        torsion,
        osculating_sphere,
        kappa_prime,
    })
}
