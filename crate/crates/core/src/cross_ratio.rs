//! Complex and quaternionic cross-ratios and the circle/sphere geometry they
//! encode.

use serde::Serialize;

use crate::{Complex, Extended, GeomError, Quaternion, Result, Vec3};

/// Relative tolerance `|im(cr)| ≤ CONCYCLIC_TOL · |cr|` for four points to be
/// treated as concyclic.
pub const CONCYCLIC_TOL: f64 = 1e-9;

/// Relative cancellation below which a denominator is treated as zero and the
/// result is the point at infinity.
pub const INFINITY_TOL: f64 = 1e-13;

/// A quaternion-valued cross-ratio. Complex cross-ratios use the embedding
/// `x + iy ↦ [x, (y, 0, 0)]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossRatio(pub Quaternion);

impl CrossRatio {
    pub fn value(&self) -> Quaternion {
        self.0
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> Vec3 {
        self.0.im
    }

    /// Real cross-ratio, i.e. the four points lie on a common circle (or line).
    pub fn is_concyclic(&self) -> bool {
        self.0.im.norm() <= CONCYCLIC_TOL * self.0.norm()
    }
}

impl From<Complex> for CrossRatio {
    fn from(z: Complex) -> Self {
        CrossRatio(Quaternion::from_complex(z))
    }
}

/// `cr(a, b, c, d) = (a − b)(c − d) / ((b − c)(d − a))`.
pub fn cross_ratio_complex(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Complex> {
    let den = (b - c) * (d - a);
    if den == Complex::new(0.0, 0.0) {
        return Err(GeomError::DegenerateCrossRatio);
    }
    Ok((a - b) * (c - d) / den)
}

/// `cr(a, b, c, d) = (a − b)(b − c)⁻¹(c − d)(d − a)⁻¹`, multiplied strictly
/// left to right.
pub fn cross_ratio_quat(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<CrossRatio> {
    let p = Quaternion::from_point;
    let bc_inv = p(b - c).inverse().map_err(|_| GeomError::DegenerateCrossRatio)?;
    let da_inv = p(d - a).inverse().map_err(|_| GeomError::DegenerateCrossRatio)?;
    Ok(CrossRatio(p(a - b) * bc_inv * p(c - d) * da_inv))
}

/// Corner tangent `t[a, b, c] = (a − b)⁻¹ + (b − c)⁻¹`.
///
/// Placed at `a`, `t[c, a, b]` is in oriented tangential contact with the
/// circumcircle of `a, b, c`. Equals `(a − b)⁻¹(a − c)(b − c)⁻¹` and scales
/// like `1/length`.
pub fn corner_tangent(a: Vec3, b: Vec3, c: Vec3) -> Result<Vec3> {
    let p = Quaternion::from_point;
    let ab = p(a - b).inverse().map_err(|_| GeomError::CoincidentPoints)?;
    let bc = p(b - c).inverse().map_err(|_| GeomError::CoincidentPoints)?;
    Ok((ab + bc).im)
}

/// Normal of the circumsphere (or plane) of `a, b, c, d` at `a`: the
/// imaginary part of `cr(a, b, c, d)`, parallel to `m − a` for a proper sphere
/// with center `m`.
pub fn circumsphere_normal_at_a(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<Vec3> {
    let cr = cross_ratio_quat(a, b, c, d)?;
    if cr.is_concyclic() {
        return Err(GeomError::Concyclic);
    }
    Ok(cr.im())
}

/// Parametrization of the circumsphere of four non-concyclic points: the
/// unique `f` with `cr(a, b, c, f) = [λr, μv]` where `[r, v] = cr(a, b, c, d)`.
///
/// `(1, 1)` reproduces `d`. Parameter pairs that send `f` to infinity return
/// [`Extended::Infinity`].
pub fn sphere_point(a: Vec3, b: Vec3, c: Vec3, d: Vec3, lambda: f64, mu: f64) -> Result<Extended<Vec3>> {
    let cr = cross_ratio_quat(a, b, c, d)?;
    if cr.is_concyclic() {
        return Err(GeomError::Concyclic);
    }
    // cr(a, b, c, x) = t1 · t[x, a, c] with t1 = t[c, a, b]⁻¹.
    let t1 = Quaternion::from_point(corner_tangent(c, a, b)?).inverse()?.im;
    let t2 = corner_tangent(d, a, c)?;
    let alpha = (lambda - mu) * t1.dot(&t2) / t1.norm_squared();
    let t3 = t1 * alpha + t2 * mu;
    let ac_inv = Quaternion::from_point(a - c).inverse()?.im;
    let w = t3 - ac_inv;
    if w.norm() <= INFINITY_TOL * (t3.norm() + ac_inv.norm()) {
        return Ok(Extended::Infinity);
    }
    Ok(Extended::Finite(Quaternion::from_point(w).inverse()?.im + a))
}

/// Reflection in the sphere with the given center and radius,
/// `x ↦ c + r²(x − c)/‖x − c‖²`. The center and infinity are swapped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub center: Vec3,
    pub radius: f64,
}

impl Inversion {
    pub fn new(center: Vec3, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn apply(&self, x: Vec3) -> Extended<Vec3> {
        let d = x - self.center;
        let n2 = d.norm_squared();
        if n2 == 0.0 {
            return Extended::Infinity;
        }
        Extended::Finite(self.center + d * (self.radius * self.radius / n2))
    }

    pub fn apply_extended(&self, x: Extended<Vec3>) -> Extended<Vec3> {
        match x {
            Extended::Finite(p) => self.apply(p),
            Extended::Infinity => Extended::Finite(self.center),
        }
    }

    /// Inversion in a circle of the plane.
    pub fn apply_complex(&self, z: Complex) -> Extended<Complex> {
        self.apply(crate::plane_to_space(z))
            .map(|v| crate::space_to_plane(&v))
    }
}
