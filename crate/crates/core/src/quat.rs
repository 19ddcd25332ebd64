//! Hamilton quaternions written as `[r, v]` with real part `r` and imaginary
//! 3-vector `v`.
//!
//! Points of space are the imaginary quaternions `[0, v]`. The complex numbers
//! embed as `x + iy ↦ [x, (y, 0, 0)]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::{Complex, GeomError, Result, Vec3};

/// `|im(q)| ≤ NEG_REAL_TOL · |q|` together with `re(q) < 0` counts as a
/// negative real number for [`Quaternion::principal_sqrt`].
pub const NEG_REAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quaternion {
    pub re: f64,
    pub im: Vec3,
}

/// Polar form `q = norm · [cos φ, axis · sin φ]` with unit `axis` and
/// `φ ∈ [0, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub norm: f64,
    pub angle: f64,
    pub axis: Vec3,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion {
        re: 0.0,
        im: Vec3::new(0.0, 0.0, 0.0),
    };
    pub const ONE: Quaternion = Quaternion {
        re: 1.0,
        im: Vec3::new(0.0, 0.0, 0.0),
    };

    pub const fn new(re: f64, im: Vec3) -> Self {
        Self { re, im }
    }

    pub fn real(re: f64) -> Self {
        Self::new(re, Vec3::zeros())
    }

    /// The imaginary quaternion `[0, v]` representing a point of space.
    pub fn from_point(v: Vec3) -> Self {
        Self::new(0.0, v)
    }

    pub fn from_complex(z: Complex) -> Self {
        Self::new(z.re, Vec3::new(z.im, 0.0, 0.0))
    }

    /// Inverse of [`Quaternion::from_complex`]; the `j` and `k` components
    /// are dropped.
    pub fn to_complex(&self) -> Complex {
        Complex::new(self.re, self.im.x)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_squared(&self) -> f64 {
        self.re * self.re + self.im.norm_squared()
    }

    pub fn norm(&self) -> f64 {
        self.re.hypot(self.im.norm())
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == Vec3::zeros()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.re * s, self.im * s)
    }

    /// `q⁻¹ = q̄ / |q|²`.
    pub fn inverse(&self) -> Result<Self> {
        let n2 = self.norm_squared();
        if n2 == 0.0 || !n2.is_finite() {
            return Err(GeomError::ZeroInverse);
        }
        Ok(self.conj().scale(1.0 / n2))
    }

    /// Polar decomposition. Returns `None` for the zero quaternion, whose
    /// angle and axis are undefined. For real quaternions the axis is `(1,0,0)`.
    pub fn polar(&self) -> Option<Polar> {
        let norm = self.norm();
        if norm == 0.0 {
            return None;
        }
        let im_len = self.im.norm();
        let angle = im_len.atan2(self.re);
        let axis = if im_len > 0.0 {
            self.im / im_len
        } else {
            Vec3::x()
        };
        Some(Polar { norm, angle, axis })
    }

    /// True if `re < 0` and the imaginary part is negligible relative to `|q|`.
    pub fn is_negative_real(&self) -> bool {
        self.re < 0.0 && self.im.norm() <= NEG_REAL_TOL * self.norm()
    }

    /// Principal square root `√|q| [cos φ/2, v sin φ/2]`.
    ///
    /// The imaginary part of the result is parallel to and has the same
    /// orientation as `im(q)`. Negative real input has no distinguished root
    /// and is rejected. `√0 = 0`.
    pub fn principal_sqrt(&self) -> Result<Self> {
        if self.is_negative_real() {
            return Err(GeomError::NegativeRealSqrt(self.re));
        }
        let Some(p) = self.polar() else {
            return Ok(Self::ZERO);
        };
        let half = 0.5 * p.angle;
        Ok(Self::new(half.cos(), p.axis * half.sin()).scale(p.norm.sqrt()))
    }
}

impl Polar {
    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::new(self.angle.cos(), self.axis * self.angle.sin()).scale(self.norm)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.re, -self.im)
    }
}

/// Hamilton product `[r, v]·[s, w] = [rs − ⟨v, w⟩, rw + sv + v × w]`.
impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.re * rhs.re - self.im.dot(&rhs.im),
            rhs.im * self.re + self.im * rhs.re + self.im.cross(&rhs.im),
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: f64) -> Quaternion {
        self.scale(rhs)
    }
}

impl From<Complex> for Quaternion {
    fn from(z: Complex) -> Self {
        Quaternion::from_complex(z)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, ({}, {}, {})]",
            self.re, self.im.x, self.im.y, self.im.z
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(re: f64, x: f64, y: f64, z: f64) -> Quaternion {
        Quaternion::new(re, Vec3::new(x, y, z))
    }

    #[test]
    fn basis_products() {
        assert_eq!(q(0., 1., 0., 0.) * q(0., 0., 1., 0.), q(0., 0., 0., 1.));
        assert_eq!(q(0., 0., 1., 0.) * q(0., 1., 0., 0.), q(0., 0., 0., -1.));
        assert_eq!(q(0., 1., 0., 0.) * q(0., 1., 0., 0.), q(-1., 0., 0., 0.));
        let p = q(0.3, -1.2, 2.5, 0.7);
        assert_eq!(Quaternion::ONE * p, p);
        assert_eq!(p * Quaternion::ONE, p);
    }

    #[test]
    fn inverse_values() {
        assert_eq!(q(2., 0., 0., 0.).inverse().unwrap(), q(0.5, 0., 0., 0.));
        let v = Vec3::new(1.0, -2.0, 3.0);
        let inv = Quaternion::from_point(v).inverse().unwrap();
        assert_eq!(inv, Quaternion::from_point(-v / v.norm_squared()));
        assert_eq!(Quaternion::ZERO.inverse(), Err(GeomError::ZeroInverse));
    }

    #[test]
    fn sqrt_values() {
        assert_eq!(q(4., 0., 0., 0.).principal_sqrt().unwrap(), q(2., 0., 0., 0.));
        let r = q(0., 2., 0., 0.).principal_sqrt().unwrap();
        assert!((r - q(1., 1., 0., 0.)).norm() < 1e-15);
        assert!((r * r - q(0., 2., 0., 0.)).norm() < 1e-15);
        assert!(matches!(
            q(-1., 0., 0., 0.).principal_sqrt(),
            Err(GeomError::NegativeRealSqrt(_))
        ));
        assert_eq!(Quaternion::ZERO.principal_sqrt().unwrap(), Quaternion::ZERO);
    }

    #[test]
    fn negative_real_gate_is_relative() {
        // 1e-13 relative imaginary part: still negative real.
        assert!(q(-5., 5e-13, 0., 0.).is_negative_real());
        // 1e-11 relative: a genuine (if nearly real) quaternion.
        assert!(!q(-5., 5e-11, 0., 0.).is_negative_real());
        assert!(!q(5., 0., 0., 0.).is_negative_real());
    }

    #[test]
    fn sqrt_near_negative_axis_keeps_orientation() {
        let a = q(-1., 0., 1e-6, 0.).principal_sqrt().unwrap();
        let b = q(-1., 0., -1e-6, 0.).principal_sqrt().unwrap();
        assert!(a.im.y > 0.99 && b.im.y < -0.99);
        assert!(a.re > 0.0 && a.re < 1e-6);
    }

    #[test]
    fn sqrt_matches_principal_complex_root() {
        for &(x, y) in &[(3.0, 4.0), (-3.0, 4.0), (-3.0, -4.0), (0.5, -1e-3), (2.0, 0.0)] {
            let z = Complex::new(x, y);
            let r = Quaternion::from_complex(z).principal_sqrt().unwrap().to_complex();
            assert!((r - z.sqrt()).norm() < 1e-15, "{z}");
        }
    }

    #[test]
    fn polar_of_real_and_zero() {
        assert!(Quaternion::ZERO.polar().is_none());
        let p = q(-2., 0., 0., 0.).polar().unwrap();
        assert_eq!(p.norm, 2.0);
        assert_eq!(p.angle, std::f64::consts::PI);
    }
}
