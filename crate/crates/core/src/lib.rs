//! Discrete curvature, Frenet frames and torsion for polygonal curves, built
//! from complex and quaternionic cross-ratios.
//!
//! The curvature circle at an edge `γᵢγᵢ₊₁` is the circle through four points
//! obtained from `γᵢ₋₁ … γᵢ₊₂` by a Möbius-equivariant insertion rule. Its
//! inverse radius is the discrete curvature, its tangent and normal at the
//! contact point `p_bc` give the discrete Frenet frame, and the imaginary part
//! of the vertex cross-ratio projected onto that normal gives the discrete
//! torsion.
//!
//! Module map:
//!
//! - [`quat`]: quaternion arithmetic and the principal square root.
//! - [`cross_ratio`]: cross-ratios, corner tangents, circumsphere normals.
//! - [`insertion`]: the point-insertion rule and the four edge points.
//! - [`curve`]: discrete curves and per-edge invariants.
//! - [`smooth`]: analytic reference curves and their differential invariants.
//! - [`convergence`]: the sampling/regression harness and report writers.

pub mod convergence;
pub mod cross_ratio;
pub mod curve;
pub mod error;
pub mod insertion;
pub mod quat;
pub mod smooth;

pub use error::{GeomError, Result};
pub use quat::Quaternion;

/// A point (or vector) in three-dimensional space.
pub type Vec3 = nalgebra::Vector3<f64>;

/// A point of the plane, identified with a complex number.
pub type Complex = num_complex::Complex64;

/// A point that may be the point at infinity of the Möbius-compactified space.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extended<P> {
    Finite(P),
    Infinity,
}

impl<P: Copy> Extended<P> {
    pub fn finite(&self) -> Option<P> {
        match *self {
            Extended::Finite(p) => Some(p),
            Extended::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinity)
    }

    pub fn map<Q>(self, f: impl FnOnce(P) -> Q) -> Extended<Q> {
        match self {
            Extended::Finite(p) => Extended::Finite(f(p)),
            Extended::Infinity => Extended::Infinity,
        }
    }
}

/// Embeds a plane point into the `z = 0` plane of space.
pub fn plane_to_space(z: Complex) -> Vec3 {
    Vec3::new(z.re, z.im, 0.0)
}

/// Projects a space point onto the `xy` plane.
pub fn space_to_plane(v: &Vec3) -> Complex {
    Complex::new(v.x, v.y)
}
