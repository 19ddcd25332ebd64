//! The Möbius-equivariant point-insertion rule and the four edge points that
//! span the discrete curvature circle.
//!
//! For four points `a, b, c, d` the inserted point `f(a, b, c, d)` solves
//! `cr(c, a, b, f) = −√cr(c, a, b, d)`. In the plane this is
//!
//! ```text
//! f = (c(b − a)√q + b(c − a)) / ((b − a)√q + (c − a)),   q = cr(c, a, b, d)
//! ```
//!
//! and in space the same expression with the quaternion factors kept in
//! order, `f = (X√q + 1)⁻¹ (X√q c + b)` with `X = (b − a)(c − a)⁻¹`.
//!
//! Both forms are evaluated after translating `a` to the origin. The rule is
//! translation equivariant, and working with differences keeps the rounding
//! independent of where the quadruple sits.

use std::fmt;

use serde::Serialize;

use crate::cross_ratio::{cross_ratio_complex, cross_ratio_quat, INFINITY_TOL};
use crate::{Complex, Extended, GeomError, Quaternion, Result, Vec3};

/// Which of the four cyclic insertions an edge point comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum EdgePointId {
    Ab,
    Bc,
    Cd,
    Da,
}

impl fmt::Display for EdgePointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EdgePointId::Ab => "p_ab",
            EdgePointId::Bc => "p_bc",
            EdgePointId::Cd => "p_cd",
            EdgePointId::Da => "p_da",
        })
    }
}

/// Points that support the insertion rule: plane points (complex numbers) and
/// space points (imaginary quaternions).
pub trait InsertionPoint: Copy {
    fn insert(a: Self, b: Self, c: Self, d: Self) -> Result<Extended<Self>>;
}

impl InsertionPoint for Complex {
    fn insert(a: Self, b: Self, c: Self, d: Self) -> Result<Extended<Self>> {
        insert_complex(a, b, c, d)
    }
}

impl InsertionPoint for Vec3 {
    fn insert(a: Self, b: Self, c: Self, d: Self) -> Result<Extended<Self>> {
        insert_quat(a, b, c, d)
    }
}

fn zigzag(q: Quaternion) -> impl FnOnce(GeomError) -> GeomError {
    move |e| match e {
        GeomError::NegativeRealSqrt(_) => GeomError::Zigzag {
            cross_ratio: q,
            edge_point: None,
        },
        other => other,
    }
}

fn pairwise_distinct<P: PartialEq>(p: [&P; 4]) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]))
}

/// Planar insertion rule. Zigzag quadruples (negative real `cr(c, a, b, d)`)
/// are rejected; a vanishing denominator yields the point at infinity.
pub fn insert_complex(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Extended<Complex>> {
    if !pairwise_distinct([&a, &b, &c, &d]) {
        return Err(GeomError::CoincidentPoints);
    }
    let q = cross_ratio_complex(c, a, b, d)?;
    let qq = Quaternion::from_complex(q);
    let s = qq.principal_sqrt().map_err(zigzag(qq))?.to_complex();
    let (ba, ca) = (b - a, c - a);
    let den = ba * s + ca;
    if den.norm() <= INFINITY_TOL * (ba.norm() * s.norm() + ca.norm()) {
        return Ok(Extended::Infinity);
    }
    Ok(Extended::Finite(a + ba * ca * (s + 1.0) / den))
}

/// Quaternionic insertion rule for points of space. The result lies on the
/// circumsphere of `a, b, c, d`.
pub fn insert_quat(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<Extended<Vec3>> {
    Ok(insert_quat_full(a, b, c, d)?.map(|f| f.im))
}

/// The inserted point as a full quaternion. Its real part vanishes up to
/// rounding.
fn insert_quat_full(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<Extended<Quaternion>> {
    if !pairwise_distinct([&a, &b, &c, &d]) {
        return Err(GeomError::CoincidentPoints);
    }
    let q = cross_ratio_quat(c, a, b, d)?.value();
    let s = q.principal_sqrt().map_err(zigzag(q))?;
    let p = Quaternion::from_point;
    let (ba, ca) = (p(b - a), p(c - a));
    let xs = ba * ca.inverse()? * s;
    let left = xs + Quaternion::ONE;
    if left.norm() <= INFINITY_TOL * (xs.norm() + 1.0) {
        return Ok(Extended::Infinity);
    }
    let f = left.inverse()? * (xs * ca + ba);
    Ok(Extended::Finite(f + p(a)))
}

/// The four edge points of a quadruple, `p_ab = f(d, a, b, c)`,
/// `p_bc = f(a, b, c, d)`, `p_cd = f(b, c, d, a)`, `p_da = f(c, d, a, b)`.
///
/// When all four are finite they are concyclic with cross-ratio `−1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgePointQuad<P> {
    pub p_ab: Extended<P>,
    pub p_bc: Extended<P>,
    pub p_cd: Extended<P>,
    pub p_da: Extended<P>,
}

impl<P: Copy> EdgePointQuad<P> {
    pub fn points(&self) -> [Extended<P>; 4] {
        [self.p_ab, self.p_bc, self.p_cd, self.p_da]
    }

    pub fn get(&self, id: EdgePointId) -> Extended<P> {
        match id {
            EdgePointId::Ab => self.p_ab,
            EdgePointId::Bc => self.p_bc,
            EdgePointId::Cd => self.p_cd,
            EdgePointId::Da => self.p_da,
        }
    }

    pub fn map<Q>(&self, f: impl Fn(P) -> Q) -> EdgePointQuad<Q> {
        EdgePointQuad {
            p_ab: self.p_ab.map(&f),
            p_bc: self.p_bc.map(&f),
            p_cd: self.p_cd.map(&f),
            p_da: self.p_da.map(&f),
        }
    }

    /// All four points, if none is at infinity.
    pub fn all_finite(&self) -> Option<[P; 4]> {
        Some([
            self.p_ab.finite()?,
            self.p_bc.finite()?,
            self.p_cd.finite()?,
            self.p_da.finite()?,
        ])
    }
}

/// Computes the four cyclic insertions. A failing insertion is reported with
/// the edge point it was meant to produce.
pub fn edge_point_quad<P: InsertionPoint>(a: P, b: P, c: P, d: P) -> Result<EdgePointQuad<P>> {
    let tagged = |id: EdgePointId, r: Result<Extended<P>>| {
        r.map_err(|e| match e {
            GeomError::Zigzag { cross_ratio, .. } => GeomError::Zigzag {
                cross_ratio,
                edge_point: Some(id),
            },
            other => other,
        })
    };
    Ok(EdgePointQuad {
        p_ab: tagged(EdgePointId::Ab, P::insert(d, a, b, c))?,
        p_bc: tagged(EdgePointId::Bc, P::insert(a, b, c, d))?,
        p_cd: tagged(EdgePointId::Cd, P::insert(b, c, d, a))?,
        p_da: tagged(EdgePointId::Da, P::insert(c, d, a, b))?,
    })
}
