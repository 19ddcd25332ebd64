//! Circles, lines and spheres through given points.

use serde::Serialize;

use crate::insertion::EdgePointQuad;
use crate::{plane_to_space, Complex, Extended, GeomError, Result, Vec3};

/// Three points are collinear when the sine of the angle they span at the
/// third point is below this.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Four points are coplanar when the normalized triple product is below this.
const COPLANAR_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Circle {
    pub center: Vec3,
    pub radius: f64,
    /// Unit normal of the supporting plane; `(0, 0, 1)` for planar curves.
    pub normal: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Line {
    pub point: Vec3,
    /// Unit direction.
    pub direction: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CircleOrLine {
    Circle(Circle),
    Line(Line),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereOrPlane {
    Sphere { center: Vec3, radius: f64 },
    Plane { point: Vec3, normal: Vec3 },
}

impl Circle {
    /// Euclidean distance from `p` to the circle.
    pub fn distance_to(&self, p: Vec3) -> f64 {
        let d = p - self.center;
        let h = d.dot(&self.normal);
        let rho = (d - self.normal * h).norm();
        (rho - self.radius).hypot(h)
    }

    /// The point at angle `theta` in some fixed orthonormal frame of the
    /// circle's plane.
    pub fn point_at(&self, theta: f64) -> Vec3 {
        let (e1, e2) = plane_basis(&self.normal);
        self.center + (e1 * theta.cos() + e2 * theta.sin()) * self.radius
    }
}

impl Line {
    pub fn distance_to(&self, p: Vec3) -> f64 {
        (p - self.point).cross(&self.direction).norm()
    }
}

impl CircleOrLine {
    pub fn curvature(&self) -> f64 {
        match self {
            CircleOrLine::Circle(c) => 1.0 / c.radius,
            CircleOrLine::Line(_) => 0.0,
        }
    }

    pub fn distance_to(&self, p: Vec3) -> f64 {
        match self {
            CircleOrLine::Circle(c) => c.distance_to(p),
            CircleOrLine::Line(l) => l.distance_to(p),
        }
    }
}

fn plane_basis(n: &Vec3) -> (Vec3, Vec3) {
    let helper = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
    let e1 = n.cross(&helper).normalize();
    (e1, n.cross(&e1))
}

fn collinear_signal(a: Vec3, b: Vec3, c: Vec3) -> GeomError {
    let chords = [b - a, c - a, c - b];
    let longest = chords
        .iter()
        .max_by(|x, y| x.norm().total_cmp(&y.norm()))
        .copied()
        .unwrap_or_else(Vec3::x);
    GeomError::Collinear {
        point: a,
        direction: longest.try_normalize(0.0).unwrap_or_else(Vec3::x),
    }
}

/// Circumcenter of a plane triangle, evaluated with `c` as origin:
/// `(a|b|² − b|a|²) / (a b̄ − ā b)`.
pub fn circumcenter_2d(a: Complex, b: Complex, c: Complex) -> Result<Complex> {
    let (a1, b1) = (a - c, b - c);
    let den = a1 * b1.conj() - a1.conj() * b1;
    if den.norm() <= 2.0 * COLLINEAR_TOL * a1.norm() * b1.norm() {
        return Err(collinear_signal(plane_to_space(a), plane_to_space(b), plane_to_space(c)));
    }
    Ok(c + (a1 * b1.norm_sqr() - b1 * a1.norm_sqr()) / den)
}

/// Circumcenter of a triangle in space,
/// `((‖a−c‖²(b−c) − ‖b−c‖²(a−c)) × ((a−c) × (b−c))) / (2‖(a−c) × (b−c)‖²) + c`.
pub fn circumcenter_3d(a: Vec3, b: Vec3, c: Vec3) -> Result<Vec3> {
    let (u, v) = (a - c, b - c);
    let w = u.cross(&v);
    let w2 = w.norm_squared();
    if w2.sqrt() <= COLLINEAR_TOL * u.norm() * v.norm() {
        return Err(collinear_signal(a, b, c));
    }
    Ok((v * u.norm_squared() - u * v.norm_squared()).cross(&w) / (2.0 * w2) + c)
}

/// The circle through three points of space.
pub fn circle_through(a: Vec3, b: Vec3, c: Vec3) -> Result<Circle> {
    let center = circumcenter_3d(a, b, c)?;
    let normal = (a - c).cross(&(b - c)).normalize();
    let radius = [a, b, c].iter().map(|p| (p - center).norm()).sum::<f64>() / 3.0;
    Ok(Circle {
        center,
        radius,
        normal,
    })
}

fn circle_through_planar(a: Vec3, b: Vec3, c: Vec3) -> Result<Circle> {
    let z = |v: Vec3| Complex::new(v.x, v.y);
    let center = plane_to_space(circumcenter_2d(z(a), z(b), z(c))?);
    let radius = [a, b, c].iter().map(|p| (p - center).norm()).sum::<f64>() / 3.0;
    Ok(Circle {
        center,
        radius,
        normal: Vec3::z(),
    })
}

fn line_through(points: &[Vec3]) -> Line {
    let mut best = (0.0, points[0], points[0]);
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = (q - p).norm();
            if d > best.0 {
                best = (d, *p, *q);
            }
        }
    }
    Line {
        point: best.1,
        direction: (best.2 - best.1).normalize(),
    }
}

/// The circle (or line) through the four edge points.
///
/// Three of the finite points with the largest pairwise-distance product
/// define the circle; the remaining point must lie on it within `tol`
/// relative to the radius (or to the spread of the points, for a line).
/// One point at infinity, or three collinear finite points, give a line.
pub fn circle_through_edge_points(quad: &EdgePointQuad<Vec3>, planar: bool, tol: f64) -> Result<CircleOrLine> {
    let finite: Vec<Vec3> = quad.points().iter().filter_map(Extended::finite).collect();
    if finite.len() < 3 {
        return Err(GeomError::PointAtInfinity);
    }
    let spread = finite
        .iter()
        .flat_map(|p| finite.iter().map(move |q| (p - q).norm()))
        .fold(0.0, f64::max);

    let as_line = |points: &[Vec3]| -> Result<CircleOrLine> {
        let line = line_through(points);
        let residual = points.iter().map(|p| line.distance_to(*p)).fold(0.0, f64::max) / spread;
        if residual > tol {
            return Err(GeomError::InconsistentCircle { residual });
        }
        Ok(CircleOrLine::Line(line))
    };

    if finite.len() == 3 {
        return as_line(&finite);
    }

    let triples = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 3, 1], [1, 2, 3, 0]];
    let conditioning = |t: &[usize; 4]| {
        let [i, j, k, _] = *t;
        (finite[i] - finite[j]).norm() * (finite[j] - finite[k]).norm() * (finite[k] - finite[i]).norm()
    };
    let best = triples
        .iter()
        .max_by(|x, y| conditioning(x).total_cmp(&conditioning(y)))
        .expect("non-empty");
    let [i, j, k, rest] = *best;
    let fitted = if planar {
        circle_through_planar(finite[i], finite[j], finite[k])
    } else {
        circle_through(finite[i], finite[j], finite[k])
    };
    match fitted {
        Ok(circle) => {
            let residual = circle.distance_to(finite[rest]) / circle.radius;
            if residual > tol {
                return Err(GeomError::InconsistentCircle { residual });
            }
            Ok(CircleOrLine::Circle(circle))
        }
        Err(GeomError::Collinear { .. }) => as_line(&finite),
        Err(e) => Err(e),
    }
}

/// Sphere through four points, or their common plane when they are coplanar.
/// Four collinear points give a `Collinear` error.
pub fn circumsphere(a: Vec3, b: Vec3, c: Vec3, d: Vec3) -> Result<SphereOrPlane> {
    let (u, v, w) = (b - a, c - a, d - a);
    let det = u.dot(&v.cross(&w));
    let scale = u.norm() * v.norm() * w.norm();
    if scale == 0.0 {
        return Err(GeomError::CoincidentPoints);
    }
    if det.abs() <= COPLANAR_TOL * scale {
        let n = [u.cross(&v), u.cross(&w), v.cross(&w)]
            .into_iter()
            .max_by(|x, y| x.norm().total_cmp(&y.norm()))
            .expect("non-empty");
        if n.norm() <= COLLINEAR_TOL * scale.cbrt().powi(2) {
            return Err(collinear_signal(a, b, d));
        }
        return Ok(SphereOrPlane::Plane {
            point: a,
            normal: n.normalize(),
        });
    }
    // Center x (relative to a) solves ⟨x, u⟩ = |u|²/2 etc.
    let x = (v.cross(&w) * u.norm_squared() + w.cross(&u) * v.norm_squared() + u.cross(&v) * w.norm_squared())
        / (2.0 * det);
    Ok(SphereOrPlane::Sphere {
        center: a + x,
        radius: x.norm(),
    })
}
