//! Discrete (polygonal) curves in the plane or in space, and the invariants
//! defined at their edges.

mod analysis;
mod circle;
mod io;

pub use analysis::{
    analyze_edge, curvature_circle, discrete_curvature, discrete_kappa_prime, discrete_torsion,
    edge_points, frenet_frame, is_arclength_edge, osculating_sphere, ArclengthStatus,
    EdgeAnalysis, FrenetFrame, CIRCLE_FIT_TOL,
};
pub use circle::{
    circle_through, circle_through_edge_points, circumcenter_2d, circumcenter_3d, circumsphere,
    Circle, CircleOrLine, Line, SphereOrPlane, COLLINEAR_TOL,
};
pub use io::ParseCurveError;

use serde::Serialize;

use crate::{plane_to_space, Complex, GeomError, Result, Vec3};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    /// Vertices live in the plane (stored with `z = 0`); the complex
    /// insertion rule is used.
    Planar,
    /// Vertices live in space; the quaternionic insertion rule is used.
    Spatial,
}

/// An ordered vertex list, open or closed.
///
/// Any four consecutive vertices are pairwise distinct; this is checked on
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    vertices: Vec<Vec3>,
    dimension: Dimension,
    closed: bool,
}

impl DiscreteCurve {
    pub fn planar(points: impl IntoIterator<Item = Complex>, closed: bool) -> Result<Self> {
        let vertices = points.into_iter().map(plane_to_space).collect();
        Self::new(vertices, Dimension::Planar, closed)
    }

    pub fn spatial(points: impl IntoIterator<Item = Vec3>, closed: bool) -> Result<Self> {
        Self::new(points.into_iter().collect(), Dimension::Spatial, closed)
    }

    fn new(vertices: Vec<Vec3>, dimension: Dimension, closed: bool) -> Result<Self> {
        let curve = Self {
            vertices,
            dimension,
            closed,
        };
        curve.validate()?;
        Ok(curve)
    }

    fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n < 4 {
            return Err(GeomError::TooFewVertices { count: n });
        }
        let window_pairs = |i: usize| (1..4).map(move |k| (i, i + k));
        let pairs: Vec<(usize, usize)> = if self.closed {
            (0..n)
                .flat_map(window_pairs)
                .map(|(i, j)| (i, j % n))
                .collect()
        } else {
            (0..n).flat_map(window_pairs).filter(|&(_, j)| j < n).collect()
        };
        for (i, j) in pairs {
            if self.vertices[i] == self.vertices[j] {
                let (first, second) = (i.min(j), i.max(j));
                return Err(GeomError::RepeatedVertex { first, second });
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    pub fn is_planar(&self) -> bool {
        self.dimension == Dimension::Planar
    }

    /// Edges `(i, i+1)` whose four-vertex neighborhood `i−1 ..= i+2` exists.
    /// For open curves the two boundary edges are skipped.
    pub fn interior_edges(&self) -> std::ops::Range<usize> {
        let n = self.vertices.len();
        if self.closed {
            0..n
        } else {
            1..n.saturating_sub(2)
        }
    }

    /// The vertices `γᵢ₋₁, γᵢ, γᵢ₊₁, γᵢ₊₂` around edge `i`.
    pub fn stencil(&self, edge: usize) -> Result<[Vec3; 4]> {
        let n = self.vertices.len();
        let idx: [usize; 4] = if self.closed {
            if edge >= n {
                return Err(GeomError::InsufficientNeighborhood { edge });
            }
            [(edge + n - 1) % n, edge, (edge + 1) % n, (edge + 2) % n]
        } else {
            if edge == 0 || edge + 2 >= n {
                return Err(GeomError::InsufficientNeighborhood { edge });
            }
            [edge - 1, edge, edge + 1, edge + 2]
        };
        Ok(idx.map(|i| self.vertices[i]))
    }
}
