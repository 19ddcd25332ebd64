use thiserror::Error;

use crate::insertion::EdgePointId;
use crate::{Quaternion, Vec3};

pub type Result<T, E = GeomError> = std::result::Result<T, E>;

/// Domain errors raised by the geometric kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("zero quaternion has no inverse")]
    ZeroInverse,

    #[error("sqrt of negative real quaternion is not unique (value {0})")]
    NegativeRealSqrt(f64),

    #[error("degenerate cross-ratio: a denominator factor vanishes")]
    DegenerateCrossRatio,

    #[error("points are not pairwise distinct")]
    CoincidentPoints,

    #[error("vertices {first} and {second} coincide within a four-vertex window")]
    RepeatedVertex { first: usize, second: usize },

    #[error("a curve needs at least 4 vertices, got {count}")]
    TooFewVertices { count: usize },

    #[error("points are concyclic: no unique circumsphere normal")]
    Concyclic,

    #[error("result is the point at infinity")]
    PointAtInfinity,

    /// Concyclic quadruple with negative real cross-ratio. These are the
    /// discrete singularities of a polygon; the insertion rule is undefined.
    #[error("zigzag quadruple (cross-ratio {cross_ratio}){}", edge_point_suffix(.edge_point))]
    Zigzag {
        cross_ratio: Quaternion,
        edge_point: Option<EdgePointId>,
    },

    #[error("degenerate circumcircle: points are collinear")]
    Collinear { point: Vec3, direction: Vec3 },

    #[error("edge {edge} has insufficient neighborhood (needs vertices i-1 ..= i+2)")]
    InsufficientNeighborhood { edge: usize },

    #[error("edge points are not concyclic (relative residual {residual:e})")]
    InconsistentCircle { residual: f64 },

    #[error("flat frame: the curvature circle is a straight line")]
    FlatFrame { tangent: Vec3 },

    #[error("torsion undefined on straight segment")]
    TorsionUndefined,

    #[error("kappa' undefined (planar or straight)")]
    KappaPrimeUndefined,

    #[error("singular parametrization at t = {t}")]
    SingularParametrization { t: f64 },

    #[error("vanishing curvature at t = {t}")]
    VanishingCurvature { t: f64 },

    #[error("vanishing second derivative (inflection) at t = {t}")]
    Inflection { t: f64 },

    #[error("operation requires a planar curve")]
    NotPlanar,

    #[error("curve has vanishing torsion: osculating sphere degenerates to a plane")]
    PlaneVariant,
}

fn edge_point_suffix(id: &Option<EdgePointId>) -> String {
    match id {
        Some(id) => format!(" while inserting {id}"),
        None => String::new(),
    }
}
