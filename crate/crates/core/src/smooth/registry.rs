//! The seven test curves, plus circles and lines.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{Jet, ParametricCurve};
use crate::curve::Dimension;
use crate::{Complex, Vec3};

/// `n`-th derivative of `sin(k t)`.
fn dsin(k: f64, t: f64, n: u32) -> f64 {
    let (s, c) = (k * t).sin_cos();
    let kn = k.powi(n as i32);
    match n % 4 {
        0 => kn * s,
        1 => kn * c,
        2 => -kn * s,
        _ => -kn * c,
    }
}

/// `n`-th derivative of `cos(k t)`.
fn dcos(k: f64, t: f64, n: u32) -> f64 {
    dsin(k, t, n + 1) / k
}

/// `n`-th derivative of `exp(w t)`.
fn dexp(w: Complex, t: f64, n: u32) -> Complex {
    w.powu(n) * (w * t).exp()
}

fn planar_jet(f: impl Fn(u32) -> Complex) -> Jet {
    let v = |n| {
        let z = f(n);
        Vec3::new(z.re, z.im, 0.0)
    };
    Jet {
        s: v(0),
        d1: v(1),
        d2: v(2),
        d3: v(3),
    }
}

fn spatial_jet(f: impl Fn(u32) -> Complex, z: impl Fn(u32) -> f64) -> Jet {
    let v = |n| {
        let w = f(n);
        Vec3::new(w.re, w.im, z(n))
    };
    Jet {
        s: v(0),
        d1: v(1),
        d2: v(2),
        d3: v(3),
    }
}

const BINOMIAL: [[f64; 4]; 4] = [
    [1.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0],
    [1.0, 3.0, 3.0, 1.0],
];

/// `n`-th derivative of `f g` by the Leibniz rule.
fn leibniz(f: impl Fn(u32) -> f64, g: impl Fn(u32) -> Complex, n: u32) -> Complex {
    (0..=n)
        .map(|k| g(n - k) * (BINOMIAL[n as usize][k as usize] * f(k)))
        .sum()
}

/// The seven curves of the convergence experiment, each on `t ∈ [0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RegistryCurve {
    /// `(6 cos t − 3 cos 6t, 6 sin t − 3 sin 6t)`.
    Epitrochoid,
    /// `e^{0.5 t}(cos t, sin t)`.
    LogSpiral,
    /// `(cos 4t, sin 4t, 0.5 t)`.
    Helix,
    /// `(e^{0.4 t} cos 4t, e^{0.4 t} sin 4t, 4t)`.
    HelicalSpiral,
    /// `((2.5 + sin 20t) cos t, (2.5 + sin 20t) sin t, cos 20t)`.
    Coil,
    /// `(sin t + 2 sin 2t, cos t − 2 cos 2t, −sin 3t)`.
    Trefoil,
    /// `(5(1 + cos 2t), 5 sin 2t, 10 sin t)`, on the sphere of radius 10
    /// about the origin.
    Viviani,
}

impl RegistryCurve {
    pub const ALL: [RegistryCurve; 7] = [
        RegistryCurve::Epitrochoid,
        RegistryCurve::LogSpiral,
        RegistryCurve::Helix,
        RegistryCurve::HelicalSpiral,
        RegistryCurve::Coil,
        RegistryCurve::Trefoil,
        RegistryCurve::Viviani,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RegistryCurve::Epitrochoid => "epitrochoid",
            RegistryCurve::LogSpiral => "logspiral",
            RegistryCurve::Helix => "helix",
            RegistryCurve::HelicalSpiral => "helicalspiral",
            RegistryCurve::Coil => "coil",
            RegistryCurve::Trefoil => "trefoil",
            RegistryCurve::Viviani => "viviani",
        }
    }

    /// Roman-numeral row label, `(i)` through `(vii)`.
    pub fn label(self) -> &'static str {
        match self {
            RegistryCurve::Epitrochoid => "(i)",
            RegistryCurve::LogSpiral => "(ii)",
            RegistryCurve::Helix => "(iii)",
            RegistryCurve::HelicalSpiral => "(iv)",
            RegistryCurve::Coil => "(v)",
            RegistryCurve::Trefoil => "(vi)",
            RegistryCurve::Viviani => "(vii)",
        }
    }
}

impl fmt::Display for RegistryCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown curve {0:?} (expected one of epitrochoid, logspiral, helix, helicalspiral, coil, trefoil, viviani)")]
pub struct UnknownCurve(pub String);

impl FromStr for RegistryCurve {
    type Err = UnknownCurve;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        RegistryCurve::ALL
            .into_iter()
            .find(|c| c.name() == key)
            .ok_or_else(|| UnknownCurve(s.to_string()))
    }
}

impl ParametricCurve for RegistryCurve {
    fn jet(&self, t: f64) -> Jet {
        let i = Complex::i();
        match self {
            RegistryCurve::Epitrochoid => {
                planar_jet(|n| dexp(i, t, n) * 6.0 - dexp(i * 6.0, t, n) * 3.0)
            }
            RegistryCurve::LogSpiral => planar_jet(|n| dexp(Complex::new(0.5, 1.0), t, n)),
            RegistryCurve::Helix => spatial_jet(
                |n| dexp(i * 4.0, t, n),
                |n| match n {
                    0 => 0.5 * t,
                    1 => 0.5,
                    _ => 0.0,
                },
            ),
            RegistryCurve::HelicalSpiral => spatial_jet(
                |n| dexp(Complex::new(0.4, 4.0), t, n),
                |n| match n {
                    0 => 4.0 * t,
                    1 => 4.0,
                    _ => 0.0,
                },
            ),
            RegistryCurve::Coil => spatial_jet(
                |n| {
                    leibniz(
                        |k| if k == 0 { 2.5 + (20.0 * t).sin() } else { dsin(20.0, t, k) },
                        |k| dexp(i, t, k),
                        n,
                    )
                },
                |n| dcos(20.0, t, n),
            ),
            RegistryCurve::Trefoil => {
                let x = |n| dsin(1.0, t, n) + 2.0 * dsin(2.0, t, n);
                let y = |n| dcos(1.0, t, n) - 2.0 * dcos(2.0, t, n);
                spatial_jet(|n| Complex::new(x(n), y(n)), |n| -dsin(3.0, t, n))
            }
            RegistryCurve::Viviani => {
                let x = |n| if n == 0 { 5.0 * (1.0 + (2.0 * t).cos()) } else { 5.0 * dcos(2.0, t, n) };
                spatial_jet(
                    |n| Complex::new(x(n), 5.0 * dsin(2.0, t, n)),
                    |n| 10.0 * dsin(1.0, t, n),
                )
            }
        }
    }

    fn dimension(&self) -> Dimension {
        match self {
            RegistryCurve::Epitrochoid | RegistryCurve::LogSpiral => Dimension::Planar,
            _ => Dimension::Spatial,
        }
    }
}

/// `R e^{it}`, arclength-parametrized up to the factor `R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub radius: f64,
}

impl ParametricCurve for Circle {
    fn jet(&self, t: f64) -> Jet {
        planar_jet(|n| dexp(Complex::i(), t, n) * self.radius)
    }

    fn dimension(&self) -> Dimension {
        Dimension::Planar
    }
}

/// `origin + t·direction` in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub origin: Complex,
    pub direction: Complex,
}

impl ParametricCurve for Line {
    fn jet(&self, t: f64) -> Jet {
        planar_jet(|n| match n {
            0 => self.origin + self.direction * t,
            1 => self.direction,
            _ => Complex::new(0.0, 0.0),
        })
    }

    fn dimension(&self) -> Dimension {
        Dimension::Planar
    }
}
