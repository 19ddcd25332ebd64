//! Plain-text curve format.
//!
//! ```text
//! # comments and blank lines are ignored
//! open            <- or "closed"
//! 0.0 0.0         <- one vertex per line, 2 or 3 coordinates
//! 1.0 0.5
//! ```

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use super::{DiscreteCurve, Dimension};
use crate::{Complex, GeomError, Vec3};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseCurveError {
    #[error("missing header line (expected \"open\" or \"closed\")")]
    MissingHeader,
    #[error("line {line}: expected \"open\" or \"closed\", found {found:?}")]
    BadHeader { line: usize, found: String },
    #[error("line {line}: cannot parse coordinate {token:?}")]
    BadCoordinate { line: usize, token: String },
    #[error("line {line}: expected 2 or 3 coordinates, found {count}")]
    WrongArity { line: usize, count: usize },
    #[error("line {line}: vertex dimension differs from the first vertex")]
    MixedDimensions { line: usize },
    #[error(transparent)]
    Invalid(#[from] GeomError),
}

impl FromStr for DiscreteCurve {
    type Err = ParseCurveError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());

        let (hline, header) = lines.next().ok_or(ParseCurveError::MissingHeader)?;
        let closed = match header.to_ascii_lowercase().as_str() {
            "closed" => true,
            "open" => false,
            _ => {
                return Err(ParseCurveError::BadHeader {
                    line: hline,
                    found: header.to_string(),
                })
            }
        };

        let mut arity = None;
        let mut coords: Vec<Vec3> = Vec::new();
        for (line, l) in lines {
            let values = l
                .split_whitespace()
                .map(|t| {
                    t.parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| ParseCurveError::BadCoordinate {
                            line,
                            token: t.to_string(),
                        })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let count = values.len();
            if !(2..=3).contains(&count) {
                return Err(ParseCurveError::WrongArity { line, count });
            }
            if *arity.get_or_insert(count) != count {
                return Err(ParseCurveError::MixedDimensions { line });
            }
            coords.push(Vec3::new(values[0], values[1], values.get(2).copied().unwrap_or(0.0)));
        }

        let curve = match arity {
            Some(3) => DiscreteCurve::spatial(coords, closed)?,
            _ => DiscreteCurve::planar(coords.iter().map(|v| Complex::new(v.x, v.y)), closed)?,
        };
        Ok(curve)
    }
}

impl DiscreteCurve {
    /// Serializes to the text format, round-trip exact.
    pub fn to_text(&self) -> String {
        let mut out = String::from(if self.closed { "closed\n" } else { "open\n" });
        for v in &self.vertices {
            match self.dimension {
                Dimension::Planar => writeln!(out, "{:?} {:?}", v.x, v.y),
                Dimension::Spatial => writeln!(out, "{:?} {:?} {:?}", v.x, v.y, v.z),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_planar_and_spatial() {
        let c: DiscreteCurve = "# square\nclosed\n0 0\n1 0\n1 1\n0 1\n".parse().unwrap();
        assert!(c.is_closed() && c.is_planar() && c.len() == 4);
        let s: DiscreteCurve = "open\n0 0 0\n1 0 0.5\n2 1 1\n3 3 1 # trailing comment\n\n"
            .parse()
            .unwrap();
        assert!(!s.is_closed() && !s.is_planar());
        assert_eq!(s.vertices()[3], Vec3::new(3.0, 3.0, 1.0));
    }

    #[test]
    fn reports_errors_with_line_numbers() {
        assert_eq!("".parse::<DiscreteCurve>(), Err(ParseCurveError::MissingHeader));
        assert!(matches!(
            "spiral\n0 0\n".parse::<DiscreteCurve>(),
            Err(ParseCurveError::BadHeader { line: 1, .. })
        ));
        assert!(matches!(
            "open\n0 0\n1 x\n".parse::<DiscreteCurve>(),
            Err(ParseCurveError::BadCoordinate { line: 3, .. })
        ));
        assert_eq!(
            "open\n0 0\n1\n".parse::<DiscreteCurve>(),
            Err(ParseCurveError::WrongArity { line: 3, count: 1 })
        );
        assert_eq!(
            "open\n0 0\n1 1 1\n".parse::<DiscreteCurve>(),
            Err(ParseCurveError::MixedDimensions { line: 3 })
        );
        assert!(matches!(
            "open\n0 0\n1 0\n0 0\n2 2\n".parse::<DiscreteCurve>(),
            Err(ParseCurveError::Invalid(GeomError::RepeatedVertex { .. }))
        ));
    }

    #[test]
    fn text_round_trip() {
        let c = DiscreteCurve::spatial(
            (0..7).map(|k| Vec3::new((k as f64 * 0.37).cos(), (k as f64 * 0.37).sin(), 0.1 * k as f64 / 3.0)),
            false,
        )
        .unwrap();
        assert_eq!(c.to_text().parse::<DiscreteCurve>().unwrap(), c);
    }
}
