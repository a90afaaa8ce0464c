//! Input and output documents.
//!
//! Coordinates travel as exact rationals: JSON integers or strings of the
//! form `"n"` / `"n/d"`. Output numbers are always strings.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use opaque_coverage::barrier::{validate_and_build, Barrier};
use opaque_coverage::coverage::CoverageResult;
use opaque_coverage::{BarrierError, Point, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Where in the input document a problem was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub segment: usize,
    pub endpoint: Option<usize>,
    pub coordinate: Option<char>,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "segment {}", self.segment)?;
        if let Some(e) = self.endpoint {
            write!(f, ", endpoint {e}")?;
        }
        if let Some(c) = self.coordinate {
            write!(f, ", coordinate {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("document must be an object with a `segments` array")]
    MissingSegments,
    #[error("{at}: {reason}")]
    Malformed { at: Position, reason: String },
    #[error("invalid barrier: {0}")]
    Barrier(#[from] BarrierError),
}

/// Parses `"n"` or `"n/d"` (optional sign on `n`, `d` positive or negative
/// but nonzero).
pub fn parse_rational(token: &str) -> Result<Rational, String> {
    let token = token.trim();
    let bad = || format!("bad rational `{token}`");
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (token, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(format!("zero denominator in `{token}`"));
    }
    Ok(Rational::new(num, den))
}

/// Parses `"x,y"`.
pub fn parse_point(token: &str) -> Result<Point, String> {
    let (x, y) = token.split_once(',').ok_or_else(|| format!("expected `x,y`, got `{token}`"))?;
    Ok(Point::new(parse_rational(x)?, parse_rational(y)?))
}

pub fn rational_string(r: &Rational) -> String {
    r.to_string()
}

pub fn point_strings(p: &Point) -> [String; 2] {
    [rational_string(&p.x), rational_string(&p.y)]
}

/// A list of segments, as read or generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub segments: Vec<(Point, Point)>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<InputDocument, InputError> {
        let value: Value = serde_json::from_str(text)?;
        let list = value.get("segments").and_then(Value::as_array).ok_or(InputError::MissingSegments)?;
        let segments = list.iter().enumerate().map(|(i, s)| parse_segment(i, s)).collect::<Result<_, _>>()?;
        Ok(InputDocument { segments })
    }

    pub fn to_barrier(&self) -> Result<Barrier, InputError> {
        Ok(validate_and_build(self.segments.clone())?)
    }

    pub fn to_json(&self) -> String {
        let segments: Vec<[[String; 2]; 2]> =
            self.segments.iter().map(|(a, b)| [point_strings(a), point_strings(b)]).collect();
        let mut out = serde_json::to_string_pretty(&serde_json::json!({ "segments": segments })).expect("serializable");
        out.push('\n');
        out
    }
}

fn parse_segment(i: usize, value: &Value) -> Result<(Point, Point), InputError> {
    let malformed = |endpoint, coordinate, reason: String| InputError::Malformed {
        at: Position { segment: i, endpoint, coordinate },
        reason,
    };
    let ends = value
        .as_array()
        .filter(|a| a.len() == 2)
        .ok_or_else(|| malformed(None, None, "expected a pair of points".into()))?;
    let mut points = Vec::with_capacity(2);
    for (e, end) in ends.iter().enumerate() {
        let coords = end
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| malformed(Some(e), None, "expected a pair of coordinates".into()))?;
        let mut xy = Vec::with_capacity(2);
        for (c, name) in coords.iter().zip(['x', 'y']) {
            let r = match c {
                Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
                Value::Number(n) => Err(format!("non-integer number `{n}`; use a \"num/den\" string")),
                Value::String(s) => parse_rational(s),
                other => Err(format!("unexpected value `{other}`")),
            };
            xy.push(r.map_err(|reason| malformed(Some(e), Some(name), reason))?);
        }
        let y = xy.pop().expect("two coordinates");
        let x = xy.pop().expect("two coordinates");
        points.push(Point::new(x, y));
    }
    let b = points.pop().expect("two endpoints");
    let a = points.pop().expect("two endpoints");
    Ok((a, b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDoc {
    pub boundary: Vec<[String; 2]>,
    pub area: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub holes: Vec<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsDoc {
    pub n: usize,
    pub m: usize,
    pub hull_vertices: usize,
    pub lines: usize,
    pub faces: usize,
    pub full_depth_faces: usize,
    pub regions: usize,
    pub isolated_points: usize,
    pub shared_vertex_contacts: usize,
    /// Microseconds per stage; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings_us: Option<BTreeMap<String, u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub regions: Vec<RegionDoc>,
    pub segments: Vec<[[String; 2]; 2]>,
    pub isolated_points: Vec<[String; 2]>,
    pub stats: StatsDoc,
}

impl OutputDocument {
    pub fn from_result(result: &CoverageResult, with_timings: bool) -> OutputDocument {
        let cycle = |c: &[Point]| c.iter().map(point_strings).collect::<Vec<_>>();
        let s = &result.stats;
        OutputDocument {
            regions: result
                .regions
                .iter()
                .map(|r| RegionDoc {
                    boundary: cycle(&r.boundary),
                    area: rational_string(&r.area),
                    holes: r.holes.iter().map(|h| cycle(h)).collect(),
                })
                .collect(),
            segments: result.barrier_segments.iter().map(|s| [point_strings(s.a()), point_strings(s.b())]).collect(),
            isolated_points: result.isolated_points.iter().map(point_strings).collect(),
            stats: StatsDoc {
                n: s.segments,
                m: s.components,
                hull_vertices: s.hull_vertices,
                lines: s.lines,
                faces: s.faces,
                full_depth_faces: s.full_depth_faces,
                regions: s.regions,
                isolated_points: s.isolated_points,
                shared_vertex_contacts: s.shared_vertex_contacts,
                timings_us: with_timings
                    .then(|| s.timings.iter().map(|(k, d)| (k.to_string(), d.as_micros() as u64)).collect()),
            },
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }

    pub fn parse(text: &str) -> Result<OutputDocument, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use opaque_coverage::coverage::compute_coverage;
    use opaque_coverage::geom::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("1/-2").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").unwrap_err().contains("1/0"));
        assert!(parse_rational("1.5").is_err());
        assert_eq!(parse_point("1/2, -3").unwrap(), Point::new(ratio(1, 2), ratio(-3, 1)));
    }

    #[test]
    fn input_positions() {
        let doc = InputDocument::parse(r#"{"segments": [[[0,0],[1,"1/2"]], [[0,1],["2","1/0"]]]}"#);
        let msg = doc.unwrap_err().to_string();
        assert!(msg.contains("segment 1, endpoint 1, coordinate y") && msg.contains("1/0"), "{msg}");
        assert!(matches!(InputDocument::parse(r#"{"segs": []}"#), Err(InputError::MissingSegments)));
        let msg = InputDocument::parse(r#"{"segments": [[[0,0.5],[1,1]]]}"#).unwrap_err().to_string();
        assert!(msg.contains("segment 0, endpoint 0, coordinate y"), "{msg}");
        let zero = InputDocument::parse(r#"{"segments": [[[1,1],[1,1]]]}"#).unwrap();
        assert!(matches!(zero.to_barrier(), Err(InputError::Barrier(BarrierError::ZeroLength { index: 0 }))));
    }

    #[test]
    fn input_round_trip() {
        let doc = InputDocument {
            segments: vec![
                (Point::new(ratio(1, 3), ratio(-2, 1)), Point::from_ints(4, 5)),
                (Point::from_ints(0, 0), Point::new(ratio(-7, 9), ratio(0, 1))),
            ],
        };
        assert_eq!(InputDocument::parse(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn output_round_trip() {
        let doc = InputDocument::parse(r#"{"segments": [[[0,0],[4,0]], [[4,0],[0,4]], [[0,4],[0,0]]]}"#).unwrap();
        let out = OutputDocument::from_result(&compute_coverage(&doc.to_barrier().unwrap()), true);
        assert_eq!(out.regions.len(), 1);
        assert_eq!(out.regions[0].area, "8");
        assert_eq!(OutputDocument::parse(&out.to_json()).unwrap(), out);
    }
}
