//! SVG rendering of a barrier and its coverage.
//!
//! This is the only lossy output: coordinates are rounded to `f64` for
//! drawing. Isolated points are drawn as small discs whose radius is a
//! display constant ([`MARKER_RADIUS`] of the drawing extent); the disc says
//! nothing about the geometry around the point.

use std::fmt::Write;

use num_traits::ToPrimitive;
use opaque_coverage::coverage::CoverageResult;
use opaque_coverage::{Point, Rational};

/// Isolated-point marker radius, as a fraction of the larger drawing side.
pub const MARKER_RADIUS: f64 = 0.01;

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn path(cycle: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in cycle.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, f(&p.x), f(&p.y));
    }
    d.push('Z');
    d
}

pub fn render(result: &CoverageResult) -> String {
    let points = result.barrier_segments.iter().flat_map(|s| [s.a(), s.b()]).chain(result.isolated_points.iter());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        let (x, y) = (f(&p.x), f(&p.y));
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let side = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = side * 0.05;
    let stroke = side * 0.004;
    let radius = side * MARKER_RADIUS;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        x0 - pad,
        -(y1 + pad),
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad
    );
    out.push_str("<g transform=\"scale(1,-1)\">\n");
    for r in &result.regions {
        let mut d = path(&r.boundary);
        for h in &r.holes {
            d.push(' ');
            d.push_str(&path(h));
        }
        let _ = writeln!(out, r##"<path d="{d}" fill="#9ecae1" fill-rule="evenodd" stroke="none"/>"##);
    }
    for s in &result.barrier_segments {
        let _ = writeln!(
            out,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#08306b" stroke-width="{stroke}" stroke-linecap="round"/>"##,
            f(&s.a().x),
            f(&s.a().y),
            f(&s.b().x),
            f(&s.b().y)
        );
    }
    for p in &result.isolated_points {
        let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="{radius}" fill="#cb181d"/>"##, f(&p.x), f(&p.y));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use opaque_coverage::coverage::{compute_coverage, pinwheel};

    #[test]
    fn draws_every_part() {
        let svg = render(&compute_coverage(&pinwheel()));
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 1);
        assert_eq!(svg.matches("<path").count(), 0);
    }
}
