//! Worst-case instances: a regular n-gon with every edge shortened at both
//! ends, leaving gaps at the corners.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use opaque_coverage::geom::{ratio, segments_intersect};
use opaque_coverage::{Point, Rational, Segment};
use thiserror::Error;

use crate::io::InputDocument;

/// Denominator used to round the circle parameters.
const PARAM_DENOMINATOR: i64 = 100;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be at least 3, got {0}")]
    TooFewSides(usize),
    #[error("gap must satisfy 0 < gap < 1 and gap != 1/2, got {0}")]
    BadGap(Rational),
    #[error("generated segments {0} and {1} intersect")]
    NotDisjoint(usize, usize),
}

/// Point of the unit circle at parameter `t` of the map
/// `t -> ((1 - t^2) / (1 + t^2), 2t / (1 + t^2))`.
fn circle_point(t: &Rational) -> Point {
    let t2 = t * t;
    let den = Rational::one() + &t2;
    Point::new((Rational::one() - t2) / &den, (t * Rational::from_integer(BigInt::from(2))) / den)
}

/// Corner `k` of the n-gon: the circle point at angle `2 pi k / n`, with the
/// half-angle tangent rounded to a fixed denominator.
fn corner(k: usize, n: usize) -> Point {
    if 2 * k == n {
        return Point::from_ints(-1, 0);
    }
    let tangent = (std::f64::consts::PI * k as f64 / n as f64).tan();
    let t = ratio((tangent * PARAM_DENOMINATOR as f64).round() as i64, PARAM_DENOMINATOR);
    circle_point(&t)
}

/// `n` pairwise disjoint segments: each n-gon edge with a `gap` fraction of
/// its length removed at both ends.
pub fn ngon(n: usize, gap: &Rational) -> Result<InputDocument, GenError> {
    if n < 3 {
        return Err(GenError::TooFewSides(n));
    }
    if !gap.is_positive() || *gap >= Rational::one() || *gap == ratio(1, 2) {
        return Err(GenError::BadGap(gap.clone()));
    }
    let corners: Vec<Point> = (0..n).map(|k| corner(k, n)).collect();
    let segments: Vec<(Point, Point)> = (0..n)
        .map(|k| {
            let (u, v) = (&corners[k], &corners[(k + 1) % n]);
            let (dx, dy) = (&v.x - &u.x, &v.y - &u.y);
            let a = Point::new(&u.x + &dx * gap, &u.y + &dy * gap);
            let b = Point::new(&v.x - &dx * gap, &v.y - &dy * gap);
            (a, b)
        })
        .collect();
    let built: Vec<Segment> =
        segments.iter().map(|(a, b)| Segment::new(a.clone(), b.clone()).expect("gap != 1/2")).collect();
    for i in 0..n {
        for j in i + 1..n {
            if segments_intersect(&built[i], &built[j]) {
                return Err(GenError::NotDisjoint(i, j));
            }
        }
    }
    Ok(InputDocument { segments })
}
