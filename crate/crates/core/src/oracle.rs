//! Ground-truth test for a single point: is every line through it blocked?
//!
//! This is a radial sweep around the query point. It uses only the geometric
//! primitives and the component partition; hulls, tangent searches and arc
//! merging are recomputed here from scratch so that it can check the wedge
//! and arrangement pipeline rather than repeat it.

use alloc::vec::Vec;

use crate::barrier::Barrier;
use crate::geom::{raw_difference, Direction, Point};
use crate::wedge::{Arc, DirectionIntervalSet};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Result of a blocked-point query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockedVerdict {
    pub blocked: bool,
    /// A direction whose line through the query point misses the barrier;
    /// present exactly when the point is clear.
    pub witness: Option<Direction>,
    pub coverage_arcs: DirectionIntervalSet,
}

/// A vector up to a positive factor; only signs of products are used.
type Vector = (BigInt, BigInt);

fn cross(a: &Vector, b: &Vector) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn dot(a: &Vector, b: &Vector) -> BigInt {
    &a.0 * &b.0 + &a.1 * &b.1
}

/// `q - p`, scaled by the positive product of its denominators.
fn offset(p: &Point, q: &Point) -> Vector {
    let (x, xd) = raw_difference(&p.x, &q.x);
    let (y, yd) = raw_difference(&p.y, &q.y);
    (x * yd, y * xd)
}

/// Angular span of a component's endpoints seen from the query point.
enum Cone {
    Empty,
    /// Counterclockwise from `lo` to `hi`, less than a half turn.
    Span {
        lo: Vector,
        hi: Vector,
    },
    /// The endpoints surround the point (span of at least a half turn).
    Surrounding,
}

impl Cone {
    fn add(self, w: Vector) -> Cone {
        let (lo, hi) = match self {
            Cone::Empty => return Cone::Span { lo: w.clone(), hi: w },
            Cone::Surrounding => return Cone::Surrounding,
            Cone::Span { lo, hi } => (lo, hi),
        };
        let from_lo = cross(&lo, &w);
        let to_hi = cross(&w, &hi);
        let after_lo = from_lo.is_positive() || (from_lo.is_zero() && dot(&lo, &w).is_positive());
        let before_hi = to_hi.is_positive() || (to_hi.is_zero() && dot(&w, &hi).is_positive());
        if after_lo && before_hi {
            Cone::Span { lo, hi }
        } else if from_lo.is_positive() {
            Cone::Span { lo, hi: w }
        } else if to_hi.is_positive() {
            Cone::Span { lo: w, hi }
        } else {
            Cone::Surrounding
        }
    }
}

/// Decides whether `p` is blocked by `barrier`.
pub fn is_blocked(p: &Point, barrier: &Barrier) -> BlockedVerdict {
    let blocked_verdict =
        || BlockedVerdict { blocked: true, witness: None, coverage_arcs: DirectionIntervalSet::full() };
    if barrier.contains_point(p) {
        return blocked_verdict();
    }

    let mut arcs: Vec<Arc> = Vec::new();
    // Directions of collinear components that p is aligned with: each meets
    // the barrier but cannot close a gap on its own.
    let mut aligned: Vec<Direction> = Vec::new();
    for comp in barrier.components() {
        let mut cone = Cone::Empty;
        for s in barrier.component_segments(comp) {
            for e in [s.a(), s.b()] {
                cone = cone.add(offset(p, e));
            }
        }
        match cone {
            Cone::Surrounding => return blocked_verdict(),
            Cone::Span { lo, hi } => {
                let start = Direction::from_integers(lo.0.clone(), lo.1.clone()).expect("p is not an endpoint");
                if cross(&lo, &hi).is_positive() {
                    let end = Direction::from_integers(hi.0.clone(), hi.1.clone()).expect("p is not an endpoint");
                    arcs.push(Arc::new(start, end));
                } else {
                    aligned.push(start);
                }
            }
            Cone::Empty => {}
        }
    }

    let witness = uncovered_direction(&arcs, &aligned);
    BlockedVerdict { blocked: witness.is_none(), witness, coverage_arcs: DirectionIntervalSet::from_arcs(arcs) }
}

/// Linear sweep over `[0, pi]`: returns a direction in no arc and not in
/// `avoid`, if the arcs leave any gap.
fn uncovered_direction(arcs: &[Arc], avoid: &[Direction]) -> Option<Direction> {
    // (start, end) with `None` standing for pi.
    let mut pieces: Vec<(Direction, Option<Direction>)> = Vec::with_capacity(arcs.len() + 1);
    for a in arcs {
        if a.end < a.start {
            pieces.push((a.start.clone(), None));
            pieces.push((Direction::horizontal(), Some(a.end.clone())));
        } else {
            pieces.push((a.start.clone(), Some(a.end.clone())));
        }
    }
    pieces.sort_by(|a, b| a.0.cmp(&b.0));

    let zero = Direction::horizontal();
    let mut iter = pieces.into_iter();
    let mut reach = match iter.next() {
        Some((s, e)) if s == zero => e,
        first => {
            if !avoid.contains(&zero) {
                return Some(zero);
            }
            return Some(inside_gap(&zero, first.map(|f| f.0).as_ref(), avoid));
        }
    };
    for (start, end) in iter {
        let Some(r) = &reach else { return None };
        if start > *r {
            return Some(inside_gap(r, Some(&start), avoid));
        }
        reach = end.map(|e| if e > *r { e } else { r.clone() });
    }
    reach.map(|r| inside_gap(&r, None, avoid))
}

/// A direction strictly between `lo` and `hi` (or pi) that is not in `avoid`.
fn inside_gap(lo: &Direction, hi: Option<&Direction>, avoid: &[Direction]) -> Direction {
    let mut candidate = match hi {
        Some(h) => lo.between(h),
        None => lo.towards_pi(),
    };
    while avoid.contains(&candidate) {
        candidate = lo.between(&candidate);
    }
    candidate
}

/// Runs [`is_blocked`] on each point, in order.
pub fn brute_force_coverage_check(barrier: &Barrier, points: &[Point]) -> Vec<BlockedVerdict> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(|p| is_blocked(p, barrier)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(|p| is_blocked(p, barrier)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::barrier::validate_and_build;
    use crate::geom::{line_meets_segment, ratio};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn barrier(list: &[((i64, i64), (i64, i64))]) -> Barrier {
        validate_and_build(list.iter().map(|&(a, b)| (p(a.0, a.1), p(b.0, b.1))).collect()).unwrap()
    }

    fn square() -> Barrier {
        barrier(&[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))])
    }

    fn assert_witness_valid(q: &Point, b: &Barrier, v: &BlockedVerdict) {
        let line = v.witness.as_ref().unwrap().line_at(q);
        assert!(b.segments().iter().all(|s| !line_meets_segment(&line, s)), "witness hits barrier");
    }

    #[test]
    fn square_examples() {
        let b = square();
        assert!(is_blocked(&Point::new(ratio(1, 2), ratio(1, 2)), &b).blocked);
        let v = is_blocked(&p(2, 2), &b);
        assert!(!v.blocked);
        assert_witness_valid(&p(2, 2), &b, &v);
        assert!(is_blocked(&p(1, 0), &b).blocked);
    }

    #[test]
    fn open_square_interior_is_still_blocked() {
        // Three sides: connected, so the interior of the hull is covered.
        let b = barrier(&[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1))]);
        assert!(is_blocked(&Point::new(ratio(1, 2), ratio(1, 2)), &b).blocked);
        // on the open hull edge x = 0
        assert!(is_blocked(&Point::new(ratio(0, 1), ratio(1, 2)), &b).blocked);
    }

    #[test]
    fn three_segments_block_origin() {
        let b = crate::coverage::pinwheel();
        let v = is_blocked(&p(0, 0), &b);
        assert!(v.blocked && v.witness.is_none() && v.coverage_arcs.is_full());
        let off = Point::new(ratio(1, 50), ratio(0, 1));
        let v = is_blocked(&off, &b);
        assert!(!v.blocked);
        assert_witness_valid(&off, &b, &v);
    }

    #[test]
    fn collinear_direction_is_ignored() {
        let b = barrier(&[((0, 0), (4, 0))]);
        let v = is_blocked(&p(6, 0), &b);
        assert!(!v.blocked);
        assert!(v.coverage_arcs.is_empty());
        assert_witness_valid(&p(6, 0), &b, &v);
        assert!(is_blocked(&p(2, 0), &b).blocked);
    }

    #[test]
    fn batch_keeps_order() {
        let b = barrier(&[((0, 0), (4, 0)), ((4, 0), (0, 4)), ((0, 4), (0, 0))]);
        let pts = [Point::new(ratio(4, 3), ratio(4, 3)), p(50, 50), p(4, 0)];
        let verdicts: Vec<bool> = brute_force_coverage_check(&b, &pts).into_iter().map(|v| v.blocked).collect();
        assert_eq!(verdicts, alloc::vec![true, false, true]);
        assert!(brute_force_coverage_check(&b, &[]).is_empty());
    }
}
