//! Exact rational geometry: points, segments, lines, line directions and the
//! orientation predicate everything else is built on.
//!
//! Nothing in here rounds. Coordinates are arbitrary-precision rationals, and
//! lines and directions are kept in canonical integer form so that two equal
//! objects always compare equal structurally.

use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::GeomError;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Builds a rational from a small integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

trait SignCmp {
    fn sign_cmp_zero(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp_zero(&self) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}

/// Compares two rationals by cross-multiplying their reduced forms.
pub fn cmp_rational(a: &Rational, b: &Rational) -> Ordering {
    if a.denom() == b.denom() {
        return a.numer().cmp(b.numer());
    }
    (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
}

/// Ordered lexicographically by `(x, y)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_rational(&self.x, &other.x).then_with(|| cmp_rational(&self.y, &other.y))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(rat(x), rat(y))
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = rat(2);
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    /// `+1`, `-1` or `0`.
    pub fn signum(self) -> i8 {
        match self {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// The cross product `(q - p) x (r - p)`.
pub fn cross(p: &Point, q: &Point, r: &Point) -> Rational {
    (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x)
}

/// `b - a` as an unreduced fraction `(numerator, positive denominator)`.
pub(crate) fn raw_difference(a: &Rational, b: &Rational) -> (BigInt, BigInt) {
    if a.denom() == b.denom() {
        (b.numer() - a.numer(), a.denom().clone())
    } else {
        (b.numer() * a.denom() - a.numer() * b.denom(), a.denom() * b.denom())
    }
}

/// Sign of the turn `p -> q -> r`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let (ux, uxd) = raw_difference(&p.x, &q.x);
    let (uy, uyd) = raw_difference(&p.y, &q.y);
    let (vx, vxd) = raw_difference(&p.x, &r.x);
    let (vy, vyd) = raw_difference(&p.y, &r.y);
    let lhs = ux * vy * (uyd * vxd);
    let rhs = uy * vx * (uxd * vyd);
    match lhs.cmp(&rhs) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

/// A closed segment with distinct endpoints.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeomError> {
        if a == b {
            return Err(GeomError::CoincidentPoints);
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    /// Same segment with endpoints in lexicographic order.
    pub fn canonical(&self) -> Segment {
        if self.a <= self.b {
            self.clone()
        } else {
            Segment { a: self.b.clone(), b: self.a.clone() }
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        orientation(&self.a, &self.b, p) == Orientation::Collinear && in_box(&self.a, &self.b, p)
    }

    pub fn supporting_line(&self) -> Line {
        line_through(&self.a, &self.b).expect("segment endpoints are distinct")
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} - {:?}]", self.a, self.b)
    }
}

/// `p` lies in the axis-aligned box spanned by `a` and `b`.
fn in_box(a: &Point, b: &Point, p: &Point) -> bool {
    let between = |lo: &Rational, hi: &Rational, v: &Rational| {
        let (lo, hi) = if cmp_rational(lo, hi) == Ordering::Greater { (hi, lo) } else { (lo, hi) };
        cmp_rational(lo, v) != Ordering::Greater && cmp_rational(v, hi) != Ordering::Greater
    };
    between(&a.x, &b.x, &p.x) && between(&a.y, &b.y, &p.y)
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Orientation::Collinear && in_box(&s1.a, &s1.b, &s2.a))
        || (o2 == Orientation::Collinear && in_box(&s1.a, &s1.b, &s2.b))
        || (o3 == Orientation::Collinear && in_box(&s2.a, &s2.b, &s1.a))
        || (o4 == Orientation::Collinear && in_box(&s2.a, &s2.b, &s1.b))
}

/// The line `a*x + b*y + c = 0` in lowest integer terms with the first
/// nonzero of `(a, b)` positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Canonical line from rational coefficients; `None` when `a = b = 0`.
    pub fn new(a: &Rational, b: &Rational, c: &Rational) -> Option<Line> {
        if a.is_zero() && b.is_zero() {
            return None;
        }
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let scale = |r: &Rational| r.numer() * (&lcm / r.denom());
        Some(Line::from_integers(scale(a), scale(b), scale(c)))
    }

    fn from_integers(mut a: BigInt, mut b: BigInt, mut c: BigInt) -> Line {
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
            c = -c;
        }
        Line { a, b, c }
    }

    pub fn coefficients(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// `a*x + b*y + c` at `p`.
    pub fn eval(&self, p: &Point) -> Rational {
        let a = Rational::from_integer(self.a.clone());
        let b = Rational::from_integer(self.b.clone());
        let c = Rational::from_integer(self.c.clone());
        a * &p.x + b * &p.y + c
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.side(p) == Ordering::Equal
    }

    /// Which side of the line `p` lies on, as the sign of [`Line::eval`].
    pub fn side(&self, p: &Point) -> Ordering {
        let (xd, yd) = (p.x.denom(), p.y.denom());
        let value = &self.a * p.x.numer() * yd + &self.b * p.y.numer() * xd + &self.c * xd * yd;
        value.sign_cmp_zero()
    }

    pub fn direction(&self) -> Direction {
        Direction::from_integers(self.b.clone(), -self.a.clone()).expect("line has a nonzero normal")
    }

    /// Integer direction vector pointing towards increasing [`Line::param`].
    pub fn forward(&self) -> (BigInt, BigInt) {
        if self.b.is_zero() {
            (BigInt::zero(), BigInt::one())
        } else if self.b.is_positive() {
            (self.b.clone(), -self.a.clone())
        } else {
            (-self.b.clone(), self.a.clone())
        }
    }

    /// A monotone coordinate along the line: `x`, or `y` when vertical.
    pub fn param<'p>(&self, p: &'p Point) -> &'p Rational {
        if self.b.is_zero() {
            &p.y
        } else {
            &p.x
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Line({}x + {}y + {} = 0)", self.a, self.b, self.c)
    }
}

/// Canonical line through two distinct points.
pub fn line_through(p: &Point, q: &Point) -> Result<Line, GeomError> {
    if p == q {
        return Err(GeomError::CoincidentPoints);
    }
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = -(&a * &p.x + &b * &p.y);
    Ok(Line::new(&a, &b, &c).expect("distinct points span a line"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineIntersection {
    Point(Point),
    Parallel,
    Identical,
}

pub fn line_intersection(l1: &Line, l2: &Line) -> LineIntersection {
    let det = &l1.a * &l2.b - &l2.a * &l1.b;
    if det.is_zero() {
        return if l1 == l2 { LineIntersection::Identical } else { LineIntersection::Parallel };
    }
    let x = &l1.b * &l2.c - &l2.b * &l1.c;
    let y = &l2.a * &l1.c - &l1.a * &l2.c;
    LineIntersection::Point(Point::new(Rational::new(x, det.clone()), Rational::new(y, det)))
}

/// An undirected line direction: `(dx, dy)` modulo nonzero scaling, stored in
/// lowest integer terms with `dy > 0`, or `dy = 0` and `dx > 0`.
///
/// Directions are totally ordered by angle in `[0, pi)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    dx: BigInt,
    dy: BigInt,
}

impl Direction {
    pub fn from_integers(dx: BigInt, dy: BigInt) -> Option<Direction> {
        if dx.is_zero() && dy.is_zero() {
            return None;
        }
        let g = dx.gcd(&dy);
        let (mut dx, mut dy) = (dx / &g, dy / &g);
        if dy.is_negative() || (dy.is_zero() && dx.is_negative()) {
            dx = -dx;
            dy = -dy;
        }
        Some(Direction { dx, dy })
    }

    pub fn from_ints(dx: i64, dy: i64) -> Option<Direction> {
        Direction::from_integers(BigInt::from(dx), BigInt::from(dy))
    }

    /// Direction of the vector `(dx, dy)`; `None` for the zero vector.
    pub fn of_vector(dx: &Rational, dy: &Rational) -> Option<Direction> {
        let lcm = dx.denom().lcm(dy.denom());
        Direction::from_integers(dx.numer() * (&lcm / dx.denom()), dy.numer() * (&lcm / dy.denom()))
    }

    /// The direction of angle zero, `(1, 0)`.
    pub fn horizontal() -> Direction {
        Direction { dx: BigInt::one(), dy: BigInt::zero() }
    }

    pub fn dx(&self) -> &BigInt {
        &self.dx
    }

    pub fn dy(&self) -> &BigInt {
        &self.dy
    }

    /// Direction strictly between `self` and `other` (angle-wise, going
    /// counterclockwise from `self` to `other` within `[0, pi)`). Requires
    /// `self < other`.
    pub fn between(&self, other: &Direction) -> Direction {
        debug_assert!(self < other);
        Direction::from_integers(&self.dx + &other.dx, &self.dy + &other.dy).expect("directions below pi never cancel")
    }

    /// Direction strictly between `self` and angle `pi`.
    pub fn towards_pi(&self) -> Direction {
        if self.dy.is_zero() {
            Direction::from_ints(0, 1).unwrap()
        } else {
            Direction::from_integers(&self.dx - BigInt::one(), self.dy.clone()).unwrap()
        }
    }

    /// A point on the line through `p` with this direction, other than `p`.
    pub fn step_from(&self, p: &Point) -> Point {
        Point::new(&p.x + Rational::from_integer(self.dx.clone()), &p.y + Rational::from_integer(self.dy.clone()))
    }

    /// Line through `p` with this direction.
    pub fn line_at(&self, p: &Point) -> Line {
        line_through(p, &self.step_from(p)).expect("step is nonzero")
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        // Both lie in the half-plane [0, pi), so the cross product decides.
        let c = &self.dx * &other.dy - &self.dy * &other.dx;
        BigInt::zero().cmp(&c)
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dir({}, {})", self.dx, self.dy)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.dx, self.dy)
    }
}

/// Canonical direction of the line through `p` and `q`.
pub fn direction_between(p: &Point, q: &Point) -> Result<Direction, GeomError> {
    let (dx, dxd) = raw_difference(&p.x, &q.x);
    let (dy, dyd) = raw_difference(&p.y, &q.y);
    Direction::from_integers(dx * dyd, dy * dxd).ok_or(GeomError::CoincidentPoints)
}

/// Same angle as [`direction_between`] but not reduced to lowest terms, so
/// only fit for ordering comparisons.
pub(crate) fn direction_towards(p: &Point, q: &Point) -> Option<Direction> {
    let (dx, dxd) = raw_difference(&p.x, &q.x);
    let (dy, dyd) = raw_difference(&p.y, &q.y);
    let (mut dx, mut dy) = (dx * dyd, dy * dxd);
    if dx.is_zero() && dy.is_zero() {
        return None;
    }
    if dy.is_negative() || (dy.is_zero() && dx.is_negative()) {
        dx = -dx;
        dy = -dy;
    }
    Some(Direction { dx, dy })
}

/// True iff the infinite line meets the closed segment.
pub fn line_meets_segment(line: &Line, s: &Segment) -> bool {
    let sa = line.side(&s.a);
    let sb = line.side(&s.b);
    sa == Ordering::Equal || sb == Ordering::Equal || sa != sb
}

/// Total order of integer vectors by polar angle in `[0, 2pi)`.
pub(crate) fn cmp_full_angle(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> Ordering {
    let upper = |v: &(BigInt, BigInt)| v.1.is_positive() || (v.1.is_zero() && v.0.is_positive());
    match (upper(a), upper(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let c = &a.0 * &b.1 - &a.1 * &b.0;
            BigInt::zero().cmp(&c)
        }
    }
}
