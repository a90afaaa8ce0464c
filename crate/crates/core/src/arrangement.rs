//! Planar subdivision of a clipping box by a finite set of lines.
//!
//! Built as a half-edge structure: every pairwise intersection becomes a
//! vertex, consecutive vertices along a line (or along a box side) become an
//! edge, and faces are the cycles of `next` pointers. The box boundary is
//! traversed clockwise by the single outer face [`OUTER_FACE`]; every other
//! face is a bounded open convex cell.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::geom::{
    cmp_full_angle, cmp_rational, line_intersection, orientation, rat, Line, LineIntersection, Orientation, Point,
    Rational, Segment,
};
use crate::wedge::VertexWedgeSystem;
use crate::ArrangementError;

/// Undirected edge `(first, second, line, direction from first to second)`.
type Edge = (usize, usize, Option<usize>, (BigInt, BigInt));

/// Face id of the unbounded region outside the clip box.
pub const OUTER_FACE: usize = usize::MAX;

/// Axis-aligned rectangle `[min.x, max.x] x [min.y, max.y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClipBox {
    min: Point,
    max: Point,
}

impl ClipBox {
    pub fn new(min: Point, max: Point) -> Result<ClipBox, ArrangementError> {
        if min.x >= max.x || min.y >= max.y {
            return Err(ArrangementError::EmptyClip);
        }
        Ok(ClipBox { min, max })
    }

    /// Bounding box of `points` and of all pairwise intersections of
    /// `lines`, grown by one unit on every side.
    pub fn enclosing<'a>(points: impl IntoIterator<Item = &'a Point>, lines: &[Line]) -> ClipBox {
        let crossings = pairwise_intersections(lines);
        Self::around(points, crossings.iter().map(|c| &c.2))
    }

    fn around<'a, 'b>(
        points: impl IntoIterator<Item = &'a Point>,
        more: impl IntoIterator<Item = &'b Point>,
    ) -> ClipBox {
        let mut bounds: Option<(Point, Point)> = None;
        let mut grow = |p: &Point| match &mut bounds {
            None => bounds = Some((p.clone(), p.clone())),
            Some((lo, hi)) => {
                if p.x < lo.x {
                    lo.x = p.x.clone();
                }
                if p.y < lo.y {
                    lo.y = p.y.clone();
                }
                if p.x > hi.x {
                    hi.x = p.x.clone();
                }
                if p.y > hi.y {
                    hi.y = p.y.clone();
                }
            }
        };
        points.into_iter().for_each(&mut grow);
        more.into_iter().for_each(&mut grow);
        let (lo, hi) = bounds.unwrap_or_else(|| (Point::from_ints(0, 0), Point::from_ints(0, 0)));
        let one = rat(1);
        ClipBox { min: Point::new(lo.x - &one, lo.y - &one), max: Point::new(hi.x + &one, hi.y + &one) }
    }

    pub fn min(&self) -> &Point {
        &self.min
    }

    pub fn max(&self) -> &Point {
        &self.max
    }

    pub fn strictly_contains(&self, p: &Point) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }

    pub fn area(&self) -> Rational {
        (&self.max.x - &self.min.x) * (&self.max.y - &self.min.y)
    }

    /// Corners in counterclockwise order from the lower left.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.min.clone(),
            Point::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    /// Endpoints of `line` clipped to the box, ordered by [`Line::param`].
    /// The line must cross the box interior.
    fn chord(&self, line: &Line) -> (Point, Point) {
        let (a, b, c) = line.coefficients();
        let (a, b, c) =
            (Rational::from_integer(a.clone()), Rational::from_integer(b.clone()), Rational::from_integer(c.clone()));
        if b.is_zero() {
            let x = -&c / &a;
            return (Point::new(x.clone(), self.min.y.clone()), Point::new(x, self.max.y.clone()));
        }
        let y_at = |x: &Rational| -(&a * x + &c) / &b;
        let (mut lo, mut hi) = (self.min.x.clone(), self.max.x.clone());
        if !a.is_zero() {
            let x_at = |y: &Rational| -(&b * y + &c) / &a;
            let (xa, xb) = (x_at(&self.min.y), x_at(&self.max.y));
            let (small, large) = if xa <= xb { (xa, xb) } else { (xb, xa) };
            if small > lo {
                lo = small;
            }
            if large < hi {
                hi = large;
            }
        }
        let (ylo, yhi) = (y_at(&lo), y_at(&hi));
        (Point::new(lo, ylo), Point::new(hi, yhi))
    }
}

/// Intersection points of all non-parallel pairs `(i, j)`, `i < j`.
fn pairwise_intersections(lines: &[Line]) -> Vec<(usize, usize, Point)> {
    let pairs = |i: usize| {
        (i + 1..lines.len()).filter_map(move |j| match line_intersection(&lines[i], &lines[j]) {
            LineIntersection::Point(p) => Some((i, j, p)),
            _ => None,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..lines.len()).into_par_iter().flat_map_iter(pairs).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..lines.len()).flat_map(pairs).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub point: Point,
    /// Arrangement lines through this vertex, ascending.
    pub lines: Vec<usize>,
    /// Lies on the clip box boundary.
    pub on_boundary: bool,
    /// Outgoing half-edges in counterclockwise order.
    pub outgoing: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HalfEdge {
    pub origin: usize,
    pub twin: usize,
    pub next: usize,
    /// Face on the left.
    pub face: usize,
    /// Supporting arrangement line; `None` for clip box sides.
    pub line: Option<usize>,
}

/// An open convex cell of the subdivision.
#[derive(Clone, Debug)]
pub struct Face {
    /// Boundary half-edges, counterclockwise.
    pub half_edges: Vec<usize>,
    /// Boundary vertex positions, counterclockwise.
    pub boundary: Vec<Point>,
    /// A point strictly inside the face.
    pub representative: Point,
}

impl Face {
    pub fn area(&self) -> Rational {
        shoelace(&self.boundary)
    }
}

#[derive(Clone, Debug)]
pub struct Arrangement {
    lines: Vec<Line>,
    clip: ClipBox,
    vertices: Vec<Vertex>,
    half_edges: Vec<HalfEdge>,
    faces: Vec<Face>,
}

/// Subdivides `clip` by `lines` (deduplicated first). Every pairwise
/// intersection must lie strictly inside the box, and every line must pass
/// through its interior.
pub fn build_arrangement(lines: &[Line], clip: &ClipBox) -> Result<Arrangement, ArrangementError> {
    let lines = dedup_lines(lines);
    let crossings = pairwise_intersections(&lines);
    build_with(lines, clip.clone(), crossings)
}

fn dedup_lines(lines: &[Line]) -> Vec<Line> {
    let mut lines = lines.to_vec();
    lines.sort();
    lines.dedup();
    lines
}

impl Arrangement {
    /// Arrangement of `lines` in the box [`ClipBox::enclosing`] picks for
    /// `points` and the line crossings.
    pub fn enclosing<'a>(lines: &[Line], points: impl IntoIterator<Item = &'a Point>) -> Arrangement {
        let lines = dedup_lines(lines);
        let crossings = pairwise_intersections(&lines);
        let clip = ClipBox::around(points, crossings.iter().map(|c| &c.2));
        build_with(lines, clip, crossings).expect("box encloses every crossing")
    }

    /// The deduplicated lines, sorted; line ids index this slice.
    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn line_index(&self, line: &Line) -> Option<usize> {
        self.lines.binary_search(line).ok()
    }

    pub fn clip(&self) -> &ClipBox {
        &self.clip
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn half_edges(&self) -> &[HalfEdge] {
        &self.half_edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edge_count(&self) -> usize {
        self.half_edges.len() / 2
    }

    /// `V - E + F`, counting the outer face.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edge_count() as i64 + self.faces.len() as i64 + 1
    }

    /// `(half_edge, neighbouring face)` across each boundary edge of `face`;
    /// the neighbour may be [`OUTER_FACE`].
    pub fn neighbors(&self, face: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.faces[face].half_edges.iter().map(move |&h| (h, self.half_edges[self.half_edges[h].twin].face))
    }

    /// Faces incident to vertex `v` (bounded ones only).
    pub fn faces_around(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertices[v].outgoing.iter().map(move |&h| self.half_edges[h].face).filter(|&f| f != OUTER_FACE)
    }

    /// Replaces each face's representative with an interior point lying on
    /// none of `segments`.
    pub fn with_representatives_avoiding(mut self, segments: &[Segment]) -> Arrangement {
        let pick = |face: &Face| interior_point_avoiding(&face.boundary, segments);
        #[cfg(feature = "parallel")]
        let reps: Vec<Point> = {
            use rayon::prelude::*;
            self.faces.par_iter().map(pick).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let reps: Vec<Point> = self.faces.iter().map(pick).collect();
        for (face, rep) in self.faces.iter_mut().zip(reps) {
            face.representative = rep;
        }
        self
    }

    /// Index of the face whose closure holds `p`, preferring a face that has
    /// `p` in its interior. `None` outside the box.
    pub fn locate(&self, p: &Point) -> Option<(usize, bool)> {
        let mut on_boundary_of = None;
        for (i, f) in self.faces.iter().enumerate() {
            match convex_location(&f.boundary, p) {
                Some(true) => return Some((i, true)),
                Some(false) => on_boundary_of = on_boundary_of.or(Some(i)),
                None => {}
            }
        }
        on_boundary_of.map(|i| (i, false))
    }
}

/// `Some(true)` strictly inside the convex CCW polygon, `Some(false)` on its
/// boundary, `None` outside.
pub fn convex_location(poly: &[Point], p: &Point) -> Option<bool> {
    let n = poly.len();
    let mut strict = true;
    for i in 0..n {
        match orientation(&poly[i], &poly[(i + 1) % n], p) {
            Orientation::Clockwise => return None,
            Orientation::Collinear => strict = false,
            Orientation::CounterClockwise => {}
        }
    }
    Some(strict)
}

/// Centroid of the triangle at the first strictly convex corner; lies
/// strictly inside the convex polygon and keeps denominators small.
fn corner_centroid(poly: &[Point]) -> Point {
    let n = poly.len();
    let k = (0..n)
        .find(|&k| orientation(&poly[k], &poly[(k + 1) % n], &poly[(k + 2) % n]) == Orientation::CounterClockwise)
        .expect("face has positive area");
    let (a, b, c) = (&poly[k], &poly[(k + 1) % n], &poly[(k + 2) % n]);
    let mean = |u: &Rational, v: &Rational, w: &Rational| {
        let (ud, vd, wd) = (u.denom(), v.denom(), w.denom());
        let num = u.numer() * vd * wd + v.numer() * ud * wd + w.numer() * ud * vd;
        Rational::new(num, ud * vd * wd * BigInt::from(3))
    };
    Point::new(mean(&a.x, &b.x, &c.x), mean(&a.y, &b.y, &c.y))
}

/// Sign of the first nonzero turn of a vertex cycle: positive for the
/// counterclockwise faces, negative for the clockwise box boundary.
fn turn_sign(poly: &[Point]) -> Ordering {
    let n = poly.len();
    (0..n)
        .map(|k| orientation(&poly[k], &poly[(k + 1) % n], &poly[(k + 2) % n]))
        .find(|o| *o != Orientation::Collinear)
        .map_or(
            Ordering::Equal,
            |o| if o == Orientation::CounterClockwise { Ordering::Greater } else { Ordering::Less },
        )
}

/// An interior point of a convex polygon avoiding `segments`: the vertex
/// average, or failing that, points pulled from it towards the vertices.
fn interior_point_avoiding(poly: &[Point], segments: &[Segment]) -> Point {
    let center = corner_centroid(poly);
    let clear = |q: &Point| !segments.iter().any(|s| s.contains(q));
    if clear(&center) {
        return center;
    }
    for k in 2i64.. {
        let k = rat(k);
        for v in poly {
            let q = Point::new(&center.x + (&v.x - &center.x) / &k, &center.y + (&v.y - &center.y) / &k);
            if clear(&q) {
                return q;
            }
        }
    }
    unreachable!()
}

fn shoelace(poly: &[Point]) -> Rational {
    let n = poly.len();
    let mut twice = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        twice += &p.x * &q.y - &q.x * &p.y;
    }
    twice / rat(2)
}

fn build_with(
    lines: Vec<Line>,
    clip: ClipBox,
    crossings: Vec<(usize, usize, Point)>,
) -> Result<Arrangement, ArrangementError> {
    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut vertex_id = |p: Point, on_boundary: bool, vertices: &mut Vec<Vertex>| -> usize {
        *index.entry(p).or_insert_with_key(|p| {
            vertices.push(Vertex { point: p.clone(), lines: Vec::new(), on_boundary, outgoing: Vec::new() });
            vertices.len() - 1
        })
    };

    let mut on_line: Vec<Vec<usize>> = alloc::vec![Vec::new(); lines.len()];
    for (i, j, p) in crossings {
        if !clip.strictly_contains(&p) {
            return Err(ArrangementError::ClipTooSmall(i, j));
        }
        let v = vertex_id(p, false, &mut vertices);
        on_line[i].push(v);
        on_line[j].push(v);
    }
    let mut on_side: [Vec<usize>; 4] = Default::default();
    for corner in clip.corners() {
        let v = vertex_id(corner, true, &mut vertices);
        for list in on_side.iter_mut() {
            list.push(v);
        }
    }
    for (i, line) in lines.iter().enumerate() {
        let (s, t) = clip.chord(line);
        for p in [s, t] {
            let v = vertex_id(p, true, &mut vertices);
            on_line[i].push(v);
            for list in on_side.iter_mut() {
                list.push(v);
            }
        }
    }

    // Undirected edges with the direction vector from first to second vertex.
    let mut edges: Vec<Edge> = Vec::new();
    for (i, ids) in on_line.iter_mut().enumerate() {
        let line = &lines[i];
        ids.sort_by(|&u, &v| cmp_rational(line.param(&vertices[u].point), line.param(&vertices[v].point)));
        ids.dedup();
        for &v in ids.iter() {
            vertices[v].lines.push(i);
        }
        for w in ids.windows(2) {
            edges.push((w[0], w[1], Some(i), line.forward()));
        }
    }
    let one = || BigInt::from(1);
    let sides: [(bool, &Rational); 4] =
        [(true, &clip.min.y), (false, &clip.max.x), (true, &clip.max.y), (false, &clip.min.x)];
    for (k, (horizontal, level)) in sides.iter().enumerate() {
        let ids = &mut on_side[k];
        let horizontal = *horizontal;
        let coord = |v: &Vertex| -> (Rational, Rational) {
            if horizontal {
                (v.point.y.clone(), v.point.x.clone())
            } else {
                (v.point.x.clone(), v.point.y.clone())
            }
        };
        ids.retain(|&v| coord(&vertices[v]).0 == **level);
        ids.sort_by(|&u, &v| cmp_rational(&coord(&vertices[u]).1, &coord(&vertices[v]).1));
        ids.dedup();
        let dir = if horizontal { (one(), BigInt::zero()) } else { (BigInt::zero(), one()) };
        for w in ids.windows(2) {
            edges.push((w[0], w[1], None, dir.clone()));
        }
    }

    let mut half_edges: Vec<HalfEdge> = Vec::with_capacity(2 * edges.len());
    let mut dirs: Vec<(BigInt, BigInt)> = Vec::with_capacity(2 * edges.len());
    for (u, v, line, dir) in edges {
        let h = half_edges.len();
        half_edges.push(HalfEdge { origin: u, twin: h + 1, next: usize::MAX, face: OUTER_FACE, line });
        half_edges.push(HalfEdge { origin: v, twin: h, next: usize::MAX, face: OUTER_FACE, line });
        vertices[u].outgoing.push(h);
        vertices[v].outgoing.push(h + 1);
        dirs.push(dir.clone());
        dirs.push((-dir.0, -dir.1));
    }

    let mut position: Vec<usize> = alloc::vec![0; half_edges.len()];
    for vertex in vertices.iter_mut() {
        vertex.outgoing.sort_by(|&a, &b| cmp_full_angle(&dirs[a], &dirs[b]));
        for (k, &h) in vertex.outgoing.iter().enumerate() {
            position[h] = k;
        }
    }
    // The face to the left continues along the edge just clockwise of the twin.
    for h in 0..half_edges.len() {
        let twin = half_edges[h].twin;
        let out = &vertices[half_edges[twin].origin].outgoing;
        let k = position[twin];
        half_edges[h].next = out[(k + out.len() - 1) % out.len()];
    }

    let mut faces: Vec<Face> = Vec::new();
    let mut seen = alloc::vec![false; half_edges.len()];
    for start in 0..half_edges.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            cycle.push(h);
            h = half_edges[h].next;
        }
        let boundary: Vec<Point> = cycle.iter().map(|&h| vertices[half_edges[h].origin].point.clone()).collect();
        if turn_sign(&boundary) == Ordering::Less {
            // The clip box traversed clockwise.
            continue;
        }
        let id = faces.len();
        for &h in &cycle {
            half_edges[h].face = id;
        }
        let representative = corner_centroid(&boundary);
        faces.push(Face { half_edges: cycle, boundary, representative });
    }

    Ok(Arrangement { lines, clip, vertices, half_edges, faces })
}

fn check_lines_present(arr: &Arrangement, systems: &[VertexWedgeSystem]) -> Result<(), ArrangementError> {
    for (system, s) in systems.iter().enumerate() {
        if s.boundary_lines.iter().any(|l| arr.line_index(l).is_none()) {
            return Err(ArrangementError::MissingBoundaryLine { system });
        }
    }
    Ok(())
}

/// Number of wedge systems containing each face, decided at the face's
/// representative point.
pub fn face_depths(arr: &Arrangement, systems: &[VertexWedgeSystem]) -> Result<Vec<usize>, ArrangementError> {
    check_lines_present(arr, systems)?;
    let depth = |f: &Face| systems.iter().filter(|s| s.contains_point(&f.representative)).count();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok(arr.faces.par_iter().map(depth).collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(arr.faces.iter().map(depth).collect())
    }
}

/// Face depths by walking the dual graph from one seeded face and toggling
/// system membership across every line that bounds a system's union.
pub fn face_depths_by_traversal(
    arr: &Arrangement,
    systems: &[VertexWedgeSystem],
) -> Result<Vec<usize>, ArrangementError> {
    check_lines_present(arr, systems)?;
    if arr.faces.is_empty() {
        return Ok(Vec::new());
    }
    let mut toggles: Vec<Vec<usize>> = alloc::vec![Vec::new(); arr.lines.len()];
    for (k, s) in systems.iter().enumerate() {
        for d in s.union.boundary_directions() {
            let line = d.line_at(&s.vertex);
            let id = arr.line_index(&line).ok_or(ArrangementError::MissingBoundaryLine { system: k })?;
            toggles[id].push(k);
        }
    }

    let words = systems.len().div_ceil(64);
    let mut member: Vec<Option<Vec<u64>>> = alloc::vec![None; arr.faces.len()];
    let mut seed = alloc::vec![0u64; words];
    for (k, s) in systems.iter().enumerate() {
        if s.contains_point(&arr.faces[0].representative) {
            seed[k / 64] |= 1 << (k % 64);
        }
    }
    member[0] = Some(seed);
    let mut stack = alloc::vec![0usize];
    while let Some(f) = stack.pop() {
        let bits = member[f].clone().expect("visited");
        for (h, g) in arr.neighbors(f) {
            if g == OUTER_FACE || member[g].is_some() {
                continue;
            }
            let mut next = bits.clone();
            if let Some(line) = arr.half_edges[h].line {
                for &k in &toggles[line] {
                    next[k / 64] ^= 1 << (k % 64);
                }
            }
            member[g] = Some(next);
            stack.push(g);
        }
    }
    Ok(member
        .into_iter()
        .map(|m| m.expect("faces are connected").iter().map(|w| w.count_ones() as usize).sum())
        .collect())
}
