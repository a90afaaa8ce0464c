//! Barrier validation, connected components and convex hulls.

use alloc::vec::Vec;

use crate::geom::{orientation, segments_intersect, Orientation, Point, Segment};
use crate::{BarrierError, TangentError};

/// A validated barrier: deduplicated segments partitioned into connected
/// components.
#[derive(Clone, Debug)]
pub struct Barrier {
    segments: Vec<Segment>,
    components: Vec<Component>,
}

/// A maximal connected set of barrier segments and its convex hull.
#[derive(Clone, Debug)]
pub struct Component {
    segment_indices: Vec<usize>,
    hull: ConvexHull,
}

/// Convex hull of a component's segment endpoints.
///
/// Vertices run counterclockwise with no three consecutive collinear. A hull
/// with fewer than three vertices is degenerate: all endpoints are collinear
/// and the two vertices are the extreme ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexHull {
    vertices: Vec<Point>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HullLocation {
    Outside,
    Inside,
    /// On the boundary, but not at a vertex.
    OnEdge,
    Vertex(usize),
}

impl Barrier {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_segments<'a>(&'a self, c: &'a Component) -> impl Iterator<Item = &'a Segment> + 'a {
        c.segment_indices.iter().map(move |&i| &self.segments[i])
    }

    /// Segment endpoints, deduplicated and sorted.
    pub fn endpoints(&self) -> Vec<Point> {
        let mut pts: Vec<Point> = self.segments.iter().flat_map(|s| [s.a().clone(), s.b().clone()]).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.segments.iter().any(|s| s.contains(p))
    }

    /// Hull vertices of every component, in component order.
    pub fn hull_vertices(&self) -> impl Iterator<Item = &Point> {
        self.components.iter().flat_map(|c| c.hull.vertices.iter())
    }
}

impl Component {
    pub fn segment_indices(&self) -> &[usize] {
        &self.segment_indices
    }

    pub fn hull(&self) -> &ConvexHull {
        &self.hull
    }
}

impl ConvexHull {
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn locate(&self, p: &Point) -> HullLocation {
        if let Some(i) = self.vertices.iter().position(|v| v == p) {
            return HullLocation::Vertex(i);
        }
        let h = self.vertices.len();
        if h < 3 {
            let seg = Segment::new(self.vertices[0].clone(), self.vertices[h - 1].clone());
            return match seg {
                Ok(s) if s.contains(p) => HullLocation::OnEdge,
                _ => HullLocation::Outside,
            };
        }
        let mut on_edge = false;
        for i in 0..h {
            match orientation(&self.vertices[i], &self.vertices[(i + 1) % h], p) {
                Orientation::Clockwise => return HullLocation::Outside,
                Orientation::Collinear => on_edge = true,
                Orientation::CounterClockwise => {}
            }
        }
        if on_edge {
            HullLocation::OnEdge
        } else {
            HullLocation::Inside
        }
    }

    /// Inside or on the boundary.
    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) != HullLocation::Outside
    }
}

/// Validates raw segments and builds the component structure.
///
/// Zero-length segments are rejected; exact duplicates (in either endpoint
/// order) are dropped, keeping the first occurrence.
pub fn validate_and_build(raw: Vec<(Point, Point)>) -> Result<Barrier, BarrierError> {
    if raw.is_empty() {
        return Err(BarrierError::Empty);
    }
    let mut segments: Vec<Segment> = Vec::with_capacity(raw.len());
    for (index, (a, b)) in raw.into_iter().enumerate() {
        let seg = Segment::new(a, b).map_err(|_| BarrierError::ZeroLength { index })?.canonical();
        if !segments.contains(&seg) {
            segments.push(seg);
        }
    }
    let components = connected_components(&segments)
        .into_iter()
        .map(|segment_indices| {
            let hull =
                convex_hull(segment_indices.iter().flat_map(|&i| [segments[i].a().clone(), segments[i].b().clone()]));
            Component { segment_indices, hull }
        })
        .collect();
    Ok(Barrier { segments, components })
}

/// Partition of segment indices by the transitive closure of closed-segment
/// intersection. Components are ordered by their smallest member.
pub fn connected_components(segments: &[Segment]) -> Vec<Vec<usize>> {
    let n = segments.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if segments_intersect(&segments[i], &segments[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: Vec<Option<usize>> = alloc::vec![None; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        match slot[r] {
            Some(g) => groups[g].push(i),
            None => {
                slot[r] = Some(groups.len());
                groups.push(alloc::vec![i]);
            }
        }
    }
    groups
}

/// Convex hull by monotone chain. Collinear boundary points are dropped.
pub fn convex_hull(points: impl IntoIterator<Item = Point>) -> ConvexHull {
    let mut pts: Vec<Point> = points.into_iter().collect();
    pts.sort();
    pts.dedup();
    assert!(!pts.is_empty(), "hull of an empty point set");
    if pts.len() < 3 {
        return ConvexHull { vertices: pts };
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: alloc::boxed::Box<dyn Iterator<Item = &Point>> =
            if pass == 0 { alloc::boxed::Box::new(pts.iter()) } else { alloc::boxed::Box::new(pts.iter().rev()) };
        for p in iter {
            while hull.len() >= start + 2
                && orientation(&hull[hull.len() - 2], &hull[hull.len() - 1], p) != Orientation::CounterClockwise
            {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    if hull.len() < 3 {
        // Everything collinear: keep the two extremes.
        hull = alloc::vec![pts[0].clone(), pts[pts.len() - 1].clone()];
    }
    ConvexHull { vertices: hull }
}

/// Tangency vertices of `hull` seen from `p`.
///
/// Returns `(first, second)` such that the hull lies in the cone swept
/// counterclockwise from ray `p -> first` to ray `p -> second`. When a tangent
/// line contains a hull edge the vertex nearer to `p` is returned.
pub fn tangents_from_external_point(p: &Point, hull: &ConvexHull) -> Result<(Point, Point), TangentError> {
    if hull.locate(p) != HullLocation::Outside {
        return Err(TangentError::NotExternal);
    }
    let (i, j) = tangent_indices(p, &hull.vertices)?;
    Ok((hull.vertices[i].clone(), hull.vertices[j].clone()))
}

/// Binary search for the tangency vertices of a convex polygon (CCW, strictly
/// convex, or two points) from a point known to be outside it.
pub(crate) fn tangent_indices(p: &Point, v: &[Point]) -> Result<(usize, usize), TangentError> {
    let h = v.len();
    let turn = |i: usize, j: usize| orientation(p, &v[i % h], &v[j % h]).signum();
    if h < 2 {
        return Err(TangentError::NotExternal);
    }
    // Start at an edge that is not aligned with p.
    let k = if turn(0, 1) != 0 {
        0
    } else if h > 2 && turn(1, 2) != 0 {
        1
    } else {
        return Err(TangentError::CollinearWithSegment);
    };
    // Work in the frame where the angle (seen from p) increases along edge k.
    let sigma = turn(k, k + 1);
    let edge = |j: usize| sigma * turn(k + j, k + j + 1);
    let above = |j: usize| sigma * turn(k, k + j) > 0;

    // Vertices k+1 ..= k+a are angularly beyond v[k]; the far extreme is among them.
    let a = partition_point(1, h, above) - 1;
    let top = partition_point(0, a + 1, |j| edge(j) > 0);
    let bottom = partition_point(a, h, |j| edge(j) < 0);

    let nearer = |j: usize| {
        let (x, y) = ((k + j) % h, (k + j + 1) % h);
        if edge(j) == 0 && p.squared_distance(&v[y]) < p.squared_distance(&v[x]) {
            y
        } else {
            x
        }
    };
    let max_idx = nearer(top);
    let min_idx = if bottom == h { k } else { nearer(bottom) };
    if sigma > 0 {
        Ok((min_idx, max_idx))
    } else {
        Ok((max_idx, min_idx))
    }
}

/// First index in `[lo, hi)` where `pred` fails, assuming it holds on a prefix.
fn partition_point(lo: usize, hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    let (mut lo, mut hi) = (lo, hi);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::ratio;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn raw(list: &[((i64, i64), (i64, i64))]) -> Vec<(Point, Point)> {
        list.iter().map(|&(a, b)| (p(a.0, a.1), p(b.0, b.1))).collect()
    }

    /// O(h) reference: a vertex is a tangency vertex when every other vertex
    /// lies on one closed side of the line through it and p.
    fn brute_tangents(q: &Point, v: &[Point]) -> (Point, Point) {
        let pick = |want: Orientation| {
            v.iter()
                .filter(|t| v.iter().all(|w| orientation(q, t, w) != want))
                .min_by(|a, b| q.squared_distance(a).cmp(&q.squared_distance(b)))
                .unwrap()
                .clone()
        };
        (pick(Orientation::Clockwise), pick(Orientation::CounterClockwise))
    }

    #[test]
    fn components_examples() {
        let b = validate_and_build(raw(&[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((3, 3), (4, 3))])).unwrap();
        let parts: Vec<_> = b.components().iter().map(|c| c.segment_indices().to_vec()).collect();
        assert_eq!(parts, alloc::vec![alloc::vec![0, 1], alloc::vec![2]]);

        let b = validate_and_build(raw(&[((0, 0), (2, 2)), ((0, 2), (2, 0))])).unwrap();
        assert_eq!(b.components().len(), 1);

        assert_eq!(validate_and_build(raw(&[((0, 0), (0, 0))])).unwrap_err(), BarrierError::ZeroLength { index: 0 });
        assert_eq!(validate_and_build(Vec::new()).unwrap_err(), BarrierError::Empty);
    }

    #[test]
    fn connected_components_examples() {
        let square = raw(&[((0, 0), (1, 0)), ((1, 0), (1, 1)), ((1, 1), (0, 1)), ((0, 1), (0, 0))]);
        assert_eq!(validate_and_build(square).unwrap().components().len(), 1);

        let disjoint = raw(&[((0, 0), (1, 0)), ((0, 2), (1, 2)), ((0, 4), (1, 4))]);
        assert_eq!(validate_and_build(disjoint).unwrap().components().len(), 3);

        let chain = raw(&[((0, 0), (2, 0)), ((2, 0), (2, 2)), ((2, 2), (4, 2))]);
        let b = validate_and_build(chain).unwrap();
        assert_eq!(b.components().len(), 1);
        assert!(!segments_intersect(&b.segments()[0], &b.segments()[2]));
    }

    #[test]
    fn duplicates_dropped() {
        let b = validate_and_build(raw(&[((0, 0), (1, 0)), ((1, 0), (0, 0)), ((0, 0), (1, 0))])).unwrap();
        assert_eq!(b.segments().len(), 1);
        // Overlapping but distinct collinear segments are kept.
        let b = validate_and_build(raw(&[((0, 0), (2, 0)), ((1, 0), (3, 0))])).unwrap();
        assert_eq!(b.segments().len(), 2);
        assert_eq!(b.components().len(), 1);
        assert_eq!(b.components()[0].hull().vertices(), &[p(0, 0), p(3, 0)]);
    }

    #[test]
    fn hull_examples() {
        let h = convex_hull([p(0, 0), p(1, 0), p(1, 0), p(1, 1)]);
        assert_eq!(h.vertices(), &[p(0, 0), p(1, 0), p(1, 1)]);
        assert!(!h.is_degenerate());

        let h = convex_hull([p(0, -1), p(0, 1)]);
        assert!(h.is_degenerate());
        assert_eq!(h.vertices().len(), 2);

        let corners = [p(0, 0), p(1, 0), p(1, 1), p(0, 1)];
        let h = convex_hull(corners.iter().cloned().chain([p(1, 0), p(0, 0)]));
        assert_eq!(h.vertices(), &corners);

        // collinear interior endpoints are not vertices
        let h = convex_hull([p(0, 0), p(1, 0), p(2, 0), p(2, 2)]);
        assert_eq!(h.vertices(), &[p(0, 0), p(2, 0), p(2, 2)]);
        let h = convex_hull([p(0, 0), p(1, 1), p(2, 2), p(3, 3)]);
        assert_eq!(h.vertices(), &[p(0, 0), p(3, 3)]);
    }

    #[test]
    fn hull_locate() {
        let h = convex_hull([p(0, 0), p(4, 0), p(0, 4)]);
        assert_eq!(h.locate(&p(1, 1)), HullLocation::Inside);
        assert_eq!(h.locate(&p(2, 0)), HullLocation::OnEdge);
        assert_eq!(h.locate(&p(4, 0)), HullLocation::Vertex(1));
        assert_eq!(h.locate(&p(3, 3)), HullLocation::Outside);
        let s = convex_hull([p(0, 0), p(2, 0)]);
        assert_eq!(s.locate(&p(1, 0)), HullLocation::OnEdge);
        assert_eq!(s.locate(&p(3, 0)), HullLocation::Outside);
    }

    #[test]
    fn tangent_examples() {
        let seg = convex_hull([p(0, -1), p(0, 1)]);
        assert_eq!(tangents_from_external_point(&p(2, 0), &seg).unwrap(), (p(0, 1), p(0, -1)));

        let square = convex_hull([p(0, 0), p(1, 0), p(1, 1), p(0, 1)]);
        let from = p(3, 0);
        let got = tangents_from_external_point(&from, &square).unwrap();
        // (1,0) is nearer than (0,0) on the tangent line y = 0.
        assert_eq!(got, brute_tangents(&from, square.vertices()));
        assert_eq!(got, (p(1, 1), p(1, 0)));

        let from = Point::new(ratio(1, 2), ratio(3, 1));
        let got = tangents_from_external_point(&from, &square).unwrap();
        assert_eq!(got, brute_tangents(&from, square.vertices()));
        assert_eq!(got, (p(0, 1), p(1, 1)));

        assert_eq!(
            tangents_from_external_point(&Point::new(ratio(1, 2), ratio(1, 2)), &square),
            Err(TangentError::NotExternal)
        );
        assert_eq!(tangents_from_external_point(&p(1, 1), &square), Err(TangentError::NotExternal));
        assert_eq!(tangents_from_external_point(&p(0, 5), &seg), Err(TangentError::CollinearWithSegment));
    }

    #[test]
    fn tangents_match_brute_force_exhaustively_on_small_polygons() {
        let polys = [
            convex_hull([p(0, 0), p(4, 0), p(0, 4)]),
            convex_hull([p(0, 0), p(2, 0), p(3, 1), p(3, 3), p(1, 4), p(-1, 2)]),
            convex_hull([p(-2, -1), p(2, -1), p(2, 1), p(-2, 1)]),
            convex_hull([p(0, 0), p(5, 1), p(3, 2), p(1, 1)]),
        ];
        for poly in &polys {
            for x in -6..=8 {
                for y in -6..=8 {
                    let q = p(x, y);
                    if poly.locate(&q) != HullLocation::Outside {
                        continue;
                    }
                    let got = tangents_from_external_point(&q, poly).unwrap();
                    assert_eq!(got, brute_tangents(&q, poly.vertices()), "from {:?} to {:?}", q, poly);
                }
            }
        }
    }
}
