//! Per-vertex wedge systems.
//!
//! For a hull vertex `p` and a component `B_i`, the wedge at `p` is a closed
//! double-wedge with apex `p` (or empty, or the whole plane) that contains the
//! component's hull. Each wedge is kept in two views: its two boundary lines,
//! which feed the arrangement, and the closed arc of line directions through
//! `p` that it spans, which decides point membership.

use alloc::vec::Vec;

use crate::barrier::{tangent_indices, Barrier, Component, HullLocation};
use crate::geom::{direction_between, direction_towards, line_through, Direction, Line, Point};

/// Which of the four wedge definitions applies to a (point, component) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WedgeCase {
    /// The component is collinear and the point lies on its supporting line.
    CollinearEmpty,
    /// The point is a vertex of a non-degenerate hull.
    VertexDoubleWedge,
    /// The point is inside the hull or on its boundary.
    InsideFullPlane,
    /// The point is outside the hull.
    ExternalDoubleWedge,
}

/// A closed arc of line directions, swept counterclockwise from `start` to
/// `end`. It wraps past angle `pi` when `end < start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: Direction,
    pub end: Direction,
}

impl Arc {
    pub fn new(start: Direction, end: Direction) -> Self {
        Arc { start, end }
    }

    pub fn wraps(&self) -> bool {
        self.end < self.start
    }

    pub fn contains(&self, d: &Direction) -> bool {
        if self.wraps() {
            *d >= self.start || *d <= self.end
        } else {
            self.start <= *d && *d <= self.end
        }
    }
}

/// A normalized union of closed direction arcs.
///
/// Arcs are pairwise disjoint (touching arcs are merged), sorted by start, and
/// at most the last one wraps.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DirectionIntervalSet {
    full: bool,
    arcs: Vec<Arc>,
}

impl DirectionIntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        DirectionIntervalSet { full: true, arcs: Vec::new() }
    }

    pub fn from_arcs(arcs: impl IntoIterator<Item = Arc>) -> Self {
        // Cut wrapping arcs at pi; `None` marks the upper end pi.
        let mut pieces: Vec<(Direction, Option<Direction>)> = Vec::new();
        for arc in arcs {
            if arc.wraps() {
                pieces.push((arc.start, None));
                pieces.push((Direction::horizontal(), Some(arc.end)));
            } else {
                pieces.push((arc.start, Some(arc.end)));
            }
        }
        pieces.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Direction, Option<Direction>)> = Vec::new();
        for (start, end) in pieces {
            if let Some(last) = merged.last_mut() {
                let touches = match &last.1 {
                    None => true,
                    Some(e) => start <= *e,
                };
                if touches {
                    last.1 = match (last.1.take(), end) {
                        (Some(a), Some(b)) => Some(if a >= b { a } else { b }),
                        _ => None,
                    };
                    continue;
                }
            }
            merged.push((start, end));
        }
        let closes_loop = matches!(merged.first(), Some((s, _)) if *s == Direction::horizontal())
            && matches!(merged.last(), Some((_, None)));
        if closes_loop {
            if merged.len() == 1 {
                return Self::full();
            }
            let (_, first_end) = merged.remove(0);
            let (last_start, _) = merged.pop().unwrap();
            merged.push((last_start, first_end));
        }
        let arcs = merged.into_iter().map(|(s, e)| Arc::new(s, e.expect("open ends were closed above"))).collect();
        DirectionIntervalSet { full: false, arcs }
    }

    pub fn union(&self, other: &Self) -> Self {
        if self.full || other.full {
            return Self::full();
        }
        Self::from_arcs(self.arcs.iter().chain(other.arcs.iter()).cloned())
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, d: &Direction) -> bool {
        self.full || self.arcs.iter().any(|a| a.contains(d))
    }

    /// Directions at which membership changes: endpoints of arcs with
    /// nonzero length.
    pub fn boundary_directions(&self) -> Vec<Direction> {
        let mut out: Vec<Direction> =
            self.arcs.iter().filter(|a| a.start != a.end).flat_map(|a| [a.start.clone(), a.end.clone()]).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Closed double-wedge: the pair of vertical angles between two lines through
/// `apex` that holds the directions of `arc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleWedge {
    pub apex: Point,
    pub line1: Line,
    pub line2: Line,
    pub arc: Arc,
}

impl DoubleWedge {
    /// Wedge through the rays `apex -> from` and `apex -> to`, the cone swept
    /// counterclockwise between them being less than a half turn.
    fn spanning(apex: &Point, from: &Point, to: &Point) -> DoubleWedge {
        DoubleWedge {
            apex: apex.clone(),
            line1: line_through(apex, from).expect("wedge ray has length"),
            line2: line_through(apex, to).expect("wedge ray has length"),
            arc: Arc::new(
                direction_between(apex, from).expect("wedge ray has length"),
                direction_between(apex, to).expect("wedge ray has length"),
            ),
        }
    }

    pub fn contains(&self, q: &Point) -> bool {
        match direction_towards(&self.apex, q) {
            Some(d) => self.arc.contains(&d),
            None => true,
        }
    }
}

/// The wedge of one component at one point.
#[derive(Clone, Debug)]
pub struct ComponentWedge {
    pub component: usize,
    pub case: WedgeCase,
    pub wedge: Option<DoubleWedge>,
    pub arcs: DirectionIntervalSet,
}

/// All component wedges at one hull vertex, and their union.
#[derive(Clone, Debug)]
pub struct VertexWedgeSystem {
    pub vertex: Point,
    pub wedges: Vec<ComponentWedge>,
    pub union: DirectionIntervalSet,
    /// Every wedge boundary line, deduplicated and sorted. All pass through
    /// `vertex`.
    pub boundary_lines: Vec<Line>,
}

impl VertexWedgeSystem {
    /// Membership of `q` in the union of the wedges, as a point set.
    pub fn contains_point(&self, q: &Point) -> bool {
        match direction_towards(&self.vertex, q) {
            Some(d) => self.union.contains(&d),
            None => true,
        }
    }
}

pub fn classify_wedge_case(p: &Point, comp: &Component) -> WedgeCase {
    let hull = comp.hull();
    if hull.is_degenerate() {
        let v = hull.vertices();
        return match line_through(&v[0], &v[v.len() - 1]) {
            Ok(line) if line.contains(p) => WedgeCase::CollinearEmpty,
            _ => WedgeCase::ExternalDoubleWedge,
        };
    }
    match hull.locate(p) {
        HullLocation::Vertex(_) => WedgeCase::VertexDoubleWedge,
        HullLocation::Inside | HullLocation::OnEdge => WedgeCase::InsideFullPlane,
        HullLocation::Outside => WedgeCase::ExternalDoubleWedge,
    }
}

/// Wedge of `comp` at `p`: the case, the double-wedge for the vertex and
/// external cases, and the spanned direction arcs.
pub fn wedge_of(p: &Point, comp: &Component) -> (WedgeCase, Option<DoubleWedge>, DirectionIntervalSet) {
    let case = classify_wedge_case(p, comp);
    let v = comp.hull().vertices();
    let wedge = match case {
        WedgeCase::CollinearEmpty => return (case, None, DirectionIntervalSet::empty()),
        WedgeCase::InsideFullPlane => return (case, None, DirectionIntervalSet::full()),
        WedgeCase::VertexDoubleWedge => {
            let h = v.len();
            let i = v.iter().position(|x| x == p).expect("vertex case");
            // Interior angle runs counterclockwise from the next vertex to the previous one.
            DoubleWedge::spanning(p, &v[(i + 1) % h], &v[(i + h - 1) % h])
        }
        WedgeCase::ExternalDoubleWedge => {
            let (first, second) = tangent_indices(p, v).expect("external point has two tangents");
            DoubleWedge::spanning(p, &v[first], &v[second])
        }
    };
    let arcs = DirectionIntervalSet::from_arcs([wedge.arc.clone()]);
    (case, Some(wedge), arcs)
}

pub fn vertex_wedge_system(p: &Point, barrier: &Barrier) -> VertexWedgeSystem {
    let mut wedges = Vec::with_capacity(barrier.components().len());
    let mut union = DirectionIntervalSet::empty();
    let mut boundary_lines = Vec::new();
    for (component, comp) in barrier.components().iter().enumerate() {
        let (case, wedge, arcs) = wedge_of(p, comp);
        union = union.union(&arcs);
        if let Some(w) = &wedge {
            boundary_lines.push(w.line1.clone());
            boundary_lines.push(w.line2.clone());
        }
        wedges.push(ComponentWedge { component, case, wedge, arcs });
    }
    boundary_lines.sort();
    boundary_lines.dedup();
    VertexWedgeSystem { vertex: p.clone(), wedges, union, boundary_lines }
}

/// One system per hull vertex of every component.
pub fn vertex_wedge_systems(barrier: &Barrier) -> Vec<VertexWedgeSystem> {
    barrier.hull_vertices().map(|p| vertex_wedge_system(p, barrier)).collect()
}
