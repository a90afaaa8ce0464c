//! Assembly of the coverage: full-depth faces merged into regions, the
//! barrier itself, and isolated blocked points.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::time::Duration;

use num_traits::{Signed, Zero};

use crate::arrangement::{face_depths, Arrangement, OUTER_FACE};
use crate::barrier::{validate_and_build, Barrier};
use crate::geom::{rat, Line, Point, Rational, Segment};
use crate::oracle::is_blocked;
use crate::wedge::{vertex_wedge_systems, VertexWedgeSystem};

/// A connected union of closed full-depth faces, joined across shared edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalRegion {
    /// Outer boundary, counterclockwise, starting at its smallest vertex.
    /// Collinear vertices are kept.
    pub boundary: Vec<Point>,
    /// Inner boundaries, clockwise, each starting at its smallest vertex.
    pub holes: Vec<Vec<Point>>,
    /// Constituent arrangement faces, ascending.
    pub faces: Vec<usize>,
    pub area: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverageStats {
    pub segments: usize,
    pub components: usize,
    /// Hull vertices over all components; also the full depth.
    pub hull_vertices: usize,
    pub lines: usize,
    pub faces: usize,
    pub full_depth_faces: usize,
    pub regions: usize,
    pub isolated_points: usize,
    /// Pairs of regions meeting at a single vertex, counted per vertex.
    pub shared_vertex_contacts: usize,
    /// Wall-clock time per stage; empty without the `std` feature.
    pub timings: Vec<(&'static str, Duration)>,
}

#[derive(Clone, Debug)]
pub struct CoverageResult {
    pub regions: Vec<MaximalRegion>,
    pub barrier_segments: Vec<Segment>,
    /// Sorted ascending.
    pub isolated_points: Vec<Point>,
    pub stats: CoverageStats,
}

/// Every intermediate of the pipeline, kept for checking.
#[derive(Clone, Debug)]
pub struct CoverageAnalysis {
    pub systems: Vec<VertexWedgeSystem>,
    pub arrangement: Arrangement,
    pub depths: Vec<usize>,
    pub result: CoverageResult,
}

impl CoverageAnalysis {
    pub fn full_depth(&self) -> usize {
        self.systems.len()
    }

    /// Full-depth flag per face.
    pub fn full_faces(&self) -> Vec<bool> {
        self.depths.iter().map(|&d| d == self.full_depth()).collect()
    }

    /// Whether arrangement vertex `v` is in the closure of some region.
    pub fn vertex_in_regions(&self, v: usize) -> bool {
        let full = self.full_depth();
        self.arrangement.faces_around(v).any(|f| self.depths[f] == full)
    }
}

struct Clock {
    #[cfg(feature = "std")]
    last: std::time::Instant,
    laps: Vec<(&'static str, Duration)>,
}

impl Clock {
    fn start() -> Clock {
        Clock {
            #[cfg(feature = "std")]
            last: std::time::Instant::now(),
            laps: Vec::new(),
        }
    }

    fn lap(&mut self, _stage: &'static str) {
        #[cfg(feature = "std")]
        {
            let now = std::time::Instant::now();
            self.laps.push((_stage, now - self.last));
            self.last = now;
        }
    }
}

pub fn compute_coverage(barrier: &Barrier) -> CoverageResult {
    analyze(barrier).result
}

pub fn analyze(barrier: &Barrier) -> CoverageAnalysis {
    let mut clock = Clock::start();
    let systems = vertex_wedge_systems(barrier);
    clock.lap("wedges");

    let lines: Vec<Line> = systems.iter().flat_map(|s| s.boundary_lines.iter().cloned()).collect();
    let endpoints = barrier.endpoints();
    let arrangement = Arrangement::enclosing(&lines, &endpoints).with_representatives_avoiding(barrier.segments());
    clock.lap("arrangement");

    let depths = face_depths(&arrangement, &systems).expect("arrangement built from system lines");
    clock.lap("depths");

    let full = systems.len();
    let is_full: Vec<bool> = depths.iter().map(|&d| d == full).collect();
    let regions = merge_full_depth_faces(&arrangement, &is_full);
    clock.lap("regions");

    let isolated_points = detect_isolated_points(&arrangement, barrier, &is_full);
    clock.lap("isolated");

    let stats = CoverageStats {
        segments: barrier.segments().len(),
        components: barrier.components().len(),
        hull_vertices: full,
        lines: arrangement.lines().len(),
        faces: arrangement.faces().len(),
        full_depth_faces: is_full.iter().filter(|&&f| f).count(),
        regions: regions.len(),
        isolated_points: isolated_points.len(),
        shared_vertex_contacts: shared_vertex_contacts(&arrangement, &regions),
        timings: clock.laps,
    };
    let result = CoverageResult { regions, barrier_segments: barrier.segments().to_vec(), isolated_points, stats };
    CoverageAnalysis { systems, arrangement, depths, result }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Groups flagged faces that share an edge and traces each group's boundary.
/// Regions are sorted by first boundary vertex.
pub fn merge_full_depth_faces(arr: &Arrangement, full: &[bool]) -> Vec<MaximalRegion> {
    let mut parent: Vec<usize> = (0..full.len()).collect();
    for (f, _) in full.iter().enumerate().filter(|(_, &x)| x) {
        for (_, g) in arr.neighbors(f) {
            if g != OUTER_FACE && full[g] {
                let (a, b) = (find(&mut parent, f), find(&mut parent, g));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for f in (0..full.len()).filter(|&f| full[f]) {
        let root = find(&mut parent, f);
        groups.entry(root).or_default().push(f);
    }

    let half_edges = arr.half_edges();
    let vertices = arr.vertices();
    let mut regions: Vec<MaximalRegion> = groups
        .into_values()
        .map(|faces| {
            let inside = |f: usize| f != OUTER_FACE && full[f] && find_in(&faces, f);
            let mut seen = BTreeSet::new();
            let mut cycles: Vec<Vec<Point>> = Vec::new();
            for &f in &faces {
                for &h in &arr.faces()[f].half_edges {
                    if inside(half_edges[half_edges[h].twin].face) || seen.contains(&h) {
                        continue;
                    }
                    let mut cycle = Vec::new();
                    let mut e = h;
                    while seen.insert(e) {
                        cycle.push(vertices[half_edges[e].origin].point.clone());
                        let mut c = half_edges[e].next;
                        while inside(half_edges[half_edges[c].twin].face) {
                            c = half_edges[half_edges[c].twin].next;
                        }
                        e = c;
                    }
                    cycles.push(rotate_to_min(cycle));
                }
            }
            let (outer, holes): (Vec<_>, Vec<_>) = cycles.into_iter().partition(|c| polygon_area(c).is_positive());
            let mut holes = holes;
            holes.sort();
            let boundary = outer.into_iter().next().expect("region has an outer boundary");
            let area = faces.iter().map(|&f| arr.faces()[f].area()).sum();
            MaximalRegion { boundary, holes, faces, area }
        })
        .collect();
    regions.sort_by(|a, b| a.boundary[0].cmp(&b.boundary[0]));
    regions
}

fn find_in(sorted: &[usize], f: usize) -> bool {
    sorted.binary_search(&f).is_ok()
}

fn rotate_to_min(mut cycle: Vec<Point>) -> Vec<Point> {
    let k = (0..cycle.len()).min_by(|&i, &j| cycle[i].cmp(&cycle[j])).unwrap_or(0);
    cycle.rotate_left(k);
    cycle
}

/// Signed area of a closed vertex cycle, positive when counterclockwise.
pub fn polygon_area(poly: &[Point]) -> Rational {
    let n = poly.len();
    let mut twice = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        twice += &p.x * &q.y - &q.x * &p.y;
    }
    twice / rat(2)
}

fn shared_vertex_contacts(arr: &Arrangement, regions: &[MaximalRegion]) -> usize {
    let mut owner = alloc::vec![usize::MAX; arr.faces().len()];
    for (r, region) in regions.iter().enumerate() {
        for &f in &region.faces {
            owner[f] = r;
        }
    }
    (0..arr.vertices().len())
        .map(|v| {
            let mut touching: Vec<usize> = arr.faces_around(v).map(|f| owner[f]).filter(|&r| r != usize::MAX).collect();
            touching.sort_unstable();
            touching.dedup();
            touching.len() * touching.len().saturating_sub(1) / 2
        })
        .sum()
}

/// Oracle-confirmed blocked vertices on at least three lines that are off
/// the box, off the barrier and outside every full-depth face closure.
pub fn detect_isolated_points(arr: &Arrangement, barrier: &Barrier, full: &[bool]) -> Vec<Point> {
    let candidates: Vec<&Point> = arr
        .vertices()
        .iter()
        .enumerate()
        .filter(|(v, vx)| {
            vx.lines.len() >= 3
                && !vx.on_boundary
                && !arr.faces_around(*v).any(|f| full[f])
                && !barrier.contains_point(&vx.point)
        })
        .map(|(_, vx)| &vx.point)
        .collect();
    let confirm = |p: &&Point| is_blocked(p, barrier).blocked;
    #[cfg(feature = "parallel")]
    let mut found: Vec<Point> = {
        use rayon::prelude::*;
        candidates.into_par_iter().filter(confirm).cloned().collect()
    };
    #[cfg(not(feature = "parallel"))]
    let mut found: Vec<Point> = candidates.into_iter().filter(confirm).cloned().collect();
    found.sort();
    found.dedup();
    found
}

/// Three disjoint segments whose coverage has an isolated point at the
/// origin. Seen from the origin their direction arcs tile the half circle,
/// meeting at `dir(1,0)`, `dir(1,1)` and `dir(-1,1)`; at each junction the two
/// generating endpoints lie on opposite rays, so every nearby point sees a gap.
pub fn pinwheel() -> Barrier {
    let seg = |a: (i64, i64), b: (i64, i64)| (Point::from_ints(a.0, a.1), Point::from_ints(b.0, b.1));
    validate_and_build(alloc::vec![seg((-2, 0), (-2, -2)), seg((1, 1), (-1, 1)), seg((3, -3), (3, 0))])
        .expect("valid fixture")
}
