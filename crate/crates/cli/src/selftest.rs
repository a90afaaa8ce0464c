//! Randomized self-test: builds barriers, runs the full pipeline and checks
//! every structural invariant and the oracle agreement.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use num_traits::{Signed, Zero};
use opaque_coverage::arrangement::{convex_location, face_depths_by_traversal};
use opaque_coverage::barrier::{convex_hull, validate_and_build, Barrier};
use opaque_coverage::coverage::{analyze, polygon_area, CoverageAnalysis};
use opaque_coverage::geom::{line_through, orientation, ratio, Line, Orientation};
use opaque_coverage::oracle::is_blocked;
use opaque_coverage::{Point, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::io::InputDocument;

/// Random sample points checked per instance.
pub const SAMPLES_PER_INSTANCE: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub count: usize,
    pub max_segments: usize,
    pub bound: i64,
    pub seed: u64,
}

#[derive(Clone, Debug)]
pub struct InstanceReport {
    pub index: usize,
    pub seed: u64,
    pub input: InputDocument,
    pub faces: usize,
    pub regions: usize,
    pub isolated: usize,
    pub vertices: usize,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug)]
pub struct SelftestReport {
    pub instances: Vec<InstanceReport>,
}

impl SelftestReport {
    pub fn failures(&self) -> usize {
        self.instances.iter().filter(|i| !i.violations.is_empty()).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    /// Deterministic text report.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for inst in &self.instances {
            let status = if inst.violations.is_empty() { "ok" } else { "FAIL" };
            let _ = writeln!(
                out,
                "instance {} seed {}: {status} (segments {}, faces {}, vertices {}, regions {}, isolated {})",
                inst.index,
                inst.seed,
                inst.input.segments.len(),
                inst.faces,
                inst.vertices,
                inst.regions,
                inst.isolated
            );
            for v in &inst.violations {
                let _ = writeln!(out, "  {}: {}", v.check, v.detail);
            }
            if !inst.violations.is_empty() {
                let compact: String = inst.input.to_json().split_whitespace().collect();
                let _ = writeln!(out, "  input: {compact}");
            }
        }
        let _ = writeln!(out, "selftest: {} instances, {} failed", self.instances.len(), self.failures());
        out
    }
}

/// Between 1 and `max_segments` segments with integer endpoints in
/// `[-bound, bound]`, none of zero length.
pub fn random_input(rng: &mut impl Rng, max_segments: usize, bound: i64) -> InputDocument {
    let count = rng.gen_range(1..=max_segments.max(1));
    let point =
        |rng: &mut dyn rand::RngCore| Point::from_ints(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound));
    let mut segments = Vec::with_capacity(count);
    while segments.len() < count {
        let (a, b) = (point(rng), point(rng));
        if a != b {
            segments.push((a, b));
        }
    }
    InputDocument { segments }
}

pub fn run(config: &SelftestConfig) -> SelftestReport {
    let instances = (0..config.count)
        .map(|index| {
            let seed = config.seed.wrapping_add(index as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let input = random_input(&mut rng, config.max_segments, config.bound);
            let barrier = input.to_barrier().expect("generated segments have length");
            let analysis = analyze(&barrier);
            let violations = check_analysis(&barrier, &analysis, &mut rng, SAMPLES_PER_INSTANCE);
            InstanceReport {
                index,
                seed,
                input,
                faces: analysis.arrangement.faces().len(),
                regions: analysis.result.regions.len(),
                isolated: analysis.result.isolated_points.len(),
                vertices: analysis.arrangement.vertices().len(),
                violations,
            }
        })
        .collect();
    SelftestReport { instances }
}

/// Runs the full pipeline on `barrier` and checks it.
pub fn check_barrier(barrier: &Barrier, rng: &mut impl Rng, samples: usize) -> (CoverageAnalysis, Vec<Violation>) {
    let analysis = analyze(barrier);
    let violations = check_analysis(barrier, &analysis, rng, samples);
    (analysis, violations)
}

/// Removes vertices that lie on the segment joining their neighbours and
/// starts the cycle at its smallest vertex.
pub fn strip_collinear(cycle: &[Point]) -> Vec<Point> {
    let n = cycle.len();
    let kept: Vec<Point> = (0..n)
        .filter(|&i| orientation(&cycle[(i + n - 1) % n], &cycle[i], &cycle[(i + 1) % n]) != Orientation::Collinear)
        .map(|i| cycle[i].clone())
        .collect();
    rotate_to_min(kept)
}

pub fn rotate_to_min(mut cycle: Vec<Point>) -> Vec<Point> {
    if let Some(k) = (0..cycle.len()).min_by(|&i, &j| cycle[i].cmp(&cycle[j])) {
        cycle.rotate_left(k);
    }
    cycle
}

/// Twice the summed face area, evaluated exactly but in an order that keeps
/// denominators small: shoelace terms of an edge and its reverse cancel, and
/// the uncancelled edges must close into one cycle whose shoelace sum is
/// taken in order. Compared against `area`.
fn area_partition<'a>(faces: impl IntoIterator<Item = &'a [Point]>, area: &Rational) -> Result<(), String> {
    let mut open: BTreeSet<(&Point, &Point)> = BTreeSet::new();
    for boundary in faces {
        let n = boundary.len();
        for k in 0..n {
            let (u, v) = (&boundary[k], &boundary[(k + 1) % n]);
            if !open.remove(&(v, u)) && !open.insert((u, v)) {
                return Err(format!("edge {u} -> {v} bounds two faces on the same side"));
            }
        }
    }
    let next: BTreeMap<&Point, &Point> = open.iter().map(|&(u, v)| (u, v)).collect();
    if next.len() != open.len() {
        return Err("uncancelled edges branch".to_string());
    }
    let Some((&start, _)) = next.iter().next() else {
        return Err("no uncancelled edges".to_string());
    };
    let (mut twice, mut at, mut steps) = (Rational::zero(), start, 0);
    loop {
        let to = next.get(at).ok_or_else(|| format!("uncancelled edges end at {at}"))?;
        twice += &at.x * &to.y - &to.x * &at.y;
        steps += 1;
        at = to;
        if at == start {
            break;
        }
    }
    if steps != next.len() {
        return Err(format!("uncancelled edges form more than one cycle ({steps} of {})", next.len()));
    }
    let two = Rational::from_integer(2.into());
    if twice != area * &two {
        return Err(format!("face areas sum to {}, box area {area}", twice / two));
    }
    Ok(())
}

/// Checks an analysis of `barrier` against every invariant and the oracle.
pub fn check_analysis(barrier: &Barrier, a: &CoverageAnalysis, rng: &mut impl Rng, samples: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut fail = |check: &'static str, detail: String| out.push(Violation { check, detail });
    let arr = &a.arrangement;
    let full = a.full_depth();
    let is_full: Vec<bool> = a.depths.iter().map(|&d| d == full).collect();
    let result = &a.result;

    if let Err(e) = area_partition(arr.faces().iter().map(|f| f.boundary.as_slice()), &arr.clip().area()) {
        fail("area-partition", e);
    }
    match face_depths_by_traversal(arr, &a.systems) {
        Ok(d) if d == a.depths => {}
        Ok(d) => {
            let f = (0..d.len()).find(|&f| d[f] != a.depths[f]).unwrap_or(0);
            fail("depth-traversal", format!("face {f}: traversal depth {:?}, direct {:?}", d.get(f), a.depths.get(f)));
        }
        Err(e) => fail("depth-traversal", e.to_string()),
    }
    if arr.euler_characteristic() != 2 {
        fail("euler", format!("V - E + F = {}", arr.euler_characteristic()));
    }
    for (i, f) in arr.faces().iter().enumerate() {
        let n = f.boundary.len();
        let turns: Vec<Orientation> =
            (0..n).map(|k| orientation(&f.boundary[k], &f.boundary[(k + 1) % n], &f.boundary[(k + 2) % n])).collect();
        if turns.contains(&Orientation::Clockwise) || !turns.contains(&Orientation::CounterClockwise) {
            fail("convex-faces", format!("face {i} is not convex"));
        }
        if convex_location(&f.boundary, &f.representative) != Some(true) {
            fail("convex-faces", format!("face {i} representative {} not interior", f.representative));
        }
    }

    for (r, region) in result.regions.iter().enumerate() {
        if !region.area.is_positive() {
            fail("regions", format!("region {r} has area {}", region.area));
        }
        let holes: Rational = region.holes.iter().map(|h| polygon_area(h)).sum();
        if polygon_area(&region.boundary) + holes != region.area {
            fail("regions", format!("region {r} boundary does not enclose its area"));
        }
    }
    for p in &result.isolated_points {
        if barrier.contains_point(p) {
            fail("regions", format!("isolated point {p} lies on the barrier"));
        }
    }

    let endpoints = barrier.endpoints();
    let mut tangent_lines: BTreeSet<Line> = BTreeSet::new();
    for i in 0..endpoints.len() {
        for j in i + 1..endpoints.len() {
            if let Ok(l) = line_through(&endpoints[i], &endpoints[j]) {
                tangent_lines.insert(l);
            }
        }
    }
    for (r, region) in result.regions.iter().enumerate() {
        for cycle in std::iter::once(&region.boundary).chain(region.holes.iter()) {
            let n = cycle.len();
            for k in 0..n {
                let ok = line_through(&cycle[k], &cycle[(k + 1) % n]).is_ok_and(|l| tangent_lines.contains(&l));
                if !ok {
                    fail(
                        "edge-lines",
                        format!("region {r} edge {} -> {} is not on an endpoint line", cycle[k], cycle[(k + 1) % n]),
                    );
                }
            }
        }
    }

    for (i, f) in arr.faces().iter().enumerate() {
        let blocked = is_blocked(&f.representative, barrier).blocked;
        if blocked != is_full[i] {
            fail(
                "oracle",
                format!(
                    "face {i} at {}: depth {} of {full}, oracle blocked = {blocked}",
                    f.representative, a.depths[i]
                ),
            );
        }
    }
    for p in &result.isolated_points {
        if !is_blocked(p, barrier).blocked {
            fail("oracle", format!("isolated point {p} is oracle-clear"));
        }
    }

    let hull = convex_hull(endpoints.iter().cloned());
    for region in &result.regions {
        if let Some(v) = region.boundary.iter().find(|v| !hull.contains(v)) {
            fail("hull", format!("region vertex {v} outside the barrier hull"));
        }
    }
    for p in result.isolated_points.iter().filter(|p| !hull.contains(p)) {
        fail("hull", format!("isolated point {p} outside the barrier hull"));
    }

    if barrier.components().len() == 1 {
        let component_hull = barrier.components()[0].hull();
        if component_hull.is_degenerate() {
            if !result.regions.is_empty() {
                fail("connected-hull", format!("collinear barrier has {} regions", result.regions.len()));
            }
        } else if result.regions.len() != 1 {
            fail("connected-hull", format!("connected barrier has {} regions", result.regions.len()));
        } else {
            let region = &result.regions[0];
            let expected = rotate_to_min(component_hull.vertices().to_vec());
            if region.area != polygon_area(component_hull.vertices()) {
                fail("connected-hull", format!("region area {} differs from hull area", region.area));
            }
            if strip_collinear(&region.boundary) != expected || !region.holes.is_empty() {
                fail("connected-hull", "region boundary differs from the hull".to_string());
            }
        }
    }

    for p in &result.isolated_points {
        match arr.vertices().iter().find(|v| v.point == *p) {
            Some(v) if v.lines.len() >= 3 => {}
            Some(v) => fail("isolated-lines", format!("isolated point {p} lies on {} lines", v.lines.len())),
            None => fail("isolated-lines", format!("isolated point {p} is not an arrangement vertex")),
        }
    }

    let isolated: BTreeSet<&Point> = result.isolated_points.iter().collect();
    for (v, vertex) in arr.vertices().iter().enumerate() {
        if vertex.on_boundary {
            continue;
        }
        let blocked = is_blocked(&vertex.point, barrier).blocked;
        let in_region = a.vertex_in_regions(v);
        let expected = in_region || barrier.contains_point(&vertex.point) || isolated.contains(&vertex.point);
        if blocked != expected {
            fail(
                "vertices",
                format!(
                    "vertex {} on {} lines: oracle blocked = {blocked}, pipeline = {expected}",
                    vertex.point,
                    vertex.lines.len()
                ),
            );
        }
    }

    let full_faces: Vec<&[Point]> =
        arr.faces().iter().zip(&is_full).filter(|(_, &f)| f).map(|(f, _)| f.boundary.as_slice()).collect();
    let reach = arr
        .clip()
        .max()
        .x
        .ceil()
        .numer()
        .clone()
        .max(-arr.clip().min().x.floor().numer())
        .max(arr.clip().max().y.ceil().numer().clone())
        .max(-arr.clip().min().y.floor().numer());
    let reach = i64::try_from(reach).unwrap_or(i64::MAX / 64).min(1 << 20);
    for _ in 0..samples {
        let den = rng.gen_range(1..=8i64);
        let q = Point::new(
            ratio(rng.gen_range(-reach * den..=reach * den), den),
            ratio(rng.gen_range(-reach * den..=reach * den), den),
        );
        let expected = barrier.contains_point(&q)
            || isolated.contains(&q)
            || full_faces.iter().any(|f| convex_location(f, &q).is_some());
        let verdict = is_blocked(&q, barrier);
        if verdict.blocked != expected {
            fail("samples", format!("point {q}: oracle blocked = {}, pipeline = {expected}", verdict.blocked));
        }
    }
    out
}

/// Checks the generator's output: pairwise disjoint segments, one component
/// each.
pub fn check_generated(input: &InputDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    match validate_and_build(input.segments.clone()) {
        Ok(b) if b.components().len() == input.segments.len() => {}
        Ok(b) => out.push(Violation {
            check: "generator",
            detail: format!("{} segments form {} components", input.segments.len(), b.components().len()),
        }),
        Err(e) => out.push(Violation { check: "generator", detail: e.to_string() }),
    }
    out
}
