use num_traits::{Signed, Zero};
use opaque_coverage::arrangement::{convex_location, face_depths, face_depths_by_traversal, OUTER_FACE};
use opaque_coverage::barrier::{convex_hull, tangents_from_external_point, validate_and_build, Barrier, HullLocation};
use opaque_coverage::coverage::{analyze, pinwheel, polygon_area};
use opaque_coverage::geom::{
    cross, line_meets_segment, line_through, orientation, ratio, Direction, Line, Orientation, Point, Rational,
};
use opaque_coverage::oracle::is_blocked;
use opaque_coverage::wedge::{vertex_wedge_system, wedge_of, Arc, DirectionIntervalSet, WedgeCase};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point> {
    (-16i64..=16, -16i64..=16, 1i64..=3).prop_map(|(x, y, d)| Point::new(ratio(x, d), ratio(y, d)))
}

fn int_point(bound: i64) -> impl Strategy<Value = Point> {
    (-bound..=bound, -bound..=bound).prop_map(|(x, y)| Point::from_ints(x, y))
}

fn barrier(max_segments: usize, bound: i64) -> impl Strategy<Value = Barrier> {
    prop::collection::vec((int_point(bound), int_point(bound)), 1..=max_segments)
        .prop_filter_map("zero-length segment", |raw| validate_and_build(raw).ok())
}

/// Every direction with small integer components, in angular order.
fn sample_directions() -> Vec<Direction> {
    let mut out: Vec<Direction> =
        (-12i64..=12).flat_map(|dx| (0i64..=12).filter_map(move |dy| Direction::from_ints(dx, dy))).collect();
    out.sort();
    out.dedup();
    out
}

fn hull_meets_line(hull: &[Point], line: &Line) -> bool {
    hull.iter().any(|v| !line.eval(v).is_positive()) && hull.iter().any(|v| !line.eval(v).is_negative())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn orientation_is_antisymmetric(a in point(), b in point(), c in point()) {
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &a, &c).reversed());
        prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &c, &a));
    }

    #[test]
    fn line_through_is_symmetric(a in point(), b in point()) {
        prop_assume!(a != b);
        let l = line_through(&a, &b).unwrap();
        prop_assert_eq!(&l, &line_through(&b, &a).unwrap());
        prop_assert!(l.contains(&a) && l.contains(&b));
    }

    #[test]
    fn tangents_match_brute_force(pts in prop::collection::vec(int_point(6), 2..8), q in point()) {
        let hull = convex_hull(pts);
        prop_assume!(hull.vertices().len() >= 2 && hull.locate(&q) == HullLocation::Outside);
        let v = hull.vertices();
        match tangents_from_external_point(&q, &hull) {
            Ok((first, second)) => {
                prop_assert!(v.iter().all(|w| orientation(&q, &first, w) != Orientation::Clockwise));
                prop_assert!(v.iter().all(|w| orientation(&q, &second, w) != Orientation::CounterClockwise));
                for t in [&first, &second] {
                    let nearest = v
                        .iter()
                        .filter(|w| orientation(&q, t, w) == Orientation::Collinear)
                        .min_by(|a, b| q.squared_distance(a).cmp(&q.squared_distance(b)))
                        .unwrap();
                    prop_assert_eq!(nearest, t);
                }
            }
            Err(_) => {
                prop_assert!(hull.is_degenerate());
                prop_assert!(line_through(&v[0], &v[1]).unwrap().contains(&q));
            }
        }
    }

    #[test]
    fn union_is_idempotent(raw in prop::collection::vec((-6i64..=6, 0i64..=6, -6i64..=6, 0i64..=6), 0..6)) {
        let arcs: Vec<Arc> = raw
            .into_iter()
            .filter_map(|(a, b, c, d)| Some(Arc::new(Direction::from_ints(a, b)?, Direction::from_ints(c, d)?)))
            .collect();
        let set = DirectionIntervalSet::from_arcs(arcs.clone());
        prop_assert_eq!(&set.union(&set), &set);
        if !set.is_full() {
            prop_assert_eq!(&DirectionIntervalSet::from_arcs(set.arcs().to_vec()), &set);
        }
        for d in sample_directions() {
            prop_assert_eq!(set.contains(&d), arcs.iter().any(|a| a.contains(&d)));
        }
        for w in set.arcs().windows(2) {
            prop_assert!(w[0].end < w[1].start);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn wedge_soundness_completeness_containment(b in barrier(4, 6), q in point()) {
        let directions = sample_directions();
        for comp in b.components() {
            let (case, wedge, arcs) = wedge_of(&q, comp);
            let hull = comp.hull().vertices();
            let segments: Vec<_> = b.component_segments(comp).collect();
            for d in &directions {
                let line = d.line_at(&q);
                if !arcs.contains(d) {
                    for s in &segments {
                        if !line_meets_segment(&line, s) {
                            continue;
                        }
                        match case {
                            WedgeCase::CollinearEmpty => {
                                prop_assert!(s.contains(&q) || (line.contains(s.a()) && line.contains(s.b())))
                            }
                            WedgeCase::VertexDoubleWedge => {
                                prop_assert!(s.contains(&q) && !(line.contains(s.a()) && line.contains(s.b())))
                            }
                            _ => prop_assert!(false, "line outside the wedge meets the component"),
                        }
                    }
                } else if matches!(case, WedgeCase::InsideFullPlane | WedgeCase::ExternalDoubleWedge) {
                    prop_assert!(hull_meets_line(hull, &line));
                }
            }
            match case {
                WedgeCase::VertexDoubleWedge | WedgeCase::ExternalDoubleWedge => {
                    let w = wedge.unwrap();
                    prop_assert!(w.line1.contains(&q) && w.line2.contains(&q));
                    prop_assert!(hull.iter().all(|v| w.contains(v)));
                }
                WedgeCase::InsideFullPlane => prop_assert!(arcs.is_full()),
                WedgeCase::CollinearEmpty => prop_assert!(arcs.is_empty()),
            }
        }
    }

    #[test]
    fn system_lines_cover_arc_endpoints(b in barrier(4, 6)) {
        for p in b.hull_vertices() {
            let s = vertex_wedge_system(p, &b);
            prop_assert!(s.boundary_lines.iter().all(|l| l.contains(p)));
            for d in s.union.boundary_directions() {
                prop_assert!(s.boundary_lines.contains(&d.line_at(p)));
            }
        }
    }

    #[test]
    fn oracle_witness_is_valid(b in barrier(5, 6), q in point()) {
        let v = is_blocked(&q, &b);
        prop_assert_eq!(v.blocked, v.coverage_arcs.is_full());
        prop_assert_eq!(v.blocked, v.witness.is_none());
        if let Some(d) = &v.witness {
            let line = d.line_at(&q);
            prop_assert!(b.segments().iter().all(|s| !line_meets_segment(&line, s)));
        }
    }

    #[test]
    fn oracle_arc_endpoints_meet_barrier(b in barrier(5, 6), q in point()) {
        let v = is_blocked(&q, &b);
        if !b.contains_point(&q) {
            for d in v.coverage_arcs.boundary_directions() {
                let line = d.line_at(&q);
                prop_assert!(b.segments().iter().any(|s| line_meets_segment(&line, s)));
            }
        }
    }

    #[test]
    fn oracle_is_monotone(
        raw in prop::collection::vec((int_point(6), int_point(6)), 1..=4),
        extra in prop::collection::vec((int_point(6), int_point(6)), 1..=3),
        q in point(),
    ) {
        let small = validate_and_build(raw.clone());
        let large = validate_and_build(raw.into_iter().chain(extra).collect());
        if let (Ok(small), Ok(large)) = (small, large) {
            if is_blocked(&q, &small).blocked {
                prop_assert!(is_blocked(&q, &large).blocked);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn arrangement_and_coverage_invariants(b in barrier(4, 5)) {
        let a = analyze(&b);
        let arr = &a.arrangement;

        let total: Rational = arr.faces().iter().map(|f| f.area()).sum();
        prop_assert_eq!(total, arr.clip().area());
        prop_assert_eq!(arr.euler_characteristic(), 2);
        for f in arr.faces() {
            let n = f.boundary.len();
            for i in 0..n {
                prop_assert!(!cross(&f.boundary[i], &f.boundary[(i + 1) % n], &f.boundary[(i + 2) % n]).is_negative());
            }
            prop_assert_eq!(convex_location(&f.boundary, &f.representative), Some(true));
        }
        for v in arr.vertices() {
            prop_assert!(v.on_boundary || v.lines.len() >= 2);
        }

        prop_assert_eq!(&face_depths(arr, &a.systems).unwrap(), &a.depths);
        prop_assert_eq!(&face_depths_by_traversal(arr, &a.systems).unwrap(), &a.depths);

        let full = a.full_depth();
        for (f, face) in arr.faces().iter().enumerate() {
            let blocked = is_blocked(&face.representative, &b).blocked;
            prop_assert_eq!(blocked, a.depths[f] == full, "face {} at {}", f, face.representative);
        }
        let hull = convex_hull(b.endpoints());
        for r in &a.result.regions {
            prop_assert!(r.area.is_positive());
            let holes: Rational = r.holes.iter().map(|h| polygon_area(h)).sum();
            prop_assert_eq!(polygon_area(&r.boundary) + holes, r.area.clone());
            prop_assert!(r.boundary.iter().all(|v| hull.contains(v)));
            for &f in &r.faces {
                for (_, g) in arr.neighbors(f) {
                    prop_assert!(g != OUTER_FACE);
                }
            }
        }
        for p in &a.result.isolated_points {
            prop_assert!(is_blocked(p, &b).blocked && !b.contains_point(p) && hull.contains(p));
        }
    }
}

#[test]
fn pinwheel_vertex_system_matches_sampling() {
    let b = pinwheel();
    let p = Point::from_ints(1, 1);
    let s = vertex_wedge_system(&p, &b);
    for d in sample_directions() {
        let line = d.line_at(&p);
        let hits_other = b.components().iter().any(|c| {
            let ps: Vec<_> = b.component_segments(c).collect();
            !ps.iter().any(|seg| seg.contains(&p)) && ps.iter().any(|seg| line_meets_segment(&line, seg))
        });
        assert_eq!(s.union.contains(&d), hits_other, "{d}");
    }
    assert!(!s.union.is_full());
}

#[test]
fn connected_barrier_fills_hull_area() {
    let pts = [(0, 0), (5, 1), (4, 6), (-2, 3)];
    let raw: Vec<_> =
        pts.windows(2).map(|w| (Point::from_ints(w[0].0, w[0].1), Point::from_ints(w[1].0, w[1].1))).collect();
    let b = validate_and_build(raw).unwrap();
    let a = analyze(&b);
    assert_eq!(a.result.regions.len(), 1);
    let hull = convex_hull(b.endpoints());
    assert_eq!(a.result.regions[0].area, polygon_area(hull.vertices()));
    assert!(!a.result.regions[0].area.is_zero());
}
