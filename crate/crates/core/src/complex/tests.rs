use super::*;
use crate::chain::BinaryChain;

fn torus_row(side: usize, y: usize) -> BinaryChain {
    (0..side).map(|x| 2 * (y * side + x)).collect()
}

fn torus_column(side: usize, x: usize) -> BinaryChain {
    (0..side).map(|y| 2 * (y * side + x) + 1).collect()
}

#[test]
fn torus_counts() {
    for (side, v) in [(2, 4), (4, 16), (5, 25)] {
        let t = build_torus(side).unwrap();
        assert_eq!(
            (t.vertex_count(), t.edge_count(), t.face_count()),
            (v, 2 * v, v)
        );
        assert_eq!(t.euler_characteristic(), 0);
        assert!(t.valences().iter().all(|&d| d == 4));
        let d = t.validate();
        assert!(d.passed, "{:?}", d.issues);
        assert_eq!(d.valence_histogram.get(&4), Some(&v));
    }
    assert!(matches!(build_torus(1), Err(Error::InvalidParameter(_))));
}

#[test]
fn torus_is_orientable() {
    assert!(build_torus(4).unwrap().is_orientable());
}

#[test]
fn tube_is_annulus() {
    let t = build_tube(8, 3, 0).unwrap();
    assert_eq!(t.euler_characteristic(), 0);
    assert_eq!(t.boundaries().len(), 2);
    assert!(t.boundaries().iter().all(|b| b.walk.len() == 8));
    assert!(t.validate().passed, "{:?}", t.validate().issues);
}

#[test]
fn punch_hole_on_torus() {
    let t = build_torus(8).unwrap();
    let (h, id) = t.punch_square_hole(0, 2).unwrap();
    assert_eq!(h.boundary(id).unwrap().walk.len(), 8);
    assert_eq!(h.face_count(), t.face_count() - 4);
    assert_eq!(h.euler_characteristic(), -1);
    assert!(h.validate().passed, "{:?}", h.validate().issues);
    assert!(matches!(
        h.punch_square_hole(0, 2),
        Err(Error::SurgeryConflict(_))
    ));
}

#[test]
fn hole_wrapping_around_is_rejected() {
    let t = build_torus(4).unwrap();
    assert!(matches!(
        t.punch_square_hole(0, 4),
        Err(Error::SurgeryConflict(_))
    ));
}

#[test]
fn sew_two_punctured_tori() {
    let (a, _) = build_torus(8).unwrap().punch_square_hole(0, 2).unwrap();
    let (b, _) = build_torus(8).unwrap().punch_square_hole(0, 2).unwrap();
    let u = a.disjoint_union(&b);
    let ids: Vec<usize> = u.boundaries().iter().map(|b| b.id).collect();
    let g0 = u.sew_boundaries(ids[0], ids[1], 0, false).unwrap();
    let g3 = u.sew_boundaries(ids[0], ids[1], 3, false).unwrap();
    for g in [&g0, &g3] {
        assert!(g.is_closed());
        assert_eq!(g.euler_characteristic(), -2);
        assert!(g.validate().passed, "{:?}", g.validate().issues);
        assert!(g.is_orientable());
    }
    assert_eq!(
        (g0.vertex_count(), g0.edge_count(), g0.face_count()),
        (g3.vertex_count(), g3.edge_count(), g3.face_count())
    );
}

#[test]
fn reversed_sew_on_one_torus_is_non_orientable() {
    let t = build_torus(8).unwrap();
    let (h, ids) = t.punch_square_holes(&[(0, 2), (36, 2)]).unwrap();
    let r = h.sew_boundaries(ids[0], ids[1], 0, true).unwrap();
    assert!(r.validate().passed, "{:?}", r.validate().issues);
    assert_eq!(r.euler_characteristic(), -2);
    assert!(!r.is_orientable());
    let o = h.sew_boundaries(ids[0], ids[1], 0, false).unwrap();
    assert!(o.validate().passed, "{:?}", o.validate().issues);
    assert!(o.is_orientable());
}

#[test]
fn sew_errors() {
    let (a, _) = build_torus(8).unwrap().punch_square_hole(0, 2).unwrap();
    let (b, _) = build_torus(8).unwrap().punch_square_hole(0, 3).unwrap();
    let u = a.disjoint_union(&b);
    let ids: Vec<usize> = u.boundaries().iter().map(|b| b.id).collect();
    assert!(matches!(
        u.sew_boundaries(ids[0], ids[1], 0, false),
        Err(Error::LengthMismatch(8, 12))
    ));
    assert!(matches!(
        u.sew_boundaries(ids[0], ids[0], 0, false),
        Err(Error::SelfSewUnsupported)
    ));
    assert!(matches!(
        u.sew_boundaries(ids[0], 99, 0, false),
        Err(Error::NoSuchBoundary(99))
    ));
}

#[test]
fn cut_torus_into_annulus_and_reglue() {
    let t = build_torus(4).unwrap();
    let (a, cut) = t.cut_along_cycle(&torus_row(4, 1)).unwrap();
    assert_eq!(a.euler_characteristic(), 0);
    assert_eq!(a.boundaries().len(), 2);
    assert!(a.boundaries().iter().all(|b| b.walk.len() == 4));
    assert!(a.validate().passed, "{:?}", a.validate().issues);
    let (b1, b2) = cut.boundaries;
    // Reglue: the duplicate of loop vertex 0 sits opposite the original.
    let glued = (0..4)
        .map(|off| a.sew_boundaries(b1, b2, off, false).unwrap())
        .find(|g| g.vertex_count() == 16 && g.edges().iter().all(|[u, v]| u != v))
        .unwrap();
    assert!(glued.is_closed());
    assert_eq!(glued.euler_characteristic(), 0);
    assert!(glued.validate().passed);
    assert!(glued.valences().iter().all(|&d| d == 4));
}

#[test]
fn cut_rejects_bad_loops() {
    let t = build_torus(4).unwrap();
    let face: BinaryChain = t.face(5).edges.iter().copied().collect();
    assert!(matches!(
        t.cut_along_cycle(&face),
        Err(Error::SeparatingCut)
    ));
    assert!(t.cut_along_cycle_with(&face, true).is_ok());
    let two_rows = torus_row(4, 0).add(&torus_column(4, 0));
    assert!(matches!(
        t.cut_along_cycle(&two_rows),
        Err(Error::NotSimple(_))
    ));
    let open: BinaryChain = [0, 2].into_iter().collect();
    assert!(matches!(t.cut_along_cycle(&open), Err(Error::NotSimple(_))));
}

#[test]
fn dual_of_torus_and_involution() {
    let t = build_torus(4).unwrap();
    let d = t.dualize().unwrap();
    assert_eq!(
        (d.vertex_count(), d.edge_count(), d.face_count()),
        (16, 32, 16)
    );
    assert!(d.validate().passed, "{:?}", d.validate().issues);
    let dd = d.dualize().unwrap();
    assert_eq!(dd.vertex_count(), t.vertex_count());
    assert_eq!(dd.edge_count(), t.edge_count());
    assert!(dd.validate().passed);
    let (h, _) = t.punch_square_hole(0, 1).unwrap();
    assert!(matches!(h.dualize(), Err(Error::DualUndefined)));
}

#[test]
fn dangling_edge_fails_validation() {
    let t = build_torus(3).unwrap();
    let mut edges = t.edges().to_vec();
    edges.push([0, 4]);
    let broken = CellComplex::from_parts(9, edges, t.faces().to_vec(), Vec::new()).unwrap();
    let d = broken.validate();
    assert!(!d.passed);
    assert!(d.dangling_edges.contains(&18));
}

#[test]
fn surface_file_round_trip() {
    let t = build_torus(3).unwrap();
    let f = SurfaceFile::new(&t, serde_json::json!({"side": 3}), Some(7));
    let back = SurfaceFile::from_json(&f.to_json()).unwrap();
    assert_eq!(back.complex().unwrap(), t);
    let bumped = f.to_json().replace("\"1.0\"", "\"2.0\"");
    assert!(matches!(
        SurfaceFile::from_json(&bumped),
        Err(Error::UnsupportedVersion(_))
    ));
}
