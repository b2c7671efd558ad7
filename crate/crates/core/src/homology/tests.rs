use proptest::prelude::*;

use super::*;
use crate::complex::build_torus;

fn row(side: usize, y: usize) -> BinaryChain {
    (0..side).map(|x| 2 * (y * side + x)).collect()
}

/// Torus with two holes sewn together: a genus-2 surface.
fn self_sewn(
    side: usize,
    a: usize,
    b: usize,
    hole: usize,
    offset: usize,
    reversed: bool,
) -> Result<CellComplex> {
    let t = build_torus(side)?;
    let (h, ids) = t.punch_square_holes(&[(a, hole), (b, hole)])?;
    h.sew_boundaries(ids[0], ids[1], offset, reversed)
}

#[test]
fn chain_complex_identity_and_ranks() {
    let t = build_torus(3).unwrap();
    let m = boundary_maps(&t).unwrap();
    assert!(m.composes_to_zero());
    assert_eq!(m.rank_d1(), t.vertex_count() - 1);
    assert_eq!(m.rank_d2(), t.face_count() - 1);
    let (h, _) = t.punch_square_hole(0, 1).unwrap();
    assert!(matches!(boundary_maps(&h), Err(Error::BoundedComplex)));
}

#[test]
fn torus_code() {
    for side in [3, 4, 6] {
        let code = css_from_complex(&build_torus(side).unwrap()).unwrap();
        assert_eq!(code.k, 2);
        assert!(code.logical_pairs.iter().all(|lp| lp.z.weight() == side));
        assert!(code.has_standard_symplectic_form());
        assert!(code.stabilizers_commute());
        assert!(code.logicals_commute_with_stabilizers());
    }
}

#[test]
fn genus_two_code_dimension() {
    let g = self_sewn(8, 0, 36, 2, 0, false).unwrap();
    let m = boundary_maps(&g).unwrap();
    let h1 = g.edge_count() - m.rank_d1() - m.rank_d2();
    assert_eq!(h1 as i64, 2 - g.euler_characteristic());
    let code = css_from_complex(&g).unwrap();
    assert_eq!(code.k, 4);
    assert!(code.has_standard_symplectic_form());
}

#[test]
fn nullhomology_checks() {
    let t = build_torus(4).unwrap();
    let face: BinaryChain = t.face(3).edges.iter().copied().collect();
    assert!(is_nullhomologous(&t, &face).unwrap());
    assert!(!is_nullhomologous(&t, &row(4, 0)).unwrap());
    assert!(is_nullhomologous(&t, &row(4, 0).add(&row(4, 2))).unwrap());
    let open: BinaryChain = [0, 2].into_iter().collect();
    assert!(matches!(
        is_nullhomologous(&t, &open),
        Err(Error::NotACycle)
    ));
}

#[test]
fn torus_systoles() {
    for side in [3, 4, 5] {
        let r = systole(&build_torus(side).unwrap()).unwrap();
        assert_eq!(r.primal.as_ref().unwrap().length, side);
        assert_eq!(r.dual.as_ref().unwrap().length, side);
        assert_eq!(r.primal.as_ref().unwrap().cycle.weight(), side);
    }
    let b = systole_bruteforce(&build_torus(3).unwrap(), 3).unwrap();
    assert_eq!(b.primal.unwrap().length, 3);
    assert!(
        systole_bruteforce(&build_torus(4).unwrap(), 2)
            .unwrap()
            .inconclusive
    );
}

#[test]
fn witnesses_are_nontrivial_cycles() {
    let g = self_sewn(7, 0, 24, 2, 3, false).unwrap();
    let code = css_from_complex(&g).unwrap();
    let r = systole_with_code(&g, &code).unwrap();
    let p = r.primal.unwrap();
    let d = r.dual.unwrap();
    assert!(!code.is_trivial(&p.cycle, Sector::Primal).unwrap());
    assert!(!code.is_trivial(&d.cycle, Sector::Dual).unwrap());
    assert_eq!(p.length, p.cycle.weight());
    assert_eq!(d.length, d.cycle.weight());
}

#[test]
fn dual_systole_matches_primal_of_dual() {
    let g = self_sewn(8, 0, 36, 2, 1, false).unwrap();
    let r = systole(&g).unwrap();
    let rd = systole(&g.dualize().unwrap()).unwrap();
    assert_eq!(r.dual.unwrap().length, rd.primal.unwrap().length);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn systole_matches_exhaustive_search(
        side in 5usize..8,
        a in 0usize..64,
        b in 0usize..64,
        hole in 1usize..3,
        offset in 0usize..8,
        reversed in any::<bool>(),
    ) {
        let n = side * side;
        let surface = self_sewn(side, a % n, b % n, hole, offset, reversed);
        prop_assume!(surface.is_ok());
        let g = surface.unwrap();
        prop_assume!(g.validate().passed);
        let code = css_from_complex(&g).unwrap();
        prop_assert_eq!(code.k as i64, 2 - g.euler_characteristic());
        prop_assert!(code.has_standard_symplectic_form());
        prop_assert!(code.stabilizers_commute());
        let fast = systole_with_code(&g, &code).unwrap();
        let p = fast.primal.unwrap().length;
        let d = fast.dual.unwrap().length;
        let slow = systole_bruteforce(&g, p.max(d)).unwrap();
        prop_assert!(!slow.inconclusive);
        prop_assert_eq!(slow.primal.unwrap().length, p);
        prop_assert_eq!(slow.dual.unwrap().length, d);
    }
}

#[test]
fn self_adjacent_face_gives_unit_dual_cycle() {
    // Reflected sewing that leaves one face on both sides of an edge.
    let g = self_sewn(7, 0, 21, 2, 3, true).unwrap();
    assert!(g.validate().passed);
    let fast = systole(&g).unwrap();
    let d = fast.dual.unwrap();
    assert_eq!(d.length, 1);
    let slow = systole_bruteforce(&g, 2).unwrap();
    assert_eq!(slow.dual.unwrap().length, 1);
    assert_eq!(slow.primal.map(|w| w.length), fast.primal.map(|w| w.length));
}
