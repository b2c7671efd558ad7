use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn weight_of(pairs: &[(usize, usize)], w: &impl Fn(usize, usize) -> i64) -> i64 {
    pairs.iter().map(|&(i, j)| w(i, j)).sum()
}

#[test]
fn small_cases() {
    assert!(min_weight_perfect_matching(0, |_, _| 0).unwrap().is_empty());
    assert_eq!(
        min_weight_perfect_matching(2, |_, _| 7).unwrap(),
        vec![(0, 1)]
    );
    assert!(matches!(
        min_weight_perfect_matching(3, |_, _| 1),
        Err(Error::InvalidSyndrome(_))
    ));
    // Points on a line: neighbours pair up.
    let pos = [0i64, 1, 10, 11];
    let m = min_weight_perfect_matching(4, |i, j| (pos[i] - pos[j]).abs()).unwrap();
    assert_eq!(m, vec![(0, 1), (2, 3)]);
}

#[test]
fn max_weight_basics() {
    assert_eq!(
        max_weight_matching(2, &[(0, 1, 1)], false),
        vec![Some(1), Some(0)]
    );
    // Path 0-1-2-3: middle edge heavy but outer pair heavier in total.
    let e = [(0, 1, 5), (1, 2, 8), (2, 3, 5)];
    assert_eq!(
        max_weight_matching(4, &e, false),
        vec![Some(1), Some(0), Some(3), Some(2)]
    );
    let e = [(0, 1, 2), (1, 2, 8), (2, 3, 2)];
    assert_eq!(
        max_weight_matching(4, &e, false),
        vec![None, Some(2), Some(1), None]
    );
    assert_eq!(
        max_weight_matching(4, &e, true),
        vec![Some(1), Some(0), Some(3), Some(2)]
    );
}

#[test]
fn blossom_cases() {
    // Odd cycle forcing a blossom, then augmenting through it.
    let e = [(0, 1, 8), (0, 2, 9), (1, 2, 10), (2, 3, 7)];
    assert_eq!(
        max_weight_matching(4, &e, false),
        vec![Some(1), Some(0), Some(3), Some(2)]
    );
    // Nested blossoms with expansion.
    let e = [
        (0, 1, 19),
        (0, 2, 20),
        (0, 7, 8),
        (1, 2, 25),
        (1, 3, 18),
        (2, 4, 18),
        (3, 4, 13),
        (4, 6, 7),
        (5, 6, 7),
    ];
    let m = max_weight_matching(8, &e, false);
    assert_eq!(
        m,
        vec![
            Some(7),
            Some(2),
            Some(1),
            Some(4),
            Some(3),
            Some(6),
            Some(5),
            Some(0)
        ]
    );
}

#[test]
fn random_complete_graphs_match_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let n = 2 * rng.gen_range(1..=6);
        let w: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..20)).collect())
            .collect();
        let f = |i: usize, j: usize| w[i.min(j)][i.max(j)];
        let m = min_weight_perfect_matching(n, f).unwrap();
        assert_eq!(m.len(), n / 2);
        assert_eq!(weight_of(&m, &f), min_pairing_bruteforce(n, &f).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn planar_points_match_bruteforce(pts in prop::collection::vec((0i64..12, 0i64..12), 1..6)) {
        let mut pts = pts;
        pts.extend(pts.clone().into_iter().map(|(x, y)| (y, x + 1)));
        let n = pts.len();
        let f = |i: usize, j: usize| (pts[i].0 - pts[j].0).abs() + (pts[i].1 - pts[j].1).abs();
        let m = min_weight_perfect_matching(n, f).unwrap();
        let mut seen = vec![false; n];
        for &(i, j) in &m {
            prop_assert!(!seen[i] && !seen[j]);
            seen[i] = true;
            seen[j] = true;
        }
        prop_assert_eq!(weight_of(&m, &f), min_pairing_bruteforce(n, &f).unwrap());
    }
}

fn best_matching_bruteforce(
    n: usize,
    edges: &[(usize, usize, i64)],
    max_card: bool,
) -> (usize, i64) {
    fn rec(
        k: usize,
        used: u32,
        edges: &[(usize, usize, i64)],
        card: usize,
        w: i64,
        best: &mut (usize, i64),
        max_card: bool,
    ) {
        let better = if max_card {
            (card, w) > *best
        } else {
            w > best.1
        };
        if better {
            *best = (card, w);
        }
        for t in k..edges.len() {
            let (i, j, x) = edges[t];
            if used & (1 << i) == 0 && used & (1 << j) == 0 {
                rec(
                    t + 1,
                    used | 1 << i | 1 << j,
                    edges,
                    card + 1,
                    w + x,
                    best,
                    max_card,
                );
            }
        }
    }
    let _ = n;
    let mut best = (0, 0);
    rec(0, 0, edges, 0, 0, &mut best, max_card);
    best
}

#[test]
fn sparse_graphs_match_bruteforce() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..400 {
        let n = rng.gen_range(2..=9);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.45) {
                    edges.push((i, j, rng.gen_range(1..15)));
                }
            }
        }
        for max_card in [false, true] {
            let mate = max_weight_matching(n, &edges, max_card);
            let mut card = 0;
            let mut w = 0;
            for &(i, j, x) in &edges {
                if mate[i] == Some(j) {
                    assert_eq!(mate[j], Some(i));
                    card += 1;
                    w += x;
                }
            }
            let (bc, bw) = best_matching_bruteforce(n, &edges, max_card);
            if max_card {
                assert_eq!((card, w), (bc, bw), "{edges:?}");
            } else {
                assert_eq!(w, bw, "{edges:?}");
            }
        }
    }
}

fn dense_min_weight(n: usize, w: &impl Fn(usize, usize) -> i64) -> i64 {
    let top = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .map(|(i, j)| w(i, j))
        .max()
        .unwrap();
    let edges: Vec<(usize, usize, i64)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| (i, j, top + 1 - w(i, j)))
        .collect();
    let mate = max_weight_matching(n, &edges, true);
    (0..n)
        .filter_map(|i| mate[i].filter(|&j| i < j).map(|j| w(i, j)))
        .sum()
}

#[test]
fn sparse_rounds_agree_with_dense_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for round in 0..120 {
        let n = 2 * rng.gen_range(9..=40);
        let side = rng.gen_range(6..30);
        let pts: Vec<(i64, i64)> = (0..n)
            .map(|_| (rng.gen_range(0..side), rng.gen_range(0..side)))
            .collect();
        // Torus metric, plus arbitrary weights on a few rounds.
        let torus = |i: usize, j: usize| {
            let dx = (pts[i].0 - pts[j].0).abs();
            let dy = (pts[i].1 - pts[j].1).abs();
            dx.min(side - dx) + dy.min(side - dy)
        };
        let table: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..50)).collect())
            .collect();
        let arbitrary = |i: usize, j: usize| table[i.min(j)][i.max(j)];
        if round % 4 == 3 {
            let m = min_weight_perfect_matching(n, arbitrary).unwrap();
            assert_eq!(weight_of(&m, &arbitrary), dense_min_weight(n, &arbitrary));
        } else {
            let m = min_weight_perfect_matching(n, torus).unwrap();
            assert_eq!(m.len(), n / 2);
            assert_eq!(weight_of(&m, &torus), dense_min_weight(n, &torus));
        }
    }
}
