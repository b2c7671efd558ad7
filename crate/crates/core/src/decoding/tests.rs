use proptest::prelude::*;

use rand::Rng;

use super::*;
use crate::complex::build_torus;
use crate::homology::css_from_complex;
use crate::matching::min_pairing_bruteforce;

fn torus(side: usize) -> (CellComplex, CssCode) {
    let c = build_torus(side).unwrap();
    let code = css_from_complex(&c).unwrap();
    (c, code)
}

fn h(side: usize, x: usize, y: usize) -> usize {
    2 * (y * side + x)
}

fn v(side: usize, x: usize, y: usize) -> usize {
    2 * (y * side + x) + 1
}

#[test]
fn sampling_extremes_and_determinism() {
    let (c, _) = torus(4);
    let e = sample_iid_error(&c, 0.0, 3).unwrap();
    assert!(e.x_chain.is_empty() && e.z_chain.is_empty());
    let e = sample_iid_error(&c, 1.0, 3).unwrap();
    assert_eq!((e.x_chain.weight(), e.z_chain.weight()), (32, 32));
    assert_eq!(
        sample_iid_error(&c, 0.3, 9).unwrap(),
        sample_iid_error(&c, 0.3, 9).unwrap()
    );
    assert!(matches!(
        sample_iid_error(&c, 1.5, 0),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn sampling_mean_within_binomial_band() {
    let (c, _) = torus(16);
    assert_eq!(c.edge_count(), 512);
    let n = 10_000;
    let total: usize = (0..n)
        .map(|s| sample_iid_error(&c, 0.1, s).unwrap().x_chain.weight())
        .sum();
    let mean = total as f64 / n as f64;
    let sigma = (512.0f64 * 0.1 * 0.9 / n as f64).sqrt();
    assert!((mean - 51.2).abs() <= 3.0 * sigma, "{mean}");
}

#[test]
fn syndromes() {
    let (c, _) = torus(5);
    let single = ErrorPattern {
        x_chain: BinaryChain::from_edges([h(5, 1, 1)]),
        z_chain: BinaryChain::new(),
    };
    let (sx, sz) = syndrome_of(&c, &single);
    let mut ends = c.edge(h(5, 1, 1)).to_vec();
    ends.sort_unstable();
    assert_eq!(sx.defects, ends);
    assert!(sz.is_empty());
    let loop_ = BinaryChain::from_edges((0..5).map(|x| h(5, x, 2)));
    assert!(vertex_syndrome(&c, &loop_).is_empty());
    let face = BinaryChain::from_edges(c.face(7).edges.iter().copied());
    assert!(vertex_syndrome(&c, &face).is_empty());
    let path = BinaryChain::from_edges([h(5, 0, 0), h(5, 1, 0), v(5, 2, 0)]);
    let s = vertex_syndrome(&c, &path);
    assert_eq!(s.defects.len(), 2);
    let z = face_syndrome(&c, &BinaryChain::from_edges([h(5, 3, 3)]));
    assert_eq!(z.defects.len(), 2);
    // A dual loop: the vertical edges crossing one row of faces.
    assert!(face_syndrome(&c, &BinaryChain::from_edges((0..5).map(|x| v(5, x, 1)))).is_empty());
}

#[test]
fn mwpm_basics() {
    let (c, _) = torus(5);
    let d = Decoder::new(&c).unwrap();
    let e = h(5, 2, 2);
    let mut defects = c.edge(e).to_vec();
    defects.sort_unstable();
    let s = Syndrome {
        sector: Sector::Primal,
        defects,
    };
    assert_eq!(d.mwpm(&s).unwrap(), BinaryChain::from_edges([e]));
    let empty = Syndrome {
        sector: Sector::Primal,
        defects: vec![],
    };
    assert!(d.mwpm(&empty).unwrap().is_empty());
    let odd = Syndrome {
        sector: Sector::Primal,
        defects: vec![1, 2, 3],
    };
    assert!(matches!(d.mwpm(&odd), Err(Error::InvalidSyndrome(_))));
    assert!(matches!(d.greedy(&odd), Err(Error::InvalidSyndrome(_))));
}

#[test]
fn mwpm_weight_matches_bruteforce() {
    let (c, _) = torus(5);
    let d = Decoder::new(&c).unwrap();
    let g = Graph::primal(&c);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let n = 2 * rng.gen_range(1..=5);
        let mut defects: Vec<usize> = rand::seq::index::sample(&mut rng, 25, n).into_vec();
        defects.sort_unstable();
        let s = Syndrome {
            sector: Sector::Primal,
            defects: defects.clone(),
        };
        let dist: Vec<Vec<usize>> = defects.iter().map(|&a| g.bfs(a).dist).collect();
        let w = |i: usize, j: usize| dist[i][defects[j]] as i64;
        let best = min_pairing_bruteforce(n, &w).unwrap();
        assert_eq!(d.mwpm_pairing(&s).unwrap().weight as i64, best);
        let corr = d.mwpm(&s).unwrap();
        assert_eq!(vertex_syndrome(&c, &corr), s);
        assert!(corr.weight() as i64 <= best);
    }
}

#[test]
fn greedy_versus_mwpm() {
    let (c, _) = torus(10);
    let d = Decoder::new(&c).unwrap();
    let two = Syndrome {
        sector: Sector::Primal,
        defects: vec![v(10, 1, 1), v(10, 4, 3)],
    };
    assert_eq!(d.greedy(&two).unwrap(), d.mwpm(&two).unwrap());
    // Row positions 0, 2, 3, 5: greedy takes the middle pair first.
    let mut defects: Vec<usize> = [0, 2, 3, 5]
        .iter()
        .map(|&x| c.edge(h(10, x, 0))[0])
        .collect();
    defects.sort_unstable();
    let s = Syndrome {
        sector: Sector::Primal,
        defects,
    };
    let g = d.greedy_pairing(&s).unwrap();
    let m = d.mwpm_pairing(&s).unwrap();
    assert_eq!((g.weight, m.weight), (6, 4));
    assert_eq!(g.pairs.len(), 2);
    assert_eq!(vertex_syndrome(&c, &d.greedy(&s).unwrap()), s);
}

#[test]
fn ml_oracle() {
    let (c, code) = torus(3);
    let e = BinaryChain::from_edges([h(3, 1, 1)]);
    let s = vertex_syndrome(&c, &e);
    let ml = decode_ml_bruteforce(&c, &code, &s, 0.05).unwrap();
    assert_eq!(ml.coset, coset_label(&code, &e, Sector::Primal));
    assert_eq!(vertex_syndrome(&c, &ml.correction), s);
    let total: f64 = ml.coset_probabilities.iter().sum();
    assert!(ml.coset_probabilities[ml.coset] / total > 0.9);
    let flat = decode_ml_bruteforce(&c, &code, &s, 0.5).unwrap();
    for &q in &flat.coset_probabilities {
        assert!((q - flat.coset_probabilities[0]).abs() < 1e-15);
    }
    let z = face_syndrome(&c, &e);
    let mlz = decode_ml_bruteforce(&c, &code, &z, 0.05).unwrap();
    assert_eq!(mlz.coset, coset_label(&code, &e, Sector::Dual));
    let (big, big_code) = torus(6);
    let s = vertex_syndrome(&big, &BinaryChain::from_edges([0]));
    assert!(matches!(
        decode_ml_bruteforce(&big, &big_code, &s, 0.1),
        Err(Error::OracleInfeasible(_))
    ));
}

#[test]
fn exact_rates_on_small_torus() {
    let (c, code) = torus(3);
    let rates =
        exact_failure_rates(&c, &code, Sector::Primal, &[0.0, 0.02, 0.05, 0.1, 0.5]).unwrap();
    assert_eq!((rates[0].mwpm, rates[0].ml), (0.0, 0.0));
    for r in &rates {
        assert!(r.mwpm >= r.ml - 1e-12, "{r:?}");
    }
    assert!(rates[1].ml < rates[2].ml && rates[2].ml < rates[3].ml);
    // Four equiprobable cosets at p = 1/2.
    assert!((rates[4].ml - 0.75).abs() < 1e-9);
    let dual = exact_failure_rates(&c, &code, Sector::Dual, &[0.05]).unwrap();
    assert!((dual[0].ml - rates[2].ml).abs() < 1e-12);
}

#[test]
fn exact_rates_agree_with_oracle_decisions() {
    let (c, code) = torus(3);
    let p = 0.1;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    // Monte Carlo with the oracle against the exhaustive value.
    let exact = exact_failure_rates(&c, &code, Sector::Primal, &[p]).unwrap()[0].ml;
    let n = 4000;
    let mut fails = 0;
    for _ in 0..n {
        let e = sample_with(c.edge_count(), p, &mut rng).x_chain;
        let s = vertex_syndrome(&c, &e);
        let ml = decode_ml_bruteforce(&c, &code, &s, p).unwrap();
        fails += usize::from(ml.coset != coset_label(&code, &e, Sector::Primal));
    }
    let (lo, hi) = wilson_interval(fails as u64, n, 3.5);
    assert!(lo <= exact && exact <= hi, "{lo} {exact} {hi}");
}

#[test]
fn residual_classification() {
    let (c, code) = torus(5);
    let e = sample_iid_error(&c, 0.2, 1).unwrap();
    let same = Correction {
        x: e.x_chain.clone(),
        z: e.z_chain.clone(),
    };
    assert_eq!(residual_class(&code, &e, &same).unwrap(), Outcome::Success);
    let w_loop = BinaryChain::from_edges((0..5).map(|x| h(5, x, 0)));
    let shifted = Correction {
        x: e.x_chain.add(&w_loop),
        z: e.z_chain.clone(),
    };
    match residual_class(&code, &e, &shifted).unwrap() {
        Outcome::LogicalFailure {
            x_flipped,
            z_flipped,
        } => {
            assert_eq!(x_flipped.len(), 1);
            assert!(z_flipped.is_empty());
        }
        Outcome::Success => panic!("w-loop residual must fail"),
    }
    let bad = Correction {
        x: BinaryChain::from_edges([0]).add(&e.x_chain),
        z: e.z_chain.clone(),
    };
    assert!(matches!(
        residual_class(&code, &e, &bad),
        Err(Error::InconsistentCorrection)
    ));
}

#[test]
fn classification_ignores_stabilizers() {
    let (c, code) = torus(5);
    let d = Decoder::new(&c).unwrap();
    for seed in 0..40 {
        let e = sample_iid_error(&c, 0.15, seed).unwrap();
        let (sx, sz) = syndrome_of(&c, &e);
        let corr = Correction {
            x: d.mwpm(&sx).unwrap(),
            z: d.mwpm(&sz).unwrap(),
        };
        let base = residual_class(&code, &e, &corr).unwrap();
        let f = &code.face_stabilizers[seed as usize % 25];
        let st = &code.vertex_stabilizers[(seed as usize * 7) % 25];
        let moved = Correction {
            x: corr.x.add(f),
            z: corr.z.add(st),
        };
        assert_eq!(residual_class(&code, &e, &moved).unwrap(), base);
        let moved_err = ErrorPattern {
            x_chain: e.x_chain.add(f),
            z_chain: e.z_chain.add(st),
        };
        assert_eq!(residual_class(&code, &moved_err, &corr).unwrap(), base);
    }
}

#[test]
fn trials_are_deterministic_and_replayable() {
    let (c, code) = torus(4);
    let zero = run_trials(&c, &code, 0.0, 50, DecoderKind::Mwpm, 1).unwrap();
    assert_eq!((zero.failures, zero.epsilon), (0, 0.0));
    let runner = TrialRunner::new(&c, &code).unwrap();
    let (a, log) = runner.run(0.08, 400, DecoderKind::Mwpm, 77, true).unwrap();
    let (b, _) = runner.run(0.08, 400, DecoderKind::Mwpm, 77, false).unwrap();
    assert_eq!(a, b);
    assert!(a.failures > 0 && a.failures < 400);
    assert!(a.interval.0 <= a.epsilon && a.epsilon <= a.interval.1);
    assert_eq!(log.len(), 400);
    assert_eq!(
        log[123],
        runner.trial(0.08, DecoderKind::Mwpm, 77, 123).unwrap()
    );
    assert_eq!(
        log.iter().filter(|r| !r.outcome.is_success()).count() as u64,
        a.failures
    );
    // A torus has no handle qubits.
    assert!(a.roles.iter().all(|&r| r == QubitRole::Base));
    assert_eq!(a.base_failures, a.failures);
    assert!(a.per_handle_qubit().is_none());
    let g = run_trials(&c, &code, 0.08, 400, DecoderKind::Greedy, 77).unwrap();
    assert!(g.failures >= a.failures / 2);
}

#[test]
fn ml_trials_run_on_tiny_torus() {
    let (c, code) = torus(3);
    let ml = run_trials(&c, &code, 0.05, 300, DecoderKind::Ml, 2).unwrap();
    let mw = run_trials(&c, &code, 0.05, 300, DecoderKind::Mwpm, 2).unwrap();
    assert!(ml.failures <= mw.failures + 10);
}

#[test]
fn decoder_names_round_trip() {
    for k in [DecoderKind::Mwpm, DecoderKind::Greedy, DecoderKind::Ml] {
        assert_eq!(k.to_string().parse::<DecoderKind>().unwrap(), k);
    }
    assert!("blossom".parse::<DecoderKind>().is_err());
}

#[test]
fn fit_recovers_synthetic_parameters() {
    let mut pts = Vec::new();
    for d in [3.0, 5.0, 7.0, 9.0] {
        for p in [0.01, 0.02, 0.04, 0.06] {
            let epsilon: f64 = (p / 0.1f64).powf(d);
            pts.push(ScalingPoint { d, p, epsilon });
        }
    }
    let fit = fit_scaling(&pts, 1.0).unwrap();
    assert!((fit.k - 1.0).abs() < 1e-9 && (fit.p_c - 0.1).abs() < 1e-9);
    assert!(fit.rms_residual < 1e-9 && fit.monotone);
    let same_d: Vec<ScalingPoint> = pts.iter().filter(|q| q.d == 3.0).copied().collect();
    assert!(matches!(
        fit_scaling(&same_d, 1.0),
        Err(Error::FitUnderdetermined(_))
    ));
    let mut noisy = pts.clone();
    noisy[1].epsilon = 1.0;
    assert!(!fit_scaling(&noisy, 1.0)
        .map(|f| f.monotone)
        .unwrap_or(false));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn decoders_annihilate_syndromes(side in 3usize..7, p in 0.0f64..0.4, seed in any::<u64>()) {
        let (c, code) = torus(side);
        let d = Decoder::new(&c).unwrap();
        let e = sample_iid_error(&c, p, seed).unwrap();
        let (sx, sz) = syndrome_of(&c, &e);
        prop_assert_eq!(sx.defects.len() % 2, 0);
        prop_assert_eq!(sz.defects.len() % 2, 0);
        for s in [&sx, &sz] {
            let m = d.mwpm(s).unwrap();
            let g = d.greedy(s).unwrap();
            let resyn = |ch: &BinaryChain| match s.sector {
                Sector::Primal => vertex_syndrome(&c, ch),
                Sector::Dual => face_syndrome(&c, ch),
            };
            prop_assert_eq!(&resyn(&m), s);
            prop_assert_eq!(&resyn(&g), s);
            prop_assert!(d.greedy_pairing(s).unwrap().weight >= d.mwpm_pairing(s).unwrap().weight);
        }
        let corr = Correction { x: d.mwpm(&sx).unwrap(), z: d.mwpm(&sz).unwrap() };
        prop_assert!(residual_class(&code, &e, &corr).is_ok());
    }
}
