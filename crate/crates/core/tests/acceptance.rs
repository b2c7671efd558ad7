//! Acceptance suite: one check per criterion, each printing a single
//! `PASS`/`FAIL` line with the measured values.
//!
//! Criteria:
//! 1. torus systole equals L, primal and dual, L ∈ {3,4,5,7,9}, under 1 s each
//! 2. two-torus join systole within 2L/√3 ± 2 for L ∈ {6,9,12}; exhaustive check at L=6
//! 3. chain-complex and code invariants on 50 seeded random surgery sequences
//! 4. perimeter recursion within 5% of the closed form for r ≤ 2L, L ∈ {8,16,32}
//! 5. measured area within a factor 2 of the recursion up to the min-loop radius
//! 6. median l-loop grows with N ∈ {4,16,64}; median/(L ln N) ∈ [0.2, 0.9]
//! 7. MWPM weight equals brute force; exhaustive MWPM rate ≥ ML rate on the L=3 torus
//! 8. torus failure rates ordered in L with disjoint intervals; synthetic fit within 2%
//! 9. per-handle-qubit failure rate lower at N=16 than at N=4, matched qubits per logical
//! 10. closed threshold factor N-independent at β=1; product ratios; walk growth
//!
//! Runs without the libtest harness so every line reaches the output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use highgenus::complex::build_torus;
use highgenus::decoding::{
    exact_failure_rates, fit_scaling, Decoder, DecoderKind, ScalingPoint, Syndrome, TrialRunner,
};
use highgenus::geometry::{
    closed_form_perimeter, count_walks, default_beta, measure_circle_growth, predicted_min_loop,
    product_radius, recursion_area, solve_perimeter_recursion, threshold_factor_closed,
    threshold_factor_product, ScalingParams,
};
use highgenus::graph::Graph;
use highgenus::homology::{
    boundary_maps, css_from_complex, handle_l_loop, systole, systole_bruteforce, Sector,
};
use highgenus::matching::min_pairing_bruteforce;
use highgenus::stats::median;
use highgenus::surface::{construct, join_side, join_two_tori, SurfaceBlueprint};
use highgenus::{CellComplex, Result};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn blueprint(l: usize, n: usize, seed: u64) -> SurfaceBlueprint {
    SurfaceBlueprint::new(l, n, seed)
}

// ── 1 ──────────────────────────────────────────────────────────────────

fn torus_distance() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [3, 4, 5, 7, 9] {
        let t0 = Instant::now();
        let r = systole(&build_torus(l).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let secs = t0.elapsed().as_secs_f64();
        let p = r.primal.map(|w| w.length);
        let d = r.dual.map(|w| w.length);
        ok &= p == Some(l) && d == Some(l) && secs < 1.0;
        parts.push(format!("L={l}: {p:?}/{d:?} in {secs:.3}s"));
    }
    ensure(ok, parts.join(", "))
}

// ── 2 ──────────────────────────────────────────────────────────────────

fn two_torus_join() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [6, 9, 12] {
        let c = join_two_tori(l).map_err(|e| e.to_string())?;
        let r = systole(&c).map_err(|e| e.to_string())?;
        let s = r
            .primal
            .as_ref()
            .map(|w| w.length)
            .ok_or("no primal systole")?;
        let target = 2.0 * l as f64 / 3f64.sqrt();
        let inside = (s as f64 - target).abs() <= 2.0;
        ok &= inside;
        parts.push(format!(
            "L={l} (L'={}): systole {s}, 2L/√3={target:.2}",
            join_side(l)
        ));
        if l == 6 {
            let b = systole_bruteforce(&c, s).map_err(|e| e.to_string())?;
            let bs = b.primal.map(|w| w.length);
            ok &= bs == Some(s) && !b.inconclusive;
            parts.push(format!("exhaustive {bs:?}"));
        }
    }
    ensure(ok, parts.join(", "))
}

// ── 3 ──────────────────────────────────────────────────────────────────

/// Punches two equal holes and sews them together.
fn add_handle(c: &CellComplex, rng: &mut ChaCha8Rng) -> Result<CellComplex> {
    let side = rng.gen_range(1..=2);
    let a = rng.gen_range(0..c.vertex_count());
    let b = rng.gen_range(0..c.vertex_count());
    let (h, ids) = c.punch_square_holes(&[(a, side), (b, side)])?;
    let offset = rng.gen_range(0..4 * side);
    h.sew_boundaries(ids[0], ids[1], offset, rng.gen_bool(0.3))
}

/// Cuts along a shortest nontrivial cycle and re-glues it with a shift.
fn twist(c: &CellComplex, rng: &mut ChaCha8Rng) -> Result<CellComplex> {
    let r = systole(c)?;
    let w = r.primal.ok_or(highgenus::Error::NotACycle)?;
    let (cut, info) = c.cut_along_cycle(&w.cycle)?;
    let offset = rng.gen_range(0..w.length);
    cut.sew_boundaries(info.boundaries.0, info.boundaries.1, offset, false)
}

fn invariants(c: &CellComplex) -> std::result::Result<(), String> {
    let d = c.validate();
    if !d.passed {
        return Err(format!("validation: {:?}", d.issues));
    }
    let m = boundary_maps(c).map_err(|e| e.to_string())?;
    if !m.composes_to_zero() {
        return Err("∂₁∂₂ ≠ 0".into());
    }
    let code = css_from_complex(c).map_err(|e| e.to_string())?;
    if !code.stabilizers_commute() || !code.logicals_commute_with_stabilizers() {
        return Err("commutation".into());
    }
    if !code.has_standard_symplectic_form() {
        return Err("symplectic form".into());
    }
    if code.k as i64 != 2 - c.euler_characteristic() {
        return Err(format!(
            "k={} but 2-χ={}",
            code.k,
            2 - c.euler_characteristic()
        ));
    }
    Ok(())
}

fn surgery_invariants() -> Check {
    let t0 = Instant::now();
    let (mut applied, mut rejected, mut non_orientable) = (0, 0, 0);
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut c = build_torus(rng.gen_range(6..=9)).map_err(|e| e.to_string())?;
        invariants(&c).map_err(|e| format!("seed {seed} start: {e}"))?;
        for step in 0..rng.gen_range(2..=4) {
            for _ in 0..20 {
                let next = if rng.gen_bool(0.6) {
                    add_handle(&c, &mut rng)
                } else {
                    twist(&c, &mut rng)
                };
                match next {
                    Ok(n) => {
                        c = n;
                        applied += 1;
                        break;
                    }
                    Err(_) => rejected += 1,
                }
            }
            invariants(&c).map_err(|e| format!("seed {seed} step {step}: {e}"))?;
        }
        non_orientable += usize::from(!c.is_orientable());
    }
    let secs = t0.elapsed().as_secs_f64();
    ensure(
        secs < 60.0 && applied >= 100,
        format!(
            "{applied} surgeries applied ({rejected} rejected with typed errors), \
             {non_orientable} non-orientable results, {secs:.1}s"
        ),
    )
}

// ── 4 ──────────────────────────────────────────────────────────────────

fn recursion_vs_closed_form() -> Check {
    let mut parts = Vec::new();
    let mut worst: f64 = 0.0;
    for l in [8usize, 16, 32] {
        let lf = l as f64;
        let g = solve_perimeter_recursion(8.0 / (lf * lf), 2 * l);
        let dev = (1..=2 * l)
            .map(|r| {
                (g.perimeter[r] - closed_form_perimeter(lf, r as f64)).abs()
                    / closed_form_perimeter(lf, r as f64)
            })
            .fold(0.0, f64::max);
        worst = worst.max(dev);
        parts.push(format!("L={l}: {:.2}%", 100.0 * dev));
    }
    ensure(worst <= 0.05, parts.join(", "))
}

// ── 5 ──────────────────────────────────────────────────────────────────

fn measured_growth() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [16usize, 64] {
        let pred =
            predicted_min_loop(&ScalingParams::new(8.0, n as f64)).map_err(|e| e.to_string())?;
        let r_star = pred.radius;
        let rec = solve_perimeter_recursion(8.0 / 64.0, r_star);
        let (mut lo, mut hi) = (f64::INFINITY, 0f64);
        for seed in 1..=5u64 {
            let k = construct(&blueprint(8, n, seed)).map_err(|e| e.to_string())?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for root in sample(&mut rng, k.complex.vertex_count(), 10) {
                let m =
                    measure_circle_growth(&k.complex, root, r_star).map_err(|e| e.to_string())?;
                for r in 0..=r_star {
                    let ratio = m.area[r] / rec.area[r];
                    lo = lo.min(ratio);
                    hi = hi.max(ratio);
                }
            }
        }
        ok &= lo >= 0.5 && hi <= 2.0;
        parts.push(format!(
            "N={n}: r*={r_star}, measured/recursion area ∈ [{lo:.3}, {hi:.3}]"
        ));
    }
    ensure(ok, parts.join(", "))
}

// ── 6 ──────────────────────────────────────────────────────────────────

fn min_loop_scaling() -> Check {
    let l = 8usize;
    let mut medians = Vec::new();
    let mut parts = Vec::new();
    let mut ok = true;
    for n in [4usize, 16, 64] {
        let mut lengths = Vec::new();
        for seed in 1..=5u64 {
            let k = construct(&blueprint(l, n, seed)).map_err(|e| e.to_string())?;
            for h in k.complex.handles() {
                let z = handle_l_loop(&k.complex, h.id).map_err(|e| e.to_string())?;
                lengths.push(z.weight() as f64);
            }
        }
        let m = median(&lengths).ok_or("no handles")?;
        let ratio = m / (l as f64 * (n as f64).ln());
        ok &= (0.2..=0.9).contains(&ratio);
        medians.push(m);
        parts.push(format!("N={n}: median {m} (ratio {ratio:.3})"));
    }
    ok &= medians.windows(2).all(|w| w[1] > w[0]);
    ensure(ok, parts.join(", "))
}

// ── 7 ──────────────────────────────────────────────────────────────────

fn decoder_correctness() -> Check {
    let surfaces = [
        build_torus(7).map_err(|e| e.to_string())?,
        construct(&blueprint(8, 2, 1))
            .map_err(|e| e.to_string())?
            .complex,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut checked = 0;
    for i in 0..200 {
        let c = &surfaces[i % 2];
        let sector = if rng.gen_bool(0.5) {
            Sector::Primal
        } else {
            Sector::Dual
        };
        let g = match sector {
            Sector::Primal => Graph::primal(c),
            Sector::Dual => Graph::dual(c).map_err(|e| e.to_string())?,
        };
        let n = 2 * rng.gen_range(1..=5);
        let mut defects = sample(&mut rng, g.node_count(), n).into_vec();
        defects.sort_unstable();
        let dist: Vec<Vec<usize>> = defects.iter().map(|&d| g.bfs(d).dist).collect();
        let w = |a: usize, b: usize| dist[a][defects[b]] as i64;
        let best = min_pairing_bruteforce(n, &w).map_err(|e| e.to_string())?;
        let decoder = Decoder::new(c).map_err(|e| e.to_string())?;
        let got = decoder
            .mwpm_pairing(&Syndrome {
                sector,
                defects: defects.clone(),
            })
            .map_err(|e| e.to_string())?;
        if got.weight as i64 != best {
            return Err(format!(
                "syndrome {i}: MWPM {} vs brute force {best}",
                got.weight
            ));
        }
        checked += 1;
    }
    let t = build_torus(3).map_err(|e| e.to_string())?;
    let code = css_from_complex(&t).map_err(|e| e.to_string())?;
    let rates = exact_failure_rates(&t, &code, Sector::Primal, &[0.02, 0.05, 0.1])
        .map_err(|e| e.to_string())?;
    let ok = rates.iter().all(|r| r.mwpm >= r.ml - 1e-12);
    let table: Vec<String> = rates
        .iter()
        .map(|r| format!("p={}: MWPM {:.6} ML {:.6}", r.p, r.mwpm, r.ml))
        .collect();
    ensure(
        ok,
        format!(
            "{checked} syndromes match brute force; L=3 exact {}",
            table.join(", ")
        ),
    )
}

// ── 8 ──────────────────────────────────────────────────────────────────

fn error_suppression() -> Check {
    let mut rows = Vec::new();
    for l in [3usize, 5, 7] {
        let t = build_torus(l).map_err(|e| e.to_string())?;
        let code = css_from_complex(&t).map_err(|e| e.to_string())?;
        let runner = TrialRunner::new(&t, &code).map_err(|e| e.to_string())?;
        let (s, _) = runner
            .run(0.05, 100_000, DecoderKind::Mwpm, 8, false)
            .map_err(|e| e.to_string())?;
        rows.push((l, s.epsilon, s.interval));
    }
    let ordered = rows.windows(2).all(|w| w[1].2 .1 < w[0].2 .0);
    let mut parts: Vec<String> = rows
        .iter()
        .map(|(l, e, (lo, hi))| format!("L={l}: {e:.5} [{lo:.5}, {hi:.5}]"))
        .collect();

    let mut fit_ok = true;
    for (k, pc, beta) in [(0.6f64, 0.1f64, 1.0f64), (0.9, 0.08, default_beta())] {
        let mut pts = Vec::new();
        for d in [3.0f64, 5.0, 7.0] {
            for p in [0.01, 0.02, 0.04] {
                let eps = (p / pc).powf(k * d.powf(beta));
                pts.push(ScalingPoint { d, p, epsilon: eps });
            }
        }
        let f = fit_scaling(&pts, beta).map_err(|e| e.to_string())?;
        let (ek, ep) = ((f.k - k).abs() / k, (f.p_c - pc).abs() / pc);
        fit_ok &= ek <= 0.02 && ep <= 0.02;
        parts.push(format!(
            "fit K={:.4} p_c={:.4} (true {k}, {pc})",
            f.k, f.p_c
        ));
    }
    ensure(ordered && fit_ok, parts.join(", "))
}

// ── 9 ──────────────────────────────────────────────────────────────────

fn economy_of_scale() -> Check {
    let mut results = Vec::new();
    for (n, base) in [(4usize, None), (16, Some(22))] {
        let mut bp = blueprint(8, n, 1);
        bp.symmetrized = true;
        bp.base_side = base;
        let k = construct(&bp).map_err(|e| e.to_string())?;
        let code = css_from_complex(&k.complex).map_err(|e| e.to_string())?;
        let runner = TrialRunner::new(&k.complex, &code).map_err(|e| e.to_string())?;
        let (s, _) = runner
            .run(0.02, 100_000, DecoderKind::Mwpm, 5, false)
            .map_err(|e| e.to_string())?;
        let (eps, (lo, hi)) = s.per_handle_qubit().ok_or("no handle qubits")?;
        let per_logical = k.complex.edge_count() as f64 / code.k as f64;
        results.push((n, per_logical, code.k, s.handle_qubits(), eps, lo, hi));
    }
    let (a, b) = (&results[0], &results[1]);
    let parts: Vec<String> = results
        .iter()
        .map(|(n, q, k, h, e, lo, hi)| {
            format!("N={n}: E/k={q:.1} k={k} handle qubits={h} ε̂={e:.6} [{lo:.6}, {hi:.6}]")
        })
        .collect();
    ensure(b.6 < a.5, parts.join(", "))
}

// ── 10 ─────────────────────────────────────────────────────────────────

fn threshold_formulas() -> Check {
    let mut parts = Vec::new();
    let mut ok = true;
    for l in [8.0f64, 16.0] {
        let reference = threshold_factor_closed(l, 2.0, 1.0);
        let same = [16.0, 256.0, 1e6, 1e12]
            .iter()
            .all(|&n| threshold_factor_closed(l, n, 1.0) == reference);
        ok &= same && reference == 8.0 * (-12.0 / l).exp();
        parts.push(format!("β=1 L={l}: {reference:.6} for all N"));
    }
    for l in [8.0f64, 16.0] {
        for n in [16.0f64, 256.0] {
            let sp = ScalingParams::new(l, n);
            let prod = threshold_factor_product(&sp, recursion_area(sp.rho, product_radius(&sp)))
                .map_err(|e| e.to_string())?;
            let closed = threshold_factor_closed(l, n, default_beta());
            parts.push(format!(
                "L={l} N={n}: product/closed {:.4}",
                prod.product / closed
            ));
        }
    }
    let flat = count_walks(&build_torus(12).map_err(|e| e.to_string())?, 0, 10)
        .map_err(|e| e.to_string())?;
    ok &= flat.v == 4.0;
    let k = construct(&blueprint(8, 4, 1)).map_err(|e| e.to_string())?;
    let curved = count_walks(&k.complex, 0, 12).map_err(|e| e.to_string())?;
    ok &= curved.v > 4.0 && curved.v < 5.0;
    parts.push(format!(
        "walks: flat v={} handled v={:.4}",
        flat.v, curved.v
    ));
    ensure(ok, parts.join(", "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("torus distance", torus_distance),
        ("two-torus join", two_torus_join),
        ("surgery invariants", surgery_invariants),
        ("recursion vs closed form", recursion_vs_closed_form),
        ("measured growth", measured_growth),
        ("minimal-loop scaling", min_loop_scaling),
        ("decoder correctness", decoder_correctness),
        ("error suppression", error_suppression),
        ("economy of scale", economy_of_scale),
        ("threshold formulas", threshold_formulas),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let t0 = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = t0.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id:>2} {name} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {id:>2} {name} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
