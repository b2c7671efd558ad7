use std::path::Path;

use highgenus::complex::{build_torus, SurfaceFile};
use highgenus::decoding::{fit_scaling, DecoderKind, ScalingPoint, TrialRunner};
use highgenus::geometry::{
    closed_form_perimeter, count_walks, measure_circle_growth, predicted_min_loop, product_radius,
    recursion_area, solve_perimeter_recursion, threshold_factor_closed, threshold_factor_product,
    ScalingParams,
};
use highgenus::homology::{css_from_complex, systole_bruteforce, systole_with_code, SystoleReport};
use highgenus::stats::median;
use highgenus::surface::{construct, effective_kink_density};
use highgenus::CellComplex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::ExperimentConfig;
use crate::error::{CliError, CliResult};
use crate::output::{num, opt, sha256_hex, write_file, ResultBundle, Table};

pub struct Loaded {
    pub file: SurfaceFile,
    pub complex: CellComplex,
    pub hash: String,
}

pub fn load_surface(path: &Path) -> CliResult<Loaded> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let surface = |source| CliError::Surface {
        path: path.to_path_buf(),
        source,
    };
    let file = SurfaceFile::from_json(&text).map_err(surface)?;
    let complex = file.complex().map_err(surface)?;
    let hash = sha256_hex(complex.to_canonical_json().as_bytes());
    Ok(Loaded {
        file,
        complex,
        hash,
    })
}

/// `l` and `n` recorded in a surface file's blueprint, when present.
fn blueprint_scale(file: &SurfaceFile) -> Option<(f64, f64)> {
    let l = file.blueprint.get("l")?.as_f64()?;
    let n = file.blueprint.get("n")?.as_f64()?;
    Some((l, n))
}

fn shape_line(c: &CellComplex) -> String {
    format!(
        "V={} E={} F={} chi={} orientable={}",
        c.vertex_count(),
        c.edge_count(),
        c.face_count(),
        c.euler_characteristic(),
        c.is_orientable()
    )
}

pub fn build(cfg: &ExperimentConfig) -> CliResult<()> {
    let mut bundle = ResultBundle::new("build", cfg);
    let (file, complex, details) = if cfg.build.torus > 0 {
        let side = cfg.build.torus;
        let c = build_torus(side)?;
        let details = json!({
            "diagnostics": c.validate(),
            "kink_density": effective_kink_density(&c),
        });
        (
            SurfaceFile::new(&c, json!({ "torus": side }), Some(cfg.seed)),
            c,
            details,
        )
    } else {
        let k = construct(&cfg.blueprint())?;
        let blueprint = serde_json::to_value(&k.blueprint).expect("blueprint serializes");
        let details = json!({
            "diagnostics": k.diagnostics,
            "kink_density_repaired": k.kink_density_repaired,
            "kink_density": k.kink_density,
            "pairings": k.pairings,
            "symmetrize_skipped": k.symmetrize_skipped,
            "symmetrize_loop_length": k.symmetrize_loop_length,
        });
        (
            SurfaceFile::new(&k.complex, blueprint, Some(cfg.seed)),
            k.complex,
            details,
        )
    };
    let out = cfg.out_dir().join(&cfg.build.output);
    let text = file.to_json();
    write_file(&out, &text)?;
    let diag_path = cfg.out_dir().join("diagnostics.json");
    write_file(
        &diag_path,
        &serde_json::to_string_pretty(&details).expect("json"),
    )?;

    bundle
        .complex_hashes
        .push(sha256_hex(complex.to_canonical_json().as_bytes()));
    bundle.line(format!("surface: {}", out.display()));
    bundle.line(format!("file sha256: {}", sha256_hex(text.as_bytes())));
    bundle.line(shape_line(&complex));
    if let Some(rho) = details
        .get("kink_density_repaired")
        .and_then(|v| v.as_f64())
    {
        bundle.line(format!("kink density after repair: {rho:.6}"));
    }
    bundle.line(format!(
        "kink density: {:.6}",
        details["kink_density"].as_f64().unwrap_or(f64::NAN)
    ));
    bundle.line("validate: passed");
    bundle.details = details;
    bundle.finish(cfg.out_dir())?;
    Ok(())
}

pub fn validate(cfg: &ExperimentConfig) -> CliResult<()> {
    let path = cfg.surface_path();
    let s = load_surface(path)?;
    let d = s.complex.validate();
    let mut bundle = ResultBundle::new("validate", cfg);
    bundle.complex_hashes.push(s.hash.clone());
    bundle.line(format!("surface: {}", path.display()));
    bundle.line(shape_line(&s.complex));
    let mut logical = None;
    if d.passed {
        let code = css_from_complex(&s.complex)?;
        bundle.line(format!("logical qubits: {}", code.k));
        logical = Some(code.k);
    }
    for issue in &d.issues {
        bundle.line(format!("issue: {issue}"));
    }
    bundle.line(format!(
        "validate: {}",
        if d.passed { "passed" } else { "failed" }
    ));
    bundle.details = json!({ "diagnostics": d, "logical_qubits": logical });
    bundle.finish(cfg.out_dir())?;
    if d.passed {
        Ok(())
    } else {
        Err(CliError::Invalid(d.issues.join("; ")))
    }
}

pub fn systole(cfg: &ExperimentConfig) -> CliResult<()> {
    let path = cfg.surface_path();
    let s = load_surface(path)?;
    let code = css_from_complex(&s.complex)?;
    let report = systole_with_code(&s.complex, &code)?;
    let seed = opt(s.file.seed);
    let mut t = Table::new("systole", &["seed", "kind", "handle", "length"]);
    let mut push = |kind: &str, handle: String, length: String| {
        t.push(vec![seed.clone(), kind.to_string(), handle, length]);
    };
    let add_report =
        |push: &mut dyn FnMut(&str, String, String), r: &SystoleReport, suffix: &str| {
            push(
                &format!("primal{suffix}"),
                String::new(),
                opt(r.primal.as_ref().map(|w| w.length)),
            );
            push(
                &format!("dual{suffix}"),
                String::new(),
                opt(r.dual.as_ref().map(|w| w.length)),
            );
        };
    add_report(&mut push, &report, "");
    for h in &report.handle_loops {
        push("handle", h.handle.to_string(), h.length.to_string());
    }
    let mut brute = None;
    if cfg.systole.bruteforce_radius > 0 {
        let b = systole_bruteforce(&s.complex, cfg.systole.bruteforce_radius)?;
        add_report(&mut push, &b, "_bruteforce");
        brute = Some(b);
    }

    let mut bundle = ResultBundle::new("systole", cfg);
    bundle.complex_hashes.push(s.hash);
    bundle.add_table(cfg.out_dir(), &t)?;
    bundle.line(format!("surface: {}", path.display()));
    bundle.line(format!("logical qubits: {}", code.k));
    bundle.line(format!(
        "primal systole: {}",
        opt(report.primal.as_ref().map(|w| w.length))
    ));
    bundle.line(format!(
        "dual systole: {}",
        opt(report.dual.as_ref().map(|w| w.length))
    ));
    let loops: Vec<f64> = report
        .handle_loops
        .iter()
        .map(|h| h.length as f64)
        .collect();
    if let Some(m) = median(&loops) {
        bundle.line(format!(
            "median handle l-loop: {m} over {} handles",
            loops.len()
        ));
    }
    if let Some(b) = &brute {
        bundle.line(format!(
            "exhaustive search to length {}: primal {} dual {}{}",
            cfg.systole.bruteforce_radius,
            opt(b.primal.as_ref().map(|w| w.length)),
            opt(b.dual.as_ref().map(|w| w.length)),
            if b.inconclusive {
                " (inconclusive)"
            } else {
                ""
            }
        ));
    }
    bundle.details = json!({ "report": report, "bruteforce": brute });
    bundle.finish(cfg.out_dir())?;
    Ok(())
}

/// Distinct vertices drawn with the master seed; every vertex when `k ≥ V`.
fn sample_roots(v: usize, k: usize, seed: u64) -> Vec<usize> {
    if k >= v {
        return (0..v).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots = rand::seq::index::sample(&mut rng, v, k).into_vec();
    roots.sort_unstable();
    roots
}

pub fn growth(cfg: &ExperimentConfig) -> CliResult<()> {
    let path = cfg.surface_path();
    let s = load_surface(path)?;
    let g = &cfg.growth;
    let rho = g.rho.unwrap_or_else(|| effective_kink_density(&s.complex));
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(CliError::Config(format!(
            "growth.rho must be a finite nonnegative number, got {rho}"
        )));
    }
    let recursion = solve_perimeter_recursion(rho, g.r_max);
    // Closed form at the scale whose default density is `rho`: ρ = 8/L².
    let closed = |r: usize| {
        if r == 0 {
            f64::NAN
        } else if rho == 0.0 {
            4.0 * r as f64
        } else {
            closed_form_perimeter((8.0 / rho).sqrt(), r as f64)
        }
    };
    let roots = sample_roots(s.complex.vertex_count(), g.roots, cfg.seed);
    let mut t = Table::new(
        "growth",
        &[
            "seed",
            "root",
            "r",
            "c_measured",
            "c_recursion",
            "c_closed_form",
            "a_measured",
            "a_recursion",
        ],
    );
    let mut worst: f64 = 1.0;
    for &root in &roots {
        let m = measure_circle_growth(&s.complex, root, g.r_max)?;
        for r in 0..=g.r_max {
            let ratio = m.area[r] / recursion.area[r];
            worst = worst.max(ratio.max(1.0 / ratio));
            t.push(vec![
                cfg.seed.to_string(),
                root.to_string(),
                r.to_string(),
                num(m.perimeter[r]),
                num(recursion.perimeter[r]),
                num(closed(r)),
                num(m.area[r]),
                num(recursion.area[r]),
            ]);
        }
    }
    let mut bundle = ResultBundle::new("growth", cfg);
    bundle.complex_hashes.push(s.hash);
    bundle.add_table(cfg.out_dir(), &t)?;
    bundle.line(format!("surface: {}", path.display()));
    bundle.line(format!(
        "roots: {} radius: {} rho: {rho:.6}",
        roots.len(),
        g.r_max
    ));
    bundle.line(format!(
        "largest area ratio measured/recursion (or inverse): {worst:.4}"
    ));
    let mut r_star = None;
    if let Some((l, n)) = blueprint_scale(&s.file) {
        if let Ok(pred) = predicted_min_loop(&ScalingParams {
            rho,
            ..ScalingParams::new(l, n)
        }) {
            bundle.line(format!(
                "predicted min-loop radius: {} (reference {:.3})",
                pred.radius, pred.reference
            ));
            r_star = Some(pred);
        }
    }
    bundle.details = json!({ "rho": rho, "roots": roots, "max_area_ratio": worst, "predicted_min_loop": r_star });
    bundle.finish(cfg.out_dir())?;
    Ok(())
}

pub fn simulate(cfg: &ExperimentConfig) -> CliResult<()> {
    let sim = &cfg.simulate;
    let mut bundle = ResultBundle::new("simulate", cfg);
    let mut summary = Table::new(
        "simulate",
        &[
            "surface",
            "seed",
            "p",
            "decoder",
            "trials",
            "failures",
            "x_failures",
            "z_failures",
            "epsilon",
            "ci_low",
            "ci_high",
            "distance",
            "logical_qubits",
            "handle_qubits",
            "handle_failures",
            "base_failures",
            "per_handle_qubit",
            "per_handle_ci_low",
            "per_handle_ci_high",
        ],
    );
    let mut log = Table::new(
        "trials",
        &[
            "surface",
            "seed",
            "trial",
            "p",
            "decoder",
            "defects",
            "correction_weight",
            "outcome",
            "flipped_sectors",
        ],
    );
    let mut points: Vec<(DecoderKind, ScalingPoint)> = Vec::new();
    for path in &sim.surfaces {
        let s = load_surface(path)?;
        let code = css_from_complex(&s.complex)?;
        let runner = TrialRunner::new(&s.complex, &code)?;
        let distance = if sim.fit {
            let r = systole_with_code(&s.complex, &code)?;
            r.primal.iter().chain(r.dual.iter()).map(|w| w.length).min()
        } else {
            None
        };
        let name = path.display().to_string();
        bundle.complex_hashes.push(s.hash.clone());
        bundle.line(format!(
            "surface: {name} ({}, k={})",
            shape_line(&s.complex),
            code.k
        ));
        for &p in &sim.p {
            for &kind in &sim.decoders {
                let (sum, records) = runner.run(p, sim.trials, kind, cfg.seed, sim.log_trials)?;
                let per = sum.per_handle_qubit();
                summary.push(vec![
                    name.clone(),
                    sum.seed.to_string(),
                    num(p),
                    kind.to_string(),
                    sum.trials.to_string(),
                    sum.failures.to_string(),
                    sum.x_failures.to_string(),
                    sum.z_failures.to_string(),
                    num(sum.epsilon),
                    num(sum.interval.0),
                    num(sum.interval.1),
                    opt(distance),
                    code.k.to_string(),
                    sum.handle_qubits().to_string(),
                    sum.handle_failures.to_string(),
                    sum.base_failures.to_string(),
                    opt(per.map(|x| num(x.0))),
                    opt(per.map(|x| num(x.1 .0))),
                    opt(per.map(|x| num(x.1 .1))),
                ]);
                for r in &records {
                    log.push(vec![
                        name.clone(),
                        r.seed.to_string(),
                        r.trial.to_string(),
                        num(r.p),
                        r.decoder.to_string(),
                        r.defects.to_string(),
                        r.correction_weight.to_string(),
                        if r.outcome.is_success() {
                            "success"
                        } else {
                            "failure"
                        }
                        .to_string(),
                        r.outcome.flipped_label(),
                    ]);
                }
                bundle.line(format!(
                    "  p={p} {kind}: {}/{} failures, epsilon {:.6} [{:.6}, {:.6}]",
                    sum.failures, sum.trials, sum.epsilon, sum.interval.0, sum.interval.1
                ));
                if let Some(d) = distance {
                    points.push((
                        kind,
                        ScalingPoint {
                            d: d as f64,
                            p,
                            epsilon: sum.epsilon,
                        },
                    ));
                }
            }
        }
    }
    bundle.add_table(cfg.out_dir(), &summary)?;
    if sim.log_trials {
        bundle.add_table(cfg.out_dir(), &log)?;
    }
    let mut fits = Vec::new();
    if sim.fit {
        let mut t = Table::new(
            "fit",
            &[
                "decoder",
                "beta",
                "k",
                "p_c",
                "rms_residual",
                "points",
                "dropped",
                "monotone",
            ],
        );
        for &kind in &sim.decoders {
            let pts: Vec<ScalingPoint> = points
                .iter()
                .filter(|(k, _)| *k == kind)
                .map(|(_, q)| *q)
                .collect();
            let f = fit_scaling(&pts, sim.beta)?;
            t.push(vec![
                kind.to_string(),
                num(f.beta),
                num(f.k),
                num(f.p_c),
                num(f.rms_residual),
                pts.len().to_string(),
                f.dropped.to_string(),
                f.monotone.to_string(),
            ]);
            bundle.line(format!(
                "fit {kind}: K={:.4} p_c={:.4} rms={:.4} monotone={}",
                f.k, f.p_c, f.rms_residual, f.monotone
            ));
            fits.push(f);
        }
        bundle.add_table(cfg.out_dir(), &t)?;
    }
    bundle.details = json!({ "fits": fits });
    bundle.finish(cfg.out_dir())?;
    Ok(())
}

pub fn threshold(cfg: &ExperimentConfig) -> CliResult<()> {
    let th = &cfg.threshold;
    let mut bundle = ResultBundle::new("threshold", cfg);
    let walk = match &th.walk_surface {
        Some(path) => {
            let s = load_surface(path)?;
            let w = count_walks(&s.complex, th.walk_root, th.walk_r_max)?;
            bundle.complex_hashes.push(s.hash);
            bundle.line(format!(
                "walks on {}: v={:.6} 4/v={:.6}",
                path.display(),
                w.v,
                w.multiplier
            ));
            Some(w)
        }
        None => None,
    };
    let mut factors = Table::new(
        "threshold",
        &[
            "l",
            "n",
            "beta",
            "alpha",
            "rho",
            "k",
            "radius",
            "factor",
            "running_product",
        ],
    );
    let mut totals = Table::new(
        "threshold_summary",
        &[
            "l",
            "n",
            "beta",
            "alpha",
            "rho",
            "product",
            "empty",
            "beta_warning",
            "closed_form",
            "ratio",
            "walk_v",
            "walk_multiplier",
        ],
    );
    let mut results = Vec::new();
    for &n in &th.n {
        let mut sp = ScalingParams::new(th.l, n);
        if th.symmetrized {
            sp = sp.symmetrized();
        }
        sp.beta = th.beta;
        sp.alpha = th.alpha;
        let area = recursion_area(sp.rho, product_radius(&sp));
        let prod = threshold_factor_product(&sp, area)?;
        let closed = threshold_factor_closed(th.l, n, th.beta);
        let head =
            |t: &ScalingParams| vec![num(t.l), num(t.n), num(t.beta), num(t.alpha), num(t.rho)];
        for f in &prod.factors {
            let mut row = head(&sp);
            row.extend([
                f.k.to_string(),
                3usize.pow(f.k as u32).to_string(),
                num(f.factor),
                num(f.running_product),
            ]);
            factors.push(row);
        }
        let mut row = head(&sp);
        row.extend([
            num(prod.product),
            prod.empty.to_string(),
            prod.beta_warning.to_string(),
            num(closed),
            num(prod.product / closed),
            opt(walk.as_ref().map(|w| num(w.v))),
            opt(walk.as_ref().map(|w| num(w.multiplier))),
        ]);
        totals.push(row);
        bundle.line(format!(
            "L={} N={n} beta={:.6}: product {:.6}{} closed form {:.6} ratio {:.4}",
            th.l,
            th.beta,
            prod.product,
            if prod.empty { " (empty)" } else { "" },
            closed,
            prod.product / closed
        ));
        results.push(json!({ "n": n, "product": prod, "closed_form": closed }));
    }
    bundle.add_table(cfg.out_dir(), &factors)?;
    bundle.add_table(cfg.out_dir(), &totals)?;
    let walk = walk.map(|w| json!({ "v": w.v, "multiplier": w.multiplier }));
    bundle.details = json!({ "results": results, "walks": walk });
    bundle.finish(cfg.out_dir())?;
    Ok(())
}

pub fn walks(cfg: &ExperimentConfig) -> CliResult<()> {
    let path = cfg.surface_path();
    let s = load_surface(path)?;
    let w = count_walks(&s.complex, cfg.walks.root, cfg.walks.r_max)?;
    let mut t = Table::new("walks", &["root", "r", "count", "ratio"]);
    for (r, &c) in w.counts.iter().enumerate() {
        let ratio = if r == 0 {
            f64::NAN
        } else {
            c as f64 / w.counts[r - 1] as f64
        };
        t.push(vec![
            cfg.walks.root.to_string(),
            r.to_string(),
            c.to_string(),
            num(ratio),
        ]);
    }
    let mut bundle = ResultBundle::new("walks", cfg);
    bundle.complex_hashes.push(s.hash);
    bundle.add_table(cfg.out_dir(), &t)?;
    bundle.line(format!("surface: {}", path.display()));
    bundle.line(format!("v={:.6} 4/v={:.6}", w.v, w.multiplier));
    let counts: Vec<String> = w.counts.iter().map(|c| c.to_string()).collect();
    bundle.details = json!({ "counts": counts, "v": w.v, "multiplier": w.multiplier });
    bundle.finish(cfg.out_dir())?;
    Ok(())
}
