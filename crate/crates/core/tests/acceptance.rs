//! Acceptance suite. Runs without the libtest harness so that each
//! criterion prints exactly one PASS/FAIL line, and exits non-zero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bezier_cond::conditioning::kappa_higham;
use bezier_cond::fixtures;
use bezier_cond::perturb::empirical_ratio;
use bezier_cond::{
    condition_report, find_intersections, BernsteinPoly, BezierCurve, Flag, IntersectConfig, Vec2,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Direct Bernstein sums, kept apart from the library's de Casteljau code.

fn binom(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn basis(n: usize, j: usize, s: f64) -> f64 {
    binom(n, j) * (1.0 - s).powi((n - j) as i32) * s.powi(j as i32)
}

fn bsum(c: &[f64], s: f64) -> f64 {
    let n = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(j, cj)| cj * basis(n, j, s))
        .sum()
}

fn bsum_abs(c: &[f64], s: f64) -> f64 {
    let n = c.len() - 1;
    c.iter()
        .enumerate()
        .map(|(j, cj)| cj.abs() * basis(n, j, s))
        .sum()
}

fn bderiv(c: &[f64], s: f64) -> f64 {
    let n = c.len() - 1;
    if n == 0 {
        return 0.0;
    }
    let d: Vec<f64> = c.windows(2).map(|w| n as f64 * (w[1] - w[0])).collect();
    bsum(&d, s)
}

fn point(pts: &[[f64; 2]], s: f64) -> [f64; 2] {
    let xs: Vec<f64> = pts.iter().map(|p| p[0]).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p[1]).collect();
    [bsum(&xs, s), bsum(&ys, s)]
}

fn curve(pts: &[[f64; 2]]) -> BezierCurve {
    let v: Vec<Vec2> = pts.iter().map(|&p| p.into()).collect();
    BezierCurve::new(&v).unwrap()
}

fn random_points(rng: &mut ChaCha8Rng, max_degree: usize) -> Vec<[f64; 2]> {
    let n = rng.gen_range(1..=max_degree);
    (0..=n)
        .map(|_| [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)])
        .collect()
}

fn criterion_1() -> Outcome {
    let (b0, b1) = fixtures::transversal_line_quadratic();
    let found =
        find_intersections(&b0, &b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
    ensure(found.records.len() == 1, || {
        format!("{} records", found.records.len())
    })?;
    let r = condition_report(&b0, &b1, &found.records[0]).map_err(|e| e.to_string())?;
    let expected = 202f64.sqrt() / 8.0;
    ensure(rel(r.kappa, expected) <= 1e-12, || {
        format!("kappa {} vs {expected}", r.kappa)
    })?;
    let (v, w) = (r.v.unwrap(), r.w.unwrap());
    let exact = [
        ("mu1", r.mu1, 2.0),
        ("mu2", r.mu2, 3.0),
        ("v.v", v.dot(v), 5.0 / 64.0),
        ("w.w", w.dot(w), 5.0 / 64.0),
        ("v.w", v.dot(w), 3.0 / 64.0),
    ];
    for (name, got, want) in exact {
        ensure(rel(got, want) <= 1e-14, || {
            format!("{name} {got} vs {want}")
        })?;
    }
    Ok(format!("kappa = {:?} (sqrt(202)/8)", r.kappa))
}

/// Finds a simple root of the Bernstein-form polynomial by sign-change
/// scan and bisection, with direct sums only.
fn simple_root(c: &[f64]) -> Option<f64> {
    const N: usize = 2000;
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    for i in 0..N {
        let (mut lo, mut hi) = (i as f64 / N as f64, (i + 1) as f64 / N as f64);
        if lo < 0.02 || hi > 0.98 {
            continue;
        }
        let (flo, fhi) = (bsum(c, lo), bsum(c, hi));
        if flo.signum() == fhi.signum() {
            continue;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if bsum(c, mid).signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let a = 0.5 * (lo + hi);
        // Newton check: well-separated simple root.
        let d = bderiv(c, a);
        if d.abs() > 1e-2 * scale && (bsum(c, a) / d).abs() < 1e-13 {
            return Some(a);
        }
    }
    None
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut worst = 0.0f64;
    while checked < 100 {
        let n = rng.gen_range(1..=6);
        let c: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let Some(alpha) = simple_root(&c) else {
            continue;
        };
        let p = BernsteinPoly::new(c.clone()).unwrap();
        let (e0, e1) = fixtures::collapse_embedding(&p);
        let found =
            find_intersections(&e0, &e1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
        let rec = found
            .records
            .iter()
            .find(|r| (r.alpha - alpha).abs() < 1e-9 && r.beta.abs() < 1e-9)
            .ok_or_else(|| format!("root {alpha} of {c:?} not found"))?;
        let k = condition_report(&e0, &e1, rec)
            .map_err(|e| e.to_string())?
            .kappa;
        let a = rec.alpha;
        let oracle = bsum_abs(&c, a) / (a * bderiv(&c, a)).abs();
        let err = rel(k, oracle);
        ensure(err <= 1e-12, || {
            format!("{c:?} at {a}: kappa {k} vs {oracle}")
        })?;
        worst = worst.max(err);
        checked += 1;
    }
    Ok(format!("100 polynomials, worst relative error {worst:.2e}"))
}

fn family_kappa(b0: &BezierCurve, b1: &BezierCurve, expected: (f64, f64)) -> Result<f64, String> {
    let found =
        find_intersections(b0, b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
    let rec = found
        .records
        .iter()
        .find(|r| (r.alpha - expected.0).hypot(r.beta - expected.1) < 1e-9)
        .ok_or("root not found")?;
    Ok(condition_report(b0, b1, rec)
        .map_err(|e| e.to_string())?
        .kappa)
}

fn criterion_3() -> Outcome {
    let mut worst = 0.0f64;
    for d in [0.0, 1.0, 10.0, 100.0, 1e4] {
        let (b0, b1) = fixtures::offset_lines(d);
        let k = family_kappa(&b0, &b1, (0.5, 0.5))?;
        let expected = 2f64.sqrt() * (2.0 * d + 1.0);
        worst = worst.max(rel(k, expected));
        ensure(rel(k, expected) <= 1e-10, || {
            format!("D={d}: {k} vs {expected}")
        })?;
    }
    Ok(format!("5 offsets, worst relative error {worst:.2e}"))
}

fn criterion_4() -> Outcome {
    let mut worst = 0.0f64;
    for r in [1.0, 0.1, 0.01, 1e-4, 1e-3] {
        let (b0, b1) = fixtures::coincidence_lines(r);
        let k = family_kappa(&b0, &b1, (1.0, 1.0))?;
        let expected = (4.0 / (r * r) + 4.0 / r + 2.0).sqrt();
        worst = worst.max(rel(k, expected));
        ensure(rel(k, expected) <= 1e-9, || {
            format!("r={r}: {k} vs {expected}")
        })?;
        if r <= 1e-3 {
            let gap = (k - (2.0 / r + 1.0)).abs();
            ensure(gap <= r, || format!("r={r}: |kappa - (2/r + 1)| = {gap}"))?;
        }
    }
    Ok(format!("5 values of r, worst relative error {worst:.2e}"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = 0;
    let mut frob_worst = 0.0f64;
    let mut min_slack = f64::INFINITY;
    while instances < 1000 {
        let b0 = curve(&random_points(&mut rng, 4));
        let b1 = curve(&random_points(&mut rng, 4));
        let found =
            find_intersections(&b0, &b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
        for rec in found.transversal() {
            if instances == 1000 {
                break;
            }
            let report = condition_report(&b0, &b1, rec).map_err(|e| e.to_string())?;
            if !report.is_finite() {
                continue;
            }
            let j_inv = rec
                .jacobian
                .inverse()
                .ok_or("transversal record with singular J")?;
            let h =
                kappa_higham(&b0, &b1, rec.alpha, rec.beta, &j_inv).map_err(|e| e.to_string())?;
            ensure(report.kappa <= h.relative * (1.0 + 1e-12), || {
                format!("kappa {} > kappa_H {}", report.kappa, h.relative)
            })?;
            let fe = rel(h.frobenius_explicit, h.frobenius_closed_form);
            ensure(fe <= 1e-12, || {
                format!(
                    "Frobenius {} vs closed form {}",
                    h.frobenius_explicit, h.frobenius_closed_form
                )
            })?;
            frob_worst = frob_worst.max(fe);
            min_slack = min_slack.min(h.relative / report.kappa);
            instances += 1;
        }
    }
    Ok(format!(
        "1000 instances, min kappa_H/kappa {min_slack:.4}, worst Frobenius mismatch {frob_worst:.2e}"
    ))
}

fn max_ratio(b0: &BezierCurve, b1: &BezierCurve, eps: f64) -> Result<(f64, f64), String> {
    let found =
        find_intersections(b0, b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
    let rec = found.transversal().next().ok_or("no transversal root")?;
    let kappa = condition_report(b0, b1, rec)
        .map_err(|e| e.to_string())?
        .kappa;
    let trials = empirical_ratio(b0, b1, rec, eps).map_err(|e| e.to_string())?;
    ensure(trials.iter().all(|t| t.converged), || {
        "perturbed Newton failed".into()
    })?;
    let m = trials
        .iter()
        .map(|t| t.ratio)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok((m, kappa))
}

fn criterion_6() -> Outcome {
    let mut notes = Vec::new();
    for (name, (b0, b1)) in [
        ("line/quadratic", fixtures::transversal_line_quadratic()),
        ("offset D=10", fixtures::offset_lines(10.0)),
    ] {
        let (m1, kappa) = max_ratio(&b0, &b1, 1e-6)?;
        let (m2, _) = max_ratio(&b0, &b1, 5e-7)?;
        ensure(rel(m1, kappa) <= 0.01, || {
            format!("{name}: ratio {m1} vs kappa {kappa}")
        })?;
        let (g1, g2) = ((m1 - kappa).abs(), (m2 - kappa).abs());
        let factor = g1 / g2;
        ensure((1.5..=3.0).contains(&factor), || {
            format!("{name}: gap {g1:.3e} -> {g2:.3e}, factor {factor}")
        })?;
        notes.push(format!("{name} gap factor {factor:.3}"));
    }
    Ok(notes.join(", "))
}

fn criterion_7() -> Outcome {
    let (b0, b1) = fixtures::tangent_parabola();
    let found =
        find_intersections(&b0, &b1, &IntersectConfig::default()).map_err(|e| e.to_string())?;
    ensure(!found.records.is_empty(), || "tangency not reported".into())?;
    for rec in &found.records {
        ensure(!rec.transversal, || {
            format!("record {rec:?} marked transversal")
        })?;
        let r = condition_report(&b0, &b1, rec).map_err(|e| e.to_string())?;
        ensure(r.flags.contains(&Flag::NonTransversal), || {
            "flag missing".into()
        })?;
        ensure(
            r.kappa == f64::INFINITY
                && r.kappa_abs == f64::INFINITY
                && r.kappa_higham == f64::INFINITY,
            || {
                format!(
                    "finite condition number {} at det J = {}",
                    r.kappa, rec.det_j
                )
            },
        )?;
    }
    ensure(!found.diagnostics.is_empty(), || "no diagnostic".into())?;
    Ok(format!(
        "{} record(s), all NON_TRANSVERSAL with infinite kappa",
        found.records.len()
    ))
}

/// Crossings of two densely sampled polylines, each refined by resampling
/// a shrinking window around it.
fn brute_force_crossings(p0: &[[f64; 2]], p1: &[[f64; 2]]) -> Vec<(f64, f64)> {
    const SAMPLES: usize = 10_000;
    const CHUNK: usize = 100;
    let sample = |pts: &[[f64; 2]], lo: f64, hi: f64, n: usize| -> Vec<[f64; 2]> {
        (0..=n)
            .map(|i| point(pts, lo + (hi - lo) * i as f64 / n as f64))
            .collect()
    };
    let crossings =
        |a: &[[f64; 2]], b: &[[f64; 2]], chunk: usize| -> Vec<(usize, f64, usize, f64)> {
            let bbox = |seg: &[[f64; 2]]| {
                seg.iter().fold(
                    [
                        f64::INFINITY,
                        f64::INFINITY,
                        f64::NEG_INFINITY,
                        f64::NEG_INFINITY,
                    ],
                    |m, p| {
                        [
                            m[0].min(p[0]),
                            m[1].min(p[1]),
                            m[2].max(p[0]),
                            m[3].max(p[1]),
                        ]
                    },
                )
            };
            let chunks = |pts: &[[f64; 2]]| -> Vec<(usize, [f64; 4])> {
                (0..pts.len() - 1)
                    .step_by(chunk)
                    .map(|start| {
                        let end = (start + chunk).min(pts.len() - 1);
                        (start, bbox(&pts[start..=end]))
                    })
                    .collect()
            };
            let (ca, cb) = (chunks(a), chunks(b));
            let mut out = Vec::new();
            for &(sa, ba) in &ca {
                for &(sb, bb) in &cb {
                    if ba[0] > bb[2] || bb[0] > ba[2] || ba[1] > bb[3] || bb[1] > ba[3] {
                        continue;
                    }
                    for i in sa..(sa + chunk).min(a.len() - 1) {
                        for j in sb..(sb + chunk).min(b.len() - 1) {
                            if let Some((u, v)) = segment_hit(a[i], a[i + 1], b[j], b[j + 1]) {
                                out.push((i, u, j, v));
                            }
                        }
                    }
                }
            }
            out
        };

    let a = sample(p0, 0.0, 1.0, SAMPLES);
    let b = sample(p1, 0.0, 1.0, SAMPLES);
    let h = 1.0 / SAMPLES as f64;
    let mut roots: Vec<(f64, f64)> = Vec::new();
    for (i, u, j, v) in crossings(&a, &b, CHUNK) {
        let (mut s, mut t) = ((i as f64 + u) * h, (j as f64 + v) * h);
        let mut width = 2.0 * h;
        for _ in 0..4 {
            let (slo, shi) = ((s - width).max(0.0), (s + width).min(1.0));
            let (tlo, thi) = ((t - width).max(0.0), (t + width).min(1.0));
            let m = 200;
            let la = sample(p0, slo, shi, m);
            let lb = sample(p1, tlo, thi, m);
            let best = crossings(&la, &lb, m)
                .into_iter()
                .map(|(i, u, j, v)| {
                    let ns = slo + (shi - slo) * (i as f64 + u) / m as f64;
                    let nt = tlo + (thi - tlo) * (j as f64 + v) / m as f64;
                    (ns, nt)
                })
                .min_by(|x, y| {
                    let dx = (x.0 - s).hypot(x.1 - t);
                    let dy = (y.0 - s).hypot(y.1 - t);
                    dx.total_cmp(&dy)
                });
            let Some((ns, nt)) = best else { break };
            s = ns;
            t = nt;
            width /= 50.0;
        }
        let gap = {
            let (x, y) = (point(p0, s), point(p1, t));
            (x[0] - y[0]).hypot(x[1] - y[1])
        };
        // Proximity threshold; duplicates from shared polyline vertices merge.
        if gap <= 1e-3 && !roots.iter().any(|r| (r.0 - s).hypot(r.1 - t) < 1e-6) {
            roots.push((s, t));
        }
    }
    roots
}

fn segment_hit(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> Option<(f64, f64)> {
    let d1 = [q[0] - p[0], q[1] - p[1]];
    let d2 = [s[0] - r[0], s[1] - r[1]];
    let den = d1[0] * d2[1] - d1[1] * d2[0];
    if den == 0.0 {
        return None;
    }
    let e = [r[0] - p[0], r[1] - p[1]];
    let u = (e[0] * d2[1] - e[1] * d2[0]) / den;
    let v = (e[0] * d1[1] - e[1] * d1[0]) / den;
    ((0.0..=1.0).contains(&u) && (0.0..=1.0).contains(&v)).then_some((u, v))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut total_oracle = 0;
    let mut total_found = 0;
    for case in 0..200 {
        let p0 = random_points(&mut rng, 4);
        let p1 = random_points(&mut rng, 4);
        let oracle = brute_force_crossings(&p0, &p1);
        let found = find_intersections(&curve(&p0), &curve(&p1), &IntersectConfig::default())
            .map_err(|e| e.to_string())?;
        for &(s, t) in &oracle {
            ensure(
                found
                    .records
                    .iter()
                    .any(|r| (r.alpha - s).hypot(r.beta - t) <= 1e-6),
                || {
                    format!(
                        "case {case}: oracle root ({s}, {t}) missed; found {:?}",
                        found.records
                    )
                },
            )?;
        }
        for r in found.transversal() {
            ensure(
                oracle
                    .iter()
                    .any(|&(s, t)| (r.alpha - s).hypot(r.beta - t) <= 1e-6),
                || {
                    format!(
                        "case {case}: ({}, {}) not seen by oracle {oracle:?}",
                        r.alpha, r.beta
                    )
                },
            )?;
        }
        total_oracle += oracle.len();
        total_found += found.records.len();
    }
    Ok(format!(
        "200 pairs, {total_oracle} oracle crossings, {total_found} solver roots"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 transversal fixture", criterion_1),
        ("2 scalar collapse", criterion_2),
        ("3 offset family", criterion_3),
        ("4 coincidence family", criterion_4),
        ("5 norm-ball bound", criterion_5),
        ("6 perturbation attainment", criterion_6),
        ("7 non-transversal handling", criterion_7),
        ("8 solver soundness", criterion_8),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {name}: PASS ({msg}) [{secs:.2}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {name}: FAIL ({msg}) [{secs:.2}s]");
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
