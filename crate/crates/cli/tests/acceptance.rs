//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use segguard_core::aspect::{disk_aspect_ratio, line_aspect_ratio};
use segguard_core::fixtures::{self, FixtureScene};
use segguard_core::oracle::{
    brute_blocker_sets, brute_blockers, coverage_report, random_polygon, random_scene, vp_oracle,
    Scene,
};
use segguard_core::slicer::{compute_lbv, compute_rbv, slice, GuardSet, TerminationReason};
use segguard_core::visibility::{sees, visibility_polygon, visible_intervals, visible_length};
use segguard_core::{Point, PointLocation, Polygon};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

struct Sliced {
    scene: Scene,
    guards: GuardSet,
    /// `None` when no admissible reflex pair exists and SW fell back to LW.
    sw: Option<f64>,
}

struct Corpus {
    scenes: Vec<Scene>,
    sliced: Vec<Sliced>,
    failures: Vec<String>,
    elapsed: Duration,
    coverage_failures: Vec<u64>,
    bound_failures: Vec<u64>,
}

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1e-12)
}

/// Seeds 1..=500 with 8..=40 vertices, sliced and checked against the
/// guard bound and a 2048-sample coverage test.
fn build_corpus() -> Corpus {
    let start = Instant::now();
    let mut corpus = Corpus {
        scenes: Vec::new(),
        sliced: Vec::new(),
        failures: Vec::new(),
        elapsed: Duration::ZERO,
        coverage_failures: Vec::new(),
        bound_failures: Vec::new(),
    };
    for seed in 1..=500u64 {
        let n = 8 + (seed % 33) as usize;
        let scene = match random_scene(seed, n) {
            Ok(s) => s,
            Err(e) => {
                corpus
                    .failures
                    .push(format!("seed {seed}: generation: {e}"));
                continue;
            }
        };
        match slice(&scene.polygon, scene.source, scene.target) {
            Ok(g) => {
                if g.guards.len() > g.bound() {
                    corpus.bound_failures.push(seed);
                }
                if !coverage_report(&scene.polygon, &g.guards, scene.target, 2048).is_complete() {
                    corpus.coverage_failures.push(seed);
                }
                let line = line_aspect_ratio(&scene.polygon);
                let sw = line.sw_witness.map(|_| line.sw);
                corpus.sliced.push(Sliced {
                    scene: scene.clone(),
                    guards: g,
                    sw,
                });
            }
            Err(e) => corpus.failures.push(format!("seed {seed}: slice: {e}")),
        }
        corpus.scenes.push(scene);
    }
    corpus.elapsed = start.elapsed();
    corpus
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let sc = fixtures::l8_scene();
    let g = match slice(&sc.polygon, sc.source, sc.target) {
        Ok(g) => g,
        Err(e) => return outcome(false, format!("slice failed: {e}")),
    };
    let report = coverage_report(&sc.polygon, &g.guards, sc.target, 10_000);
    let elapsed = start.elapsed();
    let pass = g.guards == vec![p(0.5, 1.), p(7.5, 1.)]
        && g.termination_reason == TerminationReason::SideExhausted
        && report.covered_fraction == 1.0
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!(
            "guards {:?}, reason {}, covered {}, {:.3}s",
            g.guards.iter().map(|q| (q.x, q.y)).collect::<Vec<_>>(),
            g.termination_reason.label(),
            report.covered_fraction,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2(c: &Corpus) -> Outcome {
    let pass = c.failures.is_empty()
        && c.sliced.len() >= 500
        && c.bound_failures.is_empty()
        && c.coverage_failures.is_empty()
        && c.elapsed < Duration::from_secs(60);
    let max_ratio = c
        .sliced
        .iter()
        .map(|s| s.guards.guards.len() as f64 / s.guards.bound() as f64)
        .fold(0.0, f64::max);
    let mut detail = format!(
        "{} scenes sliced, {} errors, {} over bound, {} uncovered, max |S|/bound {:.3}, {:.1}s",
        c.sliced.len(),
        c.failures.len(),
        c.bound_failures.len(),
        c.coverage_failures.len(),
        max_ratio,
        c.elapsed.as_secs_f64()
    );
    if let Some(f) = c.failures.first() {
        detail.push_str(&format!("; first error: {f}"));
    }
    outcome(pass, detail)
}

fn criterion_3(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut probes = 0;
    let mut mismatches = Vec::new();
    let mut multi = 0;
    let mut draws = 0;
    while probes < 1000 && draws < 20_000 {
        draws += 1;
        let sc = &c.scenes[rng.gen_range(0..c.scenes.len())];
        let q = sc.source.at(rng.gen_range(0.0..=1.0));
        let (Ok(l), Ok(r)) = (
            compute_lbv(&sc.polygon, q, sc.target),
            compute_rbv(&sc.polygon, q, sc.target),
        ) else {
            // q sees none of the target: no blockers are defined.
            continue;
        };
        probes += 1;
        let brute = brute_blockers(&sc.polygon, q, sc.target);
        if brute != (l.vertex, r.vertex) {
            mismatches.push(format!("seed {} q=({:.6},{:.6})", sc.seed, q.x, q.y));
        }
        let (ls, rs) = brute_blocker_sets(&sc.polygon, q, sc.target);
        if ls.len() > 1 || rs.len() > 1 {
            multi += 1;
        }
    }
    let pass = probes == 1000 && mismatches.is_empty() && multi == 0;
    let mut detail = format!(
        "{probes} probes, {} mismatches, {multi} with >1 survivor",
        mismatches.len()
    );
    if let Some(m) = mismatches.first() {
        detail.push_str(&format!("; first: {m}"));
    }
    outcome(pass, detail)
}

fn criterion_4(c: &Corpus) -> Outcome {
    let mut checked = 0;
    let mut vacuous = 0;
    let mut violations = Vec::new();
    for s in &c.sliced {
        for rec in &s.guards.trace {
            for (q, l, r) in [
                (rec.x_point, rec.lbv_x, rec.rbv_x),
                (rec.y_point, rec.lbv_y, rec.rbv_y),
            ] {
                if !(l.is_present() && r.is_present()) {
                    continue;
                }
                // Without an admissible strip the lower bound says nothing.
                let Some(sw) = s.sw else {
                    vacuous += 1;
                    continue;
                };
                checked += 1;
                let widest = visible_intervals(&s.scene.polygon, q, s.scene.target)
                    .iter()
                    .map(|i| i.length())
                    .fold(0.0, f64::max);
                if widest < sw - 1e-6 {
                    violations.push((s.scene.seed, widest, sw));
                }
            }
        }
    }
    let mut detail = format!(
        "{checked} trace points with both blockers and an admissible strip, {} below SW; {vacuous} more in SW-fallback polygons",
        violations.len()
    );
    if let Some((seed, w, sw)) = violations.first() {
        detail.push_str(&format!(
            "; first: seed {seed} interval {w:.6} < SW {sw:.6}"
        ));
    }
    outcome(violations.is_empty(), detail)
}

fn criterion_5(c: &Corpus) -> Outcome {
    let mut crossings = 0;
    let mut failures = Vec::new();
    for s in c
        .sliced
        .iter()
        .filter(|s| s.guards.termination_reason == TerminationReason::CrossOver)
    {
        crossings += 1;
        let mut sides = s.guards.x_points.clone();
        sides.extend(&s.guards.y_points);
        if !coverage_report(&s.scene.polygon, &sides, s.scene.target, 2048).is_complete() {
            failures.push(s.scene.seed);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{crossings} cross-over terminations, {} with gaps {:?}",
            failures.len(),
            failures
        ),
    )
}

fn transform(poly: &Polygon, theta: f64, scale: f64, shift: Point) -> Polygon {
    let (s, c) = theta.sin_cos();
    poly.map(|v| {
        p(
            scale * (c * v.x - s * v.y) + shift.x,
            scale * (s * v.x + c * v.y) + shift.y,
        )
    })
    .expect("similarity keeps the polygon simple")
}

fn criterion_6() -> Outcome {
    let mut errors = Vec::new();
    let sq = fixtures::square();
    let z = fixtures::z10();
    let sq_line = line_aspect_ratio(&sq);
    let sq_disk = disk_aspect_ratio(&sq);
    let z_line = line_aspect_ratio(&z);
    let z_disk = disk_aspect_ratio(&z);
    if sq_line.ar != 1.0 {
        errors.push(format!("AR_line(SQ) = {}", sq_line.ar));
    }
    if (z_line.lw - 10.0 * 2f64.sqrt()).abs() > 1e-9 {
        errors.push(format!("LW(Z10) = {}", z_line.lw));
    }
    if (z_line.sw - 1.0).abs() > 1e-9 {
        errors.push(format!("SW(Z10) = {}", z_line.sw));
    }
    let witness_ok = z_line.sw_witness.is_some_and(|w| {
        let mut pair = [(w.first.x, w.first.y), (w.second.x, w.second.y)];
        pair.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pair == [(5., 4.), (6., 6.)]
    });
    if !witness_ok {
        errors.push(format!("SW(Z10) witness {:?}", z_line.sw_witness));
    }
    if (z_disk.sd - 6.0).abs() > 1e-4 {
        errors.push(format!("SD(Z10) = {}", z_disk.sd));
    }
    if (sq_disk.ar - 2f64.sqrt()).abs() > 1e-9 {
        errors.push(format!("AR_disk(SQ) = {}", sq_disk.ar));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut transforms = 0;
    for (name, poly) in [("SQ", sq), ("L8", fixtures::l8()), ("Z10", z)] {
        let line = line_aspect_ratio(&poly);
        let disk = disk_aspect_ratio(&poly);
        for _ in 0..100 {
            transforms += 1;
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let scale = rng.gen_range(0.25..4.0);
            let shift = p(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0));
            let moved = transform(&poly, theta, scale, shift);
            let l2 = line_aspect_ratio(&moved);
            let d2 = disk_aspect_ratio(&moved);
            let checks = [
                ("LW", rel_close(l2.lw, scale * line.lw, 1e-9)),
                ("SW", rel_close(l2.sw, scale * line.sw, 1e-9)),
                ("AR_line", rel_close(l2.ar, line.ar, 1e-9)),
                ("LD", rel_close(d2.ld, scale * disk.ld, 1e-9)),
                ("SD", rel_close(d2.sd, scale * disk.sd, 1e-6)),
                ("AR_disk", rel_close(d2.ar, disk.ar, 1e-6)),
            ];
            for (what, ok) in checks {
                if !ok {
                    errors.push(format!(
                        "{name} {what} not invariant (theta {theta:.4}, scale {scale:.4})"
                    ));
                }
            }
        }
    }
    let mut detail = format!(
        "fixture values and {transforms} transforms, {} problems",
        errors.len()
    );
    if let Some(e) = errors.first() {
        detail.push_str(&format!("; first: {e}"));
    }
    outcome(errors.is_empty(), detail)
}

fn random_interior_point(rng: &mut ChaCha8Rng, poly: &Polygon) -> Option<Point> {
    let (lo, hi) = poly.bbox();
    (0..1000)
        .map(|_| p(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y)))
        .find(|&q| poly.locate(q) == PointLocation::Interior)
}

fn criterion_7(c: &Corpus) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut polys = 0;
    let mut worst_area = 0.0f64;
    let mut area_fail = Vec::new();
    while polys < 100 {
        let n = rng.gen_range(4..=40);
        let Some(poly) = random_polygon(&mut rng, n) else {
            continue;
        };
        let Some(q) = random_interior_point(&mut rng, &poly) else {
            continue;
        };
        polys += 1;
        let exact = match visibility_polygon(&poly, q) {
            Ok(vp) => vp.area(),
            Err(e) => {
                area_fail.push(format!("n={n}: {e}"));
                continue;
            }
        };
        let rays = vp_oracle(&poly, q, 4096).expect("enough rays");
        let rel = (exact - rays).abs() / rays.max(1e-12);
        worst_area = worst_area.max(rel);
        if rel > 1e-2 {
            area_fail.push(format!(
                "n={n} q=({:.4},{:.4}) area {exact:.6} vs {rays:.6}",
                q.x, q.y
            ));
        }
    }

    let mut worst_len = 0.0f64;
    let mut len_fail = 0;
    for sc in c.scenes.iter().take(100) {
        let q = sc.source.midpoint();
        let exact = visible_length(&sc.polygon, q, sc.target);
        let n = 10_000;
        let seen = (0..=n)
            .filter(|&k| sees(&sc.polygon, q, sc.target.at(k as f64 / n as f64)))
            .count();
        let sampled = seen as f64 / (n + 1) as f64 * sc.target.length();
        let rel = (exact - sampled).abs() / sc.target.length();
        worst_len = worst_len.max(rel);
        if rel > 1e-3 {
            len_fail += 1;
        }
    }
    let mut detail = format!(
        "VP area: {} of 100 off (worst {:.2e}); interval length: {len_fail} of 100 off (worst {:.2e})",
        area_fail.len(),
        worst_area,
        worst_len
    );
    if let Some(f) = area_fail.first() {
        detail.push_str(&format!("; first: {f}"));
    }
    outcome(area_fail.is_empty() && len_fail == 0, detail)
}

fn criterion_8() -> Outcome {
    let family: Vec<FixtureScene> = [0.0, 4.0, 16.0, 64.0, 256.0, 1024.0, 4096.0]
        .iter()
        .map(|&k| fixtures::stretched_l8(k))
        .collect();
    let mut counts = Vec::new();
    let mut line_ars = Vec::new();
    let mut disk_ars = Vec::new();
    for sc in &family {
        match slice(&sc.polygon, sc.source, sc.target) {
            Ok(g) => counts.push(g.guards.len()),
            Err(e) => return outcome(false, format!("slice failed: {e}")),
        }
        line_ars.push(line_aspect_ratio(&sc.polygon).ar);
        disk_ars.push(disk_aspect_ratio(&sc.polygon).ar);
    }
    let same_count = counts.windows(2).all(|w| w[0] == w[1]);
    let same_line = line_ars.windows(2).all(|w| w[0] == w[1]);
    let growing = disk_ars.windows(2).all(|w| w[1] > w[0])
        && disk_ars[disk_ars.len() - 1] > 100.0 * disk_ars[0];
    outcome(
        same_count && same_line && growing,
        format!(
            "|S| {:?}, AR_line {:?}, AR_disk {:?}",
            counts,
            line_ars,
            disk_ars
                .iter()
                .map(|a| (a * 100.0).round() / 100.0)
                .collect::<Vec<_>>()
        ),
    )
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_segguard"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let tmp = |name: &str| dir.path().join(name).to_string_lossy().into_owned();
    let f = |name: &str| fixture(name).to_string_lossy().into_owned();
    let (l8, sq, z10, hidden, malformed, bowtie, missing) = (
        f("l8.json"),
        f("square.json"),
        f("z10.json"),
        f("hidden.json"),
        f("malformed.json"),
        f("bowtie.json"),
        f("l8_missing_guard.json"),
    );
    let unwritable = "/nonexistent-dir/out.svg";
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["classify".into(), l8.clone()], 0),
        (vec!["classify".into(), sq.clone()], 0),
        (vec!["classify".into(), hidden.clone()], 0),
        (vec!["classify".into(), malformed.clone()], 2),
        (vec!["classify".into(), f("missing.json")], 2),
        (
            vec![
                "guards".into(),
                l8.clone(),
                "--samples".into(),
                "1000".into(),
            ],
            0,
        ),
        (vec!["guards".into(), z10.clone(), "--trace".into()], 0),
        (vec!["guards".into(), hidden.clone()], 3),
        (vec!["guards".into(), bowtie.clone()], 2),
        (vec!["ar".into(), z10.clone()], 0),
        (vec!["ar".into(), bowtie.clone()], 2),
        (
            vec!["render".into(), l8.clone(), "--svg".into(), tmp("a.svg")],
            0,
        ),
        (
            vec![
                "render".into(),
                sq.clone(),
                "--svg".into(),
                unwritable.into(),
            ],
            2,
        ),
        (
            vec![
                "gen".into(),
                "--seed".into(),
                "1".into(),
                "--vertices".into(),
                "12".into(),
                "--out".into(),
                tmp("g1.json"),
            ],
            0,
        ),
        (vec!["gen".into(), "--vertices".into(), "3".into()], 2),
        (
            vec![
                "verify".into(),
                l8.clone(),
                "--samples".into(),
                "10000".into(),
            ],
            0,
        ),
        (vec!["verify".into(), sq.clone()], 0),
        (
            vec!["verify".into(), l8.clone(), "--guards".into(), missing],
            1,
        ),
        (vec!["verify".into(), hidden], 3),
    ];
    let mut errors = Vec::new();
    for (args, want) in &cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, _) = run(&argv);
        if code != *want {
            errors.push(format!("{} {}: exit {code}, want {want}", argv[0], argv[1]));
        }
    }
    let (_, class) = run(&["classify", &tmp("g1.json")]);
    if class != b"weakly-visible\n" {
        errors.push("generated scene is not weakly visible".into());
    }
    run(&[
        "gen",
        "--seed",
        "1",
        "--vertices",
        "12",
        "--out",
        &tmp("g2.json"),
    ]);
    run(&["render", &l8, "--svg", &tmp("b.svg")]);
    run(&["render", &l8, "--svg", &tmp("c.svg"), "--with-trace"]);
    run(&["render", &l8, "--svg", &tmp("d.svg"), "--with-trace"]);
    let read = |n: &str| std::fs::read(tmp(n)).unwrap_or_default();
    for (a, b) in [
        ("g1.json", "g2.json"),
        ("a.svg", "b.svg"),
        ("c.svg", "d.svg"),
    ] {
        if read(a).is_empty() || read(a) != read(b) {
            errors.push(format!("{a} and {b} differ"));
        }
    }
    let mut detail = format!(
        "{} exit-code cases, 3 determinism pairs, {} problems",
        cases.len(),
        errors.len()
    );
    if let Some(e) = errors.first() {
        detail.push_str(&format!("; first: {e}"));
    }
    outcome(errors.is_empty(), detail)
}

fn main() {
    let corpus = build_corpus();
    let results = [
        ("1 fixture coverage (L8)", criterion_1()),
        (
            "2 guard bound and coverage over 500 scenes",
            criterion_2(&corpus),
        ),
        (
            "3 blocker uniqueness and sweep vs brute force",
            criterion_3(&corpus),
        ),
        ("4 visible interval at least SW", criterion_4(&corpus)),
        (
            "5 cross-over prefix and suffix cover the target",
            criterion_5(&corpus),
        ),
        ("6 aspect-ratio values and invariance", criterion_6()),
        ("7 visibility kernel agreement", criterion_7(&corpus)),
        (
            "8 disk aspect ratio unbounded at fixed guard count",
            criterion_8(),
        ),
        ("9 CLI exit codes and determinism", criterion_9()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!(
            "criterion {name}: {} ({})",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
