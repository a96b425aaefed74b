//! Acceptance suite: one test per claim, each printing a pass/fail line.
//!
//! Run with `cargo test -p polysight --test acceptance -- --nocapture`.

use std::time::Instant;

use polysight::effective::Mode;
use polysight::{compute_effective, corpus, oracle, polygon, visibility_polygon, Error, OutputSink, Point, PolygonInput};

const COMPARE_TOL: f64 = 1e-9;

fn report(name: &str, ok: bool, detail: &str) {
    println!("{name}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name} failed: {detail}");
}

fn run_engine(input: &PolygonInput, mode: Mode) -> Result<Vec<Point>, Error> {
    let mut sink = OutputSink::new();
    match visibility_polygon(input, &mut sink, mode) {
        Ok(_) => Ok(sink.into_points()),
        Err(boxed) => Err(boxed.error),
    }
}

/// 500 seeded random instances with n in [4, 200].
fn random_corpus() -> Vec<(u64, PolygonInput)> {
    let mut out = Vec::with_capacity(500);
    let mut seed = 0u64;
    while out.len() < 500 {
        let n = 4 + (seed as usize * 7) % 197;
        seed += 1;
        if let Ok(input) = corpus::random_instance(n, seed) {
            out.push((seed, input));
        }
    }
    out
}

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let mut instances: Vec<(String, PolygonInput)> = corpus::fixed_corpus()
        .into_iter()
        .map(|(name, input)| (name.to_string(), input))
        .collect();
    for (seed, input) in random_corpus() {
        instances.push((format!("seed {seed}"), input));
    }

    let total = instances.len();
    let mut matched = 0usize;
    let mut flagged_discrepancies: Vec<String> = Vec::new();
    for (name, input) in &instances {
        let expect = oracle::brute_force_visibility(input).unwrap();
        let strict_matches = match run_engine(input, Mode::StrictPaper) {
            Ok(points) => oracle::compare_cyclic(&points, &expect, COMPARE_TOL),
            Err(_) => false,
        };
        if strict_matches {
            matched += 1;
            continue;
        }
        // A strict failure is acceptable only when validated mode flags
        // this same instance; it is archived and counted.
        match run_engine(input, Mode::Validated) {
            Err(Error::PipelineDiscrepancy { indices }) => {
                println!("  archived discrepancy: {name} at criticals {indices:?}");
                flagged_discrepancies.push(name.clone());
            }
            other => panic!("{name}: strict output disagrees with the oracle and validated mode did not flag it ({other:?})"),
        }
    }
    let rate = flagged_discrepancies.len() as f64 / total as f64;
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 1 (oracle equivalence, 500 random + fixed corpus)",
        matched + flagged_discrepancies.len() == total && elapsed < 60.0,
        &format!(
            "{matched}/{total} matched, discrepancy rate {rate:.4} ({} flagged), {elapsed:.1}s",
            flagged_discrepancies.len()
        ),
    );
}

#[test]
fn criterion_2_notched_square_fixture() {
    let started = Instant::now();
    let input = corpus::notched_square();
    let points = run_engine(&input, Mode::StrictPaper).unwrap();
    let ok = oracle::compare_cyclic(&points, &corpus::notched_square_expected(), COMPARE_TOL);
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 2 (notched-square fixture)",
        ok && elapsed < 1.0,
        &format!("8-point window polygon reproduced, {elapsed:.3}s"),
    );
}

#[test]
fn criterion_3_star_shaped_identity() {
    let started = Instant::now();
    let mut checked = 0usize;
    let mut seed = 0u64;
    while checked < 100 {
        seed += 1;
        let Ok(input) = corpus::random_convex_instance(12 + (seed as usize % 40), seed) else {
            continue;
        };
        let mut sink = OutputSink::new();
        let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap();
        assert_eq!(stats.c, 0, "convex polygon reported criticals");
        assert_eq!(stats.meter.flag_bits, 0);
        assert!(
            oracle::compare_cyclic(sink.points(), input.vertices(), COMPARE_TOL),
            "seed {seed}: output differs from input"
        );
        checked += 1;
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 3 (star-shaped identity on 100 random convex polygons)",
        elapsed < 5.0,
        &format!("c = 0 and output equals input on all 100, {elapsed:.2}s"),
    );
}

struct SweepRow {
    family: &'static str,
    n: usize,
    c: usize,
    reads: u64,
    flag_bits: u64,
    scalar_peak: u64,
}

fn size_sweep() -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for &n in &[1_000usize, 10_000, 100_000] {
        for family in ["comb", "convex"] {
            let input = match family {
                "comb" => corpus::comb_sized(8, n),
                _ => corpus::convex_regular(n),
            };
            let mut sink = OutputSink::new();
            let stats = visibility_polygon(&input, &mut sink, Mode::StrictPaper).unwrap();
            rows.push(SweepRow {
                family,
                n: input.len(),
                c: stats.c,
                reads: stats.meter.vertex_reads,
                flag_bits: stats.meter.flag_bits,
                scalar_peak: stats.meter.scalar_slots_peak,
            });
        }
    }
    rows
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (m * sxy - sx * sy) / (m * sxx - sx * sx)
}

#[test]
fn criterion_4_linear_time() {
    let started = Instant::now();
    let rows = size_sweep();
    let mut max_ratio = 0.0f64;
    let mut slopes = Vec::new();
    for family in ["comb", "convex"] {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.family == family)
            .map(|r| (r.n as f64, r.reads as f64))
            .collect();
        for r in rows.iter().filter(|r| r.family == family) {
            max_ratio = max_ratio.max(r.reads as f64 / r.n as f64);
        }
        slopes.push((family, loglog_slope(&pts)));
    }
    let elapsed = started.elapsed().as_secs_f64();
    let slopes_ok = slopes.iter().all(|(_, s)| (s - 1.0).abs() <= 0.05);
    report(
        "criterion 4 (linear time: reads/n bounded, log-log slope 1.00 ± 0.05)",
        max_ratio <= 24.0 && slopes_ok && elapsed < 120.0,
        &format!(
            "max reads/n = {max_ratio:.2} (K ≤ 24), slopes {:?}, {elapsed:.1}s",
            slopes.iter().map(|(f, s)| format!("{f}: {s:.3}")).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_5_workspace_bound() {
    let rows = size_sweep();
    let mut ok = true;
    for r in &rows {
        ok &= r.flag_bits as usize == r.c;
        ok &= r.scalar_peak <= 64;
    }
    for family in ["comb", "convex"] {
        let peaks: Vec<u64> = rows.iter().filter(|r| r.family == family).map(|r| r.scalar_peak).collect();
        ok &= peaks.windows(2).all(|w| w[0] == w[1]);
    }
    let comb_bits: Vec<u64> = rows.iter().filter(|r| r.family == "comb").map(|r| r.flag_bits).collect();
    report(
        "criterion 5 (workspace: flag_bits = c, scalar peak ≤ 64 and constant)",
        ok && comb_bits.iter().all(|&b| b == 16),
        &format!(
            "comb flag_bits {comb_bits:?}, scalar peaks {:?}",
            rows.iter().map(|r| r.scalar_peak).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_6_effective_set_matches_oracle() {
    let started = Instant::now();
    let mut checked = 0usize;
    for (name, input) in corpus::fixed_corpus() {
        let flags = compute_effective(&input, Mode::StrictPaper).unwrap();
        let mut flagged = flags.effective_vertex_indices(&input).unwrap();
        flagged.sort_unstable();
        let truth = oracle::visible_critical_indices(&input).unwrap();
        assert_eq!(flagged, truth, "{name}");
        checked += 1;
    }
    for (seed, input) in random_corpus() {
        let flags = compute_effective(&input, Mode::StrictPaper).unwrap();
        let mut flagged = flags.effective_vertex_indices(&input).unwrap();
        flagged.sort_unstable();
        let truth = oracle::visible_critical_indices(&input).unwrap();
        assert_eq!(flagged, truth, "seed {seed}");
        checked += 1;
    }
    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 6 (effective set equals visible criticals)",
        elapsed < 30.0,
        &format!("{checked} instances, {elapsed:.1}s"),
    );
}

#[test]
fn criterion_7_geometry_kernel_properties() {
    use polysight::geom::{orientation, polar_of, ray_hit, Orientation};
    use rand::{Rng, SeedableRng};

    let started = Instant::now();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20_240_817);
    let pt = |rng: &mut rand_chacha::ChaCha8Rng| {
        Point::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0))
    };

    for _ in 0..100_000 {
        let (a, b, c) = (pt(&mut rng), pt(&mut rng), pt(&mut rng));
        let fwd = orientation(a, b, c);
        let rev = orientation(c, b, a);
        let ok = match fwd {
            Orientation::CounterclockwiseTurn => rev == Orientation::ClockwiseTurn,
            Orientation::ClockwiseTurn => rev == Orientation::CounterclockwiseTurn,
            Orientation::Collinear => rev == Orientation::Collinear,
        };
        assert!(ok, "antisymmetry violated at {a:?} {b:?} {c:?}");
    }

    for _ in 0..100_000 {
        let q = pt(&mut rng);
        let p = pt(&mut rng);
        if p == q {
            continue;
        }
        let polar = polar_of(q, p).unwrap();
        let back = Point::new(q.x + polar.rho * polar.theta.cos(), q.y + polar.rho * polar.theta.sin());
        let err = back.distance(p);
        assert!(err <= 1e-12 * (polar.rho + 1.0), "round trip error {err} at {p:?}");
    }

    let mut hits = 0usize;
    for _ in 0..100_000 {
        let q = pt(&mut rng);
        let through = pt(&mut rng);
        if through == q {
            continue;
        }
        let seg = (pt(&mut rng), pt(&mut rng));
        let Ok(Some((p, d))) = ray_hit(q, through, seg) else { continue };
        hits += 1;
        // On the ray: forward of q, distance consistent.
        let dot = (p.x - q.x) * (through.x - q.x) + (p.y - q.y) * (through.y - q.y);
        assert!(dot >= 0.0);
        assert!((d - q.distance(p)).abs() <= 1e-9 * (1.0 + d));
        // On the segment.
        let (a, b) = seg;
        let ex = b.x - a.x;
        let ey = b.y - a.y;
        let len2 = ex * ex + ey * ey;
        let u = ((p.x - a.x) * ex + (p.y - a.y) * ey) / len2;
        assert!((-1e-9..=1.0 + 1e-9).contains(&u), "u = {u}");
        let off = ((p.x - a.x) * ey - (p.y - a.y) * ex).abs() / len2.sqrt();
        assert!(off <= 1e-9 * (1.0 + len2.sqrt()), "off = {off}");
    }
    assert!(hits > 10_000);

    let elapsed = started.elapsed().as_secs_f64();
    report(
        "criterion 7 (geometry kernel properties, 100k cases each)",
        elapsed < 10.0,
        &format!("antisymmetry, polar round-trip ≤ 1e-12, ray membership; {hits} hits; {elapsed:.1}s"),
    );
}

#[test]
fn validate_strict_is_the_gate_for_every_corpus_instance() {
    for (name, input) in corpus::fixed_corpus() {
        polygon::validate(&input, true).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
