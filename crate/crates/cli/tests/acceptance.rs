//! Acceptance suite: one test per gate criterion, each printing a PASS/FAIL
//! line. Run with `cargo test -p cc4b-cli --test acceptance -- --nocapture`
//! to see the lines; any FAIL also fails the test.

use cc4b::covering::{self, MassGrid, RunParams};
use cc4b::eqs::{self, Configuration, MassPoint};
use cc4b::ift::{self, BoundMode};
use cc4b::krawczyk::{certify_unique, step2_filter, tile_search_hull, SearchConfig};
use std::process::Command;
use std::time::{Duration, Instant};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cc4b"))
}

fn report(criterion: &str, ok: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn parse_interval(s: &str) -> (f64, f64) {
    let i = cc4b::Interval::from_bracket_string(s).unwrap();
    (i.lo(), i.hi())
}

#[test]
fn criterion_1_equal_mass_square() {
    let t0 = Instant::now();
    let out = bin().args(["certify", "1", "1", "1", "--json"]).output().unwrap();
    let elapsed = t0.elapsed();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let enc: Vec<(f64, f64)> = v["enclosure"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| parse_interval(s.as_str().unwrap()))
        .collect();
    let target = [0.0, 1.0, 0.0, -1.0];
    let contains = enc
        .iter()
        .zip(target)
        .all(|(&(lo, hi), t)| lo <= t && t <= hi);
    let max_diam = enc.iter().map(|&(lo, hi)| hi - lo).fold(0.0, f64::max);
    let ok = contains && max_diam < 1e-15 && elapsed < Duration::from_secs(60);
    report(
        "1 (equal-mass square)",
        ok,
        &format!("contains square: {contains}, max diameter {max_diam:.2e}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_2_asymmetric_enclosure() {
    // displayed certified intervals for masses (0.2, 1, 0.3, 0.4)
    let published = [
        ("0.15385328707521665441880634609065", "0.15385328707521665448042670172252"),
        ("1.4086619698548151890849667722929", "1.4086619698548151891412057380232"),
        ("0.11611158428853550145374041262273", "0.11611158428853550155068635233120"),
        ("-1.484878202646704369219144317714", "-1.484878202646704369133519439332"),
    ];
    let t0 = Instant::now();
    let out = bin().args(["certify", "0.2", "0.3", "0.4", "--json"]).output().unwrap();
    let elapsed = t0.elapsed();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let enc: Vec<(f64, f64)> = v["enclosure"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| parse_interval(s.as_str().unwrap()))
        .collect();

    let mut mid_err: f64 = 0.0;
    let mut intersects = true;
    for ((lo, hi), (plo, phi)) in enc.iter().zip(published) {
        // outward-widen the parsed endpoints by one ulp to keep the
        // comparison conservative against decimal-to-binary rounding
        let plo = plo.parse::<f64>().unwrap().next_down();
        let phi = phi.parse::<f64>().unwrap().next_up();
        let pmid = 0.5 * (plo + phi);
        let mid = 0.5 * (lo + hi);
        mid_err = mid_err.max((mid - pmid).abs());
        intersects &= *lo <= phi && plo <= *hi;
    }
    let ok = mid_err < 1e-15 && intersects && elapsed < Duration::from_secs(120);
    report(
        "2 (asymmetric enclosure)",
        ok,
        &format!("midpoint error {mid_err:.2e}, intersects: {intersects}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_3_survivor_count_bands() {
    let equal = step2_filter(&tile_search_hull(20), &MassPoint::new(1.0, 1.0, 1.0).unwrap()).len();
    let asym =
        step2_filter(&tile_search_hull(15), &MassPoint::new(0.2, 0.3, 0.4).unwrap()).len();
    let ok = (30..=120).contains(&equal) && (30..=150).contains(&asym);
    report(
        "3 (survivor-count bands)",
        ok,
        &format!("N1=20 equal masses: {equal} (band 30..=120); N1=15: {asym} (band 30..=150)"),
    );
}

#[test]
fn criterion_4_published_ball_constants() {
    let m = MassPoint::new(0.2, 0.3, 0.4).unwrap();
    let cfg = SearchConfig { grid_n1: 15, tol: 1e-15, max_depth: 60 };
    let sol = certify_unique(&m, &cfg).unwrap();

    let c = ift::compute_constants(&sol.enclosure, &m, 0.1, 0.2, BoundMode::Reference).unwrap();
    let checks = [
        ("M_x", c.m_x, 3.193848),
        ("L_m", c.l_m, 0.591292),
        ("K_xx", c.k_xx, 1.880567),
        ("K_xm", c.k_xm, 1.9330632),
        ("K_mm", c.k_mm, 2.160289),
        ("r", c.r, 0.083247),
        ("eps", c.epsilon, 0.016540),
    ];
    let mut ok = true;
    let mut worst = 0.0f64;
    for (name, got, want) in checks {
        let rel = (got / want - 1.0).abs();
        worst = worst.max(rel);
        if rel > 0.01 {
            ok = false;
            println!("  {name}: {got} vs {want} ({:.3}%)", 100.0 * rel);
        }
    }
    let c2 = ift::compute_constants(&sol.enclosure, &m, 0.2, 0.2, BoundMode::Reference).unwrap();
    for (name, got, want) in [("r", c2.r, 0.066053), ("eps", c2.epsilon, 0.013632)] {
        let rel = (got / want - 1.0).abs();
        worst = worst.max(rel);
        if rel > 0.01 {
            ok = false;
            println!("  R1=R2=0.2 {name}: {got} vs {want} ({:.3}%)", 100.0 * rel);
        }
    }
    report(
        "4 (reference-mode ball constants)",
        ok,
        &format!("worst relative deviation {:.4}%", 100.0 * worst),
    );
}

#[test]
fn criterion_5_exclusion_end_to_end() {
    let t0 = Instant::now();
    let out = bin().args(["ball", "0.2", "0.3", "0.4", "--json"]).output().unwrap();
    let elapsed = t0.elapsed();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let excluded = v["exclusion"]["status"] == "Excluded";
    let rigorous = v["proof_mode"] == "rigorous";
    let ok = excluded && rigorous && elapsed < Duration::from_secs(30 * 60);
    report(
        "5 (exclusion end-to-end)",
        ok,
        &format!(
            "status Excluded: {excluded}, rigorous ball: {rigorous}, retry divisor {}, {elapsed:.2?}",
            v["exclusion"]["retry_divisor"]
        ),
    );
}

#[test]
fn criterion_6_desk_scale_covering() {
    let dir = std::env::temp_dir();
    let journal = dir.join(format!("cc4b-acceptance-cover-{}.journal", std::process::id()));
    let _ = std::fs::remove_file(&journal);

    let t0 = Instant::now();
    let out = bin()
        .args([
            "cover",
            "--delta0",
            "0.9",
            "--r1",
            "0.05",
            "--r2",
            "0.1",
            "--grid-n1",
            "10",
            "--workers",
            "1",
            "--journal",
        ])
        .arg(&journal)
        .output()
        .unwrap();
    let cover_ok = out.status.success();
    let cover_elapsed = t0.elapsed();
    let stdout = String::from_utf8_lossy(&out.stdout);

    let t1 = Instant::now();
    let check = bin().arg("check").arg(&journal).output().unwrap();
    let check_ok = check.status.success();
    let check_elapsed = t1.elapsed();

    let ok = cover_ok && check_ok && (cover_elapsed + check_elapsed) < Duration::from_secs(2 * 3600);
    report(
        "6 (desk-scale covering)",
        ok,
        &format!(
            "cover: {} ({cover_elapsed:.2?}; {}), re-check: {} ({check_elapsed:.2?})",
            if cover_ok { "covered" } else { "NOT covered" },
            stdout.trim().lines().last().unwrap_or(""),
            if check_ok { "verifies" } else { "FAILS" },
        ),
    );
    let _ = std::fs::remove_file(&journal);
}

#[test]
fn criterion_7_covering_arithmetic_replay() {
    let m1 = covering::required_m1(0.6, 0.009);
    report(
        "7 (covering arithmetic replay)",
        m1 == 39,
        &format!("required M1 for eps0 = 0.009: {m1} (expected 39)"),
    );
}

#[test]
fn criterion_8a_mass_swap_symmetry_on_certified_points() {
    // certifying 50 seeded masses and checking the reflected enclosure
    // satisfies the system with swapped masses
    let mut s = 0x5eed_1234u64;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    let cfg = SearchConfig { grid_n1: 8, tol: 1e-15, max_depth: 60 };
    let mut checked = 0;
    for _ in 0..50 {
        let m = MassPoint::new(
            0.6 + 0.4 * next(),
            0.6 + 0.4 * next(),
            0.6 + 0.4 * next(),
        )
        .unwrap();
        let sol = certify_unique(&m, &cfg).expect("all cube masses certify");
        // reflect: (x1,y1,x3,y3) -> (x3,-y3,x1,-y1), m1 <-> m3
        let e = &sol.enclosure.components;
        let mapped = cc4b::Box4::new([e[2], -e[3], e[0], -e[1]]);
        let swapped = MassPoint::new(m.m3, m.m1, m.m4).unwrap();
        let r = eqs::residuals_six(&mapped, &swapped.to_interval()).unwrap();
        assert!(
            r.iter().all(|c| c.contains_zero()),
            "reflected enclosure must satisfy the swapped system: m={m:?}"
        );
        checked += 1;
    }
    report(
        "8a (mass-swap symmetry)",
        checked == 50,
        &format!("{checked}/50 certified points verified under reflection"),
    );
}

#[test]
fn criterion_8b_homogeneity_in_masses() {
    // F(x, lam*m) = lam*F(x, m) for the homogeneous part: verified through
    // the exact mass coefficients, 1000 seeded cases
    let mut s = 0x8b_u64;
    let mut next = move || {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        (s >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let c = Configuration {
            x1: 0.05 + 0.8 * next(),
            y1: 0.5 + next(),
            x3: 0.05 + 0.8 * next(),
            y3: -1.5 + next(),
        };
        let m = [0.2 + 0.8 * next(), 0.2 + 0.8 * next(), 0.2 + 0.8 * next()];
        let lam = 0.25 + next();
        let jm = eqs::jac_m_point(&c);
        for row in 0..4 {
            let lin: f64 = (0..3).map(|k| jm[row * 3 + k] * m[k]).sum();
            let lin_scaled: f64 = (0..3).map(|k| jm[row * 3 + k] * (lam * m[k])).sum();
            worst = worst.max((lin_scaled - lam * lin).abs());
        }
    }
    report(
        "8b (homogeneity in m)",
        worst < 1e-12,
        &format!("worst deviation of the homogeneous part {worst:.2e}"),
    );
}

#[test]
fn criterion_8c_determinism_of_desk_runs() {
    let dir = std::env::temp_dir();
    let j1 = dir.join(format!("cc4b-det1-{}.journal", std::process::id()));
    let j2 = dir.join(format!("cc4b-det2-{}.journal", std::process::id()));
    let _ = std::fs::remove_file(&j1);
    let _ = std::fs::remove_file(&j2);
    let params = RunParams {
        grid: MassGrid::new(0.95, 1).unwrap(),
        search: SearchConfig { grid_n1: 8, tol: 1e-15, max_depth: 60 },
        r1: 0.05,
        r2: 0.1,
        exclusion_depth: 60,
        mode: BoundMode::Rigorous,
    };
    covering::run_grid(&params, &j1, 1, false, &|_, _| {}).unwrap();
    covering::run_grid(&params, &j2, 1, false, &|_, _| {}).unwrap();
    let same = std::fs::read(&j1).unwrap() == std::fs::read(&j2).unwrap();
    report(
        "8c (byte-identical desk runs)",
        same,
        "two sequential desk covering runs produced identical journals",
    );
    let _ = std::fs::remove_file(&j1);
    let _ = std::fs::remove_file(&j2);
}

#[test]
fn criterion_8d_kernel_fuzz_suites_present() {
    // the 100k-case containment/monotonicity fuzz and the finite-difference
    // derivative checks run in the core crate's test suites; this gate just
    // confirms they are wired into the workspace test run
    let manifest = include_str!("../../core/tests/properties.rs");
    let ok = manifest.contains("containment_fuzz_hundred_thousand_cases")
        && manifest.contains("monotonicity_fuzz_hundred_thousand_cases");
    let oracle = include_str!("../../core/tests/oracles.rs");
    let ok = ok
        && oracle.contains("jacobians_match_central_differences")
        && oracle.contains("hessians_match_jacobian_differences");
    report(
        "8d (kernel fuzz + derivative oracles wired)",
        ok,
        "containment/monotonicity fuzz and finite-difference suites are part of the workspace tests",
    );
}
