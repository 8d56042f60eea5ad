//! Acceptance suite: one check per published claim the toolkit reproduces.
//!
//! Run with `cargo test -p nonhermitian --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use clap::Parser;
use nonhermitian::algebra::{powers, spectral_radius_upper, witness_element, DEFAULT_SUPPORT_BUDGET};
use nonhermitian::capacity::{capacity_upper_lp, frw_certificate, lower_limit_from_growth, CapacityBounds, FrwVerdict};
use nonhermitian::cli::{run, Cli};
use nonhermitian::criteria::{
    adian_rate, burnside_check, discrete_criterion, general_threshold, CriterionInput, Verdict,
};
use nonhermitian::exact::{integer, rational, to_f64, Enclosure, Provenance};
use nonhermitian::group::{GeneratingSet, GroupBackend};
use nonhermitian::growth::{enumerate_balls, exact_growth, growth_estimate, BallTable, EnumerationOptions};
use nonhermitian::padic::{gl_criterion, hecke_measure, inequality_scan, sl_measure, PadicError, Signature, SPECIAL_CASES};
use nonhermitian::properties::{run_suite, signature_grid, submultiplicativity, SuiteConfig};
use nonhermitian::report::Report;
use nonhermitian::tree::{tree_criterion, TreeSpec};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> Result<Report, String> {
    let mut full = vec!["nonherm"];
    full.extend_from_slice(args);
    let parsed = Cli::try_parse_from(full).map_err(|e| e.to_string())?;
    Ok(run(&parsed).map_err(|e| e.to_string())?.report)
}

fn field<'a>(report: &'a Report, kind: &'a str, key: &str) -> Result<&'a str, String> {
    report
        .records_of(kind)
        .next()
        .and_then(|r| r.get(key))
        .ok_or_else(|| format!("missing {kind}.{key}"))
}

fn free_group_certificate(tables: &mut Vec<BallTable>) -> Check {
    let report = cli(&["certify-discrete", "--group", "free:2", "--gens", "standard"])?;
    ensure(field(&report, "criterion", "verdict")? == "CERTIFIED", "discrete criterion not certified")?;
    ensure(field(&report, "certificate", "verdict")? == "NOT_HERMITIAN", "no certificate")?;
    ensure(field(&report, "certificate", "capacity_lower")? == "3/4", "capacity lower is not exactly 3/4")?;
    ensure(field(&report, "certificate", "spectral_upper")? == "1", "spectral upper is not exactly 1")?;

    let g = GroupBackend::free(2);
    let set = g.standard_generators().map_err(|e| e.to_string())?;
    let table = enumerate_balls(&g, &set, EnumerationOptions::new(12)).map_err(|e| e.to_string())?;
    for n in 1..=12u32 {
        let expected = 4 * 3u64.pow(n - 1);
        ensure(
            table.sphere_sizes()[n as usize] == expected,
            format!("|S_{n}| = {} ≠ {expected}", table.sphere_sizes()[n as usize]),
        )?;
    }
    tables.push(table);
    Ok("spheres 4·3^(n-1) for n ≤ 12; cap ≥ 3/4 > R/2 = 1/2; CERTIFIED".into())
}

fn sharpness_boundary() -> Check {
    let z = GroupBackend::free(1);
    let set = z.standard_generators().map_err(|e| e.to_string())?;
    let exact = exact_growth(&z, &set).map_err(|e| e.to_string())?.ok_or("no closed form")?;
    let input = CriterionInput::discrete(2, exact.omega.clone(), exact.provenance);
    let threshold = general_threshold(&input).map_err(|e| e.to_string())?;
    ensure(threshold == integer(1) && exact.omega == Enclosure::from_integer(1), "threshold and ω must both be 1")?;
    let verdict = discrete_criterion(2, &exact.omega, exact.provenance).map_err(|e| e.to_string())?;
    ensure(verdict.verdict == Verdict::EqualityBoundary, "expected EQUALITY_BOUNDARY")?;
    ensure(verdict.margin.is_zero(), "criterion margin must be 0")?;

    let f = witness_element(&z, &set).map_err(|e| e.to_string())?;
    let r = spectral_radius_upper(&z, &f, 8, DEFAULT_SUPPORT_BUDGET).map_err(|e| e.to_string())?;
    ensure(r == Enclosure::from_integer(1), "R upper must be exactly 1")?;
    let bounds = CapacityBounds {
        witness: "(δ_1 + δ_-1)/2".into(),
        set_size: 2,
        lower_sphere: Vec::new(),
        lower_limit: Some(
            lower_limit_from_growth(&exact.sigma, exact.provenance, 2, exact.method).map_err(|e| e.to_string())?,
        ),
        upper_lp: Vec::new(),
        spectral_upper: Some(r.clone()),
    };
    let cert = frw_certificate(&bounds, &r).map_err(|e| e.to_string())?;
    ensure(cert.capacity_lower == Enclosure::exact(rational(1, 2)), "capacity lower must be 1/2")?;
    ensure(cert.half_spectral_upper == rational(1, 2), "R/2 must be 1/2")?;
    ensure(cert.verdict == FrwVerdict::Inconclusive && cert.margin.is_zero(), "expected INCONCLUSIVE, margin 0")?;
    Ok("threshold = ω = 1; cap ≥ 1/2 = R/2; EQUALITY_BOUNDARY / INCONCLUSIVE, margin 0".into())
}

fn golden_contains(e: &Enclosure) -> bool {
    let f = |x: &BigRational| x * x - x - integer(1);
    !f(e.lo()).is_positive() && !f(e.hi()).is_negative()
}

fn sqrt2_contains(e: &Enclosure) -> bool {
    e.lo() * e.lo() <= integer(2) && e.hi() * e.hi() >= integer(2)
}

fn modular_group_growth(tables: &mut Vec<BallTable>) -> Check {
    let g = GroupBackend::free_product_cyclic(vec![2, 3]);
    let golden = GeneratingSet::parse(&g, "a,ab,bba").map_err(|e| e.to_string())?;
    let table = enumerate_balls(&g, &golden, EnumerationOptions::new(25)).map_err(|e| e.to_string())?;
    let est = growth_estimate(&table).map_err(|e| e.to_string())?;
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let ratio = est.ratio_estimate.ok_or("no ratio estimate")?;
    ensure((ratio - phi).abs() < 0.01, format!("growth estimate {ratio:.6} not within 0.01 of φ"))?;
    tables.push(table);

    let exact = exact_growth(&g, &golden).map_err(|e| e.to_string())?.ok_or("no automaton")?;
    ensure(golden_contains(&exact.omega), "Perron enclosure misses φ")?;
    ensure(exact.omega.width() < rational(1, 1_000_000), "Perron enclosure too wide")?;

    let other = GeneratingSet::parse(&g, "a,b,bb").map_err(|e| e.to_string())?;
    let exact2 = exact_growth(&g, &other).map_err(|e| e.to_string())?.ok_or("no automaton")?;
    ensure(sqrt2_contains(&exact2.omega), "Perron enclosure misses √2")?;
    ensure(exact2.omega.width() < rational(1, 1_000_000), "√2 enclosure too wide")?;
    let v = discrete_criterion(3, &exact2.omega, exact2.provenance).map_err(|e| e.to_string())?;
    ensure(v.verdict == Verdict::Inconclusive, "√2 < 3/2 must be INCONCLUSIVE")?;
    let table2 = enumerate_balls(&g, &other, EnumerationOptions::new(25)).map_err(|e| e.to_string())?;
    tables.push(table2);
    Ok(format!(
        "estimate {ratio:.6} at n = 25; φ ∈ {:.9}..{:.9}; √2 ∈ {:.9}..{:.9} → INCONCLUSIVE",
        exact.omega.lo_f64(),
        exact.omega.hi_f64(),
        exact2.omega.lo_f64(),
        exact2.omega.hi_f64()
    ))
}

/// Coarse-to-fine grid minimization of `‖t + Σ c_k a_k‖₁` in floats.
fn grid_minimum(columns: &[Vec<f64>], target: &[f64]) -> f64 {
    let k = columns.len();
    let eval = |c: &[f64]| -> f64 {
        (0..target.len())
            .map(|i| (target[i] + (0..k).map(|j| c[j] * columns[j][i]).sum::<f64>()).abs())
            .sum()
    };
    let steps: i64 = if k <= 2 { 20 } else { 6 };
    let mut center = vec![0.0; k];
    let mut best = eval(&center);
    let mut half = 2.0;
    for _ in 0..80 {
        let mut next = center.clone();
        let total = (2 * steps + 1).pow(k as u32);
        for idx in 0..total {
            let mut rem = idx;
            let c: Vec<f64> = (0..k)
                .map(|j| {
                    let step = rem % (2 * steps + 1) - steps;
                    rem /= 2 * steps + 1;
                    center[j] + half * step as f64 / steps as f64
                })
                .collect();
            let v = eval(&c);
            if v < best {
                best = v;
                next = c;
            }
        }
        center = next;
        half *= 0.7;
    }
    best
}

fn capacity_lp_convergence() -> Check {
    let z = GroupBackend::free(1);
    let set = z.standard_generators().map_err(|e| e.to_string())?;
    let f = witness_element(&z, &set).map_err(|e| e.to_string())?;
    let ups = capacity_upper_lp(&z, &f, 16, DEFAULT_SUPPORT_BUDGET).map_err(|e| e.to_string())?;
    let top = &ups[15];
    ensure(
        top.root.lo() >= &rational(1, 2) && top.root.hi() <= &rational(56, 100),
        format!("degree-16 root {} outside [0.50, 0.56]", top.root.midpoint_f64()),
    )?;

    let pw = powers(&z, &f, 4, DEFAULT_SUPPORT_BUDGET).map_err(|e| e.to_string())?;
    let dense = |x: &nonhermitian::algebra::AlgebraElement| -> Vec<f64> {
        (-4..=4i32)
            .map(|i| {
                let word = if i >= 0 { "a".repeat(i as usize) } else { "a'".repeat((-i) as usize) };
                let g = if i == 0 { z.identity() } else { z.parse_word(&word).expect("word") };
                to_f64(&x.coefficient(&g))
            })
            .collect()
    };
    let mut worst: f64 = 0.0;
    for n in 1..=4 {
        let columns: Vec<Vec<f64>> = pw[..n].iter().map(dense).collect();
        let grid = grid_minimum(&columns, &dense(&pw[n]));
        let diff = (grid - to_f64(&ups[n - 1].optimum)).abs();
        worst = worst.max(diff);
        ensure(diff < 1e-6, format!("degree {n}: simplex {} vs grid {grid}", ups[n - 1].optimum))?;
    }
    Ok(format!(
        "degree-16 root {:.6} ∈ [0.50, 0.56]; grid oracle agrees to {worst:.1e} at degrees ≤ 4",
        top.root.midpoint_f64()
    ))
}

fn tree_criterion_check() -> Check {
    let spec = |s: &str| s.parse::<TreeSpec>().map_err(|e| e.to_string());
    let v = tree_criterion(&spec("degrees=3 k=1")?);
    ensure(v.mu_kgk == BigUint::from(3u8) && v.growth_lower == BigUint::from(2u8), "3-regular data wrong")?;
    ensure(v.verdict.verdict == Verdict::Certified, "3-regular not certified")?;
    let v = tree_criterion(&spec("degrees=3,4 k=2")?);
    ensure(v.mu_kgk == BigUint::from(9u8) && v.growth_lower == BigUint::from(6u8), "[3,4] data wrong")?;
    ensure(v.two_thirds_equality, "6 = (2/3)·9 must hold exactly")?;
    ensure(v.verdict.verdict == Verdict::Certified, "[3,4] not certified")?;
    let v = tree_criterion(&spec("degrees=2 k=1")?);
    ensure(v.verdict.verdict == Verdict::Inconclusive, "line tree must be INCONCLUSIVE")?;
    Ok("3-regular: μ 3, lower 2 CERTIFIED; [3,4]: μ 9, lower 6 = (2/3)·9; line INCONCLUSIVE".into())
}

fn padic_scan() -> Check {
    let ns: Vec<usize> = (2..=10).collect();
    let rows = inequality_scan(&ns, &[5, 7, 11, 13]).map_err(|e| e.to_string())?;
    ensure(rows.len() == 36 && rows.iter().all(|r| r.value.is_positive()), "scan has a nonpositive entry")?;
    for (n, p) in SPECIAL_CASES {
        let v = gl_criterion(n, p).map_err(|e| e.to_string())?;
        ensure(v.inequality.is_positive() && v.verdict.verdict == Verdict::Certified, format!("({n},{p}) fails"))?;
    }
    let v = gl_criterion(2, 5).map_err(|e| e.to_string())?;
    ensure(v.mu.value == BigUint::from(30u8), "μ at (2,5) must be 30")?;
    ensure(v.inequality == rational(64, 125), "inequality at (2,5) must be 64/125")?;
    let mut compared = 0;
    for n in 1..=4 {
        for lambda in signature_grid(n, -2, 2).into_iter().filter(|s| s.valuation() == 0) {
            for p in [2, 3, 5] {
                let sl = sl_measure(n, p, &lambda).map_err(|e| e.to_string())?;
                let gl = hecke_measure(n, p, &lambda).map_err(|e| e.to_string())?;
                ensure(sl.value == gl.value, format!("SL ≠ GL at λ = ({lambda})"))?;
                compared += 1;
            }
        }
    }
    ensure(
        sl_measure(2, 5, &Signature(vec![1, 0])) == Err(PadicError::NotSpecialLinear(1)),
        "SL must reject λ = (1,0)",
    )?;
    Ok(format!("36/36 positive plus (2,2),(2,3),(3,3); μ(2,5) = 30; SL = GL on {compared} signatures"))
}

fn property_suites(tables: &[BallTable]) -> Check {
    for t in tables {
        let r = submultiplicativity(t);
        ensure(r.passed(), format!("{}: {:?}", t.group_label(), r.failure))?;
    }
    let g = GroupBackend::free_product_cyclic(vec![2, 3]);
    let set = GeneratingSet::parse(&g, "a,ab,bba").map_err(|e| e.to_string())?;
    let table = enumerate_balls(&g, &set, EnumerationOptions::new(10).store_limit(10)).map_err(|e| e.to_string())?;
    let results = run_suite(&g, &table, &SuiteConfig::default());
    let mut summary = Vec::new();
    for r in &results {
        ensure(r.passed(), format!("{} failed: {:?}", r.name, r.failure))?;
        summary.push(format!("{} {}", r.name, r.cases));
    }
    let f2 = GroupBackend::free(2);
    let f2_set = f2.standard_generators().map_err(|e| e.to_string())?;
    let f2_table =
        enumerate_balls(&f2, &f2_set, EnumerationOptions::new(6).store_limit(6)).map_err(|e| e.to_string())?;
    let config = SuiteConfig {
        hecke_max_rank: 0,
        tree_max_k: 0,
        ..SuiteConfig::default()
    };
    for r in run_suite(&f2, &f2_table, &config) {
        ensure(r.passed(), format!("free group {} failed: {:?}", r.name, r.failure))?;
    }
    Ok(format!("{} tables submultiplicative; {}", tables.len() + 2, summary.join(", ")))
}

fn burnside() -> Check {
    let v = burnside_check(&adian_rate());
    ensure(v.verdict == Verdict::Certified, "not certified")?;
    ensure(v.provenance == Provenance::PaperConstant, "provenance must be paper-constant")?;
    ensure(v.margin == rational(9, 10), "margin must be 9/10")?;
    ensure(v.conditional, "must be conditional on the published bound")?;
    Ok("CERTIFIED, paper-constant, margin 9/10, conditional".into())
}

#[test]
fn acceptance() {
    let mut tables = Vec::new();
    let mut results: Vec<(usize, &str, Duration, Duration, Check)> = Vec::new();
    let mut time = |id, name, limit_s: u64, f: &mut dyn FnMut() -> Check| {
        let start = Instant::now();
        let outcome = f();
        results.push((id, name, start.elapsed(), Duration::from_secs(limit_s), outcome));
    };
    time(1, "free-group certificate", 5, &mut || free_group_certificate(&mut tables));
    time(2, "sharpness boundary", 5, &mut sharpness_boundary);
    time(3, "modular-group growth", 60, &mut || modular_group_growth(&mut tables));
    time(4, "capacity LP convergence", 120, &mut capacity_lp_convergence);
    time(5, "tree criterion", 1, &mut tree_criterion_check);
    time(6, "p-adic scan", 1, &mut padic_scan);
    time(7, "property suites", 60, &mut || property_suites(&tables));
    time(8, "Burnside conditional certificate", 1, &mut burnside);

    let mut failures = 0;
    for (id, name, elapsed, limit, outcome) in &results {
        let in_time = elapsed <= limit;
        let (status, detail) = match outcome {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over the {}s limit; {d}", limit.as_secs())),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!("{status} {id}. {name} ({:.2}s / {}s): {detail}", elapsed.as_secs_f64(), limit.as_secs());
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
