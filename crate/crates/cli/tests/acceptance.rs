//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::Instant;

use hankel_core::catalog::{closed_forms, sample_grid, with_params};
use hankel_core::identities::{check, check_all, quad_config_for, registry, SuiteRun};
use hankel_core::report::{resolutions, RunConfig};
use hankel_core::specfun::{bessel_j_series, bessel_j_value, bessel_k_value, gamma_value};
use hankel_core::{transform, FunctionDescriptor, IdentitySummary, QuadConfig, ReportDocument, Status};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
}

fn logspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    linspace(lo.ln(), hi.ln(), n).map(f64::exp)
}

fn fd(s: &str) -> FunctionDescriptor {
    s.parse().expect("descriptor")
}

fn special_functions() -> Outcome {
    let start = Instant::now();
    let mut worst: BTreeMap<&str, f64> = BTreeMap::new();
    let mut note = |name, e: f64| {
        let w = worst.entry(name).or_insert(0.0);
        *w = w.max(e);
    };
    for z in linspace(-0.45, 0.45, 181) {
        note("reflection", rel(gamma_value(0.5 + z) * gamma_value(0.5 - z), PI / (PI * z).cos()));
    }
    for l in linspace(0.1, 5.0, 197) {
        let rhs = 2f64.powf(2.0 * l - 1.0) * gamma_value(l) * gamma_value(l + 0.5) / PI.sqrt();
        note("duplication", rel(gamma_value(2.0 * l), rhs));
    }
    for z in linspace(-4.5, 20.0, 246) {
        if (z - z.round()).abs() > 1e-6 || z > 0.0 {
            note("recurrence", rel(gamma_value(z + 1.0), z * gamma_value(z)));
        }
    }
    for x in logspace(0.01, 100.0, 801) {
        // J is compared on the scale of its envelope, since it passes through zero.
        let env = (2.0 / (PI * x)).sqrt();
        let (s, c) = x.sin_cos();
        note("J_1/2", (bessel_j_value(0.5, x) - env * s).abs() / env);
        note("J_-1/2", (bessel_j_value(-0.5, x) - env * c).abs() / env);
        note("J_3/2", (bessel_j_value(1.5, x) - env * (s / x - c)).abs() / (env * (1.0 + 1.0 / x)));
        note("J_-3/2", (bessel_j_value(-1.5 + 1e-15, x) + env * (c / x + s)).abs() / (env * (1.0 + 1.0 / x)));
        if x <= 20.0 {
            note("J_1/2 series", (bessel_j_series(0.5, x) - env * s).abs() / env);
        }
        let k = (PI / (2.0 * x)).sqrt() * (-x).exp();
        note("K_1/2", rel(bessel_k_value(0.5, x), k));
        note("K_-1/2", rel(bessel_k_value(-0.5, x), k));
        note("K_3/2", rel(bessel_k_value(1.5, x), k * (1.0 + 1.0 / x)));
        note("K_5/2", rel(bessel_k_value(2.5, x), k * (1.0 + 3.0 / x + 3.0 / (x * x))));
    }
    let secs = start.elapsed().as_secs_f64();
    let max = worst.values().copied().fold(0.0, f64::max);
    let (name, _) = worst.iter().max_by(|a, b| a.1.total_cmp(b.1)).unwrap();
    outcome(max <= 1e-12 && secs < 5.0, format!("worst {max:.1e} ({name}), {secs:.2} s"))
}

fn summaries<'a>(run: &'a SuiteRun, ids: &[&str]) -> Vec<&'a IdentitySummary> {
    run.summaries.iter().filter(|s| ids.contains(&s.id.as_str())).collect()
}

/// Every point passes with residual at most `limit`.
fn all_within(sums: &[&IdentitySummary], limit: f64) -> (bool, String) {
    let mut bad = Vec::new();
    let mut worst = 0f64;
    for s in sums {
        for p in &s.points {
            worst = worst.max(p.rel_residual);
            if p.status != Status::Pass || p.rel_residual.is_nan() || p.rel_residual > limit {
                bad.push(format!("{} {:?} {:?} r={:.1e}", s.id, p.point, p.status, p.rel_residual));
            }
        }
    }
    let n: usize = sums.iter().map(|s| s.points.len()).sum();
    let detail = if bad.is_empty() {
        format!("{} identities, {n} points, worst {worst:.1e}", sums.len())
    } else {
        format!("{} of {n} points off: {}", bad.len(), bad.join("; "))
    };
    (bad.is_empty(), detail)
}

fn kernel(run: &SuiteRun) -> Outcome {
    let sums = summaries(run, &["KERN"]);
    let (ok, detail) = all_within(&sums, 1e-7);
    let n = sums.first().map_or(0, |s| s.points.len());
    let secs = run.seconds.get("KERN").copied().unwrap_or(f64::NAN);
    outcome(ok && n == 36 && secs < 60.0, format!("{detail}, {secs:.2} s"))
}

fn closed_form_examples(run: &SuiteRun, cfg: &QuadConfig) -> Outcome {
    let ids = ["EX1", "EX2", "EX3", "EX4", "EX5", "REX1", "REX2", "REX3"];
    let sums = summaries(run, &ids);
    let (ok, detail) = all_within(&sums, 1e-6);
    let enough = sums.len() == ids.len() && sums.iter().all(|s| s.passed >= 3);
    let pinned = check("EX1", None, 3, 1e-6, cfg)
        .unwrap()
        .into_iter()
        .find(|p| p.point.get("nu") == Some(&0.5) && p.point.get("a") == Some(&1.0) && p.point.get("y") == Some(&2.0));
    let pinned_ok = pinned.as_ref().is_some_and(|p| {
        let target = PI / 6.0;
        (p.lhs - target).abs() <= 1e-8 * target && (p.rhs - target).abs() <= 1e-8 * target
    });
    let oracle = resolutions(&["EX5"], cfg, 1e-6);
    let oracle_ok = oracle.first().is_some_and(|r| r.decision.starts_with("quadrature matches a^{-mu-2nu-1}"));
    let ex1 =
        pinned.map_or("EX1 point missing".to_string(), |p| format!("EX1(1/2,1,2) = {:.10} / {:.10}", p.lhs, p.rhs));
    let ex5 = oracle.first().map_or("no oracle".to_string(), |r| r.decision.clone());
    outcome(ok && enough && pinned_ok && oracle_ok, format!("{detail}; {ex1}; EX5 oracle: {ex5}"))
}

fn iteration(run: &SuiteRun, ids: &[&str], secs: f64) -> Outcome {
    let sums = summaries(run, ids);
    let (ok, detail) = all_within(&sums, 1e-5);
    // At least three points of the free variable per default function.
    let mut per_fn: BTreeMap<(String, String), usize> = BTreeMap::new();
    for s in &sums {
        for p in &s.points {
            *per_fn.entry((s.id.clone(), p.functions.join(" "))).or_default() += 1;
        }
    }
    let thin = per_fn.iter().filter(|(_, &n)| n < 3).count();
    outcome(ok && thin == 0 && sums.len() == ids.len() && secs < 600.0, format!("{detail}, {secs:.1} s"))
}

fn parseval(run: &SuiteRun, ids: &[&str], cfg: &QuadConfig) -> Outcome {
    let sums = summaries(run, ids);
    let (ok, detail) = all_within(&sums, 1e-5);
    let single_pairing: Vec<&str> = sums
        .iter()
        .filter(|s| s.points.iter().map(|p| p.functions.clone()).collect::<BTreeSet<_>>().len() < 2)
        .map(|s| s.id.as_str())
        .collect();
    let f = fd("exp_decay:a=1");
    let sym = check("CT3.5", Some(&[f, f]), 1, 1e-6, cfg).unwrap();
    let sym_ok = sym.iter().all(|p| (p.lhs - p.rhs).abs() <= p.lhs_err + p.rhs_err);
    let sym_detail = sym.first().map_or(String::new(), |p| format!("|lhs-rhs| = {:.1e}", (p.lhs - p.rhs).abs()));
    outcome(
        ok && sym_ok && single_pairing.is_empty() && sums.len() == ids.len(),
        format!("{detail}; CT3.5 with f=g: {sym_detail}; single pairing: {single_pairing:?}"),
    )
}

fn moments(run: &SuiteRun) -> Outcome {
    let sums = summaries(run, &["M1", "M2", "M3", "ML1", "ML2", "ML3", "ML4"]);
    let (ok, detail) = all_within(&sums, 1e-6);
    let ml4 = sums
        .iter()
        .find(|s| s.id == "ML4")
        .is_some_and(|s| s.points.iter().any(|p| p.functions == ["power_exp:mu=0.5,a=1"] && p.status == Status::Pass));
    outcome(ok && ml4 && sums.len() == 7, format!("{detail}; ML4 with power_exp(0.5, 1): {ml4}"))
}

fn self_reciprocity(run: &SuiteRun) -> Outcome {
    let sums = summaries(run, &["HINV"]);
    let (ok, detail) = all_within(&sums, 1e-5);
    let mut seen = BTreeSet::new();
    for p in sums.iter().flat_map(|s| &s.points) {
        if p.functions == ["power_exp:mu=1,a=1"] {
            seen.insert((p.point["nu"].to_bits(), p.point["x"].to_bits()));
        }
    }
    let want: BTreeSet<_> =
        [0.5f64, 1.0].iter().flat_map(|nu| [0.5f64, 1.0, 2.0].map(|x| (nu.to_bits(), x.to_bits()))).collect();
    outcome(ok && want.is_subset(&seen), detail)
}

fn error_honesty(doc: &ReportDocument) -> Outcome {
    let cfg = QuadConfig::default();
    let (mut checked, mut honest) = (0usize, 0usize);
    let bases = [
        "power:mu=-0.5",
        "exp_decay:a=1",
        "power_exp:mu=0.5,a=1",
        "lorentz_power:nu=0.25,a=1",
        "hankel_kernel_frac:nu=0.25,t=1",
        "bessel_power:nu=0.5,a=1",
        "struve_half:nu=0,a=1",
        "gauss:a=1",
    ];
    for base in bases.map(fd) {
        for params in sample_grid(&base, 3).unwrap() {
            let f = with_params(&base, &params).unwrap();
            for cf in closed_forms(&f) {
                for y in cf.sample_points() {
                    let Ok(v) = transform(cf.transform, &f, y, &cfg) else { continue };
                    if !v.converged {
                        continue;
                    }
                    checked += 1;
                    honest += usize::from((v.value - cf.eval(y)).abs() <= 10.0 * v.abs_err);
                }
            }
        }
    }
    let suite = &doc.error_honesty;
    let total = checked + suite.checked;
    let fraction = (honest + suite.honest) as f64 / total as f64;
    outcome(
        fraction >= 0.99,
        format!(
            "{:.4} of {total} (catalog {honest}/{checked}, identity suite {}/{})",
            fraction, suite.honest, suite.checked
        ),
    )
}

fn full_verify() -> Outcome {
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_hankel"))
            .args(["verify", "--tol", "1e-5", "--format", "json"])
            .output()
            .expect("spawn hankel");
        (out, start.elapsed().as_secs_f64())
    };
    let strip = |bytes: &[u8]| -> Option<serde_json::Value> {
        let mut v: serde_json::Value = serde_json::from_slice(bytes).ok()?;
        v.as_object_mut()?.remove("timing");
        Some(v)
    };
    let (a, secs) = run();
    let (b, _) = run();
    let same = match (strip(&a.stdout), strip(&b.stdout)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    };
    let ok = a.status.code() == Some(0) && b.status.code() == Some(0);
    let summary = String::from_utf8_lossy(&a.stderr).trim().to_string();
    outcome(ok && same && secs < 1800.0, format!("{summary}; exit {:?}; deterministic: {same}", a.status.code()))
}

fn main() -> ExitCode {
    let tol = 1e-6;
    let cfg = quad_config_for(tol);
    let ids_by = |pred: &dyn Fn(&str) -> bool| -> Vec<&'static str> {
        registry().iter().map(|i| i.id).filter(|id| pred(id)).collect()
    };
    let iteration_ids =
        ids_by(&|id| ["L1.", "C1.", "C2.", "C3.", "C4.", "C5.", "IT"].iter().any(|p| id.starts_with(p)));
    let parseval_ids = ids_by(&|id| ["T1.", "T2.", "CT1.", "CT2.", "CT3."].iter().any(|p| id.starts_with(p)));
    let owned = |ids: &[&str]| ids.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let start = Instant::now();
    let iter_run = check_all(3, tol, &cfg, Some(&owned(&iteration_ids)), None);
    let iter_secs = start.elapsed().as_secs_f64();
    let rest_ids = ids_by(&|id| !iteration_ids.contains(&id));
    let start = Instant::now();
    let rest = check_all(3, tol, &cfg, Some(&owned(&rest_ids)), None);
    let rest_secs = start.elapsed().as_secs_f64();
    let mut run = SuiteRun { summaries: iter_run.summaries, seconds: iter_run.seconds };
    run.summaries.extend(rest.summaries);
    run.seconds.extend(rest.seconds);
    let config = RunConfig { quad: cfg, tol, grid: 3, ids: None, kind: None };
    let doc = ReportDocument::new(config, run.clone(), iter_secs + rest_secs);

    let results = [
        ("special-function golden suite", special_functions()),
        ("kernel integral KERN", kernel(&run)),
        ("closed-form examples EX1-EX5, REX1-REX3", closed_form_examples(&run, &cfg)),
        ("iteration identities", iteration(&run, &iteration_ids, iter_secs)),
        ("Parseval-type exchange identities", parseval(&run, &parseval_ids, &cfg)),
        ("moment identities", moments(&run)),
        ("Hankel self-reciprocity HINV", self_reciprocity(&run)),
        ("error honesty", error_honesty(&doc)),
        ("full verify at tol 1e-5", full_verify()),
    ];
    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        println!("[{}] {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
