//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit status if
//! any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use bessel_interlace::continuation::{scan_nu_star, NuStarSolution};
use bessel_interlace::interlace::*;
use bessel_interlace::lommel::{
    assoc_eval, eta_limit, lommel_eval, lommel_roots, lommel_wronskian_identity, LommelKind,
};
use bessel_interlace::special::{bessel_j, bessel_j_prime};
use bessel_interlace::zeros::{dj_dnu, zeros};
use bessel_interlace::FunctionId;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

const NU_GRID: [f64; 5] = [-0.5, 0.0, 1.125, 2.7, 5.0];

fn j_zeros(nu: f64, n: usize) -> Result<Vec<f64>, String> {
    Ok(zeros(FunctionId::BesselJ { order: nu }, n).map_err(e)?.zeros)
}

fn classical_interlacing() -> Outcome {
    let mut min_gap = f64::INFINITY;
    for nu in NU_GRID {
        for m in [1, 2] {
            let a = j_zeros(nu, 20)?;
            let b = j_zeros(nu + m as f64, 20)?;
            let chain: Vec<f64> = a.iter().zip(&b).flat_map(|(x, y)| [*x, *y]).collect();
            for w in chain.windows(2) {
                min_gap = min_gap.min(w[1] - w[0]);
            }
            ensure(min_gap > 1e-8, || format!("nu = {nu}, m = {m}: zeros do not alternate (gap {min_gap:e})"))?;
            let r = verify_plain_interlacing(Family::BesselJ, m, nu, 20).map_err(e)?;
            ensure(r.ok, || format!("nu = {nu}, m = {m}: report violation at {:?}", r.first_violation))?;
        }
    }
    Ok(format!("10 cases, minimum gap {min_gap:.3e}"))
}

fn plain_breakdown_at_m3() -> Outcome {
    let mut firsts = Vec::new();
    for nu in NU_GRID {
        let plain = verify_plain_interlacing(Family::BesselJ, 3, nu, 15).map_err(e)?;
        let first = plain.first_violation.ok_or_else(|| format!("nu = {nu}: plain interlacing did not fail"))?;
        firsts.push(first);
        let g = verify_generalized_interlacing(Family::BesselJ, 3, nu, 15).map_err(e)?;
        ensure(g.ok, || format!("nu = {nu}: generalized violation at {:?}", g.first_violation))?;
    }
    Ok(format!("plain first violations at positions {firsts:?}; generalized ok"))
}

fn first_lommel_root_geometry() -> Outcome {
    let nu = 1.125;
    let rho = 2.0 * (2.125f64 * 3.125).sqrt();
    let roots = lommel_roots(2, nu, LommelKind::Plain).map_err(e)?.zeros;
    ensure(roots.len() == 1 && (roots[0] - rho).abs() < 1e-8, || format!("Lommel roots {roots:?}, expected {rho}"))?;
    let z = j_zeros(nu, 5)?;
    let s = z.iter().position(|&x| x > rho).ok_or("rho beyond the first zeros")?;
    ensure(s > 0 && rho - z[s - 1] > 1e-8 && z[s] - rho > 1e-8, || format!("rho = {rho} not strictly inside {z:?}"))?;
    let r = verify_generalized_interlacing(Family::BesselJ, 3, nu, 16).map_err(e)?;
    ensure(r.merged.len() >= 15, || format!("only {} merged entries", r.merged.len()))?;
    ensure(r.ok && r.min_gap > 1e-8, || format!("generalized pattern fails at {:?}", r.first_violation))?;
    Ok(format!("rho = {rho:.10} in ({:.6}, {:.6}); {} merged entries interlace", z[s - 1], z[s], r.merged.len()))
}

fn run_cli(args: &[&str]) -> Result<serde_json::Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_bessel-interlace")).args(args).output().map_err(e)?;
    ensure(out.status.success(), || {
        format!("`{}` exited with {:?}: {}", args.join(" "), out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    serde_json::from_slice(&out.stdout).map_err(e)
}

fn common_zero_of_m5() -> Outcome {
    let v = run_cli(&["common-zero", "--m", "5", "--bracket", "5.619", "5.62", "--format", "json"])?;
    let sols: Vec<NuStarSolution> = serde_json::from_value(v).map_err(e)?;
    ensure(sols.len() == 1, || format!("{} solutions in the bracket", sols.len()))?;
    let s = &sols[0];
    ensure(s.nu_star > 5.619 && s.nu_star < 5.62, || format!("nu* = {}", s.nu_star))?;
    ensure(s.residual_j < 1e-8 && s.residual_jm < 1e-8, || format!("residuals {} {}", s.residual_j, s.residual_jm))?;
    let nu = s.nu_star.to_string();
    let v = run_cli(&["interlace", "--family", "j", "--m", "5", "--nu", &nu, "--k", "20", "--format", "json"])?;
    let r: InterlaceReport = serde_json::from_value(v).map_err(e)?;
    ensure(r.common_zeros.len() == 1, || format!("{} common zeros detected", r.common_zeros.len()))?;
    ensure(r.ok, || format!("generalized violation at {:?}", r.first_violation))?;
    let sw = common_zero_sandwich(5, s.nu_star, r.common_zeros[0].x).map_err(e)?;
    ensure(sw.holds, || format!("sandwich fails: {sw:?}"))?;
    Ok(format!(
        "nu* = {:.12} (l = {}, k = {}), x* = {:.10}, residuals {:.1e}/{:.1e}; {:.4} < {:.4} < {:.4} < {:.4} < {:.4}",
        s.nu_star,
        s.l,
        s.k,
        s.x_star,
        s.residual_j,
        s.residual_jm,
        sw.high_prev,
        sw.base_prev,
        sw.zeta,
        sw.base_next,
        sw.high_next
    ))
}

fn wronskian_series_samples() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_3101);
    let samples: Vec<(i32, f64, f64)> =
        (0..50).map(|_| (rng.gen_range(1..=5), rng.gen_range(-0.9..6.0), rng.gen_range(0.5..20.0))).collect();
    let results: Vec<Result<WronskianSample, String>> =
        samples.par_iter().map(|&(m, nu, x)| wronskian_series(m, nu, x, 5000).map_err(e)).collect();
    let mut worst: f64 = 0.0;
    for ((m, nu, x), r) in samples.iter().zip(results) {
        let s = r?;
        let slack = s.tail_bound + 1e-9 * s.direct.abs().max(1.0);
        worst = worst.max((s.direct - s.series).abs() / slack);
        ensure(s.consistent(), || format!("m = {m}, nu = {nu}, x = {x}: {s:?}"))?;
    }
    Ok(format!("50 samples, worst |direct - series| / allowance = {worst:.3}"))
}

fn dj_dnu_agreement() -> Outcome {
    let cases: Vec<(f64, usize)> = [0.5, 1.0, 2.7, 5.0].iter().flat_map(|&nu| (1..=3).map(move |k| (nu, k))).collect();
    let mut worst: f64 = 0.0;
    for (nu, k) in cases {
        let d = dj_dnu(nu, k).map_err(e)?;
        let v = [d.value_fd, d.value_series, d.value_watson];
        ensure(v.iter().all(|&x| x > 0.0), || format!("nu = {nu}, k = {k}: non-positive {v:?}"))?;
        for i in 0..3 {
            for j in i + 1..3 {
                let rel = (v[i] - v[j]).abs() / v[i].abs().max(v[j].abs());
                worst = worst.max(rel);
                ensure(rel < 1e-4, || format!("nu = {nu}, k = {k}: {v:?}"))?;
            }
        }
    }
    Ok(format!("12 cases, worst pairwise relative spread {worst:.2e}"))
}

fn eta_limits() -> Outcome {
    let s5 = 5f64.sqrt();
    let expected: [(i32, Vec<f64>); 3] = [(2, vec![2.0]), (3, vec![2f64.sqrt()]), (4, vec![s5 - 1.0, s5 + 1.0])];
    let mut slope_err: f64 = 0.0;
    for (n, want) in expected {
        let got = eta_limit(n).map_err(e)?.roots;
        ensure(got.len() == want.len(), || format!("n = {n}: {got:?}"))?;
        for (g, w) in got.iter().zip(&want) {
            ensure((g - w).abs() < 1e-12, || format!("n = {n}: {got:?} vs {want:?}"))?;
        }
        let (nu, h) = (1e4, 1.0);
        let a = lommel_roots(n, nu - h, LommelKind::Plain).map_err(e)?.zeros;
        let b = lommel_roots(n, nu + h, LommelKind::Plain).map_err(e)?.zeros;
        for ((x, y), w) in a.iter().zip(&b).zip(&want) {
            let slope = (y - x) / (2.0 * h);
            slope_err = slope_err.max((slope - w).abs());
            ensure((slope - w).abs() < 1e-2, || format!("n = {n}: slope {slope} vs {w}"))?;
        }
    }
    Ok(format!("closed forms within 1e-12; slopes at nu = 1e4 within {slope_err:.2e}"))
}

fn rational_orders() -> Vec<f64> {
    let mut v = Vec::new();
    for q in 1..=8i64 {
        for p in (-q + 1)..=(6 * q) {
            if gcd(p.unsigned_abs(), q as u64) == 1 {
                v.push(p as f64 / q as f64);
            }
        }
    }
    v.sort_by(f64::total_cmp);
    v
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn rational_orders_no_common_zeros() -> Outcome {
    let nus = rational_orders();
    let cases: Vec<(i32, f64)> = (1..=6).flat_map(|m| nus.iter().map(move |&nu| (m, nu))).collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(m, nu)| match detect_common_zeros(Family::BesselJ, m, nu, 20, 1e-8) {
            Ok(s) if s.points.is_empty() => None,
            Ok(s) => Some(format!("m = {m}, nu = {nu}: {} common zeros", s.points.len())),
            Err(err) => Some(format!("m = {m}, nu = {nu}: {err}")),
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    let mut solutions = 0;
    for m in 3..=6 {
        for s in scan_nu_star(m, 6, 10.0).map_err(e)? {
            let set = detect_common_zeros(Family::BesselJ, m, s.nu_star, 20, 1e-8).map_err(e)?;
            let bound = common_zero_bound(Family::BesselJ, m);
            ensure(!set.points.is_empty() && set.points.len() <= bound, || {
                format!("m = {m}, nu* = {}: {} common zeros, bound {bound}", s.nu_star, set.points.len())
            })?;
            solutions += 1;
        }
    }
    Ok(format!("{} rational orders x m = 1..6 have no common zeros; bound holds at {solutions} scanned nu*", nus.len()))
}

fn cylinder_section() -> Outcome {
    let mut cases = Vec::new();
    for alpha in [0.0, PI / 4.0, PI / 2.0, 3.0 * PI / 4.0] {
        for nu in [0.5, 1.125, 3.0] {
            for m in 1..=5 {
                cases.push((alpha, nu, m));
            }
        }
    }
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(alpha, nu, m)| {
            let check = || -> Result<(), String> {
                let r = verify_generalized_interlacing(Family::Cylinder { alpha }, m, nu, 15).map_err(e)?;
                ensure(r.ok, || format!("violation at {:?}", r.first_violation))?;
                let f = cylinder_first_interval(alpha, m, nu).map_err(e)?;
                ensure(f.ok(), || format!("first interval {f:?}"))
            };
            check().err().map(|msg| format!("alpha = {alpha}, nu = {nu}, m = {m}: {msg}"))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{} cases: generalized pattern, M = N - 1 alternation and both sign claims", cases.len()))
}

fn derivative_section() -> Outcome {
    for m in [0, 1] {
        for nu in [0.5, 1.0, 2.7] {
            let r = verify_plain_interlacing(Family::Derivative, m, nu, 15).map_err(e)?;
            ensure(r.ok, || {
                format!("J'_nu and J_(nu+m) fail to interlace at m = {m}, nu = {nu}, position {:?}", r.first_violation)
            })?;
        }
    }
    let mut sandwiches = Vec::new();
    for nu in [0.5, 1.0, 2.7] {
        let b = derivative_breakdown(nu).map_err(e)?;
        ensure(b.holds, || format!("no breakdown sandwich at nu = {nu}: {b:?}"))?;
        let plain = verify_plain_interlacing(Family::Derivative, 2, nu, 10).map_err(e)?;
        ensure(!plain.ok, || format!("plain m = 2 pattern unexpectedly holds at nu = {nu}"))?;
        sandwiches.push(format!("{:.3}<{:.3}<{:.3}<{:.3}<{:.3}", b.high_k, b.jp_s, b.rho_star, b.jp_s1, b.high_k1));
        for m in 2..=5 {
            let r = verify_generalized_interlacing(Family::Derivative, m, nu, 15).map_err(e)?;
            ensure(r.ok, || format!("m = {m}, nu = {nu}: violation at {:?}", r.first_violation))?;
        }
    }
    Ok(format!("m = 0, 1 interlace; m = 2 sandwiches {}; generalized ok for m = 2..5", sandwiches.join(", ")))
}

fn identities() -> Outcome {
    let mut worst = [0f64; 6];
    let rel = |a: f64, scale: f64| a.abs() / scale.max(1e-300);
    for m in 1..=15 {
        for nu in [0.3, 1.125, 4.0] {
            for x in [0.7, 3.0, 11.0] {
                let (a, b, c) = (
                    lommel_eval(m - 1, nu, x).map_err(e)?,
                    lommel_eval(m, nu, x).map_err(e)?,
                    lommel_eval(m + 1, nu, x).map_err(e)?,
                );
                let rhs = 2.0 * (nu + m as f64) / x * b;
                worst[0] = worst[0].max(rel(a + c - rhs, a.abs() + c.abs() + rhs.abs()));
                let (p, q) = lommel_wronskian_identity(m, nu, x).map_err(e)?;
                worst[1] = worst[1].max(p);
                worst[2] = worst[2].max(q);
                let lhs = assoc_eval(m, nu, x).map_err(e)?;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let rhs = sign * assoc_eval(-m, -nu, x).map_err(e)?;
                worst[3] = worst[3].max(rel(lhs - rhs, lhs.abs().max(1.0)));
            }
        }
    }
    for nu in [-0.5, 0.0, 1.0, 3.5] {
        for x in [0.5, 1.0, 3.0, 7.0] {
            let p = partial_fraction_check(nu, x, 5000).map_err(e)?;
            worst[4] = worst[4].max(p.residual / p.ratio.abs().max(1.0));
        }
    }
    for x in [0.5, 1.0, 2.0, 5.0, 13.0] {
        let nu = -0.5;
        let w = bessel_j(nu, x).map_err(e)?.value * bessel_j_prime(-nu, x).map_err(e)?.value
            - bessel_j_prime(nu, x).map_err(e)?.value * bessel_j(-nu, x).map_err(e)?.value;
        let want = -2.0 * (nu * PI).sin() / (PI * x);
        worst[5] = worst[5].max(rel(w - want, want.abs()));
    }
    let names =
        ["recurrence", "plain Wronskian", "associated Wronskian", "reflection", "partial fractions", "W[J_nu, J_-nu]"];
    let bad: Vec<String> = names
        .iter()
        .zip(&worst)
        .filter(|(_, &w)| w.is_nan() || w >= 1e-9)
        .map(|(n, w)| format!("{n}: {w:e}"))
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(names.iter().zip(&worst).map(|(n, w)| format!("{n} {w:.1e}")).collect::<Vec<_>>().join(", "))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("classical interlacing, m = 1, 2", classical_interlacing),
        ("plain interlacing fails at m = 3, generalized holds", plain_breakdown_at_m3),
        ("first Lommel root between zeros at nu = 1.125, m = 3", first_lommel_root_geometry),
        ("common zero of J_nu and J_(nu+5) in (5.619, 5.62)", common_zero_of_m5),
        ("Wronskian series vs direct, 50 random samples", wronskian_series_samples),
        ("dj/dnu: finite difference, series, integral", dj_dnu_agreement),
        ("slope limits eta", eta_limits),
        ("no common zeros at rational orders; cardinality bound", rational_orders_no_common_zeros),
        ("cylinder functions", cylinder_section),
        ("derivative J'_nu: m = 0, 1 interlacing, m = 2 breakdown, generalized pattern", derivative_section),
        ("identity suite", identities),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{secs:.2}s]: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{secs:.2}s]: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
