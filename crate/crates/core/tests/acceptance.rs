//! One test per acceptance criterion. Each writes a PASS/FAIL line to
//! stderr directly, so the verdicts show without `--nocapture`.

mod common;

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use common::{
    example_1a, example_1b, source, EXAMPLE_1A_PROBES, EXAMPLE_1B_PROBES, EXAMPLE_2_PROBES,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use robin_bie::field::{fundamental_solution, FieldEvaluator, InteriorRule};
use robin_bie::kernels::{log_factor, Boundary};
use robin_bie::quadrature::QuadratureRule;
use robin_bie::solver::{solve_problem, ProblemSpec, RobinData};
use robin_bie::special::{i0, i1, k0, k1, sigma0, sigma1};
use robin_bie::Point2;

const RULE: InteriorRule = InteriorRule::Resampled(1024);

fn report(id: u32, name: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    let line = format!("criterion {id} [{verdict}] {name}: {detail}\n");
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(ok, "criterion {id} failed: {detail}");
}

fn values(problem: &ProblemSpec, m: usize, probes: &[Point2]) -> Vec<f64> {
    let sol = solve_problem(problem, m).unwrap();
    let eval = FieldEvaluator::new(&sol, RULE);
    probes.iter().map(|&x| eval.eval(x).unwrap()).collect()
}

/// Largest probe error against `Φ(·, y*)`.
fn max_error(problem: &ProblemSpec, m: usize, probes: &[Point2]) -> f64 {
    let y = problem.data().source_point().unwrap();
    let kappa = problem.physics().kappa();
    values(problem, m, probes)
        .iter()
        .zip(probes)
        .map(|(u, &x)| (u - fundamental_solution(x, y, kappa).unwrap()).abs())
        .fold(0.0, f64::max)
}

fn slope(ms: &[usize], errors: &[f64]) -> f64 {
    let n = ms.len() as f64;
    let xs: Vec<f64> = ms.iter().map(|&m| m as f64).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn fmt_errors(ms: &[usize], errors: &[f64]) -> String {
    ms.iter()
        .zip(errors)
        .map(|(m, e)| format!("M={m} {e:.2e}"))
        .collect::<Vec<_>>()
        .join(", ")
}

#[test]
fn criterion_1_example_1a_errors() {
    let start = Instant::now();
    let problem = example_1a(source(4.0, 0.0));
    let ms = [4, 8, 16, 32];
    let tol = [5e-4, 1e-5, 1e-8, 1e-12];
    let errors: Vec<f64> = ms
        .iter()
        .map(|&m| max_error(&problem, m, &EXAMPLE_1A_PROBES))
        .collect();
    let elapsed = start.elapsed().as_secs_f64();
    let ok = errors.iter().zip(tol).all(|(e, t)| *e <= t) && elapsed < 5.0;
    report(
        1,
        "example 1a probe errors",
        ok,
        &format!("{}; {elapsed:.2} s", fmt_errors(&ms, &errors)),
    );
}

#[test]
fn criterion_2_example_1b_errors() {
    let problem = example_1b(source(4.0, 0.0));
    let ms = [16, 32];
    let errors: Vec<f64> = ms
        .iter()
        .map(|&m| max_error(&problem, m, &EXAMPLE_1B_PROBES))
        .collect();
    let ok = errors[0] <= 1e-6 && errors[1] <= 1e-10;
    report(2, "example 1b probe errors", ok, &fmt_errors(&ms, &errors));
}

#[test]
fn criterion_3_exponential_convergence() {
    let ms = [4, 8, 16, 32];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, problem, probes) in [
        ("1a", example_1a(source(4.0, 0.0)), EXAMPLE_1A_PROBES),
        ("1b", example_1b(source(4.0, 0.0)), EXAMPLE_1B_PROBES),
    ] {
        let errors: Vec<f64> = ms
            .iter()
            .map(|&m| max_error(&problem, m, &probes))
            .collect();
        let s = slope(&ms, &errors);
        ok &= s <= -0.5;
        detail.push(format!("{name} slope {s:.3}"));
    }
    report(3, "log-error slope per unit M", ok, &detail.join(", "));
}

#[test]
fn criterion_4_example_2_values() {
    let problem = example_1a(RobinData::PolynomialExample2);
    let reference = [1.088551277, 0.710212073, 1.087486912, 0.609981936];
    let u32_ = values(&problem, 32, &EXAMPLE_2_PROBES);
    let u64_ = values(&problem, 64, &EXAMPLE_2_PROBES);
    let dev = u64_
        .iter()
        .zip(reference)
        .map(|(u, r)| (u - r).abs())
        .fold(0.0, f64::max);
    let diff = u64_
        .iter()
        .zip(&u32_)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    let ok = dev <= 2e-5 && diff <= 1e-5;
    let shown: Vec<String> = u64_.iter().map(|u| format!("{u:.9}")).collect();
    report(
        4,
        "example 2 values at M=64",
        ok,
        &format!(
            "u64 = [{}], max |u64 - reference| {dev:.2e} (tol 2e-5), max |u64 - u32| {diff:.2e} (tol 1e-5)",
            shown.join(", ")
        ),
    );
}

#[test]
fn criterion_5_quadrature() {
    let mut sum_dev: f64 = 0.0;
    let mut exact_dev: f64 = 0.0;
    for m in 2..=64 {
        let rule = QuadratureRule::new(m).unwrap();
        for q in 0..16 {
            let t = 0.3931 * q as f64 + 0.05;
            let w = rule.log_weights(t);
            sum_dev = sum_dev.max((w.iter().sum::<f64>() + 1.0).abs());
            for k in 1..m {
                let kf = k as f64;
                let c: f64 = w
                    .iter()
                    .zip(rule.nodes())
                    .map(|(w, x)| w * (kf * x).cos())
                    .sum();
                let s: f64 = w
                    .iter()
                    .zip(rule.nodes())
                    .map(|(w, x)| w * (kf * x).sin())
                    .sum();
                exact_dev = exact_dev
                    .max((c + (kf * t).cos() / kf).abs())
                    .max((s + (kf * t).sin() / kf).abs());
            }
        }
    }
    let ok = sum_dev <= 1e-12 && exact_dev <= 1e-12;
    report(
        5,
        "log-quadrature constants and trig exactness",
        ok,
        &format!("max |ΣR + 1| {sum_dev:.2e}, max trig deviation {exact_dev:.2e}"),
    );
}

#[test]
fn criterion_6_special_functions() {
    let grid = |lo: f64, hi: f64, n: usize| {
        (0..n).map(move |k| lo * (hi / lo).powf(k as f64 / (n - 1) as f64))
    };
    let wronskian = grid(0.05, 20.0, 400)
        .map(|z| {
            (z * (i0(z).unwrap() * k1(z).unwrap() + i1(z).unwrap() * k0(z).unwrap()) - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let split = grid(1e-6, 10.0, 400)
        .map(|z| {
            let l = (0.5 * z).ln();
            let d0 = (k0(z).unwrap() - (-l * i0(z).unwrap() + sigma0(z).unwrap())).abs();
            let d1 = (k1(z).unwrap() - (1.0 / z + l * i1(z).unwrap() + sigma1(z).unwrap())).abs();
            (d0 / k0(z).unwrap().max(1.0)).max(d1 / k1(z).unwrap().max(1.0))
        })
        .fold(0.0, f64::max);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
    let oracle = [
        rel(k0(1.0).unwrap(), 0.42102443824070833),
        rel(k1(1.0).unwrap(), 0.601_907_230_197_234_6),
        rel(i0(1.0).unwrap(), 1.2660658777520083),
        rel(i1(1.0).unwrap(), 0.565_159_103_992_485),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let ok = wronskian <= 1e-12 && split <= 1e-12 && oracle <= 1e-13;
    report(
        6,
        "Bessel functions",
        ok,
        &format!("Wronskian {wronskian:.2e}, splitting {split:.2e}, oracle rel {oracle:.2e}"),
    );
}

#[test]
fn criterion_7_properties() {
    // zero data
    let m = 16;
    let zero = RobinData::Nodal {
        f1: vec![0.0; 2 * m],
        f2: vec![0.0; 2 * m],
    };
    let sol = solve_problem(&example_1a(zero), m).unwrap();
    let psi_max = sol
        .psi1
        .iter()
        .chain(&sol.psi2)
        .fold(0.0f64, |a, v| a.max(v.abs()));
    let eval = FieldEvaluator::new(&sol, RULE);
    let u_max = EXAMPLE_1A_PROBES
        .iter()
        .map(|&x| eval.eval(x).unwrap().abs())
        .fold(0.0, f64::max);
    let zero_ok = psi_max <= 1e-12 && u_max <= 1e-12;

    // source point in the hole
    let mut hole_ok = true;
    let mut hole = Vec::new();
    for (name, problem, probes) in [
        ("1a", example_1a(source(0.0, -0.3)), EXAMPLE_1A_PROBES),
        ("1b", example_1b(source(0.0, 0.0)), EXAMPLE_1B_PROBES),
    ] {
        let e: Vec<f64> = [4, 8, 16]
            .iter()
            .map(|&m| max_error(&problem, m, &probes))
            .collect();
        let s = slope(&[4, 8, 16], &e);
        hole_ok &= e[1] < e[0] && e[2] < e[1] && s <= -0.5;
        hole.push(format!(
            "{name}: {}, slope {s:.3}",
            fmt_errors(&[4, 8, 16], &e)
        ));
    }

    // split reconstruction
    let mut rng = StdRng::seed_from_u64(2024);
    let problems = [example_1a(source(4.0, 0.0)), example_1b(source(4.0, 0.0))];
    let mut split_dev: f64 = 0.0;
    for _ in 0..10_000 {
        let ks = problems[rng.gen_range(0..2)].kernels();
        let i = Boundary::BOTH[rng.gen_range(0..2)];
        let t = rng.gen_range(0.0..2.0 * PI);
        let tau = rng.gen_range(0.0..2.0 * PI);
        let lf = log_factor(t, tau);
        let full = ks.h_full(i, i, t, tau).unwrap();
        let h = ks.h_diag_log(i, t, tau) * lf + ks.h_diag_smooth(i, t, tau);
        let exact = k0(ks.curve(i).chord(t, tau).norm()).unwrap();
        let (a, b) = ks.boundary_kernel_split(i, t, tau);
        split_dev = split_dev
            .max((full - h).abs() / full.abs().max(1.0))
            .max((exact - (a * lf + b)).abs() / exact.abs().max(1.0));
    }
    let split_ok = split_dev <= 1e-11;

    report(
        7,
        "zero data, source in hole, kernel split",
        zero_ok && hole_ok && split_ok,
        &format!(
            "zero data max |ψ| {psi_max:.1e} max |u| {u_max:.1e}; hole {}; split {split_dev:.2e}",
            hole.join("; ")
        ),
    );
}
