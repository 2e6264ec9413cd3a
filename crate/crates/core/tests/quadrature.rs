use std::f64::consts::PI;

use proptest::prelude::*;
use robin_bie::quadrature::QuadratureRule;
use robin_bie::special::i0;

const MS: [usize; 9] = [2, 3, 4, 5, 8, 16, 17, 32, 64];

fn apply(rule: &QuadratureRule, t: f64, f: impl Fn(f64) -> f64) -> f64 {
    rule.log_weights(t)
        .iter()
        .zip(rule.nodes())
        .map(|(w, &tj)| w * f(tj))
        .sum()
}

#[test]
fn trapezoid_basics() {
    let r = QuadratureRule::new(4).unwrap();
    let ones = vec![1.0; 8];
    assert_eq!(r.trapezoid(&ones).unwrap(), 1.0);
    let cos: Vec<f64> = r.nodes().iter().map(|t| t.cos()).collect();
    assert!(r.trapezoid(&cos).unwrap().abs() < 1e-16);
    assert!(r.trapezoid(&ones[..7]).is_err());
}

#[test]
fn trapezoid_converges_geometrically() {
    // (1/2π)∫ e^{cos τ} dτ = I0(1)
    let r = QuadratureRule::new(16).unwrap();
    let f: Vec<f64> = r.nodes().iter().map(|t| t.cos().exp()).collect();
    assert!((r.trapezoid(&f).unwrap() - i0(1.0).unwrap()).abs() < 1e-14);
}

#[test]
fn log_weights_sum_to_minus_one() {
    for m in MS {
        let r = QuadratureRule::new(m).unwrap();
        for k in 0..16 {
            let t = 0.4123 * k as f64 - 1.0;
            let s: f64 = r.log_weights(t).iter().sum();
            assert!((s + 1.0).abs() <= 1e-12, "M = {m}, t = {t}");
        }
    }
}

#[test]
fn log_rule_exact_for_trig_polynomials() {
    // (1/2π)∫ cos(kτ) ln((4/e) sin²((t-τ)/2)) dτ = -cos(kt)/k for k >= 1
    for m in MS {
        let r = QuadratureRule::new(m).unwrap();
        for k in 1..m {
            let kf = k as f64;
            for j in 0..16 {
                let t = 0.3931 * j as f64 + 0.1;
                let c = apply(&r, t, |x| (kf * x).cos());
                let s = apply(&r, t, |x| (kf * x).sin());
                assert!((c + (kf * t).cos() / kf).abs() <= 1e-12, "M = {m}, k = {k}");
                assert!((s + (kf * t).sin() / kf).abs() <= 1e-12, "M = {m}, k = {k}");
            }
        }
    }
}

#[test]
fn documented_examples() {
    for m in [2, 5, 9] {
        let r = QuadratureRule::new(m).unwrap();
        assert!((apply(&r, 0.0, f64::cos) + 1.0).abs() < 1e-14);
    }
    let r = QuadratureRule::new(3).unwrap();
    assert!((apply(&r, PI / 2.0, |x| (2.0 * x).cos()) - 0.5).abs() < 1e-14);
}

#[test]
fn smooth_integrand_converges() {
    // ∫ e^{cos τ} ln(4 sin²(τ/2)) dτ / 2π = -Σ_k 2 I_k(1)/k, compared across M
    let at = |m| {
        let r = QuadratureRule::new(m).unwrap();
        apply(&r, 0.0, |x| x.cos().exp())
    };
    let reference = at(64);
    assert!((at(16) - reference).abs() < 1e-13);
    assert!((at(4) - reference).abs() > 1e-8);
}

#[test]
fn shift_by_one_node_permutes_weights() {
    for m in [2, 7, 32] {
        let r = QuadratureRule::new(m).unwrap();
        let n = 2 * m;
        let t = 0.77;
        let a = r.log_weights(t);
        let b = r.log_weights(t + PI / m as f64);
        for j in 0..n {
            assert!((b[(j + 1) % n] - a[j]).abs() < 1e-14);
        }
    }
}

proptest! {
    #[test]
    fn weights_depend_on_difference_only(t in -10.0f64..10.0, shift in 0usize..64) {
        let m = 32;
        let r = QuadratureRule::new(m).unwrap();
        let a = r.log_weights(t);
        let b = r.log_weights(t + 2.0 * PI * shift as f64);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
