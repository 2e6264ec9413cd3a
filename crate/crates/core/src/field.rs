//! Evaluation of the approximate solution
//! `u(x) = (1/2π) Σ_i ∫ ψ_i(τ) K0(κ|x - x_i(τ)|) dτ` from computed densities.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::kernels::Boundary;
use crate::quadrature::QuadratureRule;
use crate::solver::{
    fundamental_robin_value, DensitySolution, ProblemSpec, RobinData, TrigInterpolant,
};
use crate::special::k0_unchecked;

/// `Φ(x, y) = K0(κ|x - y|) / (2π)`.
pub fn fundamental_solution(x: Point2, y: Point2, kappa: f64) -> Result<f64> {
    let r = (x - y).norm();
    if !(r > 0.0) {
        return Err(Error::domain(
            "fundamental solution evaluated at coincident points",
        ));
    }
    Ok(k0_unchecked(kappa * r) / (2.0 * PI))
}

/// Quadrature used for the interior representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InteriorRule {
    /// Trapezoid rule on the `2M` solution nodes.
    #[default]
    Nodal,
    /// Trapezoid rule on `L` equidistant nodes after trigonometric
    /// interpolation of the densities. Resolves the kernel for probes whose
    /// distance to a curve is comparable to the node spacing. Falls back to
    /// the nodal rule when `L <= 2M`.
    Resampled(usize),
}

/// Precomputed quadrature nodes and weighted densities for repeated
/// interior evaluation.
#[derive(Debug, Clone)]
pub struct FieldEvaluator<'a> {
    problem: &'a ProblemSpec,
    /// Per curve: quadrature points and `ψ(τ_j) / L`.
    points: [Vec<(Point2, f64)>; 2],
}

impl<'a> FieldEvaluator<'a> {
    pub fn new(sol: &'a DensitySolution, rule: InteriorRule) -> Self {
        let n = 2 * sol.m;
        let build = |i: Boundary| -> Vec<(Point2, f64)> {
            let curve = sol.problem.curve(i);
            let psi = sol.psi(i);
            match rule {
                InteriorRule::Resampled(l) if l > n => {
                    let ip = TrigInterpolant::new(psi);
                    (0..l)
                        .map(|j| {
                            let t = 2.0 * PI * j as f64 / l as f64;
                            (curve.point(t), ip.eval(t) / l as f64)
                        })
                        .collect()
                }
                _ => sol
                    .nodes()
                    .iter()
                    .zip(psi)
                    .map(|(&t, &v)| (curve.point(t), v / n as f64))
                    .collect(),
            }
        };
        Self {
            problem: &sol.problem,
            points: [build(Boundary::Outer), build(Boundary::Inner)],
        }
    }

    /// `u(x)` for `x` strictly inside the domain.
    pub fn eval(&self, x: Point2) -> Result<f64> {
        if !self.problem.contains(x) {
            return Err(Error::domain(format!(
                "point ({}, {}) is not strictly inside the domain",
                x.x1, x.x2
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: Point2) -> f64 {
        let kappa = self.problem.physics().kappa();
        self.points
            .iter()
            .flatten()
            .map(|&(y, w)| w * k0_unchecked(kappa * (x - y).norm()))
            .sum()
    }
}

/// `u(x)` by the trapezoid rule on the solution nodes.
pub fn eval_interior(sol: &DensitySolution, x: Point2) -> Result<f64> {
    FieldEvaluator::new(sol, InteriorRule::Nodal).eval(x)
}

/// `u(x_i(t))`: log-split quadrature on the own curve, trapezoid rule on
/// the other one.
pub fn eval_on_boundary(sol: &DensitySolution, i: Boundary, t: f64) -> f64 {
    let rule = QuadratureRule::new(sol.m).expect("M >= 2 by construction");
    let nodes = rule.nodes();
    let nf = nodes.len() as f64;
    let ks = sol.problem.kernels();
    let weights = rule.log_weights(t);
    let own: f64 = nodes
        .iter()
        .zip(&weights)
        .zip(sol.psi(i))
        .map(|((&tj, &w), &psi)| {
            let (log_part, smooth) = ks.boundary_kernel_split(i, t, tj);
            psi * (w * log_part + smooth / nf)
        })
        .sum();
    let k = i.other();
    let x = ks.curve(i).point(t);
    let kappa = ks.physics().kappa();
    let other: f64 = nodes
        .iter()
        .zip(sol.psi(k))
        .map(|(&tj, &psi)| psi * k0_unchecked(kappa * (x - ks.curve(k).point(tj)).norm()))
        .sum();
    own + other / nf
}

/// Robin datum of fundamental-type data at an arbitrary parameter `t`.
pub fn robin_data_probe(problem: &ProblemSpec, i: Boundary, t: f64) -> Result<f64> {
    let RobinData::Fundamental { y_star } = problem.data() else {
        return Err(Error::domain(
            "Robin data probe requires fundamental-type data",
        ));
    };
    let s = problem.curve(i).sample(t);
    Ok(fundamental_robin_value(
        problem.physics().kappa(),
        problem.physics().lambda(i),
        s.x,
        s.nu,
        *y_star,
    ))
}
