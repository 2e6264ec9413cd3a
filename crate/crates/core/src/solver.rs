//! Problem definition, Nyström assembly of the `4M × 4M` system and its solution.
//!
//! Unknowns are the Jacobian-weighted densities `ψ_i(t) = φ_i(x_i(t)) |x_i'(t)|`
//! at the nodes `t_j = jπ/M`. Rows and columns are ordered Γ₁ block first.
//! With `N = 2M`, the row for node `t_a` on curve `i` reads
//!
//! ```text
//! ±ψ_{i,a} / (2|x_i'(t_a)|)
//!   + Σ_b ψ_{i,b} [R_b(t_a) H_ii⁽¹⁾(t_a,t_b) + H_ii⁽²⁾(t_a,t_b)/N]
//!   + Σ_b ψ_{k,b} H_ik(t_a,t_b)/N = g_i(t_a)
//! ```
//!
//! with `+` on Γ₁ and `-` on Γ₂ (the normal on Γ₂ points into the domain).

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{self, ParametricCurve, Point2, VALIDATION_SAMPLES};
use crate::kernels::{Boundary, KernelSplit, PhysicsParams};
use crate::linalg::{self, DenseMatrix, LuFactors};
use crate::quadrature::node_log_weights;
use crate::special::{k0_unchecked, k1_unchecked};

/// Points closer than this to either curve are treated as on the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum RobinData {
    /// Data generated by the exact solution `u = Φ(·, y*)`.
    Fundamental { y_star: Point2 },
    /// `f₁ = x₁² + x₂` on Γ₁, `f₂ = x₁ + x₂²` on Γ₂.
    PolynomialExample2,
    /// Values at the `2M` nodes of each curve.
    Nodal { f1: Vec<f64>, f2: Vec<f64> },
}

impl RobinData {
    /// Exact solution source point, when the data comes from one.
    pub fn source_point(&self) -> Option<Point2> {
        match self {
            RobinData::Fundamental { y_star } => Some(*y_star),
            _ => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProblemSpec {
    kernels: KernelSplit,
    data: RobinData,
}

impl ProblemSpec {
    /// Validates nesting (Γ₂ strictly inside Γ₁) and, for fundamental data,
    /// that the source point lies outside the closed domain.
    pub fn new(
        physics: PhysicsParams,
        gamma1: ParametricCurve,
        gamma2: ParametricCurve,
        data: RobinData,
    ) -> Result<Self> {
        let step = VALIDATION_SAMPLES / 128;
        for k in (0..VALIDATION_SAMPLES).step_by(step) {
            let t = 2.0 * PI * k as f64 / VALIDATION_SAMPLES as f64;
            if !gamma1.encloses(gamma2.point(t)) {
                return Err(Error::domain(
                    "inner curve must lie strictly inside the outer curve",
                ));
            }
            if gamma2.encloses(gamma1.point(t)) {
                return Err(Error::domain("outer curve enters the inner curve"));
            }
        }
        let problem = Self {
            kernels: KernelSplit::new(physics, gamma1, gamma2),
            data,
        };
        match &problem.data {
            RobinData::Fundamental { y_star } => {
                if !y_star.is_finite() {
                    return Err(Error::domain("source point must be finite"));
                }
                let near = Boundary::BOTH
                    .iter()
                    .any(|&i| problem.curve(i).distance_to(*y_star) <= BOUNDARY_TOLERANCE);
                let outside_outer = !problem.curve(Boundary::Outer).encloses(*y_star);
                let in_hole = problem.curve(Boundary::Inner).encloses(*y_star);
                if near || !(outside_outer || in_hole) {
                    return Err(Error::domain(format!(
                        "source point inside domain: y* = ({}, {})",
                        y_star.x1, y_star.x2
                    )));
                }
            }
            RobinData::Nodal { f1, f2 } => {
                if f1.iter().chain(f2).any(|v| !v.is_finite()) {
                    return Err(Error::domain("nodal Robin data must be finite"));
                }
            }
            RobinData::PolynomialExample2 => {}
        }
        Ok(problem)
    }

    pub fn physics(&self) -> &PhysicsParams {
        self.kernels.physics()
    }

    pub fn curve(&self, i: Boundary) -> &ParametricCurve {
        self.kernels.curve(i)
    }

    pub fn kernels(&self) -> &KernelSplit {
        &self.kernels
    }

    pub fn data(&self) -> &RobinData {
        &self.data
    }

    /// Distance from `p` to the nearer of the two curves.
    pub fn distance_to_boundary(&self, p: Point2) -> f64 {
        Boundary::BOTH
            .iter()
            .map(|&i| self.curve(i).distance_to(p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `p` lies in `D` at distance above [`BOUNDARY_TOLERANCE`] from both curves.
    pub fn contains(&self, p: Point2) -> bool {
        p.is_finite()
            && self.curve(Boundary::Outer).encloses(p)
            && !self.curve(Boundary::Inner).encloses(p)
            && self.distance_to_boundary(p) > BOUNDARY_TOLERANCE
    }
}

/// `∂Φ(x, y*)/∂ν(x) + λ Φ(x, y*)` with `Φ = K0(κ|x-y|)/(2π)`.
pub(crate) fn fundamental_robin_value(
    kappa: f64,
    lambda: f64,
    x: Point2,
    nu: Point2,
    y_star: Point2,
) -> f64 {
    let d = x - y_star;
    let r = d.norm();
    let z = kappa * r;
    let normal_derivative = -kappa * k1_unchecked(z) * d.dot(nu) / r;
    (normal_derivative + lambda * k0_unchecked(z)) / (2.0 * PI)
}

/// Robin data `g_i(t_j) = f_i(x_i(t_j))` at the nodes of both curves.
pub fn robin_rhs(problem: &ProblemSpec, m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let nodes = geometry::nodes(m)?;
    let sample_curve = |i: Boundary| -> Vec<f64> {
        let curve = problem.curve(i);
        nodes
            .iter()
            .map(|&t| {
                let s = curve.sample(t);
                match &problem.data {
                    RobinData::Fundamental { y_star } => fundamental_robin_value(
                        problem.physics().kappa(),
                        problem.physics().lambda(i),
                        s.x,
                        s.nu,
                        *y_star,
                    ),
                    RobinData::PolynomialExample2 => match i {
                        Boundary::Outer => s.x.x1 * s.x.x1 + s.x.x2,
                        Boundary::Inner => s.x.x1 + s.x.x2 * s.x.x2,
                    },
                    RobinData::Nodal { .. } => unreachable!("handled below"),
                }
            })
            .collect()
    };
    match &problem.data {
        RobinData::Nodal { f1, f2 } => {
            if f1.len() != 2 * m || f2.len() != 2 * m {
                return Err(Error::domain(format!(
                    "nodal data has lengths ({}, {}), expected {} for M = {m}",
                    f1.len(),
                    f2.len(),
                    2 * m
                )));
            }
            Ok((f1.clone(), f2.clone()))
        }
        _ => Ok((sample_curve(Boundary::Outer), sample_curve(Boundary::Inner))),
    }
}

#[derive(Debug, Clone)]
pub struct DiscreteSystem {
    pub m: usize,
    pub matrix: DenseMatrix,
    pub rhs: Vec<f64>,
}

/// Builds the Nyström system for `M >= 2`. Rows are assembled in parallel;
/// each entry is computed independently so the result does not depend on
/// the thread count.
pub fn assemble(problem: &ProblemSpec, m: usize) -> Result<DiscreteSystem> {
    if m < 2 {
        return Err(Error::domain(format!("M must be at least 2, got {m}")));
    }
    let nodes = geometry::nodes(m)?;
    let n = 2 * m;
    let nf = n as f64;
    let circulant = node_log_weights(m);
    let ks = problem.kernels();
    let samples: Vec<Vec<_>> = Boundary::BOTH
        .iter()
        .map(|&i| nodes.iter().map(|&t| problem.curve(i).sample(t)).collect())
        .collect();

    let dim = 2 * n;
    let mut data = vec![0.0; dim * dim];
    data.par_chunks_mut(dim).enumerate().for_each(|(row, out)| {
        let i = if row < n {
            Boundary::Outer
        } else {
            Boundary::Inner
        };
        let a = row % n;
        let k = i.other();
        let sx = &samples[i.index()][a];
        let (own, other) = if i == Boundary::Outer {
            out.split_at_mut(n)
        } else {
            let (o, s) = out.split_at_mut(n);
            (s, o)
        };
        for (b, entry) in own.iter_mut().enumerate() {
            let (log_part, smooth) = ks.self_split(i, sx, nodes[a], nodes[b]);
            *entry = circulant[(b + n - a) % n] * log_part + smooth / nf;
        }
        let jump = match i {
            Boundary::Outer => 0.5,
            Boundary::Inner => -0.5,
        };
        own[a] += jump / sx.jac;
        for (b, entry) in other.iter_mut().enumerate() {
            let diff = sx.x - samples[k.index()][b].x;
            *entry = ks.full_from_diff(i, sx, diff) / nf;
        }
    });
    let matrix = DenseMatrix::from_row_major(dim, data);
    if matrix.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("assembled matrix has non-finite entries"));
    }

    let (g1, g2) = robin_rhs(problem, m)?;
    let rhs = [g1, g2].concat();
    Ok(DiscreteSystem { m, matrix, rhs })
}

/// Solves the assembled system by LU with partial pivoting.
pub fn solve_dense(system: &DiscreteSystem) -> Result<Vec<f64>> {
    linalg::solve_dense(&system.matrix, &system.rhs)
}

impl DiscreteSystem {
    /// Reciprocal 1-norm condition number of the system matrix.
    pub fn reciprocal_condition(&self) -> Result<f64> {
        Ok(LuFactors::new(&self.matrix)?.reciprocal_condition(&self.matrix))
    }
}

/// Node values of the two densities together with the problem they solve.
#[derive(Debug, Clone)]
pub struct DensitySolution {
    pub m: usize,
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
    pub problem: ProblemSpec,
}

impl DensitySolution {
    pub fn psi(&self, i: Boundary) -> &[f64] {
        match i {
            Boundary::Outer => &self.psi1,
            Boundary::Inner => &self.psi2,
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        geometry::nodes(self.m).expect("M >= 2 by construction")
    }

    /// Trigonometric interpolant of `ψ̃_i` through its `2M` node values.
    pub fn interpolate(&self, i: Boundary, t: f64) -> f64 {
        TrigInterpolant::new(self.psi(i)).eval(t)
    }
}

/// Real trigonometric interpolant of degree `M` through `2M` equidistant
/// values, with the `cos(Mt)` term halved.
#[derive(Debug, Clone)]
pub(crate) struct TrigInterpolant {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl TrigInterpolant {
    pub(crate) fn new(values: &[f64]) -> Self {
        let n = values.len();
        let m = n / 2;
        let mut a = vec![0.0; m + 1];
        let mut b = vec![0.0; m + 1];
        for k in 0..=m {
            for (j, &v) in values.iter().enumerate() {
                let (s, c) = (k as f64 * j as f64 * PI / m as f64).sin_cos();
                a[k] += v * c;
                b[k] += v * s;
            }
            a[k] /= m as f64;
            b[k] /= m as f64;
        }
        Self { a, b }
    }

    pub(crate) fn eval(&self, t: f64) -> f64 {
        let m = self.a.len() - 1;
        let mut v = 0.5 * self.a[0] + 0.5 * self.a[m] * (m as f64 * t).cos();
        for k in 1..m {
            let (s, c) = (k as f64 * t).sin_cos();
            v += self.a[k] * c + self.b[k] * s;
        }
        v
    }
}

/// Assembles, solves, and splits the solution into the two densities.
pub fn solve_problem(problem: &ProblemSpec, m: usize) -> Result<DensitySolution> {
    let system = assemble(problem, m)?;
    let x = solve_dense(&system)?;
    let (psi1, psi2) = x.split_at(2 * m);
    Ok(DensitySolution {
        m,
        psi1: psi1.to_vec(),
        psi2: psi2.to_vec(),
        problem: problem.clone(),
    })
}
