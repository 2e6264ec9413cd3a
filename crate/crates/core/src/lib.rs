//! Boundary-integral solver for the Robin problem
//!
//! ```text
//! Δu - κ²u = 0            in D = D₁ \ D̄₂
//! ∂u/∂ν + λ_i u = f_i     on Γ_i, i = 1, 2
//! ```
//!
//! in a doubly connected planar domain. The solution is sought as a sum of
//! single-layer potentials over both boundary curves; the resulting system
//! of second-kind integral equations is discretized by the Nyström method
//! on `2M` equidistant nodes per curve, with trigonometric log-quadrature
//! for the weakly singular self-interaction kernels.
//!
//! Modules, bottom up: [`special`] (Bessel functions), [`geometry`],
//! [`quadrature`], [`kernels`], [`solver`], [`field`] and the command-line
//! front end in [`cli`].

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod cli;
pub mod error;
pub mod field;
pub mod geometry;
pub mod kernels;
pub mod linalg;
pub mod quadrature;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
pub use field::{
    eval_interior, eval_on_boundary, fundamental_solution, FieldEvaluator, InteriorRule,
};
pub use geometry::{CurveKind, CurveSample, ParametricCurve, Point2, TrigSeries};
pub use kernels::{Boundary, KernelSplit, PhysicsParams};
pub use quadrature::QuadratureRule;
pub use solver::{
    assemble, solve_problem, DensitySolution, DiscreteSystem, ProblemSpec, RobinData,
};
