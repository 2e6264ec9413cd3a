//! Quadrature rules for 2π-periodic integrands on `2M` equidistant nodes.
//!
//! Both rules approximate the mean `(1/2π) ∫₀^{2π}`; the second one carries
//! the logarithmic factor `ln((4/e) sin²((t-τ)/2))` inside its weights.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    m: usize,
    nodes: Vec<f64>,
}

impl QuadratureRule {
    pub fn new(m: usize) -> Result<Self> {
        Ok(Self {
            m,
            nodes: geometry::nodes(m)?,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// `(1/2M) Σ_j f(t_j)`.
    pub fn trapezoid(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.len() {
            return Err(Error::domain(format!(
                "expected {} samples, got {}",
                self.len(),
                samples.len()
            )));
        }
        Ok(samples.iter().sum::<f64>() / self.len() as f64)
    }

    /// Weights `R_j(t)` with
    /// `Σ_j R_j(t) f(t_j) ≈ (1/2π) ∫ f(τ) ln((4/e) sin²((t-τ)/2)) dτ`,
    /// exact for trigonometric polynomials of degree below `M`.
    pub fn log_weights(&self, t: f64) -> Vec<f64> {
        self.nodes
            .iter()
            .map(|&tj| log_weight(self.m, t - tj))
            .collect()
    }
}

/// `R(s) = -(1/M) Σ_{m<M} cos(ms)/m - cos(Ms)/(2M²) - 1/(2M)`.
///
/// The trailing constant accounts for the `-1` mean of `ln(4/e)`; without it
/// the rule integrates `ln(4 sin²)` instead.
pub(crate) fn log_weight(m: usize, s: f64) -> f64 {
    let mf = m as f64;
    let mut sum = 0.0;
    for k in 1..m {
        sum += (k as f64 * s).cos() / k as f64;
    }
    -sum / mf - (mf * s).cos() / (2.0 * mf * mf) - 1.0 / (2.0 * mf)
}

/// Weights at a node `t_i` form a circulant: `R_j(t_i) = row[(j - i) mod 2M]`.
pub(crate) fn node_log_weights(m: usize) -> Vec<f64> {
    (0..2 * m)
        .map(|j| log_weight(m, -(j as f64) * PI / m as f64))
        .collect()
}
