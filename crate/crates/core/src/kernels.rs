//! Boundary kernels of the parametrized single-layer system and their
//! logarithmic splittings.
//!
//! For `x = x_i(t)`, `y = x_j(τ)`, `z = κ|x - y|` and `dn = (x - y)·ν(x)/|x - y|`:
//!
//! ```text
//! H_ij(t, τ) = -κ K1(z) dn + λ_i K0(z)
//! H_ii       = H⁽¹⁾ ln((4/e) sin²((t-τ)/2)) + H⁽²⁾
//! H⁽¹⁾       = -(λ_i/2) I0(z) - (κ/2) I1(z) dn
//! H⁽²⁾       = -dn/|x-y| + (λ_i/2) I0(z) Q + (κ/2) I1(z) dn Q - κ Σ1(z) dn + λ_i Σ0(z)
//! Q          = ln(16 sin²((t-τ)/2) / (e κ² |x-y|²))
//! ```
//!
//! The `I1` contribution to `H⁽¹⁾` vanishes to second order on the diagonal,
//! so both diagonal limits are those of the `I0` part alone. Keeping it in
//! the log factor is what makes `H⁽²⁾` analytic; left inside `H⁽²⁾` it
//! behaves like `(t-τ)² ln|t-τ|` and caps the quadrature at algebraic order.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::{curvature_term, CurveSample, ParametricCurve, Point2};
use crate::special::{
    i0_unchecked, i1_unchecked, k0_unchecked, k1_unchecked, sigma0_unchecked, sigma1_unchecked,
    EULER_GAMMA,
};

/// Parameter separations below this use the closed-form diagonal values.
/// The smooth parts vary by `O(|t-τ|)` across it.
const DIAGONAL_BAND: f64 = 1e-9;

/// Which boundary curve: `Outer` is Γ₁, `Inner` is Γ₂.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    Outer,
    Inner,
}

impl Boundary {
    pub const BOTH: [Boundary; 2] = [Boundary::Outer, Boundary::Inner];

    pub fn index(self) -> usize {
        match self {
            Boundary::Outer => 0,
            Boundary::Inner => 1,
        }
    }

    pub fn other(self) -> Boundary {
        match self {
            Boundary::Outer => Boundary::Inner,
            Boundary::Inner => Boundary::Outer,
        }
    }

    /// One-based label as used in output files.
    pub fn label(self) -> u8 {
        self.index() as u8 + 1
    }

    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            1 => Ok(Boundary::Outer),
            2 => Ok(Boundary::Inner),
            _ => Err(Error::domain(format!(
                "curve index must be 1 or 2, got {label}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsParams {
    kappa: f64,
    lambda1: f64,
    lambda2: f64,
}

impl PhysicsParams {
    pub fn new(kappa: f64, lambda1: f64, lambda2: f64) -> Result<Self> {
        for (name, v) in [("kappa", kappa), ("lambda1", lambda1), ("lambda2", lambda2)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::domain(format!(
                    "{name} must be finite and positive, got {v}"
                )));
            }
        }
        Ok(Self {
            kappa,
            lambda1,
            lambda2,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn lambda(&self, i: Boundary) -> f64 {
        match i {
            Boundary::Outer => self.lambda1,
            Boundary::Inner => self.lambda2,
        }
    }
}

/// Distance between `t` and `τ` on the circle of circumference 2π.
fn wrapped_separation(t: f64, tau: f64) -> f64 {
    let d = (t - tau).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Kernel evaluator for a fixed pair of curves and physical constants.
#[derive(Debug, Clone)]
pub struct KernelSplit {
    physics: PhysicsParams,
    curves: [ParametricCurve; 2],
}

impl KernelSplit {
    pub fn new(physics: PhysicsParams, gamma1: ParametricCurve, gamma2: ParametricCurve) -> Self {
        Self {
            physics,
            curves: [gamma1, gamma2],
        }
    }

    pub fn physics(&self) -> &PhysicsParams {
        &self.physics
    }

    pub fn curve(&self, i: Boundary) -> &ParametricCurve {
        &self.curves[i.index()]
    }

    /// `H_ij(t, τ)`. Fails when `i == j` and the two parameters coincide.
    pub fn h_full(&self, i: Boundary, j: Boundary, t: f64, tau: f64) -> Result<f64> {
        let sx = self.curve(i).sample(t);
        let diff = if i == j {
            if wrapped_separation(t, tau) == 0.0 {
                return Err(Error::domain(
                    "self kernel evaluated at coincident points; use the split form",
                ));
            }
            self.curve(i).chord(t, tau)
        } else {
            sx.x - self.curve(j).point(tau)
        };
        Ok(self.full_from_diff(i, &sx, diff))
    }

    pub(crate) fn full_from_diff(&self, i: Boundary, sx: &CurveSample, diff: Point2) -> f64 {
        let kappa = self.physics.kappa;
        let r = diff.norm();
        let z = kappa * r;
        let dn = diff.dot(sx.nu) / r;
        -kappa * k1_unchecked(z) * dn + self.physics.lambda(i) * k0_unchecked(z)
    }

    /// `H_ii⁽¹⁾(t, τ)`, equal to `-λ_i/2` on the diagonal.
    pub fn h_diag_log(&self, i: Boundary, t: f64, tau: f64) -> f64 {
        let sx = self.curve(i).sample(t);
        self.self_split(i, &sx, t, tau).0
    }

    /// `H_ii⁽²⁾(t, τ)` from its explicit smooth form; on the diagonal
    /// `curvature_term + (λ_i/2) ln(4/(e κ² |x'|²)) - λ_i γ`.
    pub fn h_diag_smooth(&self, i: Boundary, t: f64, tau: f64) -> f64 {
        let sx = self.curve(i).sample(t);
        self.self_split(i, &sx, t, tau).1
    }

    /// `(H_ii⁽¹⁾, H_ii⁽²⁾)` at `(t, τ)`, with `sx` the sample of curve `i` at `t`.
    pub(crate) fn self_split(&self, i: Boundary, sx: &CurveSample, t: f64, tau: f64) -> (f64, f64) {
        let kappa = self.physics.kappa;
        let lambda = self.physics.lambda(i);
        if wrapped_separation(t, tau) < DIAGONAL_BAND {
            let smooth = curvature_term(sx)
                + 0.5
                    * lambda
                    * (4.0 / (std::f64::consts::E * kappa * kappa * sx.jac * sx.jac)).ln()
                - lambda * EULER_GAMMA;
            return (-0.5 * lambda, smooth);
        }
        let diff = self.curve(i).chord(t, tau);
        let r = diff.norm();
        let z = kappa * r;
        let dn = diff.dot(sx.nu) / r;
        let q = log_ratio(t, tau, kappa, r);
        let i0 = i0_unchecked(z);
        let i1 = i1_unchecked(z);
        let log_part = -0.5 * lambda * i0 - 0.5 * kappa * i1 * dn;
        let smooth = -dn / r + 0.5 * lambda * i0 * q + 0.5 * kappa * i1 * dn * q
            - kappa * sigma1_unchecked(z) * dn
            + lambda * sigma0_unchecked(z);
        (log_part, smooth)
    }

    /// `K0(κ|x - x_j(τ)|)`, the kernel of the interior representation.
    pub fn field_kernel(&self, j: Boundary, x: Point2, tau: f64) -> Result<f64> {
        let r = (x - self.curve(j).point(tau)).norm();
        if !(r > 0.0) {
            return Err(Error::domain("field point coincides with a boundary point"));
        }
        Ok(k0_unchecked(self.physics.kappa * r))
    }

    /// `(Ĥ_i⁽¹⁾, Ĥ_i⁽²⁾)` with
    /// `K0(κ|x_i(t) - x_i(τ)|) = Ĥ⁽¹⁾ ln((4/e) sin²((t-τ)/2)) + Ĥ⁽²⁾`.
    pub fn boundary_kernel_split(&self, i: Boundary, t: f64, tau: f64) -> (f64, f64) {
        let kappa = self.physics.kappa;
        if wrapped_separation(t, tau) < DIAGONAL_BAND {
            let jac = self.curve(i).sample(t).jac;
            let smooth =
                0.5 * (4.0 / (std::f64::consts::E * kappa * kappa * jac * jac)).ln() - EULER_GAMMA;
            return (-0.5, smooth);
        }
        let r = self.curve(i).chord(t, tau).norm();
        let z = kappa * r;
        let i0 = i0_unchecked(z);
        (
            -0.5 * i0,
            0.5 * i0 * log_ratio(t, tau, kappa, r) + sigma0_unchecked(z),
        )
    }
}

/// `ln((4/e) sin²((t-τ)/2))`.
pub fn log_factor(t: f64, tau: f64) -> f64 {
    let s = (0.5 * (t - tau)).sin();
    (4.0 * s * s).ln() - 1.0
}

/// `Q = ln(16 sin²((t-τ)/2) / (e κ² r²))`.
fn log_ratio(t: f64, tau: f64, kappa: f64, r: f64) -> f64 {
    let s = (0.5 * (t - tau)).sin().abs();
    2.0 * (4.0 * s / (kappa * r)).ln() - 1.0
}
