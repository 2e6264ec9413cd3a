//! Modified Bessel functions of orders 0 and 1 and the smooth remainders
//! left after removing their logarithmic parts.
//!
//! With `q = z²/4`:
//!
//! ```text
//! K0(z) = -ln(z/2) I0(z) + Σ0(z)
//! K1(z) = 1/z + ln(z/2) I1(z) + Σ1(z)
//! ```
//!
//! `Σ0` and `Σ1` are entire functions of `z` and are summed from their own
//! ascending series, so no digits are lost near the origin.
//!
//! Strategy by argument range:
//! * `I0`, `I1`: ascending series for `z <= 30`, Hankel asymptotic series above.
//! * `K0`, `K1`: log split for `z <= 2`; above that the integral
//!   `K_ν(z) = ∫₀^∞ exp(-z cosh t) cosh(νt) dt` summed by the trapezoid rule,
//!   which converges geometrically in the step size for this integrand.
//! * `Σ0`, `Σ1`: series for `z <= 2`, defining identity above (both
//!   summands then carry the same sign).

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_LIMIT_I: f64 = 30.0;
const LOG_SPLIT_LIMIT: f64 = 2.0;
const MAX_TERMS: usize = 500;

fn check_nonnegative(z: f64) -> Result<()> {
    if !z.is_finite() || z < 0.0 {
        return Err(Error::domain(format!("expected a finite z >= 0, got {z}")));
    }
    Ok(())
}

fn check_positive(z: f64) -> Result<()> {
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::domain(format!("expected a finite z > 0, got {z}")));
    }
    Ok(())
}

/// `I0(z)` for finite `z >= 0`.
pub fn i0(z: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(i0_unchecked(z))
}

/// `I1(z)` for finite `z >= 0`.
pub fn i1(z: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(i1_unchecked(z))
}

/// `K0(z)` for finite `z > 0`.
pub fn k0(z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(k0_unchecked(z))
}

/// `K1(z)` for finite `z > 0`.
pub fn k1(z: f64) -> Result<f64> {
    check_positive(z)?;
    Ok(k1_unchecked(z))
}

/// `Σ0(z) = K0(z) + ln(z/2) I0(z)`, continuous at `z = 0` with value `-γ`.
pub fn sigma0(z: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(sigma0_unchecked(z))
}

/// `Σ1(z) = K1(z) - 1/z - ln(z/2) I1(z)`, vanishing at `z = 0`.
pub fn sigma1(z: f64) -> Result<f64> {
    check_nonnegative(z)?;
    Ok(sigma1_unchecked(z))
}

pub(crate) fn i0_unchecked(z: f64) -> f64 {
    if z > SERIES_LIMIT_I {
        i_asymptotic(0, z)
    } else {
        i0_series(z)
    }
}

pub(crate) fn i1_unchecked(z: f64) -> f64 {
    if z > SERIES_LIMIT_I {
        i_asymptotic(1, z)
    } else {
        i1_series(z)
    }
}

fn i0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * kf);
        sum += term;
        if term <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    sum
}

fn i1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        term *= q / (kf * (kf + 1.0));
        sum += term;
        if term <= f64::EPSILON * 0.25 * sum {
            break;
        }
    }
    0.5 * z * sum
}

/// Hankel expansion `I_ν(z) ~ e^z / sqrt(2πz) Σ (-1)^k a_k(ν) / z^k`.
fn i_asymptotic(order: u32, z: f64) -> f64 {
    let mu = 4.0 * f64::from(order * order);
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..60 {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (k as f64 * 8.0 * z);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    z.exp() / (2.0 * std::f64::consts::PI * z).sqrt() * sum
}

/// Harmonic numbers are accumulated alongside the series terms.
fn sigma0_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut power = 1.0; // q^k / (k!)^2
    let mut harmonic = 0.0;
    let mut sum = -EULER_GAMMA;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        power *= q / (kf * kf);
        harmonic += 1.0 / kf;
        let term = (harmonic - EULER_GAMMA) * power;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    sum
}

fn sigma1_series(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut power = 1.0; // q^k / (k! (k+1)!)
    let mut h_k = 0.0;
    let mut h_k1 = 1.0;
    let mut sum = h_k + h_k1 - 2.0 * EULER_GAMMA;
    for k in 1..MAX_TERMS {
        let kf = k as f64;
        power *= q / (kf * (kf + 1.0));
        h_k = h_k1;
        h_k1 += 1.0 / (kf + 1.0);
        let term = (h_k + h_k1 - 2.0 * EULER_GAMMA) * power;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            break;
        }
    }
    -0.25 * z * sum
}

pub(crate) fn sigma0_unchecked(z: f64) -> f64 {
    if z <= LOG_SPLIT_LIMIT {
        sigma0_series(z)
    } else {
        k_integral(0, z) + (0.5 * z).ln() * i0_unchecked(z)
    }
}

pub(crate) fn sigma1_unchecked(z: f64) -> f64 {
    if z <= LOG_SPLIT_LIMIT {
        sigma1_series(z)
    } else {
        k_integral(1, z) - 1.0 / z - (0.5 * z).ln() * i1_unchecked(z)
    }
}

pub(crate) fn k0_unchecked(z: f64) -> f64 {
    if z <= LOG_SPLIT_LIMIT {
        sigma0_series(z) - (0.5 * z).ln() * i0_unchecked(z)
    } else {
        k_integral(0, z)
    }
}

pub(crate) fn k1_unchecked(z: f64) -> f64 {
    if z <= LOG_SPLIT_LIMIT {
        1.0 / z + (0.5 * z).ln() * i1_unchecked(z) + sigma1_series(z)
    } else {
        k_integral(1, z)
    }
}

/// `K_ν(z) = e^{-z} ∫₀^∞ exp(-2z sinh²(t/2)) cosh(νt) dt`, trapezoid rule.
///
/// The step keeps the discretisation error near `exp(-40)` relative: the
/// integrand behaves like a Gaussian of variance `1/z` near the origin and
/// is analytic in a strip of half-width about 1.2.
fn k_integral(order: u32, z: f64) -> f64 {
    let h = (0.6 / z.sqrt()).min(0.1);
    let nu = f64::from(order);
    let mut sum = 0.5;
    for k in 1..100_000 {
        let t = k as f64 * h;
        let s = (0.5 * t).sinh();
        let term = (-2.0 * z * s * s).exp() * (nu * t).cosh();
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
    }
    h * sum * (-z).exp()
}
