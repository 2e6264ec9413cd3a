//! Closed boundary curves given by analytic 2π-periodic parametrizations.

use std::f64::consts::{PI, TAU};
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Number of samples used to validate a curve on construction.
pub const VALIDATION_SAMPLES: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub const fn new(x1: f64, x2: f64) -> Self {
        Self { x1, x2 }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x1 * other.x1 + self.x2 * other.x2
    }

    pub fn norm(self) -> f64 {
        self.x1.hypot(self.x2)
    }

    pub fn is_finite(self) -> bool {
        self.x1.is_finite() && self.x2.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 + rhs.x1, self.x2 + rhs.x2)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x1 - rhs.x1, self.x2 - rhs.x2)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, rhs: Point2) -> Point2 {
        Point2::new(self * rhs.x1, self * rhs.x2)
    }
}

/// Truncated Fourier series per coordinate. Entry `k` of a coefficient list
/// multiplies `cos((k+1)t)` or `sin((k+1)t)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrigSeries {
    #[serde(default)]
    pub x1_const: f64,
    #[serde(default)]
    pub x1_cos: Vec<f64>,
    #[serde(default)]
    pub x1_sin: Vec<f64>,
    #[serde(default)]
    pub x2_const: f64,
    #[serde(default)]
    pub x2_cos: Vec<f64>,
    #[serde(default)]
    pub x2_sin: Vec<f64>,
}

/// Value, first and second derivative of one coordinate.
fn series_eval(constant: f64, cos: &[f64], sin: &[f64], t: f64) -> (f64, f64, f64) {
    let mut v = constant;
    let mut d = 0.0;
    let mut dd = 0.0;
    for (k, &a) in cos.iter().enumerate() {
        let m = (k + 1) as f64;
        let (s, c) = (m * t).sin_cos();
        v += a * c;
        d -= a * m * s;
        dd -= a * m * m * c;
    }
    for (k, &b) in sin.iter().enumerate() {
        let m = (k + 1) as f64;
        let (s, c) = (m * t).sin_cos();
        v += b * s;
        d += b * m * c;
        dd -= b * m * m * s;
    }
    (v, d, dd)
}

/// `x(t) - x(τ)` for one coordinate via sum-to-product identities.
fn series_chord(cos: &[f64], sin: &[f64], t: f64, tau: f64) -> f64 {
    let mut v = 0.0;
    for (k, &a) in cos.iter().enumerate() {
        let m = (k + 1) as f64;
        v -= 2.0 * a * (0.5 * m * (t + tau)).sin() * (0.5 * m * (t - tau)).sin();
    }
    for (k, &b) in sin.iter().enumerate() {
        let m = (k + 1) as f64;
        v += 2.0 * b * (0.5 * m * (t + tau)).cos() * (0.5 * m * (t - tau)).sin();
    }
    v
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    /// `(r cos t, r sin t)`
    Circle {
        r: f64,
    },
    /// `(a cos t, b sin t)`
    Ellipse {
        a: f64,
        b: f64,
    },
    Trig(TrigSeries),
}

/// A point on a curve together with its derivatives and unit normal
/// `ν = (x2', -x1') / |x'|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveSample {
    pub x: Point2,
    pub dx: Point2,
    pub ddx: Point2,
    pub jac: f64,
    pub nu: Point2,
}

/// A validated closed curve: `|x'(t)| > 0` and counterclockwise orientation.
#[derive(Debug, Clone, PartialEq)]
pub struct ParametricCurve {
    kind: CurveKind,
}

impl ParametricCurve {
    pub fn new(kind: CurveKind) -> Result<Self> {
        let shape_ok = match &kind {
            CurveKind::Circle { r } => r.is_finite() && *r > 0.0,
            CurveKind::Ellipse { a, b } => a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0,
            CurveKind::Trig(s) => [s.x1_const, s.x2_const]
                .iter()
                .chain(&s.x1_cos)
                .chain(&s.x1_sin)
                .chain(&s.x2_cos)
                .chain(&s.x2_sin)
                .all(|c| c.is_finite()),
        };
        if !shape_ok {
            return Err(Error::domain(format!("invalid curve parameters: {kind:?}")));
        }
        let curve = Self { kind };
        let mut min_jac = f64::INFINITY;
        for k in 0..VALIDATION_SAMPLES {
            let t = TAU * k as f64 / VALIDATION_SAMPLES as f64;
            let dx = curve.derivatives(t).1;
            min_jac = min_jac.min(dx.norm());
        }
        if !(min_jac > 0.0) {
            return Err(Error::domain("curve parametrization has |x'(t)| = 0"));
        }
        let area = curve.signed_area();
        if !(area > 0.0) {
            return Err(Error::domain(format!(
                "curve must be traversed counterclockwise (signed area {area:e})"
            )));
        }
        Ok(curve)
    }

    pub fn circle(r: f64) -> Result<Self> {
        Self::new(CurveKind::Circle { r })
    }

    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::new(CurveKind::Ellipse { a, b })
    }

    pub fn trig(series: TrigSeries) -> Result<Self> {
        Self::new(CurveKind::Trig(series))
    }

    pub fn kind(&self) -> &CurveKind {
        &self.kind
    }

    fn derivatives(&self, t: f64) -> (Point2, Point2, Point2) {
        match &self.kind {
            CurveKind::Circle { r } => {
                let (s, c) = t.sin_cos();
                (
                    Point2::new(r * c, r * s),
                    Point2::new(-r * s, r * c),
                    Point2::new(-r * c, -r * s),
                )
            }
            CurveKind::Ellipse { a, b } => {
                let (s, c) = t.sin_cos();
                (
                    Point2::new(a * c, b * s),
                    Point2::new(-a * s, b * c),
                    Point2::new(-a * c, -b * s),
                )
            }
            CurveKind::Trig(ser) => {
                let (v1, d1, dd1) = series_eval(ser.x1_const, &ser.x1_cos, &ser.x1_sin, t);
                let (v2, d2, dd2) = series_eval(ser.x2_const, &ser.x2_cos, &ser.x2_sin, t);
                (
                    Point2::new(v1, v2),
                    Point2::new(d1, d2),
                    Point2::new(dd1, dd2),
                )
            }
        }
    }

    pub fn point(&self, t: f64) -> Point2 {
        self.derivatives(t).0
    }

    pub fn sample(&self, t: f64) -> CurveSample {
        let (x, dx, ddx) = self.derivatives(t);
        let jac = dx.norm();
        let nu = Point2::new(dx.x2 / jac, -dx.x1 / jac);
        CurveSample {
            x,
            dx,
            ddx,
            jac,
            nu,
        }
    }

    /// `x(t) - x(τ)` without the cancellation of a direct subtraction, so the
    /// result keeps full relative accuracy as `τ → t`.
    pub fn chord(&self, t: f64, tau: f64) -> Point2 {
        let sp = (0.5 * (t + tau)).sin();
        let cp = (0.5 * (t + tau)).cos();
        let sm = (0.5 * (t - tau)).sin();
        match &self.kind {
            CurveKind::Circle { r } => Point2::new(-2.0 * r * sp * sm, 2.0 * r * cp * sm),
            CurveKind::Ellipse { a, b } => Point2::new(-2.0 * a * sp * sm, 2.0 * b * cp * sm),
            CurveKind::Trig(ser) => Point2::new(
                series_chord(&ser.x1_cos, &ser.x1_sin, t, tau),
                series_chord(&ser.x2_cos, &ser.x2_sin, t, tau),
            ),
        }
    }

    /// `(1/2) ∮ (x1 dx2 - x2 dx1)`, by the trapezoid rule (exact for these
    /// trigonometric parametrizations once the sample count exceeds twice
    /// the highest harmonic).
    pub fn signed_area(&self) -> f64 {
        let n = VALIDATION_SAMPLES;
        let sum: f64 = (0..n)
            .map(|k| {
                let (x, dx, _) = self.derivatives(TAU * k as f64 / n as f64);
                x.x1 * dx.x2 - x.x2 * dx.x1
            })
            .sum();
        0.5 * sum * TAU / n as f64
    }

    /// Parameter of the curve point nearest to `p`, with the distance.
    pub fn nearest(&self, p: Point2) -> (f64, f64) {
        let n = 1024;
        let mut best = (0.0, f64::INFINITY);
        for k in 0..n {
            let t = TAU * k as f64 / n as f64;
            let d = (self.point(t) - p).norm();
            if d < best.1 {
                best = (t, d);
            }
        }
        // Newton on g(t) = (x(t) - p)·x'(t), kept inside the bracketing cell.
        let h = TAU / n as f64;
        let (lo, hi) = (best.0 - h, best.0 + h);
        let mut t = best.0;
        for _ in 0..30 {
            let (x, dx, ddx) = self.derivatives(t);
            let r = x - p;
            let g = r.dot(dx);
            let dg = dx.dot(dx) + r.dot(ddx);
            if dg <= 0.0 {
                break;
            }
            let next = (t - g / dg).clamp(lo, hi);
            let done = (next - t).abs() < 1e-15;
            t = next;
            if done {
                break;
            }
        }
        let d = (self.point(t) - p).norm();
        if d < best.1 {
            (t.rem_euclid(TAU), d)
        } else {
            best
        }
    }

    pub fn distance_to(&self, p: Point2) -> f64 {
        self.nearest(p).1
    }

    /// Whether `p` lies in the bounded region enclosed by the curve. Points on
    /// the curve count as outside.
    pub fn encloses(&self, p: Point2) -> bool {
        let (t, d) = self.nearest(p);
        if d == 0.0 {
            return false;
        }
        let s = self.sample(t);
        (p - s.x).dot(s.nu) < 0.0
    }
}

/// The `2M` equidistant parameter nodes `t_j = jπ/M`.
pub fn nodes(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::domain("number of nodes M must be at least 1"));
    }
    Ok((0..2 * m).map(|j| j as f64 * PI / m as f64).collect())
}

/// `(x2' x1'' - x1' x2'') / (2 |x'|³)`, the diagonal value of the
/// normal-derivative kernel.
pub fn curvature_term(s: &CurveSample) -> f64 {
    (s.dx.x2 * s.ddx.x1 - s.dx.x1 * s.ddx.x2) / (2.0 * s.jac.powi(3))
}
