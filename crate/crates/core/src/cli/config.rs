//! JSON run configuration and the bundled presets.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::InteriorRule;
use crate::geometry::{CurveKind, ParametricCurve, Point2};
use crate::kernels::PhysicsParams;
use crate::solver::{ProblemSpec, RobinData};

const PRESETS: [(&str, &str); 3] = [
    ("example1a", include_str!("../../presets/example1a.json")),
    ("example1b", include_str!("../../presets/example1b.json")),
    ("example2", include_str!("../../presets/example2.json")),
];

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|(name, _)| *name)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhysicsConfig {
    pub kappa: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DataConfig {
    Fundamental { y_star: [f64; 2] },
    PolynomialExample2,
    Nodal { f1: Vec<f64>, f2: Vec<f64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// `[x0, y0, x1, y1]`
    pub bbox: [f64; 4],
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        let [x0, y0, x1, y1] = self.bbox;
        if !self.bbox.iter().all(|v| v.is_finite()) || x1 < x0 || y1 < y0 {
            return Err(Error::Config(format!(
                "invalid bounding box {:?}",
                self.bbox
            )));
        }
        if self.nx == 0 || self.ny == 0 {
            return Err(Error::Config("grid needs nx, ny >= 1".into()));
        }
        Ok(())
    }

    /// Grid points, `x1` varying fastest. A single point along an axis sits
    /// at the lower bound.
    pub fn points(&self) -> Vec<Point2> {
        let [x0, y0, x1, y1] = self.bbox;
        let coord = |lo: f64, hi: f64, k: usize, n: usize| {
            if n == 1 {
                lo
            } else {
                lo + (hi - lo) * k as f64 / (n - 1) as f64
            }
        };
        (0..self.ny)
            .flat_map(|j| {
                (0..self.nx)
                    .map(move |i| Point2::new(coord(x0, x1, i, self.nx), coord(y0, y1, j, self.ny)))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub physics: PhysicsConfig,
    pub gamma1: CurveKind,
    pub gamma2: CurveKind,
    pub data: DataConfig,
    #[serde(default)]
    pub m: Option<usize>,
    #[serde(default)]
    pub m_list: Vec<usize>,
    #[serde(default)]
    pub probes: Vec<[f64; 2]>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    /// Resample densities to this many nodes per curve for interior evaluation.
    #[serde(default)]
    pub interior_nodes: Option<usize>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid config: {e}")))
    }

    /// Loads a preset by name, or else reads a JSON file at `source`.
    pub fn load(source: &str) -> Result<Self> {
        if let Some((_, text)) = PRESETS.iter().find(|(name, _)| *name == source) {
            return Self::from_json(text);
        }
        let text = std::fs::read_to_string(Path::new(source)).map_err(|e| {
            let presets: Vec<_> = preset_names().collect();
            Error::Config(format!(
                "cannot read config '{source}': {e} (presets: {})",
                presets.join(", ")
            ))
        })?;
        Self::from_json(&text)
    }

    pub fn problem(&self) -> Result<ProblemSpec> {
        let physics = PhysicsParams::new(
            self.physics.kappa,
            self.physics.lambda1,
            self.physics.lambda2,
        )?;
        let data = match &self.data {
            DataConfig::Fundamental { y_star } => RobinData::Fundamental {
                y_star: Point2::new(y_star[0], y_star[1]),
            },
            DataConfig::PolynomialExample2 => RobinData::PolynomialExample2,
            DataConfig::Nodal { f1, f2 } => RobinData::Nodal {
                f1: f1.clone(),
                f2: f2.clone(),
            },
        };
        ProblemSpec::new(
            physics,
            ParametricCurve::new(self.gamma1.clone())?,
            ParametricCurve::new(self.gamma2.clone())?,
            data,
        )
    }

    pub fn probe_points(&self) -> Result<Vec<Point2>> {
        self.probes
            .iter()
            .map(|&[a, b]| {
                let p = Point2::new(a, b);
                if p.is_finite() {
                    Ok(p)
                } else {
                    Err(Error::Config(format!(
                        "probe point ({a}, {b}) is not finite"
                    )))
                }
            })
            .collect()
    }

    /// `m` if given, else the largest entry of `m_list`.
    pub fn single_m(&self) -> Result<usize> {
        let m = self
            .m
            .or_else(|| self.m_list.iter().copied().max())
            .ok_or_else(|| Error::Config("config needs 'm' or 'm_list'".into()))?;
        check_m(m)?;
        Ok(m)
    }

    pub fn interior_rule(&self) -> InteriorRule {
        self.interior_nodes
            .map_or(InteriorRule::Nodal, InteriorRule::Resampled)
    }
}

pub fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::Config(format!("M must be at least 2, got {m}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_parse_and_validate() {
        for name in preset_names() {
            let cfg = RunConfig::load(name).unwrap();
            cfg.problem().unwrap();
            assert_eq!(cfg.probe_points().unwrap().len(), 4);
            cfg.grid.unwrap().validate().unwrap();
        }
    }

    #[test]
    fn inner_curve_encoding() {
        let cfg = RunConfig::load("example1a").unwrap();
        let curve = ParametricCurve::new(cfg.gamma2).unwrap();
        for t in [0.0, 0.9, 2.2, 4.7] {
            let p = curve.point(t);
            assert!((p.x2 - (0.4 * t.sin() - 0.3 * t.sin().powi(2))).abs() < 1e-15);
        }
    }

    #[test]
    fn malformed_configs() {
        assert!(matches!(RunConfig::from_json("{"), Err(Error::Config(_))));
        let missing_data = r#"{"physics":{"kappa":1,"lambda1":1,"lambda2":1},
            "gamma1":{"kind":"circle","r":2},"gamma2":{"kind":"circle","r":0.5}}"#;
        assert!(RunConfig::from_json(missing_data).is_err());
        assert!(RunConfig::load("/nonexistent/config.json").is_err());
    }

    #[test]
    fn single_m_fallbacks() {
        let mut cfg = RunConfig::load("example1a").unwrap();
        assert_eq!(cfg.single_m().unwrap(), 16);
        cfg.m = None;
        assert_eq!(cfg.single_m().unwrap(), 64);
        cfg.m_list.clear();
        assert!(cfg.single_m().is_err());
        cfg.m = Some(1);
        assert!(cfg.single_m().is_err());
    }

    #[test]
    fn grid_points_layout() {
        let g = GridSpec {
            bbox: [0.0, 0.0, 1.0, 2.0],
            nx: 3,
            ny: 2,
        };
        let pts = g.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[1], Point2::new(0.5, 0.0));
        assert_eq!(pts[5], Point2::new(1.0, 2.0));
        let single = GridSpec {
            bbox: [0.3, 0.4, 1.0, 1.0],
            nx: 1,
            ny: 1,
        };
        assert_eq!(single.points(), vec![Point2::new(0.3, 0.4)]);
    }
}
