#![allow(dead_code)]

use robin_bie::geometry::{ParametricCurve, Point2, TrigSeries};
use robin_bie::kernels::PhysicsParams;
use robin_bie::solver::{ProblemSpec, RobinData};

pub const EXAMPLE_1A_PROBES: [Point2; 4] = [
    Point2::new(0.0, 0.5),
    Point2::new(1.0, 0.0),
    Point2::new(-0.5, 0.4),
    Point2::new(-0.5, -0.2),
];

pub const EXAMPLE_1B_PROBES: [Point2; 4] = [
    Point2::new(1.0, 1.0),
    Point2::new(-1.0, 0.7),
    Point2::new(0.0, -1.5),
    Point2::new(1.8, -0.3),
];

pub const EXAMPLE_2_PROBES: [Point2; 4] = [
    Point2::new(0.0, 0.4),
    Point2::new(1.0, 0.0),
    Point2::new(-0.5, 0.4),
    Point2::new(-0.6, -0.4),
];

pub fn unit_physics() -> PhysicsParams {
    PhysicsParams::new(1.0, 1.0, 1.0).unwrap()
}

pub fn example_1a_inner() -> ParametricCurve {
    ParametricCurve::trig(TrigSeries {
        x1_cos: vec![0.5],
        x2_const: -0.15,
        x2_sin: vec![0.4],
        x2_cos: vec![0.0, 0.15],
        ..TrigSeries::default()
    })
    .unwrap()
}

pub fn example_1a(data: RobinData) -> ProblemSpec {
    ProblemSpec::new(
        unit_physics(),
        ParametricCurve::ellipse(1.3, 1.0).unwrap(),
        example_1a_inner(),
        data,
    )
    .unwrap()
}

pub fn example_1b(data: RobinData) -> ProblemSpec {
    ProblemSpec::new(
        unit_physics(),
        ParametricCurve::circle(2.0).unwrap(),
        ParametricCurve::circle(0.5).unwrap(),
        data,
    )
    .unwrap()
}

pub fn source(x1: f64, x2: f64) -> RobinData {
    RobinData::Fundamental {
        y_star: Point2::new(x1, x2),
    }
}
