//! Configuration-driven front end: single solves, convergence studies and
//! field grids, all written as CSV.

pub mod commands;
pub mod config;
pub mod output;

pub use commands::{
    cmd_convergence, cmd_field, cmd_solve, resolve_grid, run_convergence, run_field, run_solve,
    ConvergenceReport, ConvergenceRow, FieldPoint, ProbeValue, SolveOutcome,
};
pub use config::{DataConfig, GridSpec, PhysicsConfig, RunConfig};
