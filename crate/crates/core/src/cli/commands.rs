//! The `solve`, `convergence` and `field` subcommands.

use std::path::Path;

use rayon::prelude::*;

use super::config::{check_m, GridSpec, RunConfig};
use super::output::{fmt_f64, fmt_opt, write_atomic, CsvTable, PendingFile};
use crate::error::{Error, Result};
use crate::field::{fundamental_solution, FieldEvaluator};
use crate::geometry::Point2;
use crate::kernels::Boundary;
use crate::solver::{solve_problem, DensitySolution, ProblemSpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeValue {
    pub x: Point2,
    pub u: f64,
    /// `|u - Φ(x, y*)|` when the data comes from a known exact solution.
    pub abs_error: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub solution: DensitySolution,
    pub probes: Vec<ProbeValue>,
}

fn checked_probes(config: &RunConfig, problem: &ProblemSpec) -> Result<Vec<Point2>> {
    let probes = config.probe_points()?;
    for p in &probes {
        if !problem.contains(*p) {
            return Err(Error::Config(format!(
                "probe point ({}, {}) is not strictly inside the domain",
                p.x1, p.x2
            )));
        }
    }
    Ok(probes)
}

fn exact_value(problem: &ProblemSpec, x: Point2) -> Result<Option<f64>> {
    match problem.data().source_point() {
        Some(y) => Ok(Some(fundamental_solution(x, y, problem.physics().kappa())?)),
        None => Ok(None),
    }
}

fn probe_values(
    config: &RunConfig,
    sol: &DensitySolution,
    probes: &[Point2],
) -> Result<Vec<ProbeValue>> {
    let eval = FieldEvaluator::new(sol, config.interior_rule());
    probes
        .iter()
        .map(|&x| {
            let u = eval.eval(x)?;
            let abs_error = exact_value(&sol.problem, x)?.map(|e| (u - e).abs());
            Ok(ProbeValue { x, u, abs_error })
        })
        .collect()
}

/// Solves at a single `M`, evaluating the configured probes.
pub fn run_solve(config: &RunConfig) -> Result<SolveOutcome> {
    let problem = config.problem()?;
    let m = config.single_m()?;
    let probes = checked_probes(config, &problem)?;
    let solution = solve_problem(&problem, m)?;
    let probes = probe_values(config, &solution, &probes)?;
    Ok(SolveOutcome { solution, probes })
}

pub fn densities_table(sol: &DensitySolution) -> CsvTable {
    let mut t = CsvTable::new(&["curve", "j", "t_j", "psi"]);
    let nodes = sol.nodes();
    for i in Boundary::BOTH {
        for (j, (tj, psi)) in nodes.iter().zip(sol.psi(i)).enumerate() {
            t.push(vec![
                i.label().to_string(),
                j.to_string(),
                fmt_f64(*tj),
                fmt_f64(*psi),
            ]);
        }
    }
    t
}

pub fn probes_table(probes: &[ProbeValue]) -> CsvTable {
    let exact = probes.iter().any(|p| p.abs_error.is_some());
    let mut t = if exact {
        CsvTable::new(&["x1", "x2", "u", "abs_error"])
    } else {
        CsvTable::new(&["x1", "x2", "u"])
    };
    for p in probes {
        let mut row = vec![fmt_f64(p.x.x1), fmt_f64(p.x.x2), fmt_f64(p.u)];
        if exact {
            row.push(fmt_opt(p.abs_error));
        }
        t.push(row);
    }
    t
}

/// Writes `densities.csv` and `probes.csv` into `out_dir`. Nothing is
/// written unless the solve succeeds.
pub fn cmd_solve(config: &RunConfig, out_dir: &Path) -> Result<SolveOutcome> {
    let outcome = run_solve(config)?;
    let densities = densities_table(&outcome.solution).to_bytes()?;
    let probes = probes_table(&outcome.probes).to_bytes()?;
    std::fs::create_dir_all(out_dir)?;
    let a = PendingFile::stage(&out_dir.join("densities.csv"), &densities)?;
    let b = PendingFile::stage(&out_dir.join("probes.csv"), &probes)?;
    a.commit()?;
    b.commit()?;
    Ok(outcome)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    /// 1-based index into the probe list.
    pub probe: usize,
    pub x: Point2,
    pub u: f64,
    pub abs_error: Option<f64>,
    /// `|u_M - u_prev|` for the same probe at the previous `M` of the list.
    pub successive_diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceReport {
    pub fn table(&self) -> CsvTable {
        let mut t = CsvTable::new(&[
            "m",
            "probe",
            "x1",
            "x2",
            "u",
            "abs_error",
            "successive_diff",
        ]);
        for r in &self.rows {
            t.push(vec![
                r.m.to_string(),
                format!("P{}", r.probe),
                fmt_f64(r.x.x1),
                fmt_f64(r.x.x2),
                fmt_f64(r.u),
                fmt_opt(r.abs_error),
                fmt_opt(r.successive_diff),
            ]);
        }
        t
    }

    pub fn rows_for(&self, m: usize) -> impl Iterator<Item = &ConvergenceRow> {
        self.rows.iter().filter(move |r| r.m == m)
    }

    /// Largest error over the probes at the given `M`.
    pub fn max_error(&self, m: usize) -> Option<f64> {
        self.rows_for(m)
            .filter_map(|r| r.abs_error)
            .reduce(f64::max)
    }
}

fn check_m_list(list: &[usize]) -> Result<()> {
    if list.is_empty() {
        return Err(Error::Config("M-list must not be empty".into()));
    }
    for &m in list {
        check_m(m)?;
    }
    if list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(format!(
            "M-list must be strictly ascending: {list:?}"
        )));
    }
    Ok(())
}

/// Solves for every `M` in `m_list` (the config's list when `None`).
pub fn run_convergence(config: &RunConfig, m_list: Option<&[usize]>) -> Result<ConvergenceReport> {
    let list = m_list.unwrap_or(&config.m_list);
    check_m_list(list)?;
    let problem = config.problem()?;
    let probes = checked_probes(config, &problem)?;
    if probes.is_empty() {
        return Err(Error::Config(
            "convergence study needs at least one probe point".into(),
        ));
    }
    let mut rows = Vec::with_capacity(list.len() * probes.len());
    let mut previous: Option<Vec<f64>> = None;
    for &m in list {
        let sol = solve_problem(&problem, m)?;
        let values = probe_values(config, &sol, &probes)?;
        for (k, v) in values.iter().enumerate() {
            rows.push(ConvergenceRow {
                m,
                probe: k + 1,
                x: v.x,
                u: v.u,
                abs_error: v.abs_error,
                successive_diff: previous.as_ref().map(|p| (v.u - p[k]).abs()),
            });
        }
        previous = Some(values.iter().map(|v| v.u).collect());
    }
    Ok(ConvergenceReport { rows })
}

pub fn cmd_convergence(
    config: &RunConfig,
    m_list: Option<&[usize]>,
    out: &Path,
) -> Result<ConvergenceReport> {
    let report = run_convergence(config, m_list)?;
    write_atomic(out, &report.table())?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldPoint {
    pub x: Point2,
    /// `None` outside the domain.
    pub u: Option<f64>,
}

/// Config grid with optional command-line overrides of its size or box.
pub fn resolve_grid(
    config: &RunConfig,
    size: Option<(usize, usize)>,
    bbox: Option<[f64; 4]>,
) -> Result<GridSpec> {
    let base = config.grid;
    let bbox = bbox
        .or(base.map(|g| g.bbox))
        .ok_or_else(|| Error::Config("no grid bounding box in config or arguments".into()))?;
    let (nx, ny) = size
        .or(base.map(|g| (g.nx, g.ny)))
        .ok_or_else(|| Error::Config("no grid size in config or arguments".into()))?;
    let grid = GridSpec { bbox, nx, ny };
    grid.validate()?;
    Ok(grid)
}

pub fn run_field(config: &RunConfig, grid: &GridSpec) -> Result<Vec<FieldPoint>> {
    grid.validate()?;
    let problem = config.problem()?;
    let m = config.single_m()?;
    let sol = solve_problem(&problem, m)?;
    let eval = FieldEvaluator::new(&sol, config.interior_rule());
    Ok(grid
        .points()
        .into_par_iter()
        .map(|x| FieldPoint {
            x,
            u: problem.contains(x).then(|| eval.eval_unchecked(x)),
        })
        .collect())
}

pub fn field_table(points: &[FieldPoint]) -> CsvTable {
    let mut t = CsvTable::new(&["x1", "x2", "u"]);
    for p in points {
        t.push(vec![fmt_f64(p.x.x1), fmt_f64(p.x.x2), fmt_opt(p.u)]);
    }
    t
}

pub fn cmd_field(config: &RunConfig, grid: &GridSpec, out: &Path) -> Result<Vec<FieldPoint>> {
    let points = run_field(config, grid)?;
    write_atomic(out, &field_table(&points))?;
    Ok(points)
}
