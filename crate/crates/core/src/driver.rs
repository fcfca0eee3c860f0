//! Time loop for catalog cases, convergence studies and error metrics.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::cases::{reference_solution, CaseSpec};
use crate::error::SolverError;
use crate::integrator::{SchemeConfig, Solver, SolverStats, Variant};
use crate::mesh::{CellField, Grid};
use crate::physics::Physics;

/// How the step size is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeStep {
    /// Adaptive step from the CFL number; the last step is clipped onto `t_end`.
    Cfl(f64),
    /// Fixed step `k * dx^2` (smallest spacing), shrunk so that it divides `t_end`.
    DxSquared(f64),
}

#[derive(Clone, Copy, Debug)]
pub struct RunSettings {
    pub scheme: SchemeConfig,
    pub t_end: f64,
    pub time_step: TimeStep,
    pub snapshot_every: Option<usize>,
}

impl RunSettings {
    pub fn for_case(case: &CaseSpec, variant: Variant) -> Self {
        Self { scheme: SchemeConfig::new(variant), t_end: case.t_end, time_step: case.time_step, snapshot_every: None }
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub physics: Physics,
    pub grid: Grid,
    /// Conservative cell averages at `time`.
    pub field: CellField,
    pub time: f64,
    pub steps: usize,
    /// Cells where the selection overrode the linear scheme, counted from the second
    /// step on.
    pub triggered_after_first_step: u64,
    /// Face states replaced by cell averages, over the whole run.
    pub fallback_faces: u64,
    /// Faces blended towards the low-order flux by the positivity limiter, over the
    /// whole run.
    pub limited_faces: u64,
    pub initial_totals: Vec<f64>,
    pub final_totals: Vec<f64>,
    /// Change of the totals explained by boundary fluxes and sources.
    pub external_change: Vec<f64>,
    /// Per component, the larger of the initial and final `sum |Q| dV`.
    pub magnitude: Vec<f64>,
    pub wall_time: Duration,
}

impl RunOutcome {
    /// Unexplained change of each conserved total, relative to its magnitude.
    pub fn conservation_drift(&self) -> Vec<f64> {
        (0..self.initial_totals.len())
            .map(|c| {
                let lost = self.final_totals[c] - self.initial_totals[c] - self.external_change[c];
                if self.magnitude[c] > 0.0 {
                    lost.abs() / self.magnitude[c]
                } else {
                    lost.abs()
                }
            })
            .collect()
    }

    pub fn primitive_field(&self) -> Result<CellField, SolverError> {
        to_primitive(&self.field, &self.physics)
    }
}

pub fn to_primitive(field: &CellField, physics: &Physics) -> Result<CellField, SolverError> {
    let mut out = field.clone();
    let mut cons = vec![0.0; field.n_comp()];
    let mut prim = vec![0.0; field.n_comp()];
    let indices: Vec<_> = field.interior_indices().collect();
    for (i, j) in indices {
        field.cell(i, j, &mut cons);
        physics.cons_to_prim(&cons, &mut prim).map_err(|source| SolverError::InvalidState {
            location: crate::Location::Cell { i, j },
            time: f64::NAN,
            source,
        })?;
        out.set_cell(i, j, &prim);
    }
    Ok(out)
}

fn abs_totals(field: &CellField, grid: &Grid) -> Vec<f64> {
    let vol = grid.cell_volume();
    (0..field.n_comp())
        .map(|c| field.interior_indices().map(|(i, j)| field.get(c, i, j).abs()).sum::<f64>() * vol)
        .collect()
}

/// Runs `case` on `grid` from its initial condition to `settings.t_end`. `snapshot` is
/// called with the step number, time and conservative field every
/// `settings.snapshot_every` steps.
pub fn simulate(
    case: &CaseSpec,
    grid: &Grid,
    settings: &RunSettings,
    mut snapshot: impl FnMut(usize, f64, &CellField) -> Result<(), SolverError>,
) -> Result<RunOutcome, SolverError> {
    if !(settings.t_end > 0.0 && settings.t_end.is_finite()) {
        return Err(SolverError::Config(format!("end time must be positive, got {}", settings.t_end)));
    }
    let mut scheme = settings.scheme;
    if let TimeStep::Cfl(cfl) = settings.time_step {
        scheme.cfl = cfl;
    }
    let mut solver = Solver::new(case.physics, *grid, case.bcs.clone(), scheme, case.source.clone())?;
    let mut q = case.initial_field(grid)?;
    let initial_totals = solver.totals(&q);
    let initial_abs = abs_totals(&q, grid);
    let start = Instant::now();
    let t_end = settings.t_end;
    let mut t = 0.0;
    let mut steps = 0usize;
    let mut first_step = SolverStats::default();
    let fixed = match settings.time_step {
        TimeStep::DxSquared(k) => {
            if !(k > 0.0) {
                return Err(SolverError::Config(format!("time-step coefficient must be positive, got {k}")));
            }
            let h = grid.y().map_or(grid.x().dx, |y| y.dx.min(grid.x().dx));
            let n = (t_end / (k * h * h)).ceil().max(1.0) as usize;
            Some((n, t_end / n as f64))
        }
        TimeStep::Cfl(_) => None,
    };
    loop {
        let dt = match fixed {
            Some((n, _)) if steps == n => break,
            Some((n, dt)) => {
                if steps + 1 == n {
                    t_end - t
                } else {
                    dt
                }
            }
            None => {
                if t >= t_end {
                    break;
                }
                let dt = solver.compute_dt(&q, t)?;
                if t + dt >= t_end || t_end - (t + dt) < 1e-12 * t_end {
                    t_end - t
                } else {
                    dt
                }
            }
        };
        solver.step(&mut q, t, dt)?;
        steps += 1;
        t = match fixed {
            Some((n, dt)) if steps < n => steps as f64 * dt,
            _ if t + dt >= t_end => t_end,
            _ => t + dt,
        };
        if steps == 1 {
            first_step = solver.stats();
            solver.reset_stats();
        }
        if let Some(k) = settings.snapshot_every {
            if k > 0 && steps.is_multiple_of(k) {
                snapshot(steps, t, &q)?;
            }
        }
    }
    let final_totals = solver.totals(&q);
    let final_abs = abs_totals(&q, grid);
    Ok(RunOutcome {
        physics: case.physics,
        grid: *grid,
        triggered_after_first_step: solver.stats().triggered_cells,
        fallback_faces: first_step.fallback_faces + solver.stats().fallback_faces,
        limited_faces: first_step.limited_faces + solver.stats().limited_faces,
        initial_totals,
        final_totals,
        external_change: solver.external_change().to_vec(),
        magnitude: initial_abs.iter().zip(&final_abs).map(|(a, b)| a.max(*b)).collect(),
        field: q,
        time: t,
        steps,
        wall_time: start.elapsed(),
    })
}

/// Which norm an error metric uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Norm {
    L1,
    L2,
    Max,
}

/// Cell-averaged norm of the difference in component `c` between two primitive fields.
pub fn field_error(a: &CellField, b: &CellField, c: usize, norm: Norm) -> f64 {
    let diffs = a.interior_indices().map(|(i, j)| (a.get(c, i, j) - b.get(c, i, j)).abs());
    let n = (a.nx() * a.ny()) as f64;
    match norm {
        Norm::L1 => diffs.sum::<f64>() / n,
        Norm::L2 => (diffs.map(|d| d * d).sum::<f64>() / n).sqrt(),
        Norm::Max => diffs.fold(0.0, f64::max),
    }
}

/// Error of the density (or scalar) of `run` against the case reference at the run's
/// final time.
pub fn error_vs_reference(case: &CaseSpec, run: &RunOutcome, norm: Norm) -> Result<f64, SolverError> {
    let reference = reference_solution(case, &run.grid, run.time)?;
    Ok(field_error(&run.primitive_field()?, &reference, 0, norm))
}

/// Number of strict local extrema of component `c` along row `j`.
pub fn extrema_count(field: &CellField, c: usize, j: isize) -> usize {
    field.interior_row(c, j).windows(3).filter(|w| (w[1] - w[0]) * (w[2] - w[1]) < 0.0).count()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergencePoint {
    pub n: usize,
    pub l1_error: f64,
    pub triggered_after_first_step: u64,
    pub steps: usize,
}

/// Runs `variant` on `n` (or `n x n`) cells for each size and measures the L1 density
/// error against the analytic reference.
pub fn convergence_study(
    case: &CaseSpec,
    variant: Variant,
    sizes: &[usize],
    time_step: TimeStep,
) -> Result<Vec<ConvergencePoint>, SolverError> {
    sizes
        .iter()
        .map(|&n| {
            let grid = case.grid(n, case.is_2d().then_some(n))?;
            let settings = RunSettings { time_step, ..RunSettings::for_case(case, variant) };
            let run = simulate(case, &grid, &settings, |_, _, _| Ok(()))?;
            Ok(ConvergencePoint {
                n,
                l1_error: error_vs_reference(case, &run, Norm::L1)?,
                triggered_after_first_step: run.triggered_after_first_step,
                steps: run.steps,
            })
        })
        .collect()
}

/// Observed orders between consecutive sizes: `log(e_a / e_b) / log(n_b / n_a)`,
/// which is `log2(e_N / e_2N)` for doubling.
pub fn observed_orders(points: &[ConvergencePoint]) -> Vec<f64> {
    points
        .windows(2)
        .map(|w| (w[0].l1_error / w[1].l1_error).ln() / (w[1].n as f64 / w[0].n as f64).ln())
        .collect()
}
