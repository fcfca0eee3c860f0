use std::path::PathBuf;

use hocus::driver::{observed_orders, ConvergencePoint, RunOutcome, TimeStep};
use serde::{Deserialize, Serialize};

use crate::config::ResolvedRun;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub case: String,
    pub scheme: String,
    pub riemann: String,
    pub nx: usize,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub time_step: TimeStep,
    pub t_end: f64,
    pub steps: usize,
    pub wall_time_s: f64,
    /// Per conserved component, the unexplained change of the total relative to its
    /// magnitude.
    pub conservation_drift: Vec<f64>,
    pub triggered_after_first_step: u64,
    pub fallback_faces: u64,
    pub limited_faces: u64,
    pub outputs: Vec<PathBuf>,
}

impl RunReport {
    pub fn new(run: &ResolvedRun, outcome: &RunOutcome, outputs: Vec<PathBuf>) -> Self {
        let scheme = &run.settings.scheme;
        Self {
            case: run.case.name.to_string(),
            scheme: scheme.variant.name().to_string(),
            riemann: scheme.riemann.to_string(),
            nx: run.grid.nx(),
            ny: run.grid.y().map(|g| g.n_cells),
            cfl: match run.settings.time_step {
                TimeStep::Cfl(c) => Some(c),
                TimeStep::DxSquared(_) => None,
            },
            time_step: run.settings.time_step,
            t_end: outcome.time,
            steps: outcome.steps,
            wall_time_s: outcome.wall_time.as_secs_f64(),
            conservation_drift: outcome.conservation_drift(),
            triggered_after_first_step: outcome.triggered_after_first_step,
            fallback_faces: outcome.fallback_faces,
            limited_faces: outcome.limited_faces,
            outputs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub case: String,
    pub scheme: String,
    pub time_step: TimeStep,
    pub sizes: Vec<usize>,
    pub l1_errors: Vec<f64>,
    /// `orders[k]` is measured between `sizes[k]` and `sizes[k + 1]`.
    pub orders: Vec<f64>,
    pub triggered_after_first_step: Vec<u64>,
    pub steps: Vec<usize>,
}

impl ConvergenceReport {
    pub fn new(case: &str, scheme: &str, time_step: TimeStep, points: &[ConvergencePoint]) -> Self {
        Self {
            case: case.to_string(),
            scheme: scheme.to_string(),
            time_step,
            sizes: points.iter().map(|p| p.n).collect(),
            l1_errors: points.iter().map(|p| p.l1_error).collect(),
            orders: observed_orders(points),
            triggered_after_first_step: points.iter().map(|p| p.triggered_after_first_step).collect(),
            steps: points.iter().map(|p| p.steps).collect(),
        }
    }
}
