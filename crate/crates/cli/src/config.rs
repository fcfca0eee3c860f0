use std::path::{Path, PathBuf};

use anyhow::Context;
use hocus::cases::{instantiate_case, CaseSpec};
use hocus::driver::{RunSettings, TimeStep};
use hocus::integrator::{RiemannSolver, SchemeConfig, Variant};
use hocus::mesh::Grid;
use hocus::SolverError;
use serde::{Deserialize, Serialize};

/// One run as read from a JSON file. Every field is optional so that command-line flags
/// can fill in or override it.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub case: Option<String>,
    pub scheme: Option<String>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub t_end: Option<f64>,
    pub riemann: Option<String>,
    pub alpha: Option<f64>,
    pub out: Option<PathBuf>,
    pub snapshot_every: Option<usize>,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    /// Fields set in `flags` win over those in `self`.
    pub fn overridden_by(self, flags: RunConfig) -> Self {
        Self {
            case: flags.case.or(self.case),
            scheme: flags.scheme.or(self.scheme),
            nx: flags.nx.or(self.nx),
            ny: flags.ny.or(self.ny),
            cfl: flags.cfl.or(self.cfl),
            t_end: flags.t_end.or(self.t_end),
            riemann: flags.riemann.or(self.riemann),
            alpha: flags.alpha.or(self.alpha),
            out: flags.out.or(self.out),
            snapshot_every: flags.snapshot_every.or(self.snapshot_every),
        }
    }

    pub fn resolve(&self) -> anyhow::Result<ResolvedRun> {
        let case_name = self.case.as_deref().ok_or_else(|| usage("no case given (use --case)"))?;
        let case = instantiate_case(case_name)?;
        let variant: Variant = self.scheme.as_deref().unwrap_or("HOCUS6").parse()?;
        let grid = grid_for(&case, self.nx, self.ny)?;

        let mut scheme = SchemeConfig::new(variant);
        if let Some(riemann) = &self.riemann {
            scheme.riemann = riemann.parse::<RiemannSolver>()?;
        }
        if let Some(alpha) = self.alpha {
            scheme.alpha = alpha;
        }
        let time_step = match self.cfl {
            Some(cfl) => TimeStep::Cfl(cfl),
            None => case.time_step,
        };
        if let TimeStep::Cfl(cfl) = time_step {
            scheme.cfl = cfl;
        }
        scheme.validate()?;
        if self.snapshot_every == Some(0) {
            return Err(usage("snapshot interval must be at least 1"));
        }
        let settings = RunSettings {
            scheme,
            t_end: self.t_end.unwrap_or(case.t_end),
            time_step,
            snapshot_every: self.snapshot_every,
        };
        let out = self
            .out
            .clone()
            .unwrap_or_else(|| PathBuf::from("hocus-out").join(format!("{}-{}", case.name, variant.name().to_ascii_lowercase())));
        Ok(ResolvedRun { case, grid, settings, out })
    }
}

/// A validated run: the case, its grid and everything the time loop needs.
#[derive(Debug)]
pub struct ResolvedRun {
    pub case: CaseSpec,
    pub grid: Grid,
    pub settings: RunSettings,
    pub out: PathBuf,
}

/// Grid for `case` with optional overrides. For two-dimensional cases a lone `nx` keeps
/// the default aspect ratio.
pub fn grid_for(case: &CaseSpec, nx: Option<usize>, ny: Option<usize>) -> Result<Grid, SolverError> {
    let nx_used = nx.unwrap_or(case.nx);
    let ny_used = match (case.ny, ny, nx) {
        (None, _, _) => None,
        (Some(_), Some(ny), _) => Some(ny),
        (Some(default), None, Some(nx)) => Some(((default * nx) as f64 / case.nx as f64).round().max(1.0) as usize),
        (Some(default), None, None) => Some(default),
    };
    case.grid(nx_used, ny_used)
}

/// Marks an error as a usage problem (exit code 2).
pub fn usage(message: impl Into<String>) -> anyhow::Error {
    SolverError::Config(message.into()).into()
}
