//! Semi-discrete residual assembly, source terms and explicit time stepping.

mod line;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use line::{LineFailure, LineKernel};

use crate::bvd::{
    BvdKind, BvdPolicy, Needs, DEFAULT_HOCUS_ALPHA, DEFAULT_MP5_ALPHA, DEFAULT_SMOOTHNESS_THRESHOLD,
    DEFAULT_THINC_BETAS,
};
use crate::error::{Axis, Location, SolverError};
use crate::mesh::{fill_ghosts, BoundarySpec, CellField, Grid};
use crate::physics::Physics;
use crate::reconstruction::MusclParams;

/// Interface reconstruction used by the solver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Mp5,
    WenoZ,
    C5,
    C6,
    Hocus5,
    Hocus6,
    HocusTvd,
    C5T2,
    HocusWenoz,
    Hocus6Extra,
}

impl Variant {
    pub const ALL: [Variant; 10] = [
        Variant::Mp5,
        Variant::WenoZ,
        Variant::C5,
        Variant::C6,
        Variant::Hocus5,
        Variant::Hocus6,
        Variant::HocusTvd,
        Variant::C5T2,
        Variant::HocusWenoz,
        Variant::Hocus6Extra,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Mp5 => "MP5",
            Variant::WenoZ => "WENO_Z",
            Variant::C5 => "C5",
            Variant::C6 => "C6",
            Variant::Hocus5 => "HOCUS5",
            Variant::Hocus6 => "HOCUS6",
            Variant::HocusTvd => "HOCUS_TVD",
            Variant::C5T2 => "C5T2",
            Variant::HocusWenoz => "HOCUS_WENOZ",
            Variant::Hocus6Extra => "HOCUS6_EXTRA",
        }
    }

    pub fn bvd_kind(self) -> Option<BvdKind> {
        match self {
            Variant::Hocus5 => Some(BvdKind::Hocus5),
            Variant::Hocus6 => Some(BvdKind::Hocus6),
            Variant::HocusTvd => Some(BvdKind::HocusTvd),
            Variant::C5T2 => Some(BvdKind::C5T2),
            Variant::HocusWenoz => Some(BvdKind::HocusWenoz),
            Variant::Hocus6Extra => Some(BvdKind::Hocus6Extra),
            Variant::Mp5 | Variant::WenoZ | Variant::C5 | Variant::C6 => None,
        }
    }

    /// MP5 limiter constant: 7 inside hybrid schemes, 4 otherwise.
    pub fn default_alpha(self) -> f64 {
        if self.bvd_kind().is_some() {
            DEFAULT_HOCUS_ALPHA
        } else {
            DEFAULT_MP5_ALPHA
        }
    }

    pub fn needs(self) -> Needs {
        match self.bvd_kind() {
            Some(kind) => kind.needs(),
            None => match self {
                Variant::Mp5 => Needs { mp5: true, ..Needs::default() },
                Variant::WenoZ => Needs { weno_z: true, ..Needs::default() },
                Variant::C5 => Needs { c5: true, ..Needs::default() },
                _ => Needs { c5: true, c6: true, ..Needs::default() },
            },
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        let key = match key.as_str() {
            "WENOZ" => "WENO_Z",
            "HOCUSTVD" => "HOCUS_TVD",
            "HOCUS6EXTRA" => "HOCUS6_EXTRA",
            other => other,
        };
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == key)
            .ok_or_else(|| SolverError::UnknownScheme(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RiemannSolver {
    Hllc,
    Glf,
}

impl FromStr for RiemannSolver {
    type Err = SolverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HLLC" => Ok(RiemannSolver::Hllc),
            "GLF" | "LLF" | "LF" => Ok(RiemannSolver::Glf),
            _ => Err(SolverError::Config(format!("unknown Riemann solver `{s}`"))),
        }
    }
}

impl fmt::Display for RiemannSolver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RiemannSolver::Hllc => "HLLC",
            RiemannSolver::Glf => "GLF",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConfig {
    pub variant: Variant,
    pub riemann: RiemannSolver,
    /// MP5 limiter constant.
    pub alpha: f64,
    pub cfl: f64,
    /// Reconstruct the nonlinear candidates of Euler problems in characteristic variables.
    pub characteristic_projection: bool,
    pub muscl: MusclParams,
    pub thinc_betas: (f64, f64),
    pub smoothness_threshold: f64,
    /// Replace a non-physical reconstructed face state by the adjacent cell average
    /// instead of failing.
    pub face_fallback: bool,
    /// Blend fluxes with local Lax-Friedrichs where needed to keep density and pressure
    /// positive over each time step.
    pub positivity_limiter: bool,
}

impl SchemeConfig {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            riemann: RiemannSolver::Hllc,
            alpha: variant.default_alpha(),
            cfl: 0.2,
            characteristic_projection: true,
            muscl: MusclParams::default(),
            thinc_betas: DEFAULT_THINC_BETAS,
            smoothness_threshold: DEFAULT_SMOOTHNESS_THRESHOLD,
            face_fallback: true,
            positivity_limiter: true,
        }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(SolverError::Config(format!("cfl must lie in (0, 1), got {}", self.cfl)));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(SolverError::Config(format!("alpha must be positive, got {}", self.alpha)));
        }
        if !(self.thinc_betas.0 > 0.0 && self.thinc_betas.1 > 0.0) {
            return Err(SolverError::Config("THINC steepness must be positive".into()));
        }
        Ok(())
    }

    pub fn bvd_policy(&self) -> Option<BvdPolicy> {
        self.variant.bvd_kind().map(|kind| BvdPolicy {
            kind,
            alpha: self.alpha,
            thinc_betas: self.thinc_betas,
            smoothness_threshold: self.smoothness_threshold,
        })
    }
}

pub type SourceCallback = Arc<dyn Fn(&[f64], (f64, f64)) -> Vec<f64> + Send + Sync>;

/// Cell-wise source added to the residual, evaluated from conservative values.
#[derive(Clone)]
pub enum SourceTerm {
    /// Unit gravity along +y: adds `(0, 0, rho, rho v)`.
    Gravity,
    Custom(SourceCallback),
}

impl fmt::Debug for SourceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceTerm::Gravity => f.write_str("Gravity"),
            SourceTerm::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

impl SourceTerm {
    pub fn evaluate(&self, cons: &[f64], position: (f64, f64), out: &mut [f64]) {
        match self {
            SourceTerm::Gravity => {
                out.fill(0.0);
                out[2] = cons[0];
                out[3] = cons[2];
            }
            SourceTerm::Custom(f) => out.copy_from_slice(&f(cons, position)),
        }
    }
}

/// Time derivative of the cell averages plus the rate at which the domain totals
/// change through boundaries and sources.
#[derive(Clone, Debug)]
pub struct Residual {
    pub rates: CellField,
    /// Per component: boundary inflow plus integrated source, per unit time.
    pub external: Vec<f64>,
}

impl Residual {
    pub fn for_field(field: &CellField) -> Self {
        let (gx, gy) = field.ghosts();
        Self {
            rates: CellField::new(field.n_comp(), field.nx(), field.ny(), gx, gy),
            external: vec![0.0; field.n_comp()],
        }
    }

    fn clear(&mut self) {
        self.rates.data_mut().fill(0.0);
        self.external.fill(0.0);
    }
}

/// Adds the source to every interior cell of `residual`.
pub fn apply_source(residual: &mut Residual, field: &CellField, grid: &Grid, source: &SourceTerm) {
    let nc = field.n_comp();
    let vol = grid.cell_volume();
    let mut q = vec![0.0; nc];
    let mut s = vec![0.0; nc];
    for (i, j) in field.interior_indices() {
        field.cell(i, j, &mut q);
        source.evaluate(&q, grid.center(i, j), &mut s);
        for c in 0..nc {
            let k = residual.rates.index(c, i, j);
            residual.rates.data_mut()[k] += s[c];
            residual.external[c] += s[c] * vol;
        }
    }
}

/// Buffers for [`rk3_step`].
#[derive(Clone, Debug)]
pub struct Rk3Scratch {
    initial: Vec<f64>,
    residual: Residual,
    /// Change of the domain totals from boundaries and sources over the last step.
    pub external: Vec<f64>,
}

impl Rk3Scratch {
    pub fn for_field(field: &CellField) -> Self {
        Self {
            initial: field.data().to_vec(),
            residual: Residual::for_field(field),
            external: vec![0.0; field.n_comp()],
        }
    }
}

/// One step of the three-stage TVD Runge-Kutta scheme. Ghost cells of `q` are left
/// stale; `rhs` is expected to refill them.
pub fn rk3_step<E>(
    q: &mut CellField,
    t: f64,
    dt: f64,
    scratch: &mut Rk3Scratch,
    mut rhs: impl FnMut(&mut CellField, f64, &mut Residual) -> Result<(), E>,
) -> Result<(), E> {
    scratch.initial.clear();
    scratch.initial.extend_from_slice(q.data());
    scratch.external.fill(0.0);
    let stages = [(t, 0.0, 1.0, 1.0 / 6.0), (t + dt, 0.75, 0.25, 1.0 / 6.0), (t + 0.5 * dt, 1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0)];
    for (time, keep, blend, weight) in stages {
        rhs(q, time, &mut scratch.residual)?;
        let rates = scratch.residual.rates.data();
        for ((v, &v0), &r) in q.data_mut().iter_mut().zip(&scratch.initial).zip(rates) {
            *v = keep * v0 + blend * (*v + dt * r);
        }
        for (e, &x) in scratch.external.iter_mut().zip(&scratch.residual.external) {
            *e += weight * dt * x;
        }
    }
    Ok(())
}

/// Counters accumulated over residual evaluations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolverStats {
    pub rhs_evaluations: u64,
    /// Cells where the selection replaced the linear reconstruction, summed over lines.
    pub triggered_cells: u64,
    /// Face states replaced by cell averages because the reconstruction was non-physical.
    pub fallback_faces: u64,
    /// Faces where the positivity limiter blended in the low-order flux.
    pub limited_faces: u64,
}

/// Finite-volume solver bound to one grid, boundary set and scheme.
#[derive(Debug)]
pub struct Solver {
    physics: Physics,
    grid: Grid,
    bcs: BoundarySpec,
    config: SchemeConfig,
    source: Option<SourceTerm>,
    x_line: LineKernel,
    y_line: Option<LineKernel>,
    stats: SolverStats,
    rk: Option<Rk3Scratch>,
    external_change: Vec<f64>,
    /// Step size of the Runge-Kutta step in progress, used by the positivity limiter.
    stage_dt: Option<f64>,
}

impl Solver {
    pub fn new(
        physics: Physics,
        grid: Grid,
        bcs: BoundarySpec,
        config: SchemeConfig,
        source: Option<SourceTerm>,
    ) -> Result<Self, SolverError> {
        config.validate()?;
        bcs.validate(&grid, &physics)?;
        if grid.n_ghost() < 3 {
            return Err(SolverError::Config("the reconstructions need three ghost layers".into()));
        }
        if source.is_some() && !matches!(physics, Physics::Euler(_)) {
            return Err(SolverError::Config("source terms need Euler physics".into()));
        }
        let x_line = LineKernel::new(grid.nx(), grid.n_ghost(), physics, &config)?;
        let y_line = match grid.y() {
            Some(y) => Some(LineKernel::new(y.n_cells, grid.n_ghost(), physics, &config)?),
            None => None,
        };
        Ok(Self {
            physics,
            grid,
            bcs,
            config,
            source,
            x_line,
            y_line,
            stats: SolverStats::default(),
            rk: None,
            external_change: vec![0.0; physics.n_comp()],
            stage_dt: None,
        })
    }

    pub fn physics(&self) -> &Physics {
        &self.physics
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }

    pub fn stats(&self) -> SolverStats {
        self.stats
    }

    pub fn reset_stats(&mut self) {
        self.stats = SolverStats::default();
    }

    /// Accumulated change of the domain totals due to boundary fluxes and sources.
    pub fn external_change(&self) -> &[f64] {
        &self.external_change
    }

    pub fn new_field(&self) -> CellField {
        self.grid.new_field(self.physics.n_comp())
    }

    /// Domain totals of every conserved component.
    pub fn totals(&self, q: &CellField) -> Vec<f64> {
        let vol = self.grid.cell_volume();
        (0..q.n_comp()).map(|c| q.interior_sum(c) * vol).collect()
    }

    /// Semi-discrete residual at time `t`. Refills the ghost cells of `q`.
    pub fn rhs(&mut self, q: &mut CellField, t: f64, out: &mut Residual) -> Result<(), SolverError> {
        fill_ghosts(q, &self.bcs, &self.grid, &self.physics, t);
        out.clear();
        let nc = self.physics.n_comp();
        let (nx, ny) = (self.grid.nx(), self.grid.ny());
        let dx = self.grid.x().dx;
        let dy = self.grid.y().map_or(1.0, |y| y.dx);
        let mut triggered = 0usize;
        let mut fallbacks = 0usize;
        let mut limited = 0usize;
        let dims = if self.y_line.is_some() { 2.0 } else { 1.0 };
        let lambda = |h: f64| self.stage_dt.filter(|_| self.config.positivity_limiter).map(|dt| 2.0 * dims * dt / h);
        let (lambda_x, lambda_y) = (lambda(dx), lambda(dy));

        let alpha_x = self.glf_alpha(q, [1.0, 0.0], t)?;
        let periodic_x = self.bcs.x_lo.is_periodic();
        for j in 0..ny as isize {
            for c in 0..nc {
                self.x_line.cons[c].copy_from_slice(q.row(c, j));
            }
            triggered += self
                .x_line
                .process([1.0, 0.0], alpha_x, periodic_x, lambda_x)
                .map_err(|f| line_error(f, Axis::X, j, t))?;
            fallbacks += self.x_line.fallback_faces;
            limited += self.x_line.limited_faces;
            for c in 0..nc {
                let flux = &self.x_line.flux[c];
                let row = out.rates.index(c, 0, j);
                let rates = &mut out.rates.data_mut()[row..row + nx];
                for (i, r) in rates.iter_mut().enumerate() {
                    *r -= (flux[i + 1] - flux[i]) / dx;
                }
                out.external[c] += (flux[0] - flux[nx]) * dy;
            }
        }

        if self.y_line.is_some() {
            let alpha_y = self.glf_alpha(q, [0.0, 1.0], t)?;
            let periodic_y = self.bcs.y_lo.is_periodic();
            let y_line = self.y_line.as_mut().expect("checked above");
            for i in 0..nx as isize {
                for c in 0..nc {
                    q.column_into(c, i, &mut y_line.cons[c]);
                }
                triggered += y_line
                    .process([0.0, 1.0], alpha_y, periodic_y, lambda_y)
                    .map_err(|f| line_error(f, Axis::Y, i, t))?;
                fallbacks += y_line.fallback_faces;
                limited += y_line.limited_faces;
                for c in 0..nc {
                    let flux = &y_line.flux[c];
                    for j in 0..ny {
                        let k = out.rates.index(c, i, j as isize);
                        out.rates.data_mut()[k] -= (flux[j + 1] - flux[j]) / dy;
                    }
                    out.external[c] += (flux[0] - flux[ny]) * dx;
                }
            }
        }

        if let Some(source) = &self.source {
            apply_source(out, q, &self.grid, source);
        }
        self.stats.rhs_evaluations += 1;
        self.stats.triggered_cells += triggered as u64;
        self.stats.fallback_faces += fallbacks as u64;
        self.stats.limited_faces += limited as u64;
        Ok(())
    }

    /// Dissipation coefficient of the global Lax-Friedrichs flux: the largest
    /// `|u_n| + c` over interior cells. Zero when another flux is configured.
    fn glf_alpha(&self, q: &CellField, normal: [f64; 2], t: f64) -> Result<f64, SolverError> {
        if self.config.riemann != RiemannSolver::Glf {
            return Ok(0.0);
        }
        self.max_speed(q, normal, t)
    }

    fn max_speed(&self, q: &CellField, normal: [f64; 2], t: f64) -> Result<f64, SolverError> {
        let mut cell = vec![0.0; q.n_comp()];
        let mut best: f64 = 0.0;
        for (i, j) in q.interior_indices() {
            q.cell(i, j, &mut cell);
            let s = self.physics.max_speed(&cell, normal).map_err(|source| SolverError::InvalidState {
                location: Location::Cell { i, j },
                time: t,
                source,
            })?;
            best = best.max(s);
        }
        Ok(best)
    }

    /// CFL-limited step: `cfl * min(dx / (|u| + c), dy / (|v| + c))` over interior cells.
    pub fn compute_dt(&self, q: &CellField, t: f64) -> Result<f64, SolverError> {
        let mut cell = vec![0.0; q.n_comp()];
        let dx = self.grid.x().dx;
        let dy = self.grid.y().map(|y| y.dx);
        let mut dt = f64::INFINITY;
        for (i, j) in q.interior_indices() {
            q.cell(i, j, &mut cell);
            let err = |source| SolverError::InvalidState { location: Location::Cell { i, j }, time: t, source };
            let sx = self.physics.max_speed(&cell, [1.0, 0.0]).map_err(err)?;
            dt = dt.min(dx / sx);
            if let Some(dy) = dy {
                let sy = self.physics.max_speed(&cell, [0.0, 1.0]).map_err(err)?;
                dt = dt.min(dy / sy);
            }
        }
        Ok(self.config.cfl * dt)
    }

    /// Advances `q` from `t` to `t + dt` and checks the result for non-finite values.
    pub fn step(&mut self, q: &mut CellField, t: f64, dt: f64) -> Result<(), SolverError> {
        if !(dt > 0.0 && dt.is_finite()) {
            return Err(SolverError::Config(format!("time step must be positive and finite, got {dt}")));
        }
        let mut rk = self.rk.take().unwrap_or_else(|| Rk3Scratch::for_field(q));
        self.stage_dt = Some(dt);
        let result = rk3_step(q, t, dt, &mut rk, |f, s, r| self.rhs(f, s, r));
        self.stage_dt = None;
        if result.is_ok() {
            for (acc, e) in self.external_change.iter_mut().zip(&rk.external) {
                *acc += e;
            }
        }
        self.rk = Some(rk);
        result?;
        if let Some((i, j)) = q.interior_is_finite() {
            return Err(SolverError::NonFinite { location: Location::Cell { i, j }, time: t + dt });
        }
        Ok(())
    }
}

fn line_error(failure: LineFailure, axis: Axis, line: isize, t: f64) -> SolverError {
    let (location, source) = match (failure, axis) {
        (LineFailure::Cell(m, e), Axis::X) => (Location::Cell { i: m, j: line }, e),
        (LineFailure::Cell(m, e), Axis::Y) => (Location::Cell { i: line, j: m }, e),
        (LineFailure::Face(k, e), Axis::X) => (Location::Interface { axis, i: k as isize, j: line }, e),
        (LineFailure::Face(k, e), Axis::Y) => (Location::Interface { axis, i: line, j: k as isize }, e),
    };
    SolverError::InvalidState { location, time: t, source }
}
