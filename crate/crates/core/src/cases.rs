//! Catalog of benchmark problems: domain, gas, initial data, boundaries, end time and
//! the recipe for a reference solution.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::driver::{simulate, RunSettings, TimeStep};
use crate::error::SolverError;
use crate::euler::{GasModel, PrimitiveState};
use crate::integrator::{SchemeConfig, SourceTerm, Variant};
use crate::mesh::{BoundaryCondition, BoundarySpec, CellField, Grid, Grid1D, Grid2D};
use crate::physics::Physics;
use crate::riemann::exact_riemann;

/// Primitive state (or scalar) at a point `(x, y)`.
pub type InitialCondition = Arc<dyn Fn(f64, f64) -> Vec<f64> + Send + Sync>;

/// Primitive state (or scalar) at `(x, y, t)`.
pub type AnalyticSolution = Arc<dyn Fn(f64, f64, f64) -> Vec<f64> + Send + Sync>;

#[derive(Clone)]
pub enum Reference {
    Analytic(AnalyticSolution),
    /// Self-similar solution of the Riemann problem centred at `x0`.
    ExactRiemann { left: PrimitiveState, right: PrimitiveState, x0: f64 },
    /// WENO-Z run on a finer grid.
    FineGrid { nx: usize, ny: Option<usize> },
    None,
}

impl fmt::Debug for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Reference::Analytic(_) => f.write_str("Analytic(..)"),
            Reference::ExactRiemann { left, right, x0 } => f
                .debug_struct("ExactRiemann")
                .field("left", left)
                .field("right", right)
                .field("x0", x0)
                .finish(),
            Reference::FineGrid { nx, ny } => f.debug_struct("FineGrid").field("nx", nx).field("ny", ny).finish(),
            Reference::None => f.write_str("None"),
        }
    }
}

#[derive(Clone)]
pub struct CaseSpec {
    pub name: &'static str,
    pub physics: Physics,
    pub x_range: (f64, f64),
    /// `None` for one-dimensional problems.
    pub y_range: Option<(f64, f64)>,
    pub ic: InitialCondition,
    pub bcs: BoundarySpec,
    pub t_end: f64,
    pub nx: usize,
    pub ny: Option<usize>,
    pub time_step: TimeStep,
    pub source: Option<SourceTerm>,
    pub reference: Reference,
}

impl fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CaseSpec")
            .field("name", &self.name)
            .field("physics", &self.physics)
            .field("x_range", &self.x_range)
            .field("y_range", &self.y_range)
            .field("bcs", &self.bcs)
            .field("t_end", &self.t_end)
            .field("nx", &self.nx)
            .field("ny", &self.ny)
            .field("time_step", &self.time_step)
            .field("source", &self.source)
            .field("reference", &self.reference)
            .finish_non_exhaustive()
    }
}

impl CaseSpec {
    pub fn gamma(&self) -> Option<f64> {
        self.physics.gas().map(|g| g.gamma())
    }

    pub fn is_2d(&self) -> bool {
        self.y_range.is_some()
    }

    pub fn default_grid(&self) -> Result<Grid, SolverError> {
        self.grid(self.nx, self.ny)
    }

    /// Grid over the case domain; `ny` is ignored for one-dimensional cases and
    /// required for two-dimensional ones.
    pub fn grid(&self, nx: usize, ny: Option<usize>) -> Result<Grid, SolverError> {
        let x = Grid1D::new(self.x_range.0, self.x_range.1, nx)?;
        match self.y_range {
            None => Ok(Grid::One(x)),
            Some((lo, hi)) => {
                let ny = ny.ok_or_else(|| SolverError::Config(format!("case `{}` needs ny", self.name)))?;
                Ok(Grid::Two(Grid2D { x, y: Grid1D::new(lo, hi, ny)? }))
            }
        }
    }

    pub fn initial_primitive(&self, x: f64, y: f64) -> Vec<f64> {
        (self.ic)(x, y)
    }

    /// Conservative cell values sampled at cell centres.
    pub fn initial_field(&self, grid: &Grid) -> Result<CellField, SolverError> {
        let mut field = grid.new_field(self.physics.n_comp());
        let mut cons = vec![0.0; self.physics.n_comp()];
        let indices: Vec<_> = field.interior_indices().collect();
        for (i, j) in indices {
            let (x, y) = grid.center(i, j);
            let w = self.initial_primitive(x, y);
            if let Physics::Euler(_) = self.physics {
                PrimitiveState::from_array([w[0], w[1], w[2], w[3]]).validate().map_err(|source| {
                    SolverError::InvalidState { location: crate::Location::Cell { i, j }, time: 0.0, source }
                })?;
            } else if !w[0].is_finite() {
                return Err(SolverError::NonFinite { location: crate::Location::Cell { i, j }, time: 0.0 });
            }
            self.physics.prim_to_cons(&w, &mut cons);
            field.set_cell(i, j, &cons);
        }
        Ok(field)
    }
}

pub const CASE_NAMES: [&str; 20] = [
    "advection_complex",
    "gaussian_advect",
    "henrick_critical",
    "titarev_toro",
    "titarev_toro_2",
    "sod",
    "lax",
    "le_blanc",
    "shu_osher",
    "blast_waves",
    "explosion_2d",
    "euler2d_smooth",
    "riemann2d_config3",
    "shock_entropy_2d",
    "richtmyer_meshkov",
    "rayleigh_taylor",
    "shock_bubble",
    "double_mach",
    "riemann2d_appendixB",
    "viscous_shock_tube",
];

pub fn instantiate_case(name: &str) -> Result<CaseSpec, SolverError> {
    let Some(name) = CASE_NAMES.iter().copied().find(|known| *known == name) else {
        return Err(SolverError::UnknownCase { name: name.to_string(), known: CASE_NAMES.join(", ") });
    };
    let case = match name {
        "advection_complex" => advection(
            name,
            (-1.0, 1.0),
            200,
            2.0,
            TimeStep::Cfl(0.1),
            complex_waveform,
        ),
        "gaussian_advect" => advection(name, (0.0, 1.0), 40, 1.0, TimeStep::DxSquared(0.1), |x| {
            (-300.0 * (x - 0.5) * (x - 0.5)).exp()
        }),
        "henrick_critical" => advection(name, (-1.0, 1.0), 40, 8.0, TimeStep::DxSquared(0.1), |x| {
            (PI * x - (PI * x).sin() / PI).sin()
        }),
        "titarev_toro" => titarev_toro(name, 20.0, 1000, 3000),
        "titarev_toro_2" => titarev_toro(name, 10.0, 400, 1600),
        "sod" => shock_tube(name, [0.125, 0.0, 0.1], [1.0, 0.0, 1.0], (0.0, 1.0), 0.5, 1.4, 0.2, 100),
        "lax" => shock_tube(name, [0.445, 0.698, 3.528], [0.5, 0.0, 0.571], (0.0, 1.0), 0.5, 1.4, 0.14, 200),
        "le_blanc" => shock_tube(
            name,
            [1.0, 0.0, 2.0 / 3.0 * 1e-1],
            [1e-3, 0.0, 2.0 / 3.0 * 1e-10],
            (0.0, 9.0),
            3.0,
            5.0 / 3.0,
            6.0,
            200,
        ),
        "shu_osher" => euler_1d(
            name,
            1.4,
            (-5.0, 5.0),
            move |x| {
                if x < -4.0 {
                    vec![3.857143, 2.629369, 0.0, 10.3333]
                } else {
                    vec![1.0 + 0.2 * (5.0 * x).sin(), 0.0, 0.0, 1.0]
                }
            },
            BoundaryCondition::ZeroGradient,
            1.8,
            300,
            Reference::FineGrid { nx: 1600, ny: None },
        ),
        "blast_waves" => euler_1d(
            name,
            1.4,
            (0.0, 1.0),
            |x| {
                let p = if x < 0.1 {
                    1000.0
                } else if x < 0.9 {
                    0.01
                } else {
                    100.0
                };
                vec![1.0, 0.0, 0.0, p]
            },
            BoundaryCondition::Reflective,
            0.038,
            400,
            Reference::FineGrid { nx: 1600, ny: None },
        ),
        "explosion_2d" => euler_2d(
            name,
            1.4,
            (0.0, 2.0),
            (0.0, 2.0),
            |x, y| {
                if (x - 1.0).powi(2) + (y - 1.0).powi(2) < 0.16 {
                    vec![1.0, 0.0, 0.0, 1.0]
                } else {
                    vec![0.125, 0.0, 0.0, 0.1]
                }
            },
            BoundarySpec::uniform(BoundaryCondition::ZeroGradient),
            0.25,
            (400, 400),
            Reference::FineGrid { nx: 1000, ny: Some(1000) },
        ),
        "euler2d_smooth" => {
            let exact = |x: f64, y: f64, t: f64| vec![1.0 + 0.5 * (PI * (x + y - 2.0 * t)).sin(), 1.0, 1.0, 1.0];
            let mut case = euler_2d(
                name,
                1.4,
                (-1.0, 1.0),
                (-1.0, 1.0),
                move |x, y| exact(x, y, 0.0),
                BoundarySpec::periodic(),
                2.0,
                (40, 40),
                Reference::Analytic(Arc::new(exact)),
            );
            case.time_step = TimeStep::DxSquared(0.1);
            case
        }
        "riemann2d_config3" => {
            let s = 4.0 / 11f64.sqrt();
            euler_2d(
                name,
                1.4,
                (0.0, 1.0),
                (0.0, 1.0),
                move |x, y| match (x > 0.8, y > 0.8) {
                    (true, true) => vec![1.5, 0.0, 0.0, 1.5],
                    (false, true) => vec![33.0 / 62.0, s, 0.0, 0.3],
                    (false, false) => vec![77.0 / 558.0, s, s, 9.0 / 310.0],
                    (true, false) => vec![33.0 / 62.0, 0.0, s, 0.3],
                },
                BoundarySpec::uniform(BoundaryCondition::ZeroGradient),
                0.8,
                (400, 400),
                Reference::None,
            )
        }
        "shock_entropy_2d" => {
            let (c, s) = ((PI / 6.0).cos(), (PI / 6.0).sin());
            euler_2d(
                name,
                1.4,
                (-5.0, 5.0),
                (-1.0, 1.0),
                move |x, y| {
                    if x < -4.0 {
                        vec![3.857143, 2.629369, 0.0, 10.3333]
                    } else {
                        vec![1.0 + 0.2 * (10.0 * x * c + 10.0 * y * s).sin(), 0.0, 0.0, 1.0]
                    }
                },
                BoundarySpec::uniform(BoundaryCondition::ZeroGradient),
                1.8,
                (400, 80),
                Reference::FineGrid { nx: 1600, ny: Some(320) },
            )
        }
        "richtmyer_meshkov" => richtmyer_meshkov(name, 0.1),
        "rayleigh_taylor" => rayleigh_taylor(name),
        "shock_bubble" => shock_bubble(name),
        "double_mach" => double_mach(name),
        "riemann2d_appendixB" => euler_2d(
            name,
            1.4,
            (-0.5, 0.5),
            (-0.5, 0.5),
            |x, y| match (x > 0.0, y >= 0.0) {
                (false, true) => vec![1.0, -0.6259, 0.1, 1.0],
                (false, false) => vec![0.8, 0.1, 0.1, 1.0],
                (true, true) => vec![0.5197, 0.1, 0.1, 0.4],
                (true, false) => vec![1.0, 0.1, -0.6259, 1.0],
            },
            BoundarySpec::uniform(BoundaryCondition::ZeroGradient),
            0.25,
            (1000, 1000),
            Reference::None,
        ),
        "viscous_shock_tube" => {
            return Err(SolverError::Unsupported(
                "viscous_shock_tube needs viscous flux terms, which are not implemented".into(),
            ))
        }
        _ => unreachable!("every catalog name is matched"),
    };
    Ok(case)
}

fn advection(
    name: &'static str,
    range: (f64, f64),
    nx: usize,
    t_end: f64,
    time_step: TimeStep,
    profile: fn(f64) -> f64,
) -> CaseSpec {
    let (lo, hi) = range;
    let exact = move |x: f64, _y: f64, t: f64| vec![profile(lo + (x - t - lo).rem_euclid(hi - lo))];
    CaseSpec {
        name,
        physics: Physics::Advection { velocity: [1.0, 0.0] },
        x_range: range,
        y_range: None,
        ic: Arc::new(move |x, _| vec![profile(x)]),
        bcs: BoundarySpec::periodic(),
        t_end,
        nx,
        ny: None,
        time_step,
        source: None,
        reference: Reference::Analytic(Arc::new(exact)),
    }
}

/// Square wave, Gaussian, triangle and semi-ellipse on [-1, 1].
fn complex_waveform(x: f64) -> f64 {
    if (-0.8..=-0.6).contains(&x) {
        (-(2f64.ln()) * (x + 0.7).powi(2) / 0.0009).exp()
    } else if (-0.4..=-0.2).contains(&x) {
        1.0
    } else if (0.0..=0.2).contains(&x) {
        1.0 - (10.0 * (x - 0.1)).abs()
    } else if (0.4..=0.6).contains(&x) {
        (1.0 - 100.0 * (x - 0.5).powi(2)).max(0.0).sqrt()
    } else {
        0.0
    }
}

fn gas(gamma: f64) -> Physics {
    Physics::Euler(GasModel::new(gamma).expect("catalog gamma exceeds one"))
}

#[allow(clippy::too_many_arguments)]
fn euler_1d(
    name: &'static str,
    gamma: f64,
    range: (f64, f64),
    ic: impl Fn(f64) -> Vec<f64> + Send + Sync + 'static,
    bc: BoundaryCondition,
    t_end: f64,
    nx: usize,
    reference: Reference,
) -> CaseSpec {
    CaseSpec {
        name,
        physics: gas(gamma),
        x_range: range,
        y_range: None,
        ic: Arc::new(move |x, _| ic(x)),
        bcs: BoundarySpec::uniform(bc),
        t_end,
        nx,
        ny: None,
        time_step: TimeStep::Cfl(0.2),
        source: None,
        reference,
    }
}

#[allow(clippy::too_many_arguments)]
fn euler_2d(
    name: &'static str,
    gamma: f64,
    x_range: (f64, f64),
    y_range: (f64, f64),
    ic: impl Fn(f64, f64) -> Vec<f64> + Send + Sync + 'static,
    bcs: BoundarySpec,
    t_end: f64,
    (nx, ny): (usize, usize),
    reference: Reference,
) -> CaseSpec {
    CaseSpec {
        name,
        physics: gas(gamma),
        x_range,
        y_range: Some(y_range),
        ic: Arc::new(ic),
        bcs,
        t_end,
        nx,
        ny: Some(ny),
        time_step: TimeStep::Cfl(0.2),
        source: None,
        reference,
    }
}

#[allow(clippy::too_many_arguments)]
fn shock_tube(
    name: &'static str,
    left: [f64; 3],
    right: [f64; 3],
    range: (f64, f64),
    x0: f64,
    gamma: f64,
    t_end: f64,
    nx: usize,
) -> CaseSpec {
    let wl = PrimitiveState::new(left[0], left[1], 0.0, left[2]);
    let wr = PrimitiveState::new(right[0], right[1], 0.0, right[2]);
    euler_1d(
        name,
        gamma,
        range,
        move |x| if x < x0 { wl.to_array().to_vec() } else { wr.to_array().to_vec() },
        BoundaryCondition::ZeroGradient,
        t_end,
        nx,
        Reference::ExactRiemann { left: wl, right: wr, x0 },
    )
}

fn titarev_toro(name: &'static str, wavenumber: f64, nx: usize, reference_nx: usize) -> CaseSpec {
    euler_1d(
        name,
        1.4,
        (-5.0, 5.0),
        move |x| {
            if x < -4.5 {
                vec![1.515695, 0.523326, 0.0, 1.805]
            } else {
                vec![1.0 + 0.1 * (wavenumber * PI * x).sin(), 0.0, 0.0, 1.0]
            }
        },
        BoundaryCondition::ZeroGradient,
        5.0,
        nx,
        Reference::FineGrid { nx: reference_nx, ny: None },
    )
}

/// Shock moving left through light gas towards a heavy layer whose interface is
/// displaced by `amplitude * cos(2 pi y)`.
fn richtmyer_meshkov(name: &'static str, amplitude: f64) -> CaseSpec {
    let post_shock = vec![1.4112, -665.0 / 1556.0, 0.0, 1.628];
    let heavy = vec![5.04, 0.0, 0.0, 1.0];
    let (shocked, dense) = (post_shock.clone(), heavy.clone());
    euler_2d(
        name,
        1.4,
        (0.0, 4.0),
        (0.0, 1.0),
        move |x, y| {
            if x > 3.2 {
                shocked.clone()
            } else if x < 2.9 - amplitude * (2.0 * PI * (y + 0.25)).sin() {
                dense.clone()
            } else {
                vec![1.0, 0.0, 0.0, 1.0]
            }
        },
        BoundarySpec {
            x_lo: BoundaryCondition::FixedState(heavy),
            x_hi: BoundaryCondition::FixedState(post_shock),
            y_lo: BoundaryCondition::Periodic,
            y_hi: BoundaryCondition::Periodic,
        },
        9.0,
        (320, 80),
        Reference::None,
    )
}

fn rayleigh_taylor(name: &'static str) -> CaseSpec {
    let gamma = 5.0 / 3.0;
    let mut case = euler_2d(
        name,
        gamma,
        (0.0, 0.25),
        (0.0, 1.0),
        move |x, y| {
            let (rho, p) = if y < 0.5 { (2.0, 2.0 * y + 1.0) } else { (1.0, y + 1.5) };
            let c = (gamma * p / rho).sqrt();
            vec![rho, 0.0, -0.025 * c * (8.0 * PI * x).cos(), p]
        },
        BoundarySpec {
            x_lo: BoundaryCondition::Reflective,
            x_hi: BoundaryCondition::Reflective,
            y_lo: BoundaryCondition::FixedState(vec![2.0, 0.0, 0.0, 1.0]),
            y_hi: BoundaryCondition::FixedState(vec![1.0, 0.0, 0.0, 2.5]),
        },
        1.95,
        (80, 320),
        Reference::None,
    );
    case.source = Some(SourceTerm::Gravity);
    case
}

fn shock_bubble(name: &'static str) -> CaseSpec {
    let post_shock = vec![1.3764, -0.3947, 0.0, 1.5698];
    let shocked = post_shock.clone();
    euler_2d(
        name,
        1.4,
        (0.0, 6.5),
        (0.0, 1.78),
        move |x, y| {
            if x > 4.5 {
                shocked.clone()
            } else if (x - 3.5).powi(2) + (y - 0.89).powi(2) < 0.25 {
                vec![0.1819, 0.0, 0.0, 1.0]
            } else {
                vec![1.0, 0.0, 0.0, 1.0]
            }
        },
        BoundarySpec {
            x_lo: BoundaryCondition::ZeroGradient,
            x_hi: BoundaryCondition::FixedState(post_shock),
            y_lo: BoundaryCondition::Reflective,
            y_hi: BoundaryCondition::Reflective,
        },
        3.25,
        (2600, 712),
        Reference::None,
    )
}

fn double_mach(name: &'static str) -> CaseSpec {
    let (c, s) = ((PI / 6.0).cos(), (PI / 6.0).sin());
    let post = vec![8.0, 8.25 * c, -8.25 * s, 116.5];
    let pre = vec![1.4, 0.0, 0.0, 1.0];
    let root3 = 3f64.sqrt();
    let (ic_post, ic_pre) = (post.clone(), pre.clone());
    let (top_post, top_pre) = (post.clone(), pre);
    let top: crate::mesh::BoundaryCallback = Arc::new(move |x, y, t| {
        if x < 1.0 / 6.0 + (y + 20.0 * t) / root3 {
            top_post.clone()
        } else {
            top_pre.clone()
        }
    });
    euler_2d(
        name,
        1.4,
        (0.0, 4.0),
        (0.0, 1.0),
        move |x, y| if x < 1.0 / 6.0 + y / root3 { ic_post.clone() } else { ic_pre.clone() },
        BoundarySpec {
            x_lo: BoundaryCondition::FixedState(post.clone()),
            x_hi: BoundaryCondition::ZeroGradient,
            y_lo: BoundaryCondition::Split {
                at: 1.0 / 6.0,
                below: Box::new(BoundaryCondition::FixedState(post)),
                above: Box::new(BoundaryCondition::Reflective),
            },
            y_hi: BoundaryCondition::TimeDependent(top),
        },
        0.2,
        (1024, 256),
        Reference::None,
    )
}

/// Primitive reference solution at time `t`, sampled at the cell centres of `grid`.
pub fn reference_solution(case: &CaseSpec, grid: &Grid, t: f64) -> Result<CellField, SolverError> {
    let nc = case.physics.n_comp();
    let mut out = grid.new_field(nc);
    let indices: Vec<_> = out.interior_indices().collect();
    match &case.reference {
        Reference::Analytic(f) => {
            for (i, j) in indices {
                let (x, y) = grid.center(i, j);
                out.set_cell(i, j, &f(x, y, t));
            }
        }
        Reference::ExactRiemann { left, right, x0 } => {
            let gas = case.physics.gas().ok_or_else(|| SolverError::Config("exact Riemann reference needs a gas".into()))?;
            let solution = exact_riemann(left, right, &gas)?;
            for (i, j) in indices {
                let (x, _) = grid.center(i, j);
                let w = if t > 0.0 {
                    solution.sample((x - x0) / t)
                } else if x < *x0 {
                    *left
                } else {
                    *right
                };
                out.set_cell(i, j, &w.to_array());
            }
        }
        Reference::FineGrid { nx, ny } => {
            let fine_grid = case.grid(*nx, *ny)?;
            let settings = RunSettings {
                scheme: SchemeConfig::new(Variant::WenoZ),
                t_end: t,
                time_step: case.time_step,
                snapshot_every: None,
            };
            let run = simulate(case, &fine_grid, &settings, |_, _, _| Ok(()))?;
            let fine = run.primitive_field()?;
            restrict(&fine, &fine_grid, &mut out, grid);
        }
        Reference::None => {
            return Err(SolverError::Unsupported(format!("case `{}` has no reference solution", case.name)));
        }
    }
    Ok(out)
}

/// Transfers `fine` onto `coarse`: block averages when the resolutions divide evenly,
/// linear interpolation between cell centres otherwise.
fn restrict(fine: &CellField, fine_grid: &Grid, coarse: &mut CellField, coarse_grid: &Grid) {
    let nc = fine.n_comp();
    let rx = fine_grid.nx() / coarse_grid.nx();
    let ry = fine_grid.ny() / coarse_grid.ny();
    let divisible = rx * coarse_grid.nx() == fine_grid.nx() && ry * coarse_grid.ny() == fine_grid.ny() && rx > 0 && ry > 0;
    let indices: Vec<_> = coarse.interior_indices().collect();
    let mut cell = vec![0.0; nc];
    for (i, j) in indices {
        if divisible {
            cell.fill(0.0);
            for b in 0..ry as isize {
                for a in 0..rx as isize {
                    for (c, v) in cell.iter_mut().enumerate() {
                        *v += fine.get(c, i * rx as isize + a, j * ry as isize + b);
                    }
                }
            }
            cell.iter_mut().for_each(|v| *v /= (rx * ry) as f64);
        } else {
            let (x, y) = coarse_grid.center(i, j);
            let (i0, fx) = bracket(fine_grid.x(), x);
            let (j0, fy) = match fine_grid.y() {
                Some(g) => bracket(g, y),
                None => (0, 0.0),
            };
            let j1 = if fine_grid.is_2d() { j0 + 1 } else { j0 };
            let clamp_j = |j: isize| j.clamp(0, fine_grid.ny() as isize - 1);
            let clamp_i = |i: isize| i.clamp(0, fine_grid.nx() as isize - 1);
            for (c, v) in cell.iter_mut().enumerate() {
                let at = |i: isize, j: isize| fine.get(c, clamp_i(i), clamp_j(j));
                let lo = at(i0, j0) * (1.0 - fx) + at(i0 + 1, j0) * fx;
                let hi = at(i0, j1) * (1.0 - fx) + at(i0 + 1, j1) * fx;
                *v = lo * (1.0 - fy) + hi * fy;
            }
        }
        coarse.set_cell(i, j, &cell);
    }
}

/// Index of the fine cell centre at or left of `x` and the fractional offset to the next.
fn bracket(g: &Grid1D, x: f64) -> (isize, f64) {
    let s = (x - g.x_min) / g.dx - 0.5;
    let i = s.floor();
    (i as isize, (s - i).clamp(0.0, 1.0))
}
