//! Uniform Cartesian grids, ghost-padded cell storage and boundary conditions.

use std::fmt;
use std::sync::Arc;

use crate::error::SolverError;
use crate::physics::Physics;

pub const DEFAULT_GHOSTS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub dx: f64,
    pub n_ghost: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize) -> Result<Self, SolverError> {
        Self::with_ghosts(x_min, x_max, n_cells, DEFAULT_GHOSTS)
    }

    pub fn with_ghosts(
        x_min: f64,
        x_max: f64,
        n_cells: usize,
        n_ghost: usize,
    ) -> Result<Self, SolverError> {
        if !(x_max > x_min) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(SolverError::Config(format!("empty interval [{x_min}, {x_max}]")));
        }
        if n_cells == 0 {
            return Err(SolverError::Config("grid needs at least one cell".into()));
        }
        Ok(Self { x_min, x_max, n_cells, dx: (x_max - x_min) / n_cells as f64, n_ghost })
    }

    /// Centre of interior cell `j` (zero based; ghosts are negative or `>= n_cells`).
    pub fn center(&self, j: isize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx
    }

    pub fn face(&self, k: usize) -> f64 {
        self.x_min + k as f64 * self.dx
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Grid {
    One(Grid1D),
    Two(Grid2D),
}

impl Grid {
    pub fn nx(&self) -> usize {
        self.x().n_cells
    }

    pub fn ny(&self) -> usize {
        match self {
            Grid::One(_) => 1,
            Grid::Two(g) => g.y.n_cells,
        }
    }

    pub fn x(&self) -> &Grid1D {
        match self {
            Grid::One(g) => g,
            Grid::Two(g) => &g.x,
        }
    }

    pub fn y(&self) -> Option<&Grid1D> {
        match self {
            Grid::One(_) => None,
            Grid::Two(g) => Some(&g.y),
        }
    }

    pub fn is_2d(&self) -> bool {
        matches!(self, Grid::Two(_))
    }

    pub fn n_ghost(&self) -> usize {
        self.x().n_ghost
    }

    pub fn cell_volume(&self) -> f64 {
        self.x().dx * self.y().map_or(1.0, |y| y.dx)
    }

    pub fn n_cells(&self) -> usize {
        self.nx() * self.ny()
    }

    /// Cell centre; `y` is 0 for one-dimensional grids.
    pub fn center(&self, i: isize, j: isize) -> (f64, f64) {
        (self.x().center(i), self.y().map_or(0.0, |y| y.center(j)))
    }

    pub fn new_field(&self, n_comp: usize) -> CellField {
        let gy = if self.is_2d() { self.n_ghost() } else { 0 };
        CellField::new(n_comp, self.nx(), self.ny(), self.n_ghost(), gy)
    }
}

/// Component-major cell storage with ghost layers on every side of each axis.
#[derive(Clone, Debug, PartialEq)]
pub struct CellField {
    n_comp: usize,
    nx: usize,
    ny: usize,
    gx: usize,
    gy: usize,
    data: Vec<f64>,
}

impl CellField {
    pub fn new(n_comp: usize, nx: usize, ny: usize, gx: usize, gy: usize) -> Self {
        let len = n_comp * (nx + 2 * gx) * (ny + 2 * gy);
        Self { n_comp, nx, ny, gx, gy, data: vec![0.0; len] }
    }

    pub fn n_comp(&self) -> usize {
        self.n_comp
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn ghosts(&self) -> (usize, usize) {
        (self.gx, self.gy)
    }

    /// Padded row length.
    pub fn stride_x(&self) -> usize {
        self.nx + 2 * self.gx
    }

    pub fn stride_y(&self) -> usize {
        self.ny + 2 * self.gy
    }

    pub fn plane_len(&self) -> usize {
        self.stride_x() * self.stride_y()
    }

    #[inline]
    pub fn index(&self, c: usize, i: isize, j: isize) -> usize {
        let ii = (i + self.gx as isize) as usize;
        let jj = (j + self.gy as isize) as usize;
        c * self.plane_len() + jj * self.stride_x() + ii
    }

    #[inline]
    pub fn get(&self, c: usize, i: isize, j: isize) -> f64 {
        self.data[self.index(c, i, j)]
    }

    #[inline]
    pub fn set(&mut self, c: usize, i: isize, j: isize, value: f64) {
        let k = self.index(c, i, j);
        self.data[k] = value;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Padded x-line of component `c` at row `j` (ghosts included).
    pub fn row(&self, c: usize, j: isize) -> &[f64] {
        let start = self.index(c, -(self.gx as isize), j);
        &self.data[start..start + self.stride_x()]
    }

    /// Copies the padded y-line of component `c` at column `i` into `out`.
    pub fn column_into(&self, c: usize, i: isize, out: &mut Vec<f64>) {
        out.clear();
        let start = self.index(c, i, -(self.gy as isize));
        out.extend((0..self.stride_y()).map(|m| self.data[start + m * self.stride_x()]));
    }

    pub fn cell(&self, i: isize, j: isize, out: &mut [f64]) {
        for (c, o) in out.iter_mut().enumerate().take(self.n_comp) {
            *o = self.get(c, i, j);
        }
    }

    pub fn set_cell(&mut self, i: isize, j: isize, values: &[f64]) {
        for (c, &v) in values.iter().enumerate().take(self.n_comp) {
            self.set(c, i, j, v);
        }
    }

    pub fn interior_indices(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        (0..self.ny as isize).flat_map(move |j| (0..self.nx as isize).map(move |i| (i, j)))
    }

    /// Sum of component `c` over interior cells.
    pub fn interior_sum(&self, c: usize) -> f64 {
        (0..self.ny as isize).map(|j| self.interior_row(c, j).iter().sum::<f64>()).sum()
    }

    pub fn interior_row(&self, c: usize, j: isize) -> &[f64] {
        let start = self.index(c, 0, j);
        &self.data[start..start + self.nx]
    }

    pub fn interior_row_mut(&mut self, c: usize, j: isize) -> &mut [f64] {
        let start = self.index(c, 0, j);
        let nx = self.nx;
        &mut self.data[start..start + nx]
    }

    pub fn interior_is_finite(&self) -> Option<(isize, isize)> {
        for c in 0..self.n_comp {
            for j in 0..self.ny as isize {
                if let Some(i) = self.interior_row(c, j).iter().position(|v| !v.is_finite()) {
                    return Some((i as isize, j));
                }
            }
        }
        None
    }
}

/// Primitive state at a ghost-cell centre `(x, y)` and time `t`.
pub type BoundaryCallback = Arc<dyn Fn(f64, f64, f64) -> Vec<f64> + Send + Sync>;

/// Boundary treatment for one side of the domain. States are primitive.
#[derive(Clone)]
pub enum BoundaryCondition {
    Periodic,
    ZeroGradient,
    /// Mirror image with the wall-normal velocity negated.
    Reflective,
    FixedState(Vec<f64>),
    /// State evaluated at each ghost-cell centre and time.
    TimeDependent(BoundaryCallback),
    /// `below` applies where the coordinate along the boundary is less than `at`.
    Split { at: f64, below: Box<BoundaryCondition>, above: Box<BoundaryCondition> },
}

impl fmt::Debug for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Periodic => write!(f, "Periodic"),
            Self::ZeroGradient => write!(f, "ZeroGradient"),
            Self::Reflective => write!(f, "Reflective"),
            Self::FixedState(s) => f.debug_tuple("FixedState").field(s).finish(),
            Self::TimeDependent(_) => write!(f, "TimeDependent(..)"),
            Self::Split { at, below, above } => f
                .debug_struct("Split")
                .field("at", at)
                .field("below", below)
                .field("above", above)
                .finish(),
        }
    }
}

impl BoundaryCondition {
    pub fn is_periodic(&self) -> bool {
        matches!(self, Self::Periodic)
    }

    fn contains_periodic(&self) -> bool {
        match self {
            Self::Periodic => true,
            Self::Split { below, above, .. } => below.contains_periodic() || above.contains_periodic(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundarySpec {
    pub x_lo: BoundaryCondition,
    pub x_hi: BoundaryCondition,
    pub y_lo: BoundaryCondition,
    pub y_hi: BoundaryCondition,
}

impl BoundarySpec {
    pub fn uniform(bc: BoundaryCondition) -> Self {
        Self { x_lo: bc.clone(), x_hi: bc.clone(), y_lo: bc.clone(), y_hi: bc }
    }

    pub fn periodic() -> Self {
        Self::uniform(BoundaryCondition::Periodic)
    }

    pub fn validate(&self, grid: &Grid, physics: &Physics) -> Result<(), SolverError> {
        let mut pairs = vec![("x", &self.x_lo, &self.x_hi)];
        if grid.is_2d() {
            pairs.push(("y", &self.y_lo, &self.y_hi));
        }
        for (axis, lo, hi) in pairs {
            if lo.is_periodic() != hi.is_periodic() {
                return Err(SolverError::Config(format!(
                    "periodic boundary on one {axis} side only"
                )));
            }
            for side in [lo, hi] {
                if !side.is_periodic() && side.contains_periodic() {
                    return Err(SolverError::Config(format!(
                        "periodic condition nested in a split {axis} boundary"
                    )));
                }
                check_state_sizes(side, physics.n_comp())?;
            }
        }
        Ok(())
    }

    pub fn is_periodic_everywhere(&self, grid: &Grid) -> bool {
        self.x_lo.is_periodic() && (!grid.is_2d() || self.y_lo.is_periodic())
    }
}

fn check_state_sizes(bc: &BoundaryCondition, n_comp: usize) -> Result<(), SolverError> {
    match bc {
        BoundaryCondition::FixedState(s) if s.len() != n_comp => Err(SolverError::Config(format!(
            "fixed boundary state has {} components, expected {n_comp}",
            s.len()
        ))),
        BoundaryCondition::Split { below, above, .. } => {
            check_state_sizes(below, n_comp)?;
            check_state_sizes(above, n_comp)
        }
        _ => Ok(()),
    }
}

#[derive(Clone, Copy)]
enum Side {
    Lo,
    Hi,
}

/// Fills every ghost cell of `field` from its interior according to `bcs` at time `t`.
///
/// x-ghosts are filled on interior rows first; y-ghosts are then filled across the
/// full padded width, so corner ghosts hold consistent values too.
pub fn fill_ghosts(
    field: &mut CellField,
    bcs: &BoundarySpec,
    grid: &Grid,
    physics: &Physics,
    t: f64,
) {
    let (gx, gy) = field.ghosts();
    let (nx, ny) = (field.nx() as isize, field.ny() as isize);
    if gx > 0 {
        for j in 0..ny {
            let along = grid.y().map_or(0.0, |y| y.center(j));
            fill_x_side(field, &bcs.x_lo, Side::Lo, j, along, grid, physics, t);
            fill_x_side(field, &bcs.x_hi, Side::Hi, j, along, grid, physics, t);
        }
    }
    if gy > 0 {
        for i in -(gx as isize)..nx + gx as isize {
            let along = grid.x().center(i);
            fill_y_side(field, &bcs.y_lo, Side::Lo, i, along, grid, physics, t);
            fill_y_side(field, &bcs.y_hi, Side::Hi, i, along, grid, physics, t);
        }
    }
}

fn resolve(bc: &BoundaryCondition, along: f64) -> &BoundaryCondition {
    match bc {
        BoundaryCondition::Split { at, below, above } => {
            resolve(if along < *at { below } else { above }, along)
        }
        other => other,
    }
}

fn fixed_cons(prim: &[f64], physics: &Physics) -> Vec<f64> {
    let mut out = vec![0.0; physics.n_comp()];
    physics.prim_to_cons(prim, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill_x_side(
    field: &mut CellField,
    bc: &BoundaryCondition,
    side: Side,
    j: isize,
    along: f64,
    grid: &Grid,
    physics: &Physics,
    t: f64,
) {
    let g = field.ghosts().0 as isize;
    let n = field.nx() as isize;
    let nc = field.n_comp();
    let ghost = |m: isize| match side {
        Side::Lo => -1 - m,
        Side::Hi => n + m,
    };
    match resolve(bc, along) {
        BoundaryCondition::Periodic => {
            for m in 0..g {
                let src = match side {
                    Side::Lo => (n - 1 - m).rem_euclid(n),
                    Side::Hi => m.rem_euclid(n),
                };
                for c in 0..nc {
                    let v = field.get(c, src, j);
                    field.set(c, ghost(m), j, v);
                }
            }
        }
        BoundaryCondition::ZeroGradient => {
            let src = match side {
                Side::Lo => 0,
                Side::Hi => n - 1,
            };
            for m in 0..g {
                for c in 0..nc {
                    let v = field.get(c, src, j);
                    field.set(c, ghost(m), j, v);
                }
            }
        }
        BoundaryCondition::Reflective => {
            let flip = physics.momentum_component(0);
            for m in 0..g {
                let src = match side {
                    Side::Lo => m.min(n - 1),
                    Side::Hi => (n - 1 - m).max(0),
                };
                for c in 0..nc {
                    let v = field.get(c, src, j);
                    field.set(c, ghost(m), j, if Some(c) == flip { -v } else { v });
                }
            }
        }
        BoundaryCondition::FixedState(prim) => {
            let q = fixed_cons(prim, physics);
            for m in 0..g {
                field.set_cell(ghost(m), j, &q);
            }
        }
        BoundaryCondition::TimeDependent(f) => {
            for m in 0..g {
                let (x, y) = grid.center(ghost(m), j);
                field.set_cell(ghost(m), j, &fixed_cons(&f(x, y, t), physics));
            }
        }
        BoundaryCondition::Split { .. } => unreachable!("resolved above"),
    }
}

#[allow(clippy::too_many_arguments)]
fn fill_y_side(
    field: &mut CellField,
    bc: &BoundaryCondition,
    side: Side,
    i: isize,
    along: f64,
    grid: &Grid,
    physics: &Physics,
    t: f64,
) {
    let g = field.ghosts().1 as isize;
    let n = field.ny() as isize;
    let nc = field.n_comp();
    let ghost = |m: isize| match side {
        Side::Lo => -1 - m,
        Side::Hi => n + m,
    };
    match resolve(bc, along) {
        BoundaryCondition::Periodic => {
            for m in 0..g {
                let src = match side {
                    Side::Lo => (n - 1 - m).rem_euclid(n),
                    Side::Hi => m.rem_euclid(n),
                };
                for c in 0..nc {
                    let v = field.get(c, i, src);
                    field.set(c, i, ghost(m), v);
                }
            }
        }
        BoundaryCondition::ZeroGradient => {
            let src = match side {
                Side::Lo => 0,
                Side::Hi => n - 1,
            };
            for m in 0..g {
                for c in 0..nc {
                    let v = field.get(c, i, src);
                    field.set(c, i, ghost(m), v);
                }
            }
        }
        BoundaryCondition::Reflective => {
            let flip = physics.momentum_component(1);
            for m in 0..g {
                let src = match side {
                    Side::Lo => m.min(n - 1),
                    Side::Hi => (n - 1 - m).max(0),
                };
                for c in 0..nc {
                    let v = field.get(c, i, src);
                    field.set(c, i, ghost(m), if Some(c) == flip { -v } else { v });
                }
            }
        }
        BoundaryCondition::FixedState(prim) => {
            let q = fixed_cons(prim, physics);
            for m in 0..g {
                field.set_cell(i, ghost(m), &q);
            }
        }
        BoundaryCondition::TimeDependent(f) => {
            for m in 0..g {
                let (x, y) = grid.center(i, ghost(m));
                field.set_cell(i, ghost(m), &fixed_cons(&f(x, y, t), physics));
            }
        }
        BoundaryCondition::Split { .. } => unreachable!("resolved above"),
    }
}

/// Mean absolute deviation per component between interior cells and `reference`
/// evaluated at cell centres.
pub fn l1_error(
    field: &CellField,
    grid: &Grid,
    reference: impl Fn(f64, f64) -> Vec<f64>,
) -> Vec<f64> {
    let mut sums = vec![0.0; field.n_comp()];
    for (i, j) in field.interior_indices() {
        let (x, y) = grid.center(i, j);
        let r = reference(x, y);
        for (c, s) in sums.iter_mut().enumerate() {
            *s += (field.get(c, i, j) - r[c]).abs();
        }
    }
    let n = grid.n_cells() as f64;
    sums.iter().map(|s| s / n).collect()
}
