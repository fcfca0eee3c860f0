//! CSV and legacy-VTK writers for primitive cell fields.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use hocus::mesh::{CellField, Grid};
use hocus::physics::Physics;

fn value(out: &mut String, v: f64) {
    write!(out, "{v:.14e}").unwrap();
}

/// Output variables and the field component each one reads. One-dimensional Euler
/// fields still carry a (zero) v component, which is not written.
fn variables(physics: &Physics, two_d: bool) -> Vec<(&'static str, usize)> {
    match (physics, two_d) {
        (Physics::Advection { .. }, _) => vec![("u", 0)],
        (Physics::Euler(_), false) => vec![("rho", 0), ("u", 1), ("p", 3)],
        (Physics::Euler(_), true) => vec![("rho", 0), ("u", 1), ("v", 2), ("p", 3)],
    }
}

/// Header row for a field of this physics and dimension.
pub fn csv_header(physics: &Physics, two_d: bool) -> String {
    let coords = if two_d { "x,y" } else { "x" };
    let names: Vec<_> = variables(physics, two_d).into_iter().map(|(name, _)| name).collect();
    format!("{coords},{}", names.join(","))
}

fn csv_row(out: &mut String, grid: &Grid, physics: &Physics, field: &CellField, i: isize, j: isize) {
    let (x, y) = grid.center(i, j);
    value(out, x);
    if grid.is_2d() {
        out.push(',');
        value(out, y);
    }
    for (_, c) in variables(physics, grid.is_2d()) {
        out.push(',');
        value(out, field.get(c, i, j));
    }
    out.push('\n');
}

/// All cells, x fastest.
pub fn field_csv(grid: &Grid, physics: &Physics, field: &CellField) -> String {
    let mut out = csv_header(physics, grid.is_2d());
    out.push('\n');
    for (i, j) in field.interior_indices() {
        csv_row(&mut out, grid, physics, field, i, j);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slice {
    /// Row `j`, varying x.
    Row(isize),
    /// Column `i`, varying y.
    Column(isize),
}

/// One row or column of a two-dimensional field.
pub fn slice_csv(grid: &Grid, physics: &Physics, field: &CellField, slice: Slice) -> String {
    let mut out = csv_header(physics, true);
    out.push('\n');
    match slice {
        Slice::Row(j) => (0..grid.nx() as isize).for_each(|i| csv_row(&mut out, grid, physics, field, i, j)),
        Slice::Column(i) => (0..grid.ny() as isize).for_each(|j| csv_row(&mut out, grid, physics, field, i, j)),
    }
    out
}

/// Legacy ASCII structured-points file with one scalar array per variable, sampled at
/// cell centres.
pub fn field_vtk(grid: &Grid, physics: &Physics, field: &CellField, title: &str) -> String {
    let gx = grid.x();
    let (y0, dy) = grid.y().map_or((0.0, 1.0), |g| (g.center(0), g.dx));
    let (nx, ny) = (grid.nx(), grid.ny());
    let mut out = String::new();
    writeln!(out, "# vtk DataFile Version 3.0").unwrap();
    writeln!(out, "{}", title.replace('\n', " ")).unwrap();
    writeln!(out, "ASCII\nDATASET STRUCTURED_POINTS").unwrap();
    writeln!(out, "DIMENSIONS {nx} {ny} 1").unwrap();
    writeln!(out, "ORIGIN {:.14e} {:.14e} 0", gx.center(0), y0).unwrap();
    writeln!(out, "SPACING {:.14e} {:.14e} 1", gx.dx, dy).unwrap();
    writeln!(out, "POINT_DATA {}", nx * ny).unwrap();
    for (name, c) in variables(physics, grid.is_2d()) {
        writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default").unwrap();
        for (i, j) in field.interior_indices() {
            value(&mut out, field.get(c, i, j));
            out.push('\n');
        }
    }
    out
}

/// Writes `stem` as CSV (1D) or as VTK plus mid-row and mid-column CSV slices (2D).
/// Returns the paths written.
pub fn write_field(
    dir: &Path,
    stem: &str,
    grid: &Grid,
    physics: &Physics,
    field: &CellField,
    title: &str,
) -> std::io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut put = |name: String, contents: String| -> std::io::Result<()> {
        let path = dir.join(name);
        fs::write(&path, contents)?;
        written.push(path);
        Ok(())
    };
    if grid.is_2d() {
        put(format!("{stem}.vtk"), field_vtk(grid, physics, field, title))?;
        let mid_row = Slice::Row(grid.ny() as isize / 2);
        let mid_column = Slice::Column(grid.nx() as isize / 2);
        put(format!("{stem}_row.csv"), slice_csv(grid, physics, field, mid_row))?;
        put(format!("{stem}_column.csv"), slice_csv(grid, physics, field, mid_column))?;
    } else {
        put(format!("{stem}.csv"), field_csv(grid, physics, field))?;
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hocus::cases::instantiate_case;

    #[test]
    fn headers_match_the_documented_layout() {
        let sod = instantiate_case("sod").unwrap();
        let smooth = instantiate_case("euler2d_smooth").unwrap();
        let gauss = instantiate_case("gaussian_advect").unwrap();
        assert_eq!(csv_header(&sod.physics, false), "x,rho,u,p");
        assert_eq!(csv_header(&smooth.physics, true), "x,y,rho,u,v,p");
        assert_eq!(csv_header(&gauss.physics, false), "x,u");
    }

    #[test]
    fn values_carry_fifteen_significant_digits() {
        let case = instantiate_case("sod").unwrap();
        let grid = case.grid(4, None).unwrap();
        let mut field = grid.new_field(4);
        field.set(0, 0, 0, 1.0 / 3.0);
        field.set(3, 0, 0, 2.5);
        let csv = field_csv(&grid, &case.physics, &field);
        let first = csv.lines().nth(1).unwrap();
        assert_eq!(first, "1.25000000000000e-1,3.33333333333333e-1,0.00000000000000e0,2.50000000000000e0");
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn vtk_lists_every_variable() {
        let case = instantiate_case("explosion_2d").unwrap();
        let grid = case.grid(3, Some(2)).unwrap();
        let field = grid.new_field(4);
        let vtk = field_vtk(&grid, &case.physics, &field, "test");
        assert!(vtk.starts_with("# vtk DataFile Version 3.0\ntest\nASCII\nDATASET STRUCTURED_POINTS\nDIMENSIONS 3 2 1\n"));
        assert_eq!(vtk.matches("LOOKUP_TABLE default").count(), 4);
        assert_eq!(vtk.lines().count(), 8 + 4 * (2 + 6));
    }

    #[test]
    fn slices_run_along_the_requested_axis() {
        let case = instantiate_case("explosion_2d").unwrap();
        let grid = case.grid(5, Some(3)).unwrap();
        let field = grid.new_field(4);
        assert_eq!(slice_csv(&grid, &case.physics, &field, Slice::Row(1)).lines().count(), 6);
        assert_eq!(slice_csv(&grid, &case.physics, &field, Slice::Column(2)).lines().count(), 4);
    }
}
