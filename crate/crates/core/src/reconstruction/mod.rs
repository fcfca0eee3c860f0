//! Interface-value reconstruction on a single grid line of cell averages.
//!
//! A line holds `n` interior cells padded by ghost cells on both ends. Face `k`
//! (for `k` in `0..=n`) separates interior cells `k - 1` and `k`; its left state is
//! reconstructed from the upwind cell `k - 1` and its right state from cell `k`.

mod compact;
mod mp5;
mod muscl;
mod thinc;
mod tridiag;
mod weno;

pub use compact::{average_c6, average_c6_in_place, reconstruct_c5, CompactC5};
pub use mp5::{linear5, minmod, mp5_face, mp5_limit, MP5_EPS};
pub use muscl::{muscl_face, muscl_left, muscl_tvd, MusclParams};
pub use thinc::{thinc, thinc_face, THINC_EPS};
pub use tridiag::{thomas_solve, TriDiag, TriDiagLu};
pub use weno::{weno_z, weno_z_face, WENOZ_EPS};

/// Read-only view of one padded line.
#[derive(Clone, Copy, Debug)]
pub struct LineView<'a> {
    values: &'a [f64],
    n_ghost: usize,
}

impl<'a> LineView<'a> {
    pub fn new(values: &'a [f64], n_ghost: usize) -> Self {
        assert!(values.len() > 2 * n_ghost, "line shorter than its ghost layers");
        Self { values, n_ghost }
    }

    pub fn n_cells(&self) -> usize {
        self.values.len() - 2 * self.n_ghost
    }

    pub fn n_ghost(&self) -> usize {
        self.n_ghost
    }

    /// Value of interior cell `i`; ghosts are reached with `i < 0` or `i >= n`.
    #[inline]
    pub fn at(&self, i: isize) -> f64 {
        self.values[(i + self.n_ghost as isize) as usize]
    }

    /// The six cells `k-3 ..= k+2` around face `k`. Needs three ghost layers.
    #[inline]
    pub fn window(&self, k: usize) -> [f64; 6] {
        let start = k + self.n_ghost - 3;
        let mut w = [0.0; 6];
        w.copy_from_slice(&self.values[start..start + 6]);
        w
    }

    pub fn values(&self) -> &'a [f64] {
        self.values
    }
}

/// Left and right states at the `n + 1` faces of a line.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct InterfaceStates {
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl InterfaceStates {
    pub fn with_faces(n_faces: usize) -> Self {
        Self { left: vec![0.0; n_faces], right: vec![0.0; n_faces] }
    }

    pub fn n_faces(&self) -> usize {
        self.left.len()
    }

    pub fn resize(&mut self, n_faces: usize) {
        self.left.resize(n_faces, 0.0);
        self.right.resize(n_faces, 0.0);
    }

    pub fn copy_from(&mut self, other: &InterfaceStates) {
        self.left.clear();
        self.left.extend_from_slice(&other.left);
        self.right.clear();
        self.right.extend_from_slice(&other.right);
    }

    /// Fills the pair face by face from a six-cell window kernel.
    pub fn fill_from_windows(
        &mut self,
        line: LineView<'_>,
        mut kernel: impl FnMut(&[f64; 6]) -> (f64, f64),
    ) {
        let faces = line.n_cells() + 1;
        self.resize(faces);
        for k in 0..faces {
            let (l, r) = kernel(&line.window(k));
            self.left[k] = l;
            self.right[k] = r;
        }
    }
}

pub fn reconstruct_mp5(line: LineView<'_>, alpha: f64) -> InterfaceStates {
    let mut out = InterfaceStates::default();
    out.fill_from_windows(line, |w| mp5_face(w, alpha));
    out
}

pub fn reconstruct_weno_z(line: LineView<'_>) -> InterfaceStates {
    let mut out = InterfaceStates::default();
    out.fill_from_windows(line, weno_z_face);
    out
}

pub fn reconstruct_muscl(line: LineView<'_>, params: MusclParams) -> InterfaceStates {
    let mut out = InterfaceStates::default();
    out.fill_from_windows(line, |w| muscl_face(w, params));
    out
}

pub fn reconstruct_thinc(line: LineView<'_>, beta: f64) -> InterfaceStates {
    let mut out = InterfaceStates::default();
    out.fill_from_windows(line, |w| thinc_face(w, beta));
    out
}
