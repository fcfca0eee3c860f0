use super::mp5::{mp5_limit, MP5_EPS};
use super::tridiag::TriDiagLu;
use super::{InterfaceStates, LineView};
use crate::error::SolverError;

/// Prefactored upwind-biased compact systems for lines of `n` interior cells.
///
/// Interior rows couple three neighbouring faces; the first and last rows are
/// identity rows whose right-hand side holds the MP5 value at that face.
#[derive(Clone, Debug)]
pub struct CompactC5 {
    n: usize,
    left: TriDiagLu,
    right: TriDiagLu,
}

impl CompactC5 {
    pub fn new(n: usize) -> Result<Self, SolverError> {
        let faces = n + 1;
        let mut sub_l = vec![0.5; faces];
        let mut sup_l = vec![1.0 / 6.0; faces];
        let mut sub_r = vec![1.0 / 6.0; faces];
        let mut sup_r = vec![0.5; faces];
        for v in [&mut sub_l, &mut sup_l, &mut sub_r, &mut sup_r] {
            v[0] = 0.0;
            v[faces - 1] = 0.0;
        }
        let diag = vec![1.0; faces];
        Ok(Self {
            n,
            left: TriDiagLu::factor(&sub_l, &diag, &sup_l)?,
            right: TriDiagLu::factor(&sub_r, &diag, &sup_r)?,
        })
    }

    pub fn n_cells(&self) -> usize {
        self.n
    }

    /// Solves both systems for the line, writing face values into `out`.
    pub fn reconstruct_into(&self, line: LineView<'_>, alpha: f64, out: &mut InterfaceStates) {
        self.reconstruct_batch([line], alpha, [out]);
    }

    /// Solves the systems of several lines at once.
    ///
    /// The systems are solved for the offsets of each face value from its upwind
    /// cell average, so constant data is reproduced exactly.
    pub fn reconstruct_batch<const M: usize>(
        &self,
        lines: [LineView<'_>; M],
        alpha: f64,
        outs: [&mut InterfaceStates; M],
    ) {
        let n = self.n;
        let faces = n + 1;
        let mut ls: [&mut [f64]; M] = [(); M].map(|_| &mut [][..]);
        let mut rs: [&mut [f64]; M] = [(); M].map(|_| &mut [][..]);
        for (m, out) in outs.into_iter().enumerate() {
            let line = lines[m];
            debug_assert_eq!(line.n_cells(), n);
            out.resize(faces);
            // `u[k]` is the average of cell `k - 3`.
            let u = &line.values()[line.n_ghost() - 3..];
            let (l, r) = (&mut out.left[..faces], &mut out.right[..faces]);
            for (k, w) in u.windows(5).enumerate().take(n).skip(1) {
                l[k] = (8.0 * (w[2] - w[1]) + 7.0 * (w[3] - w[2])) / 18.0;
                r[k] = (7.0 * (w[2] - w[3]) + 8.0 * (w[3] - w[4])) / 18.0;
            }
            for k in [0, n] {
                let w = line.window(k);
                l[k] = mp5_limit(&[w[0], w[1], w[2], w[3], w[4]], alpha, MP5_EPS) - w[2];
                r[k] = mp5_limit(&[w[5], w[4], w[3], w[2], w[1]], alpha, MP5_EPS) - w[3];
            }
            ls[m] = l;
            rs[m] = r;
        }
        let (sub_l, inv_l, sup_l) = self.left.parts();
        let (sub_r, inv_r, sup_r) = self.right.parts();
        let (sub_l, inv_l, sup_l) = (&sub_l[..faces], &inv_l[..faces], &sup_l[..faces]);
        let (sub_r, inv_r, sup_r) = (&sub_r[..faces], &inv_r[..faces], &sup_r[..faces]);
        for m in 0..M {
            ls[m][0] *= inv_l[0];
            rs[m][0] *= inv_r[0];
        }
        for i in 1..faces {
            for m in 0..M {
                let (l, r) = (&mut *ls[m], &mut *rs[m]);
                l[i] = (l[i] - sub_l[i] * l[i - 1]) * inv_l[i];
                r[i] = (r[i] - sub_r[i] * r[i - 1]) * inv_r[i];
            }
        }
        for i in (0..n).rev() {
            for m in 0..M {
                let (l, r) = (&mut *ls[m], &mut *rs[m]);
                l[i] -= sup_l[i] * l[i + 1];
                r[i] -= sup_r[i] * r[i + 1];
            }
        }
        for (m, line) in lines.iter().enumerate() {
            let u = &line.values()[line.n_ghost() - 3..];
            for (k, (l, r)) in ls[m].iter_mut().zip(rs[m].iter_mut()).enumerate() {
                *l += u[k + 2];
                *r += u[k + 3];
            }
        }
    }
}

pub fn reconstruct_c5(line: LineView<'_>, alpha: f64) -> Result<InterfaceStates, SolverError> {
    let mut out = InterfaceStates::default();
    CompactC5::new(line.n_cells())?.reconstruct_into(line, alpha, &mut out);
    Ok(out)
}

/// Symmetric sixth-order values: the average of the two upwind-biased solutions.
pub fn average_c6(c5: &InterfaceStates) -> InterfaceStates {
    let mut out = c5.clone();
    average_c6_in_place(&mut out);
    out
}

pub fn average_c6_in_place(states: &mut InterfaceStates) {
    for (l, r) in states.left.iter_mut().zip(states.right.iter_mut()) {
        let m = 0.5 * (*l + *r);
        *l = m;
        *r = m;
    }
}
