use crate::error::SolverError;

/// Tridiagonal system `sub[i] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
/// `sub[0]` and `sup[n-1]` are ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct TriDiag {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TriDiag {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Matrix-vector product, useful for residual checks.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Thomas algorithm: forward elimination then back substitution.
pub fn thomas_solve(system: &TriDiag) -> Result<Vec<f64>, SolverError> {
    let lu = TriDiagLu::factor(&system.sub, &system.diag, &system.sup)?;
    let mut x = system.rhs.clone();
    lu.solve_in_place(&mut x);
    Ok(x)
}

/// Forward-elimination coefficients of a tridiagonal matrix, reusable across right-hand sides.
#[derive(Clone, Debug)]
pub struct TriDiagLu {
    sub: Vec<f64>,
    inv_pivot: Vec<f64>,
    sup_scaled: Vec<f64>,
}

impl TriDiagLu {
    pub fn factor(sub: &[f64], diag: &[f64], sup: &[f64]) -> Result<Self, SolverError> {
        let n = diag.len();
        let mut inv_pivot = Vec::with_capacity(n);
        let mut sup_scaled = Vec::with_capacity(n);
        let mut prev = 0.0;
        for i in 0..n {
            let pivot = if i == 0 { diag[0] } else { diag[i] - sub[i] * prev };
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(SolverError::SingularSystem { row: i });
            }
            let inv = 1.0 / pivot;
            prev = if i + 1 < n { sup[i] * inv } else { 0.0 };
            inv_pivot.push(inv);
            sup_scaled.push(prev);
        }
        Ok(Self { sub: sub.to_vec(), inv_pivot, sup_scaled })
    }

    pub fn len(&self) -> usize {
        self.inv_pivot.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inv_pivot.is_empty()
    }

    /// Sub-diagonal, inverse pivots and scaled super-diagonal of the factorisation.
    pub(crate) fn parts(&self) -> (&[f64], &[f64], &[f64]) {
        (&self.sub, &self.inv_pivot, &self.sup_scaled)
    }

    pub fn solve_in_place(&self, x: &mut [f64]) {
        let n = self.len();
        debug_assert_eq!(x.len(), n);
        if n == 0 {
            return;
        }
        x[0] *= self.inv_pivot[0];
        for i in 1..n {
            x[i] = (x[i] - self.sub[i] * x[i - 1]) * self.inv_pivot[i];
        }
        for i in (0..n - 1).rev() {
            x[i] -= self.sup_scaled[i] * x[i + 1];
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_pivot_is_reported() {
        let sys = TriDiag {
            sub: vec![0.0, 1.0],
            diag: vec![0.0, 1.0],
            sup: vec![1.0, 0.0],
            rhs: vec![1.0, 1.0],
        };
        assert!(matches!(thomas_solve(&sys), Err(SolverError::SingularSystem { row: 0 })));
    }

    fn dominant_system() -> impl Strategy<Value = TriDiag> {
        (1usize..40).prop_flat_map(|n| {
            (
                proptest::collection::vec(-1.0f64..1.0, n),
                proptest::collection::vec(-1.0f64..1.0, n),
                proptest::collection::vec(0.0f64..3.0, n),
                proptest::collection::vec(-5.0f64..5.0, n),
                proptest::bool::ANY,
            )
                .prop_map(|(sub, sup, extra, rhs, negate)| {
                    let diag = (0..sub.len())
                        .map(|i| {
                            let d = sub[i].abs() + sup[i].abs() + 0.1 + extra[i];
                            if negate { -d } else { d }
                        })
                        .collect();
                    TriDiag { sub, diag, sup, rhs }
                })
        })
    }

    proptest! {
        #[test]
        fn matches_dense_elimination(sys in dominant_system()) {
            let x = thomas_solve(&sys).unwrap();
            let n = sys.len();
            let mut a = vec![vec![0.0; n]; n];
            for i in 0..n {
                a[i][i] = sys.diag[i];
                if i > 0 { a[i][i - 1] = sys.sub[i]; }
                if i + 1 < n { a[i][i + 1] = sys.sup[i]; }
            }
            let y = dense::solve(a, sys.rhs.clone());
            let scale = 1.0 + sys.rhs.iter().map(|v| v.abs()).fold(0.0, f64::max);
            for i in 0..n {
                prop_assert!((x[i] - y[i]).abs() <= 1e-12 * scale);
            }
        }

        #[test]
        fn residual_is_small(sys in dominant_system()) {
            let x = thomas_solve(&sys).unwrap();
            let r = sys.apply(&x);
            let norm_d = sys.rhs.iter().map(|v| v * v).sum::<f64>().sqrt();
            let norm_r = r.iter().zip(&sys.rhs).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
            prop_assert!(norm_r <= 1e-12 * norm_d.max(f64::MIN_POSITIVE));
        }
    }
}
