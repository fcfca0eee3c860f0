pub const THINC_EPS: f64 = 1e-20;

/// THINC values for cell `u0`: the left state at its right face and the right state
/// at its left face. Non-monotone triples return `u0` for both.
#[inline]
pub fn thinc(um1: f64, u0: f64, up1: f64, beta: f64) -> (f64, f64) {
    if !((up1 - u0) * (u0 - um1) > 0.0) {
        return (u0, u0);
    }
    let umin = um1.min(up1);
    let range = um1.max(up1) - umin;
    let theta = (up1 - um1).signum();
    let ratio = (u0 - umin + THINC_EPS) / (range + THINC_EPS);
    let b = (theta * beta * (2.0 * ratio - 1.0)).exp();
    let tb = beta.tanh();
    let a = (b / beta.cosh() - 1.0) / tb;
    let left = umin + 0.5 * range * (1.0 + theta * (tb + a) / (1.0 + a * tb));
    let right = umin + 0.5 * range * (1.0 + theta * a);
    (left, right)
}

/// THINC states at the face between `w[2]` and `w[3]`: the left one from cell `w[2]`,
/// the right one from cell `w[3]`.
#[inline]
pub fn thinc_face(w: &[f64; 6], beta: f64) -> (f64, f64) {
    (thinc(w[1], w[2], w[3], beta).0, thinc(w[2], w[3], w[4], beta).1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn symmetric_ramp() {
        let (l, r) = thinc(0.0, 0.5, 1.0, 1.6);
        assert!((l + r - 1.0).abs() < 1e-14);
        let t = 1.6f64.tanh();
        let a = (1.0 / 1.6f64.cosh() - 1.0) / t;
        assert!((r - 0.5 * (1.0 + a)).abs() < 1e-14);
    }

    #[test]
    fn extremum_returns_cell_value() {
        assert_eq!(thinc(0.0, 1.0, 0.0, 1.1), (1.0, 1.0));
        assert_eq!(thinc(2.0, 2.0, 2.0, 1.1), (2.0, 2.0));
    }

    proptest! {
        #[test]
        fn bounded_by_neighbours(a in -5.0f64..5.0, db in 0.01f64..3.0, dc in 0.01f64..3.0, beta in 0.5f64..2.5, flip in proptest::bool::ANY) {
            let (um1, u0, up1) = if flip { (a + db + dc, a + db, a) } else { (a, a + db, a + db + dc) };
            let (l, r) = thinc(um1, u0, up1, beta);
            let (lo, hi) = (um1.min(up1), um1.max(up1));
            for v in [l, r] {
                prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
            }
        }
    }
}
