/// Tolerance of the unlimited-branch test in [`mp5_limit`].
pub const MP5_EPS: f64 = 1e-20;

#[inline]
pub fn minmod(a: f64, b: f64) -> f64 {
    if a * b <= 0.0 {
        0.0
    } else if a.abs() < b.abs() {
        a
    } else {
        b
    }
}

#[inline]
fn minmod4(w: f64, x: f64, y: f64, z: f64) -> f64 {
    let lo = w.min(x).min(y).min(z);
    let hi = w.max(x).max(y).max(z);
    if lo > 0.0 {
        lo
    } else if hi < 0.0 {
        hi
    } else {
        0.0
    }
}

/// Fifth-order upwind-biased linear value at the right face of the centre cell,
/// evaluated as an offset from the centre value so constants pass through exactly.
#[inline]
pub fn linear5(s: &[f64; 5]) -> f64 {
    let u0 = s[2];
    u0 + (2.0 * (s[0] - u0) - 13.0 * (s[1] - u0) + 27.0 * (s[3] - u0) - 3.0 * (s[4] - u0)) / 60.0
}

/// Monotonicity-preserving limited value at the right face of `s[2]`.
#[inline]
pub fn mp5_limit(s: &[f64; 5], alpha: f64, eps: f64) -> f64 {
    let p5 = linear5(s);
    let [um2, um1, u0, up1, up2] = *s;
    let ump = u0 + minmod(up1 - u0, alpha * (u0 - um1));
    if (p5 - u0) * (p5 - ump) <= eps {
        return p5;
    }
    let dm = um2 - 2.0 * um1 + u0;
    let d0 = um1 - 2.0 * u0 + up1;
    let dp = u0 - 2.0 * up1 + up2;
    let dm4_plus = minmod4(4.0 * d0 - dp, 4.0 * dp - d0, d0, dp);
    let dm4_minus = minmod4(4.0 * d0 - dm, 4.0 * dm - d0, d0, dm);
    let uul = u0 + alpha * (u0 - um1);
    let uav = 0.5 * (u0 + up1);
    let umd = uav - 0.5 * dm4_plus;
    let ulc = u0 + 0.5 * (u0 - um1) + 4.0 / 3.0 * dm4_minus;
    let umin = u0.min(up1).min(umd).max(u0.min(uul).min(ulc));
    let umax = u0.max(up1).max(umd).min(u0.max(uul).max(ulc));
    p5 + minmod(umin - p5, umax - p5)
}

/// MP5 left and right states at the face between `w[2]` and `w[3]` of a six-cell window.
#[inline]
pub fn mp5_face(w: &[f64; 6], alpha: f64) -> (f64, f64) {
    let left = mp5_limit(&[w[0], w[1], w[2], w[3], w[4]], alpha, MP5_EPS);
    let right = mp5_limit(&[w[5], w[4], w[3], w[2], w[1]], alpha, MP5_EPS);
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_weights_sum_to_one() {
        assert_eq!(linear5(&[0.7; 5]), 0.7);
        assert!((linear5(&[0.0, 0.0, 0.0, 1.0, 1.0]) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn smooth_ramp_is_unlimited() {
        assert!((mp5_limit(&[1.0, 2.0, 3.0, 4.0, 5.0], 4.0, MP5_EPS) - 3.5).abs() < 1e-14);
    }

    #[test]
    fn step_is_clipped() {
        assert_eq!(mp5_limit(&[0.0, 0.0, 0.0, 1.0, 1.0], 4.0, MP5_EPS), 0.0);
    }

    #[test]
    fn quartic_is_reproduced_exactly() {
        // Cell averages of x^4 on unit cells centred at -2..2; face at x = 1/2.
        let avg = |c: f64| ((c + 0.5f64).powi(5) - (c - 0.5f64).powi(5)) / 5.0;
        let s = [avg(-2.0), avg(-1.0), avg(0.0), avg(1.0), avg(2.0)];
        assert!((linear5(&s) - 0.0625).abs() < 1e-14);
    }

    proptest! {
        #[test]
        fn limited_value_lies_in_neighbour_hull_for_monotone_data(
            start in -5.0f64..5.0,
            steps in proptest::collection::vec(0.0f64..2.0, 4),
            alpha in 2.0f64..8.0,
        ) {
            let mut s = [start; 5];
            for k in 1..5 { s[k] = s[k - 1] + steps[k - 1]; }
            let v = mp5_limit(&s, alpha, MP5_EPS);
            prop_assert!(v >= s[2] - 1e-12 && v <= s[3] + 1e-12);
        }

        #[test]
        fn odd_under_negation(s in proptest::array::uniform5(-3.0f64..3.0)) {
            let neg = s.map(|v| -v);
            prop_assert_eq!(mp5_limit(&neg, 4.0, MP5_EPS), -mp5_limit(&s, 4.0, MP5_EPS));
        }
    }
}
