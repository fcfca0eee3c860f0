pub const WENOZ_EPS: f64 = 1e-40;
const IDEAL: [f64; 3] = [0.1, 0.6, 0.3];

/// WENO-Z value at the right face of `s[2]`, with `q = 1`.
#[inline]
pub fn weno_z(s: &[f64; 5], eps: f64) -> f64 {
    let [a, b, c, d, e] = *s;
    let q0 = (2.0 * a - 7.0 * b + 11.0 * c) / 6.0;
    let q1 = (-b + 5.0 * c + 2.0 * d) / 6.0;
    let q2 = (2.0 * c + 5.0 * d - e) / 6.0;
    let beta0 = 13.0 / 12.0 * (a - 2.0 * b + c).powi(2) + 0.25 * (a - 4.0 * b + 3.0 * c).powi(2);
    let beta1 = 13.0 / 12.0 * (b - 2.0 * c + d).powi(2) + 0.25 * (b - d).powi(2);
    let beta2 = 13.0 / 12.0 * (c - 2.0 * d + e).powi(2) + 0.25 * (3.0 * c - 4.0 * d + e).powi(2);
    let tau = (beta0 - beta2).abs();
    let w0 = IDEAL[0] * (1.0 + tau / (beta0 + eps));
    let w1 = IDEAL[1] * (1.0 + tau / (beta1 + eps));
    let w2 = IDEAL[2] * (1.0 + tau / (beta2 + eps));
    (w0 * q0 + w1 * q1 + w2 * q2) / (w0 + w1 + w2)
}

#[inline]
pub fn weno_z_face(w: &[f64; 6]) -> (f64, f64) {
    (
        weno_z(&[w[0], w[1], w[2], w[3], w[4]], WENOZ_EPS),
        weno_z(&[w[5], w[4], w[3], w[2], w[1]], WENOZ_EPS),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruction::mp5::linear5;
    use proptest::prelude::*;

    #[test]
    fn ideal_weights_recover_linear5_on_smooth_data() {
        let s = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert!((weno_z(&s, WENOZ_EPS) - 3.5).abs() < 1e-14);
        let q: [f64; 5] = std::array::from_fn(|k| (k as f64 * 0.1).powi(2));
        assert!((weno_z(&q, WENOZ_EPS) - linear5(&q)).abs() < 1e-14);
    }

    #[test]
    fn step_is_essentially_non_oscillatory() {
        let v = weno_z(&[0.0, 0.0, 0.0, 1.0, 1.0], WENOZ_EPS);
        assert!(v > -1e-12 && v < 0.05, "{v}");
    }

    proptest! {
        #[test]
        fn constant_data_is_exact(c in -100.0f64..100.0) {
            prop_assert!((weno_z(&[c; 5], WENOZ_EPS) - c).abs() <= 1e-13 * (1.0 + c.abs()));
        }

        #[test]
        fn value_is_convex_combination_of_substencils(s in proptest::array::uniform5(-2.0f64..2.0)) {
            let v = weno_z(&s, WENOZ_EPS);
            let [a, b, c, d, e] = s;
            let q = [(2.0 * a - 7.0 * b + 11.0 * c) / 6.0, (-b + 5.0 * c + 2.0 * d) / 6.0, (2.0 * c + 5.0 * d - e) / 6.0];
            let lo = q.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = q.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(v >= lo - 1e-12 && v <= hi + 1e-12);
        }
    }
}
