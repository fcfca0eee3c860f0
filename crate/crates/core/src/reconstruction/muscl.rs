use super::mp5::minmod;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MusclParams {
    pub eta: f64,
    pub omega: f64,
}

impl Default for MusclParams {
    fn default() -> Self {
        Self { eta: 1.0 / 3.0, omega: 4.0 }
    }
}

/// Limited value at the right face of `b` from the three cells `a, b, c`.
#[inline]
pub fn muscl_left(a: f64, b: f64, c: f64, params: MusclParams) -> f64 {
    let back = b - a;
    let fwd = c - b;
    b + 0.25
        * ((1.0 - params.eta) * minmod(back, params.omega * fwd)
            + (1.0 + params.eta) * minmod(fwd, params.omega * back))
}

/// Left and right states at the face between `s[1]` and `s[2]` of the stencil `u_{j-1..j+2}`.
#[inline]
pub fn muscl_tvd(s: &[f64; 4], params: MusclParams) -> (f64, f64) {
    (muscl_left(s[0], s[1], s[2], params), muscl_left(s[3], s[2], s[1], params))
}

#[inline]
pub fn muscl_face(w: &[f64; 6], params: MusclParams) -> (f64, f64) {
    muscl_tvd(&[w[1], w[2], w[3], w[4]], params)
}
