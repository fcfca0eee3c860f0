//! Ideal-gas state algebra for the two-dimensional Euler equations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Error)]
pub enum StateError {
    #[error("non-positive density {0}")]
    Density(f64),
    #[error("non-positive pressure {0}")]
    Pressure(f64),
    #[error("non-positive internal energy {0}")]
    InternalEnergy(f64),
    #[error("negative Roe sound-speed radicand {0}")]
    RoeSoundSpeed(f64),
    #[error("non-finite state component")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GasModel {
    gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Option<Self> {
        (gamma > 1.0 && gamma.is_finite()).then_some(Self { gamma })
    }

    pub fn air() -> Self {
        Self { gamma: 1.4 }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Default for GasModel {
    fn default() -> Self {
        Self::air()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct PrimitiveState {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
    pub p: f64,
}

impl PrimitiveState {
    pub const fn new(rho: f64, u: f64, v: f64, p: f64) -> Self {
        Self { rho, u, v, p }
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.u, self.v, self.p]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn validate(&self) -> Result<(), StateError> {
        if !(self.rho.is_finite() && self.u.is_finite() && self.v.is_finite() && self.p.is_finite())
        {
            return Err(StateError::NonFinite);
        }
        if self.rho <= 0.0 {
            return Err(StateError::Density(self.rho));
        }
        if self.p <= 0.0 {
            return Err(StateError::Pressure(self.p));
        }
        Ok(())
    }

    pub fn normal_velocity(&self, normal: [f64; 2]) -> f64 {
        self.u * normal[0] + self.v * normal[1]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct ConservativeState {
    pub rho: f64,
    pub mom_x: f64,
    pub mom_y: f64,
    pub energy: f64,
}

impl ConservativeState {
    pub fn to_array(self) -> [f64; 4] {
        [self.rho, self.mom_x, self.mom_y, self.energy]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self { rho: a[0], mom_x: a[1], mom_y: a[2], energy: a[3] }
    }
}

pub fn prim_to_cons(w: &PrimitiveState, gas: &GasModel) -> ConservativeState {
    ConservativeState {
        rho: w.rho,
        mom_x: w.rho * w.u,
        mom_y: w.rho * w.v,
        energy: w.p / (gas.gamma - 1.0) + 0.5 * w.rho * (w.u * w.u + w.v * w.v),
    }
}

pub fn cons_to_prim(q: &ConservativeState, gas: &GasModel) -> Result<PrimitiveState, StateError> {
    if !(q.rho.is_finite() && q.mom_x.is_finite() && q.mom_y.is_finite() && q.energy.is_finite()) {
        return Err(StateError::NonFinite);
    }
    if q.rho <= 0.0 {
        return Err(StateError::Density(q.rho));
    }
    let u = q.mom_x / q.rho;
    let v = q.mom_y / q.rho;
    let internal = q.energy - 0.5 * q.rho * (u * u + v * v);
    if internal <= 0.0 {
        return Err(StateError::InternalEnergy(internal));
    }
    Ok(PrimitiveState { rho: q.rho, u, v, p: (gas.gamma - 1.0) * internal })
}

pub fn sound_speed(w: &PrimitiveState, gas: &GasModel) -> f64 {
    (gas.gamma * w.p / w.rho).sqrt()
}

pub fn total_enthalpy(w: &PrimitiveState, gas: &GasModel) -> f64 {
    let e = prim_to_cons(w, gas).energy;
    (e + w.p) / w.rho
}

/// Frozen eigen-frame for projecting a stencil onto characteristic fields
/// travelling along `normal`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterfaceFrame {
    pub normal: [f64; 2],
    pub tangent: [f64; 2],
    pub state: PrimitiveState,
    pub c: f64,
}

/// Builds the frame at the arithmetic mean of the two neighbouring primitive states.
pub fn interface_frame(
    left: &PrimitiveState,
    right: &PrimitiveState,
    normal: [f64; 2],
    gas: &GasModel,
) -> Result<InterfaceFrame, StateError> {
    let mean = PrimitiveState {
        rho: 0.5 * (left.rho + right.rho),
        u: 0.5 * (left.u + right.u),
        v: 0.5 * (left.v + right.v),
        p: 0.5 * (left.p + right.p),
    };
    InterfaceFrame::at_state(mean, normal, gas)
}

impl InterfaceFrame {
    pub fn at_state(
        state: PrimitiveState,
        normal: [f64; 2],
        gas: &GasModel,
    ) -> Result<Self, StateError> {
        state.validate()?;
        Ok(Self {
            normal,
            tangent: [-normal[1], normal[0]],
            state,
            c: sound_speed(&state, gas),
        })
    }

    /// Rows are the left eigenvectors of the primitive-variable Jacobian.
    pub fn left_eigenvectors(&self) -> [[f64; 4]; 4] {
        let (rho, c) = (self.state.rho, self.c);
        let [nx, ny] = self.normal;
        let [lx, ly] = self.tangent;
        let a = rho / (2.0 * c);
        let b = 1.0 / (2.0 * c * c);
        [
            [0.0, -nx * a, -ny * a, b],
            [1.0, 0.0, 0.0, -1.0 / (c * c)],
            [0.0, nx * a, ny * a, b],
            [0.0, rho * lx, rho * ly, 0.0],
        ]
    }

    /// Columns are the right eigenvectors; the inverse of [`Self::left_eigenvectors`].
    pub fn right_eigenvectors(&self) -> [[f64; 4]; 4] {
        let (rho, c) = (self.state.rho, self.c);
        let [nx, ny] = self.normal;
        let [lx, ly] = self.tangent;
        let a = c / rho;
        [
            [1.0, 1.0, 1.0, 0.0],
            [-nx * a, 0.0, nx * a, lx / rho],
            [-ny * a, 0.0, ny * a, ly / rho],
            [c * c, 0.0, c * c, 0.0],
        ]
    }

    pub fn projector(&self) -> Projector {
        let (rho, c) = (self.state.rho, self.c);
        Projector {
            normal: self.normal,
            tangent: self.tangent,
            rho,
            half_rho_over_c: rho / (2.0 * c),
            half_inv_c2: 1.0 / (2.0 * c * c),
            inv_c2: 1.0 / (c * c),
            c_over_rho: c / rho,
            inv_rho: 1.0 / rho,
            c2: c * c,
        }
    }

    pub fn to_characteristic(&self, w: &PrimitiveState) -> [f64; 4] {
        self.projector().to_characteristic(w.to_array())
    }

    pub fn from_characteristic(&self, chars: [f64; 4]) -> PrimitiveState {
        PrimitiveState::from_array(self.projector().from_characteristic(chars))
    }
}

/// Products with the eigenvector matrices of one [`InterfaceFrame`], exploiting
/// their sparsity.
#[derive(Clone, Copy, Debug)]
pub struct Projector {
    normal: [f64; 2],
    tangent: [f64; 2],
    rho: f64,
    half_rho_over_c: f64,
    half_inv_c2: f64,
    inv_c2: f64,
    c_over_rho: f64,
    inv_rho: f64,
    c2: f64,
}

impl Projector {
    #[inline]
    pub fn to_characteristic(&self, w: [f64; 4]) -> [f64; 4] {
        let [rho, u, v, p] = w;
        let un = self.normal[0] * u + self.normal[1] * v;
        let ut = self.tangent[0] * u + self.tangent[1] * v;
        let acoustic = self.half_rho_over_c * un;
        let pressure = self.half_inv_c2 * p;
        [pressure - acoustic, rho - self.inv_c2 * p, pressure + acoustic, self.rho * ut]
    }

    #[inline]
    pub fn from_characteristic(&self, chars: [f64; 4]) -> [f64; 4] {
        let [w0, w1, w2, w3] = chars;
        let un = self.c_over_rho * (w2 - w0);
        let ut = self.inv_rho * w3;
        [
            w0 + w1 + w2,
            self.normal[0] * un + self.tangent[0] * ut,
            self.normal[1] * un + self.tangent[1] * ut,
            self.c2 * (w0 + w2),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeAverage {
    pub normal_velocity: f64,
    pub sound_speed: f64,
}

pub fn roe_average(
    left: &PrimitiveState,
    right: &PrimitiveState,
    normal: [f64; 2],
    gas: &GasModel,
) -> Result<RoeAverage, StateError> {
    let sl = left.rho.sqrt();
    let sr = right.rho.sqrt();
    let inv = 1.0 / (sl + sr);
    let u = (sl * left.u + sr * right.u) * inv;
    let v = (sl * left.v + sr * right.v) * inv;
    let h = (sl * total_enthalpy(left, gas) + sr * total_enthalpy(right, gas)) * inv;
    let radicand = (gas.gamma - 1.0) * (h - 0.5 * (u * u + v * v));
    if !(radicand >= 0.0) {
        return Err(StateError::RoeSoundSpeed(radicand));
    }
    Ok(RoeAverage { normal_velocity: u * normal[0] + v * normal[1], sound_speed: radicand.sqrt() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gas() -> GasModel {
        GasModel::air()
    }

    #[test]
    fn energy_from_primitives() {
        let g = GasModel::new(5.0 / 3.0).unwrap();
        let q = prim_to_cons(&PrimitiveState::new(2.0, 1.0, -1.0, 3.0), &g);
        assert!((q.energy - 6.5).abs() < 1e-14);
        assert_eq!((q.mom_x, q.mom_y), (2.0, -2.0));
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(GasModel::new(1.0).is_none());
        assert!(GasModel::new(0.5).is_none());
    }

    #[test]
    fn non_positive_states_are_errors() {
        let g = gas();
        let q = ConservativeState { rho: -1.0, mom_x: 0.0, mom_y: 0.0, energy: 1.0 };
        assert_eq!(cons_to_prim(&q, &g), Err(StateError::Density(-1.0)));
        let q = ConservativeState { rho: 1.0, mom_x: 2.0, mom_y: 0.0, energy: 1.0 };
        assert!(matches!(cons_to_prim(&q, &g), Err(StateError::InternalEnergy(_))));
    }

    #[test]
    fn sod_frame_is_the_mean() {
        let f = interface_frame(
            &PrimitiveState::new(1.0, 0.0, 0.0, 1.0),
            &PrimitiveState::new(0.125, 0.0, 0.0, 0.1),
            [1.0, 0.0],
            &gas(),
        )
        .unwrap();
        assert_eq!(f.state, PrimitiveState::new(0.5625, 0.0, 0.0, 0.55));
        assert!((f.c - (1.4f64 * 0.55 / 0.5625).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn projection_of_a_sample_state() {
        let f =
            InterfaceFrame::at_state(PrimitiveState::new(1.0, 0.0, 0.0, 1.0), [1.0, 0.0], &gas())
                .unwrap();
        let chars = f.to_characteristic(&PrimitiveState::new(1.0, 1.0, 0.0, 1.0));
        let c = 1.4f64.sqrt();
        let expected = [-1.0 / (2.0 * c) + 1.0 / 2.8, 1.0 - 1.0 / 1.4, 1.0 / (2.0 * c) + 1.0 / 2.8, 0.0];
        for k in 0..4 {
            assert!((chars[k] - expected[k]).abs() < 1e-14, "{k}: {chars:?}");
        }
    }

    #[test]
    fn roe_average_of_equal_states() {
        let w = PrimitiveState::new(1.3, 0.4, -0.2, 2.0);
        let r = roe_average(&w, &w, [0.6, 0.8], &gas()).unwrap();
        assert!((r.sound_speed - sound_speed(&w, &gas())).abs() < 1e-13);
        assert!((r.normal_velocity - w.normal_velocity([0.6, 0.8])).abs() < 1e-15);
    }

    fn state() -> impl Strategy<Value = PrimitiveState> {
        (0.01f64..10.0, -5.0f64..5.0, -5.0f64..5.0, 0.01f64..100.0)
            .prop_map(|(rho, u, v, p)| PrimitiveState::new(rho, u, v, p))
    }

    proptest! {
        #[test]
        fn conversion_round_trip(w in state(), gamma in 1.05f64..3.0) {
            let g = GasModel::new(gamma).unwrap();
            let back = cons_to_prim(&prim_to_cons(&w, &g), &g).unwrap();
            let (a, b) = (w.to_array(), back.to_array());
            for k in 0..4 {
                prop_assert!((a[k] - b[k]).abs() <= 1e-12 * (1.0 + a[k].abs()) * (1.0 + w.u.abs() + w.v.abs()).powi(2));
            }
        }

        #[test]
        fn eigenvectors_are_inverse(w in state(), angle in 0.0f64..std::f64::consts::TAU) {
            let n = [angle.cos(), angle.sin()];
            let f = InterfaceFrame::at_state(w, n, &gas()).unwrap();
            let (l, r) = (f.left_eigenvectors(), f.right_eigenvectors());
            for i in 0..4 {
                for j in 0..4 {
                    let dot: f64 = (0..4).map(|k| l[i][k] * r[k][j]).sum();
                    let scale = 1.0 + l[i].iter().map(|x| x.abs()).sum::<f64>()
                        * (0..4).map(|k| r[k][j].abs()).sum::<f64>();
                    let target = if i == j { 1.0 } else { 0.0 };
                    prop_assert!((dot - target).abs() <= 1e-13 * scale);
                }
            }
        }

        #[test]
        fn characteristic_round_trip(w in state(), x in state(), angle in 0.0f64..std::f64::consts::TAU) {
            let f = InterfaceFrame::at_state(w, [angle.cos(), angle.sin()], &gas()).unwrap();
            let back = f.from_characteristic(f.to_characteristic(&x)).to_array();
            let orig = x.to_array();
            let scale = 1.0 + orig.iter().map(|v| v.abs()).sum::<f64>() * (1.0 + w.rho + 1.0 / w.rho) * 10.0;
            for k in 0..4 {
                prop_assert!((back[k] - orig[k]).abs() <= 1e-13 * scale);
            }
        }
    }
}
