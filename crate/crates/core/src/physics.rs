//! The conservation law being solved: scalar linear advection or the Euler equations.

use crate::euler::{cons_to_prim, prim_to_cons, ConservativeState, GasModel, PrimitiveState, StateError};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Physics {
    Advection { velocity: [f64; 2] },
    Euler(GasModel),
}

impl Physics {
    pub fn n_comp(&self) -> usize {
        match self {
            Physics::Advection { .. } => 1,
            Physics::Euler(_) => 4,
        }
    }

    pub fn gas(&self) -> Option<GasModel> {
        match self {
            Physics::Euler(g) => Some(*g),
            Physics::Advection { .. } => None,
        }
    }

    /// Component holding momentum along `axis` (0 = x, 1 = y), if any.
    pub fn momentum_component(&self, axis: usize) -> Option<usize> {
        match self {
            Physics::Euler(_) => Some(1 + axis),
            Physics::Advection { .. } => None,
        }
    }

    pub fn prim_to_cons(&self, prim: &[f64], out: &mut [f64]) {
        match self {
            Physics::Advection { .. } => out[0] = prim[0],
            Physics::Euler(gas) => {
                let w = PrimitiveState::new(prim[0], prim[1], prim[2], prim[3]);
                out.copy_from_slice(&prim_to_cons(&w, gas).to_array());
            }
        }
    }

    pub fn cons_to_prim(&self, cons: &[f64], out: &mut [f64]) -> Result<(), StateError> {
        match self {
            Physics::Advection { .. } => {
                out[0] = cons[0];
                Ok(())
            }
            Physics::Euler(gas) => {
                let q = ConservativeState { rho: cons[0], mom_x: cons[1], mom_y: cons[2], energy: cons[3] };
                out.copy_from_slice(&cons_to_prim(&q, gas)?.to_array());
                Ok(())
            }
        }
    }

    /// Largest signal speed |u_n| + c along `normal` for a conservative state.
    pub fn max_speed(&self, cons: &[f64], normal: [f64; 2]) -> Result<f64, StateError> {
        match self {
            Physics::Advection { velocity } => {
                Ok((velocity[0] * normal[0] + velocity[1] * normal[1]).abs())
            }
            Physics::Euler(gas) => {
                let mut w = [0.0; 4];
                self.cons_to_prim(cons, &mut w)?;
                let c = (gas.gamma() * w[3] / w[0]).sqrt();
                Ok((w[1] * normal[0] + w[2] * normal[1]).abs() + c)
            }
        }
    }
}
