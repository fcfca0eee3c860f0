//! High-order finite-volume solvers for scalar advection and the compressible Euler
//! equations, built around boundary-variation-diminishing selection between compact
//! linear and shock-capturing reconstructions.

pub mod bvd;
pub mod cases;
pub mod driver;
pub mod error;
pub mod euler;
pub mod integrator;
pub mod mesh;
pub mod physics;
pub mod reconstruction;
pub mod riemann;

pub use error::{Axis, Location, SolverError};
